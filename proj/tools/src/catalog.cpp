#include "isospec_cli/catalog.hpp"

#include <cmath>
#include <numbers>

namespace isospec::cli {

PotentialSpec parse_potential_spec(const std::string& name_or_path, std::optional<double> omega,
                                   std::optional<double> a) {
    PotentialSpec spec;
    if (name_or_path == "harmonic") {
        spec.catalog_name = CatalogName::harmonic;
        spec.params["omega"] = omega.value_or(1.0);
    } else if (name_or_path == "box") {
        spec.catalog_name = CatalogName::box;
    } else if (name_or_path == "poschl_teller") {
        spec.catalog_name = CatalogName::poschl_teller;
        spec.params["a"] = a.value_or(1.0);
    } else {
        spec.kind = PotentialKind::tabulated;
        spec.table_path = name_or_path;
    }
    return spec;
}

std::string to_string(CatalogName name) {
    switch (name) {
        case CatalogName::harmonic:
            return "harmonic";
        case CatalogName::box:
            return "box";
        case CatalogName::poschl_teller:
            return "poschl_teller";
    }
    return "unknown";
}

GridSpec default_grid(const PotentialSpec& spec) {
    if (spec.kind == PotentialKind::catalog && spec.catalog_name == CatalogName::box) {
        return GridSpec{0.0, std::numbers::pi, 629};
    }
    return GridSpec{};
}

GridFunction catalog_potential(const PotentialSpec& spec, const Grid1D& grid) {
    if (spec.kind != PotentialKind::catalog) {
        throw InvalidArgument("catalog_potential called for a tabulated potential");
    }
    switch (spec.catalog_name) {
        case CatalogName::harmonic: {
            const double w = spec.params.at("omega");
            return GridFunction::sample(grid, [w](double x) { return w * w * x * x; });
        }
        case CatalogName::box:
            return GridFunction::constant(grid, 0.0);
        case CatalogName::poschl_teller: {
            const double a = spec.params.at("a");
            return GridFunction::sample(grid, [a](double x) {
                const double s = 1.0 / std::cosh(x);
                return -a * (a + 1.0) * s * s;
            });
        }
    }
    throw InvalidArgument("unknown catalog potential");
}

}  // namespace isospec::cli
