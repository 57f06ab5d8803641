#pragma once

#include <map>
#include <optional>
#include <string>

#include "isospec/grid.hpp"

namespace isospec::cli {

enum class PotentialKind { catalog, tabulated };
enum class CatalogName { harmonic, box, poschl_teller };

/**
 * Where a potential comes from.
 *
 * Catalog entries (units hbar = 2m = 1):
 *   harmonic      V = omega^2 x^2          (omega, default 1)
 *   box           V = 0, walls at the grid edges
 *   poschl_teller V = -a (a + 1) sech^2 x  (a, default 1)
 */
struct PotentialSpec {
    PotentialKind kind = PotentialKind::catalog;
    CatalogName catalog_name = CatalogName::harmonic;
    std::map<std::string, double> params;
    std::string table_path;
};

/// Catalog name if it is one, otherwise a path to a tabulated `x,V` file.
PotentialSpec parse_potential_spec(const std::string& name_or_path,
                                   std::optional<double> omega = std::nullopt,
                                   std::optional<double> a = std::nullopt);

std::string to_string(CatalogName name);

struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    long long n = 2001;
};

/// [-10, 10] with 2001 points for whole-line potentials, [0, pi] with 629 for the box.
GridSpec default_grid(const PotentialSpec& spec);

/// Catalog potential sampled on `grid`. Tabulated specs are loaded with ingest_table instead.
GridFunction catalog_potential(const PotentialSpec& spec, const Grid1D& grid);

}  // namespace isospec::cli
