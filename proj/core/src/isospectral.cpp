#include "isospec/isospectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

namespace isospec {

namespace {

GridFunction running_mass(const ZeroMode& u, IntegralOrigin origin) {
    return cumulative_integral(map(u.psi(), [](double v) { return v * v; }), origin);
}

std::string describe(double lambda, const ExcludedInterval& ex) {
    std::ostringstream os;
    os.precision(6);
    os << "lambda = " << lambda << " lies in the excluded interval [" << ex.lo << ", " << ex.hi
       << "]";
    return os.str();
}

void check_against(const GridFunction& running, double lambda, const ExcludedInterval& ex) {
    if (!std::isfinite(lambda)) {
        throw InvalidArgument("deformation parameter must be finite");
    }
    const double tol = kMinDenominator;
    if (std::abs(lambda - ex.lo) <= tol) {
        throw AbrahamMosesLimitError(describe(lambda, ex) + " (Abraham-Moses limit)", lambda,
                                     ex.lo, ex.hi, std::nullopt);
    }
    if (std::abs(lambda - ex.hi) <= tol) {
        throw PurseyLimitError(describe(lambda, ex) + " (Pursey limit)", lambda, ex.lo, ex.hi,
                               std::nullopt);
    }
    const Window w = running.window();
    double min_abs = std::abs(lambda + running[w.lo]);
    const bool positive = lambda + running[w.lo] > 0.0;
    std::optional<double> offending;
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        const double d = lambda + running[i];
        min_abs = std::min(min_abs, std::abs(d));
        if (!offending && (d == 0.0 || (d > 0.0) != positive)) {
            offending = running.grid().x(i);
        }
    }
    if (offending || min_abs <= tol) {
        std::string msg = describe(lambda, ex);
        if (offending) msg += "; lambda + I(x) changes sign at x = " + std::to_string(*offending);
        throw SingularParameterError(msg, lambda, ex.lo, ex.hi, offending);
    }
}

ExcludedInterval interval_of(const GridFunction& running) {
    const Window w = running.window();
    double lo = running[w.lo];
    double hi = running[w.lo];
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        lo = std::min(lo, running[i]);
        hi = std::max(hi, running[i]);
    }
    return ExcludedInterval{-hi + 0.0, -lo + 0.0};  // +0.0 turns -0 into 0
}

}  // namespace

ExcludedInterval excluded_interval(const ZeroMode& u, IntegralOrigin origin) {
    return interval_of(running_mass(u, origin));
}

void require_valid_parameter(const ZeroMode& u, double lambda, IntegralOrigin origin) {
    const GridFunction running = running_mass(u, origin);
    check_against(running, lambda, interval_of(running));
}

double normalization_constant(double lambda) {
    const ExcludedInterval unit{-1.0, 0.0};
    if (lambda == -1.0) {
        throw AbrahamMosesLimitError(describe(lambda, unit) + " (Abraham-Moses limit)", lambda,
                                     -1.0, 0.0, std::nullopt);
    }
    if (lambda == 0.0) {
        throw PurseyLimitError(describe(lambda, unit) + " (Pursey limit)", lambda, -1.0, 0.0,
                               std::nullopt);
    }
    if (unit.contains(lambda)) {
        throw SingularParameterError(describe(lambda, unit) + "; lambda (lambda + 1) < 0", lambda,
                                     -1.0, 0.0, std::nullopt);
    }
    return std::sqrt(lambda * (lambda + 1.0));
}

MielnikMode psi_lambda(const ZeroMode& u, double lambda, IntegralOrigin origin) {
    const GridFunction running = running_mass(u, origin);
    check_against(running, lambda, interval_of(running));
    const GridFunction denom = running + lambda;
    const GridFunction raw = u.psi() / denom;
    const Window w = running.window();
    const double first = running[w.lo];
    const double last = running[w.hi];
    const double n2 = (lambda + first) * (lambda + last) / (last - first);
    return MielnikMode{lambda, ZeroMode::from_function(raw, ZeroMode::Scaling::as_given),
                       ZeroMode::from_function(raw, ZeroMode::Scaling::unit_norm), std::sqrt(n2)};
}

GridFunction deformed_potential(const GridFunction& v_minus, const ZeroMode& u, double lambda,
                                IntegralOrigin origin) {
    require_same_grid(v_minus, u.psi());
    const GridFunction running = running_mass(u, origin);
    check_against(running, lambda, interval_of(running));
    const GridFunction& psi = u.psi();
    const GridFunction du = derivative(psi);
    std::vector<double> out(v_minus.size(), std::nan(""));
    const Window w = intersect(v_minus.window(), running.window());
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        const double d = lambda + running[i];
        const double u2 = psi[i] * psi[i];
        out[i] = v_minus[i] - 4.0 * psi[i] * du[i] / d + 2.0 * u2 * u2 / (d * d);
    }
    return GridFunction(v_minus.grid(), std::move(out), w);
}

DeformationChain chain_deform(const GridFunction& v_minus, const ZeroMode& u,
                              std::span<const double> lambdas) {
    DeformationChain chain{v_minus, u, {}};
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const ZeroMode& u_in = chain.mode();
        const GridFunction& v_in = chain.potential();
        try {
            MielnikMode mm = psi_lambda(u_in, lambdas[i]);
            GridFunction v_out = deformed_potential(v_in, u_in, lambdas[i]);
            chain.steps.push_back(DeformationStep{lambdas[i], u_in, std::move(mm.normalized),
                                                  mm.raw.psi(), std::move(v_out),
                                                  mm.normalization, true});
        } catch (const SingularParameterError& e) {
            const std::string msg = "chain step " + std::to_string(i) + ": " + e.what();
            if (dynamic_cast<const AbrahamMosesLimitError*>(&e)) {
                throw AbrahamMosesLimitError(msg, e.lambda(), e.excluded_lo(), e.excluded_hi(),
                                             e.offending_x(), i);
            }
            if (dynamic_cast<const PurseyLimitError*>(&e)) {
                throw PurseyLimitError(msg, e.lambda(), e.excluded_lo(), e.excluded_hi(),
                                       e.offending_x(), i);
            }
            throw SingularParameterError(msg, e.lambda(), e.excluded_lo(), e.excluded_hi(),
                                         e.offending_x(), i);
        }
    }
    return chain;
}

GridFunction reconstruct_potential_from_mode(const ZeroMode& psi) {
    if (!psi.nodeless()) {
        throw BrokenSusyError("potential reconstruction needs a nodeless mode", 0);
    }
    const GridFunction t = psi.psi().restricted(psi.trusted_window());
    return second_derivative(psi.psi()).restricted(psi.trusted_window()) / t;
}

}  // namespace isospec
