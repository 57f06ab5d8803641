#include "isospec/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace isospec {

RiccatiInstance::RiccatiInstance(GridFunction y0, GridFunction f_rhs, double lambda_r,
                                 FactorScale scale)
    : y0_(std::move(y0)), f_rhs_(std::move(f_rhs)), lambda_r_(lambda_r), scale_(scale) {
    require_same_grid(y0_, f_rhs_);
    if (!std::isfinite(lambda_r_)) {
        throw InvalidArgument("Riccati integration constant must be finite");
    }
    const double r = riccati_residual(y0_, f_rhs_);
    if (!(r < kParticularResidualTolerance)) {
        throw InvalidInput("y0 is not a particular solution: relative residual " +
                           std::to_string(r));
    }
}

RiccatiInstance RiccatiInstance::with_lambda(double lambda_r) const {
    return RiccatiInstance(y0_, f_rhs_, lambda_r, scale_);
}

RiccatiInstance fermionic_riccati_instance(const Superpotential& s, double lambda_r) {
    const GridFunction f = derivative(s.w_prime) + s.w_prime * s.w_prime;
    return RiccatiInstance(s.w_prime, f, lambda_r, FactorScale::unit_mass);
}

GridFunction integrating_factor(const RiccatiInstance& inst) {
    const GridFunction exponent = -2.0 * cumulative_integral(inst.y0(), IntegralOrigin::left);
    if (inst.factor_scale() == FactorScale::origin_unit) {
        return map(exponent, [](double e) { return std::exp(e); });
    }
    // shift by the peak exponent before exp so large windows cannot overflow
    const Window w = exponent.window();
    double peak = exponent[w.lo];
    for (std::size_t i = w.lo; i <= w.hi; ++i) peak = std::max(peak, exponent[i]);
    const GridFunction g = map(exponent, [peak](double e) { return std::exp(e - peak); });
    const double total = cumulative_integral(g)[w.hi];
    return (1.0 / total) * g;
}

GridFunction riccati_general_solution(const RiccatiInstance& inst) {
    const GridFunction g = integrating_factor(inst);
    const GridFunction running = cumulative_integral(g);
    const double lambda = inst.lambda_r();
    const Window w = running.window();

    double lo = running[w.lo];
    double hi = running[w.lo];
    std::optional<double> offending;
    const bool positive = lambda + running[w.lo] > 0.0;
    double min_abs = std::abs(lambda + running[w.lo]);
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        lo = std::min(lo, running[i]);
        hi = std::max(hi, running[i]);
        const double d = lambda + running[i];
        min_abs = std::min(min_abs, std::abs(d));
        if (!offending && (d == 0.0 || (d > 0.0) != positive)) offending = running.grid().x(i);
    }
    if (offending || min_abs == 0.0) {
        std::string msg = "Riccati denominator lambda_r + int g vanishes for lambda_r = " +
                          std::to_string(lambda);
        if (offending) msg += " at x = " + std::to_string(*offending);
        throw SingularParameterError(msg, lambda, -hi, -lo, offending);
    }
    const GridFunction w1 = g / (running + lambda);
    return inst.y0() + w1;
}

double riccati_residual(const GridFunction& y, const GridFunction& f_rhs) {
    const GridFunction r = derivative(y) + y * y - f_rhs;
    return max_abs(r) / (1.0 + max_abs(f_rhs.restricted(r.window())));
}

}  // namespace isospec
