#include "isospec/susy.hpp"

#include <string>

namespace isospec {

namespace {

void require_trusted_size(const Window& w) {
    if (w.size() < kMinTrustedPoints) {
        throw WindowTooSmallError("trusted window has " + std::to_string(w.size()) +
                                      " points, need at least " +
                                      std::to_string(kMinTrustedPoints),
                                  w.size());
    }
}

GridFunction trusted(const ZeroMode& u) { return u.psi().restricted(u.trusted_window()); }

}  // namespace

Superpotential superpotential_from_mode(const ZeroMode& u) {
    if (!u.nodeless()) {
        throw BrokenSusyError("superpotential needs a nodeless zero mode", 0);
    }
    const Window w = u.trusted_window();
    const GridFunction du = derivative(u.psi()).restricted(w);
    GridFunction w_prime = combine(du, trusted(u), [](double d, double v) { return -d / v; });
    return Superpotential{std::move(w_prime), u, w};
}

GridFunction apply_A(const Superpotential& s, const GridFunction& f) {
    require_same_grid(s.w_prime, f);
    return derivative(f) + s.w_prime * f;
}

GridFunction apply_A_dagger(const Superpotential& s, const GridFunction& f) {
    require_same_grid(s.w_prime, f);
    return s.w_prime * f - derivative(f);
}

PartnerPair partner_potential(const Superpotential& s) {
    const GridFunction w2 = s.w_prime * s.w_prime;
    const GridFunction w_pp = derivative(s.w_prime);
    return PartnerPair{w2 - w_pp, w2 + w_pp, s};
}

GridFunction partner_potential_on_grid(const Superpotential& s,
                                       const GridFunction& shifted_potential) {
    require_same_grid(s.w_prime, shifted_potential);
    const GridFunction w_pp = derivative(s.w_prime);
    const Window w = w_pp.window();
    std::vector<double> v(shifted_potential.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = i < w.lo ? w.lo : (i > w.hi ? w.hi : i);
        v[i] = shifted_potential[i] + 2.0 * w_pp[j];
    }
    return GridFunction(shifted_potential.grid(), std::move(v), shifted_potential.window());
}

GridFunction second_solution_minus(const ZeroMode& u) {
    require_trusted_size(u.trusted_window());
    const GridFunction ut = trusted(u);
    const GridFunction inv_u2 = map(ut, [](double v) { return 1.0 / (v * v); });
    return ut * cumulative_integral(inv_u2, IntegralOrigin::left);
}

GridFunction second_solution_plus(const ZeroMode& u, IntegralOrigin origin) {
    return fermionic_zero_mode(u, 0.0, origin);
}

GridFunction general_zero_mode_minus(const ZeroMode& u, double lambda_s) {
    const GridFunction v_minus = second_solution_minus(u);
    return combine(u.psi(), v_minus, [lambda_s](double a, double b) { return lambda_s * a + b; });
}

GridFunction fermionic_zero_mode(const ZeroMode& u, double lambda_s, IntegralOrigin origin) {
    require_trusted_size(u.trusted_window());
    const GridFunction u2 = map(u.psi(), [](double v) { return v * v; });
    const GridFunction running = cumulative_integral(u2, origin);
    return combine(running, trusted(u), [lambda_s](double c, double v) { return (lambda_s + c) / v; });
}

GridFunction apply_T1(const ZeroMode& u, const GridFunction& f) {
    return apply_A(superpotential_from_mode(u), f);
}

GridFunction apply_T1_dagger(const ZeroMode& u, const GridFunction& f) {
    return apply_A_dagger(superpotential_from_mode(u), f);
}

GridFunction apply_T_minus_lambda(const ZeroMode& psi_lambda, const GridFunction& f) {
    require_same_grid(psi_lambda.psi(), f);
    const GridFunction psi = trusted(psi_lambda);
    const GridFunction psi_f = psi * f;
    const GridFunction psi_sq = psi * psi;
    return psi_sq * f - derivative(psi_f) / psi;
}

GridFunction apply_T_plus_lambda(const ZeroMode& psi_lambda, const GridFunction& f) {
    require_same_grid(psi_lambda.psi(), f);
    const GridFunction psi = trusted(psi_lambda);
    const GridFunction ratio = f / psi;
    return psi * derivative(ratio) + ratio / psi;
}

}  // namespace isospec
