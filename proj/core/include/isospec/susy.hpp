#pragma once

#include "isospec/grid.hpp"
#include "isospec/spectral.hpp"

namespace isospec {

/// Shortest trusted window second_solution_minus / second_solution_plus accept.
inline constexpr std::size_t kMinTrustedPoints = 10;

/**
 * Log-derivative superpotential W' = -u'/u of a true zero mode u.
 *
 * Only meaningful where u is not exponentially small, so w_prime is masked
 * to the trusted window of u.
 */
struct Superpotential {
    GridFunction w_prime;
    ZeroMode source_mode;
    Window trusted_window;
};

Superpotential superpotential_from_mode(const ZeroMode& u);

/// A f = (D + W') f on the common window.
GridFunction apply_A(const Superpotential& s, const GridFunction& f);
/// A^dagger f = (-D + W') f on the common window.
GridFunction apply_A_dagger(const Superpotential& s, const GridFunction& f);

/// Bosonic and fermionic partners V- = W'^2 - W'', V+ = W'^2 + W'' on the trusted window.
struct PartnerPair {
    GridFunction v_minus;
    GridFunction v_plus;
    Superpotential superpotential;
};

PartnerPair partner_potential(const Superpotential& s);

/**
 * V+ on the whole grid, as needed to diagonalize H+.
 *
 * Inside the trusted window this is shifted_potential + 2 W''; outside it
 * W'' is held at its value on the nearest window edge. There |u| is below
 * 1e-6 of its peak, so low-lying levels barely see the continuation.
 */
GridFunction partner_potential_on_grid(const Superpotential& s,
                                       const GridFunction& shifted_potential);

/// v- = u * int^x 1/u^2, origin at the left edge of the trusted window.
GridFunction second_solution_minus(const ZeroMode& u);

/// v+ = (1/u) * int^x u^2 on the trusted window.
GridFunction second_solution_plus(const ZeroMode& u, IntegralOrigin origin = IntegralOrigin::left);

/// Phi- = lambda_s u + v-.
GridFunction general_zero_mode_minus(const ZeroMode& u, double lambda_s);

/// Phi+ = (lambda_s + int^x u^2) / u, the one-parameter fermionic zero mode.
GridFunction fermionic_zero_mode(const ZeroMode& u, double lambda_s,
                                 IntegralOrigin origin = IntegralOrigin::left);

/// T1 f = (D - u'/u) f. Same operator as A built from u.
GridFunction apply_T1(const ZeroMode& u, const GridFunction& f);
/// T1^dagger f = (-D - u'/u) f.
GridFunction apply_T1_dagger(const ZeroMode& u, const GridFunction& f);

/**
 * T-_lambda f = (-D + Psi^2 - Psi'/Psi) f.
 *
 * Evaluated in the conjugated form -Psi^{-1} D(Psi f) + Psi^2 f, which is the
 * same operator but keeps T-_lambda (1/Psi) = Psi exact on the grid. psi_lambda
 * must be the raw mode u / (lambda + int^x u^2), not a rescaled copy.
 */
GridFunction apply_T_minus_lambda(const ZeroMode& psi_lambda, const GridFunction& f);

/// T+_lambda f = (D + Psi^{-2} - Psi'/Psi) f, evaluated as Psi D(f/Psi) + f/Psi^2.
GridFunction apply_T_plus_lambda(const ZeroMode& psi_lambda, const GridFunction& f);

}  // namespace isospec
