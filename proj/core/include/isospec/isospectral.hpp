#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isospec/grid.hpp"
#include "isospec/spectral.hpp"

namespace isospec {

/// Closed set of deformation parameters for which lambda + I(x) vanishes on the grid.
struct ExcludedInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double lambda) const noexcept { return lambda >= lo && lambda <= hi; }
};

/// Accepted parameters keep |lambda + I(x)| above this everywhere.
inline constexpr double kMinDenominator = 1e-9;

/**
 * [-max I, -min I] with I(x) = int^x u^2. For a unit-normalized u and the
 * left origin this is [-1, 0] up to quadrature and truncation error.
 */
ExcludedInterval excluded_interval(const ZeroMode& u, IntegralOrigin origin = IntegralOrigin::left);

/**
 * Throws unless lambda + I(x) keeps one sign with magnitude above
 * kMinDenominator. Parameters on the ends of the excluded interval raise
 * AbrahamMosesLimitError (lower end) or PurseyLimitError (upper end); interior
 * ones raise SingularParameterError carrying the first x where the
 * denominator changes sign.
 */
void require_valid_parameter(const ZeroMode& u, double lambda,
                             IntegralOrigin origin = IntegralOrigin::left);

/// sqrt(lambda (lambda + 1)); SingularParameterError for lambda in [-1, 0].
double normalization_constant(double lambda);

/// Psi_lambda = u / (lambda + int^x u^2) in raw and unit-norm form.
struct MielnikMode {
    double lambda = 0.0;
    ZeroMode raw;
    ZeroMode normalized;
    /// Closed-form sqrt((lambda + I_first)(lambda + I_last) / (I_last - I_first));
    /// reduces to sqrt(lambda (lambda + 1)) for a unit-normalized u with left origin.
    double normalization = 0.0;
};

MielnikMode psi_lambda(const ZeroMode& u, double lambda,
                       IntegralOrigin origin = IntegralOrigin::left);

/// V_lambda = V- - 4 u u' / (lambda + I) + 2 u^4 / (lambda + I)^2.
GridFunction deformed_potential(const GridFunction& v_minus, const ZeroMode& u, double lambda,
                                IntegralOrigin origin = IntegralOrigin::left);

struct DeformationStep {
    double lambda = 0.0;
    ZeroMode u_in;
    ZeroMode u_out;       // normalized Psi_lambda, input to the next step
    GridFunction raw_mode;  // u_in / (lambda + int^x u_in^2), kept for audit
    GridFunction v_out;
    double normalization = 0.0;
    bool valid = false;
};

struct DeformationChain {
    GridFunction base_potential;
    ZeroMode base_mode;
    std::vector<DeformationStep> steps;

    const GridFunction& potential() const noexcept {
        return steps.empty() ? base_potential : steps.back().v_out;
    }
    const ZeroMode& mode() const noexcept { return steps.empty() ? base_mode : steps.back().u_out; }
};

/**
 * Repeats the one-parameter deformation, renormalizing the zero mode after
 * every step. Each lambda is checked against the interval of its own input
 * mode; the first bad one aborts with its step index attached.
 */
DeformationChain chain_deform(const GridFunction& v_minus, const ZeroMode& u,
                              std::span<const double> lambdas);

/// psi'' / psi on the trusted window of psi.
GridFunction reconstruct_potential_from_mode(const ZeroMode& psi);

}  // namespace isospec
