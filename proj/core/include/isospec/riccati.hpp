#pragma once

#include "isospec/grid.hpp"
#include "isospec/susy.hpp"

namespace isospec {

/// Particular solutions must satisfy y' = -y^2 + f to this relative residual.
inline constexpr double kParticularResidualTolerance = 1e-6;

/**
 * Scale of the integrating factor g = C exp(-2 int^x y0).
 *
 * origin_unit takes C = 1, so g = 1 at the left window edge. unit_mass picks
 * C so that int g over the window is 1; with y0 = -u'/u this makes g match a
 * unit-normalized u^2 and the Riccati constant coincide with the Mielnik lambda.
 */
enum class FactorScale { origin_unit, unit_mass };

/// A fermionic Riccati equation y' = -y^2 + f with a known particular solution.
class RiccatiInstance {
public:
    /// Throws InvalidInput when y0 misses the equation by more than kParticularResidualTolerance.
    RiccatiInstance(GridFunction y0, GridFunction f_rhs, double lambda_r,
                    FactorScale scale = FactorScale::origin_unit);

    const GridFunction& y0() const noexcept { return y0_; }
    const GridFunction& f_rhs() const noexcept { return f_rhs_; }
    double lambda_r() const noexcept { return lambda_r_; }
    FactorScale factor_scale() const noexcept { return scale_; }

    RiccatiInstance with_lambda(double lambda_r) const;

private:
    GridFunction y0_;
    GridFunction f_rhs_;
    double lambda_r_;
    FactorScale scale_;
};

/// y0 = W', f = W'' + W'^2 (the fermionic potential in superpotential form), g scaled to unit mass.
RiccatiInstance fermionic_riccati_instance(const Superpotential& s, double lambda_r);

/// g = C exp(-2 int^x y0), running integral from the left edge of the y0 window.
GridFunction integrating_factor(const RiccatiInstance& inst);

/// y1 = y0 + g / (lambda_r + int^x g). SingularParameterError if the denominator vanishes.
GridFunction riccati_general_solution(const RiccatiInstance& inst);

/// max |y' + y^2 - f| / (1 + max|f|) over the common window.
double riccati_residual(const GridFunction& y, const GridFunction& f_rhs);

}  // namespace isospec
