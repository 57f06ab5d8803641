#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isospec/grid.hpp"

namespace isospec {

/// Sign changes are only counted between samples above this fraction of max|psi|.
inline constexpr double kNodeNoiseFloor = 1e-8;
/// Operations dividing by u (or u^2) only trust points with |u| >= this fraction of max|u|.
inline constexpr double kTrustedWindowThreshold = 1e-6;
/// Required eigenpair residual, relative to max(1, largest returned |E|).
inline constexpr double kEigenResidualTolerance = 1e-8;

/**
 * Finite-difference Hamiltonian -D^2 + V on the interior points of a grid
 * (Dirichlet walls at both ends). Symmetric, so one off-diagonal array
 * serves both bands: diag[i] = 2/h^2 + V(x_{i+1}), offdiag[i] = -1/h^2.
 */
struct TridiagonalOperator {
    Grid1D grid;
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t size() const noexcept { return diag.size(); }
    /// y = H x for a vector over the interior points.
    std::vector<double> apply(std::span<const double> x) const;
};

TridiagonalOperator build_hamiltonian(const GridFunction& potential);

struct SpectrumReport {
    std::vector<double> eigenvalues;     // ascending
    std::size_t k = 0;
    std::vector<double> residual_norms;  // ||H psi - E psi|| / ||psi|| per pair
    double ground_energy_shift = 0.0;    // E_0 of this operator
    double tolerance = 0.0;              // bound every residual_norm satisfies
};

struct Eigenpairs {
    SpectrumReport report;
    /// Eigenvectors on the full grid (zero at both walls), scaled so that h * sum(psi^2) = 1.
    std::vector<GridFunction> vectors;
};

/**
 * k smallest eigenpairs of a symmetric tridiagonal operator.
 *
 * Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
 * iteration with reorthogonalization. The whole procedure is deterministic.
 * Throws InvalidArgument unless 1 <= k <= size(), SolverError when inverse
 * iteration fails to reach the residual tolerance.
 */
Eigenpairs lowest_eigenpairs(const TridiagonalOperator& h, std::size_t k);

/// Bisection only; no eigenvectors.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& h, std::size_t k);

/**
 * A nodeless function used as the true zero mode u.
 *
 * The global sign is fixed so that psi > 0 on its trusted window, the
 * contiguous run around max|psi| where |psi| >= kTrustedWindowThreshold * max|psi|.
 */
class ZeroMode {
public:
    enum class Scaling { unit_norm, as_given };

    /// Throws BrokenSusyError when psi has a node above the noise floor.
    static ZeroMode from_function(const GridFunction& psi, Scaling scaling = Scaling::unit_norm,
                                  double energy_shift = 0.0);

    const GridFunction& psi() const noexcept { return psi_; }
    const Grid1D& grid() const noexcept { return psi_.grid(); }
    double norm() const noexcept { return norm_; }
    bool nodeless() const noexcept { return nodeless_; }
    double energy_shift() const noexcept { return energy_shift_; }
    const Window& trusted_window() const noexcept { return trusted_; }

private:
    ZeroMode(GridFunction psi, double norm, double energy_shift, Window trusted)
        : psi_(std::move(psi)), norm_(norm), nodeless_(true), energy_shift_(energy_shift),
          trusted_(trusted) {}

    GridFunction psi_;
    double norm_;
    bool nodeless_;
    double energy_shift_;
    Window trusted_;
};

struct GroundState {
    ZeroMode mode;
    GridFunction shifted_potential;  // V - E_0, so that H u = 0
    SpectrumReport spectrum;         // lowest two levels of the unshifted V
    std::vector<std::string> warnings;
};

/// Throws BrokenSusyError for a nodeful lowest eigenvector, SolverError for a degenerate ground level.
GroundState ground_state(const GridFunction& potential);

/// -f'' + V f over the common window.
GridFunction apply_hamiltonian(const GridFunction& potential, const GridFunction& f);

struct IsospectralComparison {
    std::vector<double> eigenvalues_a;
    std::vector<double> eigenvalues_b;
    std::vector<double> differences;  // paired E(a) - E(b)
    double max_abs_difference = 0.0;
    bool partner_mode = false;
};

/**
 * Compares the low spectra of two potentials on the same grid.
 * With skip_ground_of_a the pairing is E_{n+1}(a) against E_n(b) (partner
 * ladder); otherwise E_n(a) against E_n(b), n = 0..k-1.
 */
IsospectralComparison verify_isospectral(const GridFunction& a, const GridFunction& b,
                                         std::size_t k, bool skip_ground_of_a);

}  // namespace isospec
