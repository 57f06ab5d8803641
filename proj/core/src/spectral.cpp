#include "isospec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace isospec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxInverseIterations = 8;
constexpr std::size_t kMaxBisectionSteps = 256;

double operator_norm_bound(const TridiagonalOperator& h) {
    const std::size_t m = h.size();
    double bound = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = std::abs(h.diag[i]);
        if (i > 0) row += std::abs(h.offdiag[i - 1]);
        if (i + 1 < m) row += std::abs(h.offdiag[i]);
        bound = std::max(bound, row);
    }
    return bound;
}

// Number of eigenvalues strictly below sigma (Sturm sequence via LDL^T pivots).
std::size_t sturm_count(const TridiagonalOperator& h, double sigma, double pivmin) {
    std::size_t count = 0;
    double q = h.diag[0] - sigma;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double e = h.offdiag[i - 1];
        q = h.diag[i] - sigma - e * e / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

struct Bounds {
    double lo;
    double hi;
};

Bounds gershgorin(const TridiagonalOperator& h) {
    const std::size_t m = h.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < m; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(h.offdiag[i - 1]);
        if (i + 1 < m) r += std::abs(h.offdiag[i]);
        lo = std::min(lo, h.diag[i] - r);
        hi = std::max(hi, h.diag[i] + r);
    }
    const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    return {lo - pad, hi + pad};
}

// LU factorization of (H - sigma I) with partial pivoting; U has two superdiagonals.
class ShiftedLU {
public:
    ShiftedLU(const TridiagonalOperator& h, double sigma, double tiny)
        : d_(h.diag), dl_(h.offdiag), du_(h.offdiag), du2_(h.size(), 0.0), swap_(h.size(), false) {
        const std::size_t m = h.size();
        for (double& v : d_) v -= sigma;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] == 0.0) d_[i] = tiny;
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < m) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swap_[i] = true;
            }
        }
        for (double& v : d_) {
            if (std::abs(v) < tiny) v = std::copysign(tiny, v == 0.0 ? 1.0 : v);
        }
    }

    void solve(std::vector<double>& b) const {
        const std::size_t m = d_.size();
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (swap_[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= dl_[i] * b[i];
        }
        b[m - 1] /= d_[m - 1];
        if (m > 1) b[m - 2] = (b[m - 2] - du_[m - 2] * b[m - 1]) / d_[m - 2];
        for (std::size_t i = m < 3 ? 0 : m - 2; i-- > 0;) {
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
        }
    }

private:
    std::vector<double> d_;
    std::vector<double> dl_;
    std::vector<double> du_;
    std::vector<double> du2_;
    std::vector<bool> swap_;
};

double euclid(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double residual_norm(const TridiagonalOperator& h, std::span<const double> v, double e) {
    const std::vector<double> hv = h.apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = hv[i] - e * v[i];
        s += r * r;
    }
    return std::sqrt(s) / euclid(v);
}

GridFunction embed(const Grid1D& grid, const std::vector<double>& interior) {
    std::vector<double> full(grid.n(), 0.0);
    std::copy(interior.begin(), interior.end(), full.begin() + 1);
    return GridFunction(grid, std::move(full));
}

Window trusted_run(const GridFunction& psi) {
    const Window w = psi.window();
    std::size_t peak = w.lo;
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        if (std::abs(psi[i]) > std::abs(psi[peak])) peak = i;
    }
    const double floor = kTrustedWindowThreshold * std::abs(psi[peak]);
    std::size_t lo = peak;
    std::size_t hi = peak;
    while (lo > w.lo && std::abs(psi[lo - 1]) >= floor) --lo;
    while (hi < w.hi && std::abs(psi[hi + 1]) >= floor) ++hi;
    return Window{lo, hi};
}

}  // namespace

std::vector<double> TridiagonalOperator::apply(std::span<const double> x) const {
    const std::size_t m = size();
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += offdiag[i - 1] * x[i - 1];
        if (i + 1 < m) v += offdiag[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

TridiagonalOperator build_hamiltonian(const GridFunction& potential) {
    const Grid1D& grid = potential.grid();
    if (potential.is_masked()) {
        throw InvalidInput("Hamiltonian needs the potential on the whole grid, got a masked function");
    }
    for (std::size_t i = 0; i < grid.n(); ++i) {
        if (!std::isfinite(potential[i])) {
            throw InvalidInput("non-finite potential at x = " + std::to_string(grid.x(i)));
        }
    }
    const std::size_t m = grid.n() - 2;
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    TridiagonalOperator h{grid, std::vector<double>(m), std::vector<double>(m - 1, -inv_h2)};
    for (std::size_t i = 0; i < m; ++i) {
        h.diag[i] = 2.0 * inv_h2 + potential[i + 1];
    }
    return h;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& h, std::size_t k) {
    if (k < 1 || k > h.size()) {
        throw InvalidArgument("requested " + std::to_string(k) + " eigenvalues of a " +
                              std::to_string(h.size()) + "x" + std::to_string(h.size()) +
                              " operator");
    }
    double max_e2 = 0.0;
    for (double e : h.offdiag) max_e2 = std::max(max_e2, e * e);
    const double pivmin = std::max(std::numeric_limits<double>::min(), kEps * kEps * max_e2);
    const Bounds b = gershgorin(h);

    std::vector<double> values(k);
    for (std::size_t j = 0; j < k; ++j) {
        double lo = j == 0 ? b.lo : values[j - 1];
        double hi = b.hi;
        for (std::size_t step = 0; step < kMaxBisectionSteps; ++step) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
            if (sturm_count(h, mid, pivmin) > j) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        values[j] = 0.5 * (lo + hi);
    }
    return values;
}

Eigenpairs lowest_eigenpairs(const TridiagonalOperator& h, std::size_t k) {
    const std::vector<double> values = lowest_eigenvalues(h, k);
    const std::size_t m = h.size();
    const double norm = operator_norm_bound(h);
    const double tiny = kEps * norm;
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const double tolerance = kEigenResidualTolerance * scale;

    Eigenpairs out;
    out.report.k = k;
    out.report.eigenvalues = values;
    out.report.tolerance = tolerance;
    out.report.ground_energy_shift = values.front();

    std::vector<std::vector<double>> basis;
    const double step = h.grid.h();
    for (std::size_t j = 0; j < k; ++j) {
        const ShiftedLU lu(h, values[j], tiny);
        std::vector<double> v(m);
        for (std::size_t i = 0; i < m; ++i) {
            // fixed, non-symmetric start vector so no eigenvector is missed by parity
            v[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + 0.11 * static_cast<double>(j));
        }
        double res = std::numeric_limits<double>::infinity();
        std::size_t it = 0;
        for (; it < kMaxInverseIterations; ++it) {
            lu.solve(v);
            for (const auto& q : basis) {
                const double c = std::inner_product(q.begin(), q.end(), v.begin(), 0.0);
                for (std::size_t i = 0; i < m; ++i) v[i] -= c * q[i];
            }
            const double nv = euclid(v);
            for (double& x : v) x /= nv;
            res = residual_norm(h, v, values[j]);
            if (it >= 1 && res < 0.01 * tolerance) break;
        }
        if (!(res < tolerance)) {
            throw SolverError("inverse iteration for eigenvalue " + std::to_string(j) +
                                  " stalled at residual " + std::to_string(res),
                              it);
        }
        // first significant component positive
        const double vmax = std::abs(*std::max_element(
            v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }));
        for (double x : v) {
            if (std::abs(x) > kNodeNoiseFloor * vmax) {
                if (x < 0.0) {
                    for (double& y : v) y = -y;
                }
                break;
            }
        }
        basis.push_back(v);
        out.report.residual_norms.push_back(res);

        std::vector<double> scaled = v;
        const double s = 1.0 / std::sqrt(step);
        for (double& x : scaled) x *= s;
        out.vectors.push_back(embed(h.grid, scaled));
    }
    return out;
}

ZeroMode ZeroMode::from_function(const GridFunction& psi, Scaling scaling, double energy_shift) {
    const std::size_t nodes = count_sign_changes(psi, kNodeNoiseFloor);
    if (nodes != 0) {
        throw BrokenSusyError("zero mode has " + std::to_string(nodes) +
                                  " node(s); the factorization needs a nodeless u",
                              nodes);
    }
    const double peak = max_abs(psi);
    if (!(peak > 0.0)) {
        throw BrokenSusyError("zero mode vanishes identically", 0);
    }
    const Window trusted = trusted_run(psi);
    double sign = 1.0;
    for (std::size_t i = trusted.lo; i <= trusted.hi; ++i) {
        if (std::abs(psi[i]) > 0.0) {
            sign = psi[i] > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    GridFunction fixed = sign * psi;
    const double norm = l2_norm(fixed);
    if (scaling == Scaling::unit_norm) {
        fixed = (1.0 / norm) * fixed;
        return ZeroMode(std::move(fixed), l2_norm(fixed), energy_shift, trusted);
    }
    return ZeroMode(std::move(fixed), norm, energy_shift, trusted);
}

GroundState ground_state(const GridFunction& potential) {
    const TridiagonalOperator h = build_hamiltonian(potential);
    const std::size_t k = std::min<std::size_t>(2, h.size());
    Eigenpairs pairs = lowest_eigenpairs(h, k);
    const double e0 = pairs.report.eigenvalues.front();
    if (k == 2 && !(pairs.report.eigenvalues[1] - e0 > pairs.report.tolerance)) {
        throw SolverError("ground level is not isolated: gap " +
                              std::to_string(pairs.report.eigenvalues[1] - e0),
                          0);
    }
    ZeroMode mode = ZeroMode::from_function(pairs.vectors.front(), ZeroMode::Scaling::unit_norm, e0);

    std::vector<std::string> warnings;
    const GridFunction& u = mode.psi();
    const double umax = max_abs(u);
    const std::size_t n = u.size();
    if (std::abs(u[1]) > kNodeNoiseFloor * umax || std::abs(u[n - 2]) > kNodeNoiseFloor * umax) {
        warnings.push_back("ground state is not negligible next to the walls (|u|/max|u| = " +
                           std::to_string(std::max(std::abs(u[1]), std::abs(u[n - 2])) / umax) +
                           "); the box truncates its tail");
    }
    return GroundState{std::move(mode), potential + (-e0), pairs.report, std::move(warnings)};
}

GridFunction apply_hamiltonian(const GridFunction& potential, const GridFunction& f) {
    return potential * f - second_derivative(f);
}

IsospectralComparison verify_isospectral(const GridFunction& a, const GridFunction& b,
                                         std::size_t k, bool skip_ground_of_a) {
    require_same_grid(a, b);
    IsospectralComparison cmp;
    cmp.partner_mode = skip_ground_of_a;
    cmp.eigenvalues_a = lowest_eigenpairs(build_hamiltonian(a), skip_ground_of_a ? k + 1 : k)
                            .report.eigenvalues;
    cmp.eigenvalues_b = lowest_eigenpairs(build_hamiltonian(b), k).report.eigenvalues;
    const std::size_t offset = skip_ground_of_a ? 1 : 0;
    for (std::size_t n = 0; n < k; ++n) {
        const double d = cmp.eigenvalues_a[n + offset] - cmp.eigenvalues_b[n];
        cmp.differences.push_back(d);
        cmp.max_abs_difference = std::max(cmp.max_abs_difference, std::abs(d));
    }
    return cmp;
}

}  // namespace isospec
