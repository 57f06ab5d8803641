#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "isospec/error.hpp"

namespace isospec {

/**
 * Uniform 1-D grid on [x_min, x_max] with n points.
 *
 * Point i sits at x_min + i*h, computed from the index each time so that
 * positions never accumulate drift.
 */
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t n() const noexcept { return n_; }
    double h() const noexcept { return h_; }

    /// The last node returns x_max itself, so a grid rebuilt from its own end points is identical.
    double x(std::size_t i) const noexcept {
        return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * h_;
    }
    std::vector<double> points() const;

    /// Index of the centre node, (n-1)/2.
    std::size_t mid_index() const noexcept { return (n_ - 1) / 2; }

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double h_;
};

/// Validating factory; takes a signed count so negative sizes are reported, not wrapped.
Grid1D make_grid(double x_min, double x_max, long long n);

/// Inclusive index range [lo, hi] on a grid.
struct Window {
    std::size_t lo = 0;
    std::size_t hi = 0;

    std::size_t size() const noexcept { return hi - lo + 1; }
    bool contains(std::size_t i) const noexcept { return i >= lo && i <= hi; }

    friend bool operator==(const Window&, const Window&) = default;
};

Window full_window(const Grid1D& grid) noexcept;
/// Throws InvalidArgument when the windows do not overlap.
Window intersect(const Window& a, const Window& b);
/// Drops `points` samples from each end. Throws WindowTooSmallError if nothing is left.
Window shrink(const Window& w, std::size_t points);

/// Lower limit used for every running integral "int^x".
enum class IntegralOrigin { left, mid };

/**
 * Real function sampled on a Grid1D.
 *
 * A function may be masked: only samples inside window() are meaningful and
 * finite, everything outside holds NaN. Unmasked functions have the full grid
 * as their window.
 */
class GridFunction {
public:
    GridFunction(Grid1D grid, std::vector<double> values);
    GridFunction(Grid1D grid, std::vector<double> values, Window window);

    template <class F>
    static GridFunction sample(const Grid1D& grid, F&& f) {
        std::vector<double> v(grid.n());
        for (std::size_t i = 0; i < grid.n(); ++i) {
            v[i] = f(grid.x(i));
        }
        return GridFunction(grid, std::move(v));
    }

    static GridFunction constant(const Grid1D& grid, double value) {
        return GridFunction(grid, std::vector<double>(grid.n(), value));
    }

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    const Window& window() const noexcept { return window_; }
    bool is_masked() const noexcept { return window_ != full_window(grid_); }

    /// Same samples, window narrowed to the overlap with `w`.
    GridFunction restricted(const Window& w) const;

private:
    Grid1D grid_;
    std::vector<double> values_;
    Window window_;
};

/// Throws InvalidArgument unless both functions live on the same grid.
void require_same_grid(const GridFunction& a, const GridFunction& b);

template <class F>
GridFunction map(const GridFunction& f, F&& op) {
    std::vector<double> out(f.size(), std::nan(""));
    const Window w = f.window();
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        out[i] = op(f[i]);
    }
    return GridFunction(f.grid(), std::move(out), w);
}

/// Pointwise binary operation over the intersection of the two windows.
template <class F>
GridFunction combine(const GridFunction& a, const GridFunction& b, F&& op) {
    require_same_grid(a, b);
    const Window w = intersect(a.window(), b.window());
    std::vector<double> out(a.size(), std::nan(""));
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        out[i] = op(a[i], b[i]);
    }
    return GridFunction(a.grid(), std::move(out), w);
}

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator/(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& f);
GridFunction operator+(const GridFunction& f, double c);
GridFunction operator-(const GridFunction& f);

/// Largest |f| over the window.
double max_abs(const GridFunction& f);
/// Largest |a - b| over the common window.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

/// First derivative: central differences inside the window, second-order one-sided at its ends.
GridFunction derivative(const GridFunction& f);

/// Second derivative: three-point central stencil, four-point one-sided at the window ends.
GridFunction second_derivative(const GridFunction& f);

/**
 * Running trapezoid integral over the window of f.
 *
 * With IntegralOrigin::left the result is exactly 0 at the first window
 * point; with IntegralOrigin::mid it is 0 at the grid centre node, which must
 * lie inside the window. For f >= 0 the left-origin result is nondecreasing.
 */
GridFunction cumulative_integral(const GridFunction& f,
                                 IntegralOrigin origin = IntegralOrigin::left);

enum class QuadratureRule { simpson, trapezoid };

struct Quadrature {
    double value = 0.0;
    QuadratureRule rule = QuadratureRule::simpson;
};

/// Composite Simpson over the window; falls back to trapezoid (and says so) for an even point count.
Quadrature quadrature(const GridFunction& f);

double integrate(const GridFunction& f);
double l2_norm(const GridFunction& f);

/// Sign changes between neighbouring samples whose magnitudes both exceed floor * max|f|.
std::size_t count_sign_changes(const GridFunction& f, double relative_floor);

}  // namespace isospec
