#include "isospec/grid.hpp"

#include <algorithm>
#include <string>

namespace isospec {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
        throw InvalidArgument("grid requires finite x_min < x_max, got [" + std::to_string(x_min) +
                              ", " + std::to_string(x_max) + "]");
    }
    if (n < 3) {
        throw InvalidArgument("grid requires at least 3 points, got " + std::to_string(n));
    }
    h_ = (x_max - x_min) / static_cast<double>(n - 1);
}

std::vector<double> Grid1D::points() const {
    std::vector<double> p(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        p[i] = x(i);
    }
    return p;
}

Grid1D make_grid(double x_min, double x_max, long long n) {
    if (n < 3) {
        throw InvalidArgument("grid requires at least 3 points, got " + std::to_string(n));
    }
    return Grid1D(x_min, x_max, static_cast<std::size_t>(n));
}

Window full_window(const Grid1D& grid) noexcept { return Window{0, grid.n() - 1}; }

Window intersect(const Window& a, const Window& b) {
    const std::size_t lo = std::max(a.lo, b.lo);
    const std::size_t hi = std::min(a.hi, b.hi);
    if (lo > hi) {
        throw InvalidArgument("windows [" + std::to_string(a.lo) + ", " + std::to_string(a.hi) +
                              "] and [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                              "] do not overlap");
    }
    return Window{lo, hi};
}

Window shrink(const Window& w, std::size_t points) {
    if (w.size() <= 2 * points) {
        throw WindowTooSmallError("window of " + std::to_string(w.size()) +
                                      " points cannot lose " + std::to_string(points) +
                                      " from each end",
                                  w.size());
    }
    return Window{w.lo + points, w.hi - points};
}

GridFunction::GridFunction(Grid1D grid, std::vector<double> values)
    : GridFunction(grid, std::move(values), full_window(grid)) {}

GridFunction::GridFunction(Grid1D grid, std::vector<double> values, Window window)
    : grid_(grid), values_(std::move(values)), window_(window) {
    if (values_.size() != grid_.n()) {
        throw InvalidArgument("grid function has " + std::to_string(values_.size()) +
                              " samples for a grid of " + std::to_string(grid_.n()));
    }
    if (window_.lo > window_.hi || window_.hi >= grid_.n()) {
        throw InvalidArgument("window [" + std::to_string(window_.lo) + ", " +
                              std::to_string(window_.hi) + "] outside grid");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (window_.contains(i)) {
            if (!std::isfinite(values_[i])) {
                throw InvalidInput("non-finite sample at index " + std::to_string(i) +
                                   " (x = " + std::to_string(grid_.x(i)) + ")");
            }
        } else {
            values_[i] = std::nan("");
        }
    }
}

GridFunction GridFunction::restricted(const Window& w) const {
    return GridFunction(grid_, values_, intersect(window_, w));
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) {
        throw InvalidArgument("grid functions live on different grids");
    }
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return combine(a, b, [](double p, double q) { return p + q; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return combine(a, b, [](double p, double q) { return p - q; });
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    return combine(a, b, [](double p, double q) { return p * q; });
}

GridFunction operator/(const GridFunction& a, const GridFunction& b) {
    return combine(a, b, [](double p, double q) { return p / q; });
}

GridFunction operator*(double s, const GridFunction& f) {
    return map(f, [s](double v) { return s * v; });
}

GridFunction operator+(const GridFunction& f, double c) {
    return map(f, [c](double v) { return v + c; });
}

GridFunction operator-(const GridFunction& f) {
    return map(f, [](double v) { return -v; });
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t i = f.window().lo; i <= f.window().hi; ++i) {
        m = std::max(m, std::abs(f[i]));
    }
    return m;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) { return max_abs(a - b); }

GridFunction derivative(const GridFunction& f) {
    const Window w = f.window();
    if (w.size() < 3) {
        throw WindowTooSmallError("derivative needs at least 3 points", w.size());
    }
    const double inv2h = 0.5 / f.grid().h();
    std::vector<double> d(f.size(), std::nan(""));
    for (std::size_t i = w.lo + 1; i < w.hi; ++i) {
        d[i] = (f[i + 1] - f[i - 1]) * inv2h;
    }
    d[w.lo] = (-3.0 * f[w.lo] + 4.0 * f[w.lo + 1] - f[w.lo + 2]) * inv2h;
    d[w.hi] = (3.0 * f[w.hi] - 4.0 * f[w.hi - 1] + f[w.hi - 2]) * inv2h;
    return GridFunction(f.grid(), std::move(d), w);
}

GridFunction second_derivative(const GridFunction& f) {
    const Window w = f.window();
    if (w.size() < 3) {
        throw WindowTooSmallError("second derivative needs at least 3 points", w.size());
    }
    const double h = f.grid().h();
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> d(f.size(), std::nan(""));
    for (std::size_t i = w.lo + 1; i < w.hi; ++i) {
        d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv_h2;
    }
    if (w.size() >= 4) {
        // difference form keeps constants exact
        d[w.lo] = (2.0 * (f[w.lo] - f[w.lo + 1]) - 3.0 * (f[w.lo + 1] - f[w.lo + 2]) +
                   (f[w.lo + 2] - f[w.lo + 3])) * inv_h2;
        d[w.hi] = (2.0 * (f[w.hi] - f[w.hi - 1]) - 3.0 * (f[w.hi - 1] - f[w.hi - 2]) +
                   (f[w.hi - 2] - f[w.hi - 3])) * inv_h2;
    } else {
        // three points carry a single curvature value
        d[w.lo] = d[w.lo + 1];
        d[w.hi] = d[w.lo + 1];
    }
    return GridFunction(f.grid(), std::move(d), w);
}

GridFunction cumulative_integral(const GridFunction& f, IntegralOrigin origin) {
    const Window w = f.window();
    const double half_h = 0.5 * f.grid().h();
    std::vector<double> c(f.size(), std::nan(""));
    std::size_t start = w.lo;
    if (origin == IntegralOrigin::mid) {
        start = f.grid().mid_index();
        if (!w.contains(start)) {
            throw InvalidArgument("mid integration origin lies outside the function window");
        }
    }
    // Neumaier-compensated sums, stepping away from the origin on each side
    c[start] = 0.0;
    double sum = 0.0;
    double carry = 0.0;
    auto add = [&](double term) {
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        return sum + carry;
    };
    for (std::size_t i = start + 1; i <= w.hi; ++i) {
        c[i] = add(half_h * (f[i - 1] + f[i]));
    }
    sum = 0.0;
    carry = 0.0;
    for (std::size_t i = start; i > w.lo; --i) {
        c[i - 1] = -add(half_h * (f[i - 1] + f[i]));
    }
    return GridFunction(f.grid(), std::move(c), w);
}

Quadrature quadrature(const GridFunction& f) {
    const Window w = f.window();
    const double h = f.grid().h();
    if (w.size() == 1) {
        return Quadrature{0.0, QuadratureRule::trapezoid};
    }
    if (w.size() % 2 == 1) {
        double odd = 0.0;
        double even = 0.0;
        for (std::size_t i = w.lo + 1; i < w.hi; ++i) {
            ((i - w.lo) % 2 == 1 ? odd : even) += f[i];
        }
        return Quadrature{h / 3.0 * (f[w.lo] + f[w.hi] + 4.0 * odd + 2.0 * even),
                          QuadratureRule::simpson};
    }
    double sum = 0.5 * (f[w.lo] + f[w.hi]);
    for (std::size_t i = w.lo + 1; i < w.hi; ++i) {
        sum += f[i];
    }
    return Quadrature{h * sum, QuadratureRule::trapezoid};
}

double integrate(const GridFunction& f) { return quadrature(f).value; }

double l2_norm(const GridFunction& f) {
    return std::sqrt(integrate(map(f, [](double v) { return v * v; })));
}

std::size_t count_sign_changes(const GridFunction& f, double relative_floor) {
    const double floor = relative_floor * max_abs(f);
    std::size_t changes = 0;
    int last_sign = 0;
    for (std::size_t i = f.window().lo; i <= f.window().hi; ++i) {
        const double v = f[i];
        if (std::abs(v) <= floor) {
            continue;
        }
        const int s = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) {
            ++changes;
        }
        last_sign = s;
    }
    return changes;
}

}  // namespace isospec
