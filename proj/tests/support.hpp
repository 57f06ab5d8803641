#pragma once

#include <cmath>
#include <numbers>

#include "isospec/isospec.hpp"

namespace isospec::testing {

inline Grid1D line_grid() { return Grid1D(-10.0, 10.0, 2001); }
inline Grid1D box_grid() { return Grid1D(0.0, std::numbers::pi, 629); }

inline GridFunction harmonic(const Grid1D& g) {
    return GridFunction::sample(g, [](double x) { return x * x; });
}

inline GridFunction poschl_teller(const Grid1D& g, double a = 1.0) {
    return GridFunction::sample(g, [a](double x) {
        const double s = 1.0 / std::cosh(x);
        return -a * (a + 1.0) * s * s;
    });
}

struct Setup {
    GridFunction potential;
    GroundState ground;
    Superpotential superpotential;

    const ZeroMode& u() const { return ground.mode; }
    const GridFunction& v_minus() const { return ground.shifted_potential; }
};

inline Setup make_setup(GridFunction v) {
    GroundState gs = ground_state(v);
    Superpotential sp = superpotential_from_mode(gs.mode);
    return Setup{std::move(v), std::move(gs), std::move(sp)};
}

inline const Setup& harmonic_setup() {
    static const Setup s = make_setup(harmonic(line_grid()));
    return s;
}

inline const Setup& poschl_teller_setup() {
    static const Setup s = make_setup(poschl_teller(line_grid()));
    return s;
}

inline const Setup& box_setup() {
    static const Setup s = make_setup(GridFunction::constant(box_grid(), 0.0));
    return s;
}

/// Indices whose x lies in [a, b].
inline Window region(const Grid1D& g, double a, double b) {
    std::size_t lo = 0;
    while (g.x(lo) < a) ++lo;
    std::size_t hi = g.n() - 1;
    while (g.x(hi) > b) --hi;
    return Window{lo, hi};
}

inline double max_abs_on(const GridFunction& f, const Window& w) {
    return max_abs(f.restricted(w));
}

inline GridFunction square(const GridFunction& f) {
    return map(f, [](double v) { return v * v; });
}

}  // namespace isospec::testing
