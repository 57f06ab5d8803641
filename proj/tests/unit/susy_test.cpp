#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"

namespace isospec {
namespace {

using testing::max_abs_on;
using testing::region;

const testing::Setup& ho() { return testing::harmonic_setup(); }
const testing::Setup& well() { return testing::box_setup(); }

/// Largest |W' - x| over [-half_width, half_width] for the HO ground state on n points.
double w_prime_error(std::size_t n, double half_width) {
    const testing::Setup s = testing::make_setup(testing::harmonic(Grid1D(-10.0, 10.0, n)));
    const GridFunction exact = GridFunction::sample(s.potential.grid(), [](double x) { return x; });
    return max_abs_on(s.superpotential.w_prime - exact, region(s.potential.grid(), -half_width, half_width));
}

TEST(Superpotential, HarmonicIsLinearInCore) {
    const GridFunction exact = GridFunction::sample(ho().potential.grid(), [](double x) { return x; });
    // the stencil error grows like h^2 (x^3 - 3x) / 6, so the 1e-4 bound holds on the core only
    EXPECT_LT(max_abs_on(ho().superpotential.w_prime - exact, region(exact.grid(), -2.0, 2.0)), 1e-4);
}

TEST(Superpotential, HarmonicErrorIsSecondOrder) {
    // toward the window edge the error grows like x^3 h^2; halving h must divide it by ~4
    const double coarse = w_prime_error(2001, 5.0);
    const double fine = w_prime_error(4001, 5.0);
    EXPECT_NEAR(coarse / fine, 4.0, 0.4);
}

TEST(Superpotential, WellCotangent) {
    const GridFunction& w = well().superpotential.w_prime;
    const GridFunction exact = GridFunction::sample(w.grid(), [](double x) {
        const double t = std::tan(x);
        return std::abs(t) < 1e-300 ? 0.0 : -1.0 / t;
    });
    EXPECT_LT(max_abs_on(w - exact, region(w.grid(), 0.3, std::numbers::pi - 0.3)), 1e-3);
}

TEST(Superpotential, OddForSymmetricMode) {
    const GridFunction& w = ho().superpotential.w_prime;
    const Window win = w.window();
    const std::size_t n = w.size();
    double worst = 0.0;
    for (std::size_t i = win.lo; i <= win.hi; ++i) {
        if (win.contains(n - 1 - i)) worst = std::max(worst, std::abs(w[i] + w[n - 1 - i]));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(Factorization, AnnihilatesZeroModeAcrossCatalog) {
    for (const testing::Setup* s : {&ho(), &testing::poschl_teller_setup(), &well()}) {
        const GridFunction au = apply_A(s->superpotential, s->u().psi());
        EXPECT_LT(max_abs(au), 1e-6 * max_abs(s->u().psi()));
        EXPECT_LT(l2_norm(au) / l2_norm(s->u().psi()), 1e-6);
    }
}

TEST(Factorization, ProductReproducesHamiltonian) {
    for (const testing::Setup* s : {&ho(), &testing::poschl_teller_setup()}) {
        const Window inner = shrink(s->u().trusted_window(), 2);
        const GridFunction f =
            GridFunction::sample(s->potential.grid(), [](double x) { return std::exp(-x * x); });
        const GridFunction ada = apply_A_dagger(s->superpotential, apply_A(s->superpotential, f));
        const GridFunction hf = apply_hamiltonian(s->v_minus(), f);
        EXPECT_LT(l2_norm((ada - hf).restricted(inner)) / l2_norm(f.restricted(inner)), 1e-3);
    }
}

TEST(Factorization, SecondSolutionSurvivesAButNotAdaggerA) {
    const GridFunction v = second_solution_minus(ho().u());
    const Window inner = shrink(v.window(), 2);
    const GridFunction av = apply_A(ho().superpotential, v);
    // A v- = W / u with unit Wronskian, so it equals 1/u
    const GridFunction inv_u = map(ho().u().psi().restricted(v.window()), [](double x) { return 1.0 / x; });
    EXPECT_GT(max_abs_on(av, inner), 1.0);
    // trapezoid error in int 1/u^2 sets the floor here
    EXPECT_LT(max_abs_on(av - inv_u, inner) / max_abs_on(inv_u, inner), 5e-3);
    const GridFunction ada = apply_A_dagger(ho().superpotential, av);
    EXPECT_LT(max_abs_on(ada, inner) / max_abs_on(av, inner), 5e-3);
}

TEST(PartnerPotential, HarmonicPairInCore) {
    const PartnerPair p = partner_potential(ho().superpotential);
    const Grid1D& g = ho().potential.grid();
    const Window core = region(g, -2.0, 2.0);
    const GridFunction minus = GridFunction::sample(g, [](double x) { return x * x - 1.0; });
    const GridFunction plus = GridFunction::sample(g, [](double x) { return x * x + 1.0; });
    EXPECT_LT(max_abs_on(p.v_minus - minus, core), 1e-3);
    EXPECT_LT(max_abs_on(p.v_plus - plus, core), 1e-3);
}

TEST(PartnerPotential, HarmonicPairErrorIsSecondOrder) {
    auto err = [](std::size_t n) {
        const testing::Setup s = testing::make_setup(testing::harmonic(Grid1D(-10.0, 10.0, n)));
        const Grid1D& g = s.potential.grid();
        const PartnerPair p = partner_potential(s.superpotential);
        const GridFunction plus = GridFunction::sample(g, [](double x) { return x * x + 1.0; });
        return max_abs_on(p.v_plus - plus, region(g, -5.0, 5.0));
    };
    EXPECT_NEAR(err(2001) / err(4001), 4.0, 0.4);
}

TEST(PartnerPotential, WellPairAwayFromWalls) {
    const PartnerPair p = partner_potential(well().superpotential);
    const Grid1D& g = well().potential.grid();
    const Window inner = region(g, 0.3, std::numbers::pi - 0.3);
    const GridFunction plus = GridFunction::sample(g, [](double x) {
        const double s = std::sin(x);
        return std::abs(s) < 1e-300 ? 0.0 : 2.0 / (s * s) - 1.0;
    });
    EXPECT_LT(max_abs_on(p.v_minus + 1.0, inner), 1e-2);
    EXPECT_LT(max_abs_on(p.v_plus - plus, inner), 1e-2);
}

TEST(PartnerPotential, GapIsTwiceSecondDerivativeOfW) {
    const PartnerPair p = partner_potential(ho().superpotential);
    const GridFunction gap = p.v_plus - p.v_minus - 2.0 * derivative(ho().superpotential.w_prime);
    EXPECT_LT(max_abs(gap), 1e-8 * max_abs(p.v_plus));
}

TEST(PartnerPotential, LadderMatchesShiftedSpectrum) {
    const GridFunction vp = partner_potential_on_grid(ho().superpotential, ho().v_minus());
    const IsospectralComparison c = verify_isospectral(ho().v_minus(), vp, 5, true);
    EXPECT_TRUE(c.partner_mode);
    EXPECT_LT(c.max_abs_difference, 5e-3);
    for (std::size_t n = 0; n < 5; ++n) EXPECT_NEAR(c.eigenvalues_b[n], 2.0 * (n + 1), 5e-3);
}

TEST(SecondSolution, MinusIsZeroModeWithUnitWronskian) {
    const GridFunction v = second_solution_minus(ho().u());
    const Window inner = shrink(v.window(), 1);
    const GridFunction hv = apply_hamiltonian(ho().v_minus(), v);
    EXPECT_LT(l2_norm(hv.restricted(inner)) / l2_norm(v.restricted(inner)), 1e-3);
    const GridFunction& u = ho().u().psi();
    const GridFunction wr = u * derivative(v) - derivative(u) * v;
    // with the origin at the window edge, v- carries a ~1e11 multiple of u whose rounding D amplifies
    EXPECT_LT(max_abs_on(wr + (-1.0), inner), 2e-3);
}

TEST(SecondSolution, WronskianErrorIsSecondOrder) {
    auto err = [](std::size_t n) {
        const testing::Setup s = testing::make_setup(testing::harmonic(Grid1D(-10.0, 10.0, n)));
        const GridFunction& u = s.u().psi();
        const GridFunction ut = u.restricted(s.u().trusted_window());
        const GridFunction inv_u2 = map(ut, [](double a) { return 1.0 / (a * a); });
        // centre origin keeps the running integral small, leaving only the stencil error
        const GridFunction v = ut * cumulative_integral(inv_u2, IntegralOrigin::mid);
        const GridFunction wr = u * derivative(v) - derivative(u) * v;
        return max_abs_on(wr + (-1.0), region(v.grid(), -5.0, 5.0));
    };
    EXPECT_NEAR(err(2001) / err(4001), 4.0, 0.4);
}

TEST(SecondSolution, WellMinusIsCosineBranch) {
    const GridFunction v = second_solution_minus(well().u());
    const Grid1D& g = v.grid();
    // v- = sqrt(pi/2) (c sin x - cos x) for an origin-dependent constant c
    const double amp = std::sqrt(0.5 * std::numbers::pi);
    const double c = v[g.mid_index()] / amp;
    const GridFunction exact =
        GridFunction::sample(g, [=](double x) { return amp * (c * std::sin(x) - std::cos(x)); });
    EXPECT_LT(max_abs_on(v - exact, region(g, 0.3, std::numbers::pi - 0.3)), 1e-3);
}

TEST(SecondSolution, PlusIsFermionicZeroMode) {
    const PartnerPair p = partner_potential(ho().superpotential);
    const GridFunction v = second_solution_plus(ho().u());
    const Window inner = shrink(v.window(), 1);
    const GridFunction hv = apply_hamiltonian(p.v_plus, v);
    // W'' loses accuracy near the window edges, where v+ is largest
    EXPECT_LT(l2_norm(hv.restricted(inner)) / l2_norm(v.restricted(inner)), 2e-2);
    const Window core = region(v.grid(), -3.0, 3.0);
    EXPECT_LT(l2_norm(hv.restricted(core)) / l2_norm(v.restricted(core)), 1e-3);
}

TEST(SecondSolution, PlusResidualIsSecondOrder) {
    auto err = [](std::size_t n) {
        const testing::Setup s = testing::make_setup(testing::harmonic(Grid1D(-10.0, 10.0, n)));
        const PartnerPair p = partner_potential(s.superpotential);
        const GridFunction v = second_solution_plus(s.u());
        const Window w = region(v.grid(), -4.0, 4.0);
        return l2_norm(apply_hamiltonian(p.v_plus, v).restricted(w)) / l2_norm(v.restricted(w));
    };
    EXPECT_NEAR(err(2001) / err(4001), 4.0, 0.4);
}

TEST(SecondSolution, PlusForUnnormalizedGaussianIsErf) {
    const Grid1D g = testing::line_grid();
    const ZeroMode u = ZeroMode::from_function(
        GridFunction::sample(g, [](double x) { return std::exp(-0.5 * x * x); }),
        ZeroMode::Scaling::as_given);
    const GridFunction v = second_solution_plus(u, IntegralOrigin::mid);
    const GridFunction exact = GridFunction::sample(g, [](double x) {
        return std::exp(0.5 * x * x) * 0.5 * std::sqrt(std::numbers::pi) * std::erf(x);
    });
    const Window w = v.window();
    double worst = 0.0;
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        worst = std::max(worst, std::abs(v[i] - exact[i]) / std::max(1.0, std::abs(exact[i])));
    }
    EXPECT_LT(worst, 1e-3);
}

TEST(SecondSolution, PlusTimesModeIsRunningMass) {
    const GridFunction v = second_solution_plus(ho().u());
    const GridFunction running = cumulative_integral(testing::square(ho().u().psi()));
    EXPECT_LT(max_abs(v * ho().u().psi() - running), 1e-12);
}

TEST(GeneralZeroMode, ZeroConstantSelectsSecondSolution) {
    const GridFunction a = general_zero_mode_minus(ho().u(), 0.0);
    const GridFunction b = second_solution_minus(ho().u());
    EXPECT_EQ(max_abs_diff(a, b), 0.0);
    EXPECT_EQ(max_abs_diff(fermionic_zero_mode(ho().u(), 0.0), second_solution_plus(ho().u())), 0.0);
}

TEST(GeneralZeroMode, ReconstructsBosonicPotential) {
    const Grid1D& g = ho().potential.grid();
    for (double ls : {-2.0, 0.3, 7.0}) {
        const GridFunction phi = general_zero_mode_minus(ho().u(), ls);
        const GridFunction rebuilt = second_derivative(phi) / phi;
        EXPECT_LT(max_abs_on(rebuilt - ho().v_minus(), region(g, -4.0, 4.0)), 1e-3) << ls;
    }
}

TEST(GeneralZeroMode, LargeConstantRecoversMode) {
    // v- reaches ~1/u at the window edges, so "large" is measured against it
    const GridFunction v = second_solution_minus(ho().u());
    const double ls = 1e6 * max_abs(v) / max_abs(ho().u().psi());
    const GridFunction phi = general_zero_mode_minus(ho().u(), ls);
    EXPECT_LT(max_abs((1.0 / ls) * phi - ho().u().psi()), 1e-5);
}

TEST(GeneralZeroMode, FermionicIsZeroModeOfPartner) {
    const PartnerPair p = partner_potential(ho().superpotential);
    for (double ls : {0.5, 1.5, 10.0}) {
        const GridFunction phi = fermionic_zero_mode(ho().u(), ls);
        const Window inner = shrink(phi.window(), 1);
        const GridFunction r = apply_hamiltonian(p.v_plus, phi);
        const Window core = region(phi.grid(), -3.0, 3.0);
        EXPECT_LT(l2_norm(r.restricted(inner)) / l2_norm(phi.restricted(inner)), 2e-2) << ls;
        EXPECT_LT(l2_norm(r.restricted(core)) / l2_norm(phi.restricted(core)), 1e-3) << ls;
    }
}

TEST(GeneralZeroMode, FermionicIsInverseOfMielnikMode) {
    const double lambda = 1.5;
    const GridFunction phi = fermionic_zero_mode(ho().u(), lambda);
    const MielnikMode m = psi_lambda(ho().u(), lambda);
    EXPECT_LT(max_abs(phi * m.raw.psi() + (-1.0)), 1e-12);
}

class RefactorizationInvariance : public ::testing::TestWithParam<int> {};

TEST_P(RefactorizationInvariance, LambdaSDropsOut) {
    const testing::Setup& s = GetParam() == 0 ? ho() : testing::poschl_teller_setup();
    std::vector<GridFunction> phis;
    std::vector<GridFunction> rebuilt;
    for (double ls : {-2.0, 0.3, 7.0}) {
        phis.push_back(general_zero_mode_minus(s.u(), ls));
        rebuilt.push_back(second_derivative(phis.back()) / phis.back());
    }
    const Window w = shrink(phis[0].window(), 1);
    double worst = 0.0;
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        bool above = true;
        for (const GridFunction& p : phis) above = above && std::abs(p[i]) > kNodeNoiseFloor * max_abs(p);
        if (!above) continue;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b)
                worst = std::max(worst, std::abs(rebuilt[a][i] - rebuilt[b][i]));
    }
    EXPECT_LT(worst, 2e-3);
}

INSTANTIATE_TEST_SUITE_P(Catalog, RefactorizationInvariance, ::testing::Values(0, 1));

TEST(Intertwiner, RelatesPartnerHamiltonians) {
    const PartnerPair p = partner_potential(ho().superpotential);
    const GridFunction f =
        GridFunction::sample(ho().potential.grid(), [](double x) { return std::exp(-0.25 * x * x); });
    const GridFunction t1f = apply_T1(ho().u(), f);
    const GridFunction diff =
        apply_hamiltonian(p.v_plus, t1f) - apply_T1(ho().u(), apply_hamiltonian(ho().v_minus(), f));
    const Window inner = shrink(ho().u().trusted_window(), 2);
    EXPECT_LT(l2_norm(diff.restricted(inner)) / l2_norm(t1f.restricted(inner)), 1e-3);
}

TEST(Intertwiner, MapsSecondSolutionToPartnerZeroMode) {
    const PartnerPair p = partner_potential(ho().superpotential);
    const GridFunction z = apply_T1(ho().u(), second_solution_minus(ho().u()));
    const Window inner = shrink(z.window(), 2);
    const GridFunction r = apply_hamiltonian(p.v_plus, z);
    EXPECT_LT(l2_norm(r.restricted(inner)) / l2_norm(z.restricted(inner)), 1e-2);
}

TEST(Intertwiner, KillsZeroMode) {
    EXPECT_LT(max_abs(apply_T1(ho().u(), ho().u().psi())), 1e-6 * max_abs(ho().u().psi()));
    const GridFunction f = GridFunction::sample(ho().potential.grid(), [](double x) { return std::sin(x); });
    const GridFunction a = apply_T1(ho().u(), f);
    const GridFunction b = apply_A(ho().superpotential, f);
    EXPECT_LT(max_abs_diff(a, b), 1e-12 * max_abs(b));
    const GridFunction ad = apply_T1_dagger(ho().u(), f);
    EXPECT_LT(max_abs_diff(ad, apply_A_dagger(ho().superpotential, f)), 1e-12 * max_abs(ad));
}

/// Points where |f| >= floor * max|f|; round-off in D(Psi Phi+) / Psi blows up below that.
Window above_floor(const GridFunction& f, double floor) {
    const double cut = floor * max_abs(f);
    Window w = f.window();
    while (std::abs(f[w.lo]) < cut) ++w.lo;
    while (std::abs(f[w.hi]) < cut) --w.hi;
    return w;
}

/// The stored mode is sign-fixed positive; for lambda < -1 the true Psi = u/(lambda+I) is negative.
GridFunction signed_fermionic_mode(double lambda) {
    const double sign = lambda > 0.0 ? 1.0 : -1.0;
    return sign * fermionic_zero_mode(ho().u(), lambda);
}

class MielnikMappings : public ::testing::TestWithParam<double> {};

TEST_P(MielnikMappings, MinusTakesFermionicModeToPsi) {
    const double lambda = GetParam();
    const MielnikMode m = psi_lambda(ho().u(), lambda);
    const GridFunction out = apply_T_minus_lambda(m.raw, signed_fermionic_mode(lambda));
    const GridFunction err = out - m.raw.psi().restricted(out.window());
    EXPECT_LT(max_abs_on(err, above_floor(m.raw.psi(), 1e-3)) / max_abs(m.raw.psi()), 1e-6);
    EXPECT_LT(l2_norm(err) / l2_norm(m.raw.psi()), 1e-6);
}

TEST_P(MielnikMappings, PlusTakesPsiToFermionicMode) {
    const double lambda = GetParam();
    const MielnikMode m = psi_lambda(ho().u(), lambda);
    const GridFunction phi = signed_fermionic_mode(lambda);
    const GridFunction out = apply_T_plus_lambda(m.raw, m.raw.psi());
    EXPECT_LT(max_abs(out - phi) / max_abs(phi.restricted(out.window())), 1e-6);
}

TEST_P(MielnikMappings, RoundTrip) {
    const MielnikMode m = psi_lambda(ho().u(), GetParam());
    const GridFunction back = apply_T_minus_lambda(m.raw, apply_T_plus_lambda(m.raw, m.raw.psi()));
    EXPECT_LT(max_abs(back - m.raw.psi()) / max_abs(m.raw.psi()), 1e-5);
}

TEST_P(MielnikMappings, ZeroMapsToZero) {
    const MielnikMode m = psi_lambda(ho().u(), GetParam());
    const GridFunction zero = GridFunction::constant(ho().potential.grid(), 0.0);
    EXPECT_EQ(max_abs(apply_T_minus_lambda(m.raw, zero)), 0.0);
    EXPECT_EQ(max_abs(apply_T_plus_lambda(m.raw, zero)), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Lambdas, MielnikMappings, ::testing::Values(0.7, 1.5, 12.0, -3.0));

TEST(MielnikMappings, LargeLambdaScaling) {
    // lambda Psi_lambda = u lambda / (lambda + I) -> u, and so must lambda T- Phi+
    const double lambda = 1e4;
    const MielnikMode m = psi_lambda(ho().u(), lambda);
    const GridFunction out = lambda * apply_T_minus_lambda(m.raw, fermionic_zero_mode(ho().u(), lambda));
    // rounding of Psi Phi+ = 1 is amplified by lambda / (h Psi), so only the bulk of the mode is checked
    const Window w = above_floor(m.raw.psi(), 0.1);
    EXPECT_LT(max_abs_on(out - lambda * m.raw.psi(), w) / max_abs(ho().u().psi()), 1e-4);
    EXPECT_LT(max_abs_on(out - ho().u().psi(), w) / max_abs(ho().u().psi()), 2e-4);
}

}  // namespace
}  // namespace isospec
