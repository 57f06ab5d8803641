#include "isospec_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "isospec/isospec.hpp"
#include "isospec_cli/table_io.hpp"

namespace isospec::cli {

using nlohmann::json;

namespace {

// Tolerances of the invariant suite.
constexpr double kSpectralTolerance = 5e-3;
constexpr double kChainSpectralTolerance = 8e-3;
constexpr double kRecoveryTolerance = 1e-4;
constexpr double kExactTolerance = 1e-6;
constexpr double kOperatorTolerance = 1e-3;
constexpr double kNormalizationTolerance = 1e-4;
constexpr double kRiccatiTolerance = 1e-4;
constexpr double kBridgeTolerance = 2e-3;
constexpr double kRefactorizationTolerance = 2e-3;
constexpr double kDefaultVerifyLambda = 1.5;

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    json extra = json::object();
};

class CheckList {
public:
    void add(Check c) { checks_.push_back(std::move(c)); }

    bool all_pass() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return passes(c); });
    }

    json to_json() const {
        json list = json::array();
        json failures = json::array();
        for (const Check& c : checks_) {
            json j = {{"name", c.name},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"pass", passes(c)}};
            for (auto it = c.extra.begin(); it != c.extra.end(); ++it) j[it.key()] = it.value();
            if (!passes(c)) failures.push_back(c.name);
            list.push_back(std::move(j));
        }
        return json{{"all_pass", all_pass()}, {"checks", list}, {"failures", failures}};
    }

private:
    static bool passes(const Check& c) { return std::isfinite(c.value) && c.value < c.tolerance; }

    std::vector<Check> checks_;
};

json column(const GridFunction& f) {
    json a = json::array();
    const Window w = f.window();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (w.contains(i)) {
            a.push_back(f[i]);
        } else {
            a.push_back(nullptr);
        }
    }
    return a;
}

json x_column(const Grid1D& grid) { return json(grid.points()); }

json window_json(const Window& w, const Grid1D& grid) {
    return json{{"lo", w.lo}, {"hi", w.hi}, {"x_lo", grid.x(w.lo)}, {"x_hi", grid.x(w.hi)}};
}

json spectrum_json(const SpectrumReport& r) {
    return json{{"eigenvalues", r.eigenvalues},
                {"residual_norms", r.residual_norms},
                {"tolerance", r.tolerance}};
}

json comparison_json(const IsospectralComparison& c) {
    return json{{"eigenvalues_a", c.eigenvalues_a},
                {"eigenvalues_b", c.eigenvalues_b},
                {"differences", c.differences},
                {"max_abs_difference", c.max_abs_difference},
                {"partner_mode", c.partner_mode}};
}

std::string origin_name(IntegralOrigin o) { return o == IntegralOrigin::left ? "left" : "mid"; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// Everything derived from the input potential that all commands share.
struct Problem {
    GridFunction potential;
    GroundState ground;
    Superpotential superpotential;
    bool physical_walls = false;
    std::vector<std::string> warnings;

    const GridFunction& v_minus() const { return ground.shifted_potential; }
    const ZeroMode& mode() const { return ground.mode; }
};

GridFunction load_potential(const RunConfig& config, std::vector<std::string>& warnings) {
    if (config.potential.kind == PotentialKind::tabulated) {
        if (config.grid) {
            warnings.push_back("grid options are ignored for a tabulated potential");
        }
        return ingest_table(config.potential.table_path);
    }
    const GridSpec gs = config.grid.value_or(default_grid(config.potential));
    return catalog_potential(config.potential, make_grid(gs.x_min, gs.x_max, gs.n));
}

Problem setup(const RunConfig& config) {
    validate(config);
    std::vector<std::string> warnings;
    GridFunction v = load_potential(config, warnings);
    GroundState gs = ground_state(v);
    const bool walls = config.potential.kind == PotentialKind::catalog &&
                       config.potential.catalog_name == CatalogName::box;
    for (const std::string& w : gs.warnings) {
        // hard walls are part of the box potential, not a truncated tail
        if (walls && w.find("truncates") != std::string::npos) continue;
        warnings.push_back(w);
    }
    Superpotential sp = superpotential_from_mode(gs.mode);
    return Problem{std::move(v), std::move(gs), std::move(sp), walls, std::move(warnings)};
}

/// Levels of V- that are bound inside the grid rather than discretized continuum.
std::size_t bound_level_count(const Problem& p, const std::vector<double>& eigenvalues) {
    if (p.physical_walls) return eigenvalues.size();
    const GridFunction& v = p.v_minus();
    const double rim = std::min(v[1], v[v.size() - 2]);
    return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                  [rim](double e) { return e < rim; }));
}

json config_json(const RunConfig& config, const Problem& p, const std::string& command) {
    json pot = {{"kind", config.potential.kind == PotentialKind::catalog ? "catalog" : "tabulated"}};
    if (config.potential.kind == PotentialKind::catalog) {
        pot["name"] = to_string(config.potential.catalog_name);
        pot["params"] = config.potential.params;
    } else {
        pot["table_path"] = config.potential.table_path;
    }
    const Grid1D& g = p.potential.grid();
    json j = {{"command", command},
              {"potential", pot},
              {"grid", {{"x_min", g.x_min()}, {"x_max", g.x_max()}, {"n", g.n()}, {"h", g.h()}}},
              {"k", config.k},
              {"lambdas", config.lambdas},
              {"integral_origin", origin_name(config.integral_origin)},
              {"format", config.format == OutputFormat::json ? "json" : "csv"}};
    if (config.timestamp) j["timestamp"] = utc_timestamp();
    return j;
}

json base_report(const RunConfig& config, const Problem& p, const std::string& command) {
    const Grid1D& g = p.potential.grid();
    json potentials = {{"x", x_column(g)},
                       {"v_input", column(p.potential)},
                       {"v_minus", column(p.v_minus())}};
    json modes = {{"x", x_column(g)}, {"u", column(p.mode().psi())}};
    json spectra = {{"energy_shift", p.mode().energy_shift()},
                    {"trusted_window", window_json(p.mode().trusted_window(), g)}};
    return json{{"config", config_json(config, p, command)},
                {"spectra", spectra},
                {"potentials", potentials},
                {"modes", modes},
                {"invariants", json::object()},
                {"warnings", p.warnings}};
}

double max_over(const GridFunction& f, const Window& w) { return max_abs(f.restricted(w)); }

double relative_l2(const GridFunction& residual, const GridFunction& reference) {
    return l2_norm(residual) / l2_norm(reference.restricted(residual.window()));
}

/// Three Gaussian bumps at the centre of u^2 and one spread either side, each one spread wide.
std::vector<GridFunction> test_functions(const ZeroMode& u) {
    const Grid1D& g = u.grid();
    const GridFunction density = map(u.psi(), [](double v) { return v * v; });
    const GridFunction x = GridFunction::sample(g, [](double t) { return t; });
    const double mass = integrate(density);
    const double c = integrate(x * density) / mass;
    const GridFunction dx = x + (-c);
    const double s = std::sqrt(integrate(dx * dx * density) / mass);
    std::vector<GridFunction> out;
    for (double shift : {0.0, -s, s}) {
        out.push_back(GridFunction::sample(g, [c, s, shift](double t) {
            const double z = (t - c - shift) / s;
            return std::exp(-0.5 * z * z);
        }));
    }
    return out;
}

void add_partner_ladder(const Problem& p, const SpectrumReport& minus, std::size_t k,
                        const GridFunction& v_plus_grid, CheckList& checks, json& spectra) {
    const std::size_t bound = bound_level_count(p, minus.eigenvalues);
    const std::size_t levels = std::min(k, bound) == 0 ? 0 : std::min(k, bound) - 1;
    double value = 0.0;
    if (levels > 0) {
        const IsospectralComparison cmp = verify_isospectral(p.v_minus(), v_plus_grid, levels, true);
        spectra["partner_ladder"] = comparison_json(cmp);
        value = cmp.max_abs_difference;
    }
    spectra["bound_levels"] = bound;
    checks.add(Check{"partner_ladder", value, kSpectralTolerance, {{"levels_compared", levels}}});
}

void add_susy_checks(const Problem& p, CheckList& checks) {
    const ZeroMode& u = p.mode();
    const Superpotential& sp = p.superpotential;
    const Window inner1 = shrink(u.trusted_window(), 1);
    const Window inner2 = shrink(u.trusted_window(), 2);
    const double umax = max_abs(u.psi());

    const GridFunction hu = apply_hamiltonian(p.v_minus(), u.psi());
    checks.add(Check{"ground_state_residual", max_over(hu, inner1) / umax, kExactTolerance});

    const GridFunction au = apply_A(sp, u.psi());
    checks.add(Check{"annihilation", max_over(au, inner1) / umax, kExactTolerance});

    const PartnerPair pair = partner_potential(sp);
    double factorization = 0.0;
    double intertwining = 0.0;
    for (const GridFunction& f : test_functions(u)) {
        const GridFunction hf = apply_hamiltonian(p.v_minus(), f).restricted(inner2);
        const GridFunction ada = apply_A_dagger(sp, apply_A(sp, f)).restricted(inner2);
        factorization = std::max(factorization, relative_l2(ada - hf, hf));

        const GridFunction t1f = apply_T1(u, f);
        const GridFunction lhs = apply_hamiltonian(pair.v_plus, t1f);
        const GridFunction rhs = apply_T1(u, apply_hamiltonian(p.v_minus(), f));
        const GridFunction diff = (lhs - rhs).restricted(inner2);
        intertwining = std::max(intertwining, relative_l2(diff, t1f));
    }
    checks.add(Check{"factorization", factorization, kOperatorTolerance});
    checks.add(Check{"intertwining_relation", intertwining, kOperatorTolerance});

    // Phi-''/Phi- must not depend on the free constant lambda_s
    std::vector<GridFunction> rebuilt;
    std::vector<GridFunction> phis;
    for (double ls : {-2.0, 0.3, 7.0}) {
        GridFunction phi = general_zero_mode_minus(u, ls);
        rebuilt.push_back(second_derivative(phi) / phi);
        phis.push_back(std::move(phi));
    }
    const Window w = shrink(phis.front().window(), 1);
    double worst = 0.0;
    std::vector<double> peak;
    for (const GridFunction& phi : phis) peak.push_back(max_over(phi, w));
    for (std::size_t i = w.lo; i <= w.hi; ++i) {
        bool significant = true;
        for (std::size_t j = 0; j < phis.size(); ++j) {
            significant = significant && std::abs(phis[j][i]) > kNodeNoiseFloor * peak[j];
        }
        if (!significant) continue;
        for (std::size_t a = 0; a < rebuilt.size(); ++a) {
            for (std::size_t b = a + 1; b < rebuilt.size(); ++b) {
                worst = std::max(worst, std::abs(rebuilt[a][i] - rebuilt[b][i]));
            }
        }
    }
    checks.add(Check{"refactorization_invariance", worst, kRefactorizationTolerance});
}

struct LambdaResult {
    MielnikMode mode;
    GridFunction v_lambda;
    ExcludedInterval excluded;
    IsospectralComparison comparison;
    double recovery = 0.0;
};

LambdaResult deform_once(const Problem& p, double lambda, IntegralOrigin origin, std::size_t k) {
    const ExcludedInterval ex = excluded_interval(p.mode(), origin);
    MielnikMode mm = psi_lambda(p.mode(), lambda, origin);
    GridFunction v_lambda = deformed_potential(p.v_minus(), p.mode(), lambda, origin);
    IsospectralComparison cmp = verify_isospectral(p.v_minus(), v_lambda, k, false);
    const double recovery =
        max_over(v_lambda - p.v_minus(), p.mode().trusted_window());
    return LambdaResult{std::move(mm), std::move(v_lambda), ex, std::move(cmp), recovery};
}

void add_lambda_checks(const Problem& p, const LambdaResult& r, IntegralOrigin origin,
                       CheckList& checks) {
    const double lambda = r.mode.lambda;
    std::ostringstream tag;
    tag << "@lambda=" << lambda;
    const std::string sfx = tag.str();
    const ZeroMode& u = p.mode();
    const json lam = {{"lambda", lambda}};

    checks.add(Check{"strict_isospectrality" + sfx, r.comparison.max_abs_difference,
                     kSpectralTolerance, lam});

    const double mass = integrate(map(r.mode.raw.psi(), [](double v) { return v * v; }));
    const double n2 = r.mode.normalization * r.mode.normalization;
    json norm_extra = lam;
    norm_extra["psi_lambda_norm_sq"] = mass;
    norm_extra["expected_norm_sq"] = 1.0 / n2;
    checks.add(Check{"normalization_identity" + sfx, std::abs(mass * n2 - 1.0),
                     kNormalizationTolerance, norm_extra});

    const ZeroMode& raw = r.mode.raw;
    const Window inner = shrink(raw.trusted_window(), 1);
    const GridFunction h_psi = apply_hamiltonian(r.v_lambda, raw.psi());
    checks.add(Check{"zero_mode_consistency" + sfx,
                     max_over(h_psi, inner) / max_abs(raw.psi()), kOperatorTolerance, lam});

    // raw stores Psi with its sign fixed positive; for lambda below the interval Psi itself is negative
    const GridFunction running =
        cumulative_integral(map(u.psi(), [](double v) { return v * v; }), origin);
    const double sign = lambda + running[u.trusted_window().lo] > 0.0 ? 1.0 : -1.0;
    const GridFunction phi_plus = sign * fermionic_zero_mode(u, lambda, origin);
    const GridFunction t_minus = apply_T_minus_lambda(raw, phi_plus);
    checks.add(Check{"T_minus_mapping" + sfx, relative_l2(t_minus - raw.psi(), raw.psi()),
                     kExactTolerance, lam});
    const GridFunction t_plus = apply_T_plus_lambda(raw, raw.psi());
    checks.add(Check{"T_plus_mapping" + sfx, relative_l2(t_plus - phi_plus, phi_plus),
                     kExactTolerance, lam});

    // The Riccati constant refers to a running integral starting at the trusted window edge.
    const double lambda_r = lambda + running[u.trusted_window().lo];
    const RiccatiInstance inst = fermionic_riccati_instance(p.superpotential, lambda_r);
    const GridFunction y1 = riccati_general_solution(inst);
    checks.add(Check{"riccati_residual" + sfx, riccati_residual(y1, inst.f_rhs()),
                     kRiccatiTolerance, lam});

    const PartnerPair pair = partner_potential(p.superpotential);
    const GridFunction v_lambda_w = deformed_potential(pair.v_minus, u, lambda, origin);
    const GridFunction bridge = inst.f_rhs() - 2.0 * derivative(y1) - v_lambda_w;
    checks.add(Check{"darboux_bridge" + sfx, max_abs(bridge), kBridgeTolerance, lam});
}

json interval_json(const ExcludedInterval& ex) { return json::array({ex.lo, ex.hi}); }

CommandResult finish(json report, const CheckList& checks, std::optional<GridFunction> table) {
    report["invariants"] = checks.to_json();
    const int code = checks.all_pass() ? exit_codes::pass : exit_codes::invariant_failure;
    return CommandResult{std::move(report), std::move(table), code};
}

}  // namespace

void validate(const RunConfig& config) {
    if (config.grid) {
        const long long n = config.grid->n;
        if (n < 3 || n % 2 == 0) {
            throw InvalidArgument("grid point count must be odd and at least 3, got " +
                                  std::to_string(n));
        }
    }
    if (config.k < 1) throw InvalidArgument("k must be at least 1");
    for (double l : config.lambdas) {
        if (!std::isfinite(l)) throw InvalidArgument("every lambda must be finite");
    }
}

CommandResult cmd_solve(const RunConfig& config) {
    const Problem p = setup(config);
    json report = base_report(config, p, "solve");
    const PartnerPair pair = partner_potential(p.superpotential);
    const GridFunction v_plus = partner_potential_on_grid(p.superpotential, p.v_minus());
    const Eigenpairs minus = lowest_eigenpairs(build_hamiltonian(p.v_minus()), config.k);
    const Eigenpairs plus = lowest_eigenpairs(build_hamiltonian(v_plus), config.k);

    report["potentials"]["v_plus"] = column(v_plus);
    report["potentials"]["v_plus_superpotential_form"] = column(pair.v_plus);
    report["potentials"]["w_prime"] = column(p.superpotential.w_prime);
    report["spectra"]["v_minus"] = spectrum_json(minus.report);
    report["spectra"]["v_plus"] = spectrum_json(plus.report);

    CheckList checks;
    add_partner_ladder(p, minus.report, config.k, v_plus, checks, report["spectra"]);
    return finish(std::move(report), checks, p.v_minus());
}

CommandResult cmd_deform(const RunConfig& config) {
    if (config.lambdas.size() != 1) {
        throw InvalidArgument("deform needs exactly one lambda, got " +
                              std::to_string(config.lambdas.size()));
    }
    const Problem p = setup(config);
    json report = base_report(config, p, "deform");
    const LambdaResult r = deform_once(p, config.lambdas.front(), config.integral_origin, config.k);

    report["potentials"]["v_lambda"] = column(r.v_lambda);
    report["modes"]["psi_lambda"] = column(r.mode.normalized.psi());
    report["modes"]["psi_lambda_raw"] = column(r.mode.raw.psi());
    report["spectra"]["isospectrality"] = comparison_json(r.comparison);
    report["max_spectral_deviation"] = r.comparison.max_abs_difference;
    report["excluded_interval"] = interval_json(r.excluded);
    report["normalization"] = r.mode.normalization;
    report["recovery_sup_norm"] = r.recovery;
    report["recovered_original"] = r.recovery < kRecoveryTolerance;

    CheckList checks;
    checks.add(Check{"strict_isospectrality", r.comparison.max_abs_difference, kSpectralTolerance});
    return finish(std::move(report), checks, r.v_lambda);
}

CommandResult cmd_chain(const RunConfig& config) {
    if (config.lambdas.empty()) throw InvalidArgument("chain needs at least one lambda");
    const Problem p = setup(config);
    json report = base_report(config, p, "chain");
    if (config.integral_origin != IntegralOrigin::left) {
        report["warnings"].push_back("chain steps always use the left integral origin");
    }
    const DeformationChain chain = chain_deform(p.v_minus(), p.mode(), config.lambdas);

    json steps = json::array();
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const DeformationStep& s = chain.steps[i];
        const std::string key = "step_" + std::to_string(i);
        report["potentials"]["v_" + key] = column(s.v_out);
        report["modes"]["psi_" + key] = column(s.u_out.psi());
        steps.push_back({{"index", i},
                         {"lambda", s.lambda},
                         {"normalization", s.normalization},
                         {"excluded_interval", interval_json(excluded_interval(s.u_in))},
                         {"valid", s.valid}});
    }
    const IsospectralComparison cmp =
        verify_isospectral(p.v_minus(), chain.potential(), config.k, false);
    const double recovery = max_over(chain.potential() - p.v_minus(), p.mode().trusted_window());
    report["steps"] = steps;
    report["spectra"]["isospectrality"] = comparison_json(cmp);
    report["max_spectral_deviation"] = cmp.max_abs_difference;
    report["recovery_sup_norm"] = recovery;
    report["recovered_original"] = recovery < kRecoveryTolerance;

    CheckList checks;
    checks.add(Check{"strict_isospectrality", cmp.max_abs_difference, kChainSpectralTolerance});
    return finish(std::move(report), checks, chain.potential());
}

CommandResult cmd_verify(const RunConfig& input) {
    RunConfig config = input;
    if (config.lambdas.empty()) config.lambdas = {kDefaultVerifyLambda};
    const Problem p = setup(config);
    json report = base_report(config, p, "verify");

    const GridFunction v_plus = partner_potential_on_grid(p.superpotential, p.v_minus());
    const Eigenpairs minus = lowest_eigenpairs(build_hamiltonian(p.v_minus()), config.k);
    report["spectra"]["v_minus"] = spectrum_json(minus.report);

    CheckList checks;
    add_partner_ladder(p, minus.report, config.k, v_plus, checks, report["spectra"]);
    add_susy_checks(p, checks);

    std::optional<GridFunction> table;
    json per_lambda = json::array();
    for (double lambda : config.lambdas) {
        const LambdaResult r = deform_once(p, lambda, config.integral_origin, config.k);
        add_lambda_checks(p, r, config.integral_origin, checks);
        per_lambda.push_back({{"lambda", lambda},
                              {"excluded_interval", interval_json(r.excluded)},
                              {"normalization", r.mode.normalization},
                              {"isospectrality", comparison_json(r.comparison)}});
        if (!table) table = r.v_lambda;
    }
    report["spectra"]["deformations"] = per_lambda;
    return finish(std::move(report), checks, table);
}

CommandResult run_command(Command command, const RunConfig& config) {
    switch (command) {
        case Command::solve:
            return cmd_solve(config);
        case Command::deform:
            return cmd_deform(config);
        case Command::chain:
            return cmd_chain(config);
        case Command::verify:
            return cmd_verify(config);
    }
    throw InvalidArgument("unknown command");
}

namespace {

void emit(const CommandResult& result, const RunConfig& config, std::ostream& out) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output_path.empty()) {
        file.open(config.output_path, std::ios::binary);
        if (!file) throw InvalidInput("cannot open output file " + config.output_path);
        sink = &file;
    }
    if (config.format == OutputFormat::csv) {
        if (result.table) write_table(*sink, *result.table);
    } else {
        *sink << result.report.dump(2) << '\n';
    }
    if (!*sink) throw InvalidInput("failed to write the report");
}

std::string format_interval(double lo, double hi) {
    std::ostringstream os;
    os.precision(6);
    os << '[' << lo << ", " << hi << ']';
    return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Supersymmetric factorization and strictly isospectral potentials"};
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1);

    std::string potential = "harmonic";
    std::optional<double> omega;
    std::optional<double> a;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<long long> n;
    long long k = 6;
    std::optional<double> lambda;
    std::vector<double> lambdas;
    std::string origin = "left";
    std::string format = "json";
    std::string out_path;
    bool no_timestamp = false;

    app.add_option("--potential", potential, "Catalog name (harmonic, box, poschl_teller) or x,V table");
    app.add_option("--omega", omega, "Harmonic frequency");
    app.add_option("--a", a, "Poschl-Teller depth parameter");
    app.add_option("--xmin", x_min, "Left grid edge");
    app.add_option("--xmax", x_max, "Right grid edge");
    app.add_option("--n", n, "Number of grid points (odd)");
    app.add_option("--k", k, "Number of eigenvalues");
    auto* single = app.add_option("--lambda", lambda, "Deformation parameter");
    auto* many = app.add_option("--lambdas", lambdas, "Comma-separated deformation parameters")
                     ->delimiter(',');
    single->excludes(many);
    app.add_option("--integral-origin", origin, "Lower limit of running integrals")
        ->check(CLI::IsMember({"left", "mid"}));
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp from the report");

    std::optional<Command> command;
    const std::pair<const char*, Command> commands[] = {{"solve", Command::solve},
                                                         {"deform", Command::deform},
                                                         {"chain", Command::chain},
                                                         {"verify", Command::verify}};
    const char* help[] = {"Ground state, partner potential and spectra",
                          "One-parameter isospectral deformation",
                          "Chain of isospectral deformations", "Run the invariant suite"};
    for (std::size_t i = 0; i < 4; ++i) {
        const Command c = commands[i].second;
        app.add_subcommand(commands[i].first, help[i])->fallthrough()->callback(
            [&command, c] { command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_codes::pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_codes::input_error;
    }

    try {
        RunConfig config;
        config.potential = parse_potential_spec(potential, omega, a);
        if (x_min || x_max || n) {
            GridSpec gs = default_grid(config.potential);
            if (x_min) gs.x_min = *x_min;
            if (x_max) gs.x_max = *x_max;
            if (n) gs.n = *n;
            config.grid = gs;
        }
        if (k < 1) throw InvalidArgument("k must be at least 1");
        config.k = static_cast<std::size_t>(k);
        if (lambda) {
            config.lambdas = {*lambda};
        } else {
            config.lambdas = lambdas;
        }
        config.integral_origin = origin == "mid" ? IntegralOrigin::mid : IntegralOrigin::left;
        config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        config.output_path = out_path;
        config.timestamp = !no_timestamp;

        const CommandResult result = run_command(*command, config);
        emit(result, config, out);
        if (result.exit_code != exit_codes::pass) {
            err << "invariant failures:";
            for (const auto& f : result.report["invariants"]["failures"]) {
                err << ' ' << f.get<std::string>();
            }
            err << '\n';
        }
        return result.exit_code;
    } catch (const SingularParameterError& e) {
        err << "error: " << e.what() << "\nexcluded interval: "
            << format_interval(e.excluded_lo(), e.excluded_hi()) << '\n';
        return exit_codes::singular_parameter;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_codes::input_error;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_codes::input_error;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return exit_codes::input_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_codes::numerical_failure;
    }
}

}  // namespace isospec::cli
