#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "er/bounce.hpp"
#include "er/core.hpp"
#include "er/effpot.hpp"
#include "er/errors.hpp"
#include "er/field.hpp"
#include "er/hjsolver.hpp"
#include "er/oracle.hpp"
#include "er/output.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string config_file;
    std::string out_dir = "er_out";
    std::string format = "csv";
    // Physical inputs (Gaussian-CGS unless hbar/c overridden).
    double energy = 0.0, mass = 0.0, charge = 0.0, a = 0.0, H = 0.0, u0 = 0.0;
    int N = 0;
    double hbar = 0.0, c = 0.0;
    // Dimensionless inputs, usable without a physical setup.
    double alpha = 0.0, nu = 0.0;
    bool has_alpha = false, has_nu = false;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_file, "INI config file (key = value)");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", o.format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--energy", o.energy, "|E| (erg)");
    cmd->add_option("--mass", o.mass, "particle mass (g)");
    cmd->add_option("--charge", o.charge, "|e| (esu)");
    cmd->add_option("--a", o.a, "wall half-width a (cm)");
    cmd->add_option("--H", o.H, "magnetic field H (G)");
    cmd->add_option("--u0", o.u0, "wall strength u0 (erg)");
    cmd->add_option("--N", o.N, "wall exponent N in u0 (y/a)^{4N}");
    cmd->add_option("--hbar", o.hbar, "override hbar");
    cmd->add_option("--c", o.c, "override c");
    cmd->add_option("--alpha", o.alpha, "dimensionless a/L")
        ->each([&o](const std::string&) { o.has_alpha = true; });
    cmd->add_option("--nu", o.nu, "dimensionless 2|E|/(hbar omega_c)")
        ->each([&o](const std::string&) { o.has_nu = true; });
}

// Config file values are overridden by explicit flags.
er::core::PhysicalSetup resolve_setup(const CommonOpts& o) {
    er::core::PhysicalSetup s;
    if (!o.config_file.empty())
        er::core::apply_config(er::core::parse_config_file(o.config_file), s);
    if (o.energy != 0.0) s.energy_magnitude = o.energy;
    if (o.mass != 0.0) s.mass = o.mass;
    if (o.charge != 0.0) s.charge_magnitude = o.charge;
    if (o.a != 0.0) s.wall_half_width = o.a;
    if (o.H != 0.0) s.field = o.H;
    if (o.u0 != 0.0) s.wall_strength = o.u0;
    if (o.N != 0) s.wall_exponent = o.N;
    if (o.hbar != 0.0) s.constants.hbar = o.hbar;
    if (o.c != 0.0) s.constants.c = o.c;
    return s;
}

bool have_physical(const er::core::PhysicalSetup& s) {
    return s.energy_magnitude > 0.0 && s.mass > 0.0 && s.charge_magnitude > 0.0 &&
           s.wall_half_width > 0.0 && s.wall_strength > 0.0 && s.wall_exponent >= 1;
}

// alpha/nu from flags, falling back to the physical setup.
std::pair<double, double> resolve_dimensionless(const CommonOpts& o,
                                                bool need_alpha = true) {
    double alpha = o.has_alpha ? o.alpha : 0.0;
    double nu = o.has_nu ? o.nu : 0.0;
    if (!o.has_alpha || !o.has_nu) {
        const er::core::PhysicalSetup s = resolve_setup(o);
        if (have_physical(s) && s.field > 0.0) {
            const auto d = er::core::derive_dimensionless(s);
            if (!o.has_alpha) alpha = d.alpha;
            if (!o.has_nu) nu = d.nu;
        }
    }
    if (o.has_alpha && !(alpha > 0.0))
        throw er::DomainError("alpha must be positive");
    if (need_alpha && !(alpha > 0.0))
        throw er::DomainError("alpha is required (flag --alpha or a physical setup)");
    if (!(nu > 0.0))
        throw er::DomainError("nu is required (flag --nu or a physical setup)");
    return {alpha, nu};
}

json setup_json(const er::core::PhysicalSetup& s) {
    return json{{"energy", s.energy_magnitude}, {"mass", s.mass},
                {"charge", s.charge_magnitude}, {"a", s.wall_half_width},
                {"H", s.field},                 {"u0", s.wall_strength},
                {"N", s.wall_exponent},         {"hbar", s.constants.hbar},
                {"c", s.constants.c}};
}

void write_json_file(const json& j, const std::string& path,
                     std::vector<std::string>& outputs) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw er::DomainError("cannot open output file: " + path);
    f << j.dump(2) << '\n';
    outputs.push_back(path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semiclassical magnetotunneling engine"};
    app.require_subcommand(1);

    CommonOpts opts;
    double tol = 1e-10;
    double alpha_min = 0.2, alpha_max = 2.0;
    int steps = 19;
    double xmax = 0.0, ymax = 0.0;
    int nx = 0, ny = 0;
    int samples = 400;
    int kmax = 2;
    double u0_ratio = 50.0;
    int wall_exp = 4;
    int periods_count = 1;
    bool self_consistent = false;
    std::string effpot_source = "model";
    double well_depth = 2.0, well_width = 0.0;
    double omega_c = 1.0, wall_a = 1.0, mag_l = 0.2, x_shift = 0.0;
    double e_min = -2.0, e_max = 0.0;
    double kinetic = 0.0;

    auto* c_res = app.add_subcommand("resonance",
                                     "alpha_R, H_R and the near-resonance coefficient");
    add_common_options(c_res, opts);
    c_res->add_option("--tol", tol, "root tolerance")->capture_default_str();

    auto* c_act = app.add_subcommand("action", "decay-action tables over alpha");
    add_common_options(c_act, opts);
    c_act->add_option("--alpha-min", alpha_min)->capture_default_str();
    c_act->add_option("--alpha-max", alpha_max)->capture_default_str();
    c_act->add_option("--steps", steps)->capture_default_str();

    auto* c_prof = app.add_subcommand("profile",
                                      "|psi(x,0)| decay profile with region shifts");
    add_common_options(c_prof, opts);
    c_prof->add_option("--xmax", xmax, "profile extent, units of L");
    c_prof->add_option("--samples", samples)->capture_default_str();

    auto* c_reg = app.add_subcommand("regions", "reflectionless region boundary curves");
    add_common_options(c_reg, opts);
    c_reg->add_option("--kmax", kmax, "highest region index")->capture_default_str();
    c_reg->add_option("--samples", samples)->capture_default_str();

    auto* c_fld = app.add_subcommand("field",
                                     "semiclassical grid with Q and currents");
    add_common_options(c_fld, opts);
    c_fld->add_option("--xmax", xmax, "grid x extent, units of L");
    c_fld->add_option("--ymax", ymax, "grid y half-extent, units of L");
    c_fld->add_option("--nx", nx, "x node count");
    c_fld->add_option("--ny", ny, "y node count");

    auto* c_bnc = app.add_subcommand("bounce", "imaginary-time bounce trajectory");
    add_common_options(c_bnc, opts);
    c_bnc->add_option("--u0-ratio", u0_ratio, "u0/|E|")->capture_default_str();
    c_bnc->add_option("--wall-exponent", wall_exp, "N")->capture_default_str();
    c_bnc->add_option("--samples", samples)->capture_default_str();

    auto* c_orc = app.add_subcommand("oracle",
                                     "direct finite-difference eigensolve + comparison");
    add_common_options(c_orc, opts);
    c_orc->add_option("--u0-ratio", u0_ratio)->capture_default_str();
    c_orc->add_option("--wall-exponent", wall_exp)->capture_default_str();
    c_orc->add_option("--nx", nx, "x cell count (default 384)");
    c_orc->add_option("--ny", ny, "y cell count (default 256)");
    c_orc->add_flag("--self-consistent", self_consistent,
                    "iterate the Robin coefficient on the computed eigenvalue");

    auto* c_eff = app.add_subcommand("effpot", "effective 1D potential and levels");
    add_common_options(c_eff, opts);
    c_eff->add_option("--source", effpot_source, "oracle | model | tan")
        ->check(CLI::IsMember({"oracle", "model", "tan"}))
        ->capture_default_str();
    c_eff->add_option("--u0-ratio", u0_ratio)->capture_default_str();
    c_eff->add_option("--wall-exponent", wall_exp)->capture_default_str();
    c_eff->add_option("--nx", nx, "oracle x cell count");
    c_eff->add_option("--ny", ny, "oracle y cell count");
    c_eff->add_option("--well-depth", well_depth, "model bridging-well depth")
        ->capture_default_str();
    c_eff->add_option("--well-width", well_width,
                      "model bridging-well width (default delta = 1/(alpha nu))");
    c_eff->add_option("--omega-c", omega_c, "tan variant: cyclotron frequency")
        ->capture_default_str();
    c_eff->add_option("--wall-a", wall_a, "tan variant: wall scale a")
        ->capture_default_str();
    c_eff->add_option("--mag-l", mag_l, "tan variant: magnetic length l")
        ->capture_default_str();
    c_eff->add_option("--x0", x_shift, "tan variant: singularity shift x0")
        ->capture_default_str();
    c_eff->add_option("--samples", samples)->capture_default_str();
    c_eff->add_option("--emin", e_min, "level window lower edge")->capture_default_str();
    c_eff->add_option("--emax", e_max, "level window upper edge")->capture_default_str();
    c_eff->add_option("--kinetic", kinetic,
                      "kinetic coefficient (default 1/nu^2 for model, 1/2 otherwise)");

    auto* c_scan = app.add_subcommand("scan", "measured vs predicted suppression over alpha");
    add_common_options(c_scan, opts);
    c_scan->add_option("--alpha-min", alpha_min)->capture_default_str();
    c_scan->add_option("--alpha-max", alpha_max)->capture_default_str();
    c_scan->add_option("--steps", steps)->capture_default_str();
    c_scan->add_option("--u0-ratio", u0_ratio)->capture_default_str();
    c_scan->add_option("--wall-exponent", wall_exp)->capture_default_str();
    c_scan->add_option("--nx", nx, "x cell count per alpha")->capture_default_str();
    c_scan->add_option("--ny", ny, "y cell count per alpha")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto t_start = std::chrono::steady_clock::now();
    const std::string sub = app.get_subcommands().front()->get_name();
    int threads = 1;
    if (const char* env = std::getenv("ER_THREADS")) threads = std::max(1, std::atoi(env));

    json manifest;
    manifest["schema_version"] = 1;
    manifest["subcommand"] = sub;
    manifest["threads"] = threads;
    manifest["format"] = opts.format;
    // Fully-resolved knob values (file < flags already merged).
    manifest["config"] = json{{"config_file", opts.config_file},
                              {"out", opts.out_dir},
                              {"format", opts.format},
                              {"alpha", opts.has_alpha ? json(opts.alpha) : json()},
                              {"nu", opts.has_nu ? json(opts.nu) : json()},
                              {"setup", setup_json(resolve_setup(opts))},
                              {"tol", tol},
                              {"alpha_min", alpha_min},
                              {"alpha_max", alpha_max},
                              {"steps", steps},
                              {"xmax", xmax},
                              {"ymax", ymax},
                              {"nx", nx},
                              {"ny", ny},
                              {"samples", samples},
                              {"kmax", kmax},
                              {"u0_ratio", u0_ratio},
                              {"wall_exponent", wall_exp},
                              {"periods", periods_count},
                              {"self_consistent", self_consistent},
                              {"effpot_source", effpot_source},
                              {"well_depth", well_depth},
                              {"well_width", well_width},
                              {"omega_c", omega_c},
                              {"wall_a", wall_a},
                              {"mag_l", mag_l},
                              {"x0", x_shift},
                              {"emin", e_min},
                              {"emax", e_max},
                              {"kinetic", kinetic}};
    std::vector<std::string> outputs;
    int exit_code = 0;
    std::string error_message;

    try {
        std::filesystem::create_directories(opts.out_dir);
        const auto in_out = [&](const std::string& name) {
            return (std::filesystem::path(opts.out_dir) / name).string();
        };

        if (sub == "resonance") {
            const double alpha_r = er::bounce::find_alpha_R(tol);
            const double dx_over_a = er::hj::period(alpha_r) / alpha_r;
            const double coeff = er::bounce::near_resonance_coefficient();
            json j{{"alpha_R", alpha_r},
                   {"dx_over_a", dx_over_a},
                   {"coefficient", coeff},
                   {"connection_constant_at_root",
                    er::hj::region_shift_constant(alpha_r)}};
            const er::core::PhysicalSetup s = resolve_setup(opts);
            if (have_physical(s)) {
                const double hr = er::bounce::resonance_field(s);
                j["H_R"] = hr;
                manifest["resolved_setup"] = setup_json(s);
            }
            write_json_file(j, in_out("resonance.json"), outputs);
            std::cout << "alpha_R = " << er::out::format_number(alpha_r) << "\n"
                      << "dx_over_a = " << er::out::format_number(dx_over_a) << "\n"
                      << "coefficient = " << er::out::format_number(coeff) << "\n";
            if (j.contains("H_R"))
                std::cout << "H_R = "
                          << er::out::format_number(j["H_R"].get<double>()) << "\n";
        } else if (sub == "action") {
            const auto [alpha_unused, nu] = resolve_dimensionless(opts, false);
            (void)alpha_unused;
            if (steps < 1) throw er::DomainError("steps must be >= 1");
            er::out::Table t;
            t.header = {"alpha", "wkb_action", "transverse_action", "total_action",
                        "reduction_fraction", "suppression"};
            for (int i = 0; i < steps; ++i) {
                const double a = steps == 1 ? alpha_min
                                            : alpha_min + (alpha_max - alpha_min) *
                                                              i / (steps - 1);
                const auto b = er::bounce::hard_wall_action(a, nu);
                t.rows.push_back({er::out::Table::num(b.alpha),
                                  er::out::Table::num(b.wkb_action),
                                  er::out::Table::num(b.transverse_action),
                                  er::out::Table::num(b.total_action),
                                  er::out::Table::num(b.reduction_fraction),
                                  er::out::Table::num(b.suppression)});
            }
            er::out::write_table(t, in_out("action"), opts.format, outputs);
        } else if (sub == "profile") {
            const auto [alpha, nu] = resolve_dimensionless(opts);
            const double extent = xmax > 0.0 ? xmax : 2.5 * er::hj::period(alpha);
            er::out::Table t;
            t.header = {"x", "abs_psi_ratio"};
            for (int i = 0; i < samples; ++i) {
                const double x = extent * i / (samples - 1);
                std::vector<er::out::Table::Cell> row{er::out::Table::num(x)};
                if (er::hj::region_index(x, 0.0, alpha))
                    row.push_back(er::out::Table::num(
                        er::hj::modulus_ratio(x, alpha, nu)));
                else
                    row.push_back(er::out::Table::none());
                t.rows.push_back(std::move(row));
            }
            er::out::write_table(t, in_out("profile"), opts.format, outputs);
        } else if (sub == "regions") {
            const auto [alpha, nu] = resolve_dimensionless(opts);
            (void)nu;
            er::out::Table t;
            t.header = {"k", "x", "y"};
            const double dx = er::hj::period(alpha);
            for (int k = 0; k <= kmax; ++k) {
                // Closed boundary curve: rho = sqrt(1+u^2)-1 with
                // rho^2 + y^2 = alpha^2, both u branches.
                for (int s = 0; s <= samples; ++s) {
                    const double t_par = M_PI * (-0.5 + 1.0 * s / samples);
                    const double rho = alpha * std::cos(t_par);
                    const double u = std::sqrt((1.0 + rho) * (1.0 + rho) - 1.0);
                    t.rows.push_back({er::out::Table::num(k),
                                      er::out::Table::num(k * dx + u),
                                      er::out::Table::num(alpha * std::sin(t_par))});
                }
                for (int s = 0; s <= samples; ++s) {
                    const double t_par = M_PI * (0.5 - 1.0 * s / samples);
                    const double rho = alpha * std::cos(t_par);
                    const double u = std::sqrt((1.0 + rho) * (1.0 + rho) - 1.0);
                    t.rows.push_back({er::out::Table::num(k),
                                      er::out::Table::num(k * dx - u),
                                      er::out::Table::num(alpha * std::sin(t_par))});
                }
            }
            er::out::write_table(t, in_out("regions"), opts.format, outputs);
        } else if (sub == "field") {
            const auto [alpha, nu] = resolve_dimensionless(opts);
            er::field::GridSpec spec;
            spec.x_min = 0.0;
            spec.x_max = xmax > 0.0 ? xmax : 2.0 * er::hj::period(alpha);
            spec.y_min = -(ymax > 0.0 ? ymax : 1.1 * alpha);
            spec.y_max = -spec.y_min;
            spec.nx = nx > 0 ? nx : 241;
            spec.ny = ny > 0 ? ny : 161;
            const auto g = er::field::assemble_field(spec, alpha, nu);
            er::out::write_table(er::out::grid_table(g), in_out("field"),
                                 opts.format, outputs);
        } else if (sub == "bounce") {
            const auto [alpha, nu] = resolve_dimensionless(opts);
            er::bounce::StepControl ctl;
            ctl.samples = samples;
            const auto r = er::bounce::integrate_bounce(alpha, nu, u0_ratio,
                                                        wall_exp, ctl);
            er::out::Table t;
            t.header = {"tau", "eta"};
            for (std::size_t i = 0; i < r.tau.size(); ++i)
                t.rows.push_back({er::out::Table::num(r.tau[i]),
                                  er::out::Table::num(r.eta[i])});
            er::out::write_table(t, in_out("bounce_trajectory"), opts.format,
                                 outputs);
            write_json_file(
                json{{"alpha", alpha},
                     {"nu", nu},
                     {"u0_ratio", u0_ratio},
                     {"wall_exponent", wall_exp},
                     {"period", r.period},
                     {"turning_point", r.turning_point},
                     {"transverse_action", r.transverse_action},
                     {"wkb_action", r.wkb_action},
                     {"total_action", r.total_action}},
                in_out("bounce.json"), outputs);
        } else if (sub == "oracle") {
            const auto [alpha, nu] = resolve_dimensionless(opts);
            er::oracle::ProblemSpec spec;
            spec.alpha = alpha;
            spec.nu = nu;
            spec.u0_ratio = u0_ratio;
            spec.wall_exponent = wall_exp;
            if (nx > 0) spec.nx_cells = nx;
            if (ny > 0) spec.ny_cells = ny;
            er::oracle::EigenSolution sol =
                self_consistent
                    ? er::oracle::solve_ground_self_consistent(spec)
                    : er::oracle::solve_ground(er::oracle::build_problem(spec));
            const auto rep = er::oracle::compare_semiclassics(sol, alpha, nu);
            er::out::write_table(er::out::grid_table(sol.grid),
                                 in_out("oracle_field"), opts.format, outputs);
            write_json_file(
                json{{"alpha", alpha},
                     {"nu", nu},
                     {"u0_ratio", u0_ratio},
                     {"wall_exponent", wall_exp},
                     {"nx_cells", spec.nx_cells},
                     {"ny_cells", spec.ny_cells},
                     {"eigenvalue", sol.eigenvalue},
                     {"residual", sol.residual},
                     {"iterations", sol.iterations},
                     {"comparison",
                      json{{"slope_ratio", rep.slope_ratio},
                           {"first_node_x", rep.first_node_x},
                           {"first_node_rel_error", rep.first_node_rel_error},
                           {"curvature_at_node", rep.curvature_at_node},
                           {"curvature_at_origin", rep.curvature_at_origin},
                           {"node_winding", rep.node_winding},
                           {"measured_log_suppression",
                            rep.measured_log_suppression},
                           {"predicted_log_suppression",
                            rep.predicted_log_suppression},
                           {"suppression_log_ratio", rep.suppression_log_ratio},
                           {"decay_ok", rep.decay_ok},
                           {"node_ok", rep.node_ok},
                           {"disjoining_ok", rep.disjoining_ok},
                           {"winding_ok", rep.winding_ok},
                           {"suppression_ok", rep.suppression_ok}}}},
                in_out("oracle.json"), outputs);
        } else if (sub == "effpot") {
            std::vector<const er::effpot::EffectivePotentialProfile*> profiles;
            er::effpot::ExtractionResult extraction;
            er::effpot::EffectivePotentialProfile profile;
            double kin = kinetic;
            if (effpot_source == "oracle") {
                const auto [alpha, nu] = resolve_dimensionless(opts);
                er::oracle::ProblemSpec spec;
                spec.alpha = alpha;
                spec.nu = nu;
                spec.u0_ratio = u0_ratio;
                spec.wall_exponent = wall_exp;
                if (nx > 0) spec.nx_cells = nx;
                if (ny > 0) spec.ny_cells = ny;
                const auto sol =
                    er::oracle::solve_ground(er::oracle::build_problem(spec));
                extraction = er::effpot::extract_U(sol.grid, sol.eigenvalue);
                profiles = {&extraction.phase_route, &extraction.axis_route};
            } else if (effpot_source == "model") {
                const auto [alpha, nu] = resolve_dimensionless(opts);
                const double dx = er::hj::period(alpha);
                const double width =
                    well_width > 0.0 ? well_width : 1.0 / (alpha * nu);
                profile = er::effpot::piecewise_parabolic_profile(
                    alpha, well_depth, width, 0.5 * dx, 0.5 * dx + 3.0 * dx,
                    samples > 2 ? samples : 3000);
                profiles = {&profile};
                if (kin == 0.0) kin = 1.0 / (nu * nu);
            } else { // tan
                std::vector<double> xs(samples > 2 ? samples : 400);
                const double span = 4.0 * M_PI * mag_l * mag_l / wall_a;
                for (std::size_t i = 0; i < xs.size(); ++i)
                    xs[i] = x_shift - span / 2 + span * i / (xs.size() - 1);
                profile = er::effpot::eval_U205(xs, omega_c, wall_a, mag_l, x_shift);
                profiles = {&profile};
            }
            er::out::write_table(er::out::effpot_table(profiles), in_out("effpot"),
                                 opts.format, outputs);
            if (effpot_source == "model") {
                if (kin == 0.0) kin = 0.5;
                const auto levels =
                    er::effpot::levels_1d(*profiles.front(), kin, e_min, e_max);
                write_json_file(json{{"kinetic_coefficient", kin},
                                     {"window", {e_min, e_max}},
                                     {"levels", levels}},
                                in_out("levels.json"), outputs);
            }
        } else if (sub == "scan") {
            const auto [alpha_unused, nu] = resolve_dimensionless(opts, false);
            (void)alpha_unused;
            if (steps < 1) throw er::DomainError("steps must be >= 1");
            std::vector<double> alphas;
            for (int i = 0; i < steps; ++i)
                alphas.push_back(steps == 1 ? alpha_min
                                            : alpha_min + (alpha_max - alpha_min) *
                                                              i / (steps - 1));
            er::oracle::ProblemSpec base;
            base.u0_ratio = u0_ratio;
            base.wall_exponent = wall_exp;
            if (nx > 0) base.nx_cells = nx;
            if (ny > 0) base.ny_cells = ny;
            const auto rows = er::oracle::resonance_scan(nu, alphas, base);
            er::out::Table t;
            t.header = {"alpha", "measured_log_suppression",
                        "predicted_log_suppression"};
            for (const auto& r : rows)
                t.rows.push_back({er::out::Table::num(r.alpha),
                                  er::out::Table::num(r.measured_log_suppression),
                                  er::out::Table::num(r.predicted_log_suppression)});
            er::out::write_table(t, in_out("scan"), opts.format, outputs);
        }
    } catch (const er::NumericError& e) {
        exit_code = 3;
        error_message = e.what();
    } catch (const std::exception& e) {
        exit_code = 2;
        error_message = e.what();
    }

    const auto t_end = std::chrono::steady_clock::now();
    manifest["elapsed_seconds"] =
        std::chrono::duration<double>(t_end - t_start).count();
    manifest["outputs"] = outputs;
    manifest["status"] = exit_code == 0 ? "ok" : "error";
    manifest["exit_code"] = exit_code;
    if (!error_message.empty()) {
        manifest["error"] = error_message;
        std::cerr << "error: " << error_message << "\n";
    }
    try {
        std::filesystem::create_directories(opts.out_dir);
        std::ofstream mf(std::filesystem::path(opts.out_dir) / "manifest.json",
                         std::ios::binary);
        mf << manifest.dump(2) << '\n';
    } catch (...) {
        // Manifest emission must never mask the primary exit code.
    }
    return exit_code;
}
