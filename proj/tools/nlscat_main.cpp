// Command-line harness: each subcommand runs one pipeline and emits a JSON
// report on stdout; field snapshots go under the output root (--out or the
// NLSCAT_OUT environment variable). A JSON config file given with --config
// overrides the corresponding flags.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlscat/field_io.hpp"
#include "nlscat/harness.hpp"

using namespace nlscat;
using nlohmann::json;

namespace {

std::string config_path;

json load_config() {
    if (config_path.empty()) return json::object();
    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + config_path);
    json j;
    in >> j;
    return j;
}

template <typename T>
void override_from(const json& cfg, const char* key, T& value) {
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::filesystem::path output_root(const std::string& out_flag) {
    if (!out_flag.empty()) return out_flag;
    if (const char* env = std::getenv("NLSCAT_OUT")) return env;
    return ".";
}

NonlinearitySign parse_sign(const std::string& s) {
    if (s == "defocusing") return NonlinearitySign::defocusing;
    if (s == "focusing") return NonlinearitySign::focusing;
    throw CLI::ValidationError("--sign", "expected defocusing|focusing");
}

Field gaussian_datum(const Grid& g, double amp) {
    Field out(g);
    const int N = g.N;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double x2;
        if (g.d == 1) {
            double x = g.x(static_cast<int>(i));
            x2 = x * x;
        } else {
            double a = g.x(static_cast<int>(i / N));
            double b = g.x(static_cast<int>(i % N));
            x2 = a * a + b * b;
        }
        out[i] = amp * std::exp(-0.5 * x2);
    }
    return out;
}

struct GridFlags {
    int d = 1;
    double L = 12.0;
    int N = 1024;

    void attach(CLI::App* cmd) {
        cmd->add_option("-d,--dim", d, "spatial dimension (1 or 2)");
        cmd->add_option("-L,--box", L, "half-width of the box");
        cmd->add_option("-N,--points", N, "grid points per axis (power of two)");
    }
    void override_from_config(const json& cfg) {
        ::override_from(cfg, "d", d);
        ::override_from(cfg, "L", L);
        ::override_from(cfg, "N", N);
    }
    Grid grid() const { return Grid(d, L, N); }
};

json field_stats(const Field& f) {
    return {{"l2", l2_norm(f)}, {"grad_l2", grad_l2_norm(f)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_eigenstate(const GridFlags& gf, double nu, const std::string& sign, double tol,
                   const std::string& out) {
    json cfg = load_config();
    double nu_ = nu;
    std::string sign_ = sign;
    double tol_ = tol;
    GridFlags g = gf;
    g.override_from_config(cfg);
    override_from(cfg, "nu", nu_);
    override_from(cfg, "sign", sign_);
    override_from(cfg, "tol", tol_);

    MinimizationProblem problem;
    problem.nu = nu_;
    problem.sign = parse_sign(sign_);
    problem.grid = g.grid();
    EigenstateSolution sol = minimize(problem, gaussian_datum(problem.grid, 1.0), tol_);
    auto root = output_root(out);
    std::filesystem::create_directories(root);
    write_field((root / "eigenstate.field").string(), sol.psi, "eigenstate");
    emit({{"nu", sol.nu},
          {"mu", sol.mu},
          {"delta", sol.delta},
          {"residual", sol.residual},
          {"iterations", sol.iterations},
          {"converged", sol.converged},
          {"l2", l2_norm(sol.psi)},
          {"grad_l2", grad_l2_norm(sol.psi)},
          {"field", (root / "eigenstate.field").string()}});
    return sol.converged ? 0 : 1;
}

int cmd_propagate(const GridFlags& gf, std::string in, double t0, double t1, double dt,
                  const std::string& sign, const std::string& potential, bool linear, int order,
                  const std::string& out) {
    json cfg = load_config();
    GridFlags g = gf;
    g.override_from_config(cfg);
    override_from(cfg, "in", in);
    override_from(cfg, "t0", t0);
    override_from(cfg, "t1", t1);
    override_from(cfg, "dt", dt);
    std::string sign_ = sign, potential_ = potential;
    override_from(cfg, "sign", sign_);
    override_from(cfg, "potential", potential_);
    override_from(cfg, "linear", linear);
    override_from(cfg, "order", order);

    Field u0 = in.empty() ? gaussian_datum(g.grid(), 1.0) : read_field(in);
    NLSConfig nls = NLSConfig::mass_critical(
        u0.grid.d, sign_ == "focusing" ? -1.0 : +1.0,
        potential_ == "harmonic" ? Potential::harmonic : Potential::none);
    nls.linear = linear;
    PropagateOptions opts;
    opts.order = order;
    PropagationResult run = propagate(u0, t0, t1, nls, dt, opts);
    auto root = output_root(out);
    std::filesystem::create_directories(root);
    write_field((root / "final.field").string(), run.final, "propagated state");
    emit({{"t0", t0},
          {"t1", t1},
          {"dt", dt},
          {"mass_drift", run.mass_drift},
          {"energy_drift", run.energy_drift},
          {"blew_up", run.blew_up},
          {"blowup_time", run.blowup_time ? json(*run.blowup_time) : json()},
          {"final", field_stats(run.final)},
          {"field", (root / "final.field").string()}});
    return run.blew_up ? 1 : 0;
}

int cmd_scatter(const GridFlags& gf, std::string in, double amp, std::string method, double dt,
                double T, const std::string& sign, const std::string& out) {
    json cfg = load_config();
    GridFlags g = gf;
    g.override_from_config(cfg);
    override_from(cfg, "in", in);
    override_from(cfg, "amp", amp);
    override_from(cfg, "method", method);
    override_from(cfg, "dt", dt);
    override_from(cfg, "T", T);
    std::string sign_ = sign;
    override_from(cfg, "sign", sign_);

    Field u = in.empty() ? gaussian_datum(g.grid(), amp) : read_field(in);
    ScatteringResult s = method == "direct" ? scattering_direct(u, T, dt, parse_sign(sign_))
                                            : scattering_lens(u, parse_sign(sign_), dt);
    auto root = output_root(out);
    std::filesystem::create_directories(root);
    write_field((root / "u_plus.field").string(), s.u_plus, "scattered state");
    emit({{"method", method},
          {"dt", dt},
          {"input", field_stats(u)},
          {"output", field_stats(s.u_plus)},
          {"l2_drift", std::abs(l2_norm(s.u_plus) - l2_norm(u)) / l2_norm(u)},
          {"discretization_estimate", s.discretization_estimate},
          {"field", (root / "u_plus.field").string()}});
    return 0;
}

int cmd_rotate_check(ExperimentConfig ec, const std::string& sign, const std::string& out) {
    json cfg = load_config();
    override_from(cfg, "d", ec.d);
    override_from(cfg, "L", ec.L);
    override_from(cfg, "N", ec.N);
    override_from(cfg, "dt", ec.dt);
    override_from(cfg, "theta", ec.theta_list);
    override_from(cfg, "j", ec.j_list);
    override_from(cfg, "defect_threshold", ec.defect_threshold);
    override_from(cfg, "eig_tol", ec.eig_tol);
    std::string sign_ = sign;
    override_from(cfg, "sign", sign_);
    ec.sign = parse_sign(sign_);
    ec.out_dir = output_root(out).string();
    ec.write_fields = true;

    auto reports = run_experiment(ec);
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(json::parse(r.to_json()));
    emit(rows);
    return all_within_threshold(reports, ec.defect_threshold) ? 0 : 1;
}

int cmd_perturbation(const GridFlags& gf, std::vector<double> eps_list, double dt,
                     const std::string& out) {
    json cfg = load_config();
    GridFlags g = gf;
    g.override_from_config(cfg);
    override_from(cfg, "eps_list", eps_list);
    override_from(cfg, "dt", dt);

    Field u = gaussian_datum(g.grid(), 1.0);
    Field P = perturbative_P(u);
    double Pn = l2_norm(P);
    json rows = json::array();
    for (double eps : eps_list) {
        ScatteringResult s = scattering_lens(eps * u, NonlinearitySign::defocusing, dt);
        double lead = l2_norm(s.u_plus - eps * u) / std::pow(eps, 5);
        rows.push_back({{"eps", eps},
                        {"leading_order", lead},
                        {"P_l2", Pn},
                        {"relative_gap", std::abs(lead - Pn) / Pn}});
    }
    auto root = output_root(out);
    std::filesystem::create_directories(root);
    write_field((root / "P.field").string(), P, "perturbative coefficient");
    emit({{"P_l2", Pn}, {"rows", rows}, {"field", (root / "P.field").string()}});
    return 0;
}

int cmd_stability(const GridFlags& gf, double theta, int j, double eps, int trials,
                  unsigned long seed, double dt) {
    json cfg = load_config();
    GridFlags g = gf;
    g.override_from_config(cfg);
    override_from(cfg, "theta", theta);
    override_from(cfg, "j", j);
    override_from(cfg, "eps", eps);
    override_from(cfg, "trials", trials);
    override_from(cfg, "seed", seed);
    override_from(cfg, "dt", dt);

    RotatingDatum d = build_rotating_datum(theta, j, g.grid(), NonlinearitySign::focusing);
    StabilityReport rep = stability_probe(d.u_minus, eps, trials, seed, dt);
    emit({{"theta", theta},
          {"j", j},
          {"nu", d.nu},
          {"eps", eps},
          {"seed", seed},
          {"trials", rep.trials},
          {"completed", rep.completed},
          {"max_mass_drift", rep.max_mass_drift}});
    return rep.completed == rep.trials ? 0 : 1;
}

int cmd_resolution_study(ExperimentConfig ec, const std::string& sign, int refinements) {
    json cfg = load_config();
    override_from(cfg, "d", ec.d);
    override_from(cfg, "L", ec.L);
    override_from(cfg, "N", ec.N);
    override_from(cfg, "dt", ec.dt);
    override_from(cfg, "theta", ec.theta_list);
    override_from(cfg, "j", ec.j_list);
    override_from(cfg, "refinements", refinements);
    std::string sign_ = sign;
    override_from(cfg, "sign", sign_);
    ec.sign = parse_sign(sign_);

    auto rows = resolution_study(ec, refinements);
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"theta", r.theta},
                       {"j", r.j},
                       {"coarse_defect", r.coarse_defect},
                       {"fine_defect", r.fine_defect},
                       {"ratio", r.ratio}});
    emit(out);
    return 0;
}

int cmd_identity_suite(const GridFlags& gf, std::string in, double amp, double dt) {
    json cfg = load_config();
    GridFlags g = gf;
    g.override_from_config(cfg);
    override_from(cfg, "in", in);
    override_from(cfg, "amp", amp);
    override_from(cfg, "dt", dt);

    Field u = in.empty() ? gaussian_datum(g.grid(), amp) : read_field(in);
    IdentityReport rep = identity_suite(u, dt);
    emit({{"gauge_defect", rep.gauge_defect},
          {"translation_defect", rep.translation_defect},
          {"conjugation_defect", rep.conjugation_defect},
          {"fourier_defect", rep.fourier_defect}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering operator toolbox for the mass-critical Schrodinger equation"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --config after the subcommand name
    app.add_option("--config", config_path, "JSON file whose entries override flags")
        ->expected(1);

    GridFlags gf;
    std::string sign = "defocusing", method = "lens", in, out;
    double nu = 2.5, tol = 1e-9, dt = 1e-3, t0 = 0.0, t1 = 1.0, T = 20.0, amp = 0.2;
    double theta = 0.0, eps = 1e-3;
    int j = 1, trials = 8, refinements = 1, order = 2;
    unsigned long seed = 1;
    bool linear = false;
    std::string potential = "none";
    std::vector<double> eps_list = {0.1, 0.15, 0.2, 0.3};
    ExperimentConfig ec;
    ec.theta_list = {0.0};
    ec.j_list = {1};

    auto* c_eig = app.add_subcommand("eigenstate", "solve the constrained eigenvalue problem");
    gf.attach(c_eig);
    c_eig->add_option("--nu", nu, "eigenvalue parameter");
    c_eig->add_option("--sign", sign, "defocusing|focusing");
    c_eig->add_option("--tol", tol, "solver tolerance");
    c_eig->add_option("--out", out, "output directory");

    auto* c_prop = app.add_subcommand("propagate", "run the split-step propagator");
    gf.attach(c_prop);
    c_prop->add_option("--in", in, "input field file (default: Gaussian)");
    c_prop->add_option("--t0", t0);
    c_prop->add_option("--t1", t1);
    c_prop->add_option("--dt", dt);
    c_prop->add_option("--sign", sign, "defocusing|focusing");
    c_prop->add_option("--potential", potential, "none|harmonic");
    c_prop->add_flag("--linear", linear, "disable the nonlinearity");
    c_prop->add_option("--order", order, "splitting order (2 or 4)");
    c_prop->add_option("--out", out, "output directory");

    auto* c_scat = app.add_subcommand("scatter", "apply the scattering map");
    gf.attach(c_scat);
    c_scat->add_option("--in", in, "input field file (default: Gaussian of --amp)");
    c_scat->add_option("--amp", amp, "Gaussian amplitude when no input file");
    c_scat->add_option("--method", method, "lens|direct");
    c_scat->add_option("--dt", dt);
    c_scat->add_option("-T,--horizon", T, "time horizon (direct method)");
    c_scat->add_option("--sign", sign, "defocusing|focusing");
    c_scat->add_option("--out", out, "output directory");

    auto* c_rot = app.add_subcommand("rotate-check", "rotating-point defect suite");
    c_rot->add_option("-d,--dim", ec.d);
    c_rot->add_option("-L,--box", ec.L);
    c_rot->add_option("-N,--points", ec.N);
    c_rot->add_option("--dt", ec.dt);
    c_rot->add_option("--theta", ec.theta_list, "rotation angles");
    c_rot->add_option("--j", ec.j_list, "branch indices");
    c_rot->add_option("--sign", sign, "defocusing|focusing");
    c_rot->add_option("--threshold", ec.defect_threshold, "pass/fail defect threshold");
    c_rot->add_option("--out", out, "output directory");

    auto* c_pert = app.add_subcommand("perturbation", "small-data expansion check");
    gf.attach(c_pert);
    c_pert->add_option("--eps-list", eps_list, "amplitudes to test");
    c_pert->add_option("--dt", dt);
    c_pert->add_option("--out", out, "output directory");

    auto* c_stab = app.add_subcommand("stability", "perturbed focusing rotating runs");
    gf.attach(c_stab);
    c_stab->add_option("--theta", theta);
    c_stab->add_option("--j", j);
    c_stab->add_option("--eps", eps, "perturbation size in L2");
    c_stab->add_option("--trials", trials);
    c_stab->add_option("--seed", seed);
    c_stab->add_option("--dt", dt);

    auto* c_res = app.add_subcommand("resolution-study", "defect ratios under refinement");
    c_res->add_option("-d,--dim", ec.d);
    c_res->add_option("-L,--box", ec.L);
    c_res->add_option("-N,--points", ec.N);
    c_res->add_option("--dt", ec.dt);
    c_res->add_option("--theta", ec.theta_list);
    c_res->add_option("--j", ec.j_list);
    c_res->add_option("--sign", sign, "defocusing|focusing");
    c_res->add_option("--refinements", refinements);

    auto* c_id = app.add_subcommand("identity-suite", "algebraic identities of S");
    gf.attach(c_id);
    c_id->add_option("--in", in, "input field file (default: Gaussian of --amp)");
    c_id->add_option("--amp", amp);
    c_id->add_option("--dt", dt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_eig) return cmd_eigenstate(gf, nu, sign, tol, out);
        if (*c_prop) return cmd_propagate(gf, in, t0, t1, dt, sign, potential, linear, order, out);
        if (*c_scat) return cmd_scatter(gf, in, amp, method, dt, T, sign, out);
        if (*c_rot) return cmd_rotate_check(ec, sign, out);
        if (*c_pert) return cmd_perturbation(gf, eps_list, dt, out);
        if (*c_stab) return cmd_stability(gf, theta, j, eps, trials, seed, dt);
        if (*c_res) return cmd_resolution_study(ec, sign, refinements);
        if (*c_id) return cmd_identity_suite(gf, in, amp, dt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
