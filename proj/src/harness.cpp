#include "nlscat/harness.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "nlscat/field_io.hpp"

namespace nlscat {

std::string RotationReport::to_json() const {
    nlohmann::json j_ = {{"theta", theta},
                         {"j", j},
                         {"nu", nu_j},
                         {"rotation_defect", rotation_defect},
                         {"l2_mass", l2_mass},
                         {"eigenstate_grad_l2", grad_l2},
                         {"mass_threshold", mass_threshold},
                         {"mass_threshold_pass", mass_threshold_pass},
                         {"h1_growth_flag", h1_growth_flag},
                         {"runtime_seconds", runtime_seconds}};
    return j_.dump(2);
}

namespace {

double focusing_mass_threshold(int d, double Q_l2) {
    return std::pow(static_cast<double>(d) / (d + 2), 0.25 * d) * Q_l2;
}

RotationReport run_case(const ExperimentConfig& cfg, const Grid& grid, double theta, int j,
                        double Q_l2, const std::string& field_stem) {
    auto tic = std::chrono::steady_clock::now();
    RotationReport rep;
    rep.theta = theta;
    rep.j = j;
    RotatingDatum datum = build_rotating_datum(theta, j, grid, cfg.sign, cfg.eig_tol);
    if (!field_stem.empty()) write_field(field_stem + ".field", datum.u_minus, "u_minus");
    rep.nu_j = datum.nu;
    ScatteringResult s = scattering_lens(datum.u_minus, cfg.sign, cfg.dt);
    double mass = l2_norm(datum.u_minus);
    Complex rot(std::cos(theta), std::sin(theta));
    rep.rotation_defect = l2_norm(s.u_plus - rot * datum.u_minus) / mass;
    rep.l2_mass = mass;
    rep.grad_l2 = grad_l2_norm(datum.eigenstate.psi);
    if (cfg.sign == NonlinearitySign::focusing) {
        rep.mass_threshold = focusing_mass_threshold(grid.d, Q_l2);
        rep.mass_threshold_pass = mass > rep.mass_threshold;
    }
    auto toc = std::chrono::steady_clock::now();
    rep.runtime_seconds = std::chrono::duration<double>(toc - tic).count();
    return rep;
}

}  // namespace

std::vector<RotationReport> run_experiment(const ExperimentConfig& cfg) {
    std::vector<RotationReport> reports;
    if (cfg.theta_list.empty() || cfg.j_list.empty()) return reports;
    Grid grid(cfg.d, cfg.L, cfg.N);
    double Q_l2 = 0.0;
    if (cfg.sign == NonlinearitySign::focusing) Q_l2 = l2_norm(solve_Q(grid));

    std::vector<double> grad_history;
    for (double theta : cfg.theta_list)
        for (int j : cfg.j_list) {
            std::string stem;
            if (!cfg.out_dir.empty()) {
                std::filesystem::create_directories(cfg.out_dir);
                stem = cfg.out_dir + "/" + cfg.name + "_theta" + std::to_string(theta) + "_j" +
                       std::to_string(j);
            }
            RotationReport rep = run_case(cfg, grid, theta, j, Q_l2,
                                          cfg.write_fields ? stem : std::string());
            grad_history.push_back(rep.grad_l2);
            if (grad_history.size() >= 2)
                rep.h1_growth_flag = rep.grad_l2 > grad_history[grad_history.size() - 2];
            reports.push_back(rep);
            if (!stem.empty()) std::ofstream(stem + ".json") << rep.to_json() << "\n";
        }
    return reports;
}

std::vector<ResolutionRow> resolution_study(const ExperimentConfig& cfg, int refinements) {
    if (refinements < 1) throw InvalidProblem("resolution_study: need >= 1 refinement");
    std::vector<ResolutionRow> rows;
    ExperimentConfig coarse = cfg;
    for (int r = 0; r < refinements; ++r) {
        ExperimentConfig fine = coarse;
        fine.L *= 2.0;  // doubling the box kills the exponential truncation floor
        fine.N *= 2;    // ... at fixed sample spacing
        fine.dt *= 0.5;
        auto cr = run_experiment(coarse);
        auto fr = run_experiment(fine);
        for (std::size_t i = 0; i < cr.size(); ++i) {
            ResolutionRow row;
            row.theta = cr[i].theta;
            row.j = cr[i].j;
            row.coarse_defect = cr[i].rotation_defect;
            row.fine_defect = fr[i].rotation_defect;
            row.ratio = fr[i].rotation_defect > 0.0
                            ? cr[i].rotation_defect / fr[i].rotation_defect
                            : std::numeric_limits<double>::infinity();
            rows.push_back(row);
        }
        coarse = fine;
    }
    return rows;
}

bool all_within_threshold(const std::vector<RotationReport>& reports, double threshold) {
    for (const auto& r : reports)
        if (!(r.rotation_defect < threshold) || !r.mass_threshold_pass) return false;
    return true;
}

}  // namespace nlscat
