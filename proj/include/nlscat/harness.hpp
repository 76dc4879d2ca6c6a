#pragma once

#include <string>

#include "nlscat/scattering.hpp"

namespace nlscat {

struct ExperimentConfig {
    std::string name = "rotating-points";
    int d = 1;
    double L = 12.0;
    int N = 1024;
    double dt = 1e-3;
    std::vector<double> theta_list;
    std::vector<int> j_list;
    NonlinearitySign sign = NonlinearitySign::defocusing;
    std::string out_dir;
    unsigned long seed = 1;
    double defect_threshold = 1e-4;
    double eig_tol = 1e-9;
    bool write_fields = false;
};

struct RotationReport {
    double theta = 0.0;
    int j = 0;
    double nu_j = 0.0;
    double rotation_defect = 0.0;
    double l2_mass = 0.0;
    double grad_l2 = 0.0;  // ||grad phi_j|| of the eigenstate, for branch monotonicity
    bool mass_threshold_pass = true;  // focusing only; true otherwise
    double mass_threshold = 0.0;      // (d/(d+2))^{d/4} ||Q||_{L2}, focusing only
    bool h1_growth_flag = false;
    double runtime_seconds = 0.0;

    std::string to_json() const;
};

/// eigenstate -> datum -> lens scattering -> defect, for each (theta, j).
std::vector<RotationReport> run_experiment(const ExperimentConfig& cfg);

/// Same pipeline at (L, N, dt) and (2L, 2N, dt/2) -- same spacing, bigger box,
/// finer time; reports per-case defect ratios.
struct ResolutionRow {
    double theta;
    int j;
    double coarse_defect;
    double fine_defect;
    double ratio;
};
std::vector<ResolutionRow> resolution_study(const ExperimentConfig& cfg, int refinements = 1);

/// Exit-code contract: true iff every report defect is below the threshold.
bool all_within_threshold(const std::vector<RotationReport>& reports, double threshold);

}  // namespace nlscat
