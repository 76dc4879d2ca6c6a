#pragma once

#include "nlscat/hermite.hpp"

namespace nlscat {

enum class NonlinearitySign { defocusing, focusing };

/// Constrained minimization of I(psi) = (1/2)<H psi, psi> - (nu/2)<psi, psi>
/// on M = { psi even/radial, (1/(1+2/d)) \int |psi|^{2+4/d} = 1 }.
struct MinimizationProblem {
    double nu = 0.0;
    NonlinearitySign sign = NonlinearitySign::defocusing;
    Grid grid;
    double constraint_value = 1.0;

    void validate() const {
        double half_d = 0.5 * grid.d;
        if (sign == NonlinearitySign::defocusing && !(nu > half_d))
            throw InvalidProblem("defocusing branch requires nu > d/2");
        if (sign == NonlinearitySign::focusing && !(nu < half_d))
            throw InvalidProblem("focusing branch requires nu < d/2");
    }
};

struct EigenstateSolution {
    Field psi;        // rescaled so that it solves the nonlinear eigenvalue equation
    double nu = 0.0;
    double mu = 0.0;     // Lagrange multiplier of the constrained problem
    double delta = 0.0;  // constrained infimum value I at the minimizer
    double residual = 0.0;
    int iterations = 0;
    bool converged = true;
};

double energy_I(const Field& psi, double nu);

/// Even-symmetrize and scale onto the constraint manifold M.
Field project_to_M(const Field& psi);

EigenstateSolution minimize(const MinimizationProblem& problem, const Field& init,
                            double tol = 1e-9, int max_iter = 200000);

/// Ground state of -(1/2) Lap Q + Q = Q^{1+4/d} by the same constrained
/// minimization with the harmonic potential removed.
Field solve_Q(const Grid& grid);

/// RHS/LHS ratio of the sharp Gagliardo-Nirenberg inequality; >= 1 for any f,
/// = 1 at f = Q.
double gn_check(const Field& f, double Q_l2);

}  // namespace nlscat
