#include "nlscat/eigensolver.hpp"

#include <limits>

namespace nlscat {

namespace {

// |psi|^{4/d} psi
Field nonlinear_term(const Field& psi) {
    Field w = psi;
    double e = 2.0 / psi.grid.d;
    for (auto& v : w.values) v *= std::pow(std::norm(v), e);
    return w;
}

double constraint_level(const Field& psi) {
    double p = 2.0 + 4.0 / psi.grid.d;
    double lp = lp_norm(psi, p);
    return std::pow(lp, p) / (1.0 + 2.0 / psi.grid.d);
}

using LinOp = std::function<Field(const Field&)>;

double energy_I_op(const LinOp& lin, const Field& psi, double nu) {
    Field hpsi = lin(psi);
    double quad = std::real(inner(hpsi, psi));
    double mass = l2_norm(psi);
    return 0.5 * quad - 0.5 * nu * mass * mass;
}

Field precondition(const Field& r, double shift) {
    return fourier_multiplier(r, [shift](const double* xi, int d) {
        double xi2 = 0.0;
        for (int i = 0; i < d; ++i) xi2 += xi[i] * xi[i];
        return Complex(1.0 / (0.5 * xi2 + shift), 0.0);
    });
}

Field project_core(const Field& psi) {
    Field sym = symmetrize_even(psi);
    double c = constraint_level(sym);
    if (c < 1e-300) throw DegenerateInput("project_to_M: zero (or odd) input");
    double p = 2.0 + 4.0 / psi.grid.d;
    return sym * std::pow(c, -1.0 / p);
}

struct CoreResult {
    Field psi;  // pre-rescaling minimizer on M
    double mu = 0.0;
    double delta = 0.0;
    int iterations = 0;
    bool converged = false;
};

CoreResult minimize_core(const LinOp& lin, double nu, const Field& init, double tol, int max_iter) {
    CoreResult out;
    Field psi = project_core(init);
    double I_cur = energy_I_op(lin, psi, nu);
    double shift = 1.0 + std::abs(nu);
    double tau = 0.1;
    double rn_prev = std::numeric_limits<double>::infinity();
    double mu_hat = 0.0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        Field g = lin(psi) - nu * psi;
        Field w = nonlinear_term(psi);
        double w2 = std::real(inner(w, w));
        mu_hat = std::real(inner(g, w)) / w2;
        Field r = g - mu_hat * w;
        double rn = l2_norm(r);
        if (rn < tol) {
            out.converged = true;
            break;
        }
        Field z = precondition(r, shift);
        double slope = std::real(inner(r, z));  // > 0
        bool accepted = false;
        if (rn > 1e-5) {
            // Armijo phase on I
            for (int bt = 0; bt < 40 && !accepted; ++bt) {
                Field trial = project_core(psi - tau * z);
                double I_trial = energy_I_op(lin, trial, nu);
                if (I_trial <= I_cur - 1e-4 * tau * slope ||
                    I_trial <= I_cur + 1e-13 * (1.0 + std::abs(I_cur))) {
                    psi = trial;
                    I_cur = I_trial;
                    accepted = true;
                } else {
                    tau *= 0.5;
                }
            }
            if (accepted) tau = std::min(tau * 1.3, 10.0);
        } else {
            // residual-contraction phase
            for (int bt = 0; bt < 40 && !accepted; ++bt) {
                Field trial = project_core(psi - tau * z);
                Field gt = lin(trial) - nu * trial;
                Field wt = nonlinear_term(trial);
                double mt = std::real(inner(gt, wt)) / std::real(inner(wt, wt));
                double rt = l2_norm(gt - mt * wt);
                if (rt < rn) {
                    psi = trial;
                    accepted = true;
                } else {
                    tau *= 0.5;
                }
            }
            if (accepted) tau = std::min(tau * 1.2, 10.0);
        }
        if (!accepted) break;  // stalled at the roundoff floor
        rn_prev = rn;
    }
    (void)rn_prev;
    out.psi = psi;
    out.mu = mu_hat;
    out.delta = energy_I_op(lin, psi, nu);
    out.iterations = iter;
    return out;
}

EigenstateSolution finish(const LinOp& lin, const CoreResult& core, double nu,
                          NonlinearitySign sign) {
    if (sign == NonlinearitySign::defocusing && core.mu >= 0.0)
        throw WrongBranch("defocusing minimizer must carry mu < 0");
    if (sign == NonlinearitySign::focusing && core.mu <= 0.0)
        throw WrongBranch("focusing minimizer must carry mu > 0");
    EigenstateSolution sol;
    sol.nu = nu;
    sol.mu = core.mu;
    sol.delta = core.delta;
    sol.iterations = core.iterations;
    sol.converged = core.converged;
    double d = core.psi.grid.d;
    sol.psi = core.psi * std::pow(std::abs(core.mu), d / 4.0);
    Field w = nonlinear_term(sol.psi);
    double s = (sign == NonlinearitySign::defocusing) ? 1.0 : -1.0;
    Field res = lin(sol.psi) + s * w - nu * sol.psi;
    sol.residual = l2_norm(res);
    return sol;
}

}  // namespace

double energy_I(const Field& psi, double nu) {
    if (!psi.finite()) throw InvalidField("energy_I: non-finite input");
    return energy_I_op([](const Field& f) { return apply_H(f); }, psi, nu);
}

Field project_to_M(const Field& psi) { return project_core(psi); }

EigenstateSolution minimize(const MinimizationProblem& problem, const Field& init, double tol,
                            int max_iter) {
    problem.validate();
    if (init.grid != problem.grid) throw GridMismatch("minimize: init on wrong grid");
    LinOp lin = [](const Field& f) { return apply_H(f); };
    CoreResult core = minimize_core(lin, problem.nu, init, tol, max_iter);
    // a non-converged core still yields the best iterate, flagged via sol.converged
    return finish(lin, core, problem.nu, problem.sign);
}

Field solve_Q(const Grid& grid) {
    // -(1/2) Lap Q + Q = Q^{1+4/d}: the focusing branch with the potential
    // removed and nu = -1.
    LinOp lin = [](const Field& f) { return half_laplacian(f); };
    Field init(grid);
    const int N = grid.N;
    for (std::size_t i = 0; i < init.size(); ++i) {
        double x2;
        if (grid.d == 1) {
            double x = grid.x(static_cast<int>(i));
            x2 = x * x;
        } else {
            double a = grid.x(static_cast<int>(i / N));
            double b = grid.x(static_cast<int>(i % N));
            x2 = a * a + b * b;
        }
        init[i] = std::exp(-0.5 * x2);
    }
    CoreResult core = minimize_core(lin, -1.0, init, 1e-10, 200000);
    EigenstateSolution sol = finish(lin, core, -1.0, NonlinearitySign::focusing);
    if (!sol.converged) throw NonConvergence("solve_Q failed to converge");
    // the minimizer from a positive start is positive up to roundoff
    Field Q = sol.psi;
    for (auto& v : Q.values) v = Complex(std::abs(v), 0.0);
    return Q;
}

double gn_check(const Field& f, double Q_l2) {
    double l2 = l2_norm(f);
    if (l2 == 0.0) throw DegenerateInput("gn_check: zero input");
    double d = f.grid.d;
    double p = 2.0 + 4.0 / d;
    double lhs = std::pow(lp_norm(f, p), p);
    double grad = grad_l2_norm(f);
    double rhs = (d + 2.0) / (2.0 * d * std::pow(Q_l2, 4.0 / d)) * std::pow(l2, 4.0 / d) * grad *
                 grad;
    return rhs / lhs;
}

}  // namespace nlscat
