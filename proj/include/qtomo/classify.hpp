#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "tomography.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// Quantum / classical domain tests
// ---------------------------------------------------------------------------

struct DomainVerdict {
    bool quantum = false;
    bool classical = false;
    double min_operator_eigenvalue = 0.0;
    double min_phase_density = 0.0;
    double tol_q = 5e-3;
    double tol_c = 5e-3;
};

// classical iff the Radon anti-transform (filtered back-projection) is a
// nonnegative phase-space density; the 1/(2 pi) converts the Wigner-style
// back-projection into a probability density
inline std::pair<bool, double> classical_test(const OpticalTomogram& opt, double tol_c = 5e-3,
                                              const UniformGrid& q_grid = UniformGrid{-7.0, 7.0,
                                                                                      281}) {
    if (opt.theta_grid.count < 90)
        throw std::invalid_argument("classical_test: need at least 90 angles of coverage");
    auto W = reconstruct_wigner(opt, q_grid, q_grid);
    const double min_density = W.values.minCoeff() / (2.0 * pi);
    return {min_density >= -tol_c, min_density};
}

// quantum iff the reconstructed density matrix is positive semidefinite;
// eigenvalues are taken in the grid inner product, i.e. of D^{1/2} rho D^{1/2}
// with D the quadrature weights (equivalent to the Sylvester minor criterion)
inline std::pair<bool, double> quantum_test(const TomogramEvaluator& tomo, double tol_q = 5e-3,
                                            const UniformGrid& q_grid = UniformGrid{-6.0, 6.0,
                                                                                    121}) {
    auto rho = reconstruct_density(tomo, q_grid);
    const std::size_t N = q_grid.count;
    const double h = q_grid.spacing();
    Eigen::VectorXd sqw(N);
    for (std::size_t i = 0; i < N; ++i) sqw(i) = std::sqrt(trapezoid_weight(i, N, h));
    Eigen::MatrixXcd B = sqw.asDiagonal() * rho.entries * sqw.asDiagonal();
    B = 0.5 * (B + B.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    return {min_eig >= -tol_q, min_eig};
}

inline DomainVerdict classify(const TomogramEvaluator& tomo, double tol_q = 5e-3,
                              double tol_c = 5e-3) {
    DomainVerdict v;
    v.tol_q = tol_q;
    v.tol_c = tol_c;
    std::tie(v.quantum, v.min_operator_eigenvalue) = quantum_test(tomo, tol_q);
    // sample the optical section for the back-projection route
    OpticalTomogram opt;
    opt.X_grid = UniformGrid{-10.0, 10.0, 401};
    opt.theta_grid = UniformGrid{0.0, pi * 179.0 / 180.0, 180};
    opt.values.resize(opt.theta_grid.count, opt.X_grid.count);
    for (std::size_t t = 0; t < opt.theta_grid.count; ++t) {
        const double th = opt.theta_grid.point(t);
        for (std::size_t k = 0; k < opt.X_grid.count; ++k)
            opt.values(t, k) = tomo(opt.X_grid.point(k), std::cos(th), std::sin(th));
    }
    std::tie(v.classical, v.min_phase_density) = classical_test(opt, tol_c);
    return v;
}

inline DomainVerdict classify(const SymplecticTomogram& tomo, double tol_q = 5e-3,
                              double tol_c = 5e-3) {
    check_reconstruction_coverage(tomo);
    return classify(evaluator_from_data(tomo), tol_q, tol_c);
}

// ---------------------------------------------------------------------------
// Tomographic moments and uncertainty relations
// ---------------------------------------------------------------------------

struct Moments {
    double mean = 0.0;
    double second = 0.0;   // uncentered
    double variance = 0.0; // centered
};

// dense symmetric grid (includes X = 0 as a node, so kinks of the closed-form
// rows sit on nodes and the trapezoid rule keeps its full order)
inline const UniformGrid moment_X_grid{-40.0, 40.0, 160001};

inline Moments moments(const UniformGrid& X_grid, const Eigen::VectorXd& row) {
    X_grid.validate();
    if (std::size_t(row.size()) != X_grid.count)
        throw std::invalid_argument("moments: row length does not match the grid");
    const double h = X_grid.spacing();
    double mass = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < X_grid.count; ++k) {
        const double w = trapezoid_weight(k, X_grid.count, h);
        const double X = X_grid.point(k);
        mass += w * row(k);
        m1 += w * X * row(k);
        m2 += w * X * X * row(k);
    }
    if (std::abs(mass - 1.0) > 1e-4)
        throw std::invalid_argument("moments: row is not normalized");
    return {m1, m2, m2 - m1 * m1};
}

inline Moments moments(const TomogramEvaluator& tomo, double mu, double nu,
                       const UniformGrid& X_grid = moment_X_grid) {
    Eigen::VectorXd row(X_grid.count);
    for (std::size_t k = 0; k < X_grid.count; ++k) row(k) = tomo(X_grid.point(k), mu, nu);
    return moments(X_grid, row);
}

// sigma_QP from three angle rows through
// Var(mu Q + nu P) = mu^2 s_QQ + nu^2 s_PP + 2 mu nu s_QP at theta0 + pi/4
inline double covariance_qp(const TomogramEvaluator& tomo, double theta0 = 0.0,
                            const UniformGrid& X_grid = moment_X_grid) {
    const double c0 = std::cos(theta0), s0 = std::sin(theta0);
    const double c1 = std::cos(theta0 + 0.25 * pi), s1 = std::sin(theta0 + 0.25 * pi);
    const double c2 = std::cos(theta0 + 0.5 * pi), s2 = std::sin(theta0 + 0.5 * pi);
    const double vq = moments(tomo, c0, s0, X_grid).variance;
    const double vd = moments(tomo, c1, s1, X_grid).variance;
    const double vp = moments(tomo, c2, s2, X_grid).variance;
    return vd - 0.5 * (vq + vp);
}

struct MomentReport {
    Moments q;    // (mu, nu) = (1, 0)
    Moments diag; // (1/sqrt2, 1/sqrt2)
    Moments p;    // (0, 1)
    double sigma_qq = 0.0;
    double sigma_pp = 0.0;
    double sigma_qp = 0.0;
    double robertson_lhs = 0.0;      // s_QQ s_PP - s_QP^2
    double heisenberg_product = 0.0; // s_QQ s_PP
};

inline MomentReport moment_report(const TomogramEvaluator& tomo,
                                  const UniformGrid& X_grid = moment_X_grid) {
    MomentReport r;
    const double rt = 1.0 / std::sqrt(2.0);
    r.q = moments(tomo, 1.0, 0.0, X_grid);
    r.diag = moments(tomo, rt, rt, X_grid);
    r.p = moments(tomo, 0.0, 1.0, X_grid);
    r.sigma_qq = r.q.variance;
    r.sigma_pp = r.p.variance;
    r.sigma_qp = r.diag.variance - 0.5 * (r.sigma_qq + r.sigma_pp);
    r.heisenberg_product = r.sigma_qq * r.sigma_pp;
    r.robertson_lhs = r.heisenberg_product - r.sigma_qp * r.sigma_qp;
    return r;
}

struct RobertsonCheck {
    double lhs = 0.0;
    double rhs = 0.25;
    bool satisfied = false;
};

inline RobertsonCheck robertson_check(const TomogramEvaluator& tomo,
                                      const UniformGrid& X_grid = moment_X_grid) {
    auto r = moment_report(tomo, X_grid);
    RobertsonCheck c;
    c.lhs = r.robertson_lhs;
    // slack admits the equality case up to quadrature rounding
    c.satisfied = c.lhs >= c.rhs - 1e-8;
    return c;
}

// Phi(theta) = Var_theta Var_{theta + pi/2} - 1/4, one sample per stored angle;
// the perpendicular row is reached through the optical section (with the
// theta + pi mirror when it wraps out of the stored range)
inline Eigen::VectorXd uncertainty_function(const OpticalTomogram& opt) {
    const UniformGrid& Xg = opt.X_grid;
    const std::size_t K = Xg.count;
    const double h = Xg.spacing();
    auto variance_of = [&](const Eigen::VectorXd& row) {
        double mass = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double w = trapezoid_weight(k, K, h);
            const double X = Xg.point(k);
            mass += w * row(k);
            m1 += w * X * row(k);
            m2 += w * X * X * row(k);
        }
        if (mass <= 0.0) throw std::invalid_argument("uncertainty_function: empty row");
        m1 /= mass;
        m2 /= mass;
        return m2 - m1 * m1;
    };
    Eigen::VectorXd phi(opt.theta_grid.count);
    Eigen::VectorXd perp(K);
    for (std::size_t t = 0; t < opt.theta_grid.count; ++t) {
        const double th = opt.theta_grid.point(t) + 0.5 * pi;
        for (std::size_t k = 0; k < K; ++k)
            perp(k) = optical_evaluate(opt, Xg.point(k), std::cos(th), std::sin(th));
        const double vt = variance_of(opt.values.row(t).transpose());
        phi(t) = vt * variance_of(perp) - 0.25;
    }
    return phi;
}

} // namespace qtomo
