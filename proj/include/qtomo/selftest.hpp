#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "classify.hpp"
#include "dynamics.hpp"
#include "entangle.hpp"
#include "io.hpp"
#include "spin.hpp"

namespace qtomo {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace selftest_detail {

struct Collector {
    bool ok = true;
    std::ostringstream detail;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!detail.str().empty()) detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

inline TomogramEvaluator gaussian_tomogram(double q0, double p0) {
    return [q0, p0](double X, double mu, double nu) {
        const double var = 0.5 * (mu * mu + nu * nu);
        const double d = X - mu * q0 - nu * p0;
        return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * pi * var);
    };
}

// uniform density on the interval I(0, mu+nu); midpoint convention at the jumps
inline double uniform_row(double X, double c) {
    if (std::abs(c) < 1e-12) return 0.0;
    const double lo = std::min(0.0, c), hi = std::max(0.0, c);
    if (std::abs(X - lo) < 1e-9 || std::abs(X - hi) < 1e-9) return 0.5 / std::abs(c);
    return (X > lo && X < hi) ? 1.0 / std::abs(c) : 0.0;
}

inline TomogramEvaluator example2_tomogram() {
    return [](double X, double mu, double nu) { return uniform_row(X, mu + nu); };
}

inline TomogramEvaluator example3_tomogram() {
    return [](double X, double mu, double nu) {
        const double b = std::abs(mu + nu);
        return b < 1e-12 ? 0.0 : std::exp(-std::abs(X) / b) / (2.0 * b);
    };
}

inline OpticalTomogram optical_from_evaluator(const TomogramEvaluator& f, std::size_t n_theta,
                                              const UniformGrid& X_grid) {
    OpticalTomogram opt;
    opt.X_grid = X_grid;
    opt.theta_grid = {0.0, pi * double(n_theta - 1) / double(n_theta), n_theta};
    opt.values.resize(n_theta, X_grid.count);
    for (std::size_t r = 0; r < n_theta; ++r) {
        const double t = opt.theta_grid.point(r);
        for (std::size_t c = 0; c < X_grid.count; ++c)
            opt.values(r, c) = f(X_grid.point(c), std::cos(t), std::sin(t));
    }
    return opt;
}

inline QuditDensity random_qubit_state(std::mt19937& rng) {
    std::normal_distribution<double> nd;
    Eigen::Matrix2cd A;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) A(i, j) = cplx(nd(rng), nd(rng));
    QuditDensity rho;
    rho.entries = A * A.adjoint();
    rho.entries /= rho.entries.trace().real();
    return rho;
}

// 1. Pauli counterexample: identical marginals, fidelity 1/sqrt2
inline CriterionResult pauli_counterexample() {
    Collector c;
    const UniformGrid g{-10.0, 10.0, 1024};
    auto plus = make_squeezed_gaussian(cplx(1.0, 1.0), 0.0, g);
    auto minus = make_squeezed_gaussian(cplx(1.0, -1.0), 0.0, g);
    auto [pos1, mom1] = marginals(plus);
    auto [pos2, mom2] = marginals(minus);
    double dpos = 0.0, dmom = 0.0;
    for (std::size_t i = 0; i < g.count; ++i) {
        dpos = std::max(dpos, std::abs(pos1.values[i] - pos2.values[i]));
        dmom = std::max(dmom, std::abs(mom1.values[i] - mom2.values[i]));
    }
    c.expect(dpos <= 1e-8, "position marginals differ");
    c.expect(dmom <= 1e-8, "momentum marginals differ");
    const cplx al(1.0, 1.0);
    const double closed = (2.0 * al.real()) / (2.0 * std::abs(al)); // = 1/sqrt2
    c.expect(std::abs(fidelity(plus, minus) - closed) <= 1e-6, "fidelity is not 1/sqrt2");
    return {1, "Pauli counterexample marginals + fidelity", c.ok, c.detail.str()};
}

// 2. closed-form vs numeric tomograms
inline CriterionResult closed_vs_numeric() {
    Collector c;
    const UniformGrid g{-10.0, 10.0, 1024};
    const UniformGrid Xg{-8.0, 8.0, 321};
    std::vector<std::pair<double, double>> params;
    for (int k = 0; k < 12; ++k) {
        const double t = pi * k / 12.0 + 0.13;
        const double r = (k % 2) ? 0.7 : 1.3;
        params.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    for (int n = 0; n <= 5; ++n) {
        auto tomo = tomogram_from_wavefunction(make_fock(n, g), params, Xg);
        double worst = 0.0;
        for (std::size_t r = 0; r < params.size(); ++r)
            for (std::size_t k = 0; k < Xg.count; ++k)
                worst = std::max(worst, std::abs(tomo.values(r, k) -
                                                 ho_level_tomogram(n, params[r].first,
                                                                   params[r].second, Xg.point(k))));
        c.expect(worst <= 1e-6, "level " + std::to_string(n) + " mismatch");
    }
    return {2, "closed-form vs numeric tomograms", c.ok, c.detail.str()};
}

// 3. normalization and homogeneity
inline CriterionResult normalization_homogeneity() {
    Collector c;
    const UniformGrid g{-10.0, 10.0, 1024};
    const UniformGrid Xg{-12.0, 12.0, 481};
    auto tomo = tomogram_from_wavefunction(make_coherent(cplx(0.7, -0.4), g),
                                           {{1.0, 0.0}, {0.6, 0.8}, {0.0, 1.0}, {1.2, -0.9}}, Xg);
    for (Eigen::Index r = 0; r < tomo.values.rows(); ++r) {
        double mass = 0.0;
        for (std::size_t k = 0; k < Xg.count; ++k)
            mass += trapezoid_weight(k, Xg.count, Xg.spacing()) * tomo.values(r, k);
        c.expect(std::abs(mass - 1.0) <= 1e-6, "row " + std::to_string(r) + " not normalized");
    }
    for (double lam : {-2.0, 0.5, 3.0}) {
        double worst = 0.0;
        for (int n = 0; n <= 2; ++n)
            for (auto [X, mu, nu] :
                 {std::array{0.4, 1.0, 0.2}, {-1.1, 0.5, -0.8}, {2.0, -0.3, 1.4}})
                worst = std::max(worst,
                                 std::abs(ho_level_tomogram(n, lam * mu, lam * nu, lam * X) -
                                          ho_level_tomogram(n, mu, nu, X) / std::abs(lam)));
        c.expect(worst <= 1e-8, "homogeneity fails at lambda = " + std::to_string(lam));
    }
    return {3, "normalization and homogeneity", c.ok, c.detail.str()};
}

// 4. reconstruction round trips
inline CriterionResult reconstruction_round_trips() {
    Collector c;
    const UniformGrid g{-10.0, 10.0, 1024};
    const UniformGrid theta{0.0, pi * 179.0 / 180.0, 180};
    const UniformGrid Xw{-8.0, 8.0, 513};
    const UniformGrid wq{-4.0, 4.0, 81};
    auto w2 = reconstruct_wigner(optical_tomogram_from_wavefunction(make_fock(2, g), theta, Xw),
                                 wq, wq);
    double worst = 0.0;
    for (std::size_t i = 0; i < wq.count; ++i)
        for (std::size_t j = 0; j < wq.count; ++j)
            worst = std::max(worst,
                             std::abs(w2.values(i, j) - fock_wigner(2, wq.point(i), wq.point(j))));
    c.expect(worst <= 1e-2, "psi2 Wigner reconstruction error too large");
    auto w1 = reconstruct_wigner(optical_tomogram_from_wavefunction(make_fock(1, g), theta, Xw),
                                 wq, wq);
    c.expect(std::abs(w1.values(40, 40) + 2.0) <= 1e-2, "psi1 W(0,0) is not -2");

    const UniformGrid rq{-5.0, 5.0, 101};
    const UniformGrid rX{-60.0, 60.0, 2401};
    auto eval = evaluator_from_wavefunction(make_fock(2, UniformGrid{-10.0, 10.0, 512}), rX);
    auto rho = reconstruct_density(eval, rq, rX, recon_mu_grid, recon_mu_grid.max);
    c.expect(trace_distance_grid(rho, density_from_wavefunction(make_fock(2, rq))) <= 1e-3,
             "density round trip trace distance too large");
    return {4, "reconstruction round trips", c.ok, c.detail.str()};
}

// 5. dual Wigner routes and the gamma scaling identity
inline CriterionResult dual_wigner_routes() {
    Collector c;
    const UniformGrid g{-8.0, 8.0, 401};
    const UniformGrid pg{-6.0, 6.0, 121};
    const std::vector<std::pair<double, double>> pts{
        {0.0, 0.0}, {1.0, 0.5}, {-1.32, 1.1}, {0.8, -0.3}, {-2.0, 0.7}};
    for (int n = 0; n <= 4; ++n) {
        FockDensityMatrix rho;
        rho.dim = 64;
        rho.entries = Eigen::MatrixXcd::Zero(64, 64);
        rho.entries(n, n) = 1.0;
        auto w = wigner_from_wavefunction(make_fock(n, g), pg);
        double worst = 0.0;
        for (auto [q, p] : pts)
            worst = std::max(worst, std::abs(w.at(q, p) - wigner_via_parity_point(rho, q, p)));
        c.expect(worst <= 1e-4, "Fock " + std::to_string(n) + " route mismatch");
    }
    auto psi = make_coherent(cplx(0.8, -0.4), g);
    auto wc = wigner_from_wavefunction(psi, pg);
    auto rho_f = fock_density_from_wavefunction(psi);
    double worst = 0.0;
    for (auto [q, p] : pts)
        worst = std::max(worst, std::abs(wc.at(q, p) - wigner_via_parity_point(rho_f, q, p)));
    c.expect(worst <= 1e-4, "coherent route mismatch");

    FockDensityMatrix one;
    one.dim = 64;
    one.entries = Eigen::MatrixXcd::Zero(64, 64);
    one.entries(1, 1) = 1.0;
    double ws = 0.0;
    for (auto [q, p] : {std::pair{0.4, 0.2}, {1.0, -0.5}, {-0.7, 0.9}})
        ws = std::max(ws, std::abs(generalized_wigner(one, 2.0, q, p) -
                                   fock_wigner(1, std::sqrt(2.0) * q, std::sqrt(2.0) * p)));
    c.expect(ws <= 1e-6, "gamma scaling identity fails at lambda = 2");
    return {5, "dual Wigner routes + scaling identity", c.ok, c.detail.str()};
}

// 6. Example 1: Gaussian tomogram moments and reconstruction
inline CriterionResult example1_gaussian() {
    Collector c;
    auto base = gaussian_tomogram(0.0, 0.0);
    auto rep = moment_report(base);
    c.expect(std::abs(rep.sigma_qq - 0.5) <= 1e-6, "sigma_QQ is not 1/2");
    c.expect(std::abs(rep.sigma_pp - 0.5) <= 1e-6, "sigma_PP is not 1/2");
    c.expect(std::abs(rep.sigma_qp) <= 1e-6, "sigma_QP is not 0");
    c.expect(std::abs(rep.robertson_lhs - 0.25) <= 1e-6, "Robertson equality broken");

    const UniformGrid rq{-5.0, 5.0, 101};
    auto rho = reconstruct_density(base, rq);
    auto psi0 = make_fock(0, rq);
    cplx f = 0.0;
    for (std::size_t i = 0; i < rq.count; ++i)
        for (std::size_t j = 0; j < rq.count; ++j)
            f += trapezoid_weight(i, rq.count, rq.spacing()) *
                 trapezoid_weight(j, rq.count, rq.spacing()) * std::conj(psi0.amplitudes(i)) *
                 rho.entries(i, j) * psi0.amplitudes(j);
    c.expect(f.real() >= 1.0 - 1e-3, "ground-state fidelity below 1 - 1e-3");
    return {6, "Example 1 Gaussian moments + reconstruction", c.ok, c.detail.str()};
}

// 7. Examples 2 and 3: moment values and Robertson violations
inline CriterionResult examples23_moments() {
    Collector c;
    auto lap = example3_tomogram();
    auto m_q = moments(lap, 1.0, 0.0);
    auto m_p = moments(lap, 0.0, 1.0);
    auto repl = moment_report(lap);
    c.expect(std::abs(m_q.second - 2.0) <= 1e-6, "Laplace <Q^2> is not 2");
    c.expect(std::abs(m_p.second - 2.0) <= 1e-6, "Laplace <P^2> is not 2");
    c.expect(std::abs(repl.sigma_qp - 2.0) <= 1e-6, "Laplace sigma_QP is not 2");
    c.expect(!robertson_check(lap).satisfied, "Laplace Robertson not violated");

    auto uni = example2_tomogram();
    auto u_q = moments(uni, 1.0, 0.0);
    c.expect(std::abs(u_q.second - 1.0 / 3.0) <= 1e-6, "uniform <X^2> at (1,0) is not 1/3");
    c.expect(std::abs(u_q.mean - 0.5) <= 1e-6, "uniform mean is not 1/2");
    c.expect(!robertson_check(uni).satisfied, "uniform Robertson not violated");
    return {7, "Examples 2 and 3 moments + violations", c.ok, c.detail.str()};
}

// 8. classification verdicts
inline CriterionResult classification_verdicts() {
    Collector c;
    auto vg = classify(gaussian_tomogram(0.0, 0.0));
    c.expect(vg.quantum && vg.classical, "ground Gaussian is not Both");
    auto v1 = classify([](double X, double mu, double nu) { return ho_level_tomogram(1, mu, nu, X); });
    c.expect(v1.quantum && !v1.classical, "psi1 is not quantum-only");
    auto vl = classify([](double X, double mu, double nu) {
        return scaled_first_excited_tomogram(2.0, mu, nu, X);
    });
    c.expect(!vl.quantum && !vl.classical, "scaled lambda=2 is not Neither");
    return {8, "classification verdicts", c.ok, c.detail.str()};
}

// 9. uncertainty function Phi
inline CriterionResult uncertainty_phi() {
    Collector c;
    const UniformGrid Xg{-9.0, 9.0, 361};
    for (int n = 0; n <= 3; ++n) {
        auto opt = optical_from_evaluator(
            [n](double X, double mu, double nu) { return ho_level_tomogram(n, mu, nu, X); }, 360,
            Xg);
        c.expect(uncertainty_function(opt).minCoeff() >= -1e-6,
                 "Phi dips below 0 for Fock " + std::to_string(n));
    }
    auto coh = optical_from_evaluator(gaussian_tomogram(std::sqrt(2.0), std::sqrt(2.0)), 360, Xg);
    c.expect(uncertainty_function(coh).minCoeff() >= -1e-6, "Phi dips below 0 for coherent");

    auto phi0 = uncertainty_function(optical_from_evaluator(gaussian_tomogram(0.0, 0.0), 360, Xg));
    c.expect(phi0.cwiseAbs().maxCoeff() <= 1e-6, "ground Phi is not identically 0");
    auto phi1 = uncertainty_function(optical_from_evaluator(
        [](double X, double mu, double nu) { return ho_level_tomogram(1, mu, nu, X); }, 360, Xg));
    c.expect((phi1.array() - 2.0).abs().maxCoeff() <= 1e-4, "psi1 Phi is not identically 2");
    return {9, "uncertainty function", c.ok, c.detail.str()};
}

// 10. spin reconstruction and Example 4
inline CriterionResult spin_criteria() {
    Collector c;
    std::mt19937 rng(20240827);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        auto rho = random_qubit_state(rng);
        auto hat = reconstruct_qubit([&rho](double th, double ph) {
            return (projector_P(th, ph) * rho.entries).trace().real();
        });
        worst = std::max(worst, (hat.entries - rho.entries).cwiseAbs().maxCoeff());
    }
    c.expect(worst <= 1e-8, "qubit reconstruction error above 1e-8");

    bool sweep_ok = true;
    for (int k = 0; k <= 40; ++k) {
        const double a = k / 20.0 - 0.5, b = 1.0 - a;
        Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
        rho(0, 0) = a;
        rho(1, 1) = b;
        auto su = spin_uncertainty_matrix(rho);
        Eigen::Matrix3cd S = Eigen::Matrix3cd::Zero();
        S(0, 0) = S(1, 1) = 0.25 * (a + b);
        S(0, 1) = cplx(0.0, 0.25 * (a - b));
        S(1, 0) = -S(0, 1);
        S(2, 2) = 0.25 * ((a + b) - (a - b) * (a - b));
        if ((su.S - S).cwiseAbs().maxCoeff() > 1e-12) sweep_ok = false;
        bool nonneg = su.det >= -1e-10;
        for (double m : su.first_minors) nonneg = nonneg && m >= -1e-10;
        for (double m : su.second_minors) nonneg = nonneg && m >= -1e-10;
        if (nonneg != (a >= 0.0 && a <= 1.0)) sweep_ok = false;
    }
    c.expect(sweep_ok, "Example 4 S matrix sweep fails");
    return {10, "spin reconstruction + Example 4", c.ok, c.detail.str()};
}

// 11. two-qubit tomogram routes
inline CriterionResult two_qubit_routes() {
    Collector c;
    std::mt19937 rng(20240828);
    std::uniform_real_distribution<double> ang(-pi, pi);
    auto rand_u = [&] { return su2_matrix(ang(rng), ang(rng), ang(rng)); };

    QuditDensity up;
    up.entries = Eigen::Matrix2cd::Zero();
    up.entries(0, 0) = 1.0;
    QuditDensity upup;
    upup.entries = Eigen::Matrix4cd::Zero();
    upup.entries(0, 0) = 1.0;
    QuditDensity xq;
    xq.entries = Eigen::Matrix2cd::Constant(0.5);
    QuditDensity xx;
    xx.entries = Eigen::Matrix4cd::Constant(0.25);
    QuditDensity blend;
    const double l1 = 0.6;
    blend.entries = l1 * upup.entries + (1.0 - l1) * xx.entries;
    auto triplet = triplet_density();

    double w75 = 0.0, w85 = 0.0, w88 = 0.0, w42 = 0.0;
    for (int k = 0; k < 50; ++k) {
        auto u1 = rand_u(), u2 = rand_u();
        w75 = std::max(w75, (two_qubit_tomogram(upup, u1, u2) - product_tomogram(up, up, u1, u2))
                                .cwiseAbs()
                                .maxCoeff());
        w85 = std::max(w85, (two_qubit_tomogram(xx, u1, u2) - product_tomogram(xq, xq, u1, u2))
                                .cwiseAbs()
                                .maxCoeff());
        std::vector<SeparableComponent> parts{{l1, up, up}, {1.0 - l1, xq, xq}};
        w88 = std::max(w88, (two_qubit_tomogram(blend, u1, u2) -
                             convex_separable_tomogram(parts, u1, u2))
                                .cwiseAbs()
                                .maxCoeff());
        w42 = std::max(w42, (two_qubit_tomogram(triplet, u1, u2) -
                             entangled_triplet_tomogram(u1.theta, u1.phi, u2.theta, u2.phi))
                                .cwiseAbs()
                                .maxCoeff());
    }
    c.expect(w75 <= 1e-10, "eq75 tensor form mismatch");
    c.expect(w85 <= 1e-10, "eq85 tensor form mismatch");
    c.expect(w88 <= 1e-10, "eq88 convex form mismatch");
    c.expect(w42 <= 1e-10, "eq42 closed form mismatch");
    return {11, "two-qubit tomogram routes", c.ok, c.detail.str()};
}

// 12. Bell functional
inline CriterionResult bell_criteria() {
    Collector c;
    auto triplet = triplet_density();
    auto best = maximize_bell(triplet);
    c.expect(std::abs(best.value - 2.0 * std::sqrt(2.0)) <= 1e-3, "B_max is not 2 sqrt 2");
    auto M = stochastic_from_tomograms(triplet, best.angles);
    c.expect(std::abs(std::abs((M * bell_matrix_I0()).trace()) - 2.0 * std::sqrt(2.0)) <= 1e-6,
             "Tr(M I0) at the optimum is not 2 sqrt 2");

    std::mt19937 rng(20240829);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ang(-pi, pi);
    auto rand2 = [&] {
        Eigen::Matrix2cd A;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) A(i, j) = cplx(nd(rng), nd(rng));
        Eigen::Matrix2cd r = A * A.adjoint();
        return Eigen::Matrix2cd(r / r.trace().real());
    };
    bool band = true;
    for (int k = 0; k < 500; ++k) {
        QuditDensity rho;
        if (k % 2 == 0) {
            rho.entries = Eigen::kroneckerProduct(rand2(), rand2()).eval();
        } else {
            rho.entries = 0.5 * Eigen::kroneckerProduct(rand2(), rand2()).eval() +
                          0.5 * Eigen::kroneckerProduct(rand2(), rand2()).eval();
        }
        BellAngles g{ang(rng), ang(rng), ang(rng), ang(rng),
                     ang(rng), ang(rng), ang(rng), ang(rng)};
        if (std::abs(bell_number(rho, g)) > 2.0 + 1e-9) band = false;
    }
    c.expect(band, "a separable state exceeded the classical band");

    Eigen::Matrix4d four;
    four.col(0) << 1.0, 0.0, 0.0, 0.0;
    four.col(1) << 1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0;
    four.col(2) << 0.5, 0.0, 0.0, 0.5;
    four.col(3) << 0.0, 0.25, 0.75, 0.0;
    c.expect(std::abs((four * bell_matrix_I0()).trace() - 4.0) <= 1e-12,
             "conclusions matrix trace is not 4");

    auto ex = hypercube_extrema();
    c.expect(ex.max == 2.0 && ex.min == -2.0, "hypercube extrema are not (2, -2)");
    return {12, "Bell functional", c.ok, c.detail.str()};
}

// 13. dynamics
inline CriterionResult dynamics_criteria() {
    Collector c;
    const UniformGrid wg{-9.0, 9.0, 513};
    const UniformGrid Xg{-6.0, 6.0, 241};
    const double q0 = std::sqrt(2.0);
    WignerFunction wc;
    wc.q_grid = wc.p_grid = wg;
    wc.values.resize(wg.count, wg.count);
    for (std::size_t i = 0; i < wg.count; ++i)
        for (std::size_t j = 0; j < wg.count; ++j)
            wc.values(i, j) =
                2.0 * std::exp(-(wg.point(i) - q0) * (wg.point(i) - q0) -
                               wg.point(j) * wg.point(j));
    auto base = gaussian_tomogram(q0, 0.0);
    auto ho = harmonic_oscillator();
    for (double t : {0.25 * pi, 1.0, pi}) {
        auto wt = evolve_wigner(wc, ho, t);
        auto Tt = evolve_tomogram(base, ho, t);
        double worst = 0.0;
        for (auto [mu, nu] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.6, 0.8}}) {
            auto radon = tomogram_from_wigner(wt, mu, nu, Xg);
            for (std::size_t i = 0; i < Xg.count; ++i)
                worst = std::max(worst, std::abs(radon.value(i) - Tt(Xg.point(i), mu, nu)));
        }
        c.expect(worst <= 1e-3, "commuting diagram fails at t = " + std::to_string(t));
    }

    auto ground = gaussian_tomogram(0.0, 0.0);
    for (double t : {0.5, 1.0, 2.0}) {
        auto spread = evolve_tomogram(ground, free_particle(), t);
        c.expect(std::abs(moments(spread, 1.0, 0.0).variance - 0.5 * (1.0 + t * t)) <= 1e-4,
                 "free variance growth fails at t = " + std::to_string(t));
    }

    for (int n = 0; n <= 3; ++n)
        c.expect(stationary_moyal_residual(n, n + 0.5) <= 1e-3,
                 "Moyal residual too large for n = " + std::to_string(n));
    c.expect(stationary_moyal_residual(0, 1.0) >= 0.5, "mismatched E not detected");
    return {13, "dynamics", c.ok, c.detail.str()};
}

// 14. superposition routes
inline CriterionResult superposition_routes() {
    Collector c;
    // qubit case
    Eigen::MatrixXcd r0 = Eigen::MatrixXcd::Zero(2, 2);
    r0(0, 0) = 1.0;
    Eigen::MatrixXcd r1 = Eigen::MatrixXcd::Zero(2, 2);
    r1(1, 1) = 1.0;
    Eigen::MatrixXcd plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    auto sup = superpose_projectors(r0, r1, plus, 0.5, 0.5);
    c.expect((sup * sup - sup).cwiseAbs().maxCoeff() <= 1e-8, "qubit projector sum not idempotent");
    c.expect(trace_distance(sup, plus) <= 1e-6, "qubit projector sum disagrees with |+>");

    // psi0 / psi1 case against the wavefunction route
    const UniformGrid g{-10.0, 10.0, 1024};
    auto psi0 = make_fock(0, g);
    auto psi1 = make_fock(1, g);
    const double phase = 0.7;
    auto rho_wf = density_from_wavefunction(superpose_wavefunctions(psi0, psi1, 0.5, 0.5, phase));
    auto w = superpose_wavefunctions(psi0, psi1, 0.5, 0.5, phase);
    Eigen::MatrixXcd P0 = w.amplitudes * w.amplitudes.adjoint();
    auto weight = [&](Eigen::MatrixXcd m) {
        for (std::size_t i = 0; i < g.count; ++i)
            for (std::size_t j = 0; j < g.count; ++j)
                m(i, j) *= std::sqrt(trapezoid_weight(i, g.count, g.spacing()) *
                                     trapezoid_weight(j, g.count, g.spacing()));
        return m;
    };
    Eigen::MatrixXcd rho =
        superpose_projectors(weight(density_from_wavefunction(psi0).entries),
                             weight(density_from_wavefunction(psi1).entries), weight(P0), 0.5, 0.5);
    c.expect((rho * rho - rho).cwiseAbs().maxCoeff() <= 1e-8, "grid projector sum not idempotent");
    c.expect(trace_distance(rho, weight(rho_wf.entries)) <= 1e-6,
             "projector route disagrees with the wavefunction route");
    return {14, "superposition routes", c.ok, c.detail.str()};
}

} // namespace selftest_detail

inline std::vector<CriterionResult> run_acceptance() {
    using namespace selftest_detail;
    return {pauli_counterexample(),   closed_vs_numeric(),    normalization_homogeneity(),
            reconstruction_round_trips(), dual_wigner_routes(), example1_gaussian(),
            examples23_moments(),     classification_verdicts(), uncertainty_phi(),
            spin_criteria(),          two_qubit_routes(),     bell_criteria(),
            dynamics_criteria(),      superposition_routes()};
}

} // namespace qtomo
