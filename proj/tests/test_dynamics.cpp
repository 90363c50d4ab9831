#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <qtomo/classify.hpp>
#include <qtomo/dynamics.hpp>

using namespace qtomo;

namespace {

// coherent-state tomogram, Gaussian with mean mu*q0 + nu*p0, variance (mu^2+nu^2)/2
TomogramEvaluator coherent_closed_form(double q0, double p0) {
    return [q0, p0](double X, double mu, double nu) {
        const double var = 0.5 * (mu * mu + nu * nu);
        const double d = X - mu * q0 - nu * p0;
        return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * pi * var);
    };
}

WignerFunction sampled_wigner(const std::function<double(double, double)>& f,
                              const UniformGrid& g) {
    WignerFunction w;
    w.q_grid = w.p_grid = g;
    w.values.resize(g.count, g.count);
    for (std::size_t i = 0; i < g.count; ++i)
        for (std::size_t j = 0; j < g.count; ++j) w.values(i, j) = f(g.point(i), g.point(j));
    return w;
}

} // namespace

TEST_CASE("tomogram evolution closed forms") {
    auto base = coherent_closed_form(std::sqrt(2.0), 0.0);
    auto ho = harmonic_oscillator();

    // full period is the identity
    auto full = evolve_tomogram(base, ho, 2.0 * pi);
    std::mt19937 rng(20240825);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 30; ++k) {
        const double X = 3.0 * u(rng), mu = u(rng), nu = u(rng);
        if (std::hypot(mu, nu) < 0.1) continue;
        CHECK(std::abs(full(X, mu, nu) - base(X, mu, nu)) < 1e-12);
    }

    // quarter period swaps the position and momentum means
    const UniformGrid Xg{-20.0, 20.0, 8001};
    auto quarter = evolve_tomogram(base, ho, 0.5 * pi);
    CHECK(std::abs(moments(base, 1.0, 0.0, Xg).mean - std::sqrt(2.0)) < 1e-9);
    CHECK(std::abs(moments(quarter, 1.0, 0.0, Xg).mean) < 1e-9);
    CHECK(std::abs(moments(quarter, 0.0, 1.0, Xg).mean + std::sqrt(2.0)) < 1e-9);

    // free spreading of the ground state
    auto ground = coherent_closed_form(0.0, 0.0);
    auto spread = evolve_tomogram(ground, free_particle(), 1.0);
    CHECK(std::abs(moments(spread, 1.0, 0.0, Xg).variance - 1.0) < 1e-9);

    // harmonic eigenstate tomograms are stationary
    for (int n : {0, 1, 3}) {
        TomogramEvaluator level = [n](double X, double mu, double nu) {
            return ho_level_tomogram(n, mu, nu, X);
        };
        for (double t : {0.3, 1.0, 2.0, pi}) {
            auto lt = evolve_tomogram(level, ho, t);
            for (int k = 0; k < 10; ++k) {
                const double X = 3.0 * u(rng), mu = u(rng), nu = u(rng);
                if (std::hypot(mu, nu) < 0.1) continue;
                CHECK(std::abs(lt(X, mu, nu) - level(X, mu, nu)) < 1e-8);
            }
        }
    }

    // evolution only reparameterizes (mu, nu): positivity and X-normalization hold
    auto t1 = evolve_tomogram(base, ho, 1.0);
    const UniformGrid norm_grid{-15.0, 15.0, 3001};
    for (auto [mu, nu] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.3, 0.8}, {-1.2, 0.5}}) {
        double mass = 0.0, lowest = 0.0;
        for (std::size_t i = 0; i < norm_grid.count; ++i) {
            const double v = t1(norm_grid.point(i), mu, nu);
            lowest = std::min(lowest, v);
            mass += trapezoid_weight(i, norm_grid.count, norm_grid.spacing()) * v;
        }
        CHECK(lowest >= 0.0);
        CHECK(std::abs(mass - 1.0) < 1e-6);
    }
}

TEST_CASE("tomographic evolution equation residual") {
    // (d_t - mu d_nu) T = -nu d_mu T for the oscillator; free case drops the RHS
    auto base = coherent_closed_form(std::sqrt(2.0), 0.0);
    std::mt19937 rng(20240826);
    std::uniform_real_distribution<double> u(0.3, 1.5);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    const double eps = 1e-4;
    for (auto h : {harmonic_oscillator(), free_particle()}) {
        for (int k = 0; k < 20; ++k) {
            const double X = ux(rng), mu = u(rng), nu = u(rng), t = u(rng);
            auto Tm = evolve_tomogram(base, h, t - eps);
            auto Tp = evolve_tomogram(base, h, t + eps);
            auto T = evolve_tomogram(base, h, t);
            const double dt = (Tp(X, mu, nu) - Tm(X, mu, nu)) / (2.0 * eps);
            const double dmu = (T(X, mu + eps, nu) - T(X, mu - eps, nu)) / (2.0 * eps);
            const double dnu = (T(X, mu, nu + eps) - T(X, mu, nu - eps)) / (2.0 * eps);
            const double rhs =
                h.kind == QuadraticHamiltonian::Kind::harmonic ? mu * dnu - nu * dmu : mu * dnu;
            CHECK(std::abs(dt - rhs) < 1e-4);
        }
    }
}

TEST_CASE("Wigner evolution") {
    auto ho = harmonic_oscillator();
    const UniformGrid g{-8.0, 8.0, 257};
    auto w2 = sampled_wigner([](double q, double p) { return fock_wigner(2, q, p); }, g);

    // quarter, half and full periods map the symmetric grid onto itself
    for (double t : {0.5 * pi, pi, 2.0 * pi}) {
        auto wt = evolve_wigner(w2, ho, t);
        CHECK((wt.values - w2.values).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_FALSE(wt.warning);
    }
    // generic times go through bilinear interpolation of the rotated grid;
    // the O(h^2) interpolation error dominates, so use a finer grid here
    const UniformGrid gf{-8.0, 8.0, 1025};
    auto w2f = sampled_wigner([](double q, double p) { return fock_wigner(2, q, p); }, gf);
    auto w1 = evolve_wigner(w2f, ho, 1.0);
    CHECK((w1.values - w2f.values).cwiseAbs().maxCoeff() < 2e-3);

    // the exact-flow sampler keeps rotational invariance to rounding at any t
    auto inv = evolve_classical([](double q, double p) { return fock_wigner(2, q, p); }, ho, 0.7331);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        const double q = u(rng), p = u(rng);
        CHECK(std::abs(inv(q, p) - fock_wigner(2, q, p)) < 1e-12);
    }

    // coherent peak rotates to (-sqrt2, 0) after half a period
    const double q0 = std::sqrt(2.0);
    auto wc = sampled_wigner(
        [q0](double q, double p) { return 2.0 * std::exp(-(q - q0) * (q - q0) - p * p); }, g);
    auto wpi = evolve_wigner(wc, ho, pi);
    Eigen::Index bi, bj;
    wpi.values.maxCoeff(&bi, &bj);
    CHECK(std::abs(g.point(bi) + q0) <= g.spacing());
    CHECK(std::abs(g.point(bj)) <= g.spacing());

    // boundary mass triggers the warning
    auto shifted = sampled_wigner(
        [](double q, double p) { return 2.0 * std::exp(-(q - 7.9) * (q - 7.9) - p * p); }, g);
    CHECK(evolve_wigner(shifted, ho, 0.4).warning);
}

TEST_CASE("evolution commuting diagram") {
    const UniformGrid wg{-9.0, 9.0, 513};
    const UniformGrid Xg{-6.0, 6.0, 241};
    const double q0 = std::sqrt(2.0);
    auto wc = sampled_wigner(
        [q0](double q, double p) { return 2.0 * std::exp(-(q - q0) * (q - q0) - p * p); }, wg);
    auto base = coherent_closed_form(q0, 0.0);
    const std::vector<std::pair<double, double>> rays{{1.0, 0.0}, {0.0, 1.0}, {0.6, 0.8}, {1.0, 1.0}};

    for (auto h : {harmonic_oscillator(), free_particle()}) {
        for (double t : {0.25 * pi, 1.0, pi}) {
            if (h.kind == QuadraticHamiltonian::Kind::free && t > 1.5) continue;
            auto wt = evolve_wigner(wc, h, t);
            auto Tt = evolve_tomogram(base, h, t);
            for (auto [mu, nu] : rays) {
                auto radon = tomogram_from_wigner(wt, mu, nu, Xg);
                double worst = 0.0;
                for (std::size_t i = 0; i < Xg.count; ++i)
                    worst = std::max(worst, std::abs(radon.value(i) - Tt(Xg.point(i), mu, nu)));
                CHECK(worst < 1e-3);
            }
        }
    }
}

TEST_CASE("classical Liouville flow") {
    PhaseSampler f0 = [](double q, double p) { return std::exp(-q * q - p * p) / pi; };
    auto ho = harmonic_oscillator();

    auto cycle = evolve_classical(f0, ho, 2.0 * pi);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 30; ++k) {
        const double q = u(rng), p = u(rng);
        CHECK(std::abs(cycle(q, p) - f0(q, p)) < 1e-12);
    }

    // free shear: <q^2>(t) = 1/2 + t^2/2
    auto sheared = evolve_classical(f0, free_particle(), 1.0);
    const UniformGrid g{-10.0, 10.0, 401};
    double mass = 0.0, q2 = 0.0;
    for (std::size_t i = 0; i < g.count; ++i) {
        const double wq = trapezoid_weight(i, g.count, g.spacing());
        for (std::size_t j = 0; j < g.count; ++j) {
            const double w = wq * trapezoid_weight(j, g.count, g.spacing());
            const double v = sheared(g.point(i), g.point(j));
            mass += w * v;
            q2 += w * v * g.point(i) * g.point(i);
        }
    }
    CHECK(std::abs(mass - 1.0) < 1e-6);
    CHECK(std::abs(q2 - 1.0) < 1e-6);

    CHECK_THROWS_AS(harmonic_oscillator(-1.0), std::invalid_argument);
}

TEST_CASE("stationary Moyal residual") {
    CHECK(stationary_moyal_residual(0, 0.5) < 1e-3);
    CHECK(stationary_moyal_residual(1, 1.5) < 1e-3);
    CHECK(stationary_moyal_residual(2, 2.5) < 1e-3);
    CHECK(stationary_moyal_residual(0, 1.0) > 0.5);
    CHECK_THROWS_AS(stationary_moyal_residual(11, 11.5), std::invalid_argument);
}
