#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qtomo/phase_space.hpp"

using namespace qtomo;

namespace {

UniformGrid qg{-8.0, 8.0, 401};
UniformGrid pg{-6.0, 6.0, 121};

WignerFunction field_from(const UniformGrid& a, const UniformGrid& b,
                          double (*f)(double, double)) {
    WignerFunction w;
    w.q_grid = a;
    w.p_grid = b;
    w.values.resize(a.count, b.count);
    for (std::size_t i = 0; i < a.count; ++i)
        for (std::size_t j = 0; j < b.count; ++j) w.values(i, j) = f(a.point(i), b.point(j));
    return w;
}

} // namespace

TEST_CASE("ground state Wigner function is a Gaussian") {
    auto w = wigner_from_wavefunction(make_fock(0, qg), pg);
    double worst = 0.0;
    for (std::size_t i = 0; i < qg.count; i += 7)
        for (std::size_t j = 0; j < pg.count; j += 3) {
            const double q = qg.point(i), p = pg.point(j);
            worst = std::max(worst, std::abs(w.values(i, j) - 2.0 * std::exp(-q * q - p * p)));
        }
    CHECK(worst < 1e-6);
    CHECK(std::abs(wigner_norm(w) - 1.0) < 1e-6);
    CHECK(std::abs(w.at(0.0, 0.0) - 2.0) < 1e-6);
}

TEST_CASE("Fock Wigner functions match the Laguerre closed form") {
    for (int n : {1, 3}) {
        auto w = wigner_from_wavefunction(make_fock(n, qg), pg);
        double worst = 0.0;
        for (std::size_t i = 0; i < qg.count; i += 11)
            for (std::size_t j = 0; j < pg.count; j += 5)
                worst = std::max(worst, std::abs(w.values(i, j) -
                                                 fock_wigner(n, qg.point(i), pg.point(j))));
        CHECK(worst < 1e-6);
        CHECK(std::abs(wigner_norm(w) - 1.0) < 1e-6);
    }
    // n = 1 is negative at the origin
    CHECK(fock_wigner(1, 0.0, 0.0) == -2.0);
}

TEST_CASE("displacement operator is unitary and generates coherent states") {
    const int dim = 64;
    const double q0 = 1.2, p0 = -0.7;
    auto D = displacement_operator(q0, p0, dim);
    CHECK_FALSE(D.warning);
    const Eigen::MatrixXcd dev =
        (D.value.adjoint() * D.value - Eigen::MatrixXcd::Identity(dim, dim)).topLeftCorner(32, 32);
    CHECK(dev.cwiseAbs().maxCoeff() < 1e-10);

    // D|0> is the coherent state alpha = (q0 + i p0)/sqrt(2)
    const cplx alpha = cplx(q0, p0) / std::sqrt(2.0);
    const Eigen::VectorXcd col = D.value.col(0);
    double fact = 1.0;
    for (int n = 0; n < 12; ++n) {
        if (n > 0) fact *= n;
        const cplx expect = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
        CHECK(std::abs(col(n) - expect) < 1e-10);
    }
    CHECK_THROWS_AS(displacement_operator(1.0, 0.0, 8), std::invalid_argument);
    CHECK(displacement_operator(9.0, 9.0, 16).warning);
}

TEST_CASE("parity operator squares to the identity") {
    const auto P = parity_operator(32);
    CHECK((P * P - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("displaced-parity route agrees with the closed form and the grid route") {
    for (int n : {0, 2}) {
        FockDensityMatrix rho;
        rho.dim = 64;
        rho.entries = Eigen::MatrixXcd::Zero(64, 64);
        rho.entries(n, n) = 1.0;
        for (auto [q, p] : {std::pair{0.0, 0.0}, {1.0, 0.5}, {-1.3, 1.1}})
            CHECK(std::abs(wigner_via_parity_point(rho, q, p) - fock_wigner(n, q, p)) < 1e-8);
    }
    // cross-check against the grid construction for a superposition state
    auto psi = superpose_wavefunctions(make_fock(0, qg), make_fock(1, qg), 0.5, 0.5, 0.4);
    auto rho_f = fock_density_from_wavefunction(psi, 64);
    auto w = wigner_from_wavefunction(psi, pg);
    for (auto [q, p] : {std::pair{0.0, 0.0}, {0.8, -0.3}, {-1.0, 1.0}})
        CHECK(std::abs(wigner_via_parity_point(rho_f, q, p) - w.at(q, p)) < 1e-5);
}

TEST_CASE("generalized Wigner function obeys the scaling identity") {
    FockDensityMatrix rho;
    rho.dim = 64;
    rho.entries = Eigen::MatrixXcd::Zero(64, 64);
    rho.entries(1, 1) = 1.0;
    for (auto [q, p] : {std::pair{0.4, 0.2}, {1.0, -0.5}}) {
        CHECK(std::abs(generalized_wigner(rho, 1.0, q, p) - fock_wigner(1, q, p)) < 1e-8);
        CHECK(std::abs(generalized_wigner(rho, 2.0, q, p) -
                       fock_wigner(1, std::sqrt(2.0) * q, std::sqrt(2.0) * p)) < 1e-8);
    }
    CHECK_THROWS_AS(generalized_wigner(rho, 0.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("Moyal star product is exact on polynomial symbols") {
    UniformGrid g{-2.0, 2.0, 33};
    auto Q = field_from(g, g, [](double q, double) { return q; });
    auto P = field_from(g, g, [](double, double p) { return p; });

    auto QQ = moyal_star(Q, Q, 4);
    auto QP = moyal_star(Q, P, 4);
    auto PQ = moyal_star(P, Q, 4);
    for (std::size_t i = 0; i < g.count; i += 4)
        for (std::size_t j = 0; j < g.count; j += 4) {
            const double q = g.point(i), p = g.point(j);
            CHECK(std::abs(QQ.real(i, j) - q * q) < 1e-10);
            CHECK(std::abs(QQ.imag(i, j)) < 1e-10);
            CHECK(std::abs(QP.real(i, j) - q * p) < 1e-10);
            CHECK(std::abs(QP.imag(i, j) - 0.5) < 1e-10);
            // canonical commutator [Q, P] = i
            CHECK(std::abs((QP.imag(i, j) - PQ.imag(i, j)) - 1.0) < 1e-10);
            CHECK(std::abs(QP.real(i, j) - PQ.real(i, j)) < 1e-10);
        }
}

TEST_CASE("Moyal star of Gaussians matches the closed form") {
    // exp(-a r^2) * exp(-b r^2) = 1/(1+ab) exp(-(a+b) r^2 / (1+ab))
    UniformGrid g{-6.0, 6.0, 121};
    auto A = field_from(g, g, [](double q, double p) { return std::exp(-0.25 * (q * q + p * p)); });
    auto B = field_from(g, g, [](double q, double p) { return std::exp(-0.5 * (q * q + p * p)); });
    auto S = moyal_star(A, B, 12);
    const double ab = 0.125, apb = 0.75;
    for (std::size_t i = 20; i + 20 < g.count; i += 10)
        for (std::size_t j = 20; j + 20 < g.count; j += 10) {
            const double r2 = g.point(i) * g.point(i) + g.point(j) * g.point(j);
            const double expect = std::exp(-apb * r2 / (1.0 + ab)) / (1.0 + ab);
            CHECK(std::abs(S.real(i, j) - expect) < 1e-5);
            CHECK(std::abs(S.imag(i, j)) < 1e-5);
        }
}

TEST_CASE("identity symbol is the star-product unit") {
    UniformGrid g{-6.0, 6.0, 121};
    auto one = field_from(g, g, [](double, double) { return 1.0; });
    auto A = field_from(g, g, [](double q, double p) { return std::exp(-0.3 * (q * q + p * p)); });
    auto S = moyal_star(one, A, 8);
    CHECK((S.real - A.values).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(S.imag.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("Moyal star is associative on Gaussian symbols") {
    // random widths inside the convergence region of the truncated series
    UniformGrid g{-12.0, 12.0, 240};
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> wd(0.16, 0.3);
    for (int trial = 0; trial < 3; ++trial) {
        const double wa = wd(rng), wb = wd(rng), wc = wd(rng);
        Eigen::MatrixXcd A(g.count, g.count), B(g.count, g.count), C(g.count, g.count);
        for (std::size_t i = 0; i < g.count; ++i)
            for (std::size_t j = 0; j < g.count; ++j) {
                const double r2 = g.point(i) * g.point(i) + g.point(j) * g.point(j);
                A(i, j) = std::exp(-wa * r2);
                B(i, j) = std::exp(-wb * r2);
                C(i, j) = std::exp(-wc * r2);
            }
        auto left = moyal_star(moyal_star(A, B, g, g, 12), C, g, g, 12);
        auto right = moyal_star(A, moyal_star(B, C, g, g, 12), g, g, 12);
        double worst = 0.0;
        for (std::size_t i = 90; i + 90 < g.count; i += 6)
            for (std::size_t j = 90; j + 90 < g.count; j += 6)
                worst = std::max(worst, std::abs(left(i, j) - right(i, j)));
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("Moyal star agrees with the integral kernel oracle at sample points") {
    UniformGrid g{-6.0, 6.0, 97};
    auto A = field_from(g, g, [](double q, double p) { return std::exp(-0.25 * (q * q + p * p)); });
    auto B = field_from(g, g,
                        [](double q, double p) { return std::exp(-0.5 * ((q - 0.5) * (q - 0.5) + p * p)); });
    auto S = moyal_star(A, B, 12);
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{48, 48}, {54, 44}}) {
        const cplx oracle = gronewold_star_point(A, B, g.point(i), g.point(j));
        CHECK(std::abs(S.real(i, j) - oracle.real()) < 5e-3);
        CHECK(std::abs(S.imag(i, j) - oracle.imag()) < 5e-3);
    }
}

TEST_CASE("phase-space trace pairing reproduces Hilbert-space traces") {
    auto w0 = wigner_from_wavefunction(make_fock(0, qg), pg);
    auto w1 = wigner_from_wavefunction(make_fock(1, qg), pg);
    CHECK(std::abs(trace_pairing(w0, w0) - 1.0) < 1e-6); // purity of a pure state
    CHECK(std::abs(trace_pairing(w0, w1)) < 1e-6);       // orthogonal states
    // overlap with a coherent state: |<alpha|0>|^2 = e^{-|alpha|^2}
    auto wc = wigner_from_wavefunction(make_coherent(cplx(0.7, 0.3), qg), pg);
    CHECK(std::abs(trace_pairing(w0, wc) - std::exp(-0.58)) < 1e-6);
}
