#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <qtomo/entangle.hpp>

using namespace qtomo;

namespace {

QuditDensity random_density(int d, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = cplx(nd(rng), nd(rng));
    QuditDensity rho;
    rho.entries = A * A.adjoint();
    rho.entries /= rho.entries.trace().real();
    return rho;
}

QuditDensity kron_density(const QuditDensity& a, const QuditDensity& b) {
    QuditDensity out;
    out.entries = Eigen::kroneckerProduct(a.entries, b.entries).eval();
    return out;
}

EulerUnitary random_u(std::mt19937& rng) {
    std::uniform_real_distribution<double> ang(-pi, pi);
    return su2_matrix(ang(rng), ang(rng), ang(rng));
}

QuditDensity up_up() {
    QuditDensity rho;
    rho.entries = Eigen::Matrix4cd::Zero();
    rho.entries(0, 0) = 1.0;
    return rho;
}

} // namespace

TEST_CASE("two qubit tomogram") {
    // spin-up pair: product of the single qubit cosine laws
    auto rho = up_up();
    std::mt19937 rng(20240821);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int k = 0; k < 20; ++k) {
        const double t1 = ang(rng), t2 = ang(rng);
        auto u1 = su2_matrix(t1, ang(rng), ang(rng));
        auto u2 = su2_matrix(t2, ang(rng), ang(rng));
        auto T = two_qubit_tomogram(rho, u1, u2);
        const double c1 = std::cos(0.5 * t1) * std::cos(0.5 * t1);
        const double c2 = std::cos(0.5 * t2) * std::cos(0.5 * t2);
        Eigen::Vector4d expect(c1 * c2, c1 * (1.0 - c2), (1.0 - c1) * c2,
                               (1.0 - c1) * (1.0 - c2));
        CHECK((T - expect).cwiseAbs().maxCoeff() < 1e-12);
    }

    // x x state: uniform 4x4 density factorizes into the two x tomograms
    QuditDensity xx;
    xx.entries = Eigen::Matrix4cd::Constant(0.25);
    QuditDensity xq;
    xq.entries = Eigen::Matrix2cd::Constant(0.5);
    for (int k = 0; k < 20; ++k) {
        auto u1 = random_u(rng), u2 = random_u(rng);
        CHECK((two_qubit_tomogram(xx, u1, u2) - product_tomogram(xq, xq, u1, u2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }

    // z x z measurement of the triplet
    auto id = su2_matrix(0.0, 0.0, 0.0);
    CHECK((two_qubit_tomogram(triplet_density(), id, id) - Eigen::Vector4d(0.0, 0.5, 0.5, 0.0))
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    // direct conjugation agrees with the bistochastic route |(U1 x U2) U0|^2 rho~
    for (int k = 0; k < 30; ++k) {
        auto r = random_density(4, rng);
        auto u1 = random_u(rng), u2 = random_u(rng);
        auto T = two_qubit_tomogram(r, u1, u2);
        auto eig = eigen_decompose(r.entries);
        Eigen::Matrix4cd U = Eigen::kroneckerProduct(u1.matrix, u2.matrix);
        Eigen::Vector4d route = orthostochastic(U * eig.vectors) * eig.eigenvalues;
        CHECK((T - route).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(T.minCoeff() >= -1e-12);
        CHECK(std::abs(T.sum() - 1.0) < 1e-12);
    }

    CHECK_THROWS_AS(two_qubit_tomogram(random_density(2, rng), id, id), std::invalid_argument);
}

TEST_CASE("product and separable tomograms") {
    std::mt19937 rng(20240822);
    for (int k = 0; k < 50; ++k) {
        auto r1 = random_density(2, rng), r2 = random_density(2, rng);
        auto u1 = random_u(rng), u2 = random_u(rng);
        CHECK((product_tomogram(r1, r2, u1, u2) -
               two_qubit_tomogram(kron_density(r1, r2), u1, u2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }

    QuditDensity mixed;
    mixed.entries = 0.5 * Eigen::Matrix2cd::Identity();
    for (int k = 0; k < 10; ++k) {
        auto T = product_tomogram(mixed, mixed, random_u(rng), random_u(rng));
        CHECK((T - Eigen::Vector4d::Constant(0.25)).cwiseAbs().maxCoeff() < 1e-14);
    }

    // convex mixture of up-up and x-x reproduces the two-term tomogram
    QuditDensity up, xq;
    up.entries = Eigen::Matrix2cd::Zero();
    up.entries(0, 0) = 1.0;
    xq.entries = Eigen::Matrix2cd::Constant(0.5);
    const double delta = 0.7;
    const double l1 = std::cos(delta) * std::cos(delta), l2 = 1.0 - l1;
    QuditDensity blend;
    blend.entries = l1 * kron_density(up, up).entries + l2 * kron_density(xq, xq).entries;
    for (int k = 0; k < 20; ++k) {
        auto u1 = random_u(rng), u2 = random_u(rng);
        std::vector<SeparableComponent> parts{{l1, up, up}, {l2, xq, xq}};
        auto T = convex_separable_tomogram(parts, u1, u2);
        CHECK((T - two_qubit_tomogram(blend, u1, u2)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((T - l1 * product_tomogram(up, up, u1, u2) - l2 * product_tomogram(xq, xq, u1, u2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
        CHECK(T.minCoeff() >= -1e-14);
        CHECK(std::abs(T.sum() - 1.0) < 1e-12);
    }

    auto u = su2_matrix(0.3, 0.0, 1.1);
    std::vector<SeparableComponent> one{{1.0, up, xq}};
    CHECK((convex_separable_tomogram(one, u, u) - product_tomogram(up, xq, u, u))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    std::vector<SeparableComponent> bad{{0.5, up, xq}};
    CHECK_THROWS_AS(convex_separable_tomogram(bad, u, u), std::invalid_argument);
    std::vector<SeparableComponent> neg{{-0.5, up, xq}, {1.5, up, up}};
    CHECK_THROWS_AS(convex_separable_tomogram(neg, u, u), std::invalid_argument);
}

TEST_CASE("triplet tomogram closed form") {
    std::mt19937 rng(20240823);
    std::uniform_real_distribution<double> ang(-pi, pi);
    auto rho = triplet_density();
    for (int k = 0; k < 50; ++k) {
        const double t1 = ang(rng), p1 = ang(rng), t2 = ang(rng), p2 = ang(rng);
        auto closed = entangled_triplet_tomogram(t1, p1, t2, p2);
        auto direct =
            two_qubit_tomogram(rho, su2_matrix(t1, ang(rng), p1), su2_matrix(t2, ang(rng), p2));
        CHECK((closed - direct).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(closed(0) - closed(3)) < 1e-15);
        CHECK(std::abs(closed(1) - closed(2)) < 1e-15);
    }
    CHECK((entangled_triplet_tomogram(0.0, 0.0, 0.0, 0.0) - Eigen::Vector4d(0.0, 0.5, 0.5, 0.0))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("x correlator") {
    CHECK(std::abs(x_correlator(0.0, 0.3, 0.0, -1.2)) < 1e-15);
    CHECK(std::abs(x_correlator(0.5 * pi, 0.7, 0.5 * pi, 0.7) - 0.5) < 1e-15);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int k = 0; k < 30; ++k) {
        const double ta = ang(rng), pa = ang(rng), tb = ang(rng), pb = ang(rng);
        CHECK(std::abs(x_correlator(ta, pa, tb, pb) -
                       entangled_triplet_tomogram(ta, pa, tb, pb)(0)) < 1e-14);
    }
}

TEST_CASE("Bell matrix and trace bound") {
    auto I0 = bell_matrix_I0();
    CHECK(std::abs(I0.trace() + 2.0) < 1e-15);
    CHECK((I0.cwiseAbs() - Eigen::Matrix4d::Ones()).cwiseAbs().maxCoeff() < 1e-15);

    auto [vid, okid] = trace_bound_check(Eigen::Matrix4d::Identity());
    CHECK(std::abs(vid + 2.0) < 1e-15);
    CHECK(okid);

    // the optimal stochastic matrix with entries (2 +- sqrt2)/8
    const double hi = (2.0 + std::sqrt(2.0)) / 8.0;
    const double lo = (2.0 - std::sqrt(2.0)) / 8.0;
    Eigen::Matrix4d opt;
    for (int j = 0; j < 4; ++j) {
        const double x = j < 3 ? hi : lo;
        opt.col(j) << x, 0.5 - x, 0.5 - x, x;
    }
    auto [vopt, okopt] = trace_bound_check(opt);
    CHECK(std::abs(std::abs(vopt) - 2.0 * std::sqrt(2.0)) < 1e-12);
    CHECK_FALSE(okopt);

    // the matrix with Bell number 4
    Eigen::Matrix4d four;
    four.col(0) << 1.0, 0.0, 0.0, 0.0;
    four.col(1) << 1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0;
    four.col(2) << 0.5, 0.0, 0.0, 0.5;
    four.col(3) << 0.0, 0.25, 0.75, 0.0;
    auto [v4, ok4] = trace_bound_check(four);
    CHECK(std::abs(v4 - 4.0) < 1e-12);
    CHECK_FALSE(ok4);

    Eigen::Matrix4d bad = Eigen::Matrix4d::Constant(0.3);
    CHECK_THROWS_AS(trace_bound_check(bad), std::invalid_argument);
}

TEST_CASE("Bell number") {
    auto rho = triplet_density();
    CHECK(std::abs(bell_number(rho, BellAngles{}) + 2.0) < 1e-12);

    // trace form equals the x-correlator form on the triplet
    std::mt19937 rng(20240824);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int k = 0; k < 30; ++k) {
        BellAngles g{ang(rng), ang(rng), ang(rng), ang(rng),
                     ang(rng), ang(rng), ang(rng), ang(rng)};
        const double xs = x_correlator(g.theta_a, g.phi_a, g.theta_b, g.phi_b) +
                          x_correlator(g.theta_a, g.phi_a, g.theta_c, g.phi_c) +
                          x_correlator(g.theta_d, g.phi_d, g.theta_b, g.phi_b) -
                          x_correlator(g.theta_d, g.phi_d, g.theta_c, g.phi_c);
        CHECK(std::abs(bell_number(rho, g) - (4.0 * xs - 2.0)) < 1e-10);
    }

    // CHSH-optimal equatorial angles
    BellAngles opt;
    opt.theta_a = 0.0;
    opt.theta_d = 0.5 * pi;
    opt.theta_b = 1.75 * pi;
    opt.theta_c = 0.25 * pi;
    CHECK(std::abs(std::abs(bell_number(rho, opt)) - 2.0 * std::sqrt(2.0)) < 1e-6);

    // product states never leave the classical band
    for (int k = 0; k < 500; ++k) {
        auto r = kron_density(random_density(2, rng), random_density(2, rng));
        BellAngles g{ang(rng), ang(rng), ang(rng), ang(rng),
                     ang(rng), ang(rng), ang(rng), ang(rng)};
        CHECK(std::abs(bell_number(r, g)) <= 2.0 + 1e-9);
    }

    // convex separable mixtures stay within the band too
    std::uniform_int_distribution<int> nparts(1, 4);
    std::uniform_real_distribution<double> pos(0.1, 1.0);
    for (int k = 0; k < 200; ++k) {
        const int np = nparts(rng);
        std::vector<double> w(np);
        double tot = 0.0;
        for (auto& x : w) tot += (x = pos(rng));
        QuditDensity mix;
        mix.entries = Eigen::Matrix4cd::Zero();
        for (int j = 0; j < np; ++j)
            mix.entries += (w[j] / tot) *
                           kron_density(random_density(2, rng), random_density(2, rng)).entries;
        BellAngles g{ang(rng), ang(rng), ang(rng), ang(rng),
                     ang(rng), ang(rng), ang(rng), ang(rng)};
        CHECK(std::abs(bell_number(mix, g)) <= 2.0 + 1e-9);
    }
}

TEST_CASE("stochastic matrix from tomograms") {
    auto rho = triplet_density();
    auto M0 = stochastic_from_tomograms(rho, BellAngles{});
    for (int j = 0; j < 4; ++j)
        CHECK((M0.col(j) - Eigen::Vector4d(0.0, 0.5, 0.5, 0.0)).cwiseAbs().maxCoeff() < 1e-14);

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ang(-pi, pi);
    BellAngles g{ang(rng), ang(rng), ang(rng), ang(rng), ang(rng), ang(rng), ang(rng), ang(rng)};
    auto M = stochastic_from_tomograms(rho, g);
    CHECK(std::abs(M.colwise().sum().maxCoeff() - 1.0) < 1e-12);
    CHECK(std::abs(M.colwise().sum().minCoeff() - 1.0) < 1e-12);
    CHECK(M.minCoeff() >= -1e-12);

    // product state: M is the Kronecker product of the one-qubit matrices
    auto Mp = stochastic_from_tomograms(up_up(), g);
    QuditDensity up;
    up.entries = Eigen::Matrix2cd::Zero();
    up.entries(0, 0) = 1.0;
    Eigen::Matrix2d M1, M2;
    M1.col(0) = qubit_tomogram(up, su2_matrix(g.theta_a, 0.0, g.phi_a)).probs;
    M1.col(1) = qubit_tomogram(up, su2_matrix(g.theta_d, 0.0, g.phi_d)).probs;
    M2.col(0) = qubit_tomogram(up, su2_matrix(g.theta_b, 0.0, g.phi_b)).probs;
    M2.col(1) = qubit_tomogram(up, su2_matrix(g.theta_c, 0.0, g.phi_c)).probs;
    Eigen::Matrix4d kronM = Eigen::kroneckerProduct(M1, M2);
    CHECK((Mp - kronM).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Bell maximization") {
    auto best = maximize_bell(triplet_density());
    CHECK(std::abs(best.value - 2.0 * std::sqrt(2.0)) < 1e-3);
    auto M = stochastic_from_tomograms(triplet_density(), best.angles);
    CHECK(std::abs(std::abs((M * bell_matrix_I0()).trace()) - 2.0 * std::sqrt(2.0)) < 1e-6);

    auto prod = maximize_bell(up_up());
    CHECK(std::abs(prod.value - 2.0) < 1e-3);

    QuditDensity mixed;
    mixed.entries = 0.25 * Eigen::Matrix4cd::Identity();
    auto flat = maximize_bell(mixed);
    CHECK(std::abs(flat.value) < 1e-9);
}

TEST_CASE("hypercube extrema") {
    auto ex = hypercube_extrema();
    CHECK(ex.max == 2.0);
    CHECK(ex.min == -2.0);
    CHECK_FALSE(ex.argmax.empty());
    CHECK_FALSE(ex.argmin.empty());
    auto f = [](const std::array<double, 4>& v) {
        return v[0] * (v[2] + v[3]) + v[1] * (v[2] - v[3]);
    };
    for (const auto& v : ex.argmax) CHECK(f(v) == 2.0);
    for (const auto& v : ex.argmin) CHECK(f(v) == -2.0);
    CHECK(f({0.0, 0.0, 0.0, 0.0}) == 0.0);
}
