#pragma once

#include <tuple>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "spin.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// Two-qubit tomogram vectors
// ---------------------------------------------------------------------------

// diagonal of (U1 x U2) rho (U1 x U2)^dagger, ordered (++, +-, -+, --)
inline Eigen::Vector4d two_qubit_tomogram(const QuditDensity& rho, const EulerUnitary& u1,
                                          const EulerUnitary& u2) {
    if (rho.entries.rows() != 4 || rho.entries.cols() != 4)
        throw std::invalid_argument("two_qubit_tomogram: need a 4x4 density");
    Eigen::Matrix4cd U = Eigen::kroneckerProduct(u1.matrix, u2.matrix);
    return (U * rho.entries * U.adjoint()).diagonal().real();
}

inline Eigen::Vector4d product_tomogram(const QuditDensity& rho1, const QuditDensity& rho2,
                                        const EulerUnitary& u1, const EulerUnitary& u2) {
    const Eigen::Vector2d p = qubit_tomogram(rho1, u1).probs;
    const Eigen::Vector2d q = qubit_tomogram(rho2, u2).probs;
    return Eigen::kroneckerProduct(p, q);
}

using SeparableComponent = std::tuple<double, QuditDensity, QuditDensity>;

inline Eigen::Vector4d convex_separable_tomogram(const std::vector<SeparableComponent>& parts,
                                                 const EulerUnitary& u1, const EulerUnitary& u2) {
    double total = 0.0;
    for (const auto& [w, r1, r2] : parts) {
        if (w < 0.0) throw std::invalid_argument("convex_separable_tomogram: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("convex_separable_tomogram: weights must sum to 1");
    Eigen::Vector4d out = Eigen::Vector4d::Zero();
    for (const auto& [w, r1, r2] : parts) out += w * product_tomogram(r1, r2, u1, u2);
    return out;
}

// (|+-> + |-+>)/sqrt(2) Bell triplet density
inline QuditDensity triplet_density() {
    QuditDensity rho;
    rho.entries = Eigen::Matrix4cd::Zero();
    rho.entries(1, 1) = rho.entries(1, 2) = rho.entries(2, 1) = rho.entries(2, 2) = 0.5;
    return rho;
}

// closed form of the triplet tomogram; psi angles drop out
inline Eigen::Vector4d entangled_triplet_tomogram(double theta1, double phi1, double theta2,
                                                  double phi2) {
    const double c1 = std::cos(0.5 * theta1), s1 = std::sin(0.5 * theta1);
    const double c2 = std::cos(0.5 * theta2), s2 = std::sin(0.5 * theta2);
    const double cross = 2.0 * c1 * s1 * c2 * s2 * std::cos(phi1 - phi2);
    const double same = 0.5 * (c1 * c1 * s2 * s2 + s1 * s1 * c2 * c2 + cross);
    const double diff = 0.5 * (c1 * c1 * c2 * c2 + s1 * s1 * s2 * s2 - cross);
    return Eigen::Vector4d(same, diff, diff, same);
}

// ---------------------------------------------------------------------------
// Bell functional
// ---------------------------------------------------------------------------

// (+1/2,+1/2) component of the triplet tomogram at directions a, b
inline double x_correlator(double theta_a, double phi_a, double theta_b, double phi_b) {
    return 0.25 * (1.0 - std::cos(theta_a) * std::cos(theta_b) +
                   std::sin(theta_a) * std::sin(theta_b) * std::cos(phi_a - phi_b));
}

inline Eigen::Matrix4d bell_matrix_I0() {
    Eigen::Matrix4d I0;
    I0 << 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1;
    return I0;
}

struct BellAngles {
    double theta_a = 0.0, phi_a = 0.0;
    double theta_b = 0.0, phi_b = 0.0;
    double theta_c = 0.0, phi_c = 0.0;
    double theta_d = 0.0, phi_d = 0.0;
};

// columns are the tomogram vectors at the pairs (a,b), (a,c), (d,b), (d,c)
inline Eigen::Matrix4d stochastic_from_tomograms(const QuditDensity& rho, const BellAngles& g) {
    const auto ua = su2_matrix(g.theta_a, 0.0, g.phi_a);
    const auto ub = su2_matrix(g.theta_b, 0.0, g.phi_b);
    const auto uc = su2_matrix(g.theta_c, 0.0, g.phi_c);
    const auto ud = su2_matrix(g.theta_d, 0.0, g.phi_d);
    Eigen::Matrix4d M;
    M.col(0) = two_qubit_tomogram(rho, ua, ub);
    M.col(1) = two_qubit_tomogram(rho, ua, uc);
    M.col(2) = two_qubit_tomogram(rho, ud, ub);
    M.col(3) = two_qubit_tomogram(rho, ud, uc);
    return M;
}

inline std::pair<double, bool> trace_bound_check(const Eigen::Matrix4d& M) {
    if (M.minCoeff() < -1e-9)
        throw std::invalid_argument("trace_bound_check: negative entry");
    for (int j = 0; j < 4; ++j)
        if (std::abs(M.col(j).sum() - 1.0) > 1e-9)
            throw std::invalid_argument("trace_bound_check: column sums must be 1");
    const double value = (M * bell_matrix_I0()).trace();
    return {value, std::abs(value) <= 2.0 + 1e-12};
}

inline double bell_number(const QuditDensity& rho, const BellAngles& g) {
    return (stochastic_from_tomograms(rho, g) * bell_matrix_I0()).trace();
}

struct BellMaximum {
    double value = 0.0;
    BellAngles angles;
};

// coarse theta grid with phis at 0, then coordinate descent on all angles
// except phi_a (a global phase of the phi differences)
inline BellMaximum maximize_bell(const QuditDensity& rho) {
    const int n = 12;
    const double step0 = 2.0 * pi / n;
    BellMaximum best;
    best.value = -1.0;
    for (int ia = 0; ia < n; ++ia)
        for (int ib = 0; ib < n; ++ib)
            for (int ic = 0; ic < n; ++ic)
                for (int id = 0; id < n; ++id) {
                    BellAngles g;
                    g.theta_a = step0 * ia;
                    g.theta_b = step0 * ib;
                    g.theta_c = step0 * ic;
                    g.theta_d = step0 * id;
                    const double v = std::abs(bell_number(rho, g));
                    if (v > best.value) {
                        best.value = v;
                        best.angles = g;
                    }
                }
    double* coords[7] = {&best.angles.theta_a, &best.angles.theta_b, &best.angles.theta_c,
                         &best.angles.theta_d, &best.angles.phi_b,   &best.angles.phi_c,
                         &best.angles.phi_d};
    for (double step = step0; step > 1e-6; step *= 0.5) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (double* c : coords) {
                for (double sign : {1.0, -1.0}) {
                    *c += sign * step;
                    const double v = std::abs(bell_number(rho, best.angles));
                    if (v > best.value + 1e-14) {
                        best.value = v;
                        moved = true;
                    } else {
                        *c -= sign * step;
                    }
                }
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Hypercube extremum proposition
// ---------------------------------------------------------------------------

struct HypercubeExtrema {
    double max = 0.0, min = 0.0;
    std::vector<std::array<double, 4>> argmax, argmin;
};

// f(p,q,s,t) = p(s+t) + q(s-t) is multilinear, so its extrema over the cube
// [-1,1]^4 sit on the 16 vertices
inline HypercubeExtrema hypercube_extrema() {
    HypercubeExtrema out;
    out.max = -1e300;
    out.min = 1e300;
    for (int mask = 0; mask < 16; ++mask) {
        std::array<double, 4> v;
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        const double f = v[0] * (v[2] + v[3]) + v[1] * (v[2] - v[3]);
        if (f > out.max + 1e-12) {
            out.max = f;
            out.argmax.clear();
        }
        if (f >= out.max - 1e-12) out.argmax.push_back(v);
        if (f < out.min - 1e-12) {
            out.min = f;
            out.argmin.clear();
        }
        if (f >= out.min - 1e-12 && f <= out.min + 1e-12) out.argmin.push_back(v);
    }
    return out;
}

} // namespace qtomo
