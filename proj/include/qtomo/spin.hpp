#pragma once

#include <array>
#include <functional>
#include <stdexcept>

#include "states.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// SU(2) Euler unitaries and qubit tomograms
// ---------------------------------------------------------------------------

struct EulerUnitary {
    double theta = 0.0;
    double psi = 0.0;
    double phi = 0.0;
    Eigen::Matrix2cd matrix;
};

inline EulerUnitary su2_matrix(double theta, double psi, double phi) {
    EulerUnitary u;
    u.theta = theta;
    u.psi = psi;
    u.phi = phi;
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    u.matrix << c * std::polar(1.0, 0.5 * (psi + phi)), s * std::polar(1.0, 0.5 * (psi - phi)),
        -s * std::polar(1.0, -0.5 * (psi - phi)), c * std::polar(1.0, -0.5 * (psi + phi));
    return u;
}

struct SpinTomogramPoint {
    double theta = 0.0;
    double phi = 0.0;
    Eigen::Vector2d probs; // m = +1/2, -1/2
};

// diagonal of the rotated density matrix, Eq. for the spin tomogram
inline SpinTomogramPoint qubit_tomogram(const QuditDensity& rho, const EulerUnitary& u) {
    if (rho.entries.rows() != 2) throw std::invalid_argument("qubit_tomogram: need a 2x2 density");
    Eigen::Matrix2cd rot = u.matrix * rho.entries * u.matrix.adjoint();
    SpinTomogramPoint pt;
    pt.theta = u.theta;
    pt.phi = u.phi;
    pt.probs << rot(0, 0).real(), rot(1, 1).real();
    return pt;
}

// ---------------------------------------------------------------------------
// Projector / dual pair and sphere reconstruction
// ---------------------------------------------------------------------------

inline Eigen::Matrix2cd projector_P(double theta, double phi) {
    Eigen::Matrix2cd P;
    const double c = std::cos(theta), s = std::sin(theta);
    P << 0.5 * (1.0 + c), 0.5 * s * std::polar(1.0, -phi), 0.5 * s * std::polar(1.0, phi),
        0.5 * (1.0 - c);
    return P;
}

inline Eigen::Matrix2cd dual_G(double theta, double phi) {
    Eigen::Matrix2cd G;
    const double c = std::cos(theta), s = std::sin(theta);
    const double n = 1.0 / (4.0 * pi);
    G << n * (1.0 + 3.0 * c), 3.0 * n * s * std::polar(1.0, -phi),
        3.0 * n * s * std::polar(1.0, phi), n * (1.0 - 3.0 * c);
    return G;
}

// sampler returns T(+1/2) = Tr(P(theta, phi) rho)
using SphereSampler = std::function<double(double theta, double phi)>;

// rho = Int G(theta, phi) Tr(P rho) sin(theta) dtheta dphi, by Gauss-Legendre
// in cos(theta) and a uniform phi grid; exact for the degree-1 integrands here
inline QuditDensity reconstruct_qubit(const SphereSampler& sampler, int n_theta = 32,
                                      int n_phi = 64) {
    std::vector<double> nodes, weights;
    gauss_legendre(n_theta, nodes, weights);
    const double wphi = 2.0 * pi / n_phi;
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::acos(nodes[i]);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = wphi * j;
            acc += weights[i] * wphi * sampler(theta, phi) * dual_G(theta, phi);
        }
    }
    QuditDensity rho;
    rho.entries = 0.5 * (acc + acc.adjoint().eval());
    return rho;
}

// ---------------------------------------------------------------------------
// Bistochastic form on the simplex
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd orthostochastic(const Eigen::MatrixXcd& U) {
    if (U.rows() != U.cols() ||
        (U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() >
            1e-10)
        throw std::invalid_argument("orthostochastic: input is not unitary");
    return U.cwiseAbs2();
}

// T = M(U U0) rho~, with (rho~, U0) the gauge-fixed eigen decomposition
inline Eigen::Vector2d bistochastic_tomogram(const QuditDensity& rho, const EulerUnitary& u) {
    if (rho.entries.rows() != 2)
        throw std::invalid_argument("bistochastic_tomogram: need a 2x2 density");
    auto eig = eigen_decompose(rho.entries);
    Eigen::MatrixXd M = orthostochastic(u.matrix * eig.vectors);
    return M * Eigen::Vector2d(eig.eigenvalues(0), eig.eigenvalues(1));
}

// ---------------------------------------------------------------------------
// Spin uncertainty matrix and Sylvester minors
// ---------------------------------------------------------------------------

struct SpinUncertainty {
    Eigen::Matrix3cd S;
    std::array<double, 3> first_minors{};  // diagonal entries
    std::array<double, 3> second_minors{}; // principal 2x2 blocks (12), (23), (31)
    double det = 0.0;
};

// S = cov(J_h, J_k) + (i/2) eps_{hkl} <J_l>, J_k = sigma_k / 2; the input is
// any Hermitian matrix, not necessarily a state: S is the diagnostic
inline SpinUncertainty spin_uncertainty_matrix(const Eigen::Matrix2cd& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("spin_uncertainty_matrix: input not Hermitian");
    std::array<Eigen::Matrix2cd, 3> J;
    J[0] << 0.0, 0.5, 0.5, 0.0;
    J[1] << 0.0, cplx(0.0, -0.5), cplx(0.0, 0.5), 0.0;
    J[2] << 0.5, 0.0, 0.0, -0.5;
    std::array<double, 3> mean{};
    for (int k = 0; k < 3; ++k) mean[k] = (rho * J[k]).trace().real();
    SpinUncertainty out;
    for (int h = 0; h < 3; ++h)
        for (int k = 0; k < 3; ++k) {
            const double sym = 0.5 * (rho * (J[h] * J[k] + J[k] * J[h])).trace().real();
            out.S(h, k) = sym - mean[h] * mean[k];
        }
    out.S(0, 1) += cplx(0.0, 0.5) * mean[2];
    out.S(1, 0) -= cplx(0.0, 0.5) * mean[2];
    out.S(1, 2) += cplx(0.0, 0.5) * mean[0];
    out.S(2, 1) -= cplx(0.0, 0.5) * mean[0];
    out.S(2, 0) += cplx(0.0, 0.5) * mean[1];
    out.S(0, 2) -= cplx(0.0, 0.5) * mean[1];
    for (int k = 0; k < 3; ++k) out.first_minors[k] = out.S(k, k).real();
    for (int k = 0; k < 3; ++k) {
        const int a = k, b = (k + 1) % 3;
        out.second_minors[k] = (out.S(a, a) * out.S(b, b) - out.S(a, b) * out.S(b, a)).real();
    }
    out.det = out.S.determinant().real();
    return out;
}

} // namespace qtomo
