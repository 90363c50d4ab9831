#pragma once

#include <Eigen/Dense>

#include "qtomo/numerics.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct WaveFunction {
    UniformGrid grid;
    Eigen::VectorXcd amplitudes;
    bool boundary_warning = false;

    void validate() const {
        grid.validate();
        if (static_cast<std::size_t>(amplitudes.size()) != grid.count)
            throw std::invalid_argument("WaveFunction: amplitude count does not match grid");
        if (!amplitudes.allFinite())
            throw std::invalid_argument("WaveFunction: non-finite amplitude");
    }
};

struct DensityMatrixGrid {
    UniformGrid grid;
    Eigen::MatrixXcd entries; // rho(q_i, q_j)

    double trace() const {
        const double h = grid.spacing();
        double t = 0.0;
        for (std::size_t i = 0; i < grid.count; ++i)
            t += trapezoid_weight(i, grid.count, h) * entries(i, i).real();
        return t;
    }
    void validate() const {
        grid.validate();
        if (entries.rows() != entries.cols() ||
            static_cast<std::size_t>(entries.rows()) != grid.count)
            throw std::invalid_argument("DensityMatrixGrid: shape does not match grid");
        if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("DensityMatrixGrid: not Hermitian");
        if (std::abs(trace() - 1.0) > 1e-6)
            throw std::invalid_argument("DensityMatrixGrid: trace != 1");
    }
};

struct FockDensityMatrix {
    int dim = 64;
    Eigen::MatrixXcd entries;

    void validate() const {
        if (entries.rows() != dim || entries.cols() != dim)
            throw std::invalid_argument("FockDensityMatrix: shape does not match dim");
        if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("FockDensityMatrix: not Hermitian");
        if (std::abs(entries.trace().real() - 1.0) > 1e-6)
            throw std::invalid_argument("FockDensityMatrix: trace != 1");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-8)
            throw std::invalid_argument("FockDensityMatrix: negative eigenvalue");
    }
};

struct QuditDensity {
    Eigen::MatrixXcd entries; // d x d, d = 2 or 4 here

    void validate() const {
        if (entries.rows() != entries.cols())
            throw std::invalid_argument("QuditDensity: not square");
        if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("QuditDensity: not Hermitian");
        if (std::abs(entries.trace().real() - 1.0) > 1e-9)
            throw std::invalid_argument("QuditDensity: trace != 1");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-12)
            throw std::invalid_argument("QuditDensity: negative eigenvalue");
    }
};

// ---------------------------------------------------------------------------
// Wave-function constructors
// ---------------------------------------------------------------------------

inline cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
    const double h = a.grid.spacing();
    cplx acc(0.0);
    for (std::size_t i = 0; i < a.grid.count; ++i)
        acc += trapezoid_weight(i, a.grid.count, h) * std::conj(a.amplitudes(i)) * b.amplitudes(i);
    return acc;
}

inline double norm_squared(const WaveFunction& psi) { return inner_product(psi, psi).real(); }

inline void renormalize(WaveFunction& psi) {
    const double n2 = norm_squared(psi);
    if (n2 < 1e-24) throw std::invalid_argument("renormalize: zero-norm wave function");
    psi.amplitudes /= std::sqrt(n2);
}

inline WaveFunction make_fock(int n, const UniformGrid& grid) {
    auto h = hermite_eigenfunction(n, grid);
    WaveFunction psi;
    psi.grid = grid;
    psi.amplitudes.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) psi.amplitudes(i) = h.value.values[i];
    psi.boundary_warning = h.warning;
    renormalize(psi);
    return psi;
}

inline WaveFunction make_coherent(cplx alpha, const UniformGrid& grid) {
    grid.validate();
    const double q0 = std::sqrt(2.0) * alpha.real();
    const double p0 = std::sqrt(2.0) * alpha.imag();
    WaveFunction psi;
    psi.grid = grid;
    psi.amplitudes.resize(grid.count);
    const double nrm = std::pow(pi, -0.25);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double q = grid.point(i);
        psi.amplitudes(i) = nrm * std::exp(-0.5 * (q - q0) * (q - q0)) *
                            std::polar(1.0, p0 * q - 0.5 * p0 * q0);
    }
    if (std::abs(alpha) > 4.0 ||
        std::max(std::abs(psi.amplitudes(0)), std::abs(psi.amplitudes(grid.count - 1))) > 1e-6)
        psi.boundary_warning = true;
    renormalize(psi);
    return psi;
}

// psi(q) = N exp(-alpha q^2 + i beta q), N = ((alpha+alpha*)/pi)^(1/4)
inline WaveFunction make_squeezed_gaussian(cplx alpha, double beta, const UniformGrid& grid) {
    grid.validate();
    if (alpha.real() <= 0.0)
        throw std::domain_error("make_squeezed_gaussian: Re(alpha) must be positive");
    WaveFunction psi;
    psi.grid = grid;
    psi.amplitudes.resize(grid.count);
    const double N = std::pow(2.0 * alpha.real() / pi, 0.25);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double q = grid.point(i);
        psi.amplitudes(i) = N * std::exp(-alpha * q * q + cplx(0.0, beta * q));
    }
    renormalize(psi);
    return psi;
}

// ---------------------------------------------------------------------------
// Fidelity, marginals, superposition
// ---------------------------------------------------------------------------

inline double fidelity(const WaveFunction& a, const WaveFunction& b) {
    return std::norm(inner_product(a, b));
}

inline ComplexSamples momentum_amplitudes(const WaveFunction& psi, const UniformGrid& p_grid) {
    // psi~(p) = (2 pi)^{-1/2} Int psi(q) e^{-ipq} dq = <p,0,1|psi>
    ComplexSamples cs{psi.grid, std::vector<cplx>(psi.grid.count)};
    for (std::size_t i = 0; i < psi.grid.count; ++i) cs.values[i] = psi.amplitudes(i);
    return chirp_overlap(cs, 0.0, 1.0, p_grid);
}

inline std::pair<RealSamples, RealSamples> marginals(const WaveFunction& psi) {
    psi.validate();
    RealSamples pos{psi.grid, std::vector<double>(psi.grid.count)};
    for (std::size_t i = 0; i < psi.grid.count; ++i) pos.values[i] = std::norm(psi.amplitudes(i));
    auto tilde = momentum_amplitudes(psi, psi.grid);
    RealSamples mom{psi.grid, std::vector<double>(psi.grid.count)};
    for (std::size_t i = 0; i < psi.grid.count; ++i) mom.values[i] = std::norm(tilde.values[i]);
    return {pos, mom};
}

inline WaveFunction superpose_wavefunctions(const WaveFunction& psi1, const WaveFunction& psi2,
                                            double p1, double p2, double phase) {
    if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-10)
        throw std::invalid_argument("superpose_wavefunctions: weights must be >=0 and sum to 1");
    if (!(psi1.grid == psi2.grid))
        throw std::invalid_argument("superpose_wavefunctions: grid mismatch");
    WaveFunction out;
    out.grid = psi1.grid;
    out.amplitudes =
        std::sqrt(p1) * psi1.amplitudes + std::polar(std::sqrt(p2), phase) * psi2.amplitudes;
    renormalize(out);
    return out;
}

// ---------------------------------------------------------------------------
// Rank-one projector superposition (operator level)
// ---------------------------------------------------------------------------

inline void require_rank_one(const Eigen::MatrixXcd& rho, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double largest = ev(ev.size() - 1);
    double second = 0.0;
    for (Eigen::Index i = 0; i + 1 < ev.size(); ++i) second = std::max(second, std::abs(ev(i)));
    if (largest <= 0.0 || second > 1e-8 * largest)
        throw std::invalid_argument(std::string(what) + ": operator is not rank-one");
}

inline Eigen::MatrixXcd superpose_projectors(const Eigen::MatrixXcd& rho1,
                                             const Eigen::MatrixXcd& rho2,
                                             const Eigen::MatrixXcd& P0, double p1, double p2) {
    if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-10)
        throw std::invalid_argument("superpose_projectors: weights must be >=0 and sum to 1");
    require_rank_one(rho1, "superpose_projectors(rho1)");
    require_rank_one(rho2, "superpose_projectors(rho2)");
    require_rank_one(P0, "superpose_projectors(P0)");
    const cplx denom2 = (rho1 * P0 * rho2 * P0).trace();
    if (std::abs(denom2) <= 1e-12)
        throw std::invalid_argument(
            "superpose_projectors: superposed states orthogonal to fiducial projector");
    const cplx denom = std::sqrt(denom2);
    Eigen::MatrixXcd rho = p1 * rho1 + p2 * rho2 +
                           std::sqrt(p1 * p2) * (rho1 * P0 * rho2 + rho2 * P0 * rho1) / denom;
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint().eval());
    return rho;
}

// ---------------------------------------------------------------------------
// Eigen decomposition with the fixed gauge
// ---------------------------------------------------------------------------

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues; // descending
    Eigen::MatrixXcd vectors;    // columns, orthonormal, gauge-fixed
};

// Gauge: eigenvalues descending; each eigenvector's first component of modulus
// above threshold made real positive; degenerate blocks tie-broken by the
// natural (lexicographic) order the solver emits.
inline EigenDecomposition eigen_decompose(const Eigen::MatrixXcd& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("eigen_decompose: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint().eval()));
    const Eigen::Index d = rho.rows();
    EigenDecomposition out;
    out.eigenvalues.resize(d);
    out.vectors.resize(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        out.eigenvalues(k) = es.eigenvalues()(d - 1 - k);
        Eigen::VectorXcd v = es.eigenvectors().col(d - 1 - k);
        for (Eigen::Index i = 0; i < d; ++i) {
            if (std::abs(v(i)) > 1e-12) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Representation conversions
// ---------------------------------------------------------------------------

inline DensityMatrixGrid density_from_wavefunction(const WaveFunction& psi) {
    psi.validate();
    DensityMatrixGrid rho;
    rho.grid = psi.grid;
    rho.entries = psi.amplitudes * psi.amplitudes.adjoint();
    return rho;
}

inline Eigen::VectorXcd fock_coefficients(const WaveFunction& psi, int dim) {
    const double h = psi.grid.spacing();
    Eigen::VectorXcd c(dim);
    for (int n = 0; n < dim; ++n) {
        cplx acc(0.0);
        for (std::size_t i = 0; i < psi.grid.count; ++i)
            acc += trapezoid_weight(i, psi.grid.count, h) *
                   hermite_eigenfunction_at(n, psi.grid.point(i)) * psi.amplitudes(i);
        c(n) = acc;
    }
    return c;
}

inline FockDensityMatrix fock_density_from_wavefunction(const WaveFunction& psi, int dim = 64) {
    Eigen::VectorXcd c = fock_coefficients(psi, dim);
    c /= c.norm();
    FockDensityMatrix rho;
    rho.dim = dim;
    rho.entries = c * c.adjoint();
    return rho;
}

inline double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// Trace distance between grid kernels, using quadrature weights so the result
// matches the operator trace norm.
inline double trace_distance_grid(const DensityMatrixGrid& a, const DensityMatrixGrid& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("trace_distance_grid: grid mismatch");
    const std::size_t n = a.grid.count;
    const double h = a.grid.spacing();
    Eigen::MatrixXcd d = a.entries - b.entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d(i, j) *= std::sqrt(trapezoid_weight(i, n, h) * trapezoid_weight(j, n, h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace qtomo
