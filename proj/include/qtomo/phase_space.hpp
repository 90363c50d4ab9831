#pragma once

#include "qtomo/states.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct WignerFunction {
    UniformGrid q_grid;
    UniformGrid p_grid;
    Eigen::MatrixXd values; // values(i, j) = W(q_i, p_j)
    bool warning = false;

    void validate() const {
        q_grid.validate();
        p_grid.validate();
        if (static_cast<std::size_t>(values.rows()) != q_grid.count ||
            static_cast<std::size_t>(values.cols()) != p_grid.count)
            throw std::invalid_argument("WignerFunction: shape does not match grids");
    }
    double at(double q, double p) const {
        const double tq = (q - q_grid.min) / q_grid.spacing();
        const double tp = (p - p_grid.min) / p_grid.spacing();
        if (tq < 0 || tp < 0 || tq > double(q_grid.count - 1) || tp > double(p_grid.count - 1))
            return 0.0;
        const std::size_t i = std::min(std::size_t(tq), q_grid.count - 2);
        const std::size_t j = std::min(std::size_t(tp), p_grid.count - 2);
        const double fq = tq - double(i), fp = tp - double(j);
        return values(i, j) * (1 - fq) * (1 - fp) + values(i + 1, j) * fq * (1 - fp) +
               values(i, j + 1) * (1 - fq) * fp + values(i + 1, j + 1) * fq * fp;
    }
};

using FockOperator = Eigen::MatrixXcd;

// Int Int W dq dp / (2 pi); should be 1 for a state.
inline double wigner_norm(const WignerFunction& w) {
    const double hq = w.q_grid.spacing(), hp = w.p_grid.spacing();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.q_grid.count; ++i)
        for (std::size_t j = 0; j < w.p_grid.count; ++j)
            acc += trapezoid_weight(i, w.q_grid.count, hq) *
                   trapezoid_weight(j, w.p_grid.count, hp) * w.values(i, j);
    return acc / (2.0 * pi);
}

// (2 pi)^{-1} Int Int W_A W_B dq dp = Tr(AB)
inline double trace_pairing(const WignerFunction& a, const WignerFunction& b) {
    if (!(a.q_grid == b.q_grid) || !(a.p_grid == b.p_grid))
        throw std::invalid_argument("trace_pairing: grid mismatch");
    const double hq = a.q_grid.spacing(), hp = a.p_grid.spacing();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.q_grid.count; ++i)
        for (std::size_t j = 0; j < a.p_grid.count; ++j)
            acc += trapezoid_weight(i, a.q_grid.count, hq) *
                   trapezoid_weight(j, a.p_grid.count, hp) * a.values(i, j) * b.values(i, j);
    return acc / (2.0 * pi);
}

// ---------------------------------------------------------------------------
// Wigner function from the grid density matrix
// ---------------------------------------------------------------------------

// W(q,p) = Int rho(q + x/2, q - x/2) e^{-ipx} dx, sampled along anti-diagonals.
inline WignerFunction wigner_from_density(const DensityMatrixGrid& rho,
                                          const UniformGrid& p_grid) {
    rho.grid.validate();
    p_grid.validate();
    const std::size_t N = rho.grid.count;
    const double h = rho.grid.spacing();
    WignerFunction w;
    w.q_grid = rho.grid;
    w.p_grid = p_grid;
    w.values.setZero(N, p_grid.count);
    for (std::size_t i = 0; i < N; ++i) {
        // x_k = 2 h k lands exactly on grid nodes: rho(i+k, i-k)
        const std::size_t m = std::min(i, N - 1 - i);
        if (m == 0) continue;
        for (std::size_t j = 0; j < p_grid.count; ++j) {
            const double p = p_grid.point(j);
            cplx acc = rho.entries(i, i); // k = 0 term, weight handled below
            acc *= 0.5;                   // trapezoid end of the symmetric sum in |k|
            // exploit rho(q+x/2, q-x/2) at -x being the conjugate
            for (std::size_t k = 1; k < m; ++k)
                acc += rho.entries(i + k, i - k) * std::polar(1.0, -2.0 * h * k * p);
            acc += 0.5 * rho.entries(i + m, i - m) * std::polar(1.0, -2.0 * h * m * p);
            w.values(i, j) = 2.0 * (2.0 * h) * acc.real();
        }
    }
    // the two boundary rows only have the k = 0 term
    for (std::size_t j = 0; j < p_grid.count; ++j) {
        w.values(0, j) = 2.0 * h * rho.entries(0, 0).real() * 0.5 * 2.0;
        w.values(N - 1, j) = 2.0 * h * rho.entries(N - 1, N - 1).real() * 0.5 * 2.0;
    }
    return w;
}

inline WignerFunction wigner_from_wavefunction(const WaveFunction& psi,
                                               const UniformGrid& p_grid) {
    return wigner_from_density(density_from_wavefunction(psi), p_grid);
}

// ---------------------------------------------------------------------------
// Displacement and parity operators on truncated Fock space
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd ladder_annihilation(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

// D(q,p) = exp[i (p Q - q P)] via eigendecomposition of the Hermitian generator.
inline Flagged<FockOperator> displacement_operator(double q, double p, int dim) {
    if (dim < 16) throw std::invalid_argument("displacement_operator: dim must be >= 16");
    const Eigen::MatrixXcd a = ladder_annihilation(dim);
    const Eigen::MatrixXcd Q = (a + a.adjoint()) / std::sqrt(2.0);
    const Eigen::MatrixXcd P = (a - a.adjoint()) / (cplx(0.0, 1.0) * std::sqrt(2.0));
    Eigen::MatrixXcd H = p * Q - q * P; // Hermitian
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(dim);
    for (int k = 0; k < dim; ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
    Flagged<FockOperator> out;
    out.value = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    // truncation diagnostic: D|0> must match the analytic coherent expansion
    // on the lower half of the basis (the matrix is unitary by construction,
    // so unitarity itself can not detect truncation)
    const cplx alpha = cplx(q, p) / std::sqrt(2.0);
    double fact = 1.0, dev = 0.0;
    for (int n = 0; n < dim / 2; ++n) {
        if (n > 0) fact *= n;
        const cplx expect = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
        dev = std::max(dev, std::abs(out.value(n, 0) - expect));
    }
    if (dev > 1e-6) {
        out.warning = true;
        out.message = "displacement too large for the Fock truncation";
    }
    return out;
}

inline FockOperator parity_operator(int dim) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) P(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return P;
}

// W_rho(q,p) = 2 Tr[rho D(alpha) Par D(alpha)^dagger], alpha = (q+ip)/sqrt(2);
// equivalently the expectation of the shifted parity operator.
inline double wigner_via_parity_point(const FockDensityMatrix& rho, double q, double p) {
    const auto D = displacement_operator(q, p, rho.dim);
    const Eigen::MatrixXcd shifted =
        D.value * parity_operator(rho.dim) * D.value.adjoint();
    const cplx t = (rho.entries * shifted).trace();
    if (std::abs(t.imag()) > 1e-6)
        throw std::runtime_error("wigner_via_parity: imaginary residue above tolerance");
    return 2.0 * t.real();
}

inline WignerFunction wigner_via_parity(const FockDensityMatrix& rho, const UniformGrid& q_grid,
                                        const UniformGrid& p_grid) {
    WignerFunction w;
    w.q_grid = q_grid;
    w.p_grid = p_grid;
    w.values.resize(q_grid.count, p_grid.count);
    const Eigen::MatrixXcd par = parity_operator(rho.dim);
    for (std::size_t i = 0; i < q_grid.count; ++i) {
        for (std::size_t j = 0; j < p_grid.count; ++j) {
            const auto D = displacement_operator(q_grid.point(i), p_grid.point(j), rho.dim);
            w.warning = w.warning || D.warning;
            const cplx t = (rho.entries * D.value * par * D.value.adjoint()).trace();
            if (std::abs(t.imag()) > 1e-6)
                throw std::runtime_error("wigner_via_parity: imaginary residue above tolerance");
            w.values(i, j) = 2.0 * t.real();
        }
    }
    return w;
}

// Generalized Wigner function W(q,p;gamma) = W(sqrt(gamma) q, sqrt(gamma) p; 1).
inline double generalized_wigner(const FockDensityMatrix& rho, double gamma, double q, double p) {
    if (gamma <= 0.0) throw std::domain_error("generalized_wigner: gamma must be positive");
    const double s = std::sqrt(gamma);
    return wigner_via_parity_point(rho, s * q, s * p);
}

// Closed-form Fock-state Wigner function (our normalization: W_0 = 2 e^{-q^2-p^2}).
inline double fock_wigner(int n, double q, double p) {
    const double r2 = q * q + p * p;
    // Laguerre L_n(2 r^2) by recurrence
    double L0 = 1.0, L1 = 1.0 - 2.0 * r2;
    double L = (n == 0) ? L0 : L1;
    for (int k = 1; k < n; ++k) {
        const double L2 = ((2.0 * k + 1.0 - 2.0 * r2) * L1 - k * L0) / (k + 1.0);
        L0 = L1;
        L1 = L2;
        L = L2;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sign * L * std::exp(-r2);
}

// ---------------------------------------------------------------------------
// Moyal star product of Weyl symbols
// ---------------------------------------------------------------------------

namespace detail {

// d-th derivative along one axis with order-8 stencils (shifted near edges),
// exact on polynomials of degree <= 8.
inline Eigen::MatrixXcd axis_derivative(const Eigen::MatrixXcd& f, double h, int d, bool along_q) {
    const int nq = int(f.rows()), np = int(f.cols());
    const int n = along_q ? nq : np;
    const int width = 9;
    if (n < width) throw std::invalid_argument("moyal_star: grid too small");
    // the degree-8 interpolant through the stencil has no higher derivatives;
    // this is exact for the polynomial symbols this path serves
    if (d > width - 1) return Eigen::MatrixXcd::Zero(nq, np);
    Eigen::MatrixXcd out(nq, np);
    std::vector<std::vector<double>> wts(n);
    std::vector<int> starts(n);
    std::vector<double> nodes(width);
    for (int i = 0; i < n; ++i) {
        int s = std::clamp(i - width / 2, 0, n - width);
        starts[i] = s;
        for (int k = 0; k < width; ++k) nodes[k] = (s + k - i) * h;
        wts[i] = fornberg_weights(nodes, 0.0, d);
    }
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < np; ++j) {
            const int idx = along_q ? i : j;
            cplx acc = 0.0;
            for (int k = 0; k < width; ++k)
                acc += wts[idx][k] * (along_q ? f(starts[idx] + k, j) : f(i, starts[idx] + k));
            out(i, j) = acc;
        }
    return out;
}

// Spectral d-th derivative along one axis. Requires boundary decay; modes with
// negligible amplitude are filtered before the (ik)^d amplification so that
// high orders stay noise free.
inline Eigen::MatrixXcd axis_derivative_spectral(const Eigen::MatrixXcd& f, double h, int d,
                                                 bool along_q) {
    const int nq = int(f.rows()), np = int(f.cols());
    const int n = along_q ? nq : np;
    const double period = n * h;
    Eigen::FFT<double> fft;
    std::vector<cplx> line(n), hat(n);
    Eigen::MatrixXcd out(nq, np);
    const int lines = along_q ? np : nq;
    for (int l = 0; l < lines; ++l) {
        for (int s = 0; s < n; ++s) line[s] = along_q ? f(s, l) : f(l, s);
        fft.fwd(hat, line);
        double peak = 0.0;
        for (auto& v : hat) peak = std::max(peak, std::abs(v));
        const double cut = 1e-10 * peak;
        for (int s = 0; s < n; ++s) {
            if (std::abs(hat[s]) < cut) {
                hat[s] = 0.0;
                continue;
            }
            const int m = (s <= n / 2) ? s : s - n;
            const cplx ik(0.0, 2.0 * pi * m / period);
            hat[s] *= std::pow(ik, d);
        }
        fft.inv(line, hat);
        for (int s = 0; s < n; ++s) (along_q ? out(s, l) : out(l, s)) = line[s];
    }
    return out;
}

// Bopp-series star product on complex symbol samples. Decaying symbols get
// spectral derivatives; non-decaying (polynomial) symbols fall back to finite
// differences, which are exact for low degree.
inline Eigen::MatrixXcd star_core(const Eigen::MatrixXcd& Av, const Eigen::MatrixXcd& Bv,
                                  double hq, double hp, int order) {
    const auto decays = [](const Eigen::MatrixXcd& v) {
        return std::max({v.row(0).cwiseAbs().maxCoeff(), v.row(v.rows() - 1).cwiseAbs().maxCoeff(),
                         v.col(0).cwiseAbs().maxCoeff(),
                         v.col(v.cols() - 1).cwiseAbs().maxCoeff()}) < 1e-8;
    };
    const bool spectral_a = decays(Av), spectral_b = decays(Bv);
    const auto deriv = [&](const Eigen::MatrixXcd& f, double h, int d, bool along_q,
                           bool spectral) {
        return spectral ? axis_derivative_spectral(f, h, d, along_q)
                        : axis_derivative(f, h, d, along_q);
    };
    std::vector<std::vector<Eigen::MatrixXcd>> dA(order + 1), dB(order + 1);
    for (int a = 0; a <= order; ++a) {
        dA[a].resize(order + 1 - a);
        dB[a].resize(order + 1 - a);
        const Eigen::MatrixXcd baseA = (a == 0) ? Av : deriv(Av, hq, a, true, spectral_a);
        const Eigen::MatrixXcd baseB = (a == 0) ? Bv : deriv(Bv, hq, a, true, spectral_b);
        for (int b = 0; b + a <= order; ++b) {
            dA[a][b] = (b == 0) ? baseA : deriv(baseA, hp, b, false, spectral_a);
            dB[a][b] = (b == 0) ? baseB : deriv(baseB, hp, b, false, spectral_b);
        }
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Av.rows(), Av.cols());
    double inv_fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) inv_fact /= k;
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Zero(Av.rows(), Av.cols());
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            term += sign * binom * dA[k - j][j].cwiseProduct(dB[j][k - j]);
            binom = binom * (k - j) / (j + 1.0);
        }
        cplx ik(1.0, 0.0); // i^k
        switch (k % 4) {
            case 1: ik = cplx(0.0, 1.0); break;
            case 2: ik = cplx(-1.0, 0.0); break;
            case 3: ik = cplx(0.0, -1.0); break;
        }
        out += (inv_fact * std::pow(0.5, k)) * ik * term;
    }
    return out;
}

} // namespace detail

struct ComplexField {
    Eigen::MatrixXd real;
    Eigen::MatrixXd imag;
    bool warning = false; // set when a symbol does not decay at the grid boundary
};

// Truncated Moyal series
//   A * B = sum_k (1/k!) (i/2)^k sum_j (-1)^j C(k,j)
//           (d_q^{k-j} d_p^j A)(d_q^j d_p^{k-j} B),
// with high-order finite-difference derivatives. Exact for polynomial symbols
// of low degree; geometric convergence for gentle Gaussian symbols.
inline ComplexField moyal_star(const WignerFunction& A, const WignerFunction& B, int order = 10) {
    if (!(A.q_grid == B.q_grid) || !(A.p_grid == B.p_grid))
        throw std::invalid_argument("moyal_star: grid mismatch");
    const Eigen::MatrixXcd s = detail::star_core(A.values.cast<cplx>(), B.values.cast<cplx>(),
                                                 A.q_grid.spacing(), A.p_grid.spacing(), order);
    ComplexField out;
    out.real = s.real();
    out.imag = s.imag();
    const double edge = std::max({A.values.row(0).cwiseAbs().maxCoeff(),
                                  A.values.row(A.values.rows() - 1).cwiseAbs().maxCoeff(),
                                  A.values.col(0).cwiseAbs().maxCoeff(),
                                  A.values.col(A.values.cols() - 1).cwiseAbs().maxCoeff(),
                                  B.values.row(0).cwiseAbs().maxCoeff(),
                                  B.values.row(B.values.rows() - 1).cwiseAbs().maxCoeff(),
                                  B.values.col(0).cwiseAbs().maxCoeff(),
                                  B.values.col(B.values.cols() - 1).cwiseAbs().maxCoeff()});
    out.warning = edge > 1e-8; // polynomial symbols legitimately trip this
    return out;
}

// star of complex symbol fields (needed to chain products, e.g. associativity checks)
inline Eigen::MatrixXcd moyal_star(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                                   const UniformGrid& q_grid, const UniformGrid& p_grid,
                                   int order = 10) {
    return detail::star_core(A, B, q_grid.spacing(), p_grid.spacing(), order);
}

// Direct Groenewold kernel quadrature at a single point (slow oracle):
// (A*B)(q,p) = (1/pi^2) Int d q1 dp1 dq2 dp2 A(q1,p1) B(q2,p2)
//              exp{2i [q(p1-p2) + q1(p2-p) + q2(p-p1)]}.
inline cplx gronewold_star_point(const WignerFunction& A, const WignerFunction& B, double q,
                                 double p) {
    const double hq = A.q_grid.spacing(), hp = A.p_grid.spacing();
    const std::size_t nq = A.q_grid.count, np = A.p_grid.count;
    cplx acc(0.0);
    for (std::size_t i1 = 0; i1 < nq; ++i1) {
        const double q1 = A.q_grid.point(i1);
        const double w1 = trapezoid_weight(i1, nq, hq);
        for (std::size_t j1 = 0; j1 < np; ++j1) {
            const double p1 = A.p_grid.point(j1);
            const double a = A.values(i1, j1);
            if (a == 0.0) continue;
            const double wa = w1 * trapezoid_weight(j1, np, hp) * a;
            cplx inner(0.0);
            for (std::size_t i2 = 0; i2 < nq; ++i2) {
                const double q2 = B.q_grid.point(i2);
                const double w2 = trapezoid_weight(i2, nq, hq);
                for (std::size_t j2 = 0; j2 < np; ++j2) {
                    const double p2 = B.p_grid.point(j2);
                    const double phase =
                        2.0 * (q * (p1 - p2) + q1 * (p2 - p) + q2 * (p - p1));
                    inner += B.values(i2, j2) *
                             std::polar(w2 * trapezoid_weight(j2, np, hp), phase);
                }
            }
            acc += wa * inner;
        }
    }
    return acc / (pi * pi);
}

} // namespace qtomo
