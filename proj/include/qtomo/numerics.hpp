#pragma once

#include <algorithm>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qtomo/grid.hpp"

namespace qtomo {

inline constexpr double pi = std::numbers::pi;

template <typename T>
struct Flagged {
    T value;
    bool warning = false;
    std::string message;
};

// ---------------------------------------------------------------------------
// FFT helpers
// ---------------------------------------------------------------------------

inline void fft_inplace(std::vector<cplx>& data, bool inverse) {
    // the FFT object caches twiddle plans per length across calls
    static thread_local Eigen::FFT<double> fft;
    std::vector<cplx> out(data.size());
    if (inverse)
        fft.inv(out, data);
    else
        fft.fwd(out, data);
    data.swap(out);
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Chirp-z transform: y_k = sum_j x_j exp(i*omega*j*k), k = 0..K-1,
// via Bluestein's identity jk = (j^2 + k^2 - (k-j)^2)/2.
inline std::vector<cplx> czt(const std::vector<cplx>& x, double omega, std::size_t K) {
    const std::size_t N = x.size();
    const std::size_t L = next_pow2(N + K - 1);
    std::vector<cplx> a(L, cplx(0.0)), b(L, cplx(0.0));
    auto half_sq_phase = [omega](double m) { return std::polar(1.0, 0.5 * omega * m * m); };
    for (std::size_t j = 0; j < N; ++j) a[j] = x[j] * half_sq_phase(static_cast<double>(j));
    // b_m = exp(-i*omega*m^2/2) for m in [-(N-1), K-1], laid out circularly.
    for (std::size_t m = 0; m < K; ++m) b[m] = std::conj(half_sq_phase(static_cast<double>(m)));
    for (std::size_t m = 1; m < N; ++m) b[L - m] = std::conj(half_sq_phase(static_cast<double>(m)));
    fft_inplace(a, false);
    fft_inplace(b, false);
    for (std::size_t i = 0; i < L; ++i) a[i] *= b[i];
    fft_inplace(a, true);
    std::vector<cplx> y(K);
    for (std::size_t k = 0; k < K; ++k) y[k] = a[k] * half_sq_phase(static_cast<double>(k));
    return y;
}

// ---------------------------------------------------------------------------
// Oscillator eigenfunctions
// ---------------------------------------------------------------------------

inline constexpr int hermite_n_max = 60;

// psi_n(q) = H_n(q) exp(-q^2/2) / sqrt(2^n n! sqrt(pi)), evaluated with the
// normalized three-term recurrence to avoid overflow.
inline double hermite_eigenfunction_at(int n, double q) {
    double p0 = std::pow(pi, -0.25) * std::exp(-0.5 * q * q);
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * q * p0;
    for (int k = 1; k < n; ++k) {
        const double p2 = q * std::sqrt(2.0 / (k + 1.0)) * p1 - std::sqrt(k / (k + 1.0)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline Flagged<RealSamples> hermite_eigenfunction(int n, const UniformGrid& grid) {
    grid.validate();
    if (n < 0 || n > hermite_n_max)
        throw std::domain_error("hermite_eigenfunction: n out of range [0," +
                                std::to_string(hermite_n_max) + "]");
    Flagged<RealSamples> out;
    out.value.grid = grid;
    out.value.values.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i)
        out.value.values[i] = hermite_eigenfunction_at(n, grid.point(i));
    const double edge = std::max(std::abs(out.value.values.front()),
                                 std::abs(out.value.values.back()));
    if (edge > 1e-6) {
        out.warning = true;
        out.message = "grid too narrow: |psi_n| at boundary exceeds 1e-6";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chirp-quadrature transform <X mu nu | psi>
// ---------------------------------------------------------------------------

// Direct O(N*K) quadrature; serves as the oracle for the fast path.
inline ComplexSamples chirp_overlap_direct(const ComplexSamples& psi, double mu, double nu,
                                           const UniformGrid& X_grid) {
    psi.validate();
    X_grid.validate();
    if (nu == 0.0) throw std::domain_error("chirp_overlap: nu must be nonzero");
    const std::size_t N = psi.grid.count;
    const double h = psi.grid.spacing();
    ComplexSamples out{X_grid, std::vector<cplx>(X_grid.count)};
    const double norm = 1.0 / std::sqrt(2.0 * pi * std::abs(nu));
    for (std::size_t k = 0; k < X_grid.count; ++k) {
        const double X = X_grid.point(k);
        cplx acc(0.0);
        for (std::size_t j = 0; j < N; ++j) {
            const double q = psi.grid.point(j);
            const double phase = 0.5 * mu * q * q / nu - X * q / nu;
            acc += psi.values[j] * std::polar(trapezoid_weight(j, N, h), phase);
        }
        out.values[k] = norm * acc;
    }
    return out;
}

// Fast path: chirp multiply + Bluestein chirp-z evaluation at frequencies X/nu.
inline ComplexSamples chirp_overlap(const ComplexSamples& psi, double mu, double nu,
                                    const UniformGrid& X_grid) {
    psi.validate();
    X_grid.validate();
    if (nu == 0.0) throw std::domain_error("chirp_overlap: nu must be nonzero");
    const std::size_t N = psi.grid.count;
    const double h = psi.grid.spacing();
    const double q0 = psi.grid.min;
    const double X0 = X_grid.min;
    const double dX = X_grid.spacing();
    std::vector<cplx> g(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double q = psi.grid.point(j);
        const double phase = 0.5 * mu * q * q / nu - X0 * q / nu;
        g[j] = psi.values[j] * std::polar(trapezoid_weight(j, N, h), phase);
    }
    // exp(-i X_k q_j / nu) = exp(-i X0 q_j/nu) exp(-i k dX q0/nu) W^(jk),
    // W = exp(-i dX h / nu).
    std::vector<cplx> y = czt(g, -dX * h / nu, X_grid.count);
    ComplexSamples out{X_grid, std::vector<cplx>(X_grid.count)};
    const double norm = 1.0 / std::sqrt(2.0 * pi * std::abs(nu));
    for (std::size_t k = 0; k < X_grid.count; ++k)
        out.values[k] = norm * y[k] * std::polar(1.0, -static_cast<double>(k) * dX * q0 / nu);
    return out;
}

// ---------------------------------------------------------------------------
// Quadrature nodes and finite-difference weights
// ---------------------------------------------------------------------------

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

// Fornberg weights for the m-th derivative at x0 from the given nodes.
inline std::vector<double> fornberg_weights(const std::vector<double>& nodes, double x0, int m) {
    const int n = static_cast<int>(nodes.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][m];
    return w;
}

} // namespace qtomo
