#pragma once

#include "phase_space.hpp"
#include "tomography.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// Quadratic Hamiltonians, H = p^2/2 + U(q) with m = 1
// ---------------------------------------------------------------------------

struct QuadraticHamiltonian {
    enum class Kind { free, harmonic };
    Kind kind = Kind::harmonic;
    double omega = 1.0;

    void validate() const {
        if (kind == Kind::harmonic && !(omega > 0.0))
            throw std::invalid_argument("QuadraticHamiltonian: omega must be positive");
    }
};

inline QuadraticHamiltonian free_particle() {
    return {QuadraticHamiltonian::Kind::free, 0.0};
}

inline QuadraticHamiltonian harmonic_oscillator(double omega = 1.0) {
    QuadraticHamiltonian h{QuadraticHamiltonian::Kind::harmonic, omega};
    h.validate();
    return h;
}

// classical flow (q, p) -> (q(t), p(t)); exact characteristics
inline std::pair<double, double> classical_flow(const QuadraticHamiltonian& h, double t, double q,
                                                double p) {
    h.validate();
    if (h.kind == QuadraticHamiltonian::Kind::free) return {q + p * t, p};
    const double c = std::cos(h.omega * t), s = std::sin(h.omega * t);
    return {q * c + p * s / h.omega, -q * h.omega * s + p * c};
}

// ---------------------------------------------------------------------------
// Tomogram evolution along characteristics
// ---------------------------------------------------------------------------

// mu Q(t) + nu P(t) = mu' Q + nu' P with the Heisenberg solution (Q(t), P(t));
// the tomogram is transported by reparameterizing (mu, nu), hence stays
// nonnegative and X-normalized for free.
inline TomogramEvaluator evolve_tomogram(TomogramEvaluator t0, const QuadraticHamiltonian& h,
                                         double t) {
    h.validate();
    if (h.kind == QuadraticHamiltonian::Kind::free)
        return [t0 = std::move(t0), t](double X, double mu, double nu) {
            return t0(X, mu, nu + mu * t);
        };
    const double c = std::cos(h.omega * t), s = std::sin(h.omega * t);
    const double w = h.omega;
    return [t0 = std::move(t0), c, s, w](double X, double mu, double nu) {
        return t0(X, mu * c - nu * w * s, mu * s / w + nu * c);
    };
}

// ---------------------------------------------------------------------------
// Semi-Lagrangian Wigner / Liouville evolution
// ---------------------------------------------------------------------------

// for quadratic U the Moyal equation truncates to the Liouville equation, so
// the Wigner function is pulled back along the inverse classical flow
inline WignerFunction evolve_wigner(const WignerFunction& w0, const QuadraticHamiltonian& h,
                                    double t) {
    w0.validate();
    h.validate();
    WignerFunction out;
    out.q_grid = w0.q_grid;
    out.p_grid = w0.p_grid;
    out.values.resize(w0.values.rows(), w0.values.cols());
    for (std::size_t i = 0; i < out.q_grid.count; ++i) {
        const double q = out.q_grid.point(i);
        for (std::size_t j = 0; j < out.p_grid.count; ++j) {
            const auto [q0, p0] = classical_flow(h, -t, q, out.p_grid.point(j));
            out.values(i, j) = w0.at(q0, p0);
        }
    }
    // warn if mass leaves the grid: probe the pushed-forward boundary
    for (std::size_t i = 0; i < w0.q_grid.count; ++i)
        for (std::size_t j : {std::size_t{0}, w0.p_grid.count - 1}) {
            if (std::abs(w0.values(i, j)) > 1e-6) out.warning = true;
        }
    for (std::size_t j = 0; j < w0.p_grid.count; ++j)
        for (std::size_t i : {std::size_t{0}, w0.q_grid.count - 1}) {
            if (std::abs(w0.values(i, j)) > 1e-6) out.warning = true;
        }
    return out;
}

using PhaseSampler = std::function<double(double q, double p)>;

inline PhaseSampler evolve_classical(PhaseSampler f0, const QuadraticHamiltonian& h, double t) {
    h.validate();
    return [f0 = std::move(f0), h, t](double q, double p) {
        const auto [q0, p0] = classical_flow(h, -t, q, p);
        return f0(q0, p0);
    };
}

// ---------------------------------------------------------------------------
// Stationary Moyal check for oscillator eigenstates
// ---------------------------------------------------------------------------

// for U = q^2/2 the stationary Moyal equation truncates to
// E W = (q^2 + p^2)/2 W - (1/8)(d^2_q + d^2_p) W
inline double stationary_moyal_residual(int n, double E, const UniformGrid& q_grid = {-8.0, 8.0, 256},
                                        const UniformGrid& p_grid = {-8.0, 8.0, 256}) {
    if (n < 0 || n > 10) throw std::invalid_argument("stationary_moyal_residual: need 0 <= n <= 10");
    Eigen::MatrixXcd W(q_grid.count, p_grid.count);
    for (std::size_t i = 0; i < q_grid.count; ++i)
        for (std::size_t j = 0; j < p_grid.count; ++j)
            W(i, j) = fock_wigner(n, q_grid.point(i), p_grid.point(j));
    Eigen::MatrixXcd lap = detail::axis_derivative_spectral(W, q_grid.spacing(), 2, true) +
                           detail::axis_derivative_spectral(W, p_grid.spacing(), 2, false);
    double resid = 0.0;
    for (std::size_t i = 0; i < q_grid.count; ++i) {
        const double q = q_grid.point(i);
        for (std::size_t j = 0; j < p_grid.count; ++j) {
            const double p = p_grid.point(j);
            const double lhs = E * W(i, j).real();
            const double rhs = 0.5 * (q * q + p * p) * W(i, j).real() - 0.125 * lap(i, j).real();
            resid = std::max(resid, std::abs(lhs - rhs));
        }
    }
    return resid;
}

} // namespace qtomo
