#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>

#include "qtomo/phase_space.hpp"

namespace qtomo {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct SymplecticTomogram {
    UniformGrid X_grid;
    std::vector<std::pair<double, double>> params; // (mu, nu) per row
    Eigen::MatrixXd values;                        // param x X
    bool warning = false;

    void validate() const {
        X_grid.validate();
        if (static_cast<std::size_t>(values.rows()) != params.size() ||
            static_cast<std::size_t>(values.cols()) != X_grid.count)
            throw std::invalid_argument("SymplecticTomogram: shape mismatch");
        const double h = X_grid.spacing();
        for (Eigen::Index r = 0; r < values.rows(); ++r) {
            if (values.row(r).minCoeff() < -1e-10)
                throw std::invalid_argument("SymplecticTomogram: negative value");
            double mass = 0.0;
            for (std::size_t k = 0; k < X_grid.count; ++k)
                mass += trapezoid_weight(k, X_grid.count, h) * values(r, k);
            if (std::abs(mass - 1.0) > 1e-6)
                throw std::invalid_argument("SymplecticTomogram: row not normalized");
        }
    }
};

struct OpticalTomogram {
    UniformGrid X_grid;
    UniformGrid theta_grid; // covers [0, pi) or [0, 2pi); (mu,nu) = (cos t, sin t)
    Eigen::MatrixXd values; // theta x X
    bool warning = false;
};

// ---------------------------------------------------------------------------
// Forward routes
// ---------------------------------------------------------------------------

// |<X mu nu | psi>|^2 with the momentum-representation branch near nu = 0.
inline SymplecticTomogram tomogram_from_wavefunction(
    const WaveFunction& psi, const std::vector<std::pair<double, double>>& params,
    const UniformGrid& X_grid) {
    psi.validate();
    SymplecticTomogram out;
    out.X_grid = X_grid;
    out.params = params;
    out.values.resize(Eigen::Index(params.size()), X_grid.count);
    ComplexSamples cs{psi.grid, {}};
    cs.values.assign(psi.amplitudes.data(), psi.amplitudes.data() + psi.grid.count);
    ComplexSamples tilde; // momentum amplitudes, built lazily
    for (std::size_t r = 0; r < params.size(); ++r) {
        const auto [mu, nu] = params[r];
        if (mu == 0.0 && nu == 0.0) throw std::domain_error("degenerate observable");
        ComplexSamples amp;
        // representation choice keeps the chirp frequency below Nyquist:
        // the quadratic phase slope is |mu/nu| q in position space and
        // |nu/mu| p in momentum space, so integrate in whichever is gentler
        if (std::abs(nu) >= std::max(std::abs(mu), 1e-6)) {
            amp = chirp_overlap(cs, mu, nu, X_grid);
        } else {
            // T(X, mu, nu) in the momentum representation: the same chirp
            // overlap applied to psi-tilde with (mu, nu) -> (nu, -mu)
            if (tilde.values.empty()) tilde = momentum_amplitudes(psi, psi.grid);
            amp = chirp_overlap(tilde, nu, -mu, X_grid);
        }
        for (std::size_t k = 0; k < X_grid.count; ++k)
            out.values(Eigen::Index(r), k) = std::norm(amp.values[k]);
    }
    return out;
}

// Radon transform of the Wigner function: line integral over mu q + nu p = X
// with the (2 pi)^{-1} normalization of the tomographic pairing.
inline Flagged<Eigen::VectorXd> tomogram_from_wigner(const WignerFunction& W, double mu, double nu,
                                                     const UniformGrid& X_grid) {
    if (mu == 0.0 && nu == 0.0) throw std::domain_error("degenerate observable");
    const double s = std::hypot(mu, nu);
    const double dirq = -nu / s, dirp = mu / s; // unit vector along the line
    const double dt = 0.5 * std::min(W.q_grid.spacing(), W.p_grid.spacing());
    Flagged<Eigen::VectorXd> out;
    out.value.resize(X_grid.count);
    // parameter range of the segment inside the grid box, for any line
    const double reach = std::hypot(std::max(std::abs(W.q_grid.min), std::abs(W.q_grid.max)),
                                    std::max(std::abs(W.p_grid.min), std::abs(W.p_grid.max)));
    const int nt = int(std::ceil(2.0 * reach / dt));
    for (std::size_t k = 0; k < X_grid.count; ++k) {
        const double X = X_grid.point(k);
        const double cq = mu * X / (s * s), cp = nu * X / (s * s); // foot of the line
        double acc = 0.0;
        for (int i = 0; i <= nt; ++i) {
            const double t = -reach + 2.0 * reach * i / nt;
            const double q = cq + t * dirq, p = cp + t * dirp;
            const bool inside = q >= W.q_grid.min && q <= W.q_grid.max && p >= W.p_grid.min &&
                                p <= W.p_grid.max;
            const double w = (i == 0 || i == nt) ? 0.5 : 1.0;
            if (inside) acc += w * W.at(q, p);
        }
        // flag lines that leave the grid while W is still significant
        for (double t : {-reach, reach}) {
            double q = std::clamp(cq + t * dirq, W.q_grid.min, W.q_grid.max);
            double p = std::clamp(cp + t * dirp, W.p_grid.min, W.p_grid.max);
            if (std::abs(W.at(q, p)) > 1e-6) {
                out.warning = true;
                out.message = "integration line exits the Wigner grid";
            }
        }
        out.value(k) = acc * (2.0 * reach / nt) / (2.0 * pi * s);
    }
    return out;
}

// Double quadrature against the chirped (improper) eigenfunctions; O(N^2)
// per X value, intended as the mixed-state oracle path.
inline Eigen::VectorXd tomogram_from_density(const DensityMatrixGrid& rho, double mu, double nu,
                                             const UniformGrid& X_grid) {
    rho.grid.validate();
    const std::size_t N = rho.grid.count;
    const double h = rho.grid.spacing();
    Eigen::VectorXd out(X_grid.count);
    if (nu == 0.0) {
        if (mu == 0.0) throw std::domain_error("degenerate observable");
        // marginal of the diagonal: T(X, mu, 0) = rho(X/mu, X/mu)/|mu|
        RealSamples diag{rho.grid, std::vector<double>(N)};
        for (std::size_t i = 0; i < N; ++i) diag.values[i] = rho.entries(i, i).real();
        for (std::size_t k = 0; k < X_grid.count; ++k)
            out(k) = interp_linear(rho.grid, diag.values, X_grid.point(k) / mu) / std::abs(mu);
        return out;
    }
    const double norm = 1.0 / (2.0 * pi * std::abs(nu));
    Eigen::VectorXcd phi(N);
    for (std::size_t k = 0; k < X_grid.count; ++k) {
        const double X = X_grid.point(k);
        for (std::size_t j = 0; j < N; ++j) {
            const double q = rho.grid.point(j);
            // minus sign: the adjoint below conjugates the bra-side factor
            phi(j) = std::polar(trapezoid_weight(j, N, h), -(0.5 * mu * q * q / nu - X * q / nu));
        }
        const cplx val = (phi.adjoint() * rho.entries * phi)(0, 0) * norm;
        if (std::abs(val.imag()) > 1e-8)
            throw std::runtime_error("tomogram_from_density: imaginary residue above tolerance");
        out(k) = val.real();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms and homogeneity
// ---------------------------------------------------------------------------

// Oscillator level tomogram T_n(X, mu, nu) = psi_n(X/s)^2 / s, s^2 = mu^2+nu^2.
inline double ho_level_tomogram(int n, double mu, double nu, double X) {
    const double s = std::hypot(mu, nu);
    if (s == 0.0) throw std::domain_error("degenerate observable");
    const double v = hermite_eigenfunction_at(n, X / s);
    return v * v / s;
}

// One-parameter family deforming the first excited level: T_1(X, l mu, l nu).
inline double scaled_first_excited_tomogram(double lambda, double mu, double nu, double X) {
    if (lambda == 0.0) throw std::domain_error("lambda must be nonzero");
    return ho_level_tomogram(1, lambda * mu, lambda * nu, X);
}

inline double homogeneity_rescale(double value, double lambda) {
    if (lambda == 0.0) throw std::domain_error("lambda must be nonzero");
    return value / std::abs(lambda);
}

// ---------------------------------------------------------------------------
// Optical tomograms
// ---------------------------------------------------------------------------

inline OpticalTomogram optical_tomogram_from_wavefunction(const WaveFunction& psi,
                                                          const UniformGrid& theta_grid,
                                                          const UniformGrid& X_grid) {
    std::vector<std::pair<double, double>> params;
    params.reserve(theta_grid.count);
    for (std::size_t i = 0; i < theta_grid.count; ++i) {
        const double t = theta_grid.point(i);
        params.emplace_back(std::cos(t), std::sin(t));
    }
    auto sym = tomogram_from_wavefunction(psi, params, X_grid);
    OpticalTomogram out;
    out.X_grid = X_grid;
    out.theta_grid = theta_grid;
    out.values = std::move(sym.values);
    return out;
}

// Evaluate an optical tomogram at arbitrary (X, mu, nu) using homogeneity:
// T(X, mu, nu) = T(X/s, theta)/s with s = |(mu,nu)| and theta = atan2(nu, mu),
// wrapping theta < 0 by (theta + pi, X -> -X).
inline double optical_evaluate(const OpticalTomogram& opt, double X, double mu, double nu) {
    const double s = std::hypot(mu, nu);
    if (s == 0.0) throw std::domain_error("degenerate observable");
    double theta = std::atan2(nu, mu);
    double x = X / s;
    if (theta < 0.0) {
        theta += pi;
        x = -x;
    }
    // bilinear interpolation in (theta, X); theta rows outside the stored
    // range fall back to the nearest row
    const double tt = (theta - opt.theta_grid.min) / opt.theta_grid.spacing();
    const std::size_t i =
        std::min(std::size_t(std::max(tt, 0.0)), opt.theta_grid.count - 2);
    const double ft = std::clamp(tt - double(i), 0.0, 1.0);
    const auto row_at = [&](std::size_t r) {
        const double tx = (x - opt.X_grid.min) / opt.X_grid.spacing();
        if (tx < 0.0 || tx > double(opt.X_grid.count - 1)) return 0.0;
        const std::size_t j = std::min(std::size_t(tx), opt.X_grid.count - 2);
        const double fx = tx - double(j);
        return opt.values(r, j) * (1.0 - fx) + opt.values(r, j + 1) * fx;
    };
    return (row_at(i) * (1.0 - ft) + row_at(i + 1) * ft) / s;
}

// ---------------------------------------------------------------------------
// Density-matrix reconstruction
// ---------------------------------------------------------------------------

using TomogramEvaluator = std::function<double(double X, double mu, double nu)>;

inline TomogramEvaluator evaluator_from_wavefunction(const WaveFunction& psi,
                                                     const UniformGrid& X_grid) {
    // caches forward rows per (mu, nu) and interpolates in X
    auto cache = std::make_shared<std::map<std::pair<double, double>, Eigen::VectorXd>>();
    auto psi_copy = std::make_shared<WaveFunction>(psi);
    return [cache, psi_copy, X_grid](double X, double mu, double nu) {
        auto it = cache->find({mu, nu});
        if (it == cache->end()) {
            auto t = tomogram_from_wavefunction(*psi_copy, {{mu, nu}}, X_grid);
            it = cache->emplace(std::make_pair(mu, nu), t.values.row(0).transpose()).first;
        }
        const double tx = (X - X_grid.min) / X_grid.spacing();
        if (tx < 0.0 || tx > double(X_grid.count - 1)) return 0.0;
        const std::size_t j = std::min(std::size_t(tx), X_grid.count - 2);
        const double f = tx - double(j);
        return it->second(j) * (1.0 - f) + it->second(j + 1) * f;
    };
}

// rho(q, q') = (2 pi)^{-1} Int Int T(X, mu, q - q') e^{i[X - mu (q+q')/2]} dX dmu,
// evaluated slice by slice in nu = q - q' >= 0; the nu < 0 half follows from
// Hermiticity.
inline DensityMatrixGrid reconstruct_density(const TomogramEvaluator& tomo,
                                             const UniformGrid& q_grid,
                                             const UniformGrid& X_grid,
                                             const UniformGrid& mu_grid,
                                             double s_max = std::numeric_limits<double>::infinity()) {
    q_grid.validate();
    X_grid.validate();
    mu_grid.validate();
    const std::size_t N = q_grid.count;
    const double h = q_grid.spacing();
    const double hX = X_grid.spacing(), hm = mu_grid.spacing();
    DensityMatrixGrid rho;
    rho.grid = q_grid;
    rho.entries.setZero(N, N);
    std::vector<cplx> eX(X_grid.count);
    for (std::size_t k = 0; k < X_grid.count; ++k)
        eX[k] = std::polar(trapezoid_weight(k, X_grid.count, hX), X_grid.point(k));
    Eigen::VectorXcd phi(mu_grid.count);
    // the nu = 0 slice is the diagonal: rho(q, q) is the position density
    for (std::size_t i = 0; i < N; ++i) rho.entries(i, i) = tomo(q_grid.point(i), 1.0, 0.0);
    for (std::size_t slice = 1; slice < N; ++slice) {
        const double nu = slice * h;
        // characteristic-function slice phi(mu; nu) = Int T e^{iX} dX
        for (std::size_t m = 0; m < mu_grid.count; ++m) {
            const double mu = mu_grid.point(m);
            const double s = std::hypot(mu, nu);
            if (s > s_max) {
                // characteristic slice decays like exp(-s^2/4); past s_max it
                // is below quadrature noise and not worth the forward solve
                phi(m) = 0.0;
                continue;
            }
            // the tomogram mass sits within a few widths of X ~ s, so clip
            // the X quadrature there; past the clip the forward model only
            // returns discretization ghosts
            const double X_clip = 8.0 * s + 2.0;
            cplx acc(0.0);
            for (std::size_t k = 0; k < X_grid.count; ++k) {
                const double X = X_grid.point(k);
                if (std::abs(X) > X_clip) continue;
                acc += tomo(X, mu, nu) * eX[k];
            }
            phi(m) = acc * trapezoid_weight(m, mu_grid.count, hm);
        }
        for (std::size_t i = slice; i < N; ++i) {
            const std::size_t j = i - slice;
            const double mid = 0.5 * (q_grid.point(i) + q_grid.point(j));
            cplx acc(0.0);
            for (std::size_t m = 0; m < mu_grid.count; ++m)
                acc += phi(m) * std::polar(1.0, -mu_grid.point(m) * mid);
            acc /= 2.0 * pi;
            rho.entries(i, j) = acc;
            rho.entries(j, i) = std::conj(acc);
        }
    }
    // Hermitize against quadrature asymmetries (diagonal imaginary residue)
    rho.entries = 0.5 * (rho.entries + rho.entries.adjoint()).eval();
    return rho;
}

// default reconstruction windows: wide enough that the characteristic
// function decays below quadrature noise at the window edges
inline const UniformGrid recon_X_grid{-60.0, 60.0, 2401};
inline const UniformGrid recon_mu_grid{-12.0, 12.0, 241};

inline DensityMatrixGrid reconstruct_density(const TomogramEvaluator& tomo,
                                             const UniformGrid& q_grid) {
    return reconstruct_density(tomo, q_grid, recon_X_grid, recon_mu_grid,
                               recon_mu_grid.max);
}

// Data path: the tomogram rows must form a product set (each stored nu slice
// carries the same dense mu list); off-grid nu values are reached through the
// homogeneity relation.
inline void check_reconstruction_coverage(const SymplecticTomogram& tomo) {
    // group rows by nu
    std::map<double, std::map<double, Eigen::Index>> slices; // nu -> mu -> row
    for (std::size_t r = 0; r < tomo.params.size(); ++r)
        slices[tomo.params[r].second][tomo.params[r].first] = Eigen::Index(r);
    double mu_lo = 0.0, mu_hi = 0.0;
    std::size_t mu_count = 0;
    for (const auto& [nu, rows] : slices) {
        if (mu_count == 0) {
            mu_count = rows.size();
            mu_lo = rows.begin()->first;
            mu_hi = rows.rbegin()->first;
        } else if (rows.size() != mu_count) {
            throw std::invalid_argument("reconstruct_density: params must form a (mu, nu) product grid");
        }
    }
    if (mu_count < 256 || mu_lo > -12.0 || mu_hi < 12.0 || tomo.X_grid.min > -12.0 ||
        tomo.X_grid.max < 12.0 || tomo.X_grid.count < 256)
        throw std::invalid_argument(
            "reconstruct_density: insufficient (X, mu) coverage; need X and mu ranges "
            "covering [-12, 12] with at least 256 samples each");
}

inline TomogramEvaluator evaluator_from_data(const SymplecticTomogram& tomo_in) {
    auto data = std::make_shared<SymplecticTomogram>(tomo_in);
    std::map<double, std::map<double, Eigen::Index>> slices; // nu -> mu -> row
    for (std::size_t r = 0; r < data->params.size(); ++r)
        slices[data->params[r].second][data->params[r].first] = Eigen::Index(r);
    return [data, slices](double X, double mu, double nu) {
        const SymplecticTomogram& tomo = *data;
        // nearest stored slice, reached by rescaling lambda = nu_store/nu
        double best = slices.begin()->first;
        double best_cost = std::numeric_limits<double>::infinity();
        for (const auto& [nus, rows] : slices) {
            const double cost = (nu == 0.0) ? std::abs(nus) : std::abs(nus / nu - 1.0);
            if (cost < best_cost) {
                best_cost = cost;
                best = nus;
            }
        }
        const double lambda = (nu == 0.0 || best == 0.0) ? 1.0 : best / nu;
        const auto& rows = slices.at(best);
        const double xq = (lambda * X - tomo.X_grid.min) / tomo.X_grid.spacing();
        if (xq < 0.0 || xq > double(tomo.X_grid.count - 1)) return 0.0;
        const std::size_t j = std::min(std::size_t(xq), tomo.X_grid.count - 2);
        const double fx = xq - double(j);
        // linear interpolation over the stored mu list
        const double mu_t = lambda * mu;
        auto hi = rows.lower_bound(mu_t);
        if (hi == rows.begin() || hi == rows.end()) return 0.0;
        auto lo = std::prev(hi);
        const double fm = (mu_t - lo->first) / (hi->first - lo->first);
        const auto at = [&](Eigen::Index r) {
            return tomo.values(r, j) * (1.0 - fx) + tomo.values(r, j + 1) * fx;
        };
        return (at(lo->second) * (1.0 - fm) + at(hi->second) * fm) * std::abs(lambda);
    };
}

inline DensityMatrixGrid reconstruct_density(const SymplecticTomogram& tomo,
                                             const UniformGrid& q_grid) {
    check_reconstruction_coverage(tomo);
    return reconstruct_density(evaluator_from_data(tomo), q_grid);
}

// ---------------------------------------------------------------------------
// Wigner reconstruction: filtered back-projection
// ---------------------------------------------------------------------------

inline WignerFunction reconstruct_wigner(const OpticalTomogram& opt, const UniformGrid& q_grid,
                                         const UniformGrid& p_grid) {
    const std::size_t Nt = opt.theta_grid.count;
    const std::size_t Nx = opt.X_grid.count;
    const double hX = opt.X_grid.spacing();
    WignerFunction w;
    w.q_grid = q_grid;
    w.p_grid = p_grid;
    w.values.setZero(q_grid.count, p_grid.count);
    if (Nt < 30) w.warning = true; // reconstruction artifacts expected
    const std::size_t M = next_pow2(2 * Nx);
    std::vector<cplx> padded(M), hat(M);
    Eigen::FFT<double> fft;
    // ramp-filter every angular row; scaling works out to unity:
    // dk dX M / (2 pi) = 1 for dk = 2 pi/(M dX)
    Eigen::MatrixXd filtered(Nt, Nx);
    for (std::size_t r = 0; r < Nt; ++r) {
        std::fill(padded.begin(), padded.end(), cplx(0.0));
        for (std::size_t k = 0; k < Nx; ++k) padded[k] = opt.values(r, k);
        fft.fwd(hat, padded);
        const double dk = 2.0 * pi / (double(M) * hX);
        for (std::size_t j = 0; j < M; ++j) {
            const double f = (j <= M / 2) ? double(j) : double(j) - double(M);
            hat[j] *= std::abs(f) * dk;
        }
        fft.inv(padded, hat);
        for (std::size_t k = 0; k < Nx; ++k) filtered(r, k) = padded[k].real();
    }
    // back-project: W(q,p) = dtheta sum_theta F_theta(q cos + p sin)
    const double dtheta = opt.theta_grid.spacing();
    for (std::size_t r = 0; r < Nt; ++r) {
        const double c = std::cos(opt.theta_grid.point(r)), s = std::sin(opt.theta_grid.point(r));
        for (std::size_t i = 0; i < q_grid.count; ++i)
            for (std::size_t j = 0; j < p_grid.count; ++j) {
                const double X = c * q_grid.point(i) + s * p_grid.point(j);
                const double tx = (X - opt.X_grid.min) / hX;
                if (tx < 0.0 || tx > double(Nx - 1)) continue;
                const std::size_t k = std::min(std::size_t(tx), Nx - 2);
                const double f = tx - double(k);
                w.values(i, j) += dtheta * (filtered(r, k) * (1.0 - f) + filtered(r, k + 1) * f);
            }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Photon-number and Husimi tomograms
// ---------------------------------------------------------------------------

inline Flagged<Eigen::VectorXd> photon_number_tomogram(const FockDensityMatrix& rho, cplx alpha) {
    const double q = std::sqrt(2.0) * alpha.real(), p = std::sqrt(2.0) * alpha.imag();
    auto D = displacement_operator(q, p, rho.dim);
    Flagged<Eigen::VectorXd> out;
    out.warning = D.warning;
    out.message = D.message;
    const Eigen::MatrixXcd rotated = D.value.adjoint() * rho.entries * D.value;
    out.value = rotated.diagonal().real().cwiseMax(0.0);
    return out;
}

inline std::pair<double, double> husimi_tomogram(const FockDensityMatrix& rho, cplx z) {
    Eigen::VectorXcd c(rho.dim);
    double fact = 1.0;
    for (int n = 0; n < rho.dim; ++n) {
        if (n > 0) fact *= n;
        c(n) = std::exp(-0.5 * std::norm(z)) * std::pow(z, n) / std::sqrt(fact);
    }
    const double v = std::clamp((c.adjoint() * rho.entries * c)(0, 0).real(), 0.0, 1.0);
    return {v, 1.0 - v};
}

// ---------------------------------------------------------------------------
// Classical tomograms
// ---------------------------------------------------------------------------

// f(q, p) = g(q) delta(q - p), a measure supported on the diagonal line
struct LineClassicalDensity {
    std::function<double(double)> g;
};

// Radon transform of a phase-space probability density (no 2 pi factor).
inline Flagged<Eigen::VectorXd> classical_tomogram(const std::function<double(double, double)>& f,
                                                   double box, double mu, double nu,
                                                   const UniformGrid& X_grid) {
    if (mu == 0.0 && nu == 0.0) throw std::domain_error("degenerate observable");
    const double s = std::hypot(mu, nu);
    const double dirq = -nu / s, dirp = mu / s;
    const double reach = box * std::sqrt(2.0);
    const int nt = int(std::ceil(reach / 0.005));
    Flagged<Eigen::VectorXd> out;
    out.value.resize(X_grid.count);
    for (std::size_t k = 0; k < X_grid.count; ++k) {
        const double X = X_grid.point(k);
        const double cq = mu * X / (s * s), cp = nu * X / (s * s);
        double acc = 0.0;
        for (int i = 0; i <= nt; ++i) {
            const double t = -reach + 2.0 * reach * i / nt;
            const double w = (i == 0 || i == nt) ? 0.5 : 1.0;
            acc += w * f(cq + t * dirq, cp + t * dirp);
        }
        for (double t : {-reach, reach})
            if (f(cq + t * dirq, cp + t * dirp) > 1e-6) {
                out.warning = true;
                out.message = "integration line exits the sampled box";
            }
        out.value(k) = acc * (2.0 * reach / nt) / s;
    }
    return out;
}

// Tomogram of a line-supported density: T(X) = g(X/(mu+nu)) / |mu+nu|.
inline Eigen::VectorXd classical_tomogram(const LineClassicalDensity& f, double mu, double nu,
                                          const UniformGrid& X_grid) {
    const double denom = mu + nu;
    if (denom == 0.0)
        throw std::domain_error("classical_tomogram: mu + nu = 0 degenerate for a diagonal line density");
    Eigen::VectorXd out(X_grid.count);
    for (std::size_t k = 0; k < X_grid.count; ++k)
        out(k) = f.g(X_grid.point(k) / denom) / std::abs(denom);
    return out;
}

} // namespace qtomo
