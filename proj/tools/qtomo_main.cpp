#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <qtomo/selftest.hpp>

namespace {

using qtomo::json;

json read_json(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text << "\n";
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump()); }

// evaluator from optical data via homogeneity: T(X, mu, nu) = T(X/s, theta)/s
// with s = |(mu, nu)|; linear interpolation in theta and X, the theta seam at
// pi handled through T(X, theta + pi) = T(-X, theta); X outside the stored
// window reads as 0 (tails)
qtomo::TomogramEvaluator evaluator_from_optical(const qtomo::OpticalTomogram& opt_in) {
    if (opt_in.theta_grid.count < 90)
        throw std::invalid_argument("classify: need at least 90 angles of coverage");
    auto opt = std::make_shared<qtomo::OpticalTomogram>(opt_in);
    return [opt](double X, double mu, double nu) {
        const double s = std::hypot(mu, nu);
        if (s < 1e-12) return 0.0;
        double theta = std::atan2(nu, mu);
        double x = X / s;
        if (theta < 0.0) {
            theta += qtomo::pi;
            x = -x;
        }
        if (x < opt->X_grid.min || x > opt->X_grid.max) return 0.0;
        const double ht = opt->theta_grid.spacing();
        const double ft = theta / ht;
        std::size_t t0 = std::size_t(std::max(0.0, std::floor(ft)));
        const double wt = ft - double(t0);
        const double hx = opt->X_grid.spacing();
        const double fx = (x - opt->X_grid.min) / hx;
        std::size_t i0 = std::min(std::size_t(std::floor(fx)), opt->X_grid.count - 2);
        const double wx = fx - double(i0);
        auto row_val = [&](std::size_t t, std::size_t i, double w) {
            return (1.0 - w) * opt->values(t, i) + w * opt->values(t, i + 1);
        };
        double lo, hi;
        if (t0 + 1 < opt->theta_grid.count) {
            lo = row_val(t0, i0, wx);
            hi = row_val(t0 + 1, i0, wx);
        } else {
            // wrap to theta = 0 with X mirrored
            lo = row_val(t0, i0, wx);
            const double fm = (-x - opt->X_grid.min) / hx;
            std::size_t m0 = std::min(std::size_t(std::max(0.0, std::floor(fm))),
                                      opt->X_grid.count - 2);
            hi = row_val(0, m0, fm - double(m0));
        }
        return ((1.0 - wt) * lo + wt * hi) / s;
    };
}

qtomo::TomogramEvaluator evaluator_from_input(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "wavefunction")
        return qtomo::evaluator_from_wavefunction(qtomo::wavefunction_from_json(j),
                                                  qtomo::UniformGrid{-60.0, 60.0, 2401});
    if (kind == "optical_tomogram")
        return evaluator_from_optical(qtomo::optical_from_json(j));
    if (kind == "symplectic_tomogram") {
        auto t = qtomo::symplectic_from_json(j);
        qtomo::check_reconstruction_coverage(t);
        return qtomo::evaluator_from_data(t);
    }
    throw std::invalid_argument("unsupported input kind '" + kind + "'");
}

json angles_to_json(const qtomo::BellAngles& a) {
    return {{"theta_a", a.theta_a}, {"phi_a", a.phi_a}, {"theta_b", a.theta_b},
            {"phi_b", a.phi_b},     {"theta_c", a.theta_c}, {"phi_c", a.phi_c},
            {"theta_d", a.theta_d}, {"phi_d", a.phi_d}};
}

int run_selftest() {
    bool all = true;
    for (const auto& r : qtomo::run_acceptance()) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        all = all && r.passed;
    }
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum state tomography toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

    std::string in = "-", out = "-";

    // state make
    auto* state = app.add_subcommand("state", "prepare states");
    state->require_subcommand(1);
    auto* make = state->add_subcommand("make", "build a wavefunction on a grid");
    std::string kind = "fock", alpha_lit = "1", phase_lit;
    int fock_n = 0;
    double beta = 0.0, gmin = -10.0, gmax = 10.0;
    std::size_t gcount = 1024;
    make->add_option("--kind", kind, "fock | coherent | squeezed")->
        check(CLI::IsMember({"fock", "coherent", "squeezed"}));
    make->add_option("--n", fock_n, "Fock level");
    make->add_option("--alpha", alpha_lit, "complex literal, e.g. 1.0+0.5i");
    make->add_option("--beta", beta, "squeezing log-scale");
    make->add_option("--grid-min", gmin);
    make->add_option("--grid-max", gmax);
    make->add_option("--grid-count", gcount);
    make->add_option("-o,--output", out, "output path, - for stdout");

    // tomogram forward / reconstruct
    auto* tomo = app.add_subcommand("tomogram", "optical tomograms");
    tomo->require_subcommand(1);
    auto* fwd = tomo->add_subcommand("forward", "Radon transform of a wavefunction");
    std::size_t angles = 180;
    double xmin = -12.0, xmax = 12.0;
    std::size_t xcount = 481;
    bool as_csv = false;
    fwd->add_option("--angles", angles, "number of theta samples in [0, pi)");
    fwd->add_option("--x-min", xmin);
    fwd->add_option("--x-max", xmax);
    fwd->add_option("--x-count", xcount);
    fwd->add_flag("--csv", as_csv, "emit X,theta,value CSV instead of JSON");
    fwd->add_option("-i,--input", in, "wavefunction JSON, - for stdin");
    fwd->add_option("-o,--output", out);

    auto* rec = tomo->add_subcommand("reconstruct", "inverse Radon transform");
    std::string target = "wigner";
    double qmin = -6.0, qmax = 6.0;
    std::size_t qcount = 121;
    rec->add_option("--target", target, "wigner | density")->
        check(CLI::IsMember({"wigner", "density"}));
    rec->add_option("--q-min", qmin);
    rec->add_option("--q-max", qmax);
    rec->add_option("--q-count", qcount);
    rec->add_option("-i,--input", in);
    rec->add_option("-o,--output", out);

    // classify
    auto* cls = app.add_subcommand("classify", "quantum / classical domain verdict");
    double tol_q = 5e-3, tol_c = 5e-3;
    cls->add_option("--tol-q", tol_q, "operator positivity tolerance");
    cls->add_option("--tol-c", tol_c, "phase-density positivity tolerance");
    cls->add_option("-i,--input", in);
    cls->add_option("-o,--output", out);

    // uncertainty
    auto* unc = app.add_subcommand("uncertainty", "moments, Robertson check, Phi(theta)");
    unc->add_option("-i,--input", in);
    unc->add_option("-o,--output", out);

    // spin tomogram / reconstruct
    auto* spin = app.add_subcommand("spin", "qubit tomograms");
    spin->require_subcommand(1);
    auto* stomo = spin->add_subcommand("tomogram", "sample Tr(P rho) on the sphere");
    int n_theta = 32, n_phi = 64;
    double one_theta = 0.0, one_phi = 0.0;
    bool single_point = false;
    stomo->add_option("--n-theta", n_theta, "Gauss-Legendre nodes in cos(theta)");
    stomo->add_option("--n-phi", n_phi, "uniform phi samples");
    auto* topt = stomo->add_option("--theta", one_theta, "single-point theta");
    stomo->add_option("--phi", one_phi, "single-point phi");
    stomo->add_option("-i,--input", in, "2x2 qudit_density JSON");
    stomo->add_option("-o,--output", out);
    stomo->callback([&] { single_point = topt->count() > 0; });

    auto* srec = spin->add_subcommand("reconstruct", "density from quadrature samples");
    srec->add_option("-i,--input", in, "spin_tomogram JSON on the quadrature nodes");
    srec->add_option("-o,--output", out);

    // bell
    auto* bell = app.add_subcommand("bell", "CHSH-type Bell analysis");
    std::string bell_state = "triplet";
    bool maximize = false;
    bell->add_option("--state", bell_state, "triplet | file path | -")
        ->default_str("triplet");
    bell->add_flag("--maximize", maximize, "search over measurement angles");
    std::vector<double> bell_angles;
    bell->add_option("--angles", bell_angles,
                     "theta_a phi_a theta_b phi_b theta_c phi_c theta_d phi_d")
        ->expected(8);
    bell->add_option("-o,--output", out);

    // evolve
    auto* evo = app.add_subcommand("evolve", "quadratic-Hamiltonian Wigner evolution");
    std::string ham = "harmonic";
    double omega = 1.0, time = 1.0;
    int steps = 1;
    evo->add_option("--hamiltonian", ham, "harmonic | free")->
        check(CLI::IsMember({"harmonic", "free"}));
    evo->add_option("--omega", omega, "oscillator frequency");
    evo->add_option("--time", time, "total evolution time");
    evo->add_option("--steps", steps, "snapshot count; > 1 writes numbered files");
    evo->add_option("-i,--input", in, "wigner JSON");
    evo->add_option("-o,--output", out);

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    (void)self;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (*make) {
            qtomo::UniformGrid g{gmin, gmax, gcount};
            qtomo::WaveFunction psi;
            if (kind == "fock") {
                psi = qtomo::make_fock(fock_n, g);
            } else if (kind == "coherent") {
                psi = qtomo::make_coherent(qtomo::parse_complex(alpha_lit), g);
            } else {
                psi = qtomo::make_squeezed_gaussian(qtomo::parse_complex(alpha_lit), beta, g);
            }
            write_json(out, qtomo::to_json(psi));
        } else if (*fwd) {
            auto psi = qtomo::wavefunction_from_json(read_json(in));
            const qtomo::UniformGrid theta{0.0, qtomo::pi * double(angles - 1) / double(angles),
                                           angles};
            auto opt = qtomo::optical_tomogram_from_wavefunction(
                psi, theta, qtomo::UniformGrid{xmin, xmax, xcount});
            if (as_csv)
                write_text(out, qtomo::to_csv(opt));
            else
                write_json(out, qtomo::to_json(opt));
        } else if (*rec) {
            auto j = read_json(in);
            const qtomo::UniformGrid qg{qmin, qmax, qcount};
            if (target == "wigner") {
                auto w = qtomo::reconstruct_wigner(qtomo::optical_from_json(j), qg, qg);
                write_json(out, qtomo::to_json(w));
            } else {
                auto rho = qtomo::reconstruct_density(evaluator_from_input(j), qg);
                write_json(out, qtomo::to_json(rho));
            }
        } else if (*cls) {
            auto v = qtomo::classify(evaluator_from_input(read_json(in)), tol_q, tol_c);
            write_json(out, qtomo::to_json(v));
        } else if (*unc) {
            auto j = read_json(in);
            auto rep = qtomo::moment_report(evaluator_from_input(j));
            json o = qtomo::to_json(rep);
            if (j.value("kind", "") == "optical_tomogram") {
                auto phi = qtomo::uncertainty_function(qtomo::optical_from_json(j));
                o["phi_min"] = phi.minCoeff();
            }
            write_json(out, o);
        } else if (*stomo) {
            auto rho = qtomo::qudit_from_json(read_json(in));
            if (rho.entries.rows() != 2)
                throw std::invalid_argument("spin tomogram: need a 2x2 density");
            std::vector<qtomo::SpinTomogramPoint> pts;
            if (single_point) {
                qtomo::SpinTomogramPoint p;
                p.theta = one_theta;
                p.phi = one_phi;
                p.probs(0) = (qtomo::projector_P(one_theta, one_phi) * rho.entries).trace().real();
                p.probs(1) = 1.0 - p.probs(0);
                pts.push_back(p);
            } else {
                std::vector<double> nodes, weights;
                qtomo::gauss_legendre(n_theta, nodes, weights);
                for (int i = 0; i < n_theta; ++i)
                    for (int jj = 0; jj < n_phi; ++jj) {
                        qtomo::SpinTomogramPoint p;
                        p.theta = std::acos(nodes[i]);
                        p.phi = 2.0 * qtomo::pi * jj / n_phi;
                        p.probs(0) =
                            (qtomo::projector_P(p.theta, p.phi) * rho.entries).trace().real();
                        p.probs(1) = 1.0 - p.probs(0);
                        pts.push_back(p);
                    }
            }
            write_json(out, qtomo::to_json(pts));
        } else if (*srec) {
            auto pts = qtomo::spin_tomogram_from_json(read_json(in));
            std::vector<double> thetas;
            for (const auto& p : pts)
                if (thetas.empty() || std::abs(p.theta - thetas.back()) > 1e-12)
                    thetas.push_back(p.theta);
            const int nt = int(thetas.size());
            if (nt == 0 || pts.size() % thetas.size() != 0)
                throw std::invalid_argument("spin reconstruct: points are not a quadrature grid");
            const int np = int(pts.size() / thetas.size());
            std::vector<double> nodes, weights;
            qtomo::gauss_legendre(nt, nodes, weights);
            for (int i = 0; i < nt; ++i)
                if (std::abs(std::acos(nodes[i]) - thetas[i]) > 1e-9)
                    throw std::invalid_argument(
                        "spin reconstruct: theta samples are not Gauss-Legendre nodes");
            const double wphi = 2.0 * qtomo::pi / np;
            Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
            for (std::size_t k = 0; k < pts.size(); ++k)
                acc += weights[k / np] * wphi * pts[k].probs(0) *
                       qtomo::dual_G(pts[k].theta, pts[k].phi);
            qtomo::QuditDensity rho;
            rho.entries = 0.5 * (acc + acc.adjoint().eval());
            write_json(out, qtomo::to_json(rho));
        } else if (*bell) {
            qtomo::QuditDensity rho;
            if (bell_state == "triplet")
                rho = qtomo::triplet_density();
            else
                rho = qtomo::qudit_from_json(read_json(bell_state));
            json o = {{"schema", qtomo::schema_tag}, {"kind", "bell"}};
            if (!bell_angles.empty()) {
                qtomo::BellAngles a{bell_angles[0], bell_angles[1], bell_angles[2],
                                    bell_angles[3], bell_angles[4], bell_angles[5],
                                    bell_angles[6], bell_angles[7]};
                const double b = qtomo::bell_number(rho, a);
                o["B"] = b;
                o["angles"] = angles_to_json(a);
                o["violated_classical_bound"] = std::abs(b) > 2.0;
            } else {
                auto best = qtomo::maximize_bell(rho);
                o["B_max"] = best.value;
                o["angles"] = angles_to_json(best.angles);
                o["violated_classical_bound"] = std::abs(best.value) > 2.0;
                o["cirelson_gap"] = 2.0 * std::sqrt(2.0) - std::abs(best.value);
            }
            write_json(out, o);
        } else if (*evo) {
            auto w = qtomo::wigner_from_json(read_json(in));
            auto h = ham == "free" ? qtomo::free_particle() : qtomo::harmonic_oscillator(omega);
            if (steps <= 1) {
                write_json(out, qtomo::to_json(qtomo::evolve_wigner(w, h, time)));
            } else {
                if (out == "-")
                    throw std::invalid_argument("evolve: --steps > 1 needs -o file prefix");
                for (int k = 1; k <= steps; ++k)
                    write_json(out + "." + std::to_string(k) + ".json",
                               qtomo::to_json(qtomo::evolve_wigner(w, h, time * k / steps)));
            }
        } else if (*self) {
            return run_selftest();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
