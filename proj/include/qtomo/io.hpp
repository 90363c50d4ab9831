#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "classify.hpp"
#include "spin.hpp"
#include "tomography.hpp"

namespace qtomo {

using json = nlohmann::json;

inline constexpr const char* schema_tag = "qtomo/1";

// ---------------------------------------------------------------------------
// Schema-checked field access; errors carry the JSON path of the offender
// ---------------------------------------------------------------------------

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& why) {
    throw std::invalid_argument("parse error at " + path + ": " + why);
}

inline const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path + "." + key, "missing field");
    return *it;
}

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) parse_fail(path, "expected a number");
    return j.get<double>();
}

inline cplx complex_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) parse_fail(path, "expected [re, im]");
    return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

inline void check_schema(const json& j, const std::string& path, const char* kind) {
    const auto& tag = field(j, path, "schema");
    if (!tag.is_string() || tag.get<std::string>() != schema_tag)
        parse_fail(path + ".schema", std::string("expected \"") + schema_tag + "\"");
    const auto& k = field(j, path, "kind");
    if (!k.is_string() || k.get<std::string>() != kind)
        parse_fail(path + ".kind", std::string("expected \"") + kind + "\"");
}

} // namespace detail

inline json to_json(const UniformGrid& g) {
    return {{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

inline UniformGrid grid_from_json(const json& j, const std::string& path = "grid") {
    UniformGrid g;
    g.min = detail::number_at(detail::field(j, path, "min"), path + ".min");
    g.max = detail::number_at(detail::field(j, path, "max"), path + ".max");
    const auto& c = detail::field(j, path, "count");
    if (!c.is_number_unsigned()) detail::parse_fail(path + ".count", "expected a positive integer");
    g.count = c.get<std::size_t>();
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------
// Wave functions
// ---------------------------------------------------------------------------

inline json to_json(const WaveFunction& psi) {
    psi.validate();
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
        amps.push_back({psi.amplitudes(i).real(), psi.amplitudes(i).imag()});
    return {{"schema", schema_tag},
            {"kind", "wavefunction"},
            {"grid", to_json(psi.grid)},
            {"amplitudes", std::move(amps)}};
}

inline WaveFunction wavefunction_from_json(const json& j, const std::string& path = "$") {
    detail::check_schema(j, path, "wavefunction");
    WaveFunction psi;
    psi.grid = grid_from_json(detail::field(j, path, "grid"), path + ".grid");
    const auto& amps = detail::field(j, path, "amplitudes");
    if (!amps.is_array()) detail::parse_fail(path + ".amplitudes", "expected an array");
    if (amps.size() != psi.grid.count)
        detail::parse_fail(path + ".amplitudes", "length does not match grid.count");
    psi.amplitudes.resize(Eigen::Index(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i)
        psi.amplitudes(Eigen::Index(i)) =
            detail::complex_at(amps[i], path + ".amplitudes[" + std::to_string(i) + "]");
    psi.validate();
    return psi;
}

// ---------------------------------------------------------------------------
// Tomograms
// ---------------------------------------------------------------------------

inline json values_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXd values_from_json(const json& j, std::size_t rows, std::size_t cols,
                                        const std::string& path) {
    if (!j.is_array() || j.size() != rows) detail::parse_fail(path, "expected an array of rows");
    Eigen::MatrixXd out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rpath = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols)
            detail::parse_fail(rpath, "expected a row of " + std::to_string(cols) + " numbers");
        for (std::size_t c = 0; c < cols; ++c)
            out(Eigen::Index(r), Eigen::Index(c)) =
                detail::number_at(j[r][c], rpath + "[" + std::to_string(c) + "]");
    }
    return out;
}

inline json to_json(const SymplecticTomogram& t) {
    json params = json::array();
    for (const auto& [mu, nu] : t.params) params.push_back({mu, nu});
    return {{"schema", schema_tag},
            {"kind", "symplectic_tomogram"},
            {"x_grid", to_json(t.X_grid)},
            {"params", std::move(params)},
            {"values", values_to_json(t.values)}};
}

inline SymplecticTomogram symplectic_from_json(const json& j, const std::string& path = "$") {
    detail::check_schema(j, path, "symplectic_tomogram");
    SymplecticTomogram t;
    t.X_grid = grid_from_json(detail::field(j, path, "x_grid"), path + ".x_grid");
    const auto& params = detail::field(j, path, "params");
    if (!params.is_array()) detail::parse_fail(path + ".params", "expected an array");
    for (std::size_t i = 0; i < params.size(); ++i) {
        const std::string ppath = path + ".params[" + std::to_string(i) + "]";
        if (!params[i].is_array() || params[i].size() != 2)
            detail::parse_fail(ppath, "expected [mu, nu]");
        t.params.emplace_back(detail::number_at(params[i][0], ppath + "[0]"),
                              detail::number_at(params[i][1], ppath + "[1]"));
    }
    t.values = values_from_json(detail::field(j, path, "values"), t.params.size(), t.X_grid.count,
                                path + ".values");
    return t;
}

inline json to_json(const OpticalTomogram& t) {
    return {{"schema", schema_tag},
            {"kind", "optical_tomogram"},
            {"x_grid", to_json(t.X_grid)},
            {"theta_grid", to_json(t.theta_grid)},
            {"values", values_to_json(t.values)}};
}

inline OpticalTomogram optical_from_json(const json& j, const std::string& path = "$") {
    detail::check_schema(j, path, "optical_tomogram");
    OpticalTomogram t;
    t.X_grid = grid_from_json(detail::field(j, path, "x_grid"), path + ".x_grid");
    t.theta_grid = grid_from_json(detail::field(j, path, "theta_grid"), path + ".theta_grid");
    t.values = values_from_json(detail::field(j, path, "values"), t.theta_grid.count,
                                t.X_grid.count, path + ".values");
    return t;
}

// plot-ready CSV, one row per (theta, X) sample
inline std::string to_csv(const OpticalTomogram& t) {
    std::ostringstream out;
    out.precision(17);
    out << "X,theta,value\n";
    for (std::size_t r = 0; r < t.theta_grid.count; ++r)
        for (std::size_t c = 0; c < t.X_grid.count; ++c)
            out << t.X_grid.point(c) << ',' << t.theta_grid.point(r) << ','
                << t.values(Eigen::Index(r), Eigen::Index(c)) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Wigner functions and grid densities
// ---------------------------------------------------------------------------

inline json to_json(const WignerFunction& w) {
    return {{"schema", schema_tag},
            {"kind", "wigner"},
            {"q_grid", to_json(w.q_grid)},
            {"p_grid", to_json(w.p_grid)},
            {"values", values_to_json(w.values)}};
}

inline WignerFunction wigner_from_json(const json& j, const std::string& path = "$") {
    detail::check_schema(j, path, "wigner");
    WignerFunction w;
    w.q_grid = grid_from_json(detail::field(j, path, "q_grid"), path + ".q_grid");
    w.p_grid = grid_from_json(detail::field(j, path, "p_grid"), path + ".p_grid");
    w.values = values_from_json(detail::field(j, path, "values"), w.q_grid.count, w.p_grid.count,
                                path + ".values");
    return w;
}

inline json to_json(const DensityMatrixGrid& rho) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.entries.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.entries.cols(); ++c)
            row.push_back({rho.entries(r, c).real(), rho.entries(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return {{"schema", schema_tag},
            {"kind", "density"},
            {"grid", to_json(rho.grid)},
            {"entries", std::move(rows)}};
}

inline DensityMatrixGrid density_from_json(const json& j, const std::string& path = "$") {
    detail::check_schema(j, path, "density");
    DensityMatrixGrid rho;
    rho.grid = grid_from_json(detail::field(j, path, "grid"), path + ".grid");
    const auto& rows = detail::field(j, path, "entries");
    const std::size_t n = rho.grid.count;
    if (!rows.is_array() || rows.size() != n)
        detail::parse_fail(path + ".entries", "expected grid.count rows");
    rho.entries.resize(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rpath = path + ".entries[" + std::to_string(r) + "]";
        if (!rows[r].is_array() || rows[r].size() != n)
            detail::parse_fail(rpath, "expected grid.count entries");
        for (std::size_t c = 0; c < n; ++c)
            rho.entries(Eigen::Index(r), Eigen::Index(c)) =
                detail::complex_at(rows[r][c], rpath + "[" + std::to_string(c) + "]");
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Spin tomograms and qubit densities
// ---------------------------------------------------------------------------

inline json to_json(const std::vector<SpinTomogramPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts)
        arr.push_back({{"theta", p.theta}, {"phi", p.phi}, {"probs", {p.probs(0), p.probs(1)}}});
    return {{"schema", schema_tag}, {"kind", "spin_tomogram"}, {"points", std::move(arr)}};
}

inline std::vector<SpinTomogramPoint> spin_tomogram_from_json(const json& j,
                                                              const std::string& path = "$") {
    detail::check_schema(j, path, "spin_tomogram");
    const auto& arr = detail::field(j, path, "points");
    if (!arr.is_array()) detail::parse_fail(path + ".points", "expected an array");
    std::vector<SpinTomogramPoint> pts(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ppath = path + ".points[" + std::to_string(i) + "]";
        pts[i].theta = detail::number_at(detail::field(arr[i], ppath, "theta"), ppath + ".theta");
        pts[i].phi = detail::number_at(detail::field(arr[i], ppath, "phi"), ppath + ".phi");
        const auto& pr = detail::field(arr[i], ppath, "probs");
        if (!pr.is_array() || pr.size() != 2)
            detail::parse_fail(ppath + ".probs", "expected [p_plus, p_minus]");
        pts[i].probs(0) = detail::number_at(pr[0], ppath + ".probs[0]");
        pts[i].probs(1) = detail::number_at(pr[1], ppath + ".probs[1]");
    }
    return pts;
}

inline json to_json(const QuditDensity& rho) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.entries.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.entries.cols(); ++c)
            row.push_back({rho.entries(r, c).real(), rho.entries(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return {{"schema", schema_tag}, {"kind", "qudit_density"}, {"entries", std::move(rows)}};
}

inline QuditDensity qudit_from_json(const json& j, const std::string& path = "$") {
    detail::check_schema(j, path, "qudit_density");
    const auto& rows = detail::field(j, path, "entries");
    if (!rows.is_array() || rows.empty()) detail::parse_fail(path + ".entries", "expected rows");
    const std::size_t n = rows.size();
    QuditDensity rho;
    rho.entries.resize(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rpath = path + ".entries[" + std::to_string(r) + "]";
        if (!rows[r].is_array() || rows[r].size() != n)
            detail::parse_fail(rpath, "expected a square matrix row");
        for (std::size_t c = 0; c < n; ++c)
            rho.entries(Eigen::Index(r), Eigen::Index(c)) =
                detail::complex_at(rows[r][c], rpath + "[" + std::to_string(c) + "]");
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Verdicts and reports
// ---------------------------------------------------------------------------

inline json to_json(const DomainVerdict& v) {
    return {{"schema", schema_tag},
            {"kind", "verdict"},
            {"quantum", v.quantum},
            {"classical", v.classical},
            {"min_eigenvalue", v.min_operator_eigenvalue},
            {"min_density", v.min_phase_density},
            {"tol_q", v.tol_q},
            {"tol_c", v.tol_c}};
}

inline json to_json(const MomentReport& r) {
    return {{"schema", schema_tag},
            {"kind", "uncertainty_report"},
            {"sigma_qq", r.sigma_qq},
            {"sigma_pp", r.sigma_pp},
            {"sigma_qp", r.sigma_qp},
            {"mean_q", r.q.mean},
            {"mean_p", r.p.mean},
            {"robertson", {{"lhs", r.robertson_lhs}, {"rhs", 0.25},
                           {"satisfied", r.robertson_lhs >= 0.25 - 1e-8}}},
            {"heisenberg_product", r.heisenberg_product}};
}

// complex CLI literal, "1.0+0.5i" / "2" / "-1.5i"
inline cplx parse_complex(const std::string& text) {
    const std::string s = text.empty() ? "0" : text;
    std::size_t pos = 0;
    auto read_num = [&](bool required) -> double {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && (std::isdigit(unsigned(s[pos])) || s[pos] == '.')) ++pos;
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            ++pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
            while (pos < s.size() && std::isdigit(unsigned(s[pos]))) ++pos;
        }
        if (pos == digits) {
            if (required) throw std::invalid_argument("parse_complex: bad literal '" + text + "'");
            return pos > start && s[start] == '-' ? -1.0 : 1.0; // bare sign before i
        }
        return std::stod(s.substr(start, pos - start));
    };
    double re = 0.0, im = 0.0;
    const double first = read_num(true);
    if (pos < s.size() && s[pos] == 'i') {
        im = first;
        ++pos;
    } else {
        re = first;
        if (pos < s.size()) {
            const double second = read_num(false);
            if (pos >= s.size() || s[pos] != 'i')
                throw std::invalid_argument("parse_complex: bad literal '" + text + "'");
            im = second;
            ++pos;
        }
    }
    if (pos != s.size()) throw std::invalid_argument("parse_complex: bad literal '" + text + "'");
    return {re, im};
}

} // namespace qtomo
