#pragma once
// Wire formats. JSON carries states, fields, generators and reports (every
// document versioned with "schema": 1); trajectories go to CSV with one row
// per recorded sample and per-row entropy columns.
//
// All numeric output is decimal with 17 significant digits, enough to
// round-trip doubles exactly, and all loops run in a fixed order, so a given
// input always serializes to identical bytes.

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rsfkit/bogoliubov.hpp"
#include "rsfkit/common.hpp"
#include "rsfkit/dynamics.hpp"
#include "rsfkit/entanglement.hpp"
#include "rsfkit/entropy.hpp"
#include "rsfkit/reduced_field.hpp"
#include "rsfkit/scenarios.hpp"
#include "rsfkit/symplectic.hpp"

namespace rsfkit::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

using AnyGenerator = std::variant<GaussianGenerator, RKEGenerator, BogoliubovFrame>;
using AnyState = std::variant<QuadratureState, ReducedField>;

// --- json primitives ----------------------------------------------------

namespace detail {

inline const json& need(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(ctx + ": missing key \"" + key + "\"");
    return j.at(key);
}

inline double need_number(const json& j, const char* key, const std::string& ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_number()) throw ValidationError(ctx + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

inline Mat mat_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw ValidationError(what + " must be a non-empty 2-D array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ValidationError(what + " must be rectangular");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_number())
                throw ValidationError(what + " entries must be numbers");
            m(i, k) = j[i][k].get<double>();
        }
    }
    return m;
}

inline Vec vec_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array");
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ValidationError(what + " entries must be numbers");
        v(i) = j[i].get<double>();
    }
    return v;
}

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

// Complex matrices travel as separate re/im 2-D arrays; a missing im part
// means purely real. allow_empty covers noise matrices with zero rows.
inline CMat cmat_from_json(const json& j, const char* re_key, const char* im_key,
                           const std::string& ctx, bool allow_empty = false,
                           Eigen::Index empty_cols = 0) {
    const json& jre = need(j, re_key, ctx);
    if (allow_empty && jre.is_array() && jre.empty())
        return CMat::Zero(0, empty_cols);
    const Mat re = mat_from_json(jre, ctx + ": \"" + re_key + "\"");
    Mat im = Mat::Zero(re.rows(), re.cols());
    if (j.contains(im_key)) {
        im = mat_from_json(j.at(im_key), ctx + ": \"" + im_key + "\"");
        if (im.rows() != re.rows() || im.cols() != re.cols())
            throw ValidationError(ctx + ": re/im parts must have equal shapes");
    }
    CMat m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
}

inline CVec cvec_from_json(const json& j, const char* re_key, const char* im_key,
                           const std::string& ctx) {
    const Vec re = vec_from_json(need(j, re_key, ctx), ctx + ": \"" + re_key + "\"");
    Vec im = Vec::Zero(re.size());
    if (j.contains(im_key)) {
        im = vec_from_json(j.at(im_key), ctx + ": \"" + im_key + "\"");
        if (im.size() != re.size())
            throw ValidationError(ctx + ": re/im parts must have equal lengths");
    }
    CVec v(re.size());
    v.real() = re;
    v.imag() = im;
    return v;
}

}  // namespace detail

// --- states and fields --------------------------------------------------

inline json field_to_json(const ReducedField& rf) {
    json j;
    j["schema"] = kSchemaVersion;
    j["n_modes"] = rf.n_modes;
    j["r_re"] = detail::mat_to_json(rf.r.real());
    j["r_im"] = detail::mat_to_json(rf.r.imag());
    j["alpha_re"] = detail::vec_to_json(rf.alpha.real());
    j["alpha_im"] = detail::vec_to_json(rf.alpha.imag());
    return j;
}

inline ReducedField field_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "reduced field";
    CMat r = detail::cmat_from_json(j, "r_re", "r_im", ctx);
    CVec alpha = detail::cvec_from_json(j, "alpha_re", "alpha_im", ctx);
    if (j.contains("n_modes")
        && j.at("n_modes").get<Eigen::Index>() != r.rows())
        throw ValidationError(ctx + ": \"n_modes\" disagrees with the r matrix");
    return ReducedField(std::move(r), std::move(alpha), tol);
}

inline json state_to_json(const QuadratureState& state) {
    json j;
    j["schema"] = kSchemaVersion;
    j["n_modes"] = state.n_modes;
    j["V"] = detail::mat_to_json(state.V);
    j["xi"] = detail::vec_to_json(state.xi);
    return j;
}

inline QuadratureState state_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "quadrature state";
    Mat V = detail::mat_from_json(detail::need(j, "V", ctx), ctx + ": \"V\"");
    Vec xi = detail::vec_from_json(detail::need(j, "xi", ctx), ctx + ": \"xi\"");
    if (j.contains("n_modes") && j.at("n_modes").get<Eigen::Index>() * 2 != V.rows())
        throw ValidationError(ctx + ": \"n_modes\" disagrees with V");
    return QuadratureState(std::move(V), std::move(xi), tol);
}

// A state spec is either an explicit state/field document or a named preset:
//   {"preset":"vacuum","n_modes":N} | {"preset":"thermal","n_bar":[...]}
//   {"preset":"coherent","alpha_re":[...],"alpha_im":[...]}
//   {"preset":"squeezed","s":x} | {"preset":"tmsv","s":x}
inline AnyState state_spec_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "initial state";
    if (j.contains("preset")) {
        const std::string preset = j.at("preset").get<std::string>();
        if (preset == "vacuum") {
            return vacuum_state(static_cast<int>(
                detail::need_number(j, "n_modes", ctx)));
        }
        if (preset == "thermal") {
            return thermal_state(detail::vec_from_json(
                detail::need(j, "n_bar", ctx), ctx + ": \"n_bar\""));
        }
        if (preset == "coherent") {
            return coherent_state(
                detail::cvec_from_json(j, "alpha_re", "alpha_im", ctx));
        }
        if (preset == "squeezed")
            return squeezed_vacuum_state(detail::need_number(j, "s", ctx));
        if (preset == "tmsv") return tmsv_state(detail::need_number(j, "s", ctx));
        throw ValidationError(ctx + ": unknown preset \"" + preset + "\"");
    }
    if (j.contains("V")) return state_from_json(j, tol);
    if (j.contains("r_re")) return field_from_json(j, tol);
    throw ValidationError(ctx + ": expected a preset, a V/xi document, or an "
                          "r/alpha document");
}

// --- generators ---------------------------------------------------------

inline json generator_to_json(const GaussianGenerator& gen) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "gaussian";
    j["n_modes"] = gen.n_modes;
    j["G"] = detail::mat_to_json(gen.G);
    j["C_re"] = detail::mat_to_json(gen.C.real());
    j["C_im"] = detail::mat_to_json(gen.C.imag());
    json terms = json::array();
    for (const auto& term : gen.scattering)
        terms.push_back({{"w", term.w}, {"K", detail::mat_to_json(term.K)}});
    j["scattering"] = std::move(terms);
    return j;
}

inline json generator_to_json(const RKEGenerator& gen) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "rke";
    j["n_modes"] = gen.n_modes;
    j["h_re"] = detail::mat_to_json(gen.h.real());
    j["h_im"] = detail::mat_to_json(gen.h.imag());
    j["zeta_re"] = detail::vec_to_json(gen.zeta.real());
    j["zeta_im"] = detail::vec_to_json(gen.zeta.imag());
    j["gamma_up_re"] = detail::mat_to_json(gen.gamma_up.real());
    j["gamma_up_im"] = detail::mat_to_json(gen.gamma_up.imag());
    j["gamma_down_re"] = detail::mat_to_json(gen.gamma_down.real());
    j["gamma_down_im"] = detail::mat_to_json(gen.gamma_down.imag());
    json terms = json::array();
    for (const auto& term : gen.scattering)
        terms.push_back({{"w", term.w},
                         {"u_re", detail::mat_to_json(term.u.real())},
                         {"u_im", detail::mat_to_json(term.u.imag())}});
    j["scattering"] = std::move(terms);
    return j;
}

inline GaussianGenerator gaussian_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "gaussian generator";
    Mat G = detail::mat_from_json(detail::need(j, "G", ctx), ctx + ": \"G\"");
    CMat C = CMat::Zero(0, G.rows());
    if (j.contains("C_re"))
        C = detail::cmat_from_json(j, "C_re", "C_im", ctx, true, G.rows());
    std::vector<KScatteringTerm> terms;
    if (j.contains("scattering")) {
        const json& arr = j.at("scattering");
        if (!arr.is_array()) throw ValidationError(ctx + ": \"scattering\" must be a list");
        for (const json& t : arr)
            terms.push_back({detail::need_number(t, "w", ctx),
                             detail::mat_from_json(detail::need(t, "K", ctx),
                                                   ctx + ": scattering \"K\"")});
    }
    return GaussianGenerator(std::move(G), std::move(C), std::move(terms), tol);
}

inline RKEGenerator rke_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "rke generator";
    CMat h = detail::cmat_from_json(j, "h_re", "h_im", ctx);
    const Eigen::Index N = h.rows();
    CVec zeta = CVec::Zero(N);
    if (j.contains("zeta_re")) zeta = detail::cvec_from_json(j, "zeta_re", "zeta_im", ctx);
    CMat gup = CMat::Zero(N, N);
    if (j.contains("gamma_up_re"))
        gup = detail::cmat_from_json(j, "gamma_up_re", "gamma_up_im", ctx);
    CMat gdown = CMat::Zero(N, N);
    if (j.contains("gamma_down_re"))
        gdown = detail::cmat_from_json(j, "gamma_down_re", "gamma_down_im", ctx);
    std::vector<UScatteringTerm> terms;
    if (j.contains("scattering")) {
        const json& arr = j.at("scattering");
        if (!arr.is_array()) throw ValidationError(ctx + ": \"scattering\" must be a list");
        for (const json& t : arr)
            terms.push_back({detail::need_number(t, "w", ctx),
                             detail::cmat_from_json(t, "u_re", "u_im",
                                                    ctx + ": scattering")});
    }
    return RKEGenerator(std::move(h), std::move(zeta), std::move(gup),
                        std::move(gdown), std::move(terms), tol);
}

// Bogoliubov frames come either raw ({"X_re","X_im","dX_re","dX_im"}) or as
// a built-in path:
//   {"path":"amplification","kappa":[...],"t":x}
//   {"path":"beam_splitter","theta":rate,"t":x,"n_modes":N}
inline BogoliubovFrame bogoliubov_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "bogoliubov frame";
    if (j.contains("path")) {
        const std::string path = j.at("path").get<std::string>();
        if (path == "amplification") {
            const json& jk = detail::need(j, "kappa", ctx);
            Vec kappa = jk.is_number() ? Vec::Constant(1, jk.get<double>())
                                       : detail::vec_from_json(jk, ctx + ": \"kappa\"");
            return amplification_frame(kappa, detail::need_number(j, "t", ctx), tol);
        }
        if (path == "beam_splitter") {
            const int n = j.contains("n_modes")
                              ? static_cast<int>(detail::need_number(j, "n_modes", ctx))
                              : 1;
            return beam_splitter_frame(detail::need_number(j, "theta", ctx),
                                       detail::need_number(j, "t", ctx), n, tol);
        }
        throw ValidationError(ctx + ": unknown path \"" + path + "\"");
    }
    CMat X = detail::cmat_from_json(j, "X_re", "X_im", ctx);
    CMat dX = detail::cmat_from_json(j, "dX_re", "dX_im", ctx);
    return BogoliubovFrame(std::move(X), std::move(dX), tol);
}

inline AnyGenerator generator_from_json(const json& j, double tol = kDefaultTol) {
    const std::string type =
        detail::need(j, "type", "generator").get<std::string>();
    if (type == "gaussian") return gaussian_from_json(j, tol);
    if (type == "rke") return rke_from_json(j, tol);
    if (type == "bogoliubov") return bogoliubov_from_json(j, tol);
    throw ValidationError("generator: unknown type \"" + type + "\"");
}

// --- reports ------------------------------------------------------------

inline json report_to_json(const GaussianCompatibility& rep) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "gaussian";
    j["compatible"] = rep.compatible;
    j["comm_JG"] = rep.comm_G_norm;
    j["comm_JIC"] = rep.comm_IC_norm;
    json per_k = json::array();
    for (const auto& chk : rep.scattering)
        per_k.push_back({{"tkt_transpose_norm", chk.tkt_transpose_norm},
                         {"tkt_unitarity", chk.unitarity_defect},
                         {"ok", chk.ok}});
    j["per_K"] = std::move(per_k);
    return j;
}

inline json report_to_json(const BogoliubovCompatibility& rep) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "bogoliubov";
    j["compatible"] = rep.compatible;
    j["X_downS_norm"] = rep.down_s_norm;
    return j;
}

inline json report_to_json(const EntropyReport& rep) {
    json j;
    j["schema"] = kSchemaVersion;
    j["s_v"] = rep.s_v;
    j["s_w"] = rep.s_w;
    j["bound_ok"] = rep.bound_ok;
    return j;
}

inline json standard_form_to_json(const StandardFormParams& p) {
    json j;
    j["a"] = p.a;
    j["b"] = p.b;
    j["c_plus"] = p.c_plus;
    j["c_minus"] = p.c_minus;
    return j;
}

// --- run configuration --------------------------------------------------

struct RunConfig {
    std::string picture;  // "symplectic" | "rsf"
    AnyGenerator generator;
    AnyState initial_state;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-3;
    int record_stride = 1;
    std::string output_path;  // empty = stdout
};

inline RunConfig run_config_from_json(const json& j, double tol = kDefaultTol) {
    const std::string ctx = "run config";
    RunConfig cfg{std::string(),
                  generator_from_json(detail::need(j, "generator", ctx), tol),
                  state_spec_from_json(detail::need(j, "initial_state", ctx), tol)};
    cfg.picture = j.contains("picture") ? j.at("picture").get<std::string>()
                                        : std::string("symplectic");
    if (cfg.picture != "symplectic" && cfg.picture != "rsf")
        throw ValidationError(ctx + ": picture must be \"symplectic\" or \"rsf\"");
    if (j.contains("t0")) cfg.t0 = detail::need_number(j, "t0", ctx);
    if (j.contains("t1")) cfg.t1 = detail::need_number(j, "t1", ctx);
    if (j.contains("dt")) cfg.dt = detail::need_number(j, "dt", ctx);
    if (j.contains("record_stride"))
        cfg.record_stride = static_cast<int>(detail::need_number(j, "record_stride", ctx));
    if (j.contains("output_path"))
        cfg.output_path = j.at("output_path").get<std::string>();
    require(cfg.dt > 0.0, ctx + ": dt must be positive");
    require(cfg.t1 > cfg.t0, ctx + ": t1 must exceed t0");
    require(cfg.record_stride >= 1, ctx + ": record_stride must be >= 1");
    return cfg;
}

// --- CSV ----------------------------------------------------------------

// %.17g: shortest decimal form with 17 significant digits, which round-trips
// IEEE doubles exactly.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_csv(std::ostream& os, const SymplecticTrajectory& traj,
                      double tol = kTrajectoryTol) {
    require(!traj.states.empty(), "write_csv: empty trajectory");
    const int twoN = 2 * traj.states.front().n_modes;
    os << "t";
    for (int i = 0; i < twoN; ++i)
        for (int k = 0; k < twoN; ++k) os << ",V_" << i << "_" << k;
    for (int i = 0; i < twoN; ++i) os << ",xi_" << i;
    os << ",s_v,s_w\n";
    for (std::size_t row = 0; row < traj.states.size(); ++row) {
        const QuadratureState& s = traj.states[row];
        os << format_double(traj.times[row]);
        for (int i = 0; i < twoN; ++i)
            for (int k = 0; k < twoN; ++k) os << ',' << format_double(s.V(i, k));
        for (int i = 0; i < twoN; ++i) os << ',' << format_double(s.xi(i));
        const EntropyReport rep = entropy_bounds(reduce(s, tol), Units{}, tol);
        os << ',' << format_double(rep.s_v) << ',' << format_double(rep.s_w) << '\n';
    }
}

inline void write_csv(std::ostream& os, const RKETrajectory& traj,
                      double tol = kTrajectoryTol) {
    require(!traj.fields.empty(), "write_csv: empty trajectory");
    const int N = traj.fields.front().n_modes;
    os << "t";
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k)
            os << ",r_re_" << i << "_" << k << ",r_im_" << i << "_" << k;
    for (int i = 0; i < N; ++i) os << ",alpha_re_" << i << ",alpha_im_" << i;
    os << ",s_v,s_w\n";
    for (std::size_t row = 0; row < traj.fields.size(); ++row) {
        const ReducedField& f = traj.fields[row];
        os << format_double(traj.times[row]);
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k)
                os << ',' << format_double(f.r(i, k).real()) << ','
                   << format_double(f.r(i, k).imag());
        for (int i = 0; i < N; ++i)
            os << ',' << format_double(f.alpha(i).real()) << ','
               << format_double(f.alpha(i).imag());
        const EntropyReport rep = entropy_bounds(f, Units{}, tol);
        os << ',' << format_double(rep.s_v) << ',' << format_double(rep.s_w) << '\n';
    }
}

struct ParsedTrajectory {
    std::string picture;  // "symplectic" | "rsf"
    SymplecticTrajectory symplectic;
    RKETrajectory rsf;
    std::vector<double> s_v;
    std::vector<double> s_w;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(ctx + ": bad numeric cell \"" + s + "\"");
    }
}

}  // namespace detail

// Parses a trajectory CSV produced by write_csv and re-validates every row's
// state against its picture's physicality check.
inline ParsedTrajectory read_csv(std::istream& is, double tol = kTrajectoryTol) {
    const std::string ctx = "trajectory csv";
    std::string line;
    if (!std::getline(is, line)) throw ValidationError(ctx + ": empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = detail::split_csv_line(line);

    ParsedTrajectory out;
    int twoN = 0, N = 0;
    std::size_t nV = 0, nr = 0;
    for (const std::string& h : header) {
        if (h.rfind("V_", 0) == 0) ++nV;
        if (h.rfind("r_re_", 0) == 0) ++nr;
    }
    if (nV > 0) {
        out.picture = "symplectic";
        twoN = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nV))));
        if (static_cast<std::size_t>(twoN) * twoN != nV || twoN % 2 != 0)
            throw ValidationError(ctx + ": malformed V columns");
        if (header.size() != 1 + nV + twoN + 2)
            throw ValidationError(ctx + ": unexpected column count");
    } else if (nr > 0) {
        out.picture = "rsf";
        N = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nr))));
        if (static_cast<std::size_t>(N) * N != nr)
            throw ValidationError(ctx + ": malformed r columns");
        if (header.size() != 1 + 2 * nr + 2 * N + 2)
            throw ValidationError(ctx + ": unexpected column count");
    } else {
        throw ValidationError(ctx + ": header names neither V nor r columns");
    }

    std::size_t row_no = 1;
    while (std::getline(is, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string rctx = ctx + " row " + std::to_string(row_no);
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw ValidationError(rctx + ": unexpected cell count");
        std::size_t c = 0;
        const double t = detail::parse_double(cells[c++], rctx);
        if (out.picture == "symplectic") {
            Mat V(twoN, twoN);
            for (int i = 0; i < twoN; ++i)
                for (int k = 0; k < twoN; ++k)
                    V(i, k) = detail::parse_double(cells[c++], rctx);
            Vec xi(twoN);
            for (int i = 0; i < twoN; ++i)
                xi(i) = detail::parse_double(cells[c++], rctx);
            QuadratureState state(std::move(V), std::move(xi), tol);
            if (!check_heisenberg(state, tol).physical)
                throw ValidationError(rctx + ": state fails the Heisenberg check");
            out.symplectic.times.push_back(t);
            out.symplectic.states.push_back(std::move(state));
        } else {
            CMat r(N, N);
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < N; ++k) {
                    const double re = detail::parse_double(cells[c++], rctx);
                    const double im = detail::parse_double(cells[c++], rctx);
                    r(i, k) = Complex(re, im);
                }
            CVec alpha(N);
            for (int i = 0; i < N; ++i) {
                const double re = detail::parse_double(cells[c++], rctx);
                const double im = detail::parse_double(cells[c++], rctx);
                alpha(i) = Complex(re, im);
            }
            ReducedField field(std::move(r), std::move(alpha), tol);
            rsfkit::detail::correlation_eigenvalues(field, tol);  // validity check
            out.rsf.times.push_back(t);
            out.rsf.fields.push_back(std::move(field));
        }
        out.s_v.push_back(detail::parse_double(cells[c++], ctx));
        out.s_w.push_back(detail::parse_double(cells[c++], ctx));
    }
    return out;
}

}  // namespace rsfkit::io
