// rsfkit command-line front end.
//
//   rsfkit check    --config gen.json   [--out report.json]
//   rsfkit convert  --config gen.json   [--out rke.json]
//   rsfkit evolve   --config run.json   [--out traj.csv] [--dt x] [--t1 x] [--picture p]
//   rsfkit entropy  --config state.json [--out report.json] [--oracle]
//   rsfkit demo <gto|amplification|stabilizability|tmsv> [--config overrides.json]
//
// Exit codes: 0 success, 1 validation/physicality failure (the violated
// condition is named on stderr), 2 I/O failure. RSFKIT_TOL overrides the
// default tolerance.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <rsfkit/rsfkit.hpp>

namespace {

using rsfkit::io::json;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double resolve_tol() {
    const char* env = std::getenv("RSFKIT_TOL");
    if (env == nullptr || *env == '\0') return rsfkit::kDefaultTol;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
        throw rsfkit::ValidationError("RSFKIT_TOL must be a positive number");
    return v;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoFailure(path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw IoFailure("cannot open " + out_path + " for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    if (!out) throw IoFailure("short write to " + out_path);
}

void emit_json(const json& j, const std::string& out_path) {
    emit(j.dump(2), out_path);
}

// Configs may restate the subcommand; reject a mismatch instead of silently
// running the wrong thing.
void check_command_field(const json& j, const std::string& command) {
    if (j.contains("command") && j.at("command").get<std::string>() != command)
        throw rsfkit::ValidationError("config names command \""
                                      + j.at("command").get<std::string>()
                                      + "\" but \"" + command + "\" was invoked");
}

int cmd_check(const std::string& config_path, const std::string& out_path,
              double tol) {
    json j = load_json(config_path);
    check_command_field(j, "check");
    if (j.contains("generator")) j = j.at("generator");
    const rsfkit::io::AnyGenerator gen = rsfkit::io::generator_from_json(j, tol);
    json report;
    if (const auto* g = std::get_if<rsfkit::GaussianGenerator>(&gen)) {
        report = rsfkit::io::report_to_json(rsfkit::check_gaussian_compatibility(*g, tol));
    } else if (const auto* f = std::get_if<rsfkit::BogoliubovFrame>(&gen)) {
        report = rsfkit::io::report_to_json(rsfkit::check_bogoliubov_compatibility(*f, tol));
    } else {
        // An RKE generator that parsed is already in reduced form; nothing to
        // gate on.
        report["schema"] = rsfkit::io::kSchemaVersion;
        report["type"] = "rke";
        report["compatible"] = true;
    }
    emit_json(report, out_path);
    return 0;
}

int cmd_convert(const std::string& config_path, const std::string& out_path,
                double tol) {
    json j = load_json(config_path);
    check_command_field(j, "convert");
    if (j.contains("generator")) j = j.at("generator");
    const rsfkit::io::AnyGenerator gen = rsfkit::io::generator_from_json(j, tol);
    rsfkit::RKEGenerator out = [&] {
        if (const auto* g = std::get_if<rsfkit::GaussianGenerator>(&gen))
            return rsfkit::gaussian_to_rke(*g, tol);
        if (const auto* f = std::get_if<rsfkit::BogoliubovFrame>(&gen))
            return rsfkit::bogoliubov_to_rke(*f, tol);
        return std::get<rsfkit::RKEGenerator>(gen);  // already reduced
    }();
    emit_json(rsfkit::io::generator_to_json(out), out_path);
    return 0;
}

int cmd_evolve(const std::string& config_path, const std::string& out_path,
               std::optional<double> dt, std::optional<double> t1,
               const std::string& picture, double tol) {
    json j = load_json(config_path);
    check_command_field(j, "evolve");
    rsfkit::io::RunConfig cfg = rsfkit::io::run_config_from_json(j, tol);
    if (!picture.empty()) {
        if (picture != "symplectic" && picture != "rsf")
            throw rsfkit::ValidationError("--picture must be symplectic or rsf");
        cfg.picture = picture;
    }
    if (dt) cfg.dt = *dt;
    if (t1) cfg.t1 = *t1;
    if (!out_path.empty()) cfg.output_path = out_path;
    rsfkit::require(cfg.dt > 0.0, "run config: dt must be positive");
    rsfkit::require(cfg.t1 > cfg.t0, "run config: t1 must exceed t0");

    rsfkit::EvolveOptions opts;
    opts.record_stride = cfg.record_stride;
    opts.validity_tol = std::max(tol, rsfkit::kTrajectoryTol);

    std::ostringstream csv;
    if (cfg.picture == "symplectic") {
        const auto* gen = std::get_if<rsfkit::GaussianGenerator>(&cfg.generator);
        if (gen == nullptr)
            throw rsfkit::ValidationError(
                "symplectic picture requires a gaussian generator");
        const auto* state = std::get_if<rsfkit::QuadratureState>(&cfg.initial_state);
        if (state == nullptr)
            throw rsfkit::ValidationError(
                "symplectic picture requires a quadrature-state initial state "
                "(a reduced field does not determine one)");
        const auto traj = rsfkit::evolve(*gen, *state, cfg.t0, cfg.t1, cfg.dt, opts);
        rsfkit::io::write_csv(csv, traj, opts.validity_tol);
    } else {
        rsfkit::RKEGenerator gen = [&] {
            if (const auto* g = std::get_if<rsfkit::GaussianGenerator>(&cfg.generator))
                return rsfkit::gaussian_to_rke(*g, tol);
            if (const auto* f = std::get_if<rsfkit::BogoliubovFrame>(&cfg.generator))
                return rsfkit::bogoliubov_to_rke(*f, tol);
            return std::get<rsfkit::RKEGenerator>(cfg.generator);
        }();
        const rsfkit::ReducedField initial = [&] {
            if (const auto* s = std::get_if<rsfkit::QuadratureState>(&cfg.initial_state))
                return rsfkit::reduce(*s, tol);
            return std::get<rsfkit::ReducedField>(cfg.initial_state);
        }();
        const auto traj = rsfkit::evolve(gen, initial, cfg.t0, cfg.t1, cfg.dt, opts);
        rsfkit::io::write_csv(csv, traj, opts.validity_tol);
    }
    emit(csv.str(), cfg.output_path);
    return 0;
}

int cmd_entropy(const std::string& config_path, const std::string& out_path,
                bool with_oracle, double tol) {
    json j = load_json(config_path);
    check_command_field(j, "entropy");
    if (j.contains("state")) j = j.at("state");
    const rsfkit::io::AnyState any = rsfkit::io::state_spec_from_json(j, tol);
    const rsfkit::ReducedField field = [&] {
        if (const auto* s = std::get_if<rsfkit::QuadratureState>(&any))
            return rsfkit::reduce(*s, tol);
        return std::get<rsfkit::ReducedField>(any);
    }();
    const rsfkit::EntropyReport rep = rsfkit::entropy_bounds(field, rsfkit::Units{}, tol);
    json out = rsfkit::io::report_to_json(rep);
    if (with_oracle) {
        if (field.n_modes != 1)
            throw rsfkit::ValidationError(
                "entropy --oracle supports single-mode fields only");
        const auto oracle = rsfkit::wehrl_quadrature_oracle(field, {}, rsfkit::Units{}, tol);
        out["oracle"] = {{"s_w", oracle.entropy},
                         {"abs_error", std::abs(oracle.entropy - rep.s_w)},
                         {"mass", oracle.mass},
                         {"mass_ok", oracle.mass_ok}};
    }
    emit_json(out, out_path);
    return 0;
}

json gto_demo(const json& overrides, double tol) {
    rsfkit::GTOParams params;
    params.S = rsfkit::Mat::Identity(2, 2);
    if (overrides.contains("S"))
        params.S = rsfkit::io::detail::mat_from_json(overrides.at("S"), "gto: \"S\"");
    if (overrides.contains("p")) params.p = overrides.at("p").get<double>();
    if (overrides.contains("dp_dt")) params.dp_dt = overrides.at("dp_dt").get<double>();
    if (overrides.contains("phi")) params.phi = overrides.at("phi").get<double>();
    if (overrides.contains("dphi_dt"))
        params.dphi_dt = overrides.at("dphi_dt").get<double>();
    if (overrides.contains("nu")) params.nu = overrides.at("nu").get<double>();
    const rsfkit::GTOReport rep = rsfkit::gto_generator(params, tol);
    json out;
    out["schema"] = rsfkit::io::kSchemaVersion;
    out["scenario"] = "gto";
    out["A"] = rsfkit::io::detail::mat_to_json(rep.A);
    out["JRJ"] = rsfkit::io::detail::mat_to_json(rep.JRJ);
    out["condition_norm"] = rep.condition_norm;
    out["compatible"] = rep.compatible;
    return out;
}

json amplification_demo(const json& overrides, double tol) {
    double kappa = 1.0, t = 1.0, n_bath = 0.0;
    if (overrides.contains("kappa")) kappa = overrides.at("kappa").get<double>();
    if (overrides.contains("t")) t = overrides.at("t").get<double>();
    if (overrides.contains("n_bath")) n_bath = overrides.at("n_bath").get<double>();
    const rsfkit::Vec kv = rsfkit::Vec::Constant(1, kappa);
    const auto frame = rsfkit::amplification_frame(kv, t, tol);
    const auto frame_report = rsfkit::check_bogoliubov_compatibility(frame, tol);
    json out;
    out["schema"] = rsfkit::io::kSchemaVersion;
    out["scenario"] = "amplification";
    out["kappa"] = kappa;
    out["t"] = t;
    out["n_bath"] = n_bath;
    out["frame"] = rsfkit::io::report_to_json(frame_report);
    out["converted"] = rsfkit::io::generator_to_json(
        rsfkit::bogoliubov_to_rke(frame, tol));
    out["direct"] = rsfkit::io::generator_to_json(
        rsfkit::amplification_rke(kv, rsfkit::Vec::Constant(1, n_bath), tol));
    return out;
}

json stabilizability_demo(const json& overrides, double tol) {
    double omega = 1.0, squeeze = 1.0;
    if (overrides.contains("omega")) omega = overrides.at("omega").get<double>();
    if (overrides.contains("squeeze")) squeeze = overrides.at("squeeze").get<double>();
    json out;
    out["schema"] = rsfkit::io::kSchemaVersion;
    out["scenario"] = "stabilizability";
    out["omega"] = omega;
    out["squeeze"] = squeeze;
    json entries = json::array();
    for (const auto& entry : rsfkit::stabilizability_suite(omega, squeeze, tol)) {
        entries.push_back({{"name", entry.name},
                           {"comm_JG", entry.comm_G_norm},
                           {"comm_JIC", entry.comm_IC_norm},
                           {"hamiltonian_ok", entry.verdict_G},
                           {"dissipator_ok", entry.verdict_IC}});
    }
    out["entries"] = std::move(entries);
    return out;
}

json tmsv_demo(double s, double tol) {
    const auto tmsv = rsfkit::tmsv_state(s);
    const auto sf = rsfkit::standard_form(tmsv, tol);
    const auto field = rsfkit::reduce(tmsv, tol);
    const rsfkit::CMat r_alpha = field.r - field.alpha * field.alpha.adjoint();
    const auto counterpart_state = rsfkit::separable_counterpart(r_alpha, tol);
    const auto sf2 = rsfkit::standard_form(counterpart_state, tol);
    const auto field2 = rsfkit::reduce(counterpart_state, tol);
    const bool witness_tmsv = rsfkit::entanglement_necessary_condition(sf);
    const bool witness_cp = rsfkit::entanglement_necessary_condition(sf2);
    json out;
    out["schema"] = rsfkit::io::kSchemaVersion;
    out["scenario"] = "tmsv";
    out["squeezing"] = s;
    out["tmsv"] = {{"standard_form", rsfkit::io::standard_form_to_json(sf)},
                   {"entanglement_witness", witness_tmsv},
                   {"field", rsfkit::io::field_to_json(field)}};
    out["counterpart"] = {{"standard_form", rsfkit::io::standard_form_to_json(sf2)},
                          {"entanglement_witness", witness_cp},
                          {"field", rsfkit::io::field_to_json(field2)}};
    out["erasure"] = witness_tmsv && !witness_cp
                     && (field.r - field2.r).norm() <= 1e-8
                     && (field.alpha - field2.alpha).norm() <= 1e-8;
    return out;
}

int cmd_demo(const std::string& name, const std::string& config_path,
             const std::string& out_path, double squeezing, double tol) {
    json overrides = json::object();
    if (!config_path.empty()) {
        overrides = load_json(config_path);
        check_command_field(overrides, "demo");
    }
    json out;
    if (name == "gto") {
        out = gto_demo(overrides, tol);
    } else if (name == "amplification") {
        out = amplification_demo(overrides, tol);
    } else if (name == "stabilizability") {
        out = stabilizability_demo(overrides, tol);
    } else if (name == "tmsv") {
        double s = squeezing;
        if (overrides.contains("squeezing")) s = overrides.at("squeezing").get<double>();
        out = tmsv_demo(s, tol);
    } else {
        throw rsfkit::ValidationError("unknown demo \"" + name
                                      + "\" (gto, amplification, stabilizability, tmsv)");
    }
    emit_json(out, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced-state-of-the-field toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, picture, demo_name;
    std::optional<double> dt_flag, t1_flag;
    bool with_oracle = false;
    double squeezing = 0.5;

    auto* check = app.add_subcommand("check", "compatibility report for a generator");
    check->add_option("--config", config_path, "generator JSON")->required();
    check->add_option("--out", out_path, "write report here instead of stdout");

    auto* convert = app.add_subcommand("convert", "convert a generator to reduced form");
    convert->add_option("--config", config_path, "generator JSON")->required();
    convert->add_option("--out", out_path, "write generator here instead of stdout");

    auto* evolve = app.add_subcommand("evolve", "integrate a trajectory, emit CSV");
    evolve->add_option("--config", config_path, "run-config JSON")->required();
    evolve->add_option("--out", out_path, "write CSV here instead of stdout");
    evolve->add_option("--dt", dt_flag, "override time step");
    evolve->add_option("--t1", t1_flag, "override end time");
    evolve->add_option("--picture", picture, "symplectic | rsf");

    auto* entropy = app.add_subcommand("entropy", "both entropies of a state");
    entropy->add_option("--config", config_path, "state/field JSON")->required();
    entropy->add_option("--out", out_path, "write report here instead of stdout");
    entropy->add_flag("--oracle", with_oracle, "include quadrature cross-check");

    auto* demo = app.add_subcommand("demo", "run a named scenario");
    demo->add_option("name", demo_name, "gto | amplification | stabilizability | tmsv")
        ->required();
    demo->add_option("--config", config_path, "parameter overrides JSON");
    demo->add_option("--out", out_path, "write JSON here instead of stdout");
    demo->add_option("--squeezing", squeezing, "tmsv squeezing parameter");

    CLI11_PARSE(app, argc, argv);

    try {
        const double tol = resolve_tol();
        if (app.got_subcommand(check)) return cmd_check(config_path, out_path, tol);
        if (app.got_subcommand(convert)) return cmd_convert(config_path, out_path, tol);
        if (app.got_subcommand(evolve))
            return cmd_evolve(config_path, out_path, dt_flag, t1_flag, picture, tol);
        if (app.got_subcommand(entropy))
            return cmd_entropy(config_path, out_path, with_oracle, tol);
        if (app.got_subcommand(demo))
            return cmd_demo(demo_name, config_path, out_path, squeezing, tol);
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const rsfkit::IncompatibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const rsfkit::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
