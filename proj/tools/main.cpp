#include <CLI11.hpp>

#include "cantorlim/config_file.hpp"
#include "cantorlim/horseshoe.hpp"
#include "cantorlim/report.hpp"
#include "cantorlim/svg_render.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

using namespace cantorlim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct CommonArgs {
    std::string config_path;
    int samples = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
    int depth = 10;
    double tol = 1e-9;
    std::string svg_path;
    std::string theta_str;
    std::string alpha_str = "1,0";
    std::string beta_str = "0,0";
    bool timings = false;
};

Complex parse_complex_arg(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("expected RE,IM in '" + s + "'");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("cannot parse complex value '" + s + "'");
    }
}

NegSequence parse_theta_arg(const std::string& s) {
    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            const int v = std::stoi(tok);
            if (v < 0 || v > 255) throw std::out_of_range("letter");
            letters.push_back(static_cast<Letter>(v));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse theta letter '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (letters.empty()) throw ConfigError("theta string is empty");
    return NegSequence(std::move(letters));
}

/// Backward-admissible root truncation ending at `last`.
NegSequence make_root_theta(const CantorSystem& sys, Letter last, std::size_t depth) {
    std::vector<Letter> rev{last};
    Letter cur = last;
    for (std::size_t i = 0; i < depth; ++i) {
        bool found = false;
        for (Letter a = 0; a < sys.alphabet().size(); ++a)
            if (sys.transitions().allows(a, cur)) {
                rev.push_back(a);
                cur = a;
                found = true;
                break;
            }
        if (!found) break;
    }
    std::vector<Letter> fwd(rev.rbegin(), rev.rend());
    return NegSequence(std::move(fwd));
}

std::uint64_t inputs_digest(const SystemConfig& cfg, const std::string& flags) {
    return fnv1a64(cfg.raw_text + "|" + flags);
}

void emit(const RunReport& rep, double wall_ms, bool timings) {
    std::cout << rep.to_text();
    if (timings) std::cerr << "wall_ms=" << format_double(wall_ms) << "\n";
}

void add_param_checks(RunReport& rep, const ParamReport& pr) {
    rep.add("param_checks", static_cast<std::int64_t>(pr.checks.size()));
    for (std::size_t i = 0; i < pr.checks.size(); ++i) {
        const auto& c = pr.checks[i];
        const std::string prefix = "check." + std::to_string(i) + ".";
        rep.add(prefix + "name", c.name);
        rep.add_bool(prefix + "pass", c.pass);
        rep.add(prefix + "slack", c.slack);
    }
    rep.add_bool("params_valid", pr.all_pass);
    rep.add("remark_x_squared", pr.remark_x_squared);
    rep.add("remark_bound", pr.remark_bound);
    rep.add_bool("remark_holds", pr.remark_holds);
}

int cmd_validate(const CommonArgs& args) {
    const SystemConfig cfg = SystemConfig::parse_file(args.config_path);
    RunReport rep("validate", inputs_digest(cfg, ""));

    bool ok = true;
    try {
        const CantorSystem sys = cfg.build_system();
        rep.add_bool("system_constructed", true);
        rep.add("letters", static_cast<std::int64_t>(sys.alphabet().size()));
        rep.add("mu", sys.mu());
        rep.add("max_contraction", sys.contraction_bound());
        rep.add("max_piece_diameter", sys.max_piece_diameter());
        rep.add_bool("affine", sys.affine());
    } catch (const CantorError& e) {
        rep.add_bool("system_constructed", false);
        rep.add("violation", e.what());
        ok = false;
    }

    if (cfg.preset) {
        try {
            const ParamReport pr = validate_params(cfg.buzzard_params());
            add_param_checks(rep, pr);
            ok = ok && pr.all_pass;
        } catch (const CantorError& e) {
            rep.add("violation", e.what());
            ok = false;
        }
    }
    emit(rep, 0.0, false);
    return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_limits(const CommonArgs& args) {
    const SystemConfig cfg = SystemConfig::parse_file(args.config_path);
    const NegSequence theta = parse_theta_arg(args.theta_str);
    RunReport rep("limits", inputs_digest(cfg, args.theta_str));
    const CantorSystem sys = cfg.build_system();

    try {
        const NormalizedIterate k = limit_geometry(sys, theta, args.tol);
        rep.add("depth_used", static_cast<std::int64_t>(k.depth));
        rep.add("error_radius", k.error_radius);
        if (k.exact_affine) {
            rep.add("alpha_re", k.affine_form.alpha.real());
            rep.add("alpha_im", k.affine_form.alpha.imag());
            rep.add("beta_re", k.affine_form.beta.real());
            rep.add("beta_im", k.affine_form.beta.imag());
        } else {
            const auto steps = iterate_step_sizes(
                sys, theta, std::min<std::size_t>(theta.truncation_depth(), args.depth));
            for (std::size_t i = 0; i < steps.size(); ++i)
                rep.add("step." + std::to_string(i + 1), steps[i]);
        }
    } catch (const TolUnreachable& e) {
        rep.add("error", e.what());
        rep.add("achievable_radius", e.achievable);
        emit(rep, 0.0, false);
        return kExitVerificationFailure;
    }
    emit(rep, 0.0, false);
    return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const SystemConfig cfg = SystemConfig::parse_file(args.config_path);
    // thread count is an execution detail, not an input: reports must be
    // byte-identical across worker counts
    const std::string flags =
        "samples=" + std::to_string(args.samples) + ";seed=" + std::to_string(args.seed);
    RunReport rep("verify", inputs_digest(cfg, flags));

    const BuzzardParams params = cfg.buzzard_params();
    SweepSpec spec;
    spec.samples = args.samples;
    spec.seed = args.seed;
    spec.threads = args.threads;

    SweepReport sweep;
    if (cfg.preset && cfg.preset->eta != 0.0) {
        const CantorSystem sys = cfg.build_system();
        const NegSequence root = make_root_theta(sys, kBuzzardCenterLetter, 24);
        sweep = verify_certificate(params, spec, sys, sys, root, root,
                                   default_transition_provider(params.kappa0 * 1e-3));
    } else {
        sweep = verify_certificate(params, spec);
    }

    rep.add("samples", static_cast<std::int64_t>(sweep.samples));
    rep.add("nmax", static_cast<std::int64_t>(sweep.nmax));
    rep.add("failures", static_cast<std::int64_t>(sweep.failures.size()));
    rep.add("param_failures", static_cast<std::int64_t>(sweep.param_failures.size()));
    rep.add("max_chain_len", static_cast<std::int64_t>(sweep.max_chain_len));
    rep.add("min_final_margin", sweep.min_final_margin);
    rep.add("min_kappa_seen", sweep.min_kappa_seen);
    for (std::size_t i = 0; i < sweep.param_failures.size(); ++i) {
        const std::string prefix = "param_failure." + std::to_string(i) + ".";
        rep.add(prefix + "name", sweep.param_failures[i].name);
        rep.add(prefix + "slack", sweep.param_failures[i].slack);
    }
    const std::size_t shown = std::min<std::size_t>(sweep.failures.size(), 32);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& f = sweep.failures[i];
        const std::string prefix = "failure." + std::to_string(i) + ".";
        rep.add(prefix + "sample", static_cast<std::int64_t>(f.sample));
        rep.add(prefix + "alpha_re", f.alpha.real());
        rep.add(prefix + "alpha_im", f.alpha.imag());
        rep.add(prefix + "beta_re", f.beta.real());
        rep.add(prefix + "beta_im", f.beta.imag());
        rep.add(prefix + "kappa", f.kappa);
        rep.add(prefix + "chain_len", static_cast<std::int64_t>(f.chain_len));
        rep.add(prefix + "reason", f.reason);
    }

    if (!args.svg_path.empty()) {
        std::ofstream out(args.svg_path, std::ios::binary);
        out << render_certificate_svg(params, sweep);
    }

    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(rep, ms, args.timings);
    return sweep.pass() ? kExitOk : kExitVerificationFailure;
}

int cmd_search(const CommonArgs& args) {
    const SystemConfig cfg = SystemConfig::parse_file(args.config_path);
    const Complex alpha = parse_complex_arg(args.alpha_str);
    const Complex beta = parse_complex_arg(args.beta_str);
    if (alpha == Complex{0.0, 0.0}) throw ConfigError("alpha must be nonzero");
    RunReport rep("search", inputs_digest(cfg, args.alpha_str + ";" + args.beta_str +
                                                   ";depth=" + std::to_string(args.depth)));
    const CantorSystem sys = cfg.build_system();

    const Letter root_letter = sys.alphabet().size() == 9 ? kBuzzardCenterLetter : Letter{0};
    const NegSequence root = args.theta_str.empty()
                                 ? make_root_theta(sys, root_letter, 4)
                                 : parse_theta_arg(args.theta_str);
    RelativeConfig rc{root, root, AffineMap{alpha, beta}};
    const SearchOutcome out = search_intersection(sys, sys, rc, args.depth);

    rep.add("result", out.kind == SearchOutcome::Kind::Witness ? "witness" : "exhausted");
    rep.add("nodes", static_cast<std::int64_t>(out.nodes_visited));
    if (out.kind == SearchOutcome::Kind::Witness) {
        rep.add("point_re", out.point.real());
        rep.add("point_im", out.point.imag());
        auto word_str = [](const FiniteWord& w) {
            std::string s;
            for (std::size_t i = 0; i < w.length(); ++i) {
                if (i) s += ",";
                s += std::to_string(static_cast<int>(w.at(i)));
            }
            return s;
        };
        rep.add("left_word", word_str(out.left_word));
        rep.add("right_word", word_str(out.right_word));
    } else {
        rep.add_bool("certified_empty", out.certified_empty);
        rep.add("deepest_linked_size", static_cast<std::int64_t>(out.deepest_linked_size));
    }
    emit(rep, 0.0, false);
    return kExitOk;
}

int cmd_render(const CommonArgs& args, const std::string& target) {
    const SystemConfig cfg = SystemConfig::parse_file(args.config_path);
    if (args.svg_path.empty()) throw ConfigError("render requires --svg OUTPUT");
    std::string svg;

    if (target == "cylinders") {
        const CantorSystem sys = cfg.build_system();
        std::vector<ConvexPolygon> polys;
        // all admissible words of size --depth
        std::vector<std::vector<Letter>> words;
        for (Letter a = 0; a < sys.alphabet().size(); ++a) words.push_back({a});
        for (int d = 0; d < args.depth; ++d) {
            std::vector<std::vector<Letter>> next;
            for (const auto& w : words)
                for (Letter b : sys.transitions().successors(w.back())) {
                    auto w2 = w;
                    w2.push_back(b);
                    next.push_back(std::move(w2));
                }
            words = std::move(next);
        }
        for (const auto& w : words) polys.push_back(cylinder(sys, FiniteWord(w)));
        svg = render_polygons_svg(polys, "cylinders depth " + std::to_string(args.depth));
    } else if (target == "lambda-slice") {
        const HorseshoeMap map(cfg.buzzard_params());
        svg = render_squares_svg(unstable_slice_cantor(map, args.depth),
                                 "unstable slice depth " + std::to_string(args.depth));
    } else if (target == "certificate-diagram") {
        const BuzzardParams params = cfg.buzzard_params();
        SweepSpec spec;
        spec.samples = std::min(args.samples, 2048);
        spec.seed = args.seed;
        spec.threads = args.threads;
        const SweepReport sweep = verify_certificate(params, spec);
        svg = render_certificate_svg(params, sweep);
    } else {
        throw ConfigError("unsupported render target '" + target + "'");
    }

    std::ofstream out(args.svg_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open SVG output: " + args.svg_path);
    out << svg;
    RunReport rep("render", inputs_digest(cfg, target + ";depth=" + std::to_string(args.depth)));
    rep.add("target", target);
    rep.add("output", args.svg_path);
    rep.add("bytes", static_cast<std::int64_t>(svg.size()));
    emit(rep, 0.0, false);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"limit geometries and stable-intersection certificates for conformal Cantor sets"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string render_target;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        auto* opt = sub->add_option("--config", args.config_path, "system definition file (JSON)");
        if (needs_config) opt->required();
        sub->add_option("--samples", args.samples, "sweep sample count");
        sub->add_option("--seed", args.seed, "RNG seed");
        sub->add_option("--threads", args.threads, "worker threads");
        sub->add_option("--depth", args.depth, "depth / word size");
        sub->add_option("--tol", args.tol, "certified tolerance");
        sub->add_option("--svg", args.svg_path, "SVG output path");
        sub->add_option("--theta", args.theta_str, "comma-separated letters, oldest first");
        sub->add_option("--alpha", args.alpha_str, "RE,IM of the right map's linear part");
        sub->add_option("--beta", args.beta_str, "RE,IM of the right map's translation");
        sub->add_flag("--timings", args.timings, "print wall time to stderr");
    };

    auto* validate = app.add_subcommand("validate", "check system and certificate invariants");
    add_common(validate);
    auto* limits_cmd = app.add_subcommand("limits", "limit geometry coefficients / step table");
    add_common(limits_cmd);
    limits_cmd->get_option("--theta")->required();
    auto* verify = app.add_subcommand("verify", "grid verification that L is recurrent");
    add_common(verify);
    auto* search = app.add_subcommand("search", "intersection search for a relative configuration");
    add_common(search);
    auto* render = app.add_subcommand("render", "emit an SVG diagram");
    add_common(render);
    render->add_option("target", render_target, "lambda-slice | certificate-diagram | cylinders")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (validate->parsed()) return cmd_validate(args);
        if (limits_cmd->parsed()) return cmd_limits(args);
        if (verify->parsed()) return cmd_verify(args);
        if (search->parsed()) return cmd_search(args);
        if (render->parsed()) return cmd_render(args, render_target);
    } catch (const ConfigError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const SymbolicError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const LimitsError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const CantorError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const CertificateError& e) {
        std::cerr << "certificate error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitInputError;
}
