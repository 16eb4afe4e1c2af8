#include "cantorlim/config_file.hpp"

#include <fstream>
#include <json.hpp>

namespace cantorlim {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("field '" + field + "': expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Letter parse_letter(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<int>() < 0 || j.get<int>() > 255)
        throw ConfigError("field '" + field + "': expected a letter index");
    return static_cast<Letter>(j.get<int>());
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        throw ConfigError("field '" + field + "': expected a number");
    return j[field].get<double>();
}

} // namespace

SystemConfig SystemConfig::parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("top level must be an object");

    SystemConfig cfg;
    cfg.raw_text = text;

    const bool has_preset = doc.contains("buzzard");
    const bool has_explicit = doc.contains("pieces") || doc.contains("branches");
    if (has_preset && has_explicit)
        throw ConfigError("'buzzard' preset block and explicit pieces/branches are mutually exclusive");
    if (!has_preset && !has_explicit)
        throw ConfigError("need either a 'buzzard' preset block or explicit pieces/branches");

    if (has_preset) {
        const json& b = doc["buzzard"];
        if (!b.is_object()) throw ConfigError("field 'buzzard': expected an object");
        BuzzardPresetConfig preset;
        preset.delta = require_number(b, "delta");
        if (b.contains("eta")) preset.eta = require_number(b, "eta");
        auto opt = [&](const char* k) -> std::optional<double> {
            if (!b.contains(k)) return std::nullopt;
            return require_number(b, k);
        };
        preset.c1 = opt("c1");
        preset.kappa0 = opt("kappa0");
        preset.kappa1 = opt("kappa1");
        preset.kappa2 = opt("kappa2");
        preset.c_prime = opt("c_prime");
        preset.lambda = opt("lambda");
        cfg.preset = preset;
        return cfg;
    }

    if (!doc.contains("alphabet")) throw ConfigError("field 'alphabet': missing");
    if (doc["alphabet"].is_number_integer()) {
        cfg.alphabet_size = doc["alphabet"].get<std::size_t>();
    } else {
        throw ConfigError("field 'alphabet': expected a letter count");
    }

    if (doc.contains("transitions")) {
        const json& t = doc["transitions"];
        if (t.is_string() && t.get<std::string>() == "full") {
            cfg.transitions_full = true;
        } else if (t.is_array()) {
            cfg.transitions_full = false;
            for (const auto& pair : t) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ConfigError("field 'transitions': expected pairs [from, to]");
                cfg.transition_pairs.emplace_back(parse_letter(pair[0], "transitions"),
                                                  parse_letter(pair[1], "transitions"));
            }
        } else {
            throw ConfigError("field 'transitions': expected \"full\" or a pair list");
        }
    }

    if (!doc["pieces"].is_array()) throw ConfigError("field 'pieces': expected an array");
    for (const auto& pj : doc["pieces"]) {
        PieceConfig pc;
        pc.letter = parse_letter(pj.at("letter"), "pieces.letter");
        pc.center = parse_complex(pj.at("center"), "pieces.center");
        pc.side = require_number(pj, "side");
        if (!(pc.side > 0.0)) throw ConfigError("field 'pieces.side': must be positive");
        cfg.pieces.push_back(pc);
    }

    if (!doc["branches"].is_array()) throw ConfigError("field 'branches': expected an array");
    for (const auto& bj : doc["branches"]) {
        BranchConfig bc;
        bc.image = parse_letter(bj.at("image"), "branches.image");
        bc.domain = parse_letter(bj.at("domain"), "branches.domain");
        const std::string kind = bj.value("kind", "affine");
        if (kind == "affine") {
            bc.quadratic = false;
        } else if (kind == "quadratic") {
            bc.quadratic = true;
            bc.quad = parse_complex(bj.at("quad"), "branches.quad");
        } else {
            throw ConfigError("field 'branches.kind': expected \"affine\" or \"quadratic\"");
        }
        bc.linear = parse_complex(bj.at("alpha"), "branches.alpha");
        bc.offset = parse_complex(bj.at("beta"), "branches.beta");
        cfg.branches.push_back(bc);
    }

    cfg.mu = require_number(doc, "mu");
    if (doc.contains("markov_slack")) cfg.markov_slack = require_number(doc, "markov_slack");

    if (doc.contains("base_points")) {
        if (!doc["base_points"].is_array()) throw ConfigError("field 'base_points': expected an array");
        for (const auto& bp : doc["base_points"])
            cfg.base_points.emplace_back(parse_letter(bp.at("letter"), "base_points.letter"),
                                         parse_complex(bp.at("point"), "base_points.point"));
    }
    return cfg;
}

SystemConfig SystemConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(text);
}

BuzzardParams SystemConfig::buzzard_params() const {
    if (!preset) throw ConfigError("configuration has no buzzard preset block");
    BuzzardParams p = BuzzardParams::preset(preset->delta);
    if (preset->c1) {
        p.c1 = *preset->c1;
        // dependent defaults follow the overridden scale
        const double q = p.q();
        p.kappa1 = q / (36.0 * (1.0 + q)) * (1.0 - 1e-9);
        p.kappa2 = 0.9 * p.kappa1;
        p.c_prime = q;
        const double c1sq = p.c1 * p.c1;
        const double lam = 9.0 * (c1sq - 1.0 + p.kappa0) / (8.0 * c1sq * p.kappa0) / 1.01;
        p.lambda_growth = lam;
    }
    if (preset->kappa0) p.kappa0 = *preset->kappa0;
    if (preset->kappa1) p.kappa1 = *preset->kappa1;
    if (preset->kappa2) p.kappa2 = *preset->kappa2;
    if (preset->c_prime) p.c_prime = *preset->c_prime;
    if (preset->lambda) p.lambda_growth = *preset->lambda;
    return p;
}

CantorSystem SystemConfig::build_system() const {
    if (preset) {
        if (preset->eta != 0.0) {
            PerturbedBuzzardSpec spec;
            spec.delta = preset->delta;
            spec.c1 = preset->c1 ? *preset->c1 : BuzzardParams::preset(preset->delta).c1;
            spec.eta = preset->eta;
            return make_perturbed_buzzard_system(spec);
        }
        return make_buzzard_system(buzzard_params());
    }

    Alphabet alphabet(alphabet_size);
    TransitionSet transitions = transitions_full ? TransitionSet::full(alphabet_size)
                                                 : TransitionSet(alphabet_size, transition_pairs);
    std::vector<Piece> ps;
    for (const auto& pc : pieces) {
        Piece p;
        p.letter = pc.letter;
        p.region = Square{pc.center, pc.side}.to_polygon();
        p.base_point = pc.center;
        ps.push_back(std::move(p));
    }
    for (const auto& [letter, point] : base_points)
        for (auto& p : ps)
            if (p.letter == letter) p.base_point = point;

    std::vector<Branch> bs;
    for (const auto& bc : branches) {
        if (!bc.quadratic) {
            bs.push_back(Branch::make_affine(bc.image, bc.domain, AffineMap{bc.linear, bc.offset}));
        } else {
            MapOracle oracle;
            const Complex lin = bc.linear, off = bc.offset, quad = bc.quad;
            oracle.f = [lin, off, quad](Complex z) { return lin * z + off + quad * z * z; };
            oracle.df = [lin, quad](Complex z) { return lin + 2.0 * quad * z; };
            oracle.fdiff = [lin, quad](Complex base, Complex s) {
                return s * (lin + quad * (2.0 * base + s));
            };
            bs.push_back(Branch::make_differentiable(bc.image, bc.domain, std::move(oracle), 1.0,
                                                     2.0 * std::abs(quad)));
        }
    }
    CantorSystemOptions opts;
    opts.markov_slack = markov_slack;
    return CantorSystem(std::move(alphabet), std::move(transitions), std::move(ps), std::move(bs), mu,
                        opts);
}

} // namespace cantorlim
