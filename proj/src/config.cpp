#include "inj/config.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "inj/holo.hpp"

namespace inj {

namespace {

using nlohmann::ordered_json;

void reject_unknown(const ordered_json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw ConfigError(std::string("unknown field '") + key + "' in " + where);
    }
}

double require_number(const ordered_json& j, const char* what) {
    if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
    return j.get<double>();
}

std::complex<double> parse_complex(const ordered_json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(std::string(what) + " must be an array [re, im]");
    return {require_number(j[0], what), require_number(j[1], what)};
}

bool valid_criterion_name(const std::string& s) {
    return s == "anww" || s == "mocanu" || s == "mocanu_conjugate" || s == "eq3" ||
           s == "sylvester";
}

} // namespace

ProblemConfig parse_config(const ordered_json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(doc,
                   {"kind", "variables", "components", "domain", "criterion", "params",
                    "budget", "oracle"},
                   "config");

    ProblemConfig cfg;
    cfg.echo = doc;

    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw ConfigError("config requires a string field 'kind'");
    cfg.kind = doc["kind"].get<std::string>();
    if (cfg.kind != "complex" && cfg.kind != "real_map")
        throw ConfigError("kind must be 'complex' or 'real_map'");

    if (doc.contains("variables")) {
        if (!doc["variables"].is_array())
            throw ConfigError("variables must be an array of names");
        for (const auto& v : doc["variables"]) {
            if (!v.is_string()) throw ConfigError("variable names must be strings");
            cfg.variables.push_back(v.get<std::string>());
        }
    }
    if (cfg.kind == "complex") {
        if (cfg.variables.empty()) cfg.variables = {"x", "y"};
        if (cfg.variables != std::vector<std::string>{"x", "y"})
            throw ConfigError("complex functions use exactly the variables x, y");
    } else {
        if (cfg.variables.empty())
            throw ConfigError("real_map requires a 'variables' list");
        if (cfg.variables.size() < 1 || cfg.variables.size() > 8)
            throw ConfigError("real_map supports 1 to 8 variables");
    }

    if (!doc.contains("components") || !doc["components"].is_array())
        throw ConfigError("config requires an array field 'components'");
    for (const auto& c : doc["components"]) {
        if (!c.is_string()) throw ConfigError("components must be expression strings");
        cfg.components.push_back(c.get<std::string>());
    }

    if (!doc.contains("domain") || !doc["domain"].is_array())
        throw ConfigError("config requires an array field 'domain'");
    std::vector<Interval> dims;
    for (const auto& d : doc["domain"]) {
        if (!d.is_array() || d.size() != 2)
            throw ConfigError("each domain entry must be [lo, hi]");
        const double lo = require_number(d[0], "domain bound");
        const double hi = require_number(d[1], "domain bound");
        if (!(lo < hi)) throw ConfigError("each domain interval needs lo < hi");
        dims.emplace_back(lo, hi);
    }
    cfg.domain = Box(std::move(dims));
    const std::size_t n = cfg.variables.size();
    if (cfg.domain.dims.size() != n)
        throw ConfigError("domain must provide one [lo, hi] pair per variable");

    if (doc.contains("criterion")) {
        if (!doc["criterion"].is_string())
            throw ConfigError("criterion must be a string");
        cfg.criterion = doc["criterion"].get<std::string>();
        if (!valid_criterion_name(cfg.criterion))
            throw ConfigError("unknown criterion '" + cfg.criterion +
                              "' (expected anww, mocanu, mocanu_conjugate, eq3 or sylvester)");
    }

    if (doc.contains("params")) {
        const ordered_json& p = doc["params"];
        if (!p.is_object()) throw ConfigError("params must be an object");
        reject_unknown(p, {"gamma", "w1", "w2", "A"}, "params");
        if (p.contains("gamma")) cfg.gamma = require_number(p["gamma"], "gamma");
        if (p.contains("w1")) cfg.w1 = parse_complex(p["w1"], "w1");
        if (p.contains("w2")) cfg.w2 = parse_complex(p["w2"], "w2");
        if (p.contains("A")) {
            if (!p["A"].is_array() || p["A"].size() != n * n)
                throw ConfigError("A must be a row-major array of n*n numbers");
            std::vector<double> a;
            for (const auto& e : p["A"]) a.push_back(require_number(e, "A entry"));
            cfg.a_rowmajor = std::move(a);
        }
    }

    if (doc.contains("budget")) {
        const ordered_json& b = doc["budget"];
        if (!b.is_object()) throw ConfigError("budget must be an object");
        reject_unknown(b, {"max_depth", "max_boxes"}, "budget");
        if (b.contains("max_depth")) {
            const double v = require_number(b["max_depth"], "max_depth");
            if (v < 0 || v != std::floor(v)) throw ConfigError("max_depth must be a non-negative integer");
            cfg.budget.max_depth = static_cast<int>(v);
        }
        if (b.contains("max_boxes")) {
            const double v = require_number(b["max_boxes"], "max_boxes");
            if (v < 1) throw ConfigError("max_boxes must be at least 1");
            cfg.budget.max_boxes = static_cast<std::uint64_t>(v);
        }
    }

    if (doc.contains("oracle")) {
        const ordered_json& o = doc["oracle"];
        if (!o.is_object()) throw ConfigError("oracle must be an object");
        reject_unknown(o, {"pairs", "seed"}, "oracle");
        if (o.contains("pairs")) {
            const double v = require_number(o["pairs"], "oracle.pairs");
            if (v < 1) throw ConfigError("oracle.pairs must be at least 1");
            cfg.oracle.pairs = static_cast<std::uint64_t>(v);
        }
        if (o.contains("seed"))
            cfg.oracle.seed = static_cast<std::uint64_t>(require_number(o["seed"], "oracle.seed"));
    }
    return cfg;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

MapSpec build_map(const ProblemConfig& cfg) {
    if (cfg.kind == "complex") {
        if (cfg.components.size() == 1 && cfg.components[0].rfind("holo:", 0) == 0) {
            const HoloExpansion h = expand_holomorphic(
                std::string_view(cfg.components[0]).substr(5));
            MapSpec m;
            m.kind = MapSpec::Kind::ComplexFunction;
            m.variables = {"x", "y"};
            m.components = {h.u, h.v};
            m.domain = cfg.domain;
            return m;
        }
        if (cfg.components.size() != 2)
            throw ConfigError("a complex function needs components [u, v] "
                              "or a single 'holo: <polynomial in z>'");
        return make_complex_function(cfg.components[0], cfg.components[1], cfg.domain);
    }
    return make_real_map(cfg.variables, cfg.components, cfg.domain);
}

namespace {

LinearOperator operator_from(const ProblemConfig& cfg, int n) {
    if (!cfg.a_rowmajor) throw ConfigError("criterion 'sylvester' requires params.A");
    LinearOperator a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = (*cfg.a_rowmajor)[static_cast<std::size_t>(i * n + j)];
    return a;
}

ordered_json complex_json(std::complex<double> z) {
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json collision_json(const Collision& c) {
    ordered_json j;
    j["x1"] = c.x1;
    j["x2"] = c.x2;
    j["value_gap"] = c.value_gap;
    j["separation"] = c.separation;
    return j;
}

ordered_json report_skeleton(const ProblemConfig& cfg, const char* command) {
    ordered_json r;
    r["tool"] = "injcert";
    r["version"] = kToolVersion;
    r["command"] = command;
    r["config"] = cfg.echo;
    return r;
}

void apply_flag_overrides(ProblemConfig& cfg, const RunFlags& flags) {
    if (flags.max_depth) cfg.budget.max_depth = *flags.max_depth;
    if (flags.max_boxes) cfg.budget.max_boxes = *flags.max_boxes;
    if (flags.seed) cfg.oracle.seed = *flags.seed;
}

// Criterion resolution: missing gamma triggers the angle search, a missing
// witness pair triggers the sphere search.
struct ResolvedCriterion {
    Criterion criterion;
    bool searched = false;
    double margin_estimate = 0.0;
};

GammaVariant gamma_variant(const std::string& name) {
    if (name == "mocanu") return GammaVariant::Mocanu;
    if (name == "mocanu_conjugate") return GammaVariant::MocanuConjugate;
    return GammaVariant::Anww;
}

ResolvedCriterion resolve_criterion(const ProblemConfig& cfg, const MapSpec& map) {
    ResolvedCriterion out;
    if (cfg.criterion.empty())
        throw ConfigError("this command requires a 'criterion' field");
    if (cfg.criterion == "sylvester") {
        CriterionSylvester c{operator_from(cfg, map.dimension()), MinorSign::Positive};
        require_nonsingular(c.a);
        out.criterion = c;
        return out;
    }
    if (map.kind != MapSpec::Kind::ComplexFunction)
        throw ConfigError("criterion '" + cfg.criterion + "' applies to kind 'complex' only");
    if (cfg.criterion == "eq3") {
        if (cfg.w1 && cfg.w2) {
            const WitnessPair w = WitnessPair::make(*cfg.w1, *cfg.w2);
            if (!w.valid()) throw DegenerateWitness();
            out.criterion = CriterionEq3{w};
            return out;
        }
        const WitnessSearchResult r = search_witness_pair(map, 16);
        out.criterion = CriterionEq3{r.w};
        out.searched = true;
        out.margin_estimate = r.margin_estimate;
        return out;
    }
    double gamma;
    if (cfg.gamma) {
        gamma = *cfg.gamma;
    } else {
        const GammaSearchResult r = search_gamma(map, gamma_variant(cfg.criterion), 64);
        gamma = r.gamma;
        out.searched = true;
        out.margin_estimate = r.margin_estimate;
    }
    if (cfg.criterion == "anww")
        out.criterion = CriterionAnww{gamma};
    else
        out.criterion = CriterionMocanu{gamma, cfg.criterion == "mocanu"
                                                   ? MocanuVariant::Standard
                                                   : MocanuVariant::Conjugate};
    return out;
}

ordered_json criterion_json(const ResolvedCriterion& rc) {
    ordered_json j;
    j["name"] = criterion_tag(rc.criterion);
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CriterionAnww>) {
                j["gamma"] = c.gamma;
            } else if constexpr (std::is_same_v<T, CriterionMocanu>) {
                j["gamma"] = c.gamma;
            } else if constexpr (std::is_same_v<T, CriterionEq3>) {
                j["w1"] = complex_json(c.w.w1);
                j["w2"] = complex_json(c.w.w2);
                j["delta"] = c.w.delta;
            } else {
                const int n = c.a.order();
                ordered_json a = ordered_json::array();
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) a.push_back(c.a(i, k));
                j["A"] = a;
            }
        },
        rc.criterion);
    j["searched"] = rc.searched;
    if (rc.searched) j["search_margin_estimate"] = rc.margin_estimate;
    return j;
}

// Pointwise margin of the resolved criterion, for --emit-grid.
double pointwise_margin(const MapSpec& map, const Criterion& c, double x, double y) {
    return std::visit(
        [&](const auto& crit) -> double {
            using T = std::decay_t<decltype(crit)>;
            const std::complex<double> z(x, y);
            if constexpr (std::is_same_v<T, CriterionAnww>) {
                return anww_margin(map, crit.gamma, z).value.lo;
            } else if constexpr (std::is_same_v<T, CriterionMocanu>) {
                return mocanu_margin(map, crit.gamma, crit.variant, z).value.lo;
            } else if constexpr (std::is_same_v<T, CriterionEq3>) {
                return eq3_margin(map, crit.w, z).value.lo;
            } else {
                const double at[2] = {x, y};
                return sylvester_margin(map, crit.a, at, crit.sign).value.lo;
            }
        },
        c);
}

void emit_grid(const MapSpec& map, const Criterion& c, const std::string& path) {
    if (map.dimension() != 2)
        throw ConfigError("--emit-grid supports two-dimensional problems only");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open grid output file: " + path);
    out.precision(17);
    out << "x,y,margin\n";
    const Interval& xs = map.domain.dims[0];
    const Interval& ys = map.domain.dims[1];
    for (int i = 0; i <= 100; ++i) {
        for (int k = 0; k <= 100; ++k) {
            const double x = xs.lo + xs.width() * i / 100.0;
            const double y = ys.lo + ys.width() * k / 100.0;
            double margin = std::numeric_limits<double>::quiet_NaN();
            try {
                margin = pointwise_margin(map, c, x, y);
            } catch (const Error&) {
                // leave NaN for points where the criterion is undefined
            }
            out << x << ',' << y << ',' << margin << '\n';
        }
    }
}

} // namespace

RunResult run_certify(const ProblemConfig& cfg_in, const RunFlags& flags) {
    ProblemConfig cfg = cfg_in;
    apply_flag_overrides(cfg, flags);
    const MapSpec map = build_map(cfg);

    RunResult out;
    out.report = report_skeleton(cfg, "certify");
    ResolvedCriterion rc;
    try {
        rc = resolve_criterion(cfg, map);
    } catch (const NoValidWitness& e) {
        out.report["criterion"] = {{"name", cfg.criterion}};
        out.report["verdict"] = to_string(Verdict::Unknown);
        out.report["margin_lower_bound"] = nullptr;
        out.report["explanation"] = e.what();
        out.report["seed"] = cfg.oracle.seed;
        out.report["wall_time"] = 0.0;
        out.exit_code = 1;
        return out;
    }
    out.report["criterion"] = criterion_json(rc);

    CertifyOptions opts;
    opts.budget = cfg.budget;
    opts.oracle = cfg.oracle;
    const Certificate cert = certify(map, rc.criterion, opts);

    if (flags.emit_grid) emit_grid(map, rc.criterion, *flags.emit_grid);

    out.report["verdict"] = to_string(cert.verdict);
    if (cert.margin_lower_bound)
        out.report["margin_lower_bound"] = *cert.margin_lower_bound;
    else
        out.report["margin_lower_bound"] = nullptr;
    out.report["boxes_processed"] = cert.boxes_processed;
    out.report["max_depth_reached"] = cert.max_depth_reached;
    out.report["refutation"] = cert.refutation ? collision_json(*cert.refutation)
                                               : ordered_json(nullptr);
    out.report["oracle"] = {{"pairs", cfg.oracle.pairs}, {"seed", cfg.oracle.seed}};
    out.report["explanation"] = cert.note;
    out.report["seed"] = cfg.oracle.seed;
    out.report["wall_time"] = cert.wall_time_seconds;
    out.exit_code = cert.verdict == Verdict::Certified ? 0 : 1;
    return out;
}

RunResult run_witness(const ProblemConfig& cfg_in, const RunFlags& flags) {
    ProblemConfig cfg = cfg_in;
    apply_flag_overrides(cfg, flags);
    const MapSpec map = build_map(cfg);
    if (cfg.criterion.empty() || cfg.criterion == "sylvester")
        throw ConfigError("the witness command needs criterion anww, mocanu, "
                          "mocanu_conjugate or eq3");

    RunResult out;
    out.report = report_skeleton(cfg, "witness");
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ordered_json w;
        double estimate = 0.0;
        if (cfg.criterion == "eq3") {
            const WitnessSearchResult r = search_witness_pair(map, 16);
            w["w1"] = complex_json(r.w.w1);
            w["w2"] = complex_json(r.w.w2);
            w["delta"] = r.w.delta;
            estimate = r.margin_estimate;
        } else {
            const GammaSearchResult r = search_gamma(map, gamma_variant(cfg.criterion), 64);
            w["gamma"] = r.gamma;
            estimate = r.margin_estimate;
        }
        w["margin_estimate"] = estimate;
        out.report["criterion"] = {{"name", cfg.criterion}};
        out.report["witness"] = w;
        out.report["explanation"] = "";
        out.exit_code = estimate > 0.0 ? 0 : 1;
    } catch (const NoValidWitness& e) {
        out.report["criterion"] = {{"name", cfg.criterion}};
        out.report["witness"] = nullptr;
        out.report["explanation"] = e.what();
        out.exit_code = 1;
    }
    out.report["seed"] = cfg.oracle.seed;
    out.report["wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

RunResult run_falsify(const ProblemConfig& cfg_in, const RunFlags& flags) {
    ProblemConfig cfg = cfg_in;
    apply_flag_overrides(cfg, flags);
    const MapSpec map = build_map(cfg);

    RunResult out;
    out.report = report_skeleton(cfg, "falsify");
    const auto t0 = std::chrono::steady_clock::now();
    const std::optional<Collision> col = find_collision(map, map.domain, cfg.oracle);
    out.report["collision"] = col ? collision_json(*col) : ordered_json(nullptr);
    out.report["collisions_found"] = col ? 1 : 0;
    out.report["oracle"] = {{"pairs", cfg.oracle.pairs}, {"seed", cfg.oracle.seed}};
    out.report["explanation"] = "";
    out.report["seed"] = cfg.oracle.seed;
    out.report["wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.exit_code = col ? 0 : 1;
    return out;
}

RunResult run_monotone(const ProblemConfig& cfg_in, const RunFlags& flags) {
    ProblemConfig cfg = cfg_in;
    apply_flag_overrides(cfg, flags);
    const MapSpec map = build_map(cfg);
    const LinearOperator a = operator_from(cfg, map.dimension());

    RunResult out;
    out.report = report_skeleton(cfg, "monotone");
    const auto t0 = std::chrono::steady_clock::now();
    const MonotonicityReport rep = check_relative_monotonicity(map, a, map.domain, cfg.oracle);
    out.report["min_inner"] = rep.min_inner;
    if (rep.violated()) {
        ordered_json pair;
        pair["x1"] = rep.x1;
        pair["x2"] = rep.x2;
        out.report["violating_pair"] = pair;
    } else {
        out.report["violating_pair"] = nullptr;
    }
    out.report["oracle"] = {{"pairs", cfg.oracle.pairs}, {"seed", cfg.oracle.seed}};
    out.report["explanation"] = "";
    out.report["seed"] = cfg.oracle.seed;
    out.report["wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.exit_code = rep.min_inner >= 0.0 ? 0 : 1;
    return out;
}

} // namespace inj
