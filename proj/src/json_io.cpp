#include "envrisk/json_io.hpp"

#include <string>

#include "envrisk/errors.hpp"

namespace envrisk {

namespace {

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(errc::parse_error, std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::string get_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        fail(errc::parse_error, std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

} // namespace

json distortion_to_json(const DistortionFn& g) {
    json j;
    switch (g.family) {
        case DistortionFn::Family::identity: j["family"] = "identity"; break;
        case DistortionFn::Family::avar:
            j["family"] = "avar";
            j["level"] = g.level;
            break;
        case DistortionFn::Family::var:
            j["family"] = "var";
            j["level"] = g.level;
            break;
        case DistortionFn::Family::power:
            j["family"] = "power";
            j["p"] = g.p;
            break;
        case DistortionFn::Family::pwl: {
            j["family"] = "pwl";
            json knots = json::array();
            for (const auto& [u, v] : g.knots) knots.push_back(json::array({u, v}));
            j["knots"] = std::move(knots);
            break;
        }
    }
    return j;
}

DistortionFn distortion_from_json(const json& j) {
    const std::string family = get_string(j, "family");
    if (family == "identity") return DistortionFn::identity();
    if (family == "avar") return DistortionFn::avar(get_number(j, "level"));
    if (family == "var") return DistortionFn::var(get_number(j, "level"));
    if (family == "power") return DistortionFn::power(get_number(j, "p"));
    if (family == "pwl") {
        if (!j.contains("knots") || !j["knots"].is_array())
            fail(errc::parse_error, "pwl needs a knots array");
        std::vector<std::pair<double, double>> knots;
        for (const auto& k : j["knots"]) {
            if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
                fail(errc::parse_error, "each pwl knot must be [u, g]");
            knots.emplace_back(k[0].get<double>(), k[1].get<double>());
        }
        return DistortionFn::pwl(std::move(knots));
    }
    fail(errc::parse_error, "unknown distortion family '" + family + "'");
}

json rule_to_json(const StateFamilyRule& r) {
    json j;
    switch (r.kind) {
        case StateFamilyRule::Kind::constant:
            j["rule"] = "constant";
            j["fn"] = distortion_to_json(r.fn);
            break;
        case StateFamilyRule::Kind::table: {
            j["rule"] = "table";
            json entries = json::array();
            for (const auto& [z, fn] : r.entries)
                entries.push_back(json::array({json(z), distortion_to_json(fn)}));
            j["entries"] = std::move(entries);
            j["default"] = distortion_to_json(r.fn);
            break;
        }
        case StateFamilyRule::Kind::level_from_state:
            j["rule"] = "level-from-state";
            j["family"] = r.level_family == DistortionFn::Family::avar ? "avar" : "var";
            j["clamp"] = json::array({r.clamp_lo, r.clamp_hi});
            break;
    }
    return j;
}

StateFamilyRule rule_from_json(const json& j) {
    const std::string rule = get_string(j, "rule");
    if (rule == "constant") {
        if (!j.contains("fn")) fail(errc::parse_error, "constant rule needs 'fn'");
        return StateFamilyRule::constant(distortion_from_json(j["fn"]));
    }
    if (rule == "table") {
        if (!j.contains("entries") || !j["entries"].is_array() || !j.contains("default"))
            fail(errc::parse_error, "table rule needs 'entries' and 'default'");
        std::vector<std::pair<double, DistortionFn>> entries;
        for (const auto& e : j["entries"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number())
                fail(errc::parse_error, "each table entry must be [z, fn]");
            entries.emplace_back(e[0].get<double>(), distortion_from_json(e[1]));
        }
        return StateFamilyRule::table(std::move(entries), distortion_from_json(j["default"]));
    }
    if (rule == "level-from-state") {
        const std::string family = get_string(j, "family");
        if (family != "avar" && family != "var")
            fail(errc::parse_error, "level-from-state family must be avar or var");
        if (!j.contains("clamp") || !j["clamp"].is_array() || j["clamp"].size() != 2)
            fail(errc::parse_error, "level-from-state needs clamp [lo, hi]");
        return StateFamilyRule::level_from_state(family == "avar" ? DistortionFn::Family::avar
                                                                  : DistortionFn::Family::var,
                                                 j["clamp"][0].get<double>(),
                                                 j["clamp"][1].get<double>());
    }
    fail(errc::parse_error, "unknown state rule '" + rule + "'");
}

json spec_to_json(const EnvMeasureSpec& s) {
    json j;
    j["inner"] = rule_to_json(s.inner);
    j["outer"] = distortion_to_json(s.outer);
    return j;
}

EnvMeasureSpec spec_from_json(const json& j) {
    if (!j.contains("inner") || !j.contains("outer"))
        fail(errc::parse_error, "spec needs 'inner' and 'outer'");
    EnvMeasureSpec s;
    s.inner = rule_from_json(j["inner"]);
    s.outer = distortion_from_json(j["outer"]);
    return s;
}

json level_measure_to_json(const LevelMeasure& mu) {
    json atoms = json::array();
    for (std::size_t i = 0; i < mu.levels.size(); ++i)
        atoms.push_back(json::array({mu.levels[i], mu.weights[i]}));
    json j;
    j["atoms"] = std::move(atoms);
    return j;
}

LevelMeasure level_measure_from_json(const json& j) {
    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
        fail(errc::parse_error, "level measure needs a non-empty atoms array");
    std::vector<double> levels, weights;
    for (const auto& a : j["atoms"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
            fail(errc::parse_error, "each atom must be [level, weight]");
        levels.push_back(a[0].get<double>());
        weights.push_back(a[1].get<double>());
    }
    return LevelMeasure::make(std::move(levels), std::move(weights));
}

json binning_to_json(const Binning& b) {
    json j;
    if (b.mode == Binning::Mode::distinct_values) {
        j["mode"] = "distinct-values";
    } else {
        j["mode"] = "equiprobable-k";
        j["k"] = b.k;
    }
    return j;
}

Binning binning_from_json(const json& j) {
    const std::string mode = get_string(j, "mode");
    if (mode == "distinct-values") return Binning::distinct();
    if (mode == "equiprobable-k") {
        if (!j.contains("k") || !j["k"].is_number_integer())
            fail(errc::parse_error, "equiprobable-k needs integer 'k'");
        return Binning::equiprobable(j["k"].get<int>());
    }
    fail(errc::parse_error, "unknown binning mode '" + mode + "'");
}

} // namespace envrisk
