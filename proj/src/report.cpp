#include "envrisk/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>

#include "envrisk/classical.hpp"
#include "envrisk/errors.hpp"
#include "envrisk/parallel.hpp"

namespace envrisk {

ComputeConfig compute_config_from_json(const json& j) {
    ComputeConfig cfg;
    if (!j.contains("binning") || !j.contains("spec"))
        fail(errc::parse_error, "config needs 'binning' and 'spec'");
    cfg.binning = binning_from_json(j["binning"]);
    cfg.spec = spec_from_json(j["spec"]);
    if (j.contains("comparatives")) {
        const json& c = j["comparatives"];
        if (c.contains("levels")) {
            for (const auto& l : c["levels"]) {
                if (!l.is_number()) fail(errc::parse_error, "comparative levels must be numbers");
                cfg.comparative_levels.push_back(l.get<double>());
            }
        }
        if (c.contains("wvar")) cfg.comparative_wvar = level_measure_from_json(c["wvar"]);
        if (c.contains("rvar")) {
            const json& r = c["rvar"];
            if (!r.is_array() || r.size() != 2)
                fail(errc::parse_error, "comparative rvar must be [a1, a2]");
            cfg.comparative_rvar = std::make_pair(r[0].get<double>(), r[1].get<double>());
        }
    }
    return cfg;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

json build_risk_report(const ScenarioTable& table, const ComputeConfig& cfg,
                       const std::string& scenarios_path, const std::string& scenarios_hash,
                       const std::string& config_path, const std::string& config_hash,
                       bool with_meta) {
    const auto t0 = std::chrono::steady_clock::now();

    const ConditionalModel model = build_conditional_model(table, cfg.binning);
    const RiskProfile profile = risk_profile(model, cfg.spec);
    const double risk = env_risk(profile, cfg.spec.outer);

    json report;
    report["inputs"] = {{"scenarios", scenarios_path},
                        {"scenarios_hash", scenarios_hash},
                        {"config", config_path},
                        {"config_hash", config_hash}};
    report["binning"] = binning_to_json(cfg.binning);
    report["spec"] = spec_to_json(cfg.spec);

    json states = json::array();
    for (std::size_t i = 0; i < profile.size(); ++i)
        states.push_back({{"z", profile.states[i]},
                          {"prob", profile.probs[i]},
                          {"inner_risk", profile.values[i]}});
    report["states"] = std::move(states);
    report["risk"] = risk;

    if (!std::isfinite(risk)) fail(errc::non_finite_value, "risk value");

    const bool any_comparative = !cfg.comparative_levels.empty() || cfg.comparative_wvar ||
                                 cfg.comparative_rvar;
    if (any_comparative) {
        const DiscreteDistribution pooled = build_distribution(table.x, table.weight);
        json comp;
        if (!cfg.comparative_levels.empty()) {
            json vars = json::array(), avars = json::array();
            for (double level : cfg.comparative_levels) {
                vars.push_back(json::array({level, var(pooled, level)}));
                avars.push_back(json::array({level, avar(pooled, level)}));
            }
            comp["var"] = std::move(vars);
            comp["avar"] = std::move(avars);
        }
        if (cfg.comparative_wvar) comp["wvar"] = wvar(pooled, *cfg.comparative_wvar);
        if (cfg.comparative_rvar)
            comp["rvar"] = json::array({cfg.comparative_rvar->first, cfg.comparative_rvar->second,
                                        rvar(pooled, cfg.comparative_rvar->first,
                                             cfg.comparative_rvar->second)});
        report["comparatives"] = std::move(comp);
    }

    if (with_meta) {
        const auto t1 = std::chrono::steady_clock::now();
        report["meta"] = {
            {"timestamp", utc_timestamp()},
            {"elapsed_ms",
             std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                 .count()},
            {"threads", worker_count()}};
    }
    return report;
}

} // namespace envrisk
