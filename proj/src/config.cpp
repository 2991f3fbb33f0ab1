#include "seconet/config.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "seconet/error.hpp"

namespace seconet {
namespace {

using nlohmann::json;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Rejects any key of `obj` outside `allowed`.
void check_keys(const json& obj, std::string_view section, std::initializer_list<const char*> allowed) {
    require(obj.is_object(), std::string(section) + ": expected a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key())) {
            throw ConfigError(std::string(section) + ": unknown key '" + it.key() + "'");
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out, std::string_view section) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(section) + "." + key + ": wrong type");
    }
}

GrowthConfig parse_growth(const json& j) {
    check_keys(j, "growth",
               {"population_size", "initial_links", "joins_per_step", "links_per_join", "fitness_floor",
                "mean_age_gap", "horizon", "age_distribution", "female_fraction", "mean_delta",
                "gamma_shape", "seeding_min_age", "secondary_retry_limit"});
    GrowthConfig g;
    read(j, "population_size", g.population_size, "growth");
    read(j, "initial_links", g.initial_links, "growth");
    read(j, "joins_per_step", g.joins_per_step, "growth");
    read(j, "links_per_join", g.links_per_join, "growth");
    read(j, "fitness_floor", g.fitness_floor, "growth");
    read(j, "mean_age_gap", g.mean_age_gap, "growth");
    read(j, "horizon", g.horizon, "growth");
    if (j.contains("age_distribution")) {
        std::vector<double> w;
        read(j, "age_distribution", w, "growth");
        require(w.size() == kAgeBuckets, "growth.age_distribution: expected 9 bucket weights");
        std::copy(w.begin(), w.end(), g.age_distribution.begin());
    }
    read(j, "female_fraction", g.female_fraction, "growth");
    read(j, "mean_delta", g.mean_delta, "growth");
    read(j, "gamma_shape", g.gamma_shape, "growth");
    read(j, "seeding_min_age", g.seeding_min_age, "growth");
    read(j, "secondary_retry_limit", g.secondary_retry_limit, "growth");
    return g;
}

EpidemicConfig parse_epidemic(const json& j) {
    check_keys(j, "epidemic",
               {"beta", "clearance_mean", "rho_female", "rho_male", "init_prevalence_female",
                "init_prevalence_male", "f_early", "f_late", "early_window"});
    require(j.contains("init_prevalence_female") && j.contains("init_prevalence_male"),
            "epidemic: init_prevalence_female and init_prevalence_male are required");
    EpidemicConfig e;
    read(j, "beta", e.beta, "epidemic");
    read(j, "clearance_mean", e.clearance_mean, "epidemic");
    read(j, "rho_female", e.rho_female, "epidemic");
    read(j, "rho_male", e.rho_male, "epidemic");
    read(j, "init_prevalence_female", e.init_prevalence_female, "epidemic");
    read(j, "init_prevalence_male", e.init_prevalence_male, "epidemic");
    read(j, "f_early", e.f_early, "epidemic");
    read(j, "f_late", e.f_late, "epidemic");
    read(j, "early_window", e.early_window, "epidemic");
    return e;
}

VaccinationConfig parse_vaccination(const json& j) {
    check_keys(j, "vaccination", {"session_days", "coverage_fraction", "age_limit", "restrict_under_26"});
    VaccinationConfig v;
    read(j, "session_days", v.session_days, "vaccination");
    read(j, "coverage_fraction", v.coverage_fraction, "vaccination");
    read(j, "age_limit", v.age_limit, "vaccination");
    read(j, "restrict_under_26", v.restrict_under_26, "vaccination");
    return v;
}

SweepPoint parse_sweep_point(const json& j) {
    check_keys(j, "sweep[]", {"links_per_join", "fitness_floor", "gamma_shape", "mean_delta"});
    SweepPoint p;
    if (j.contains("links_per_join")) p.links_per_join = j.at("links_per_join").get<int>();
    if (j.contains("fitness_floor")) p.fitness_floor = j.at("fitness_floor").get<double>();
    if (j.contains("gamma_shape")) p.gamma_shape = j.at("gamma_shape").get<double>();
    if (j.contains("mean_delta")) p.mean_delta = j.at("mean_delta").get<double>();
    return p;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

void GrowthConfig::validate() const {
    require(population_size > 0, "growth.population_size must be > 0");
    require(initial_links >= 0, "growth.initial_links must be >= 0");
    require(joins_per_step >= 0, "growth.joins_per_step must be >= 0");
    require(links_per_join >= 1, "growth.links_per_join must be >= 1");
    require(fitness_floor > 0.0, "growth.fitness_floor must be > 0");
    require(mean_age_gap > 0.0, "growth.mean_age_gap must be > 0");
    require(horizon >= 1, "growth.horizon must be >= 1");
    require(is_probability(female_fraction), "growth.female_fraction must be in [0,1]");
    require(mean_delta > 0.0, "growth.mean_delta must be > 0");
    require(gamma_shape > 0.0, "growth.gamma_shape must be > 0");
    require(secondary_retry_limit >= 0, "growth.secondary_retry_limit must be >= 0");
    double total = 0.0;
    for (double w : age_distribution) {
        require(w >= 0.0, "growth.age_distribution weights must be non-negative");
        total += w;
    }
    require(std::abs(total - 1.0) <= 1e-9, "growth.age_distribution must sum to 1");
}

void EpidemicConfig::validate() const {
    require(is_probability(beta), "epidemic.beta must be in [0,1]");
    require(clearance_mean > 0.0, "epidemic.clearance_mean must be > 0");
    require(is_probability(rho_female) && is_probability(rho_male), "epidemic.rho_* must be in [0,1]");
    require(is_probability(init_prevalence_female) && is_probability(init_prevalence_male),
            "epidemic.init_prevalence_* must be in [0,1]");
    require(is_probability(f_early) && is_probability(f_late), "epidemic.f_* must be in [0,1]");
    require(early_window >= 0, "epidemic.early_window must be >= 0");
}

void VaccinationConfig::validate() const {
    for (std::size_t i = 1; i < session_days.size(); ++i) {
        require(session_days[i] > session_days[i - 1], "vaccination.session_days must be strictly increasing");
    }
    require(is_probability(coverage_fraction), "vaccination.coverage_fraction must be in [0,1]");
}

GrowthConfig SweepPoint::apply(GrowthConfig base) const {
    if (links_per_join) base.links_per_join = *links_per_join;
    if (fitness_floor) base.fitness_floor = *fitness_floor;
    if (gamma_shape) base.gamma_shape = *gamma_shape;
    if (mean_delta) base.mean_delta = *mean_delta;
    return base;
}

void ScenarioConfig::validate() const {
    growth.validate();
    epidemic.validate();
    vaccination.validate();
    require(replicates >= 1, "replicates must be >= 1");
    require(!strategies.empty(), "strategies must be non-empty");
    require(!sweep.empty(), "sweep must be non-empty");
    for (const auto& p : sweep) p.apply(growth).validate();
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::none: return "none";
        case Strategy::age: return "age";
        case Strategy::ring: return "ring";
        case Strategy::degree: return "degree";
        case Strategy::betweenness: return "betweenness";
        case Strategy::closeness: return "closeness";
        case Strategy::percolation: return "percolation";
        case Strategy::eigenvector: return "eigenvector";
    }
    return "?";
}

std::string valid_strategy_names() {
    std::string out;
    for (auto s : kAllStrategies) {
        if (!out.empty()) out += ", ";
        out += to_string(s);
    }
    return out;
}

Strategy parse_strategy(std::string_view name) {
    for (auto s : kAllStrategies) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError("unknown strategy '" + std::string(name) + "'; valid strategies: " + valid_strategy_names());
}

GrowthConfig growth_from_json_text(std::string_view text) {
    auto g = parse_growth(parse_text(text));
    g.validate();
    return g;
}

ScenarioConfig scenario_from_json_text(std::string_view text) try {
    json j = parse_text(text);
    check_keys(j, "scenario", {"growth", "epidemic", "vaccination", "seed", "replicates", "strategies", "sweep"});
    ScenarioConfig cfg;
    if (j.contains("growth")) cfg.growth = parse_growth(j.at("growth"));
    require(j.contains("epidemic"), "scenario: 'epidemic' section is required");
    cfg.epidemic = parse_epidemic(j.at("epidemic"));
    if (j.contains("vaccination")) cfg.vaccination = parse_vaccination(j.at("vaccination"));
    read(j, "seed", cfg.seed, "scenario");
    read(j, "replicates", cfg.replicates, "scenario");
    if (j.contains("strategies")) {
        std::vector<std::string> names;
        read(j, "strategies", names, "scenario");
        cfg.strategies.clear();
        for (const auto& n : names) cfg.strategies.push_back(parse_strategy(n));
    }
    if (j.contains("sweep")) {
        require(j.at("sweep").is_array(), "scenario.sweep must be an array");
        cfg.sweep.clear();
        for (const auto& p : j.at("sweep")) cfg.sweep.push_back(parse_sweep_point(p));
    }
    cfg.validate();
    return cfg;
} catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
    const auto& g = cfg.growth;
    const auto& e = cfg.epidemic;
    const auto& v = cfg.vaccination;
    json j;
    j["growth"] = {{"population_size", g.population_size}, {"initial_links", g.initial_links},
                   {"joins_per_step", g.joins_per_step},   {"links_per_join", g.links_per_join},
                   {"fitness_floor", g.fitness_floor},     {"mean_age_gap", g.mean_age_gap},
                   {"horizon", g.horizon},                 {"age_distribution", g.age_distribution},
                   {"female_fraction", g.female_fraction}, {"mean_delta", g.mean_delta},
                   {"gamma_shape", g.gamma_shape},         {"seeding_min_age", g.seeding_min_age},
                   {"secondary_retry_limit", g.secondary_retry_limit}};
    j["epidemic"] = {{"beta", e.beta},
                     {"clearance_mean", e.clearance_mean},
                     {"rho_female", e.rho_female},
                     {"rho_male", e.rho_male},
                     {"init_prevalence_female", e.init_prevalence_female},
                     {"init_prevalence_male", e.init_prevalence_male},
                     {"f_early", e.f_early},
                     {"f_late", e.f_late},
                     {"early_window", e.early_window}};
    j["vaccination"] = {{"session_days", v.session_days},
                        {"coverage_fraction", v.coverage_fraction},
                        {"age_limit", v.age_limit},
                        {"restrict_under_26", v.restrict_under_26}};
    j["seed"] = cfg.seed;
    j["replicates"] = cfg.replicates;
    std::vector<std::string> names;
    for (auto s : cfg.strategies) names.emplace_back(to_string(s));
    j["strategies"] = names;
    json sweep = json::array();
    for (const auto& p : cfg.sweep) {
        json o = json::object();
        if (p.links_per_join) o["links_per_join"] = *p.links_per_join;
        if (p.fitness_floor) o["fitness_floor"] = *p.fitness_floor;
        if (p.gamma_shape) o["gamma_shape"] = *p.gamma_shape;
        if (p.mean_delta) o["mean_delta"] = *p.mean_delta;
        sweep.push_back(o);
    }
    j["sweep"] = sweep;
    return j.dump(2);
}

}  // namespace seconet
