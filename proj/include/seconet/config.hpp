#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seconet {

// Age buckets 15-19, 20-24, ..., 55-59.
inline constexpr int kAgeBuckets = 9;
inline constexpr int kMinAge = 15;
inline constexpr int kMaxAge = 59;

struct GrowthConfig {
    int population_size = 3000;                // N
    int initial_links = 10;                    // m0
    int joins_per_step = 100;                  // n, Phase 1
    int links_per_join = 2;                    // m
    double fitness_floor = 0.5;                // epsilon
    double mean_age_gap = 3.5;                 // <eta>, years
    int horizon = 1000;                        // T, days
    std::array<double, kAgeBuckets> age_distribution{0.221, 0.555, 0.141, 0.044, 0.018,
                                                     0.018, 0.001, 0.001, 0.001};
    double female_fraction = 0.59;
    double mean_delta = 100.0;                 // mean of delta_i, days
    double gamma_shape = 2.0;                  // shape of delta_i ~ Gamma
    int seeding_min_age = 18;
    int secondary_retry_limit = 50;

    // Throws ConfigError.
    void validate() const;
};

struct EpidemicConfig {
    double beta = 0.13;                        // per-act transmission probability
    double clearance_mean = 330.0;             // days (11 months x 30)
    double rho_female = 0.427;
    double rho_male = 0.188;
    double init_prevalence_female = 0.0;
    double init_prevalence_male = 0.0;
    double f_early = 0.5;
    double f_late = 1.0 / 7.0;
    int early_window = 14;                     // days

    void validate() const;
};

enum class Strategy : int {
    none = 0,
    age,
    ring,
    degree,
    betweenness,
    closeness,
    percolation,
    eigenvector,
};

inline constexpr std::array<Strategy, 8> kAllStrategies{
    Strategy::none,   Strategy::age,         Strategy::ring,        Strategy::degree,
    Strategy::betweenness, Strategy::closeness, Strategy::percolation, Strategy::eigenvector};

std::string_view to_string(Strategy s);
// Throws ConfigError naming the valid strategies.
Strategy parse_strategy(std::string_view name);
std::string valid_strategy_names();

// Template from which a VaccinationPlan is built for a given population.
struct VaccinationConfig {
    std::vector<int> session_days{6, 13, 20, 27};
    double coverage_fraction = 0.10;           // of persons under age_limit
    int age_limit = 26;
    bool restrict_under_26 = false;            // for non-age strategies

    void validate() const;
};

// One point of the topology sweep. Unset fields keep the scenario default.
struct SweepPoint {
    std::optional<int> links_per_join;
    std::optional<double> fitness_floor;
    std::optional<double> gamma_shape;
    std::optional<double> mean_delta;

    GrowthConfig apply(GrowthConfig base) const;
};

struct ScenarioConfig {
    GrowthConfig growth;
    EpidemicConfig epidemic;
    VaccinationConfig vaccination;
    std::uint64_t seed = 1;
    int replicates = 30;
    std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
    std::vector<SweepPoint> sweep{SweepPoint{}};

    void validate() const;
};

// JSON loading. Unknown keys are rejected with ConfigError. Both initial
// prevalence values are required in the "epidemic" object.
ScenarioConfig scenario_from_json_text(std::string_view text);
ScenarioConfig load_scenario(const std::string& path);
GrowthConfig growth_from_json_text(std::string_view text);
std::string scenario_to_json_text(const ScenarioConfig& cfg);

}  // namespace seconet
