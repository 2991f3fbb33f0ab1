#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "seconet/config.hpp"
#include "seconet/epidemic.hpp"
#include "seconet/network.hpp"
#include "seconet/topology.hpp"
#include "seconet/vaccination.hpp"

namespace seconet {

struct RunOptions {
    bool vaccination_enabled = true;
    // Called after each simulated day (and once for day 0) with the state at
    // the end of that day.
    std::function<void(int day, const ContactNetwork&, const HealthStates&)> observer;
};

struct RunResult {
    std::vector<DailyCounts> series;  // days 0..T
    ContactNetwork network;           // final (day T) snapshot
    std::vector<SessionRecord> sessions;
    VaccinationPlan plan;
};

// sample_population -> seed_links -> seed_infection -> run_day for 1..T.
// Configuration errors surface before day 1.
RunResult run_simulation(const GrowthConfig& growth, const EpidemicConfig& epidemic,
                         const VaccinationConfig& vaccination, Strategy strategy, std::uint64_t seed,
                         const RunOptions& options = {});

struct CohortMetrics {
    int peak_incidence = 0;       // max daily new infections, days 1..T
    int peak_prevalence_day = 0;  // earliest day attaining max prevalence
    int cumulative_incidence = 0; // seeded infections + all new infections
};

struct EpiMetrics {
    CohortMetrics overall;
    CohortMetrics female;
    CohortMetrics male;
};

EpiMetrics compute_metrics(std::span<const DailyCounts> series);

struct SummaryRecord {
    int sweep_id = 0;
    int replicate = 0;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::none;
    TopologySummary topology;
    EpiMetrics metrics;
    std::string error;  // empty on success
};

// Seed for (sweep point, replicate); strategy is deliberately not an input
// so every strategy at the same point and replicate is paired.
std::uint64_t run_seed(std::uint64_t base_seed, int sweep_id, int replicate);

// One record per (sweep point x strategy x replicate). Runs are spread over
// `workers` threads; the output order is canonical and independent of it.
std::vector<SummaryRecord> sweep(const ScenarioConfig& scenario, int workers = 1);

// Canonical order: (sweep_id, strategy, seed).
void sort_records(std::vector<SummaryRecord>& records);

}  // namespace seconet
