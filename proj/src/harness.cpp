#include "seconet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "seconet/log.hpp"

namespace seconet {

RunResult run_simulation(const GrowthConfig& growth, const EpidemicConfig& epidemic,
                         const VaccinationConfig& vaccination, Strategy strategy, std::uint64_t seed,
                         const RunOptions& options) {
    growth.validate();
    epidemic.validate();
    vaccination.validate();

    NetworkGrower grower(growth, seed);
    const EpidemicRandom rnd(seed);
    HealthStates states = seed_infection(grower.network().persons(), epidemic, rnd);
    Vaccinator vaccinator(build_plan(grower.network().persons(), strategy, vaccination), seed);

    VaccinationHook hook;
    if (options.vaccination_enabled) {
        hook = [&](int day, const ContactNetwork& net, HealthStates& st) { vaccinator.on_day(day, net, st); };
    }

    std::vector<DailyCounts> series;
    series.reserve(static_cast<std::size_t>(growth.horizon) + 1);
    series.push_back(tally(grower.network().persons(), states, 0, {}));
    if (options.observer) options.observer(0, grower.network(), states);
    for (int day = 1; day <= growth.horizon; ++day) {
        series.push_back(run_day(grower, states, epidemic, hook, rnd, day));
        if (options.observer) options.observer(day, grower.network(), states);
    }
    return RunResult{std::move(series), std::move(grower.network()), vaccinator.sessions(), vaccinator.plan()};
}

namespace {

CohortMetrics cohort(std::span<const DailyCounts> series, const CompartmentCounts DailyCounts::*counts,
                     const int DailyCounts::*incidence) {
    CohortMetrics m;
    if (series.empty()) return m;
    constexpr auto infected = static_cast<std::size_t>(Compartment::infected);
    int best_prevalence = -1;
    for (const auto& d : series) {
        int prevalence = (d.*counts)[infected];
        if (prevalence > best_prevalence) {
            best_prevalence = prevalence;
            m.peak_prevalence_day = d.day;
        }
        if (d.day >= 1) m.peak_incidence = std::max(m.peak_incidence, d.*incidence);
        m.cumulative_incidence += d.day >= 1 ? d.*incidence : 0;
    }
    // Seeded infections are day-0 events.
    if (series.front().day == 0) m.cumulative_incidence += (series.front().*counts)[infected];
    return m;
}

}  // namespace

EpiMetrics compute_metrics(std::span<const DailyCounts> series) {
    return {cohort(series, &DailyCounts::total, &DailyCounts::new_infections),
            cohort(series, &DailyCounts::female, &DailyCounts::new_infections_female),
            cohort(series, &DailyCounts::male, &DailyCounts::new_infections_male)};
}

std::uint64_t run_seed(std::uint64_t base_seed, int sweep_id, int replicate) {
    return hash_key({base_seed, static_cast<std::uint64_t>(sweep_id), static_cast<std::uint64_t>(replicate)});
}

void sort_records(std::vector<SummaryRecord>& records) {
    std::sort(records.begin(), records.end(), [](const SummaryRecord& a, const SummaryRecord& b) {
        if (a.sweep_id != b.sweep_id) return a.sweep_id < b.sweep_id;
        if (a.strategy != b.strategy) return static_cast<int>(a.strategy) < static_cast<int>(b.strategy);
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.replicate < b.replicate;
    });
}

std::vector<SummaryRecord> sweep(const ScenarioConfig& scenario, int workers) {
    scenario.validate();
    std::vector<SummaryRecord> records;
    for (int p = 0; p < static_cast<int>(scenario.sweep.size()); ++p) {
        for (Strategy s : scenario.strategies) {
            for (int r = 0; r < scenario.replicates; ++r) {
                SummaryRecord rec;
                rec.sweep_id = p;
                rec.replicate = r;
                rec.seed = run_seed(scenario.seed, p, r);
                rec.strategy = s;
                records.push_back(rec);
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            SummaryRecord& rec = records[i];
            try {
                GrowthConfig growth = scenario.sweep[static_cast<std::size_t>(rec.sweep_id)].apply(scenario.growth);
                auto run = run_simulation(growth, scenario.epidemic, scenario.vaccination, rec.strategy, rec.seed);
                rec.topology = summarize_topology(run.network);
                rec.metrics = compute_metrics(run.series);
            } catch (const std::exception& e) {
                rec.error = e.what();
                log::error("sweep point " + std::to_string(rec.sweep_id) + " strategy " +
                           std::string(to_string(rec.strategy)) + " replicate " + std::to_string(rec.replicate) +
                           ": " + e.what());
            }
        }
    };
    const int n = std::max(1, std::min<int>(workers, static_cast<int>(records.size())));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    sort_records(records);
    return records;
}

}  // namespace seconet
