#pragma once

#include <optional>
#include <span>
#include <vector>

#include "seconet/centrality.hpp"
#include "seconet/config.hpp"
#include "seconet/epidemic.hpp"
#include "seconet/network.hpp"
#include "seconet/rng.hpp"

namespace seconet {

struct VaccinationPlan {
    Strategy strategy = Strategy::none;
    std::vector<int> session_days;
    std::vector<int> doses_per_session;
    int total_doses = 0;
    int age_limit = 26;
    bool restrict_under_26 = false;
};

// total = floor(coverage * |age < age_limit|), split evenly over sessions
// with the remainder going one each to the earliest sessions.
VaccinationPlan build_plan(std::span<const Person> persons, Strategy strategy, const VaccinationConfig& cfg);

// Susceptible, ever linked, and within the strategy's age rule.
bool eligible(const Person& p, const HealthState& s, const VaccinationPlan& plan);
std::vector<PersonId> eligible_persons(const ContactNetwork& net, const HealthStates& states,
                                       const VaccinationPlan& plan);

// Uniform random subset of size min(doses, |eligibles|).
std::vector<PersonId> select_age_based(std::span<const PersonId> eligibles, int doses, Rng& rng);

// Eligible susceptible neighbours of infected persons, taking infected
// persons by degree descending (ties: ascending id) and each one's
// neighbours by ascending id.
std::vector<PersonId> select_ring(const ContactNetwork& net, const HealthStates& states,
                                  std::span<const PersonId> eligibles, int doses);

// Top min(doses, |eligibles|) eligibles by score descending, ties by
// ascending id. Throws ContractViolation when scores.computed_at != day.
std::vector<PersonId> select_by_centrality(const CentralityScores& scores, std::span<const PersonId> eligibles,
                                           int doses, int day);

// Throws ContractViolation if any chosen person is not susceptible; in that
// case no state is changed.
void apply_vaccination(HealthStates& states, std::span<const PersonId> chosen);

struct SessionRecord {
    int day = 0;
    Strategy strategy = Strategy::none;
    int doses_available = 0;
    std::vector<PersonId> chosen;
};

// Runs the plan's sessions over a simulation. Owns the stream used by the
// random (age-based) strategy.
class Vaccinator {
public:
    Vaccinator(VaccinationPlan plan, std::uint64_t seed);

    const VaccinationPlan& plan() const noexcept { return plan_; }
    const std::vector<SessionRecord>& sessions() const noexcept { return log_; }

    // Runs a session when `day` is a session day; no-op otherwise.
    void on_day(int day, const ContactNetwork& net, HealthStates& states);

    EigenvectorOptions eigenvector_options;

private:
    VaccinationPlan plan_;
    Rng rng_;
    std::vector<SessionRecord> log_;
};

}  // namespace seconet
