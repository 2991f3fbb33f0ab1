#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "seconet/config.hpp"
#include "seconet/network.hpp"

namespace seconet {

enum class Compartment : std::uint8_t { susceptible = 0, infected, recovered, vaccinated };

struct HealthState {
    Compartment compartment = Compartment::susceptible;
    std::optional<int> infected_since;
    std::optional<double> clearance_at;  // set iff infected
    int infections = 0;                  // infection events so far
};

using HealthStates = std::vector<HealthState>;

// Compartment counts indexed by Compartment.
using CompartmentCounts = std::array<int, 4>;

struct DailyCounts {
    int day = 0;
    CompartmentCounts total{};
    CompartmentCounts female{};
    CompartmentCounts male{};
    int new_infections = 0;
    int new_infections_female = 0;
    int new_infections_male = 0;
};

// Counter-based random source for one run. Every draw is a pure function of
// (seed, purpose, indices), so two runs with the same seed see the same
// numbers for the same link-day or person-infection regardless of what
// else differs between them.
class EpidemicRandom {
public:
    explicit EpidemicRandom(std::uint64_t seed);

    double initial_infection(PersonId id) const;
    double coital_act(int day, std::uint64_t link_id) const;
    double transmission(int day, std::uint64_t link_id) const;
    double clearance(PersonId id, int infection_index) const;
    double immunity(PersonId id, int infection_index) const;

private:
    std::uint64_t seed_key_;
    std::uint64_t act_key_;
    std::uint64_t transmit_key_;
    std::uint64_t clearance_key_;
    std::uint64_t immunity_key_;
};

// Clearance delay for a person's infection, days.
double sample_clearance_delay(const EpidemicConfig& cfg, const EpidemicRandom& rnd, PersonId id, int infection_index);

// Independent gender-specific Bernoulli seeding over the whole population.
// Infected persons get clearance_at = day 0 + sampled delay.
HealthStates seed_infection(std::span<const Person> persons, const EpidemicConfig& cfg, const EpidemicRandom& rnd);

// f_early when link_age < early_window, else f_late.
double coital_act_probability(int link_age, const EpidemicConfig& cfg);

// One synchronous transmission round against start-of-step states. Returns
// the newly infected ids in ascending order; their states are updated.
std::vector<PersonId> transmission_step(const ContactNetwork& net, HealthStates& states, const EpidemicConfig& cfg,
                                        const EpidemicRandom& rnd, int day);

struct ClearanceOutcome {
    std::vector<PersonId> recovered;
    std::vector<PersonId> returned_to_susceptible;
};

// Every infected person with clearance_at <= day clears, becoming immune
// with probability rho_gender and susceptible otherwise.
ClearanceOutcome clearance_step(std::span<const Person> persons, HealthStates& states, const EpidemicConfig& cfg,
                                const EpidemicRandom& rnd, int day);

DailyCounts tally(std::span<const Person> persons, const HealthStates& states, int day,
                  std::span<const PersonId> new_infections);

// Called after clearance on every day; the vaccination module decides
// whether the day is a session day.
using VaccinationHook = std::function<void(int day, const ContactNetwork& net, HealthStates& states)>;

// grow_step -> transmission_step -> clearance_step -> hook -> tally.
DailyCounts run_day(NetworkGrower& grower, HealthStates& states, const EpidemicConfig& cfg,
                    const VaccinationHook& hook, const EpidemicRandom& rnd, int day);

}  // namespace seconet
