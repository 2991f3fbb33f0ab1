#include "seconet/epidemic.hpp"

#include <algorithm>

#include "seconet/rng.hpp"

namespace seconet {

EpidemicRandom::EpidemicRandom(std::uint64_t seed)
    : seed_key_(stream_key(seed, Stream::infection_seed)),
      act_key_(hash_key({stream_key(seed, Stream::transmission), 1})),
      transmit_key_(hash_key({stream_key(seed, Stream::transmission), 2})),
      clearance_key_(stream_key(seed, Stream::clearance)),
      immunity_key_(stream_key(seed, Stream::immunity)) {}

double EpidemicRandom::initial_infection(PersonId id) const {
    return keyed_uniform({seed_key_, static_cast<std::uint64_t>(id)});
}
double EpidemicRandom::coital_act(int day, std::uint64_t link_id) const {
    return keyed_uniform({act_key_, static_cast<std::uint64_t>(day), link_id});
}
double EpidemicRandom::transmission(int day, std::uint64_t link_id) const {
    return keyed_uniform({transmit_key_, static_cast<std::uint64_t>(day), link_id});
}
double EpidemicRandom::clearance(PersonId id, int infection_index) const {
    return keyed_uniform({clearance_key_, static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(infection_index)});
}
double EpidemicRandom::immunity(PersonId id, int infection_index) const {
    return keyed_uniform({immunity_key_, static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(infection_index)});
}

double sample_clearance_delay(const EpidemicConfig& cfg, const EpidemicRandom& rnd, PersonId id, int infection_index) {
    return exponential_from_unit(rnd.clearance(id, infection_index), cfg.clearance_mean);
}

namespace {

void infect(HealthState& s, const EpidemicConfig& cfg, const EpidemicRandom& rnd, PersonId id, int day) {
    s.compartment = Compartment::infected;
    s.infected_since = day;
    s.clearance_at = day + sample_clearance_delay(cfg, rnd, id, s.infections);
    ++s.infections;
}

}  // namespace

HealthStates seed_infection(std::span<const Person> persons, const EpidemicConfig& cfg, const EpidemicRandom& rnd) {
    HealthStates states(persons.size());
    for (const auto& p : persons) {
        double prevalence = p.gender == Gender::female ? cfg.init_prevalence_female : cfg.init_prevalence_male;
        if (rnd.initial_infection(p.id) < prevalence) infect(states[static_cast<std::size_t>(p.id)], cfg, rnd, p.id, 0);
    }
    return states;
}

double coital_act_probability(int link_age, const EpidemicConfig& cfg) {
    return link_age < cfg.early_window ? cfg.f_early : cfg.f_late;
}

std::vector<PersonId> transmission_step(const ContactNetwork& net, HealthStates& states, const EpidemicConfig& cfg,
                                        const EpidemicRandom& rnd, int day) {
    std::vector<PersonId> infected;
    for (const auto& r : net.links()) {
        const auto cf = states[static_cast<std::size_t>(r.female)].compartment;
        const auto cm = states[static_cast<std::size_t>(r.male)].compartment;
        PersonId target;
        if (cf == Compartment::infected && cm == Compartment::susceptible) {
            target = r.male;
        } else if (cm == Compartment::infected && cf == Compartment::susceptible) {
            target = r.female;
        } else {
            continue;
        }
        if (rnd.coital_act(day, r.id) >= coital_act_probability(day - r.created_at, cfg)) continue;
        if (rnd.transmission(day, r.id) >= cfg.beta) continue;
        infected.push_back(target);
    }
    std::sort(infected.begin(), infected.end());
    infected.erase(std::unique(infected.begin(), infected.end()), infected.end());
    for (PersonId id : infected) infect(states[static_cast<std::size_t>(id)], cfg, rnd, id, day);
    return infected;
}

ClearanceOutcome clearance_step(std::span<const Person> persons, HealthStates& states, const EpidemicConfig& cfg,
                                const EpidemicRandom& rnd, int day) {
    ClearanceOutcome out;
    for (const auto& p : persons) {
        HealthState& s = states[static_cast<std::size_t>(p.id)];
        if (s.compartment != Compartment::infected || *s.clearance_at > day) continue;
        double rho = p.gender == Gender::female ? cfg.rho_female : cfg.rho_male;
        s.clearance_at.reset();
        s.infected_since.reset();
        if (rnd.immunity(p.id, s.infections - 1) < rho) {
            s.compartment = Compartment::recovered;
            out.recovered.push_back(p.id);
        } else {
            s.compartment = Compartment::susceptible;
            out.returned_to_susceptible.push_back(p.id);
        }
    }
    return out;
}

DailyCounts tally(std::span<const Person> persons, const HealthStates& states, int day,
                  std::span<const PersonId> new_infections) {
    DailyCounts c;
    c.day = day;
    for (const auto& p : persons) {
        auto k = static_cast<std::size_t>(states[static_cast<std::size_t>(p.id)].compartment);
        ++c.total[k];
        ++(p.gender == Gender::female ? c.female : c.male)[k];
    }
    for (PersonId id : new_infections) {
        ++c.new_infections;
        ++(persons[static_cast<std::size_t>(id)].gender == Gender::female ? c.new_infections_female
                                                                          : c.new_infections_male);
    }
    return c;
}

DailyCounts run_day(NetworkGrower& grower, HealthStates& states, const EpidemicConfig& cfg,
                    const VaccinationHook& hook, const EpidemicRandom& rnd, int day) {
    grower.step(day);
    const ContactNetwork& net = grower.network();
    auto infected = transmission_step(net, states, cfg, rnd, day);
    clearance_step(net.persons(), states, cfg, rnd, day);
    if (hook) hook(day, net, states);
    return tally(net.persons(), states, day, infected);
}

}  // namespace seconet
