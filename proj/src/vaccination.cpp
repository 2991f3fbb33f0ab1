#include "seconet/vaccination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seconet/error.hpp"

namespace seconet {

VaccinationPlan build_plan(std::span<const Person> persons, Strategy strategy, const VaccinationConfig& cfg) {
    cfg.validate();
    VaccinationPlan plan;
    plan.strategy = strategy;
    plan.session_days = cfg.session_days;
    plan.age_limit = cfg.age_limit;
    plan.restrict_under_26 = cfg.restrict_under_26;
    const auto young = std::count_if(persons.begin(), persons.end(), [&](const Person& p) { return p.age < cfg.age_limit; });
    plan.total_doses = static_cast<int>(std::floor(cfg.coverage_fraction * static_cast<double>(young) + 1e-9));
    const int sessions = static_cast<int>(plan.session_days.size());
    plan.doses_per_session.assign(plan.session_days.size(), 0);
    if (sessions == 0) {
        plan.total_doses = 0;
        return plan;
    }
    for (int s = 0; s < sessions; ++s) {
        plan.doses_per_session[static_cast<std::size_t>(s)] =
            plan.total_doses / sessions + (s < plan.total_doses % sessions ? 1 : 0);
    }
    return plan;
}

bool eligible(const Person& p, const HealthState& s, const VaccinationPlan& plan) {
    if (s.compartment != Compartment::susceptible || !p.ever_linked) return false;
    const bool young = p.age < plan.age_limit;
    if (plan.strategy == Strategy::age && !young) return false;
    if (plan.restrict_under_26 && !young) return false;
    return true;
}

std::vector<PersonId> eligible_persons(const ContactNetwork& net, const HealthStates& states,
                                       const VaccinationPlan& plan) {
    std::vector<PersonId> out;
    for (const auto& p : net.persons()) {
        if (eligible(p, states[static_cast<std::size_t>(p.id)], plan)) out.push_back(p.id);
    }
    return out;
}

std::vector<PersonId> select_age_based(std::span<const PersonId> eligibles, int doses, Rng& rng) {
    std::vector<PersonId> pool(eligibles.begin(), eligibles.end());
    const std::size_t k = std::min(pool.size(), static_cast<std::size_t>(std::max(doses, 0)));
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + uniform_index(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<PersonId> select_ring(const ContactNetwork& net, const HealthStates& states,
                                  std::span<const PersonId> eligibles, int doses) {
    std::vector<PersonId> chosen;
    if (doses <= 0) return chosen;
    std::vector<char> is_eligible(net.size(), 0);
    for (PersonId id : eligibles) is_eligible[static_cast<std::size_t>(id)] = 1;

    std::vector<PersonId> infected;
    for (const auto& p : net.persons()) {
        if (states[static_cast<std::size_t>(p.id)].compartment == Compartment::infected) infected.push_back(p.id);
    }
    std::stable_sort(infected.begin(), infected.end(),
                     [&](PersonId a, PersonId b) { return net.degree(a) > net.degree(b); });

    std::vector<PersonId> ring;
    for (PersonId hub : infected) {
        ring.assign(net.neighbors(hub).begin(), net.neighbors(hub).end());
        std::sort(ring.begin(), ring.end());
        for (PersonId nb : ring) {
            auto idx = static_cast<std::size_t>(nb);
            if (!is_eligible[idx]) continue;
            is_eligible[idx] = 0;  // collected
            chosen.push_back(nb);
            if (static_cast<int>(chosen.size()) == doses) return chosen;
        }
    }
    return chosen;
}

std::vector<PersonId> select_by_centrality(const CentralityScores& scores, std::span<const PersonId> eligibles,
                                           int doses, int day) {
    if (scores.computed_at != day) {
        throw ContractViolation("select_by_centrality: scores computed on day " + std::to_string(scores.computed_at) +
                                ", session day " + std::to_string(day));
    }
    std::vector<PersonId> ranked(eligibles.begin(), eligibles.end());
    const std::size_t k = std::min(ranked.size(), static_cast<std::size_t>(std::max(doses, 0)));
    auto better = [&](PersonId a, PersonId b) {
        double sa = scores.values[static_cast<std::size_t>(a)];
        double sb = scores.values[static_cast<std::size_t>(b)];
        return sa != sb ? sa > sb : a < b;
    };
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), better);
    ranked.resize(k);
    return ranked;
}

void apply_vaccination(HealthStates& states, std::span<const PersonId> chosen) {
    for (PersonId id : chosen) {
        if (states[static_cast<std::size_t>(id)].compartment != Compartment::susceptible) {
            throw ContractViolation("apply_vaccination: person " + std::to_string(id) + " is not susceptible");
        }
    }
    for (PersonId id : chosen) states[static_cast<std::size_t>(id)].compartment = Compartment::vaccinated;
}

namespace {

std::optional<CentralityKind> centrality_for(Strategy s) {
    switch (s) {
        case Strategy::degree: return CentralityKind::degree;
        case Strategy::betweenness: return CentralityKind::betweenness;
        case Strategy::closeness: return CentralityKind::closeness;
        case Strategy::percolation: return CentralityKind::percolation;
        case Strategy::eigenvector: return CentralityKind::eigenvector;
        default: return std::nullopt;
    }
}

}  // namespace

Vaccinator::Vaccinator(VaccinationPlan plan, std::uint64_t seed)
    : plan_(std::move(plan)), rng_(make_stream(seed, Stream::vaccination)) {}

void Vaccinator::on_day(int day, const ContactNetwork& net, HealthStates& states) {
    if (plan_.strategy == Strategy::none) return;
    auto it = std::find(plan_.session_days.begin(), plan_.session_days.end(), day);
    if (it == plan_.session_days.end()) return;
    const int doses = plan_.doses_per_session[static_cast<std::size_t>(it - plan_.session_days.begin())];

    SessionRecord rec;
    rec.day = day;
    rec.strategy = plan_.strategy;
    rec.doses_available = doses;
    if (doses > 0) {
        auto pool = eligible_persons(net, states, plan_);
        if (plan_.strategy == Strategy::age) {
            rec.chosen = select_age_based(pool, doses, rng_);
        } else if (plan_.strategy == Strategy::ring) {
            rec.chosen = select_ring(net, states, pool, doses);
        } else {
            std::vector<char> infected(net.size(), 0);
            for (std::size_t i = 0; i < states.size(); ++i) infected[i] = states[i].compartment == Compartment::infected;
            auto scores = compute_centrality(*centrality_for(plan_.strategy), net, infected, eigenvector_options);
            rec.chosen = select_by_centrality(scores, pool, doses, day);
        }
        apply_vaccination(states, rec.chosen);
    }
    log_.push_back(std::move(rec));
}

}  // namespace seconet
