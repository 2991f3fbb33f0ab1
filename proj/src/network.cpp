#include "seconet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seconet/error.hpp"
#include "seconet/log.hpp"

namespace seconet {
namespace {

// Index drawn with probability weights[i] / total. Returns npos when the
// total weight is not positive.
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t weighted_pick(std::span<const double> weights, double total, Rng& rng) {
    if (!(total > 0.0)) return npos;
    double target = uniform01(rng) * total;
    std::size_t last_positive = npos;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = i;
        target -= weights[i];
        if (target < 0.0) return i;
    }
    return last_positive;  // rounding fell off the end
}

}  // namespace

// -- ContactNetwork --------------------------------------------------------

ContactNetwork::ContactNetwork(std::vector<Person> persons)
    : persons_(std::move(persons)), adjacency_(persons_.size()) {
    for (std::size_t i = 0; i < persons_.size(); ++i) {
        persons_[i].id = static_cast<PersonId>(i);
        if (persons_[i].join_time) {
            joined_.push_back(static_cast<PersonId>(i));
            (persons_[i].gender == Gender::female ? joined_female_ : joined_male_).push_back(static_cast<PersonId>(i));
        } else {
            unjoined_.push_back(static_cast<PersonId>(i));
        }
    }
}

bool ContactNetwork::has_link(PersonId a, PersonId b) const {
    const auto& na = adjacency_[static_cast<std::size_t>(a)];
    const auto& nb = adjacency_[static_cast<std::size_t>(b)];
    const auto& shorter = na.size() <= nb.size() ? na : nb;
    PersonId other = na.size() <= nb.size() ? b : a;
    return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
}

const Relationship& ContactNetwork::add_link(PersonId a, PersonId b, int day, double expected_duration,
                                             double duration_mean, LinkKind kind) {
    if (a == b) throw ContractViolation("add_link: self loop");
    const Person& pa = person(a);
    const Person& pb = person(b);
    if (pa.gender == pb.gender) throw ContractViolation("add_link: same-gender pair");
    if (has_link(a, b)) throw ContractViolation("add_link: duplicate active link");
    if (!(expected_duration > 0.0)) throw ContractViolation("add_link: non-positive duration");

    Relationship r;
    r.id = next_link_id_++;
    r.female = pa.gender == Gender::female ? a : b;
    r.male = pa.gender == Gender::female ? b : a;
    r.created_at = day;
    r.expected_duration = expected_duration;
    r.duration_mean = duration_mean;
    r.kind = kind;
    links_.push_back(r);
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
    persons_[static_cast<std::size_t>(a)].ever_linked = true;
    persons_[static_cast<std::size_t>(b)].ever_linked = true;
    return links_.back();
}

void ContactNetwork::erase_neighbor(PersonId from, PersonId to) {
    auto& adj = adjacency_[static_cast<std::size_t>(from)];
    auto it = std::find(adj.begin(), adj.end(), to);
    if (it != adj.end()) {
        *it = adj.back();
        adj.pop_back();
    }
}

int ContactNetwork::remove_expired(int day) {
    int removed = 0;
    auto keep_end = std::remove_if(links_.begin(), links_.end(), [&](const Relationship& r) {
        if (static_cast<double>(day - r.created_at) >= r.expected_duration) {
            erase_neighbor(r.female, r.male);
            erase_neighbor(r.male, r.female);
            ++removed;
            return true;
        }
        return false;
    });
    links_.erase(keep_end, links_.end());
    return removed;
}

void ContactNetwork::mark_joined(PersonId id, int day) {
    Person& p = persons_[static_cast<std::size_t>(id)];
    if (p.join_time) return;
    if (phase_ == Phase::phase2) throw ContractViolation("mark_joined: no joins in Phase 2");
    p.join_time = day;
    joined_.push_back(id);
    (p.gender == Gender::female ? joined_female_ : joined_male_).push_back(id);
    auto it = std::find(unjoined_.begin(), unjoined_.end(), id);
    if (it != unjoined_.end()) {
        *it = unjoined_.back();
        unjoined_.pop_back();
    }
}

PersonId ContactNetwork::draw_unjoined(Rng& rng) {
    std::size_t k = uniform_index(rng, unjoined_.size());
    PersonId id = unjoined_[k];
    unjoined_[k] = unjoined_.back();
    unjoined_.pop_back();
    return id;
}

void ContactNetwork::enter_phase2() {
    if (phase_ == Phase::phase2) return;
    phase_ = Phase::phase2;
    frozen_links_ = links_.size();
}

std::size_t ContactNetwork::same_gender_link_count() const {
    std::size_t bad = 0;
    for (const auto& r : links_) {
        if (person(r.female).gender == person(r.male).gender) ++bad;
    }
    return bad;
}

// -- Growth model ----------------------------------------------------------

std::vector<Person> sample_population(const GrowthConfig& cfg, Rng& rng) {
    cfg.validate();
    std::vector<double> cumulative(kAgeBuckets);
    std::partial_sum(cfg.age_distribution.begin(), cfg.age_distribution.end(), cumulative.begin());
    std::gamma_distribution<double> delta_dist(cfg.gamma_shape, cfg.mean_delta / cfg.gamma_shape);

    std::vector<Person> persons(static_cast<std::size_t>(cfg.population_size));
    for (std::size_t i = 0; i < persons.size(); ++i) {
        Person& p = persons[i];
        p.id = static_cast<PersonId>(i);
        double u = uniform01(rng) * cumulative.back();
        int bucket = 0;
        while (bucket < kAgeBuckets - 1 && u >= cumulative[static_cast<std::size_t>(bucket)]) ++bucket;
        p.age = kMinAge + 5 * bucket + static_cast<int>(uniform_index(rng, 5));
        p.gender = uniform01(rng) < cfg.female_fraction ? Gender::female : Gender::male;
        double delta = delta_dist(rng);
        while (!(delta > 0.0)) delta = delta_dist(rng);
        p.mean_rel_duration = delta;
        p.lsp = static_cast<int>(std::max(1L, std::lround(static_cast<double>(cfg.horizon) / delta)));
    }
    return persons;
}

double fitness(const Person& i, const Person& j, double mean_age_gap) noexcept {
    double gender_gap = std::abs(gender_value(i.gender) - gender_value(j.gender));
    if (gender_gap == 0.0) return 0.0;
    double age_term = std::max(mean_age_gap, static_cast<double>(std::abs(i.age - j.age)));
    double lsp_term = std::max(1.0, static_cast<double>(std::abs(i.lsp - j.lsp)));
    return gender_gap / (age_term * lsp_term);
}

double sample_relationship_duration(const Person& i, const Person& j, Rng& rng) {
    return sample_exponential(rng, std::min(i.mean_rel_duration, j.mean_rel_duration));
}

std::vector<double> attachment_probabilities(std::span<const int> degrees, std::span<const double> fitnesses,
                                             double fitness_floor) {
    std::vector<double> q(degrees.size());
    double total = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        q[j] = (degrees[j] + fitness_floor) * fitnesses[j];
        total += q[j];
    }
    if (total > 0.0) {
        for (double& x : q) x /= total;
    }
    return q;
}

void seed_links(ContactNetwork& net, const GrowthConfig& cfg, int m0, Rng& rng) {
    if (m0 <= 0) return;
    if (!net.links().empty()) throw ContractViolation("seed_links: network already has links");

    std::vector<PersonId> adults;
    int females = 0, males = 0;
    for (const auto& p : net.persons()) {
        if (p.age < cfg.seeding_min_age) continue;
        adults.push_back(p.id);
        (p.gender == Gender::female ? females : males)++;
    }
    if (females < m0 || males < m0) {
        throw SeedingError("seed_links: need " + std::to_string(m0) + " adults of each gender, have " +
                           std::to_string(females) + " female and " + std::to_string(males) + " male");
    }

    std::vector<double> weights;
    for (int link = 0; link < m0; ++link) {
        // Unlinked adults, in id order.
        std::vector<PersonId> free;
        for (PersonId id : adults) {
            if (!net.person(id).ever_linked) free.push_back(id);
        }
        PersonId i = free[uniform_index(rng, free.size())];
        weights.assign(free.size(), 0.0);
        double total = 0.0;
        for (std::size_t c = 0; c < free.size(); ++c) {
            if (free[c] == i) continue;
            weights[c] = fitness(net.person(i), net.person(free[c]), cfg.mean_age_gap);
            total += weights[c];
        }
        std::size_t pick = weighted_pick(weights, total, rng);
        if (pick == npos) throw SeedingError("seed_links: no opposite-gender candidate with positive fitness");
        PersonId j = free[pick];
        double duration = sample_relationship_duration(net.person(i), net.person(j), rng);
        double mean = std::min(net.person(i).mean_rel_duration, net.person(j).mean_rel_duration);
        net.add_link(i, j, 0, duration, mean, LinkKind::primary);
        net.mark_joined(i, 0);
        net.mark_joined(j, 0);
    }
}

int introduce_nodes(ContactNetwork& net, const GrowthConfig& cfg, int n, int m, double fitness_floor, Rng& rng) {
    if (net.phase() != Phase::phase1 || n <= 0) return 0;
    const int day = net.current_day();

    // Preexisting nodes are those joined before this step.
    const std::vector<PersonId> pre_female(net.joined(Gender::female).begin(), net.joined(Gender::female).end());
    const std::vector<PersonId> pre_male(net.joined(Gender::male).begin(), net.joined(Gender::male).end());

    std::vector<PersonId> arrivals;
    while (static_cast<int>(arrivals.size()) < n && !net.unjoined().empty()) {
        arrivals.push_back(net.draw_unjoined(rng));
    }

    int created = 0;
    std::vector<double> weights;
    for (PersonId i : arrivals) {
        const Person& pi = net.person(i);
        const auto& pool = pi.gender == Gender::female ? pre_male : pre_female;
        weights.resize(pool.size());
        for (std::size_t c = 0; c < pool.size(); ++c) {
            weights[c] = (net.degree(pool[c]) + fitness_floor) * fitness(pi, net.person(pool[c]), cfg.mean_age_gap);
        }
        int made = 0;
        for (; made < m; ++made) {
            double total = std::accumulate(weights.begin(), weights.end(), 0.0);
            std::size_t pick = weighted_pick(weights, total, rng);
            if (pick == npos) break;
            PersonId j = pool[pick];
            weights[pick] = 0.0;
            const Person& pj = net.person(j);
            double duration = sample_relationship_duration(pi, pj, rng);
            net.add_link(i, j, day, duration, std::min(pi.mean_rel_duration, pj.mean_rel_duration),
                         LinkKind::primary);
        }
        if (made < m) {
            log::debug("day " + std::to_string(day) + ": person " + std::to_string(i) + " joined with " +
                       std::to_string(made) + " of " + std::to_string(m) + " links");
        }
        created += made;
    }
    // Joining after the batch keeps same-step arrivals out of each other's pools.
    for (PersonId i : arrivals) net.mark_joined(i, day);
    return created;
}

double removal_rate(const ContactNetwork& net) {
    auto links = net.links();
    if (links.empty()) return 0.0;
    double hazard = 0.0;
    for (const auto& r : links) hazard += 1.0 / r.duration_mean;
    return hazard / static_cast<double>(links.size());
}

int secondary_link_target(const ContactNetwork& net, const GrowthConfig& cfg, int day, double theta) {
    if (!(theta > 0.0)) return 0;
    double base = 0.0;
    if (net.phase() == Phase::phase1) {
        base = static_cast<double>(cfg.joins_per_step) * cfg.links_per_join * day + cfg.initial_links;
    } else {
        base = static_cast<double>(net.frozen_link_count().value_or(0));
    }
    // nearbyint honours the default FE_TONEAREST mode: ties go to even.
    return static_cast<int>(std::nearbyint(base * theta));
}

int form_secondary_links(ContactNetwork& net, const GrowthConfig& cfg, int day, Rng& rng) {
    const int target = secondary_link_target(net, cfg, day, removal_rate(net));
    if (target <= 0 || net.joined().empty()) return 0;

    std::vector<double> weights;
    std::vector<char> excluded(net.size(), 0);
    int created = 0, skipped = 0;
    for (int k = 0; k < target; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt <= cfg.secondary_retry_limit && !placed; ++attempt) {
            auto joined = net.joined();
            PersonId i = joined[uniform_index(rng, joined.size())];
            const Person& pi = net.person(i);
            auto pool = net.joined(opposite(pi.gender));
            for (PersonId nb : net.neighbors(i)) excluded[static_cast<std::size_t>(nb)] = 1;
            weights.resize(pool.size());
            double total = 0.0;
            for (std::size_t c = 0; c < pool.size(); ++c) {
                PersonId j = pool[c];
                weights[c] = excluded[static_cast<std::size_t>(j)]
                                 ? 0.0
                                 : (net.degree(j) + cfg.fitness_floor) * fitness(pi, net.person(j), cfg.mean_age_gap);
                total += weights[c];
            }
            for (PersonId nb : net.neighbors(i)) excluded[static_cast<std::size_t>(nb)] = 0;
            std::size_t pick = weighted_pick(weights, total, rng);
            if (pick == npos) continue;
            const Person& pj = net.person(pool[pick]);
            double duration = sample_relationship_duration(pi, pj, rng);
            net.add_link(i, pj.id, day, duration, std::min(pi.mean_rel_duration, pj.mean_rel_duration),
                         LinkKind::secondary);
            placed = true;
        }
        if (placed) {
            ++created;
        } else {
            ++skipped;
        }
    }
    if (skipped > 0) {
        log::debug("day " + std::to_string(day) + ": skipped " + std::to_string(skipped) +
                   " secondary links after retries");
    }
    return created;
}

void grow_step(ContactNetwork& net, const GrowthConfig& cfg, int day, Rng& rng) {
    net.set_day(day);
    if (net.phase() == Phase::phase1) {
        introduce_nodes(net, cfg, cfg.joins_per_step, cfg.links_per_join, cfg.fitness_floor, rng);
    }
    net.remove_expired(day);
    form_secondary_links(net, cfg, day, rng);
    if (net.phase() == Phase::phase1 && net.unjoined().empty()) net.enter_phase2();
}

NetworkGrower::NetworkGrower(const GrowthConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), rng_(make_stream(seed, Stream::growth)), net_([&] {
          Rng pop = make_stream(seed, Stream::population);
          return sample_population(cfg, pop);
      }()) {
    seed_links(net_, cfg_, cfg_.initial_links, rng_);
}

void NetworkGrower::run_to(int last_day) {
    for (int day = net_.current_day() + 1; day <= last_day; ++day) step(day);
}

ContactNetwork grow_network(const GrowthConfig& cfg, std::uint64_t seed) {
    NetworkGrower g(cfg, seed);
    g.run_to(cfg.horizon);
    return std::move(g.network());
}

}  // namespace seconet
