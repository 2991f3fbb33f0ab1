#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seconet/config.hpp"
#include "seconet/rng.hpp"

namespace seconet {

using PersonId = std::int32_t;

enum class Gender : std::int8_t { female = 1, male = -1 };

inline int gender_value(Gender g) { return static_cast<int>(g); }
inline Gender opposite(Gender g) { return g == Gender::female ? Gender::male : Gender::female; }

struct Person {
    PersonId id = 0;
    int age = kMinAge;
    Gender gender = Gender::female;
    double mean_rel_duration = 100.0;  // delta_i, days
    int lsp = 1;                       // lifetime sexual partners, round(T / delta_i) >= 1
    std::optional<int> join_time;
    bool ever_linked = false;
};

enum class LinkKind : std::uint8_t { primary, secondary };

struct Relationship {
    std::uint64_t id = 0;        // creation serial, unique per network
    PersonId female = 0;
    PersonId male = 0;
    int created_at = 0;
    double expected_duration = 0.0;  // sampled Delta_ij
    double duration_mean = 0.0;      // min(delta_i, delta_j), the mean Delta_ij was drawn with
    LinkKind kind = LinkKind::primary;
};

enum class Phase : std::uint8_t { phase1, phase2 };

// The evolving bipartite contact graph together with its growth-phase state.
//
// Links are undirected and always join a female to a male; add_link refuses
// anything else. Persons are never created or destroyed after construction.
class ContactNetwork {
public:
    explicit ContactNetwork(std::vector<Person> persons);

    std::size_t size() const noexcept { return persons_.size(); }
    const Person& person(PersonId id) const { return persons_[static_cast<std::size_t>(id)]; }
    std::span<const Person> persons() const noexcept { return persons_; }

    std::span<const Relationship> links() const noexcept { return links_; }
    std::span<const PersonId> neighbors(PersonId id) const {
        return adjacency_[static_cast<std::size_t>(id)];
    }
    int degree(PersonId id) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(id)].size()); }
    bool has_link(PersonId a, PersonId b) const;

    // Joined persons in join order, all genders and split by gender.
    std::span<const PersonId> joined() const noexcept { return joined_; }
    std::span<const PersonId> joined(Gender g) const noexcept {
        return g == Gender::female ? joined_female_ : joined_male_;
    }
    bool is_joined(PersonId id) const { return person(id).join_time.has_value(); }
    std::span<const PersonId> unjoined() const noexcept { return unjoined_; }

    Phase phase() const noexcept { return phase_; }
    // M: active link count frozen at the Phase 1 -> 2 transition.
    std::optional<std::size_t> frozen_link_count() const noexcept { return frozen_links_; }
    int current_day() const noexcept { return current_day_; }
    std::uint64_t links_created() const noexcept { return next_link_id_; }

    // Throws ContractViolation on a same-gender pair, a self loop, or a
    // duplicate active pair.
    const Relationship& add_link(PersonId a, PersonId b, int day, double expected_duration,
                                 double duration_mean, LinkKind kind);

    // Removes every link with day - created_at >= expected_duration.
    int remove_expired(int day);

    void mark_joined(PersonId id, int day);
    // Takes a uniformly chosen not-yet-joined person out of the pool without
    // marking it joined. Pool must be non-empty.
    PersonId draw_unjoined(Rng& rng);

    void set_day(int day) noexcept { current_day_ = day; }
    void enter_phase2();

    // Count of active links whose endpoints share a gender. Always 0 unless
    // the class invariant has been broken.
    std::size_t same_gender_link_count() const;

private:
    void erase_neighbor(PersonId from, PersonId to);

    std::vector<Person> persons_;
    std::vector<Relationship> links_;
    std::vector<std::vector<PersonId>> adjacency_;
    std::vector<PersonId> joined_;
    std::vector<PersonId> joined_female_;
    std::vector<PersonId> joined_male_;
    std::vector<PersonId> unjoined_;
    Phase phase_ = Phase::phase1;
    std::optional<std::size_t> frozen_links_;
    int current_day_ = 0;
    std::uint64_t next_link_id_ = 0;
};

// -- Growth model ----------------------------------------------------------

std::vector<Person> sample_population(const GrowthConfig& cfg, Rng& rng);

// Partner attractiveness of j as seen by i. Zero for same-gender pairs.
double fitness(const Person& i, const Person& j, double mean_age_gap) noexcept;

// Delta_ij ~ Exp(mean = min(delta_i, delta_j)).
double sample_relationship_duration(const Person& i, const Person& j, Rng& rng);

// Normalized attachment probabilities q_j = (k_j + eps) phi_j / sum(...).
// All zeros when every weight is zero.
std::vector<double> attachment_probabilities(std::span<const int> degrees, std::span<const double> fitnesses,
                                             double fitness_floor);

// Places m0 monogamous links between unlinked adults, partner chosen with
// probability proportional to fitness. m0 = 0 is a no-op. Throws SeedingError
// when too few eligible adults exist.
void seed_links(ContactNetwork& net, const GrowthConfig& cfg, int m0, Rng& rng);

// Mechanism I: up to `n` new persons each attach to `m` distinct preexisting
// nodes. Returns the number of links created.
int introduce_nodes(ContactNetwork& net, const GrowthConfig& cfg, int n, int m, double fitness_floor, Rng& rng);

// Mechanism II.
inline int remove_expired_links(ContactNetwork& net, int day) { return net.remove_expired(day); }

// Per-link daily removal hazard averaged over active links:
// mean(1 / min(delta_i, delta_j)). Zero with no active links.
double removal_rate(const ContactNetwork& net);

// Number of secondary links to form on `day` given removal rate `theta`.
// Phase 1: (n m t + m0) theta; Phase 2: M theta; rounded half to even.
int secondary_link_target(const ContactNetwork& net, const GrowthConfig& cfg, int day, double theta);

// Mechanism III. Returns the number of links created.
int form_secondary_links(ContactNetwork& net, const GrowthConfig& cfg, int day, Rng& rng);

// One day of growth: introduce (Phase 1) -> remove expired -> secondary.
// Enters Phase 2 at the end of the step in which the last person joined.
void grow_step(ContactNetwork& net, const GrowthConfig& cfg, int day, Rng& rng);

// Per-run growth driver: owns the population and growth streams.
class NetworkGrower {
public:
    NetworkGrower(const GrowthConfig& cfg, std::uint64_t seed);

    ContactNetwork& network() noexcept { return net_; }
    const ContactNetwork& network() const noexcept { return net_; }
    const GrowthConfig& config() const noexcept { return cfg_; }

    void step(int day) { grow_step(net_, cfg_, day, rng_); }
    void run_to(int last_day);

private:
    GrowthConfig cfg_;
    Rng rng_;
    ContactNetwork net_;
};

// Grows a full network to the horizon.
ContactNetwork grow_network(const GrowthConfig& cfg, std::uint64_t seed);

}  // namespace seconet
