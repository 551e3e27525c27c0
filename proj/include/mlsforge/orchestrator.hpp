#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mlsforge/domain.hpp"
#include "mlsforge/game.hpp"
#include "mlsforge/institution.hpp"
#include "mlsforge/price.hpp"
#include "mlsforge/rng.hpp"

// The generation loop: group play, fitness assignment, selection accounting,
// rule-frequency evolution, group-to-rule reassignment, social learning.
// All randomness flows through streams derived from the scenario seed, so
// equal scenarios produce equal outputs byte for byte.

namespace mlsforge {

struct LearningParams {
    double imitation_rate = 0.3;
    double mutation_rate = 0.01;

    bool operator==(const LearningParams&) const = default;
};

struct Scenario {
    enum class Mode : std::uint8_t { Empirical, Equilibrium };

    std::uint64_t seed = 1;
    int generations = 0;
    Mode mode = Mode::Empirical;

    int group_count = 0;
    int group_size = 0;
    double ai_fraction = 0.5;

    // Initial strategy distribution per kind, indexed by Strategy order.
    std::array<double, kStrategyCount> init_human{0.25, 0.25, 0.25, 0.25};
    std::array<double, kStrategyCount> init_ai{0.25, 0.25, 0.25, 0.25};

    PayoffMatrix base = PayoffMatrix::canonical();
    std::vector<RuleConfig> rules;
    std::vector<double> initial_rule_freq;  // empty means uniform

    int rounds = 10;
    PairingPolicy pairing = PairingPolicy::RoundRobin;
    // Matches per group under random pairing; ignored for round robin. The
    // config layer resolves an unset value to group_size before validation.
    int n_matches = 0;

    LearningParams learning;
    double selection_intensity = 1.0;
    FitnessMapParams fitness;
    double dt = 0.05;
    EquilibriumParams equilibrium{1e-9, 200000};

    bool operator==(const Scenario&) const = default;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct GenerationRecord {
    int generation = 0;
    // Frequencies in effect while this generation played (pre-step).
    std::vector<double> rule_frequencies;
    std::vector<RuleFitnessReport> rule_reports;
    // Decomposition of the change from the previous generation; all zero
    // for generation 0, which has no predecessor.
    PriceReport price;
    std::array<std::int64_t, kStrategyCount> strategy_census{};
    double mean_pi_human = 0.0;
    double mean_pi_ai = 0.0;
    double coop_share = 0.0;
};

// Sets w = exp(s * performance) on every agent; strictly monotone in
// performance. Throws std::invalid_argument unless s > 0.
void assign_fitness(std::vector<Agent>& agents, double selection_intensity);

// One social-learning pass: each member imitates a fitness-proportionally
// sampled group member with probability m (simultaneous update from the
// pre-step state), then mutates to a uniformly random strategy with
// probability u. Agents whose strategy changed get a fresh defection
// counter. Group fitness must be positive somewhere for imitation sampling.
void social_learning_step(Group& group, const LearningParams& params,
                          Rng& rng);

// Apportions `total` slots to frequencies by largest remainder: floor the
// quotas, then hand leftover slots to the largest fractional parts (ties to
// the lower index). Counts sum to total exactly.
std::vector<int> largest_remainder_counts(const std::vector<double>& freq,
                                          int total);

// Runs the full scenario and returns one record per generation. In
// equilibrium mode only rule frequencies and reports are populated (there is
// no agent population to census). Errors from inner modules are rethrown
// with the generation index prefixed.
std::vector<GenerationRecord> run_scenario(const Scenario& scenario);

}  // namespace mlsforge
