#pragma once

#include <vector>

#include "mlsforge/domain.hpp"

// Selection accounting. Change in mean performance between two generations is
// split into between-group and within-group covariance terms, with the
// within-group part further split by agent kind plus two cross-kind terms.
// Covariances use population (1/N) normalization throughout.

namespace mlsforge {

// Frozen view of one generation: who sat in which group with what fitness
// and performance. Aggregates are cached at build time and must stay
// recomputable from the members.
struct GenerationSnapshot {
    struct Member {
        int id = 0;
        int group = 0;  // caller-chosen label, not required contiguous
        AgentKind kind = AgentKind::Human;
        double fitness = 0.0;
        double performance = 0.0;
    };

    std::vector<Member> members;
    std::vector<int> group_labels;           // sorted unique labels
    std::vector<double> group_fitness;       // mean member fitness per label
    std::vector<double> group_performance;   // mean member performance
    double mean_fitness = 0.0;
    double mean_performance = 0.0;

    // Computes all aggregates. Throws std::invalid_argument on an empty
    // member list.
    static GenerationSnapshot build(std::vector<Member> members);
    static GenerationSnapshot from_groups(const std::vector<Group>& groups);

    std::size_t group_index(int label) const;  // throws on unknown label
};

// Unweighted covariance across groups between group fitness and group mean
// performance: (1/G) sum_g (w_g - mean w)(pi_g - mean pi).
double between_group_term(const GenerationSnapshot& snapshot);

// Unweighted mean over groups holding the kind of the within-group
// covariance between fitness and performance of that kind's members.
// Groups with no such member are excluded; if no group qualifies the kind is
// absent and that is an error (std::invalid_argument), not a zero.
double within_group_term(const GenerationSnapshot& snapshot, AgentKind kind);

struct CrossTerms {
    double human_fitness_ai_performance = 0.0;
    double ai_fitness_human_performance = 0.0;
    // Some group had interaction pairs whose weights were all zero; such a
    // group contributes 0 to the group average.
    bool zero_weight_group = false;
};

// Interaction-weighted covariances over human/AI pairs, per group, then
// averaged unweighted across groups that have at least one listed pair.
// Both the means and the covariance use the same weights. Pairs must join
// a human and an AI of the same group; weights must be >= 0.
CrossTerms cross_agent_terms(const GenerationSnapshot& snapshot,
                             const std::vector<InteractionWeight>& weights);

// Same weighting scheme applied to the performances of the two sides of
// each pair: used as the covariance input of the rule-fitness map. Returns
// 0 when no group has pairs.
double cross_performance_covariance(
    const GenerationSnapshot& snapshot,
    const std::vector<InteractionWeight>& weights);

struct PriceReport {
    double between_group = 0.0;
    double within_human = 0.0;
    double within_ai = 0.0;
    double cross_h_fit_ai_perf = 0.0;
    double cross_ai_fit_h_perf = 0.0;
    double delta_pi_bar = 0.0;
    double lhs = 0.0;  // mean fitness at t times delta_pi_bar
    // lhs minus (between + all-agent within average); zero to rounding for
    // equal-size groups under fitness-proportional reproduction, and the
    // honest gap otherwise. Computed, never assumed.
    double residual_two_term = 0.0;
    // All-agent within average minus the four-way split above; exposes
    // whether the extended split reconstructs the within-group total.
    double residual_five_term = 0.0;
    bool zero_weight_group = false;
};

// Full decomposition of the transition from snap_t to snap_t1. Group label
// sets must match (membership counts may differ via reproduction); mean
// fitness at t must be positive. Kind-specific within terms are 0 when the
// kind is absent from the whole population.
PriceReport price_decomposition(const GenerationSnapshot& snap_t,
                                const GenerationSnapshot& snap_t1,
                                const std::vector<InteractionWeight>& weights);

// Size-weighted split of the population fitness/performance covariance:
// exact for any group sizes (law of total covariance), unlike the
// equal-weight group averages reported above.
struct SizeWeightedTwoTerm {
    double between = 0.0;
    double within = 0.0;
};
SizeWeightedTwoTerm size_weighted_two_term(const GenerationSnapshot& snapshot);

}  // namespace mlsforge
