#pragma once

#include <stdexcept>
#include <vector>

#include "mlsforge/domain.hpp"
#include "mlsforge/equilibrium.hpp"

// Rule-level selection: scores rule configurations from their agent-level
// outcomes and evolves rule frequencies by replicator dynamics.

namespace mlsforge {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuleFitnessReport {
    double v = 0.0;        // f_value - cost, exactly
    double f_value = 0.0;
    double mean_pi_h = 0.0;
    double mean_pi_ai = 0.0;
    double cross_cov = 0.0;
    double cost = 0.0;
};

// alpha * human performance + beta * AI performance + gamma * cross
// covariance. Throws std::invalid_argument on non-finite inputs.
double fitness_map(double mean_pi_h, double mean_pi_ai, double cross_cov,
                   const FitnessMapParams& params);

// Rule fitness V = fitness_map(...) - rule.cost. Refuses non-converged
// equilibria (ConvergenceError) unless the caller explicitly accepts them.
double institutional_fitness(const RuleConfig& rule,
                             const EquilibriumResult& eq, double cross_cov,
                             const FitnessMapParams& params,
                             bool allow_unconverged = false);

// One explicit-Euler replicator step with renormalization. The per-rule
// growth term is computed as sum_k r_k (V_j - V_k), which is exactly
// invariant under adding a constant to every V. Negative intermediates are
// clipped to zero before renormalizing; each clip increments *clip_events
// when provided. Throws std::invalid_argument on dt <= 0, non-finite V, or
// a size mismatch between r and V.
RulePopulation replicator_step(const RulePopulation& r,
                               const std::vector<double>& fitness, double dt,
                               int* clip_events = nullptr);

// Starting beliefs for a rule's equilibrium search: uniform for most rules;
// norm-seeded rules start from their seeded mix (seeding_fraction of mass on
// the seeded strategy, the rest uniform).
BeliefDistribution initial_beliefs_for_rule(const RuleConfig& rule,
                                            double ai_fraction);

struct EvolveParams {
    PayoffMatrix base = PayoffMatrix::canonical();
    int rounds = 10;
    double ai_fraction = 0.5;
    FitnessMapParams fitness;
    double dt = 0.05;
    EquilibriumParams equilibrium;
};

struct EvolveResult {
    // One report per rule, in rule order; equilibria are static so a single
    // evaluation covers the whole trajectory.
    std::vector<RuleFitnessReport> reports;
    // trajectory[g] is the frequency vector after g replicator steps;
    // trajectory[0] is the initial population.
    std::vector<RulePopulation> trajectory;
    int clip_events = 0;
};

// Equilibrium-mode rule competition: evaluates each rule's fictitious-play
// equilibrium once (norm-seeded rules start play from their seeded mix), maps
// it to V, then steps frequencies `generations` times. The cross-covariance
// input is zero here; only empirical runs observe realized interactions.
// Propagates ConvergenceError if any rule's equilibrium fails to converge.
EvolveResult evolve_rules(const std::vector<RuleConfig>& rules,
                          const RulePopulation& initial,
                          const EvolveParams& params, int generations);

}  // namespace mlsforge
