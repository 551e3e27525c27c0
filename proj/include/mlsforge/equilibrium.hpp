#pragma once

#include <array>

#include "mlsforge/domain.hpp"
#include "mlsforge/game.hpp"

// Analytic layer: expected match payoffs against mixed opponent populations
// and damped fictitious play over the four-strategy meta-game.

namespace mlsforge {

// Per-kind mixed strategy profiles. The opponent an agent faces is drawn
// from the combined population: ai_fraction of matches are against the AI
// profile, the rest against the human profile.
struct BeliefDistribution {
    std::array<double, kStrategyCount> human{};
    std::array<double, kStrategyCount> ai{};
    double ai_fraction = 0.5;

    static BeliefDistribution uniform(double ai_fraction = 0.5);

    // Kind-weighted mix actually faced by a focal agent.
    std::array<double, kStrategyCount> opponent_mix() const;

    // Throws std::invalid_argument unless both profiles are distributions
    // (entries >= 0 summing to 1 within 1e-9) and ai_fraction lies in [0, 1].
    void validate() const;
};

// Mean per-round utility (minus jail years) of each pure strategy matchup,
// played out from zero counters: table[focal][opponent].
using UtilityTable =
    std::array<std::array<double, kStrategyCount>, kStrategyCount>;
UtilityTable utility_table(const PayoffMatrix& base, const RuleConfig& rule,
                           int rounds);

// Expected per-round utility of playing `focal` against the belief mix,
// resolved through full match traces (not a closed form).
double expected_payoff(Strategy focal, const BeliefDistribution& beliefs,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds);

// Utility-maximizing pure strategy against the belief mix; ties resolve to
// the lowest-ordered strategy (AllC first, AllD last).
Strategy best_response(const BeliefDistribution& beliefs,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds);

struct EquilibriumParams {
    double epsilon = 1e-9;  // sup-norm belief movement counted as converged
    int max_iters = 10000;

    bool operator==(const EquilibriumParams&) const = default;
};

struct EquilibriumResult {
    BeliefDistribution beliefs;
    bool converged = false;
    int iterations = 0;
    double human_payoff = 0.0;  // per-round expected utility of each kind's
    double ai_payoff = 0.0;     // own profile against the final mix
};

// Damped fictitious play: each kind's profile moves toward its current best
// response with step 1/(t+1). Stops once the largest single-entry movement
// across both kinds drops below epsilon, or at the iteration budget with
// converged = false.
EquilibriumResult find_equilibrium(const BeliefDistribution& initial,
                                   const PayoffMatrix& base,
                                   const RuleConfig& rule, int rounds,
                                   const EquilibriumParams& params = {});

// Largest payoff gain any kind could get by deviating to a pure strategy,
// recomputed from fresh match traces rather than the solver's internals.
// A sound equilibrium keeps this at or below solver tolerance.
double deviation_audit(const EquilibriumResult& result,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds);

}  // namespace mlsforge
