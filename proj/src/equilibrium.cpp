#include "mlsforge/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlsforge {

namespace {

void check_profile(const std::array<double, kStrategyCount>& p,
                   const char* label) {
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(label) +
                                        " profile entries must be >= 0");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(label) +
                                    " profile must sum to 1");
}

// Per-round utility of `focal` against `opponent` from fresh agents.
double matchup_utility(Strategy focal, Strategy opponent,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds) {
    Agent row;
    row.strategy = focal;
    Agent col;
    col.strategy = opponent;
    const MatchTrace trace = play_match(row, col, base, rule, rounds);
    return -trace.row_total_jail / static_cast<double>(rounds);
}

double mix_payoff(const std::array<double, kStrategyCount>& row_utilities,
                  const std::array<double, kStrategyCount>& mix) {
    double total = 0.0;
    for (std::size_t s = 0; s < kStrategyCount; ++s)
        total += mix[s] * row_utilities[s];
    return total;
}

}  // namespace

BeliefDistribution BeliefDistribution::uniform(double ai_fraction) {
    BeliefDistribution b;
    b.human.fill(1.0 / static_cast<double>(kStrategyCount));
    b.ai = b.human;
    b.ai_fraction = ai_fraction;
    return b;
}

std::array<double, kStrategyCount> BeliefDistribution::opponent_mix() const {
    std::array<double, kStrategyCount> mix{};
    for (std::size_t s = 0; s < kStrategyCount; ++s)
        mix[s] = (1.0 - ai_fraction) * human[s] + ai_fraction * ai[s];
    return mix;
}

void BeliefDistribution::validate() const {
    check_profile(human, "human");
    check_profile(ai, "ai");
    if (!(ai_fraction >= 0.0 && ai_fraction <= 1.0))
        throw std::invalid_argument("ai_fraction must lie in [0, 1]");
}

UtilityTable utility_table(const PayoffMatrix& base, const RuleConfig& rule,
                           int rounds) {
    UtilityTable table{};
    for (std::size_t f = 0; f < kStrategyCount; ++f)
        for (std::size_t o = 0; o < kStrategyCount; ++o)
            table[f][o] = matchup_utility(kAllStrategies[f], kAllStrategies[o],
                                          base, rule, rounds);
    return table;
}

double expected_payoff(Strategy focal, const BeliefDistribution& beliefs,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds) {
    beliefs.validate();
    const auto mix = beliefs.opponent_mix();
    double total = 0.0;
    for (std::size_t o = 0; o < kStrategyCount; ++o) {
        if (mix[o] == 0.0) continue;
        total += mix[o] *
                 matchup_utility(focal, kAllStrategies[o], base, rule, rounds);
    }
    return total;
}

Strategy best_response(const BeliefDistribution& beliefs,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds) {
    beliefs.validate();
    Strategy best = Strategy::AllC;
    double best_value = expected_payoff(Strategy::AllC, beliefs, base, rule,
                                        rounds);
    for (std::size_t s = 1; s < kStrategyCount; ++s) {
        const double v =
            expected_payoff(kAllStrategies[s], beliefs, base, rule, rounds);
        if (v > best_value) {
            best_value = v;
            best = kAllStrategies[s];
        }
    }
    return best;
}

EquilibriumResult find_equilibrium(const BeliefDistribution& initial,
                                   const PayoffMatrix& base,
                                   const RuleConfig& rule, int rounds,
                                   const EquilibriumParams& params) {
    initial.validate();
    if (params.max_iters <= 0)
        throw std::invalid_argument("max_iters must be >= 1");
    if (!(params.epsilon > 0.0))
        throw std::invalid_argument("epsilon must be > 0");

    const UtilityTable table = utility_table(base, rule, rounds);
    auto table_best = [&](const std::array<double, kStrategyCount>& mix) {
        std::size_t best = 0;
        double best_value = mix_payoff(table[0], mix);
        for (std::size_t s = 1; s < kStrategyCount; ++s) {
            const double v = mix_payoff(table[s], mix);
            if (v > best_value) {
                best_value = v;
                best = s;
            }
        }
        return best;
    };

    EquilibriumResult result;
    result.beliefs = initial;

    for (int t = 1; t <= params.max_iters; ++t) {
        const auto mix = result.beliefs.opponent_mix();
        const std::size_t br_h = table_best(mix);
        const std::size_t br_ai = br_h;  // both kinds face the same mix

        const double step = 1.0 / static_cast<double>(t + 1);
        double movement = 0.0;
        for (std::size_t s = 0; s < kStrategyCount; ++s) {
            const double target_h = s == br_h ? 1.0 : 0.0;
            const double target_ai = s == br_ai ? 1.0 : 0.0;
            const double dh = step * (target_h - result.beliefs.human[s]);
            const double dai = step * (target_ai - result.beliefs.ai[s]);
            result.beliefs.human[s] += dh;
            result.beliefs.ai[s] += dai;
            movement = std::max({movement, std::abs(dh), std::abs(dai)});
        }
        result.iterations = t;
        if (movement < params.epsilon) {
            result.converged = true;
            break;
        }
    }

    // The movement criterion fires while the iterate still trails the limit
    // by O(sqrt(epsilon)). When the limit is a self-consistent pure profile,
    // report that exact fixed point; the iterate is just its truncation.
    if (result.converged) {
        const std::size_t candidate =
            table_best(result.beliefs.opponent_mix());
        std::array<double, kStrategyCount> vertex{};
        vertex[candidate] = 1.0;
        double best_at_vertex = mix_payoff(table[0], vertex);
        for (std::size_t s = 1; s < kStrategyCount; ++s)
            best_at_vertex =
                std::max(best_at_vertex, mix_payoff(table[s], vertex));
        const double own = mix_payoff(table[candidate], vertex);
        if (best_at_vertex - own <=
            1e-12 * std::max(1.0, std::abs(best_at_vertex))) {
            result.beliefs.human = vertex;
            result.beliefs.ai = vertex;
        }
    }

    const auto mix = result.beliefs.opponent_mix();
    for (std::size_t s = 0; s < kStrategyCount; ++s) {
        result.human_payoff +=
            result.beliefs.human[s] * mix_payoff(table[s], mix);
        result.ai_payoff += result.beliefs.ai[s] * mix_payoff(table[s], mix);
    }
    return result;
}

double deviation_audit(const EquilibriumResult& result,
                       const PayoffMatrix& base, const RuleConfig& rule,
                       int rounds) {
    double worst = 0.0;
    for (Strategy s : kAllStrategies) {
        const double v =
            expected_payoff(s, result.beliefs, base, rule, rounds);
        worst = std::max(worst, v - result.human_payoff);
        worst = std::max(worst, v - result.ai_payoff);
    }
    return worst;
}

}  // namespace mlsforge
