#pragma once

#include <cstdint>
#include <vector>

#include "mlsforge/domain.hpp"
#include "mlsforge/rng.hpp"

// Repeated-game engine: institutional payoff transforms, the four memory-one
// strategies, single matches, and whole-group rounds.

namespace mlsforge {

// Transforms the base stage game for one round under the given rule using
// each side's current defection counter. Graduated sanctions add
// sanction_rate * counter to the defector's own jail years in every cell
// where that side defects; other rules leave the matrix untouched.
// Throws std::invalid_argument on negative counters.
PayoffMatrix apply_rule(const PayoffMatrix& base, const RuleConfig& rule,
                        double row_counter, double col_counter);

// Row-player view: defecting earns strictly less jail in both columns.
bool defection_strictly_dominant(const PayoffMatrix& m);

// Row-player view: defecting earns strictly more jail in both columns.
bool defection_strictly_dominated(const PayoffMatrix& m);

// What one side remembers about the previous round of the current match.
struct MatchMemory {
    bool has_history = false;
    Action own_last = Action::Cooperate;
    Action opp_last = Action::Cooperate;
    double own_last_jail = 0.0;
};

// Pure decision function. Win-stay-lose-shift treats jail at or below the
// aspiration (the mutual-cooperation jail of the base game) as a win.
Action next_action(Strategy s, const MatchMemory& memory,
                   double aspiration_jail);

struct RoundRecord {
    Action row_action = Action::Cooperate;
    Action col_action = Action::Cooperate;
    double row_jail = 0.0;
    double col_jail = 0.0;
    // Counters as they entered the round, i.e. what priced its sanctions.
    double row_counter_before = 0.0;
    double col_counter_before = 0.0;
};

struct MatchTrace {
    std::vector<RoundRecord> rounds;
    double row_total_jail = 0.0;
    double col_total_jail = 0.0;
};

// Plays `rounds` rounds between two agents and returns the full trace.
// Per round: the stage game is transformed with the counters as they stand,
// actions and jail are resolved, each defector's counter grows by 1, then
// both counters decay by the rule's factor. Counters persist on the agents
// across matches; strategies and kinds are left untouched.
// Throws std::invalid_argument on rounds == 0 or negative entry counters.
MatchTrace play_match(Agent& row, Agent& col, const PayoffMatrix& base,
                      const RuleConfig& rule, int rounds);

enum class PairingPolicy : std::uint8_t { RoundRobin, RandomPairs };

struct GroupRoundResult {
    // Round counts per human/AI pair, sorted by (human id, AI id).
    std::vector<InteractionWeight> weights;
    std::int64_t cooperate_actions = 0;
    std::int64_t total_actions = 0;
};

// Runs one generation's matches inside a group and writes each member's
// performance (minus mean jail per round played; members that never played
// score 0). Round robin plays every unordered pair once in index order;
// random pairing draws `n_matches` ordered pairs from `rng`.
// Throws std::invalid_argument if the group has fewer than two members.
GroupRoundResult run_group_round(Group& group, const PayoffMatrix& base,
                                 const RuleConfig& rule, PairingPolicy pairing,
                                 int rounds, int n_matches, Rng& rng);

}  // namespace mlsforge
