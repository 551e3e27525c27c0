#include "mlsforge/game.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace mlsforge {

PayoffMatrix apply_rule(const PayoffMatrix& base, const RuleConfig& rule,
                        double row_counter, double col_counter) {
    if (row_counter < 0.0 || col_counter < 0.0)
        throw std::invalid_argument("defection counters must be >= 0");
    if (rule.kind != RuleConfig::Kind::GraduatedSanctions) return base;

    PayoffMatrix m = base;
    const double row_sanction = rule.sanction_rate * row_counter;
    const double col_sanction = rule.sanction_rate * col_counter;
    m.dc.row += row_sanction;
    m.dd.row += row_sanction;
    m.cd.col += col_sanction;
    m.dd.col += col_sanction;
    return m;
}

bool defection_strictly_dominant(const PayoffMatrix& m) {
    return m.dc.row < m.cc.row && m.dd.row < m.cd.row;
}

bool defection_strictly_dominated(const PayoffMatrix& m) {
    return m.dc.row > m.cc.row && m.dd.row > m.cd.row;
}

Action next_action(Strategy s, const MatchMemory& memory,
                   double aspiration_jail) {
    switch (s) {
        case Strategy::AllC:
            return Action::Cooperate;
        case Strategy::AllD:
            return Action::Defect;
        case Strategy::TitForTat:
            return memory.has_history ? memory.opp_last : Action::Cooperate;
        case Strategy::WinStayLoseShift:
            if (!memory.has_history) return Action::Cooperate;
            if (memory.own_last_jail <= aspiration_jail) return memory.own_last;
            return memory.own_last == Action::Cooperate ? Action::Defect
                                                        : Action::Cooperate;
    }
    throw std::invalid_argument("unknown strategy");
}

MatchTrace play_match(Agent& row, Agent& col, const PayoffMatrix& base,
                      const RuleConfig& rule, int rounds) {
    if (rounds <= 0)
        throw std::invalid_argument("a match needs at least one round");
    if (row.defection_counter < 0.0 || col.defection_counter < 0.0)
        throw std::invalid_argument("defection counters must be >= 0");

    const double aspiration = base.cc.row;
    MatchMemory row_mem, col_mem;
    MatchTrace trace;
    trace.rounds.reserve(static_cast<std::size_t>(rounds));

    for (int r = 0; r < rounds; ++r) {
        RoundRecord rec;
        rec.row_counter_before = row.defection_counter;
        rec.col_counter_before = col.defection_counter;

        const PayoffMatrix effective = apply_rule(
            base, rule, row.defection_counter, col.defection_counter);
        rec.row_action = next_action(row.strategy, row_mem, aspiration);
        rec.col_action = next_action(col.strategy, col_mem, aspiration);

        const JailPair jail = effective.at(rec.row_action, rec.col_action);
        rec.row_jail = jail.row;
        rec.col_jail = jail.col;
        trace.row_total_jail += jail.row;
        trace.col_total_jail += jail.col;

        if (rec.row_action == Action::Defect) row.defection_counter += 1.0;
        if (rec.col_action == Action::Defect) col.defection_counter += 1.0;
        row.defection_counter *= rule.counter_decay;
        col.defection_counter *= rule.counter_decay;

        row_mem = {true, rec.row_action, rec.col_action, rec.row_jail};
        col_mem = {true, rec.col_action, rec.row_action, rec.col_jail};
        trace.rounds.push_back(rec);
    }
    return trace;
}

GroupRoundResult run_group_round(Group& group, const PayoffMatrix& base,
                                 const RuleConfig& rule, PairingPolicy pairing,
                                 int rounds, int n_matches, Rng& rng) {
    const std::size_t n = group.agents.size();
    if (n < 2)
        throw std::invalid_argument(
            "a group needs at least two members to play");

    std::vector<double> jail(n, 0.0);
    std::vector<std::int64_t> rounds_played(n, 0);
    std::map<std::pair<int, int>, double> pair_rounds;
    GroupRoundResult result;

    auto play_pair = [&](std::size_t i, std::size_t j) {
        Agent& a = group.agents[i];
        Agent& b = group.agents[j];
        const MatchTrace trace = play_match(a, b, base, rule, rounds);
        jail[i] += trace.row_total_jail;
        jail[j] += trace.col_total_jail;
        rounds_played[i] += rounds;
        rounds_played[j] += rounds;
        for (const auto& rec : trace.rounds) {
            result.cooperate_actions +=
                (rec.row_action == Action::Cooperate ? 1 : 0) +
                (rec.col_action == Action::Cooperate ? 1 : 0);
        }
        result.total_actions += 2 * rounds;
        if (a.kind != b.kind) {
            const Agent& human = a.kind == AgentKind::Human ? a : b;
            const Agent& ai = a.kind == AgentKind::Human ? b : a;
            pair_rounds[{human.id, ai.id}] += static_cast<double>(rounds);
        }
    };

    if (pairing == PairingPolicy::RoundRobin) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) play_pair(i, j);
    } else {
        for (int m = 0; m < n_matches; ++m) {
            const auto i = static_cast<std::size_t>(rng.uniform_index(n));
            auto j = static_cast<std::size_t>(rng.uniform_index(n - 1));
            if (j >= i) ++j;
            play_pair(i, j);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        group.agents[i].performance =
            rounds_played[i] > 0
                ? -jail[i] / static_cast<double>(rounds_played[i])
                : 0.0;
    }

    result.weights.reserve(pair_rounds.size());
    for (const auto& [ids, w] : pair_rounds)
        result.weights.push_back({ids.first, ids.second, w});
    return result;
}

}  // namespace mlsforge
