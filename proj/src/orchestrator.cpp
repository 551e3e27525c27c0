#include "mlsforge/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mlsforge {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

void check_distribution(const std::array<double, kStrategyCount>& d,
                        const char* field) {
    double total = 0.0;
    for (double v : d) {
        require(v >= 0.0 && std::isfinite(v),
                std::string(field) + ": entries must be >= 0");
        total += v;
    }
    require(std::abs(total - 1.0) <= 1e-9,
            std::string(field) + ": must sum to 1");
}

Strategy sample_strategy(const std::array<double, kStrategyCount>& dist,
                         Rng& rng) {
    return kAllStrategies[rng.weighted_index(dist)];
}

// Moves groups between rules so per-rule counts match `target`, touching as
// few groups as possible. Surplus rules release their highest-id groups;
// deficits fill in rule order from the released pool, lowest group id first.
void reassign_groups(std::vector<Group>& groups,
                     const std::vector<int>& target) {
    std::vector<int> have(target.size(), 0);
    for (const auto& g : groups)
        have[static_cast<std::size_t>(g.rule_id)] += 1;

    std::vector<int> pool;  // indexes into `groups`
    for (std::size_t rule = 0; rule < target.size(); ++rule) {
        int surplus = have[rule] - target[rule];
        if (surplus <= 0) continue;
        for (auto i = static_cast<int>(groups.size()) - 1;
             i >= 0 && surplus > 0; --i) {
            if (groups[static_cast<std::size_t>(i)].rule_id ==
                static_cast<int>(rule)) {
                pool.push_back(i);
                --surplus;
            }
        }
    }
    std::sort(pool.begin(), pool.end());
    std::size_t next = 0;
    for (std::size_t rule = 0; rule < target.size(); ++rule) {
        for (int deficit = target[rule] - have[rule]; deficit > 0; --deficit)
            groups[static_cast<std::size_t>(pool[next++])].rule_id =
                static_cast<int>(rule);
    }
}

struct RuleObservation {
    bool observed = false;
    double mean_pi_h = 0.0;
    double mean_pi_ai = 0.0;
    double cross_cov = 0.0;
};

// Pooled kind means and the weighted performance covariance over one rule's
// groups this generation.
RuleObservation observe_rule(const std::vector<Group>& groups, int rule_id,
                             const std::vector<InteractionWeight>& weights) {
    RuleObservation obs;
    std::vector<Group> mine;
    for (const auto& g : groups)
        if (g.rule_id == rule_id) mine.push_back(g);
    if (mine.empty()) return obs;
    obs.observed = true;

    double sum_h = 0.0, sum_ai = 0.0;
    std::size_t n_h = 0, n_ai = 0;
    for (const auto& g : mine) {
        for (const auto& a : g.agents) {
            if (a.kind == AgentKind::Human) {
                sum_h += a.performance;
                ++n_h;
            } else {
                sum_ai += a.performance;
                ++n_ai;
            }
        }
    }
    obs.mean_pi_h = n_h > 0 ? sum_h / static_cast<double>(n_h) : 0.0;
    obs.mean_pi_ai = n_ai > 0 ? sum_ai / static_cast<double>(n_ai) : 0.0;

    // Keep only interaction pairs whose agents live in this rule's groups.
    const GenerationSnapshot snap = GenerationSnapshot::from_groups(mine);
    std::vector<bool> present;
    int max_id = 0;
    for (const auto& m : snap.members) max_id = std::max(max_id, m.id);
    present.assign(static_cast<std::size_t>(max_id) + 1, false);
    for (const auto& m : snap.members)
        present[static_cast<std::size_t>(m.id)] = true;
    std::vector<InteractionWeight> filtered;
    for (const auto& w : weights) {
        if (w.human_id >= 0 &&
            w.human_id <= max_id &&
            present[static_cast<std::size_t>(w.human_id)])
            filtered.push_back(w);
    }
    obs.cross_cov = cross_performance_covariance(snap, filtered);
    return obs;
}

std::vector<GenerationRecord> run_equilibrium_mode(const Scenario& scenario) {
    EvolveParams params;
    params.base = scenario.base;
    params.rounds = scenario.rounds;
    params.ai_fraction = scenario.ai_fraction;
    params.fitness = scenario.fitness;
    params.dt = scenario.dt;
    params.equilibrium = scenario.equilibrium;

    const RulePopulation initial =
        scenario.initial_rule_freq.empty()
            ? RulePopulation::uniform(scenario.rules.size())
            : RulePopulation(scenario.initial_rule_freq);
    const EvolveResult evolved = evolve_rules(scenario.rules, initial, params,
                                              scenario.generations);

    std::vector<GenerationRecord> records;
    records.reserve(static_cast<std::size_t>(scenario.generations));
    for (int g = 0; g < scenario.generations; ++g) {
        GenerationRecord rec;
        rec.generation = g;
        rec.rule_frequencies =
            evolved.trajectory[static_cast<std::size_t>(g)].frequencies();
        rec.rule_reports = evolved.reports;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

void Scenario::validate() const {
    require(group_count >= 1, "groups.count must be >= 1");
    require(group_size >= 2, "groups.size must be >= 2");
    require(ai_fraction >= 0.0 && ai_fraction <= 1.0,
            "groups.ai_fraction must lie in [0, 1]");
    require(generations >= 0, "scenario.generations must be >= 0");
    require(rounds >= 1, "game.rounds must be >= 1");
    if (pairing == PairingPolicy::RandomPairs)
        require(n_matches >= 1, "game.matches must be >= 1");
    require(learning.imitation_rate >= 0.0 && learning.imitation_rate <= 1.0,
            "learning.imitation_rate must lie in [0, 1]");
    require(learning.mutation_rate >= 0.0 && learning.mutation_rate <= 1.0,
            "learning.mutation_rate must lie in [0, 1]");
    require(selection_intensity > 0.0,
            "learning.selection_intensity must be > 0");
    require(dt > 0.0, "evolution.dt must be > 0");
    require(!rules.empty(), "at least one [rules.<id>] section is required");
    require(validate_pd(base), "game matrix is not a Prisoner's Dilemma");
    check_distribution(init_human, "learning.init_human");
    check_distribution(init_ai, "learning.init_ai");
    for (const auto& rule : rules) rule.validate();
    if (!initial_rule_freq.empty()) {
        require(initial_rule_freq.size() == rules.size(),
                "rule shares must cover every rule");
        (void)RulePopulation(initial_rule_freq);
    }
    require(equilibrium.max_iters >= 1, "evolution.eq_max_iters must be >= 1");
    require(equilibrium.epsilon > 0.0, "evolution.eq_epsilon must be > 0");
}

void assign_fitness(std::vector<Agent>& agents, double selection_intensity) {
    if (!(selection_intensity > 0.0))
        throw std::invalid_argument("selection intensity must be > 0");
    for (auto& a : agents) a.fitness = std::exp(selection_intensity * a.performance);
}

void social_learning_step(Group& group, const LearningParams& params,
                          Rng& rng) {
    require(params.imitation_rate >= 0.0 && params.imitation_rate <= 1.0,
            "imitation rate must lie in [0, 1]");
    require(params.mutation_rate >= 0.0 && params.mutation_rate <= 1.0,
            "mutation rate must lie in [0, 1]");

    const std::size_t n = group.agents.size();
    std::vector<Strategy> original(n);
    std::vector<double> fitness(n);
    for (std::size_t i = 0; i < n; ++i) {
        original[i] = group.agents[i].strategy;
        fitness[i] = group.agents[i].fitness;
    }

    // Imitation reads the pre-step state for every member (simultaneous
    // update), then mutation applies on top.
    std::vector<Strategy> next = original;
    for (std::size_t i = 0; i < n; ++i) {
        if (params.imitation_rate > 0.0 && rng.bernoulli(params.imitation_rate))
            next[i] = original[rng.weighted_index(fitness)];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (params.mutation_rate > 0.0 && rng.bernoulli(params.mutation_rate))
            next[i] = kAllStrategies[rng.uniform_index(kStrategyCount)];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (next[i] != original[i]) {
            group.agents[i].strategy = next[i];
            group.agents[i].defection_counter = 0.0;
        }
    }
}

std::vector<int> largest_remainder_counts(const std::vector<double>& freq,
                                          int total) {
    require(!freq.empty(), "frequency vector must not be empty");
    require(total >= 0, "total must be >= 0");

    std::vector<int> counts(freq.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t j = 0; j < freq.size(); ++j) {
        const double quota = freq[j] * static_cast<double>(total);
        const double base = std::floor(quota);
        counts[j] = static_cast<int>(base);
        assigned += counts[j];
        remainders.push_back({quota - base, j});
    }
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return a.second < b.second;
              });
    const int leftover = total - assigned;
    for (int i = 0; i < leftover; ++i)
        counts[remainders[static_cast<std::size_t>(i)].second] += 1;
    return counts;
}

std::vector<GenerationRecord> run_scenario(const Scenario& scenario) {
    scenario.validate();
    if (scenario.mode == Scenario::Mode::Equilibrium)
        return run_equilibrium_mode(scenario);

    // Build the population: contiguous agent ids, humans first within each
    // group, AI count from the configured fraction.
    const int n_ai_per_group = static_cast<int>(
        std::llround(scenario.ai_fraction * scenario.group_size));
    std::vector<Group> groups;
    groups.reserve(static_cast<std::size_t>(scenario.group_count));
    int next_id = 0;
    for (int g = 0; g < scenario.group_count; ++g) {
        Group group;
        group.id = g;
        Rng init = derive_stream(scenario.seed, 0, static_cast<std::uint64_t>(g),
                                 StreamPurpose::InitStrategies);
        for (int i = 0; i < scenario.group_size; ++i) {
            Agent a;
            a.id = next_id++;
            a.kind = i < scenario.group_size - n_ai_per_group
                         ? AgentKind::Human
                         : AgentKind::AI;
            a.strategy = sample_strategy(a.kind == AgentKind::Human
                                             ? scenario.init_human
                                             : scenario.init_ai,
                                         init);
            group.agents.push_back(a);
        }
        groups.push_back(std::move(group));
    }

    RulePopulation rule_freq =
        scenario.initial_rule_freq.empty()
            ? RulePopulation::uniform(scenario.rules.size())
            : RulePopulation(scenario.initial_rule_freq);
    {
        const auto counts = largest_remainder_counts(rule_freq.frequencies(),
                                                     scenario.group_count);
        int g = 0;
        for (std::size_t rule = 0; rule < counts.size(); ++rule)
            for (int c = 0; c < counts[rule]; ++c)
                groups[static_cast<std::size_t>(g++)].rule_id =
                    static_cast<int>(rule);
    }

    std::vector<GenerationRecord> records;
    records.reserve(static_cast<std::size_t>(scenario.generations));
    GenerationSnapshot prev_snapshot;
    std::vector<InteractionWeight> prev_weights;
    std::vector<RuleFitnessReport> prev_reports(scenario.rules.size());
    for (std::size_t j = 0; j < scenario.rules.size(); ++j) {
        prev_reports[j].cost = scenario.rules[j].cost;
        prev_reports[j].v = -scenario.rules[j].cost;
    }

    for (int gen = 0; gen < scenario.generations; ++gen) {
        try {
            // Fresh defection records each generation.
            for (auto& group : groups)
                for (auto& a : group.agents) a.defection_counter = 0.0;

            // Top-down norm seeding forces the rule's strategy onto a
            // random slice of each of its groups.
            for (auto& group : groups) {
                const RuleConfig& rule =
                    scenario.rules[static_cast<std::size_t>(group.rule_id)];
                if (rule.kind != RuleConfig::Kind::NormSeeded) continue;
                const int n_seed = static_cast<int>(std::llround(
                    rule.seeding_fraction *
                    static_cast<double>(group.agents.size())));
                if (n_seed == 0) continue;
                Rng seeder = derive_stream(scenario.seed,
                                           static_cast<std::uint64_t>(gen),
                                           static_cast<std::uint64_t>(group.id),
                                           StreamPurpose::NormSeeding);
                std::vector<std::size_t> order(group.agents.size());
                std::iota(order.begin(), order.end(), 0);
                for (int pick = 0; pick < n_seed; ++pick) {
                    const auto span = order.size() - static_cast<std::size_t>(pick);
                    const auto r = static_cast<std::size_t>(pick) +
                                   static_cast<std::size_t>(
                                       seeder.uniform_index(span));
                    std::swap(order[static_cast<std::size_t>(pick)], order[r]);
                    group.agents[order[static_cast<std::size_t>(pick)]]
                        .strategy = rule.seeded_strategy;
                }
            }

            // Play and score.
            std::vector<InteractionWeight> weights;
            std::int64_t coop = 0, total_actions = 0;
            for (auto& group : groups) {
                const RuleConfig& rule =
                    scenario.rules[static_cast<std::size_t>(group.rule_id)];
                Rng play = derive_stream(scenario.seed,
                                         static_cast<std::uint64_t>(gen),
                                         static_cast<std::uint64_t>(group.id),
                                         StreamPurpose::Play);
                const int matches = scenario.n_matches > 0
                                        ? scenario.n_matches
                                        : scenario.group_size;
                GroupRoundResult round =
                    run_group_round(group, scenario.base, rule,
                                    scenario.pairing, scenario.rounds,
                                    matches, play);
                coop += round.cooperate_actions;
                total_actions += round.total_actions;
                weights.insert(weights.end(), round.weights.begin(),
                               round.weights.end());
                assign_fitness(group.agents, scenario.selection_intensity);
                group.refresh_aggregates();
            }

            const GenerationSnapshot snapshot =
                GenerationSnapshot::from_groups(groups);

            GenerationRecord rec;
            rec.generation = gen;
            rec.rule_frequencies = rule_freq.frequencies();
            if (gen > 0)
                rec.price =
                    price_decomposition(prev_snapshot, snapshot, prev_weights);

            double sum_h = 0.0, sum_ai = 0.0;
            std::size_t n_h = 0, n_ai = 0;
            for (const auto& group : groups) {
                for (const auto& a : group.agents) {
                    rec.strategy_census[static_cast<std::size_t>(
                        a.strategy)] += 1;
                    if (a.kind == AgentKind::Human) {
                        sum_h += a.performance;
                        ++n_h;
                    } else {
                        sum_ai += a.performance;
                        ++n_ai;
                    }
                }
            }
            rec.mean_pi_human = n_h > 0 ? sum_h / static_cast<double>(n_h) : 0.0;
            rec.mean_pi_ai = n_ai > 0 ? sum_ai / static_cast<double>(n_ai) : 0.0;
            rec.coop_share = total_actions > 0
                                 ? static_cast<double>(coop) /
                                       static_cast<double>(total_actions)
                                 : 0.0;

            // Per-rule fitness from this generation's realized outcomes.
            // A rule holding no groups keeps its previous report.
            std::vector<double> v(scenario.rules.size());
            rec.rule_reports.resize(scenario.rules.size());
            for (std::size_t j = 0; j < scenario.rules.size(); ++j) {
                const RuleObservation obs =
                    observe_rule(groups, static_cast<int>(j), weights);
                RuleFitnessReport report = prev_reports[j];
                if (obs.observed) {
                    report.mean_pi_h = obs.mean_pi_h;
                    report.mean_pi_ai = obs.mean_pi_ai;
                    report.cross_cov = obs.cross_cov;
                    report.cost = scenario.rules[j].cost;
                    report.f_value =
                        fitness_map(obs.mean_pi_h, obs.mean_pi_ai,
                                    obs.cross_cov, scenario.fitness);
                    report.v = report.f_value - scenario.rules[j].cost;
                }
                rec.rule_reports[j] = report;
                v[j] = report.v;
            }
            prev_reports = rec.rule_reports;

            rule_freq = replicator_step(rule_freq, v, scenario.dt);
            reassign_groups(groups, largest_remainder_counts(
                                        rule_freq.frequencies(),
                                        scenario.group_count));

            for (auto& group : groups) {
                Rng learn = derive_stream(scenario.seed,
                                          static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(group.id),
                                          StreamPurpose::Learning);
                social_learning_step(group, scenario.learning, learn);
            }

            prev_snapshot = snapshot;
            prev_weights = std::move(weights);
            records.push_back(std::move(rec));
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("generation " + std::to_string(gen) + ": " +
                                   e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error("generation " + std::to_string(gen) +
                                     ": " + e.what());
        }
    }
    return records;
}

}  // namespace mlsforge
