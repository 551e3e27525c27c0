#include "mlsforge/institution.hpp"

#include <cmath>

namespace mlsforge {

double fitness_map(double mean_pi_h, double mean_pi_ai, double cross_cov,
                   const FitnessMapParams& params) {
    if (!std::isfinite(mean_pi_h) || !std::isfinite(mean_pi_ai) ||
        !std::isfinite(cross_cov))
        throw std::invalid_argument("fitness_map inputs must be finite");
    return params.alpha * mean_pi_h + params.beta * mean_pi_ai +
           params.gamma * cross_cov;
}

double institutional_fitness(const RuleConfig& rule,
                             const EquilibriumResult& eq, double cross_cov,
                             const FitnessMapParams& params,
                             bool allow_unconverged) {
    if (!eq.converged && !allow_unconverged)
        throw ConvergenceError("rule '" + rule.name +
                               "': equilibrium did not converge");
    return fitness_map(eq.human_payoff, eq.ai_payoff, cross_cov, params) -
           rule.cost;
}

RulePopulation replicator_step(const RulePopulation& r,
                               const std::vector<double>& fitness, double dt,
                               int* clip_events) {
    if (fitness.size() != r.size())
        throw std::invalid_argument(
            "fitness vector must match the rule population size");
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be > 0");
    for (double v : fitness)
        if (!std::isfinite(v))
            throw std::invalid_argument("fitness values must be finite");

    std::vector<double> next(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        // Fitness excess over the population mean, written as pairwise
        // differences so shifting every V by a constant changes nothing.
        double advantage = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k)
            advantage += r[k] * (fitness[j] - fitness[k]);
        double value = r[j] + dt * r[j] * advantage;
        if (value < 0.0) {
            value = 0.0;
            if (clip_events) ++*clip_events;
        }
        next[j] = value;
    }
    double total = 0.0;
    for (double v : next) total += v;
    if (!(total > 0.0))
        throw std::invalid_argument(
            "replicator step collapsed all frequencies to zero");
    for (double& v : next) v /= total;
    return RulePopulation(next);
}

BeliefDistribution initial_beliefs_for_rule(const RuleConfig& rule,
                                            double ai_fraction) {
    BeliefDistribution start = BeliefDistribution::uniform(ai_fraction);
    if (rule.kind == RuleConfig::Kind::NormSeeded) {
        const auto s = static_cast<std::size_t>(rule.seeded_strategy);
        for (std::size_t i = 0; i < kStrategyCount; ++i) {
            const double base = (1.0 - rule.seeding_fraction) * 0.25;
            start.human[i] = base + (i == s ? rule.seeding_fraction : 0.0);
        }
        start.ai = start.human;
    }
    return start;
}

EvolveResult evolve_rules(const std::vector<RuleConfig>& rules,
                          const RulePopulation& initial,
                          const EvolveParams& params, int generations) {
    if (rules.empty())
        throw std::invalid_argument("evolve_rules needs at least one rule");
    if (initial.size() != rules.size())
        throw std::invalid_argument(
            "initial frequencies must match the rule count");
    if (generations < 0)
        throw std::invalid_argument("generations must be >= 0");

    EvolveResult result;
    std::vector<double> fitness;
    for (const auto& rule : rules) {
        rule.validate();
        const BeliefDistribution start =
            initial_beliefs_for_rule(rule, params.ai_fraction);
        const EquilibriumResult eq = find_equilibrium(
            start, params.base, rule, params.rounds, params.equilibrium);
        RuleFitnessReport report;
        report.mean_pi_h = eq.human_payoff;
        report.mean_pi_ai = eq.ai_payoff;
        report.cross_cov = 0.0;
        report.cost = rule.cost;
        report.f_value = fitness_map(report.mean_pi_h, report.mean_pi_ai,
                                     report.cross_cov, params.fitness);
        report.v = institutional_fitness(rule, eq, report.cross_cov,
                                         params.fitness);
        result.reports.push_back(report);
        fitness.push_back(report.v);
    }

    result.trajectory.reserve(static_cast<std::size_t>(generations) + 1);
    result.trajectory.push_back(initial);
    for (int g = 0; g < generations; ++g) {
        result.trajectory.push_back(replicator_step(
            result.trajectory.back(), fitness, params.dt,
            &result.clip_events));
    }
    return result;
}

}  // namespace mlsforge
