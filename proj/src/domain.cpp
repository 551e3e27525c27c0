#include "mlsforge/domain.hpp"

#include <cmath>
#include <numeric>

namespace mlsforge {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::AllC: return "all-c";
        case Strategy::TitForTat: return "tit-for-tat";
        case Strategy::WinStayLoseShift: return "win-stay-lose-shift";
        case Strategy::AllD: return "all-d";
    }
    return "?";
}

const char* to_string(AgentKind k) {
    return k == AgentKind::Human ? "human" : "ai";
}

bool validate_pd(const PayoffMatrix& m) {
    const bool symmetric = m.cc.row == m.cc.col && m.dd.row == m.dd.col &&
                           m.cd.row == m.dc.col && m.cd.col == m.dc.row;
    if (!symmetric) return false;
    const double r = m.cc.row;  // reward
    const double s = m.cd.row;  // sucker
    const double t = m.dc.row;  // temptation
    const double p = m.dd.row;  // punishment
    // Jail years are costs, so the utility chain T > R > P > S flips.
    return t < r && r < p && p < s;
}

void RuleConfig::validate() const {
    if (cost < 0.0)
        throw std::invalid_argument("rule '" + name + "': cost must be >= 0");
    if (kind == Kind::GraduatedSanctions) {
        // Zero severity is allowed (identity transform) so parameter sweeps
        // can start from an unsanctioned point; negatives are nonsense.
        if (!(sanction_rate >= 0.0))
            throw std::invalid_argument("rule '" + name +
                                        "': sanction rate must be >= 0");
        if (!(counter_decay >= 0.0 && counter_decay <= 1.0))
            throw std::invalid_argument("rule '" + name +
                                        "': counter decay must lie in [0, 1]");
    }
    if (kind == Kind::NormSeeded) {
        if (!(seeding_fraction >= 0.0 && seeding_fraction <= 1.0))
            throw std::invalid_argument(
                "rule '" + name + "': seeding fraction must lie in [0, 1]");
    }
}

double Group::mean_fitness() const {
    if (agents.empty()) return 0.0;
    double total = 0.0;
    for (const auto& a : agents) total += a.fitness;
    return total / static_cast<double>(agents.size());
}

double Group::mean_performance() const {
    if (agents.empty()) return 0.0;
    double total = 0.0;
    for (const auto& a : agents) total += a.performance;
    return total / static_cast<double>(agents.size());
}

void Group::refresh_aggregates() {
    group_fitness = mean_fitness();
    group_performance = mean_performance();
}

RulePopulation::RulePopulation(std::vector<double> frequencies)
    : freq_(std::move(frequencies)) {
    if (freq_.empty())
        throw std::invalid_argument("rule population must not be empty");
    double total = 0.0;
    for (double f : freq_) {
        if (!(f >= 0.0) || !std::isfinite(f))
            throw std::invalid_argument(
                "rule population frequencies must be finite and >= 0");
        total += f;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument(
            "rule population frequencies must sum to 1");
    for (double& f : freq_) f /= total;
}

RulePopulation RulePopulation::uniform(std::size_t n_rules) {
    if (n_rules == 0)
        throw std::invalid_argument("rule population must not be empty");
    return RulePopulation(
        std::vector<double>(n_rules, 1.0 / static_cast<double>(n_rules)));
}

}  // namespace mlsforge
