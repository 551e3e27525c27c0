#include "mlsforge/price.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mlsforge {

namespace {

// Population covariance of paired samples, 1/N normalization.
double covariance(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        cov += (x[i] - mx) * (y[i] - my);
    return cov / n;
}

// Members of one group, by snapshot group index.
std::vector<std::vector<const GenerationSnapshot::Member*>> members_by_group(
    const GenerationSnapshot& snap) {
    std::vector<std::vector<const GenerationSnapshot::Member*>> out(
        snap.group_labels.size());
    for (const auto& m : snap.members)
        out[snap.group_index(m.group)].push_back(&m);
    return out;
}

// Mean over all groups of the within-group fitness/performance covariance
// across every member. This is the within-group total the report's residuals
// are measured against.
double within_all_agents_term(const GenerationSnapshot& snap) {
    const auto groups = members_by_group(snap);
    double total = 0.0;
    for (const auto& group : groups) {
        std::vector<double> w, pi;
        w.reserve(group.size());
        pi.reserve(group.size());
        for (const auto* m : group) {
            w.push_back(m->fitness);
            pi.push_back(m->performance);
        }
        total += covariance(w, pi);
    }
    return total / static_cast<double>(groups.size());
}

}  // namespace

GenerationSnapshot GenerationSnapshot::build(std::vector<Member> members) {
    if (members.empty())
        throw std::invalid_argument("snapshot must contain at least one agent");

    GenerationSnapshot snap;
    snap.members = std::move(members);

    for (const auto& m : snap.members) snap.group_labels.push_back(m.group);
    std::sort(snap.group_labels.begin(), snap.group_labels.end());
    snap.group_labels.erase(
        std::unique(snap.group_labels.begin(), snap.group_labels.end()),
        snap.group_labels.end());

    snap.group_fitness.assign(snap.group_labels.size(), 0.0);
    snap.group_performance.assign(snap.group_labels.size(), 0.0);
    std::vector<double> counts(snap.group_labels.size(), 0.0);
    for (const auto& m : snap.members) {
        const std::size_t g = snap.group_index(m.group);
        snap.group_fitness[g] += m.fitness;
        snap.group_performance[g] += m.performance;
        counts[g] += 1.0;
        snap.mean_fitness += m.fitness;
        snap.mean_performance += m.performance;
    }
    for (std::size_t g = 0; g < counts.size(); ++g) {
        snap.group_fitness[g] /= counts[g];
        snap.group_performance[g] /= counts[g];
    }
    const auto n = static_cast<double>(snap.members.size());
    snap.mean_fitness /= n;
    snap.mean_performance /= n;
    return snap;
}

GenerationSnapshot GenerationSnapshot::from_groups(
    const std::vector<Group>& groups) {
    std::vector<Member> members;
    for (const auto& g : groups)
        for (const auto& a : g.agents)
            members.push_back({a.id, g.id, a.kind, a.fitness, a.performance});
    return build(std::move(members));
}

std::size_t GenerationSnapshot::group_index(int label) const {
    const auto it =
        std::lower_bound(group_labels.begin(), group_labels.end(), label);
    if (it == group_labels.end() || *it != label)
        throw std::invalid_argument("unknown group label " +
                                    std::to_string(label));
    return static_cast<std::size_t>(it - group_labels.begin());
}

double between_group_term(const GenerationSnapshot& snapshot) {
    return covariance(snapshot.group_fitness, snapshot.group_performance);
}

double within_group_term(const GenerationSnapshot& snapshot, AgentKind kind) {
    const auto groups = members_by_group(snapshot);
    double total = 0.0;
    std::size_t qualifying = 0;
    for (const auto& group : groups) {
        std::vector<double> w, pi;
        for (const auto* m : group) {
            if (m->kind != kind) continue;
            w.push_back(m->fitness);
            pi.push_back(m->performance);
        }
        if (w.empty()) continue;
        ++qualifying;
        total += covariance(w, pi);
    }
    if (qualifying == 0)
        throw std::invalid_argument(
            std::string("no agent of kind '") + to_string(kind) +
            "' anywhere in the snapshot");
    return total / static_cast<double>(qualifying);
}

CrossTerms cross_agent_terms(const GenerationSnapshot& snapshot,
                             const std::vector<InteractionWeight>& weights) {
    std::unordered_map<int, const GenerationSnapshot::Member*> by_id;
    by_id.reserve(snapshot.members.size());
    for (const auto& m : snapshot.members) by_id[m.id] = &m;

    struct PairObs {
        double weight, w_h, pi_h, w_ai, pi_ai;
    };
    std::vector<std::vector<PairObs>> per_group(snapshot.group_labels.size());

    for (const auto& iw : weights) {
        if (iw.weight < 0.0)
            throw std::invalid_argument("interaction weights must be >= 0");
        const auto h = by_id.find(iw.human_id);
        const auto a = by_id.find(iw.ai_id);
        if (h == by_id.end() || a == by_id.end())
            throw std::invalid_argument(
                "interaction pair references an unknown agent id");
        if (h->second->kind != AgentKind::Human ||
            a->second->kind != AgentKind::AI)
            throw std::invalid_argument(
                "interaction pair must join a human and an AI");
        if (h->second->group != a->second->group)
            throw std::invalid_argument(
                "interaction pair must join agents of the same group");
        per_group[snapshot.group_index(h->second->group)].push_back(
            {iw.weight, h->second->fitness, h->second->performance,
             a->second->fitness, a->second->performance});
    }

    CrossTerms result;
    double total1 = 0.0, total2 = 0.0;
    std::size_t qualifying = 0;
    for (const auto& pairs : per_group) {
        if (pairs.empty()) continue;
        ++qualifying;
        double wsum = 0.0;
        for (const auto& p : pairs) wsum += p.weight;
        if (wsum == 0.0) {
            result.zero_weight_group = true;
            continue;  // counted but contributes 0
        }
        double m_wh = 0.0, m_piai = 0.0, m_wai = 0.0, m_pih = 0.0;
        for (const auto& p : pairs) {
            m_wh += p.weight * p.w_h;
            m_piai += p.weight * p.pi_ai;
            m_wai += p.weight * p.w_ai;
            m_pih += p.weight * p.pi_h;
        }
        m_wh /= wsum;
        m_piai /= wsum;
        m_wai /= wsum;
        m_pih /= wsum;
        double cov1 = 0.0, cov2 = 0.0;
        for (const auto& p : pairs) {
            cov1 += p.weight * (p.w_h - m_wh) * (p.pi_ai - m_piai);
            cov2 += p.weight * (p.w_ai - m_wai) * (p.pi_h - m_pih);
        }
        total1 += cov1 / wsum;
        total2 += cov2 / wsum;
    }
    if (qualifying > 0) {
        result.human_fitness_ai_performance =
            total1 / static_cast<double>(qualifying);
        result.ai_fitness_human_performance =
            total2 / static_cast<double>(qualifying);
    }
    return result;
}

double cross_performance_covariance(
    const GenerationSnapshot& snapshot,
    const std::vector<InteractionWeight>& weights) {
    std::unordered_map<int, const GenerationSnapshot::Member*> by_id;
    by_id.reserve(snapshot.members.size());
    for (const auto& m : snapshot.members) by_id[m.id] = &m;

    struct Obs {
        double weight, pi_h, pi_ai;
    };
    std::vector<std::vector<Obs>> per_group(snapshot.group_labels.size());
    for (const auto& iw : weights) {
        if (iw.weight < 0.0)
            throw std::invalid_argument("interaction weights must be >= 0");
        const auto h = by_id.find(iw.human_id);
        const auto a = by_id.find(iw.ai_id);
        if (h == by_id.end() || a == by_id.end())
            throw std::invalid_argument(
                "interaction pair references an unknown agent id");
        per_group[snapshot.group_index(h->second->group)].push_back(
            {iw.weight, h->second->performance, a->second->performance});
    }

    double total = 0.0;
    std::size_t qualifying = 0;
    for (const auto& pairs : per_group) {
        if (pairs.empty()) continue;
        ++qualifying;
        double wsum = 0.0;
        for (const auto& p : pairs) wsum += p.weight;
        if (wsum == 0.0) continue;
        double m_h = 0.0, m_ai = 0.0;
        for (const auto& p : pairs) {
            m_h += p.weight * p.pi_h;
            m_ai += p.weight * p.pi_ai;
        }
        m_h /= wsum;
        m_ai /= wsum;
        double cov = 0.0;
        for (const auto& p : pairs)
            cov += p.weight * (p.pi_h - m_h) * (p.pi_ai - m_ai);
        total += cov / wsum;
    }
    return qualifying > 0 ? total / static_cast<double>(qualifying) : 0.0;
}

PriceReport price_decomposition(const GenerationSnapshot& snap_t,
                                const GenerationSnapshot& snap_t1,
                                const std::vector<InteractionWeight>& weights) {
    if (!(snap_t.mean_fitness > 0.0))
        throw std::invalid_argument(
            "mean fitness at t must be positive for a valid transition");
    if (snap_t.group_labels != snap_t1.group_labels)
        throw std::invalid_argument(
            "snapshots must share the same group structure");

    auto has_kind = [](const GenerationSnapshot& s, AgentKind k) {
        for (const auto& m : s.members)
            if (m.kind == k) return true;
        return false;
    };

    PriceReport report;
    report.between_group = between_group_term(snap_t);
    report.within_human = has_kind(snap_t, AgentKind::Human)
                              ? within_group_term(snap_t, AgentKind::Human)
                              : 0.0;
    report.within_ai = has_kind(snap_t, AgentKind::AI)
                           ? within_group_term(snap_t, AgentKind::AI)
                           : 0.0;
    const CrossTerms cross = cross_agent_terms(snap_t, weights);
    report.cross_h_fit_ai_perf = cross.human_fitness_ai_performance;
    report.cross_ai_fit_h_perf = cross.ai_fitness_human_performance;
    report.zero_weight_group = cross.zero_weight_group;

    report.delta_pi_bar = snap_t1.mean_performance - snap_t.mean_performance;
    report.lhs = snap_t.mean_fitness * report.delta_pi_bar;

    const double within_total = within_all_agents_term(snap_t);
    report.residual_two_term =
        report.lhs - (report.between_group + within_total);
    report.residual_five_term =
        within_total - (report.within_human + report.within_ai +
                        report.cross_h_fit_ai_perf +
                        report.cross_ai_fit_h_perf);
    return report;
}

SizeWeightedTwoTerm size_weighted_two_term(const GenerationSnapshot& snap) {
    const auto groups = members_by_group(snap);
    const auto n = static_cast<double>(snap.members.size());
    SizeWeightedTwoTerm out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double q = static_cast<double>(groups[g].size()) / n;
        out.between += q * (snap.group_fitness[g] - snap.mean_fitness) *
                       (snap.group_performance[g] - snap.mean_performance);
        std::vector<double> w, pi;
        for (const auto* m : groups[g]) {
            w.push_back(m->fitness);
            pi.push_back(m->performance);
        }
        out.within += q * covariance(w, pi);
    }
    return out;
}

}  // namespace mlsforge
