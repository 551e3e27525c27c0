#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "mlsforge/price.hpp"
#include "mlsforge/rng.hpp"

using namespace mlsforge;

namespace {

GenerationSnapshot::Member mem(int id, int group, AgentKind kind, double w,
                               double pi) {
    return {id, group, kind, w, pi};
}

// Offspring census under fitness-proportional reproduction with integer
// fitness: a parent with fitness k leaves k copies of its performance in its
// own group. Offspring fitness is irrelevant to the decomposition.
GenerationSnapshot offspring_census(const GenerationSnapshot& parents) {
    std::vector<GenerationSnapshot::Member> kids;
    int next_id = 0;
    for (const auto& p : parents.members) {
        const int copies = static_cast<int>(p.fitness);
        REQUIRE(p.fitness == static_cast<double>(copies));
        for (int c = 0; c < copies; ++c)
            kids.push_back(mem(next_id++, p.group, p.kind, 1.0, p.performance));
    }
    return GenerationSnapshot::build(std::move(kids));
}

// Independent check of weighted covariance semantics: integer weights are
// expanded into repeated unit-weight observations and the plain population
// covariance of the expansion is taken.
double expanded_covariance(const std::vector<double>& x,
                           const std::vector<double>& y,
                           const std::vector<int>& w) {
    std::vector<double> ex, ey;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int c = 0; c < w[i]; ++c) {
            ex.push_back(x[i]);
            ey.push_back(y[i]);
        }
    if (ex.empty()) return 0.0;
    const auto n = static_cast<double>(ex.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        mx += ex[i];
        my += ey[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i)
        cov += (ex[i] - mx) * (ey[i] - my);
    return cov / n;
}

}  // namespace

TEST_SUITE("price") {

TEST_CASE("snapshot aggregates") {
    const auto snap = GenerationSnapshot::build({
        mem(0, 5, AgentKind::Human, 2.0, 1.0),
        mem(1, 5, AgentKind::AI, 4.0, 3.0),
        mem(2, 9, AgentKind::Human, 1.0, 0.0),
    });
    CHECK(snap.group_labels == std::vector<int>{5, 9});
    CHECK(snap.group_fitness[0] == 3.0);
    CHECK(snap.group_performance[0] == 2.0);
    CHECK(snap.group_fitness[1] == 1.0);
    CHECK(snap.mean_fitness == doctest::Approx(7.0 / 3.0));
    CHECK(snap.group_index(9) == 1);
    CHECK_THROWS_AS(snap.group_index(7), std::invalid_argument);
    CHECK_THROWS_AS(GenerationSnapshot::build({}), std::invalid_argument);
}

TEST_CASE("between-group covariance") {
    // Identical groups: zero variance.
    const auto flat = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 2.0, 1.0),
        mem(1, 1, AgentKind::Human, 2.0, 1.0),
    });
    CHECK(between_group_term(flat) == 0.0);

    // Group means (2,1) and (1,0).
    const auto two = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 2.0, 1.0),
        mem(1, 1, AgentKind::Human, 1.0, 0.0),
    });
    CHECK(between_group_term(two) == 0.25);

    // Constant fitness across groups kills the covariance regardless of
    // performance spread.
    const auto constw = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 3.0, 1.0),
        mem(1, 1, AgentKind::Human, 3.0, -2.0),
        mem(2, 2, AgentKind::Human, 3.0, 5.0),
    });
    CHECK(between_group_term(constw) == 0.0);
}

TEST_CASE("within-group covariance by kind") {
    const auto snap = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 2.0),
        mem(1, 0, AgentKind::Human, 3.0, 4.0),
        mem(2, 0, AgentKind::AI, 5.0, 5.0),
    });
    CHECK(within_group_term(snap, AgentKind::Human) == 1.0);
    // Single AI member: degenerate covariance contributes 0.
    CHECK(within_group_term(snap, AgentKind::AI) == 0.0);

    // Groups without the kind are excluded from the average, not zero-padded.
    const auto uneven = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 2.0),
        mem(1, 0, AgentKind::Human, 3.0, 4.0),
        mem(2, 1, AgentKind::AI, 1.0, 1.0),
    });
    CHECK(within_group_term(uneven, AgentKind::Human) == 1.0);

    const auto ai_free = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 2.0),
    });
    CHECK_THROWS_AS(within_group_term(ai_free, AgentKind::AI),
                    std::invalid_argument);
}

TEST_CASE("cross-agent interaction terms") {
    const auto snap = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 10.0),
        mem(1, 0, AgentKind::Human, 3.0, 20.0),
        mem(2, 0, AgentKind::AI, 7.0, 2.0),
        mem(3, 0, AgentKind::AI, 9.0, 4.0),
    });

    SUBCASE("single pair has no spread") {
        const auto terms = cross_agent_terms(snap, {{0, 2, 1.0}});
        CHECK(terms.human_fitness_ai_performance == 0.0);
        CHECK(terms.ai_fitness_human_performance == 0.0);
        CHECK_FALSE(terms.zero_weight_group);
    }

    SUBCASE("equal-weight hand case") {
        // (w_h, pi_ai) observations (1,2) and (3,4): covariance 1.
        const auto terms = cross_agent_terms(snap, {{0, 2, 1.0}, {1, 3, 1.0}});
        CHECK(terms.human_fitness_ai_performance == 1.0);
        // (w_ai, pi_h) observations (7,10) and (9,20): covariance 5.
        CHECK(terms.ai_fitness_human_performance == 5.0);
    }

    SUBCASE("doubling a weight equals listing the pair twice") {
        const auto doubled =
            cross_agent_terms(snap, {{0, 2, 2.0}, {1, 3, 1.0}});
        const auto repeated =
            cross_agent_terms(snap, {{0, 2, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}});
        CHECK(doubled.human_fitness_ai_performance ==
              doctest::Approx(repeated.human_fitness_ai_performance)
                  .epsilon(1e-15));
        CHECK(doubled.ai_fitness_human_performance ==
              doctest::Approx(repeated.ai_fitness_human_performance)
                  .epsilon(1e-15));
    }

    SUBCASE("all-zero weights in a group raise the flag and contribute 0") {
        const auto snap2 = GenerationSnapshot::build({
            mem(0, 0, AgentKind::Human, 1.0, 10.0),
            mem(1, 0, AgentKind::Human, 3.0, 20.0),
            mem(2, 0, AgentKind::AI, 7.0, 2.0),
            mem(3, 0, AgentKind::AI, 9.0, 4.0),
            mem(4, 1, AgentKind::Human, 2.0, 1.0),
            mem(5, 1, AgentKind::AI, 2.0, 1.0),
        });
        const auto terms = cross_agent_terms(
            snap2, {{0, 2, 1.0}, {1, 3, 1.0}, {4, 5, 0.0}});
        CHECK(terms.zero_weight_group);
        // Group 0 gives (1, 5); group 1 gives 0; average over two groups.
        CHECK(terms.human_fitness_ai_performance == doctest::Approx(0.5));
        CHECK(terms.ai_fitness_human_performance == doctest::Approx(2.5));
    }

    SUBCASE("malformed pairs are rejected") {
        CHECK_THROWS_AS(cross_agent_terms(snap, {{0, 2, -0.5}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(cross_agent_terms(snap, {{0, 99, 1.0}}),
                        std::invalid_argument);
        // Two humans.
        CHECK_THROWS_AS(cross_agent_terms(snap, {{0, 1, 1.0}}),
                        std::invalid_argument);
        const auto split = GenerationSnapshot::build({
            mem(0, 0, AgentKind::Human, 1.0, 1.0),
            mem(1, 1, AgentKind::AI, 1.0, 1.0),
        });
        CHECK_THROWS_AS(cross_agent_terms(split, {{0, 1, 1.0}}),
                        std::invalid_argument);
    }
}

TEST_CASE("weighted covariances match the expansion oracle") {
    Rng rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const int n_groups = 1 + static_cast<int>(rng.uniform_index(3));
        std::vector<GenerationSnapshot::Member> members;
        std::vector<InteractionWeight> weights;
        struct GroupObs {
            std::vector<double> wh, pih, wai, piai;
            std::vector<int> w;
        };
        std::vector<GroupObs> obs(static_cast<std::size_t>(n_groups));
        int id = 0;
        for (int g = 0; g < n_groups; ++g) {
            const int pairs = 2 + static_cast<int>(rng.uniform_index(4));
            for (int p = 0; p < pairs; ++p) {
                const double wh = 1.0 + 4.0 * rng.u01();
                const double pih = -3.0 + 6.0 * rng.u01();
                const double wai = 1.0 + 4.0 * rng.u01();
                const double piai = -3.0 + 6.0 * rng.u01();
                const int human = id++;
                const int ai = id++;
                members.push_back(mem(human, g, AgentKind::Human, wh, pih));
                members.push_back(mem(ai, g, AgentKind::AI, wai, piai));
                const int w = static_cast<int>(rng.uniform_index(5));  // 0..4
                weights.push_back(
                    {human, ai, static_cast<double>(w)});
                auto& o = obs[static_cast<std::size_t>(g)];
                o.wh.push_back(wh);
                o.pih.push_back(pih);
                o.wai.push_back(wai);
                o.piai.push_back(piai);
                o.w.push_back(w);
            }
        }
        const auto snap = GenerationSnapshot::build(std::move(members));
        const auto terms = cross_agent_terms(snap, weights);
        const double perf_cov = cross_performance_covariance(snap, weights);

        double want1 = 0.0, want2 = 0.0, want_perf = 0.0;
        for (const auto& o : obs) {
            want1 += expanded_covariance(o.wh, o.piai, o.w);
            want2 += expanded_covariance(o.wai, o.pih, o.w);
            want_perf += expanded_covariance(o.pih, o.piai, o.w);
        }
        want1 /= n_groups;
        want2 /= n_groups;
        want_perf /= n_groups;
        CHECK(std::abs(terms.human_fitness_ai_performance - want1) <= 1e-12);
        CHECK(std::abs(terms.ai_fitness_human_performance - want2) <= 1e-12);
        CHECK(std::abs(perf_cov - want_perf) <= 1e-12);
    }
}

TEST_CASE("two-group transition, hand case") {
    // Group 0 holds two agents at (w=2, pi=1), group 1 two at (w=1, pi=0).
    const auto before = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 2.0, 1.0),
        mem(1, 0, AgentKind::Human, 2.0, 1.0),
        mem(2, 1, AgentKind::Human, 1.0, 0.0),
        mem(3, 1, AgentKind::Human, 1.0, 0.0),
    });
    const auto after = offspring_census(before);
    CHECK(after.members.size() == 6);
    CHECK(after.mean_performance == doctest::Approx(2.0 / 3.0));

    const auto report = price_decomposition(before, after, {});
    CHECK(report.between_group == 0.25);
    CHECK(report.within_human == 0.0);
    CHECK(report.within_ai == 0.0);
    CHECK(report.cross_h_fit_ai_perf == 0.0);
    CHECK(report.cross_ai_fit_h_perf == 0.0);
    CHECK(report.delta_pi_bar == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    // 1.5 * (2/3 - 1/2) is 0.25 up to one ulp of double rounding.
    CHECK(std::abs(report.lhs - 0.25) <= 1e-15);
    CHECK(std::abs(report.residual_two_term) <= 1e-15);
    CHECK(report.residual_five_term == 0.0);
}

TEST_CASE("uniform fitness and no trait change zero every term") {
    const auto before = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 0.7),
        mem(1, 0, AgentKind::AI, 1.0, -0.2),
        mem(2, 1, AgentKind::Human, 1.0, 1.4),
        mem(3, 1, AgentKind::AI, 1.0, 0.1),
    });
    const auto after = offspring_census(before);
    const auto report =
        price_decomposition(before, after, {{0, 1, 1.0}, {2, 3, 2.0}});
    CHECK(report.between_group == 0.0);
    CHECK(report.within_human == 0.0);
    CHECK(report.within_ai == 0.0);
    CHECK(report.cross_h_fit_ai_perf == 0.0);
    CHECK(report.cross_ai_fit_h_perf == 0.0);
    CHECK(report.delta_pi_bar == 0.0);
    CHECK(report.lhs == 0.0);
    CHECK(report.residual_two_term == 0.0);
    CHECK(report.residual_five_term == 0.0);
}

TEST_CASE("two-term identity holds for random equal-size groups") {
    Rng rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_groups = 2 + static_cast<int>(rng.uniform_index(5));
        const int size = 2 + static_cast<int>(rng.uniform_index(7));
        std::vector<GenerationSnapshot::Member> members;
        int id = 0;
        for (int g = 0; g < n_groups; ++g)
            for (int i = 0; i < size; ++i) {
                const double w = 1.0 + static_cast<double>(rng.uniform_index(5));
                const double pi = -3.0 + 6.0 * rng.u01();
                const AgentKind kind =
                    rng.bernoulli(0.5) ? AgentKind::Human : AgentKind::AI;
                members.push_back(mem(id++, g, kind, w, pi));
            }
        const auto before = GenerationSnapshot::build(std::move(members));
        const auto after = offspring_census(before);
        const auto report = price_decomposition(before, after, {});
        CHECK(std::abs(report.residual_two_term) <= 1e-9);
    }
}

TEST_CASE("unequal group sizes break the equal-weight split but not the size-weighted one") {
    // One singleton group (w=2, pi=1) and one pair group at (w=1, pi=0).
    const auto before = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 2.0, 1.0),
        mem(1, 1, AgentKind::Human, 1.0, 0.0),
        mem(2, 1, AgentKind::Human, 1.0, 0.0),
    });
    const auto after = offspring_census(before);
    const auto report = price_decomposition(before, after, {});

    // Equal-weight group average misses by 1/36 here.
    CHECK(report.lhs == doctest::Approx(2.0 / 9.0));
    CHECK(report.between_group == 0.25);
    CHECK(report.residual_two_term ==
          doctest::Approx(-1.0 / 36.0).epsilon(1e-12));

    // The size-weighted split recovers the population covariance exactly.
    const auto split = size_weighted_two_term(before);
    CHECK(std::abs(split.between + split.within - report.lhs) <= 1e-15);
    CHECK(split.between == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(split.within == 0.0);
}

TEST_CASE("size-weighted split always reconstructs the population covariance") {
    Rng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_groups = 2 + static_cast<int>(rng.uniform_index(4));
        std::vector<GenerationSnapshot::Member> members;
        int id = 0;
        for (int g = 0; g < n_groups; ++g) {
            const int size = 1 + static_cast<int>(rng.uniform_index(6));
            for (int i = 0; i < size; ++i)
                members.push_back(mem(id++, g, AgentKind::Human,
                                      1.0 + static_cast<double>(rng.uniform_index(4)),
                                      -2.0 + 4.0 * rng.u01()));
        }
        const auto snap = GenerationSnapshot::build(std::move(members));

        // Direct population covariance over all members.
        double mw = 0.0, mp = 0.0;
        for (const auto& m : snap.members) {
            mw += m.fitness;
            mp += m.performance;
        }
        mw /= static_cast<double>(snap.members.size());
        mp /= static_cast<double>(snap.members.size());
        double cov = 0.0;
        for (const auto& m : snap.members)
            cov += (m.fitness - mw) * (m.performance - mp);
        cov /= static_cast<double>(snap.members.size());

        const auto split = size_weighted_two_term(snap);
        CHECK(std::abs(split.between + split.within - cov) <= 1e-12);
    }
}

TEST_CASE("mixed-kind group exposes a five-term residual") {
    // Human (w=1, pi=0) next to AI (w=2, pi=1): the all-agent within
    // covariance is 0.25 but both kind-specific terms degenerate to 0 and no
    // interaction pairs are listed, so the split leaves the full 0.25 behind.
    const auto before = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 0.0),
        mem(1, 0, AgentKind::AI, 2.0, 1.0),
    });
    const auto after = offspring_census(before);
    const auto report = price_decomposition(before, after, {});
    CHECK(report.within_human == 0.0);
    CHECK(report.within_ai == 0.0);
    CHECK(report.residual_five_term == 0.25);
    // Single group: lhs = between (0) + within_total.
    CHECK(std::abs(report.residual_two_term) <= 1e-15);
}

TEST_CASE("translation, scaling, and permutation invariances") {
    Rng rng(2718);
    std::vector<GenerationSnapshot::Member> members;
    std::vector<InteractionWeight> weights;
    int id = 0;
    for (int g = 0; g < 3; ++g)
        for (int i = 0; i < 4; ++i) {
            const AgentKind kind = (i % 2 == 0) ? AgentKind::Human : AgentKind::AI;
            members.push_back(mem(id++, g, kind, 1.0 + 2.0 * rng.u01(),
                                  -1.0 + 2.0 * rng.u01()));
        }
    for (int g = 0; g < 3; ++g) {
        weights.push_back({4 * g + 0, 4 * g + 1, 0.5 + rng.u01()});
        weights.push_back({4 * g + 2, 4 * g + 3, 0.5 + rng.u01()});
    }
    const auto snap = GenerationSnapshot::build(members);

    SUBCASE("adding a constant to every fitness") {
        auto shifted = members;
        for (auto& m : shifted) m.fitness += 3.75;
        const auto snap2 = GenerationSnapshot::build(shifted);
        CHECK(between_group_term(snap2) ==
              doctest::Approx(between_group_term(snap)).epsilon(1e-12));
        CHECK(within_group_term(snap2, AgentKind::Human) ==
              doctest::Approx(within_group_term(snap, AgentKind::Human))
                  .epsilon(1e-12));
        const auto t1 = cross_agent_terms(snap, weights);
        const auto t2 = cross_agent_terms(snap2, weights);
        CHECK(t2.human_fitness_ai_performance ==
              doctest::Approx(t1.human_fitness_ai_performance).epsilon(1e-12));
        CHECK(t2.ai_fitness_human_performance ==
              doctest::Approx(t1.ai_fitness_human_performance).epsilon(1e-12));
    }

    SUBCASE("doubling every fitness doubles fitness-bearing terms exactly") {
        auto scaled = members;
        for (auto& m : scaled) m.fitness *= 2.0;
        const auto snap2 = GenerationSnapshot::build(scaled);
        CHECK(between_group_term(snap2) == 2.0 * between_group_term(snap));
        CHECK(within_group_term(snap2, AgentKind::AI) ==
              2.0 * within_group_term(snap, AgentKind::AI));
        CHECK(cross_performance_covariance(snap2, weights) ==
              cross_performance_covariance(snap, weights));
    }

    SUBCASE("member order within the snapshot is irrelevant") {
        auto shuffled = members;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
        const auto snap2 = GenerationSnapshot::build(shuffled);
        CHECK(between_group_term(snap2) ==
              doctest::Approx(between_group_term(snap)).epsilon(1e-13));
        CHECK(within_group_term(snap2, AgentKind::Human) ==
              doctest::Approx(within_group_term(snap, AgentKind::Human))
                  .epsilon(1e-13));
    }
}

TEST_CASE("transition preconditions") {
    const auto a = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 0.0, 1.0),
    });
    CHECK_THROWS_AS(price_decomposition(a, a, {}), std::invalid_argument);

    const auto b = GenerationSnapshot::build({
        mem(0, 0, AgentKind::Human, 1.0, 1.0),
    });
    const auto c = GenerationSnapshot::build({
        mem(0, 1, AgentKind::Human, 1.0, 1.0),
    });
    CHECK_THROWS_AS(price_decomposition(b, c, {}), std::invalid_argument);
}

}  // TEST_SUITE
