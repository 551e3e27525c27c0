#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types shared by every module. Payoffs are stored as jail years
// (costs, lower is better); agent utility and performance are their negation.

namespace mlsforge {

enum class AgentKind : std::uint8_t { Human = 0, AI = 1 };

// Enumerator order doubles as the deterministic tie-break order everywhere a
// best strategy must be picked among equals.
enum class Strategy : std::uint8_t {
    AllC = 0,
    TitForTat = 1,
    WinStayLoseShift = 2,
    AllD = 3,
};

inline constexpr std::size_t kStrategyCount = 4;
inline constexpr std::array<Strategy, kStrategyCount> kAllStrategies = {
    Strategy::AllC, Strategy::TitForTat, Strategy::WinStayLoseShift,
    Strategy::AllD};

const char* to_string(Strategy s);
const char* to_string(AgentKind k);

enum class Action : std::uint8_t { Cooperate = 0, Defect = 1 };

// Jail years for (row, column) under one outcome cell.
struct JailPair {
    double row = 0.0;
    double col = 0.0;

    bool operator==(const JailPair&) const = default;
};

// Symmetric two-action stage game in jail years, indexed by row/column action.
struct PayoffMatrix {
    JailPair cc, cd, dc, dd;

    bool operator==(const PayoffMatrix&) const = default;

    JailPair at(Action row, Action col) const {
        if (row == Action::Cooperate)
            return col == Action::Cooperate ? cc : cd;
        return col == Action::Cooperate ? dc : dd;
    }

    static PayoffMatrix symmetric(double both_c, double sucker, double temptation,
                                  double both_d) {
        PayoffMatrix m;
        m.cc = {both_c, both_c};
        m.cd = {sucker, temptation};
        m.dc = {temptation, sucker};
        m.dd = {both_d, both_d};
        return m;
    }

    // One year each for mutual silence, three for the lone holdout, zero for
    // the lone confessor, two each for mutual confession.
    static PayoffMatrix canonical() { return symmetric(1.0, 3.0, 0.0, 2.0); }
};

// True when the symmetric jail matrix is a Prisoner's Dilemma in utility
// terms: T > R > P > S, i.e. jail(dc) < jail(cc) < jail(dd) < jail(cd),
// and the matrix is actually symmetric.
bool validate_pd(const PayoffMatrix& m);

struct RuleConfig {
    enum class Kind : std::uint8_t { Baseline, GraduatedSanctions, NormSeeded };

    int id = 0;
    std::string name;
    Kind kind = Kind::Baseline;

    // Graduated sanctions: extra jail per unit of defection history, and the
    // per-round multiplicative memory of that history.
    double sanction_rate = 0.0;
    double counter_decay = 1.0;

    // Norm seeding: strategy forced onto a fraction of each group at the
    // start of every generation.
    Strategy seeded_strategy = Strategy::TitForTat;
    double seeding_fraction = 0.0;

    double cost = 0.0;

    bool operator==(const RuleConfig&) const = default;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct Agent {
    int id = 0;
    AgentKind kind = AgentKind::Human;
    Strategy strategy = Strategy::AllC;
    double defection_counter = 0.0;  // decayed count of past defections
    double fitness = 1.0;
    double performance = 0.0;  // minus mean jail years per round played
};

struct Group {
    int id = 0;
    int rule_id = 0;
    std::vector<Agent> agents;
    double group_fitness = 0.0;      // mean member fitness
    double group_performance = 0.0;  // mean member performance

    double mean_fitness() const;
    double mean_performance() const;

    // Recomputes the cached aggregates; call after any member mutation.
    void refresh_aggregates();
};

// Round-count weight of one human/AI interaction pair inside a group.
struct InteractionWeight {
    int human_id = 0;
    int ai_id = 0;
    double weight = 0.0;
};

// Coefficients mapping (human performance, AI performance, human/AI
// performance covariance) to a scalar rule fitness.
struct FitnessMapParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.0;

    bool operator==(const FitnessMapParams&) const = default;
};

// Frequency vector over rule configurations; a point on the simplex.
class RulePopulation {
public:
    RulePopulation() = default;

    // Requires nonnegative entries summing to 1 within 1e-9; renormalizes so
    // the stored sum is exact to 1e-12.
    explicit RulePopulation(std::vector<double> frequencies);

    static RulePopulation uniform(std::size_t n_rules);

    std::size_t size() const { return freq_.size(); }
    double operator[](std::size_t i) const { return freq_[i]; }
    const std::vector<double>& frequencies() const { return freq_; }

private:
    std::vector<double> freq_;
};

}  // namespace mlsforge
