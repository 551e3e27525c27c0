#include "mlsforge/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mlsforge {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError(message);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
};

struct RawSection {
    std::string name;
    std::vector<std::pair<std::string, Entry>> entries;

    Entry* find(const std::string& key) {
        for (auto& [k, e] : entries)
            if (k == key) return &e;
        return nullptr;
    }
};

std::vector<RawSection> tokenize(const std::string& text) {
    std::vector<RawSection> sections;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Strip comments, respecting quoted strings.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                fail("line " + std::to_string(line_no) +
                     ": malformed section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            for (const auto& s : sections)
                if (s.name == name) fail(name + ": duplicate section");
            sections.push_back({name, {}});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("line " + std::to_string(line_no) +
                 ": expected 'key = value'");
        if (sections.empty())
            fail("line " + std::to_string(line_no) +
                 ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail("line " + std::to_string(line_no) +
                 ": expected 'key = value'");
        auto& section = sections.back();
        if (section.find(key))
            fail(section.name + "." + key + ": duplicate key");
        section.entries.push_back({key, {value, line_no, false}});
    }
    return sections;
}

double parse_number(const std::string& where, const std::string& text) {
    const std::string t = strip_quotes(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || t.empty())
        fail(where + ": expected a number, got '" + text + "'");
    return v;
}

long long parse_integer(const std::string& where, const std::string& text) {
    const std::string t = strip_quotes(text);
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || t.empty())
        fail(where + ": expected an integer, got '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& where, const std::string& text) {
    const std::string t = strip_quotes(text);
    if (!t.empty() && t.front() == '-')
        fail(where + ": expected a nonnegative integer");
    char* end = nullptr;
    const std::uint64_t v = std::strtoull(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || t.empty())
        fail(where + ": expected an integer, got '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& where,
                               const std::string& text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        fail(where + ": expected a [a, b, ...] list");
    std::vector<double> out;
    std::string body = text.substr(1, text.size() - 2);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(where + ": empty list entry");
        out.push_back(parse_number(where, item));
    }
    return out;
}

Strategy parse_strategy(const std::string& where, const std::string& text) {
    const std::string t = strip_quotes(text);
    if (t == "all-c" || t == "allc") return Strategy::AllC;
    if (t == "tit-for-tat" || t == "tft") return Strategy::TitForTat;
    if (t == "win-stay-lose-shift" || t == "wsls")
        return Strategy::WinStayLoseShift;
    if (t == "all-d" || t == "alld") return Strategy::AllD;
    fail(where + ": unknown strategy '" + t + "'");
}

// Tracks which keys were consumed so leftovers can be rejected by name.
class SectionView {
public:
    SectionView(RawSection* raw, std::string name)
        : raw_(raw), name_(std::move(name)) {}

    std::optional<std::string> take(const std::string& key) {
        if (!raw_) return std::nullopt;
        Entry* e = raw_->find(key);
        if (!e) return std::nullopt;
        e->consumed = true;
        return e->value;
    }

    std::string required(const std::string& key) {
        auto v = take(key);
        if (!v) fail(name_ + "." + key + ": missing required key");
        return *v;
    }

    double number(const std::string& key, double fallback) {
        auto v = take(key);
        return v ? parse_number(name_ + "." + key, *v) : fallback;
    }

    long long integer(const std::string& key, long long fallback) {
        auto v = take(key);
        return v ? parse_integer(name_ + "." + key, *v) : fallback;
    }

    void finish() const {
        if (!raw_) return;
        for (const auto& [key, e] : raw_->entries)
            if (!e.consumed) fail(name_ + "." + key + ": unknown key");
    }

    const std::string& name() const { return name_; }

private:
    RawSection* raw_;
    std::string name_;
};

std::array<double, kStrategyCount> parse_profile(const std::string& where,
                                                 const std::string& text) {
    const auto values = parse_list(where, text);
    if (values.size() != kStrategyCount)
        fail(where + ": expected " + std::to_string(kStrategyCount) +
             " entries (all-c, tit-for-tat, win-stay-lose-shift, all-d)");
    std::array<double, kStrategyCount> out{};
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    auto sections = tokenize(text);

    RawSection* fixed[5] = {};
    const char* fixed_names[5] = {"scenario", "groups", "game", "learning",
                                  "evolution"};
    std::vector<RawSection*> rule_sections;
    for (auto& s : sections) {
        bool known = false;
        for (int i = 0; i < 5; ++i) {
            if (s.name == fixed_names[i]) {
                fixed[i] = &s;
                known = true;
            }
        }
        if (known) continue;
        if (s.name.rfind("rules.", 0) == 0 && s.name.size() > 6) {
            rule_sections.push_back(&s);
            continue;
        }
        fail(s.name + ": unknown section");
    }

    Scenario sc;

    SectionView scenario(fixed[0], "scenario");
    {
        auto seed = scenario.take("seed");
        sc.seed = seed ? parse_u64("scenario.seed", *seed) : 1;
        sc.generations = static_cast<int>(
            parse_integer("scenario.generations", scenario.required(
                                                      "generations")));
        auto mode = scenario.take("mode");
        if (mode) {
            const std::string m = strip_quotes(*mode);
            if (m == "empirical")
                sc.mode = Scenario::Mode::Empirical;
            else if (m == "equilibrium")
                sc.mode = Scenario::Mode::Equilibrium;
            else
                fail("scenario.mode: expected 'empirical' or 'equilibrium'");
        }
        scenario.finish();
    }

    SectionView groups(fixed[1], "groups");
    {
        sc.group_count = static_cast<int>(
            parse_integer("groups.count", groups.required("count")));
        sc.group_size = static_cast<int>(
            parse_integer("groups.size", groups.required("size")));
        sc.ai_fraction = groups.number("ai_fraction", 0.5);
        groups.finish();
    }

    SectionView game(fixed[2], "game");
    {
        sc.rounds = static_cast<int>(game.integer("rounds", 10));
        auto pairing = game.take("pairing");
        if (pairing) {
            const std::string p = strip_quotes(*pairing);
            if (p == "round-robin")
                sc.pairing = PairingPolicy::RoundRobin;
            else if (p == "random-pairs")
                sc.pairing = PairingPolicy::RandomPairs;
            else
                fail("game.pairing: expected 'round-robin' or 'random-pairs'");
        }
        sc.n_matches = static_cast<int>(game.integer("matches", 0));
        if (sc.pairing == PairingPolicy::RandomPairs && sc.n_matches == 0)
            sc.n_matches = sc.group_size;
        const double cc = game.number("matrix_cc", 1.0);
        const double cd = game.number("matrix_cd", 3.0);
        const double dc = game.number("matrix_dc", 0.0);
        const double dd = game.number("matrix_dd", 2.0);
        sc.base = PayoffMatrix::symmetric(cc, cd, dc, dd);
        if (!validate_pd(sc.base))
            fail("game.matrix: not a Prisoner's Dilemma (need jail ordering "
                 "dc < cc < dd < cd)");
        game.finish();
    }

    SectionView learning(fixed[3], "learning");
    {
        sc.learning.imitation_rate = learning.number("imitation_rate", 0.3);
        sc.learning.mutation_rate = learning.number("mutation_rate", 0.01);
        sc.selection_intensity = learning.number("selection_intensity", 1.0);
        if (auto v = learning.take("init_human"))
            sc.init_human = parse_profile("learning.init_human", *v);
        if (auto v = learning.take("init_ai"))
            sc.init_ai = parse_profile("learning.init_ai", *v);
        learning.finish();
    }

    SectionView evolution(fixed[4], "evolution");
    {
        sc.dt = evolution.number("dt", 0.05);
        sc.fitness.alpha = evolution.number("alpha", 1.0);
        sc.fitness.beta = evolution.number("beta", 1.0);
        sc.fitness.gamma = evolution.number("gamma", 0.0);
        sc.equilibrium.epsilon = evolution.number("eq_epsilon", 1e-9);
        sc.equilibrium.max_iters =
            static_cast<int>(evolution.integer("eq_max_iters", 200000));
        evolution.finish();
    }

    std::vector<std::optional<double>> shares;
    for (auto* raw : rule_sections) {
        SectionView view(raw, raw->name);
        RuleConfig rule;
        rule.id = static_cast<int>(sc.rules.size());
        rule.name = raw->name.substr(6);

        const std::string kind = strip_quotes(view.required("kind"));
        if (kind == "baseline")
            rule.kind = RuleConfig::Kind::Baseline;
        else if (kind == "graduated-sanctions")
            rule.kind = RuleConfig::Kind::GraduatedSanctions;
        else if (kind == "norm-seeded")
            rule.kind = RuleConfig::Kind::NormSeeded;
        else
            fail(raw->name + ".kind: unknown rule kind '" + kind + "'");

        rule.cost = view.number("cost", 0.0);
        if (rule.cost < 0.0) fail(raw->name + ".cost: must be >= 0");

        if (auto v = view.take("share"))
            shares.push_back(parse_number(raw->name + ".share", *v));
        else
            shares.push_back(std::nullopt);

        if (rule.kind == RuleConfig::Kind::GraduatedSanctions) {
            rule.sanction_rate = parse_number(raw->name + ".lambda",
                                              view.required("lambda"));
            if (!(rule.sanction_rate >= 0.0))
                fail(raw->name + ".lambda: must be >= 0");
            rule.counter_decay = view.number("decay", 1.0);
            if (!(rule.counter_decay >= 0.0 && rule.counter_decay <= 1.0))
                fail(raw->name + ".decay: must lie in [0, 1]");
        } else {
            if (view.take("lambda"))
                fail(raw->name +
                     ".lambda: only valid for graduated-sanctions rules");
            if (view.take("decay"))
                fail(raw->name +
                     ".decay: only valid for graduated-sanctions rules");
        }

        if (rule.kind == RuleConfig::Kind::NormSeeded) {
            rule.seeded_strategy = parse_strategy(raw->name + ".strategy",
                                                  view.required("strategy"));
            rule.seeding_fraction = view.number("seeding_fraction", 0.1);
            if (!(rule.seeding_fraction >= 0.0 &&
                  rule.seeding_fraction <= 1.0))
                fail(raw->name + ".seeding_fraction: must lie in [0, 1]");
        } else {
            if (view.take("strategy"))
                fail(raw->name +
                     ".strategy: only valid for norm-seeded rules");
            if (view.take("seeding_fraction"))
                fail(raw->name +
                     ".seeding_fraction: only valid for norm-seeded rules");
        }

        view.finish();
        sc.rules.push_back(std::move(rule));
    }

    if (sc.rules.empty()) fail("rules: at least one [rules.<id>] section is required");

    const auto with_share =
        static_cast<std::size_t>(std::count_if(shares.begin(), shares.end(),
                                               [](const auto& s) {
                                                   return s.has_value();
                                               }));
    if (with_share > 0) {
        if (with_share != shares.size())
            fail("rules: either every rule sets share or none does");
        double total = 0.0;
        for (std::size_t j = 0; j < shares.size(); ++j) {
            if (!(**(shares.begin() + static_cast<std::ptrdiff_t>(j)) >= 0.0))
                fail("rules." + sc.rules[j].name + ".share: must be >= 0");
            total += **(shares.begin() + static_cast<std::ptrdiff_t>(j));
        }
        if (std::abs(total - 1.0) > 1e-9)
            fail("rules: share values must sum to 1");
        for (const auto& s : shares) sc.initial_rule_freq.push_back(*s);
    }

    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return sc;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string config_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream out;
    const char* mode =
        sc.mode == Scenario::Mode::Empirical ? "empirical" : "equilibrium";
    out << "[scenario]\n"
        << "seed = " << sc.seed << "\n"
        << "generations = " << sc.generations << "\n"
        << "mode = \"" << mode << "\"\n\n";

    out << "[groups]\n"
        << "count = " << sc.group_count << "\n"
        << "size = " << sc.group_size << "\n"
        << "ai_fraction = " << format_double(sc.ai_fraction) << "\n\n";

    out << "[game]\n"
        << "rounds = " << sc.rounds << "\n"
        << "pairing = \""
        << (sc.pairing == PairingPolicy::RoundRobin ? "round-robin"
                                                    : "random-pairs")
        << "\"\n";
    if (sc.n_matches > 0) out << "matches = " << sc.n_matches << "\n";
    out << "matrix_cc = " << format_double(sc.base.cc.row) << "\n"
        << "matrix_cd = " << format_double(sc.base.cd.row) << "\n"
        << "matrix_dc = " << format_double(sc.base.dc.row) << "\n"
        << "matrix_dd = " << format_double(sc.base.dd.row) << "\n\n";

    auto list = [](const std::array<double, kStrategyCount>& a) {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i > 0) s += ", ";
            s += format_double(a[i]);
        }
        return s + "]";
    };
    out << "[learning]\n"
        << "imitation_rate = " << format_double(sc.learning.imitation_rate)
        << "\n"
        << "mutation_rate = " << format_double(sc.learning.mutation_rate)
        << "\n"
        << "selection_intensity = " << format_double(sc.selection_intensity)
        << "\n"
        << "init_human = " << list(sc.init_human) << "\n"
        << "init_ai = " << list(sc.init_ai) << "\n\n";

    out << "[evolution]\n"
        << "dt = " << format_double(sc.dt) << "\n"
        << "alpha = " << format_double(sc.fitness.alpha) << "\n"
        << "beta = " << format_double(sc.fitness.beta) << "\n"
        << "gamma = " << format_double(sc.fitness.gamma) << "\n"
        << "eq_epsilon = " << format_double(sc.equilibrium.epsilon) << "\n"
        << "eq_max_iters = " << sc.equilibrium.max_iters << "\n";

    for (std::size_t j = 0; j < sc.rules.size(); ++j) {
        const RuleConfig& rule = sc.rules[j];
        out << "\n[rules." << rule.name << "]\n";
        switch (rule.kind) {
            case RuleConfig::Kind::Baseline:
                out << "kind = \"baseline\"\n";
                break;
            case RuleConfig::Kind::GraduatedSanctions:
                out << "kind = \"graduated-sanctions\"\n";
                break;
            case RuleConfig::Kind::NormSeeded:
                out << "kind = \"norm-seeded\"\n";
                break;
        }
        out << "cost = " << format_double(rule.cost) << "\n";
        if (!sc.initial_rule_freq.empty())
            out << "share = " << format_double(sc.initial_rule_freq[j])
                << "\n";
        if (rule.kind == RuleConfig::Kind::GraduatedSanctions) {
            out << "lambda = " << format_double(rule.sanction_rate) << "\n"
                << "decay = " << format_double(rule.counter_decay) << "\n";
        }
        if (rule.kind == RuleConfig::Kind::NormSeeded) {
            out << "strategy = \"" << to_string(rule.seeded_strategy)
                << "\"\n"
                << "seeding_fraction = "
                << format_double(rule.seeding_fraction) << "\n";
        }
    }
    return out.str();
}

void write_run_output(const std::string& out_dir, const Scenario& scenario,
                      const std::string& config_text,
                      const std::vector<GenerationRecord>& records) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const bool empirical = scenario.mode == Scenario::Mode::Empirical;

    std::ostringstream ts;
    ts << "generation,coop_share,mean_pi_human,mean_pi_ai,n_allc,n_tft,"
          "n_wsls,n_alld\n";
    if (empirical) {
        for (const auto& r : records) {
            ts << r.generation << ',' << format_double(r.coop_share) << ','
               << format_double(r.mean_pi_human) << ','
               << format_double(r.mean_pi_ai);
            for (const auto count : r.strategy_census) ts << ',' << count;
            ts << '\n';
        }
    }
    write_file(out_dir + "/timeseries.csv", ts.str());

    std::ostringstream rules;
    rules << "generation,rule,frequency,v,f_value,mean_pi_h,mean_pi_ai,"
             "cross_cov,cost\n";
    for (const auto& r : records) {
        for (std::size_t j = 0; j < scenario.rules.size(); ++j) {
            const RuleFitnessReport& rep = r.rule_reports[j];
            rules << r.generation << ',' << scenario.rules[j].name << ','
                  << format_double(r.rule_frequencies[j]) << ','
                  << format_double(rep.v) << ',' << format_double(rep.f_value)
                  << ',' << format_double(rep.mean_pi_h) << ','
                  << format_double(rep.mean_pi_ai) << ','
                  << format_double(rep.cross_cov) << ','
                  << format_double(rep.cost) << '\n';
        }
    }
    write_file(out_dir + "/rules.csv", rules.str());

    std::ostringstream price;
    price << "generation,between_group,within_human,within_ai,cross_h_ai,"
             "cross_ai_h,delta_pi_bar,lhs,residual_two_term,"
             "residual_five_term\n";
    if (empirical) {
        for (const auto& r : records) {
            if (r.generation == 0) continue;  // no predecessor to compare
            const PriceReport& p = r.price;
            price << r.generation << ',' << format_double(p.between_group)
                  << ',' << format_double(p.within_human) << ','
                  << format_double(p.within_ai) << ','
                  << format_double(p.cross_h_fit_ai_perf) << ','
                  << format_double(p.cross_ai_fit_h_perf) << ','
                  << format_double(p.delta_pi_bar) << ','
                  << format_double(p.lhs) << ','
                  << format_double(p.residual_two_term) << ','
                  << format_double(p.residual_five_term) << '\n';
        }
    }
    write_file(out_dir + "/price.csv", price.str());

    char stamp[32];
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

    nlohmann::json manifest;
    manifest["engine_version"] = kEngineVersion;
    manifest["seed"] = scenario.seed;
    manifest["config_hash"] = config_hash(config_text);
    manifest["config"] = config_text;
    manifest["created_utc"] = stamp;
    write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

GenerationSnapshot read_snapshot_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) != "agent_id,group,kind,w,pi")
        fail("snapshot: expected header 'agent_id,group,kind,w,pi'");

    std::vector<GenerationSnapshot::Member> members;
    std::set<int> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        const std::string where = "snapshot line " + std::to_string(line_no);
        if (fields.size() != 5) fail(where + ": expected 5 columns");
        GenerationSnapshot::Member m;
        m.id = static_cast<int>(parse_integer(where, fields[0]));
        m.group = static_cast<int>(parse_integer(where, fields[1]));
        if (fields[2] == "human")
            m.kind = AgentKind::Human;
        else if (fields[2] == "ai")
            m.kind = AgentKind::AI;
        else
            fail(where + ": kind must be 'human' or 'ai'");
        m.fitness = parse_number(where, fields[3]);
        m.performance = parse_number(where, fields[4]);
        if (!seen.insert(m.id).second)
            fail(where + ": duplicate agent_id " + std::to_string(m.id));
        members.push_back(m);
    }
    try {
        return GenerationSnapshot::build(std::move(members));
    } catch (const std::invalid_argument& e) {
        fail(std::string("snapshot: ") + e.what());
    }
}

std::vector<InteractionWeight> read_weights_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "human_id,ai_id,weight")
        fail("weights: expected header 'human_id,ai_id,weight'");
    std::vector<InteractionWeight> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        const std::string where = "weights line " + std::to_string(line_no);
        if (fields.size() != 3) fail(where + ": expected 3 columns");
        InteractionWeight w;
        w.human_id = static_cast<int>(parse_integer(where, fields[0]));
        w.ai_id = static_cast<int>(parse_integer(where, fields[1]));
        w.weight = parse_number(where, fields[2]);
        out.push_back(w);
    }
    return out;
}

std::string format_price_report(const PriceReport& report) {
    std::ostringstream out;
    out << "between_group = " << format_double(report.between_group) << "\n"
        << "within_human = " << format_double(report.within_human) << "\n"
        << "within_ai = " << format_double(report.within_ai) << "\n"
        << "cross_h_ai = " << format_double(report.cross_h_fit_ai_perf)
        << "\n"
        << "cross_ai_h = " << format_double(report.cross_ai_fit_h_perf)
        << "\n"
        << "delta_pi_bar = " << format_double(report.delta_pi_bar) << "\n"
        << "lhs = " << format_double(report.lhs) << "\n"
        << "residual_two_term = " << format_double(report.residual_two_term)
        << "\n"
        << "residual_five_term = "
        << format_double(report.residual_five_term) << "\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path + ": cannot open for writing");
    out << content;
    if (!out) fail(path + ": write failed");
}

}  // namespace mlsforge
