#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlsforge/institution.hpp"
#include "mlsforge/orchestrator.hpp"
#include "mlsforge/scenario_io.hpp"

namespace {

using namespace mlsforge;

void run_command(const std::string& config_path, const std::string& out_dir) {
    const std::string text = read_file(config_path);
    const Scenario scenario = parse_scenario(text);
    const auto records = run_scenario(scenario);
    write_run_output(out_dir, scenario, text, records);
}

void decompose_command(const std::string& before_path,
                       const std::string& after_path,
                       const std::string& weights_path) {
    const GenerationSnapshot before =
        read_snapshot_csv(read_file(before_path));
    const GenerationSnapshot after = read_snapshot_csv(read_file(after_path));
    std::vector<InteractionWeight> weights;
    if (!weights_path.empty())
        weights = read_weights_csv(read_file(weights_path));
    PriceReport report;
    try {
        report = price_decomposition(before, after, weights);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    std::cout << format_price_report(report);
}

int equilibrium_command(const std::string& config_path,
                        const std::string& rule_name) {
    const Scenario scenario = parse_scenario(read_file(config_path));
    const RuleConfig* rule = nullptr;
    for (const auto& r : scenario.rules)
        if (r.name == rule_name) rule = &r;
    if (!rule)
        throw ConfigError("rules." + rule_name + ": no such rule in config");

    const BeliefDistribution start =
        initial_beliefs_for_rule(*rule, scenario.ai_fraction);
    const EquilibriumResult eq =
        find_equilibrium(start, scenario.base, *rule, scenario.rounds,
                         scenario.equilibrium);
    const double gap = deviation_audit(eq, scenario.base, *rule,
                                       scenario.rounds);

    auto profile = [](const std::array<double, kStrategyCount>& p) {
        std::string s = "[";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i > 0) s += ", ";
            s += format_double(p[i]);
        }
        return s + "]";
    };
    std::cout << "rule = " << rule->name << "\n"
              << "converged = " << (eq.converged ? "true" : "false") << "\n"
              << "iterations = " << eq.iterations << "\n"
              << "human_payoff = " << format_double(eq.human_payoff) << "\n"
              << "ai_payoff = " << format_double(eq.ai_payoff) << "\n"
              << "audit_gap = " << format_double(gap) << "\n"
              << "human_profile = " << profile(eq.beliefs.human) << "\n"
              << "ai_profile = " << profile(eq.beliefs.ai) << "\n";
    if (!eq.converged) {
        std::cerr << "equilibrium for rule '" << rule->name
                  << "' did not converge within "
                  << scenario.equilibrium.max_iters << " iterations\n";
        return 2;
    }
    return 0;
}

// Applies the swept parameter to a fresh copy of the scenario.
std::function<void(Scenario&, double)> resolve_param(
    const Scenario& scenario, const std::string& param) {
    if (param == "lambda" || param == "decay") {
        bool any = false;
        for (const auto& r : scenario.rules)
            any = any || r.kind == RuleConfig::Kind::GraduatedSanctions;
        if (!any)
            throw ConfigError("sweep: no graduated-sanctions rule to vary '" +
                              param + "' on");
        const bool is_lambda = param == "lambda";
        return [is_lambda](Scenario& sc, double v) {
            for (auto& r : sc.rules) {
                if (r.kind != RuleConfig::Kind::GraduatedSanctions) continue;
                (is_lambda ? r.sanction_rate : r.counter_decay) = v;
            }
        };
    }
    if (param == "cost")
        return [](Scenario& sc, double v) {
            for (auto& r : sc.rules) r.cost = v;
        };
    if (param == "imitation_rate")
        return [](Scenario& sc, double v) { sc.learning.imitation_rate = v; };
    if (param == "mutation_rate")
        return [](Scenario& sc, double v) { sc.learning.mutation_rate = v; };
    if (param == "selection_intensity")
        return [](Scenario& sc, double v) { sc.selection_intensity = v; };
    if (param == "ai_fraction")
        return [](Scenario& sc, double v) { sc.ai_fraction = v; };
    if (param == "dt")
        return [](Scenario& sc, double v) { sc.dt = v; };

    if (param.rfind("rules.", 0) == 0) {
        const auto last_dot = param.rfind('.');
        if (last_dot > 6 && last_dot != std::string::npos) {
            const std::string name = param.substr(6, last_dot - 6);
            const std::string field = param.substr(last_dot + 1);
            std::size_t index = scenario.rules.size();
            for (std::size_t j = 0; j < scenario.rules.size(); ++j)
                if (scenario.rules[j].name == name) index = j;
            if (index == scenario.rules.size())
                throw ConfigError("sweep: no rule named '" + name + "'");
            if (field == "lambda")
                return [index](Scenario& sc, double v) {
                    sc.rules[index].sanction_rate = v;
                };
            if (field == "decay")
                return [index](Scenario& sc, double v) {
                    sc.rules[index].counter_decay = v;
                };
            if (field == "cost")
                return [index](Scenario& sc, double v) {
                    sc.rules[index].cost = v;
                };
            if (field == "seeding_fraction")
                return [index](Scenario& sc, double v) {
                    sc.rules[index].seeding_fraction = v;
                };
            throw ConfigError("sweep: unknown rule field '" + field + "'");
        }
    }
    throw ConfigError("sweep: unknown parameter '" + param + "'");
}

unsigned sweep_worker_count(std::size_t points) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("MLS_FORGE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1)
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(
        std::min<std::size_t>(n, points == 0 ? 1 : points));
}

struct SweepRow {
    double value = 0.0;
    double coop_share = 0.0;
    double mean_v = 0.0;
    std::vector<double> frequencies;
};

// Summary statistics of one finished run: cooperation averaged over the last
// fifth of the generations, frequencies and frequency-weighted mean V from
// the final generation.
SweepRow summarize(double value, const Scenario& scenario,
                   const std::vector<GenerationRecord>& records) {
    SweepRow row;
    row.value = value;
    const auto n = records.size();
    const std::size_t window = std::max<std::size_t>(1, n / 5);
    double coop = 0.0;
    for (std::size_t i = n - window; i < n; ++i) coop += records[i].coop_share;
    row.coop_share = coop / static_cast<double>(window);

    const GenerationRecord& last = records.back();
    row.frequencies = last.rule_frequencies;
    for (std::size_t j = 0; j < scenario.rules.size(); ++j)
        row.mean_v += last.rule_frequencies[j] * last.rule_reports[j].v;
    return row;
}

void sweep_command(const std::string& config_path, const std::string& param,
                   double from, double to, int steps,
                   const std::string& out_dir) {
    if (steps < 1) throw ConfigError("sweep: --steps must be >= 1");
    const std::string text = read_file(config_path);
    const Scenario base = parse_scenario(text);
    if (base.generations < 1)
        throw ConfigError("sweep: scenario.generations must be >= 1");
    const auto setter = resolve_param(base, param);

    std::vector<double> values;
    for (int i = 0; i < steps; ++i) {
        values.push_back(steps == 1 ? from
                                    : from + (to - from) *
                                                 static_cast<double>(i) /
                                                 static_cast<double>(steps - 1));
    }

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_lock;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            try {
                Scenario point = base;
                setter(point, values[i]);
                try {
                    point.validate();
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(std::string("sweep point ") +
                                      format_double(values[i]) + ": " +
                                      e.what());
                }
                rows[i] = summarize(values[i], point, run_scenario(point));
            } catch (...) {
                std::lock_guard<std::mutex> hold(error_lock);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const unsigned workers = sweep_worker_count(values.size());
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < workers; ++t) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);

    std::ostringstream csv;
    csv << "value,coop_share,mean_v";
    for (const auto& rule : base.rules) csv << ",freq_" << rule.name;
    csv << '\n';
    for (const auto& row : rows) {
        csv << format_double(row.value) << ','
            << format_double(row.coop_share) << ','
            << format_double(row.mean_v);
        for (double f : row.frequencies) csv << ',' << format_double(f);
        csv << '\n';
    }
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/sweep.csv", csv.str());

    nlohmann::json manifest;
    manifest["engine_version"] = kEngineVersion;
    manifest["seed"] = base.seed;
    manifest["config_hash"] = config_hash(text);
    manifest["config"] = text;
    manifest["sweep"] = {{"param", param},
                         {"from", from},
                         {"to", to},
                         {"steps", steps}};
    write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-level selection simulator for hybrid human/AI "
                 "organizations"};
    app.set_version_flag("--version", std::string(kEngineVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir, before_path, after_path, weights_path,
        rule_name, param;
    double from = 0.0, to = 1.0;
    int steps = 1;

    CLI::App* run = app.add_subcommand("run", "Run a scenario and write CSVs");
    run->add_option("--config", config_path, "Scenario config file")
        ->required();
    run->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* decompose = app.add_subcommand(
        "decompose", "Selection decomposition between two snapshot CSVs");
    decompose->add_option("--before", before_path, "Snapshot at t")
        ->required();
    decompose->add_option("--after", after_path, "Snapshot at t+1")
        ->required();
    decompose->add_option("--weights", weights_path,
                          "Interaction weights CSV (optional)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run the scenario across one parameter's value grid");
    sweep->add_option("--config", config_path, "Scenario config file")
        ->required();
    sweep->add_option("--param", param, "Parameter to vary")->required();
    sweep->add_option("--from", from, "First value")->required();
    sweep->add_option("--to", to, "Last value")->required();
    sweep->add_option("--steps", steps, "Number of grid points")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* equilibrium = app.add_subcommand(
        "equilibrium", "Solve and print one rule's equilibrium");
    equilibrium->add_option("--config", config_path, "Scenario config file")
        ->required();
    equilibrium->add_option("--rule", rule_name, "Rule section id")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            run_command(config_path, out_dir);
            return 0;
        }
        if (decompose->parsed()) {
            decompose_command(before_path, after_path, weights_path);
            return 0;
        }
        if (sweep->parsed()) {
            sweep_command(config_path, param, from, to, steps, out_dir);
            return 0;
        }
        if (equilibrium->parsed())
            return equilibrium_command(config_path, rule_name);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
