#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mlsforge/orchestrator.hpp"
#include "mlsforge/price.hpp"

// Config text handling, CSV emission, and report formatting. The config is
// sectioned key = value text; every floating value in any output uses 17
// significant digits so doubles round-trip losslessly.

namespace mlsforge {

inline constexpr const char* kEngineVersion = "0.1.0";

// Parse or validation failure; the message starts with section.key where one
// is at fault.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses and validates a scenario document. Unknown sections or keys are
// rejected; missing required keys and out-of-range values raise ConfigError
// naming the key.
Scenario parse_scenario(const std::string& text);

// Canonical text form with every default spelled out;
// parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

// Shortest-exact formatting for CSV and reports: %.17g.
std::string format_double(double value);

// FNV-1a 64-bit hash of the raw config text, as fixed-width hex.
std::string config_hash(const std::string& text);

// Writes timeseries.csv, rules.csv, price.csv and manifest.json into
// out_dir (created if needed). Equilibrium-mode runs have no agent
// population, so timeseries.csv and price.csv carry headers only there.
void write_run_output(const std::string& out_dir, const Scenario& scenario,
                      const std::string& config_text,
                      const std::vector<GenerationRecord>& records);

// Snapshot rows for the standalone decomposition entry point.
// Columns: agent_id, group, kind (human|ai), w, pi.
GenerationSnapshot read_snapshot_csv(const std::string& text);

// Interaction weight rows: human_id, ai_id, weight.
std::vector<InteractionWeight> read_weights_csv(const std::string& text);

// One "name = value" line per report field, in output column order.
std::string format_price_report(const PriceReport& report);

std::string read_file(const std::string& path);        // ConfigError on failure
void write_file(const std::string& path, const std::string& content);

}  // namespace mlsforge
