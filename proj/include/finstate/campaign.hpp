#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "finstate/functor.hpp"
#include "finstate/random.hpp"

namespace finstate {

/// Parameters of a randomized verification campaign. A tolerance of 0 is
/// accepted for fault injection: a property whose deviations are genuinely
/// nonzero must then fail and produce a witness.
struct CampaignConfig {
    std::uint64_t seed = 42;
    long trials = 1000;
    int max_blocks = 3;
    int max_block_dim = 4;
    double functor_scale = 1.0;
    std::map<std::string, double> tolerances; // empty entries take defaults
    std::string output_path;                  // empty: no file written
};

/// Tolerances every property runs at unless overridden.
const std::map<std::string, double>& default_tolerances();

/// Names of the checked properties, in execution order.
const std::vector<std::string>& campaign_property_names();

/// Throws InvalidArgumentError on nonsense (zero trials, unknown tolerance
/// keys, negative bounds).
void validate_config(const CampaignConfig& config);

struct CampaignReport {
    CampaignConfig config;
    std::vector<CheckReport> properties;
    bool overall_pass = false;
    double duration_seconds = 0.0;
    std::string units = "nats";
};

/// One trial of one property. Deterministic given (config.seed, property,
/// trial): reruns reproduce the deviation bit for bit, which is how failing
/// witnesses are rebuilt. witness_out, when non-null, receives the
/// serialized instance.
double run_property_trial(const std::string& property, const CampaignConfig& config, long trial,
                          nlohmann::json* witness_out);

/// Folding state for per-trial results; merging is associative and
/// commutative (max deviation, ties resolved to the lower trial index), so
/// execution order cannot affect the report.
struct TrialOutcome {
    long trial = -1;
    double deviation = 0.0;
};
TrialOutcome merge_outcomes(const TrialOutcome& a, const TrialOutcome& b);

/// Runs every property for config.trials seeded trials, writes the report
/// JSON when an output path is set, and returns it.
CampaignReport run_campaign(const CampaignConfig& config);

nlohmann::json to_json(const CampaignConfig& config);
CampaignConfig campaign_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CampaignReport& report);

} // namespace finstate
