// Command-line front end: entropy evaluation, channel application, spectral
// factorization, CPTP validation, and the randomized verification campaign.
//
// Exit codes: 0 success / all properties pass, 1 property or validation
// failure, 2 usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "finstate/campaign.hpp"
#include "finstate/serialize.hpp"

namespace {

using finstate::Channel;
using finstate::State;
using nlohmann::json;

std::string format_nats(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.15g", value);
    return buffer;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        finstate::write_json_file(out_path, j);
}

int cmd_entropy(const std::string& state_path) {
    const State state = finstate::state_from_json(finstate::load_json_file(state_path));
    json result;
    result["units"] = "nats";
    result["segal"] = format_nats(finstate::segal(state).nats);
    result["von_neumann"] =
        format_nats(finstate::von_neumann(finstate::embed_state_full(state)).nats);
    if (state.system().is_classical())
        result["shannon"] =
            format_nats(finstate::shannon(finstate::state_as_prob_vector(state)).nats);
    std::cout << result.dump(2) << "\n";
    return 0;
}

int cmd_apply(const std::string& channel_path, const std::string& state_path,
              const std::string& out_path) {
    const Channel channel = finstate::channel_from_json(finstate::load_json_file(channel_path));
    const State state = finstate::state_from_json(finstate::load_json_file(state_path));
    emit(finstate::to_json(finstate::apply(channel, state)), out_path);
    return 0;
}

int cmd_validate(const std::string& channel_path) {
    const Channel channel =
        finstate::channel_from_json(finstate::load_json_file(channel_path), /*validate=*/false);
    const finstate::CptpReport report = finstate::validate_cptp(channel);
    std::cout << finstate::to_json(report).dump(2) << "\n";
    return report.cp_ok && report.tp_ok ? 0 : 1;
}

int cmd_factorize(const std::string& state_path, const std::string& out_dir) {
    const State omega = finstate::state_from_json(finstate::load_json_file(state_path));
    const finstate::Factorization fact = finstate::factorize_state(omega);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    finstate::write_json_file(dir / "z_system.json", finstate::to_json(fact.z));
    finstate::write_json_file(dir / "gamma.json", finstate::to_json(fact.gamma));
    finstate::write_json_file(dir / "embedding.json", finstate::to_json(fact.embed));
    finstate::write_json_file(dir / "measurement.json", finstate::to_json(fact.measure));

    json summary;
    summary["left_inverse_ok"] = finstate::verify_left_inverse(fact.measure, fact.embed, 1e-9);
    summary["reconstruction_error"] =
        finstate::max_abs_diff(finstate::apply(fact.embed, fact.gamma), omega);
    const double shannon_gamma =
        finstate::shannon(finstate::state_as_prob_vector(fact.gamma)).nats;
    const double segal_omega = finstate::segal(omega).nats;
    summary["shannon_gamma"] = format_nats(shannon_gamma);
    summary["segal_omega"] = format_nats(segal_omega);
    summary["entropy_gap"] = std::abs(shannon_gamma - segal_omega);
    finstate::write_json_file(dir / "summary.json", summary);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_check(const std::string& config_path, std::uint64_t seed, long trials, int max_blocks,
              int max_block_dim, double scale, const std::string& out_path, bool have_seed,
              bool have_trials) {
    finstate::CampaignConfig config;
    if (!config_path.empty())
        config = finstate::campaign_config_from_json(finstate::load_json_file(config_path));
    if (have_seed)
        config.seed = seed;
    if (have_trials)
        config.trials = trials;
    if (max_blocks > 0)
        config.max_blocks = max_blocks;
    if (max_block_dim > 0)
        config.max_block_dim = max_block_dim;
    if (scale >= 0.0)
        config.functor_scale = scale;
    if (!out_path.empty())
        config.output_path = out_path;

    const finstate::CampaignReport report = finstate::run_campaign(config);
    for (const finstate::CheckReport& check : report.properties) {
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.property << ": max deviation "
                  << check.max_deviation << " (tolerance " << check.tolerance << ", "
                  << check.trials << " trials)\n";
    }
    std::cout << (report.overall_pass ? "overall: PASS" : "overall: FAIL") << " in "
              << report.duration_seconds << " s\n";
    if (config.output_path.empty())
        std::cout << finstate::to_json(report).dump(2) << "\n";
    return report.overall_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finstate: block-diagonal quantum states, CPTP channels, entropy, "
                 "and randomized verification of the entropy functor"};
    app.require_subcommand(1);

    std::string state_path;
    std::string channel_path;
    std::string out_path;
    std::string out_dir;
    std::string config_path;
    std::uint64_t seed = 42;
    long trials = 1000;
    int max_blocks = -1;
    int max_block_dim = -1;
    double scale = -1.0;

    auto* entropy_cmd = app.add_subcommand("entropy", "Print entropies of a state in nats");
    entropy_cmd->add_option("--state", state_path, "state JSON file")->required();

    auto* apply_cmd = app.add_subcommand("apply", "Apply a channel to a state");
    apply_cmd->add_option("--channel", channel_path, "channel JSON file")->required();
    apply_cmd->add_option("--state", state_path, "state JSON file")->required();
    apply_cmd->add_option("--out", out_path, "write target state here instead of stdout");

    auto* validate_cmd = app.add_subcommand("validate", "CPTP report for a channel");
    validate_cmd->add_option("--channel", channel_path, "channel JSON file")->required();

    auto* factorize_cmd =
        app.add_subcommand("factorize", "Spectral factorization of a state through a "
                                        "classical system");
    factorize_cmd->add_option("--state", state_path, "state JSON file")->required();
    factorize_cmd->add_option("--out-dir", out_dir, "output directory")->required();

    auto* check_cmd = app.add_subcommand("check", "Run the verification campaign");
    check_cmd->add_option("--config", config_path, "campaign config JSON file");
    auto* seed_opt = check_cmd->add_option("--seed", seed, "root seed");
    auto* trials_opt = check_cmd->add_option("--trials", trials, "trials per property");
    check_cmd->add_option("--max-blocks", max_blocks, "max blocks per random system");
    check_cmd->add_option("--max-block-dim", max_block_dim, "max dimension per block");
    check_cmd->add_option("--scale", scale, "functor scale c");
    check_cmd->add_option("--out", out_path, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (entropy_cmd->parsed())
            return cmd_entropy(state_path);
        if (apply_cmd->parsed())
            return cmd_apply(channel_path, state_path, out_path);
        if (validate_cmd->parsed())
            return cmd_validate(channel_path);
        if (factorize_cmd->parsed())
            return cmd_factorize(state_path, out_dir);
        return cmd_check(config_path, seed, trials, max_blocks, max_block_dim, scale, out_path,
                         seed_opt->count() > 0, trials_opt->count() > 0);
    } catch (const finstate::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const finstate::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const finstate::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
