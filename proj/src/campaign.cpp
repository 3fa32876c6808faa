#include "finstate/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "finstate/serialize.hpp"

namespace finstate {

using nlohmann::json;

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> tolerances = {
        {"functoriality", 1e-9},
        {"trace_entropy_chain", 1e-10},
        {"convex_linearity", 1e-9},
        {"positivity", 1e-9},
        {"left_invertible_zero", 1e-9},
        {"factorization", 1e-9},
        {"continuity", 1e-9},
        {"segal_von_neumann", 1e-10},
        {"classical_shannon", 1e-12},
        {"classical_restriction", 1e-9},
        {"negativity_witness", 1e-9},
    };
    return tolerances;
}

const std::vector<std::string>& campaign_property_names() {
    static const std::vector<std::string> names = {
        "functoriality",      "trace_entropy_chain", "convex_linearity",
        "positivity",         "left_invertible_zero", "factorization",
        "continuity",         "segal_von_neumann",    "classical_shannon",
        "classical_restriction", "negativity_witness",
    };
    return names;
}

void validate_config(const CampaignConfig& config) {
    if (config.trials < 1)
        throw InvalidArgumentError("campaign config: trials must be >= 1");
    if (config.max_blocks < 1 || config.max_block_dim < 1)
        throw InvalidArgumentError("campaign config: system bounds must be >= 1");
    if (!(config.functor_scale >= 0.0))
        throw InvalidArgumentError("campaign config: functor_scale must be >= 0");
    const auto& names = campaign_property_names();
    for (const auto& [key, value] : config.tolerances) {
        if (std::find(names.begin(), names.end(), key) == names.end())
            throw InvalidArgumentError("campaign config: unknown tolerance key \"" + key + "\"");
        if (!(value >= 0.0) || !std::isfinite(value))
            throw InvalidArgumentError("campaign config: tolerance for \"" + key +
                                       "\" must be finite and >= 0");
    }
}

namespace {

double tolerance_for(const CampaignConfig& config, const std::string& name) {
    auto it = config.tolerances.find(name);
    if (it != config.tolerances.end())
        return it->second;
    return default_tolerances().at(name);
}

double max_entry_distance(const Channel& a, const Channel& b) {
    double worst = 0.0;
    for (int j = 0; j < a.target().num_blocks(); ++j)
        for (int i = 0; i < a.source().num_blocks(); ++i)
            worst = std::max(worst, (a.choi(j, i) - b.choi(j, i)).cwiseAbs().maxCoeff());
    return worst;
}

Channel depolarizing_qubit(double lambda) {
    const System qubit({2});
    const Channel id = identity_channel(qubit);
    Matrix choi = (1.0 - lambda) * id.choi(0, 0) +
                  (lambda / 2.0) * Matrix::Identity(4, 4);
    std::vector<std::vector<Matrix>> grid(1);
    grid[0].push_back(std::move(choi));
    return Channel(qubit, qubit, std::move(grid));
}

PureState qubit_pure(const Vector& v) {
    return PureState(System({2}), 0, v);
}

std::vector<PureState> qubit_standard_basis() {
    Vector e0 = Vector::Zero(2);
    Vector e1 = Vector::Zero(2);
    e0(0) = Complex(1.0, 0.0);
    e1(1) = Complex(1.0, 0.0);
    return {qubit_pure(e0), qubit_pure(e1)};
}

// ---- per-property trials ------------------------------------------------
// Each returns the trial's deviation; the witness pointer is only filled
// when a failing trial is re-run for reporting.

double trial_functoriality(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    const System a = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const System b = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const System c = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, a);
    const Morphism f_m(omega, random_cptp(rng, a, b));
    const Morphism g_m(f_m.target_state(), random_cptp(rng, b, c));
    const Morphism composite = compose_morphisms(g_m, f_m);
    const double deviation =
        std::abs(evaluate(functor, composite) - evaluate(functor, g_m) - evaluate(functor, f_m));
    if (witness)
        *witness = {{"omega", to_json(omega)},
                    {"f", to_json(f_m.channel())},
                    {"g", to_json(g_m.channel())},
                    {"deviation", deviation}};
    return deviation;
}

double trial_trace_entropy_chain(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const System a = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, a);
    const double entropy = segal(omega).nats;
    double deviation = 0.0;
    for (double scale : {1.0, 2.5}) {
        const double value = evaluate(EntropyFunctor(scale), trace_morphism(omega));
        deviation = std::max(deviation, std::abs(value - scale * entropy));
    }
    if (witness)
        *witness = {{"omega", to_json(omega)}, {"segal", entropy}, {"deviation", deviation}};
    return deviation;
}

double trial_convex_linearity(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    const Channel f =
        random_pure_to_pure(rng, PureToPureFamily::Any, cfg.max_blocks, cfg.max_block_dim);
    const Channel g =
        random_pure_to_pure(rng, PureToPureFamily::Any, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, f.source());
    const State xi = random_state(rng, g.source());
    const double pick = rng.uniform();
    const double lambda = pick < 0.1 ? 0.0 : pick < 0.2 ? 1.0 : rng.uniform();
    const CheckReport report = check_convex_linearity(
        functor, f, g, omega, xi, lambda, tolerance_for(cfg, "convex_linearity"));
    if (witness)
        *witness = {{"f", to_json(f)},
                    {"g", to_json(g)},
                    {"omega", to_json(omega)},
                    {"xi", to_json(xi)},
                    {"lambda", lambda},
                    {"deviation", report.max_deviation}};
    return report.max_deviation;
}

double trial_positivity(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    const Channel f =
        random_pure_to_pure(rng, PureToPureFamily::Any, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, f.source());
    const CheckReport report = check_positivity(functor, f, omega,
                                                tolerance_for(cfg, "positivity"), nullptr,
                                                /*p2p_samples=*/8, rng.next_u64());
    if (witness)
        *witness = {{"f", to_json(f)},
                    {"omega", to_json(omega)},
                    {"deviation", report.max_deviation}};
    return report.max_deviation;
}

double trial_left_invertible_zero(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    const System a = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, a);
    const Factorization fact = factorize_state(omega);
    const double identity_gap =
        max_entry_distance(compose(fact.measure, fact.embed), identity_channel(fact.z));
    const double functor_gap = std::abs(evaluate(functor, Morphism(fact.gamma, fact.embed)));
    const double deviation = std::max(identity_gap, functor_gap);
    if (witness)
        *witness = {{"omega", to_json(omega)},
                    {"identity_gap", identity_gap},
                    {"functor_gap", functor_gap}};
    return deviation;
}

double trial_factorization(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const System a = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, a);
    const Factorization fact = factorize_state(omega);
    const double reconstruction_gap = max_abs_diff(apply(fact.embed, fact.gamma), omega);
    const double entropy_gap =
        std::abs(shannon(state_as_prob_vector(fact.gamma)).nats - segal(omega).nats);
    const double deviation = std::max(reconstruction_gap, entropy_gap);
    if (witness)
        *witness = {{"omega", to_json(omega)},
                    {"reconstruction_gap", reconstruction_gap},
                    {"entropy_gap", entropy_gap}};
    return deviation;
}

double trial_continuity(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    const double floor_tol = tolerance_for(cfg, "continuity");
    const int points = 10;
    const double ratio = 0.35 + 0.3 * rng.uniform();

    if (rng.uniform() < 0.5) {
        // Two-point classical states approaching a limit under the trace
        // channel. Half the draws put the limit on a point mass, where the
        // entropy modulus of continuity is attained.
        const bool boundary = rng.uniform() < 0.5;
        const double t_limit = boundary ? 0.0 : 0.15 + 0.7 * rng.uniform();
        double t0;
        if (boundary) {
            t0 = 0.1 + 0.4 * rng.uniform();
        } else {
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            t0 = std::clamp(t_limit + sign * (0.02 + 0.1 * rng.uniform()), 0.01, 0.99);
        }
        const Channel tr = trace_channel(make_classical_system(2));
        std::vector<Morphism> sequence;
        for (int n = 1; n <= points; ++n) {
            const double t = t_limit + (t0 - t_limit) * std::pow(ratio, n);
            sequence.emplace_back(classical_state_from_probs({t, 1.0 - t}), tr);
        }
        const Morphism limit(classical_state_from_probs({t_limit, 1.0 - t_limit}), tr);
        const CheckReport report = check_continuity(
            functor, sequence, limit, fannes_modulus(functor.scale(), 2, 1), floor_tol);
        if (witness)
            *witness = {{"family", "classical_two_point"},
                        {"t_limit", t_limit},
                        {"t0", t0},
                        {"excess", report.max_deviation}};
        return report.max_deviation;
    }

    // Depolarizing family on a qubit with a fixed source state; the fitted
    // Lipschitz constant is valid because the output spectra stay away
    // from zero.
    const State omega = random_state(rng, System({2}));
    const double lambda_limit = 0.2 + 0.6 * rng.uniform();
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double lambda0 =
        std::clamp(lambda_limit + sign * (0.05 + 0.1 * rng.uniform()), 0.05, 0.95);
    std::vector<Morphism> sequence;
    for (int n = 1; n <= points; ++n) {
        const double lambda = lambda_limit + (lambda0 - lambda_limit) * std::pow(ratio, n);
        sequence.emplace_back(omega, depolarizing_qubit(lambda));
    }
    const Morphism limit(omega, depolarizing_qubit(lambda_limit));
    const double lipschitz = fitted_entropy_lipschitz(functor, sequence, limit);
    const CheckReport report =
        check_continuity(functor, sequence, limit, linear_modulus(lipschitz), floor_tol);
    if (witness)
        *witness = {{"family", "depolarizing_qubit"},
                    {"lambda_limit", lambda_limit},
                    {"lambda0", lambda0},
                    {"fitted_lipschitz", lipschitz},
                    {"excess", report.max_deviation}};
    return report.max_deviation;
}

double trial_segal_von_neumann(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const System a = random_system(rng, cfg.max_blocks, cfg.max_block_dim);
    const State omega = random_state(rng, a);
    const double deviation =
        std::abs(segal(omega).nats - von_neumann(embed_state_full(omega)).nats);
    if (witness)
        *witness = {{"omega", to_json(omega)}, {"deviation", deviation}};
    return deviation;
}

double trial_classical_shannon(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const int size = rng.uniform_int(1, cfg.max_blocks * cfg.max_block_dim);
    const State p = random_state(rng, make_classical_system(size));
    const double deviation = std::abs(segal(p).nats - shannon(state_as_prob_vector(p)).nats);
    if (witness)
        *witness = {{"p", to_json(p)}, {"deviation", deviation}};
    return deviation;
}

double trial_classical_restriction(Rng& rng, const CampaignConfig& cfg, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    const int x_size = rng.uniform_int(1, cfg.max_blocks);
    const int y_size = rng.uniform_int(1, cfg.max_blocks);
    const Channel f = random_classical_deterministic(rng, x_size, y_size);
    const State p = random_state(rng, f.source());
    const CheckReport report = check_classical_restriction(
        functor, f, p, tolerance_for(cfg, "classical_restriction"));
    if (witness)
        *witness = {{"f", to_json(f)}, {"p", to_json(p)}, {"deviation", report.max_deviation}};
    return report.max_deviation;
}

double trial_negativity_witness(Rng& rng, const CampaignConfig& cfg, long trial, json* witness) {
    const EntropyFunctor functor(cfg.functor_scale);
    Vector v(2);
    if (trial == 0) {
        // Canonical instance: dephasing the balanced superposition costs
        // exactly ln 2, certifying the functor takes negative values on
        // channels that are not pure-to-pure.
        v << Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0);
    } else {
        v = haar_state_vector(rng, 2);
    }
    const Morphism dephased(qubit_pure(v).to_state(),
                            measurement_channel(qubit_standard_basis()));
    const double value = evaluate(functor, dephased);
    const double expected =
        -functor.scale() * shannon({std::norm(v(0)), std::norm(v(1))}).nats;
    const double deviation = std::abs(value - expected);
    if (witness)
        *witness = {{"state", to_json(dephased.source_state())},
                    {"value", value},
                    {"expected", expected}};
    return deviation;
}

} // namespace

double run_property_trial(const std::string& property, const CampaignConfig& config, long trial,
                          json* witness_out) {
    const auto& names = campaign_property_names();
    const auto it = std::find(names.begin(), names.end(), property);
    if (it == names.end())
        throw InvalidArgumentError("unknown property \"" + property + "\"");
    const auto index = static_cast<std::uint64_t>(it - names.begin());
    Rng rng(derive_seed(config.seed, index + 1, static_cast<std::uint64_t>(trial)));

    if (property == "functoriality")
        return trial_functoriality(rng, config, witness_out);
    if (property == "trace_entropy_chain")
        return trial_trace_entropy_chain(rng, config, witness_out);
    if (property == "convex_linearity")
        return trial_convex_linearity(rng, config, witness_out);
    if (property == "positivity")
        return trial_positivity(rng, config, witness_out);
    if (property == "left_invertible_zero")
        return trial_left_invertible_zero(rng, config, witness_out);
    if (property == "factorization")
        return trial_factorization(rng, config, witness_out);
    if (property == "continuity")
        return trial_continuity(rng, config, witness_out);
    if (property == "segal_von_neumann")
        return trial_segal_von_neumann(rng, config, witness_out);
    if (property == "classical_shannon")
        return trial_classical_shannon(rng, config, witness_out);
    if (property == "classical_restriction")
        return trial_classical_restriction(rng, config, witness_out);
    return trial_negativity_witness(rng, config, trial, witness_out);
}

TrialOutcome merge_outcomes(const TrialOutcome& a, const TrialOutcome& b) {
    if (a.trial < 0)
        return b;
    if (b.trial < 0)
        return a;
    if (a.deviation != b.deviation)
        return a.deviation > b.deviation ? a : b;
    return a.trial <= b.trial ? a : b;
}

CampaignReport run_campaign(const CampaignConfig& raw_config) {
    CampaignConfig config = raw_config;
    for (const auto& [name, tol] : default_tolerances())
        config.tolerances.emplace(name, tol);
    validate_config(config);

    const auto start = std::chrono::steady_clock::now();
    CampaignReport report;
    report.config = config;
    report.overall_pass = true;
    for (const std::string& name : campaign_property_names()) {
        TrialOutcome worst;
        for (long trial = 0; trial < config.trials; ++trial)
            worst = merge_outcomes(worst, {trial, run_property_trial(name, config, trial, nullptr)});

        CheckReport check;
        check.property = name;
        check.trials = config.trials;
        check.max_deviation = worst.deviation;
        check.tolerance = config.tolerances.at(name);
        check.seed = config.seed;
        check.pass = worst.deviation <= check.tolerance;
        if (!check.pass) {
            json witness;
            run_property_trial(name, config, worst.trial, &witness);
            witness["trial"] = worst.trial;
            check.witness = std::move(witness);
            report.overall_pass = false;
        }
        report.properties.push_back(std::move(check));
    }
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!config.output_path.empty())
        write_json_file(config.output_path, to_json(report));
    return report;
}

json to_json(const CampaignConfig& config) {
    return json{{"seed", config.seed},
                {"trials", config.trials},
                {"max_blocks", config.max_blocks},
                {"max_block_dim", config.max_block_dim},
                {"functor_scale", config.functor_scale},
                {"tolerances", config.tolerances},
                {"output_path", config.output_path}};
}

CampaignConfig campaign_config_from_json(const json& j) {
    CampaignConfig config;
    static const std::vector<std::string> known = {
        "seed", "trials", "max_blocks", "max_block_dim", "functor_scale", "tolerances",
        "output_path"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidArgumentError("campaign config: unknown key \"" + key + "\"");
    }
    if (j.contains("seed"))
        config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trials"))
        config.trials = j["trials"].get<long>();
    if (j.contains("max_blocks"))
        config.max_blocks = j["max_blocks"].get<int>();
    if (j.contains("max_block_dim"))
        config.max_block_dim = j["max_block_dim"].get<int>();
    if (j.contains("functor_scale"))
        config.functor_scale = j["functor_scale"].get<double>();
    if (j.contains("tolerances"))
        config.tolerances = j["tolerances"].get<std::map<std::string, double>>();
    if (j.contains("output_path"))
        config.output_path = j["output_path"].get<std::string>();
    return config;
}

json to_json(const CampaignReport& report) {
    json properties = json::array();
    for (const CheckReport& check : report.properties)
        properties.push_back(to_json(check));
    return json{{"config", to_json(report.config)},
                {"properties", std::move(properties)},
                {"overall_pass", report.overall_pass},
                {"duration_seconds", report.duration_seconds},
                {"units", report.units}};
}

} // namespace finstate
