#include "finstate/functor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finstate/serialize.hpp"

namespace finstate {

Morphism::Morphism(State source_state, Channel channel)
    : source_(std::move(source_state)), channel_(std::move(channel)),
      target_(apply(channel_, source_)) {
    // apply() already enforces the system match.
}

Morphism::Morphism(State source_state, Channel channel, State target_state)
    : source_(std::move(source_state)), channel_(std::move(channel)),
      target_(std::move(target_state)) {
    const State derived = apply(channel_, source_);
    if (derived.system() != target_.system() || max_abs_diff(derived, target_) > kTolMorphism)
        throw InvalidArgumentError("Morphism: supplied target state does not match the channel");
}

Morphism identity_morphism(const State& omega) {
    return Morphism(omega, identity_channel(omega.system()));
}

Morphism trace_morphism(const State& omega) {
    return Morphism(omega, trace_channel(omega.system()));
}

Morphism compose_morphisms(const Morphism& g_m, const Morphism& f_m) {
    if (f_m.channel().target() != g_m.channel().source())
        throw DomainMismatchError("compose_morphisms: inner systems do not match");
    if (max_abs_diff(f_m.target_state(), g_m.source_state()) > kTolMorphism)
        throw DomainMismatchError("compose_morphisms: f's target state is not g's source state");
    return Morphism(f_m.source_state(), compose(g_m.channel(), f_m.channel()));
}

double morphism_distance(const Morphism& a, const Morphism& b) {
    return std::max(channel_distance(a.channel(), b.channel()),
                    trace_distance(a.source_state(), b.source_state()));
}

EntropyFunctor::EntropyFunctor(double c) : c_(c) {
    if (!(c >= 0.0))
        throw InvalidArgumentError("EntropyFunctor: scale must be non-negative");
}

double evaluate(const EntropyFunctor& f, const Morphism& m) {
    return f.scale() * (segal(m.source_state()).nats - segal(m.target_state()).nats);
}

double S_of(const EntropyFunctor& f, const State& omega) {
    return evaluate(f, trace_morphism(omega));
}

namespace {

template <typename WitnessFn>
CheckReport make_report(std::string property, long trials, double max_deviation, double tol,
                        WitnessFn&& witness_on_failure) {
    CheckReport report;
    report.property = std::move(property);
    report.trials = trials;
    report.max_deviation = max_deviation;
    report.tolerance = tol;
    report.pass = max_deviation <= tol;
    if (!report.pass)
        report.witness = witness_on_failure();
    return report;
}

} // namespace

CheckReport check_functoriality(const EntropyFunctor& f, const Morphism& g_m, const Morphism& f_m,
                                double tol) {
    const Morphism composite = compose_morphisms(g_m, f_m);
    const double deviation =
        std::abs(evaluate(f, composite) - evaluate(f, g_m) - evaluate(f, f_m));
    return make_report("functoriality", 1, deviation, tol, [&] {
        return nlohmann::json{{"omega", to_json(f_m.source_state())},
                              {"f", to_json(f_m.channel())},
                              {"g", to_json(g_m.channel())},
                              {"deviation", deviation}};
    });
}

CheckReport check_convex_linearity(const EntropyFunctor& functor, const Channel& f,
                                   const Channel& g, const State& omega, const State& xi,
                                   double lambda, double tol) {
    if (lambda < 0.0 || lambda > 1.0)
        throw InvalidArgumentError("check_convex_linearity: lambda must lie in [0, 1]");
    const Morphism mixed(direct_sum_states(lambda, omega, xi), direct_sum_channels(f, g));
    const double lhs = evaluate(functor, mixed);
    const double rhs = lambda * evaluate(functor, Morphism(omega, f)) +
                       (1.0 - lambda) * evaluate(functor, Morphism(xi, g));
    const double deviation = std::abs(lhs - rhs);
    return make_report("convex_linearity", 1, deviation, tol, [&] {
        return nlohmann::json{{"f", to_json(f)},
                              {"g", to_json(g)},
                              {"omega", to_json(omega)},
                              {"xi", to_json(xi)},
                              {"lambda", lambda},
                              {"lhs", lhs},
                              {"rhs", rhs}};
    });
}

CheckReport check_positivity(const EntropyFunctor& functor, const Channel& f, const State& omega,
                             double tol, const Channel* left_inverse, int p2p_samples,
                             std::uint64_t p2p_seed) {
    const PureToPureVerdict verdict = is_pure_to_pure(f, p2p_samples, kTolPureImage, p2p_seed);
    if (!verdict.accepted)
        throw PreconditionError("check_positivity: channel is not pure-to-pure; "
                                "the property does not apply");
    const double value = evaluate(functor, Morphism(omega, f));
    double deviation = std::max(0.0, -value);
    if (left_inverse != nullptr) {
        if (!verify_left_inverse(*left_inverse, f, tol))
            throw PreconditionError("check_positivity: supplied channel is not a left inverse");
        deviation = std::max(deviation, std::abs(value));
    }
    return make_report("positivity", 1, deviation, tol, [&] {
        return nlohmann::json{{"f", to_json(f)},
                              {"omega", to_json(omega)},
                              {"value", value},
                              {"left_inverse_supplied", left_inverse != nullptr}};
    });
}

ToleranceSchedule linear_modulus(double lipschitz) {
    return [lipschitz](double d) { return lipschitz * d; };
}

double fannes_bound(double t, int dim) {
    if (dim <= 1 || t <= 0.0)
        return 0.0;
    const double cap = 1.0 - 1.0 / static_cast<double>(dim);
    const double x = std::min(t, cap);
    double h = 0.0;
    if (x > 0.0 && x < 1.0)
        h = -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
    return x * std::log(static_cast<double>(dim - 1)) + h;
}

ToleranceSchedule fannes_modulus(double scale, int source_dim, int target_dim) {
    return [scale, source_dim, target_dim](double d) {
        return scale * (fannes_bound(d, source_dim) + fannes_bound(d, target_dim));
    };
}

namespace {

double min_spectrum(const State& state) {
    double low = std::numeric_limits<double>::infinity();
    for (int i = 0; i < state.system().num_blocks(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(state.block_op(i), Eigen::EigenvaluesOnly);
        low = std::min(low, solver.eigenvalues().minCoeff());
    }
    return low;
}

} // namespace

double fitted_entropy_lipschitz(const EntropyFunctor& functor,
                                const std::vector<Morphism>& sequence, const Morphism& limit) {
    if (sequence.empty())
        throw InvalidArgumentError("fitted_entropy_lipschitz: empty sequence");
    bool source_varies = false;
    for (const Morphism& m : sequence) {
        if (m.source_state().system() != limit.source_state().system() ||
            max_abs_diff(m.source_state(), limit.source_state()) > 1e-14) {
            source_varies = true;
            break;
        }
    }
    double delta = min_spectrum(limit.target_state());
    for (const Morphism& m : sequence)
        delta = std::min(delta, min_spectrum(m.target_state()));
    if (source_varies) {
        delta = std::min(delta, min_spectrum(limit.source_state()));
        for (const Morphism& m : sequence)
            delta = std::min(delta, min_spectrum(m.source_state()));
    }
    if (delta < 1e-8)
        throw InvalidArgumentError("fitted_entropy_lipschitz: family spectrum touches zero; "
                                   "use fannes_modulus instead");
    // |d entropy| <= (1 + |ln(delta)|) * trace-norm change; the trace norm of
    // the output change is bounded by the Choi distance times sum_j sqrt(m_j)
    // plus twice the source trace distance, and the source term adds 2 more.
    double dim_factor = 4.0;
    for (int j = 0; j < limit.target_state().system().num_blocks(); ++j)
        dim_factor += std::sqrt(static_cast<double>(limit.target_state().system().block_dim(j)));
    return functor.scale() * (1.0 + std::abs(std::log(delta))) * dim_factor;
}

CheckReport check_continuity(const EntropyFunctor& functor,
                             const std::vector<Morphism>& sequence, const Morphism& limit,
                             const ToleranceSchedule& modulus, double floor_tol) {
    if (sequence.empty())
        throw InvalidArgumentError("check_continuity: empty sequence");
    for (const Morphism& m : sequence) {
        if (m.source_state().system() != limit.source_state().system() ||
            m.channel().target() != limit.channel().target())
            throw DomainMismatchError("check_continuity: sequence is not parallel to the limit");
    }
    std::vector<double> distances;
    distances.reserve(sequence.size());
    for (const Morphism& m : sequence)
        distances.push_back(morphism_distance(m, limit));
    for (size_t n = 1; n < distances.size(); ++n)
        if (distances[n] > distances[n - 1] + 1e-12)
            throw InvalidArgumentError("check_continuity: distances are not non-increasing");
    if (distances.back() > std::max(1e-12, 0.5 * distances.front()))
        throw InvalidArgumentError("check_continuity: sequence does not approach the limit");

    const double limit_value = evaluate(functor, limit);
    double worst_excess = 0.0;
    size_t worst_index = 0;
    for (size_t n = 0; n < sequence.size(); ++n) {
        const double change = std::abs(evaluate(functor, sequence[n]) - limit_value);
        const double excess = change - modulus(distances[n]);
        if (excess > worst_excess) {
            worst_excess = excess;
            worst_index = n;
        }
    }
    return make_report("continuity", static_cast<long>(sequence.size()), worst_excess, floor_tol,
                       [&] {
                           return nlohmann::json{{"index", worst_index},
                                                 {"distance", distances[worst_index]},
                                                 {"excess", worst_excess}};
                       });
}

Factorization factorize_state(const State& omega) {
    const SpectralDecomposition decomposition = spectral_decompose(omega);
    Factorization result{make_classical_system(omega.system().total_dim()),
                         classical_state_from_probs(decomposition.gammas),
                         embedding_channel(decomposition.psis),
                         measurement_channel(decomposition.psis)};
    return result;
}

CheckReport check_classical_restriction(const EntropyFunctor& functor, const Channel& f,
                                        const State& p, double tol) {
    if (!f.source().is_classical() || !f.target().is_classical())
        throw DomainMismatchError("check_classical_restriction: channel is not classical");
    if (!p.system().is_classical() || p.system() != f.source())
        throw DomainMismatchError("check_classical_restriction: state does not match the channel");
    const PureToPureVerdict verdict = is_pure_to_pure(f);
    if (!verdict.accepted)
        throw PreconditionError("check_classical_restriction: channel is not pure-to-pure");
    const Morphism m(p, f);
    const double functor_value = evaluate(functor, m);
    const double shannon_difference =
        functor.scale() * (shannon(state_as_prob_vector(p)).nats -
                           shannon(state_as_prob_vector(m.target_state())).nats);
    const double deviation = std::abs(functor_value - shannon_difference);
    return make_report("classical_restriction", 1, deviation, tol, [&] {
        return nlohmann::json{{"f", to_json(f)},
                              {"p", to_json(p)},
                              {"functor_value", functor_value},
                              {"shannon_difference", shannon_difference}};
    });
}

} // namespace finstate
