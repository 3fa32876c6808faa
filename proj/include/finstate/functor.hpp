#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "finstate/channels.hpp"
#include "finstate/entropy.hpp"

namespace finstate {

// A morphism's cached target state must match a fresh application of its
// channel within this tolerance.
inline constexpr double kTolMorphism = 1e-10;

/// An arrow of the category of (system, state) pairs: a source state plus a
/// channel whose source matches. The target state is derived at construction
/// and re-validated on composition.
class Morphism {
  public:
    Morphism(State source_state, Channel channel);
    /// Attaches a precomputed target state, verified within kTolMorphism.
    Morphism(State source_state, Channel channel, State target_state);

    const State& source_state() const { return source_; }
    const State& target_state() const { return target_; }
    const Channel& channel() const { return channel_; }

  private:
    State source_;
    Channel channel_;
    State target_;
};

Morphism identity_morphism(const State& omega);
Morphism trace_morphism(const State& omega);

/// g after f; requires f's cached target to coincide with g's source.
Morphism compose_morphisms(const Morphism& g_m, const Morphism& f_m);

/// Distance between two parallel morphisms: the larger of the Choi distance
/// of the channels and the trace distance of the source states.
double morphism_distance(const Morphism& a, const Morphism& b);

/// The entropy-difference functor with scale c >= 0: a morphism maps to
/// c * (entropy of source - entropy of target), a real number (negative
/// whenever the channel increases entropy).
class EntropyFunctor {
  public:
    explicit EntropyFunctor(double c);
    double scale() const { return c_; }

  private:
    double c_;
};

double evaluate(const EntropyFunctor& f, const Morphism& m);

/// Value of the functor on the trace morphism at omega; equals
/// scale * segal(omega).
double S_of(const EntropyFunctor& f, const State& omega);

/// Outcome of one property check. pass holds exactly when max_deviation is
/// within tolerance; a witness (serialized failing instance) is attached
/// only on failure.
struct CheckReport {
    std::string property;
    long trials = 0;
    double max_deviation = 0.0;
    bool pass = false;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::optional<nlohmann::json> witness;
};

CheckReport check_functoriality(const EntropyFunctor& f, const Morphism& g_m, const Morphism& f_m,
                                double tol);

/// Additivity of the functor over direct sums of pure-to-pure channels:
/// value at (f + g) on the lambda-mixture equals the lambda-mixture of the
/// values. Callers are responsible for f and g being pure-to-pure.
CheckReport check_convex_linearity(const EntropyFunctor& functor, const Channel& f,
                                   const Channel& g, const State& omega, const State& xi,
                                   double lambda, double tol);

/// Non-negativity of the functor on pure-to-pure channels, with equality
/// when a verified left inverse is supplied. The pure-to-pure precondition
/// is tested; a channel that fails it raises PreconditionError rather than
/// producing a pass.
CheckReport check_positivity(const EntropyFunctor& functor, const Channel& f, const State& omega,
                             double tol, const Channel* left_inverse = nullptr,
                             int p2p_samples = 64, std::uint64_t p2p_seed = 1);

/// Allowed entropy change as a function of morphism distance.
using ToleranceSchedule = std::function<double(double)>;

/// d -> lipschitz * d.
ToleranceSchedule linear_modulus(double lipschitz);

/// Entropy modulus of continuity: t * ln(dim - 1) + binary entropy of t,
/// capped at its maximum; monotone in t.
double fannes_bound(double t, int dim);

/// Modulus for sequences that vary only the source state (fixed channel):
/// scale * (fannes_bound(d, source dim) + fannes_bound(d, target dim)).
/// Valid because trace distance contracts under the channel.
ToleranceSchedule fannes_modulus(double scale, int source_dim, int target_dim);

/// Conservative Lipschitz constant for a family whose spectra stay away
/// from zero: scale * (1 + |ln(min eigenvalue)|) * (4 + sum_j sqrt(m_j)).
/// Source spectra enter only if the source states actually vary. Throws
/// InvalidArgumentError when the family touches the spectral boundary
/// (use fannes_modulus then).
double fitted_entropy_lipschitz(const EntropyFunctor& functor,
                                const std::vector<Morphism>& sequence, const Morphism& limit);

/// Checks |H(m_n) - H(limit)| <= modulus(d_n) + floor_tol along a sequence
/// converging to limit. The sequence must approach the limit: distances
/// non-increasing and the final distance at most half the first (or zero).
/// max_deviation reports the worst excess over the modulus.
CheckReport check_continuity(const EntropyFunctor& functor,
                             const std::vector<Morphism>& sequence, const Morphism& limit,
                             const ToleranceSchedule& modulus, double floor_tol);

/// Spectral factorization of a state: gamma is the eigenvalue distribution
/// on the classical system of size total_dim, embed maps it back to omega,
/// measure is the left inverse of embed.
struct Factorization {
    System z;
    State gamma;
    Channel embed;
    Channel measure;
};

/// Guarantees: verify_left_inverse(measure, embed), apply(embed, gamma)
/// reconstructs omega, and shannon(gamma) equals segal(omega).
Factorization factorize_state(const State& omega);

/// On classical systems the functor must reduce to the scaled Shannon
/// entropy difference. f must be classical and (exactly) pure-to-pure.
CheckReport check_classical_restriction(const EntropyFunctor& functor, const Channel& f,
                                        const State& p, double tol);

} // namespace finstate
