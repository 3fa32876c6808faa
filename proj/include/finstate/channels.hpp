#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "finstate/algebra.hpp"

namespace finstate {

// Trace-preservation identity tolerance and the default tolerance for
// accepting a sampled image as pure.
inline constexpr double kTolTp = 1e-10;
inline constexpr double kTolPureImage = 1e-8;

/// Result of CPTP validation. cp_ok: every component Choi matrix is PSD
/// (and Hermitian) within tolerance. tp_ok: for each input block the partial
/// traces of its column of Choi matrices sum to the identity within
/// tolerance. max_violation is the worst deviation seen in either check.
struct CptpReport {
    bool cp_ok = false;
    bool tp_ok = false;
    double max_violation = 0.0;
};

/// A block-structured trace-preserving completely positive map. Component
/// (j, i) is the Choi matrix of the map from input block i (order n) to
/// output block j (order m), in the convention
///
///     choi = sum_{a,b} E_ab (x) Phi(E_ab),
///
/// i.e. an (n*m) x (n*m) matrix indexed (a*m + r, b*m + c) = Phi(E_ab)(r, c)
/// with E_ab the matrix units of the input block. Complete positivity reads
/// "each component Choi is PSD"; trace preservation reads "for each input
/// block, the partial traces over the output factor sum to the identity".
class Channel {
  public:
    /// Validating constructor: rejects grids that are not CPTP.
    Channel(System source, System target, std::vector<std::vector<Matrix>> choi);

    /// Shape-checked but not CPTP-validated; for feeding validate_cptp with
    /// deliberately broken grids.
    static Channel unchecked(System source, System target, std::vector<std::vector<Matrix>> choi);

    const System& source() const { return source_; }
    const System& target() const { return target_; }

    /// Choi matrix of the component from input block i to output block j.
    const Matrix& choi(int j, int i) const {
        return grid_.at(static_cast<size_t>(j)).at(static_cast<size_t>(i));
    }
    const std::vector<std::vector<Matrix>>& choi_grid() const { return grid_; }

  private:
    struct unchecked_t {};
    Channel(unchecked_t, System source, System target, std::vector<std::vector<Matrix>> choi);

    System source_;
    System target_;
    std::vector<std::vector<Matrix>> grid_; // [output block][input block]
};

/// Image of an arbitrary (not necessarily Hermitian) matrix under one
/// component map, read off the component's Choi matrix.
Matrix apply_component_choi(const Matrix& choi, int in_dim, int out_dim, const Matrix& x);

/// Applies the channel to a state of its source system.
State apply(const Channel& f, const State& omega);

/// Composite channel g after f.
Channel compose(const Channel& g, const Channel& f);

Channel identity_channel(const System& a);

/// The unique channel from A to the trivial classical system: omega -> 1.
Channel trace_channel(const System& a);

/// Block-diagonal combination acting as f on the A-summand and g on the
/// B-summand; cross components are explicit zero maps.
Channel direct_sum_channels(const Channel& f, const Channel& g);

/// Classical channel from a column-stochastic matrix (rows index the target,
/// columns the source).
Channel from_stochastic_matrix(const Eigen::MatrixXd& s);

/// Permutes the blocks of a system: source block i becomes target block
/// perm[i]. perm must be a bijection on 0..k-1.
Channel block_permutation_channel(const System& a, const std::vector<int>& perm);

/// Channel rho -> V rho V* for an isometry V (columns orthonormal), from the
/// single-block system of the column count to the single-block system of the
/// row count.
Channel isometric_channel(const Matrix& v, double tol = 1e-8);

/// Classical-to-quantum channel sending the x-th point mass to psis[x]. The
/// pure states must be mutually orthogonal (within tol for same-block pairs;
/// distinct blocks are orthogonal by construction).
Channel embedding_channel(const std::vector<PureState>& psis, double tol = 1e-8);

/// Quantum-to-classical channel omega -> (Tr(psi_x omega))_x. The family
/// must be orthonormal and complete: exactly total_dim vectors.
Channel measurement_channel(const std::vector<PureState>& psis, double tol = 1e-8);

/// Verdict of the pure-to-pure test. For classical sources the criterion is
/// exact (the image of every point mass must be pure); for quantum sources
/// it is sampled and `exact` is false. A false verdict carries the input
/// pure state whose image is mixed.
struct PureToPureVerdict {
    bool accepted = false;
    bool exact = false;
    std::optional<PureState> witness;
};

/// Tests whether the channel maps pure states to pure states. Quantum input
/// blocks are probed with the standard basis plus num_samples Haar-random
/// unit vectors drawn from rng_seed.
PureToPureVerdict is_pure_to_pure(const Channel& f, int num_samples = 64,
                                  double tol = kTolPureImage, std::uint64_t rng_seed = 1);

/// True iff g after f equals the identity on f's source within tol
/// (largest absolute Choi entry deviation).
bool verify_left_inverse(const Channel& g, const Channel& f, double tol);

/// Largest Frobenius distance between corresponding component Choi matrices.
double channel_distance(const Channel& f, const Channel& g);

/// CP / TP check with explicit tolerance; works on unchecked channels.
CptpReport validate_cptp(const Channel& f, double tol = kTolPsd);

} // namespace finstate
