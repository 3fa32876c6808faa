#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "finstate/errors.hpp"

namespace finstate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical tolerances used by all constructors and validators.
// Calibrated to double-precision eigendecomposition error.
inline constexpr double kTolPsd = 1e-10;   // min eigenvalue >= -kTolPsd
inline constexpr double kTolTrace = 1e-10; // |sum of traces - 1| <= kTolTrace
inline constexpr double kTolPurity = 1e-9; // Tr(rho^2) >= 1 - kTolPurity
inline constexpr double kTolRecon = 1e-9;  // spectral reconstruction error

/// A finite direct sum of full matrix algebras, recorded as the list of
/// block orders (n_1, ..., n_k). A system with every n_i = 1 is classical
/// and its states are probability distributions.
class System {
  public:
    explicit System(std::vector<int> block_dims);

    int num_blocks() const { return static_cast<int>(dims_.size()); }
    int block_dim(int i) const { return dims_.at(static_cast<size_t>(i)); }
    int total_dim() const { return total_; }
    const std::vector<int>& block_dims() const { return dims_; }

    /// True iff every block has order 1.
    bool is_classical() const;

    bool operator==(const System& other) const { return dims_ == other.dims_; }
    bool operator!=(const System& other) const { return !(*this == other); }

  private:
    std::vector<int> dims_;
    int total_ = 0;
};

/// A block-diagonal density operator on a System: one PSD matrix per block,
/// traces summing to 1. Blocks store the unnormalized products directly,
/// so a block of weight zero is simply the zero matrix.
class State {
  public:
    State(System system, std::vector<Matrix> block_ops);

    const System& system() const { return system_; }
    const Matrix& block_op(int i) const { return ops_.at(static_cast<size_t>(i)); }
    const std::vector<Matrix>& block_ops() const { return ops_; }
    double block_trace(int i) const;

  private:
    System system_;
    std::vector<Matrix> ops_;
};

/// A rank-1 state supported in a single block: a unit vector plus the index
/// of the block it lives in. Block indices are 0-based.
class PureState {
  public:
    PureState(System system, int block_index, Vector vector);

    const System& system() const { return system_; }
    int block_index() const { return block_; }
    const Vector& vector() const { return vec_; }

    /// The rank-1 projector in its block, zeros elsewhere, as a State.
    State to_state() const;

  private:
    System system_;
    int block_;
    Vector vec_;
};

/// Classical system with `size` one-dimensional blocks.
System make_classical_system(int size);

/// Point mass on element x of a classical system.
PureState classical_point_mass(const System& classical_system, int x);

/// State of a classical system from a probability vector (entries >= 0
/// within tolerance, sum 1 within tolerance).
State classical_state_from_probs(const std::vector<double>& probs);

/// Inverse of classical_state_from_probs; requires a classical system.
std::vector<double> state_as_prob_vector(const State& state);

/// True iff exactly one block carries the trace and that block is rank-1
/// within tol (Tr(rho^2) >= 1 - tol).
bool is_pure(const State& state, double tol = kTolPurity);

/// Concatenates block dimension lists.
System direct_sum_systems(const System& a, const System& b);

/// lambda*omega on the A-blocks followed by (1-lambda)*xi on the B-blocks.
State direct_sum_states(double lambda, const State& omega, const State& xi);

/// Assembles the block operators along the diagonal of one matrix of order
/// total_dim.
Matrix embed_state_full(const State& state);

struct SpectralDecomposition {
    std::vector<double> gammas;   // eigenvalues, descending, zeros kept
    std::vector<PureState> psis;  // matching eigenvectors, one block each
};

/// Eigendecomposition across blocks. Eigenvalues are sorted descending;
/// ties keep block order then eigensolver output order. The list always has
/// total_dim entries (zero eigenvalues included) and the eigenvectors are
/// orthonormal within each block.
SpectralDecomposition spectral_decompose(const State& state);

/// Largest absolute entrywise difference between two states on one system.
double max_abs_diff(const State& a, const State& b);

/// Half the trace norm of the difference of the embedded matrices.
double trace_distance(const State& a, const State& b);

} // namespace finstate
