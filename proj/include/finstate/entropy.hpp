#pragma once

#include <vector>

#include "finstate/algebra.hpp"

namespace finstate {

// Eigenvalues and probabilities at or below this threshold contribute 0 to
// every entropy sum. Implements the 0*log(0) = 0 convention robustly against
// eigensolver noise; oracle comparisons must use the same rule.
inline constexpr double kEntropyClipEps = 1e-12;

/// An entropy in natural-log units. Always >= 0 for valid inputs and at most
/// log(total_dim) of the owning system.
struct EntropyValue {
    double nats = 0.0;
};

/// Shannon entropy -sum p*ln(p) of a probability vector.
EntropyValue shannon(const std::vector<double>& probs);

/// Von Neumann entropy -Tr(rho*ln(rho)) of a Hermitian PSD trace-1 matrix.
EntropyValue von_neumann(const Matrix& rho);

/// Entropy of a block-diagonal state, computed from the eigenvalues of the
/// unnormalized blocks. Coincides with von_neumann(embed_state_full(omega))
/// and, on classical systems, with shannon of the probability vector.
EntropyValue segal(const State& omega);

} // namespace finstate
