#pragma once

#include "finstate/channels.hpp"
#include "finstate/rng.hpp"

namespace finstate {

/// Uniform block count in 1..max_blocks, each dimension uniform in
/// 1..max_block_dim.
System random_system(Rng& rng, int max_blocks, int max_block_dim);

/// Per-block Wishart draw (G G* for a square complex Gaussian G), globally
/// normalized to trace 1. Full support with probability 1.
State random_state(Rng& rng, const System& a);

/// General CPTP map: for each input block, a random distribution over output
/// blocks mixed with per-pair maps obtained by tracing out the environment
/// of a Haar-random isometry. The environment dimension is 2, enlarged when
/// the output block is too small for an isometry to exist.
Channel random_cptp(Rng& rng, const System& source, const System& target);

/// Random function from x_size points to y_size points, as a 0/1
/// column-stochastic channel.
Channel random_classical_deterministic(Rng& rng, int x_size, int y_size);

enum class PureToPureFamily {
    ClassicalDeterministic,
    Isometric,
    Embedding,
    BlockPermutation,
    DirectSum,
    Any,
};

/// Draws a channel guaranteed pure-to-pure by construction: deterministic
/// classical maps, isometric conjugations, embeddings of orthonormal
/// families, block permutations, and direct sums of those.
Channel random_pure_to_pure(Rng& rng, PureToPureFamily family, int max_blocks,
                            int max_block_dim);

} // namespace finstate
