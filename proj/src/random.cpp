#include "finstate/random.hpp"

#include <algorithm>
#include <numeric>

namespace finstate {

System random_system(Rng& rng, int max_blocks, int max_block_dim) {
    if (max_blocks < 1 || max_block_dim < 1)
        throw InvalidArgumentError("random_system: bounds must be >= 1");
    const int k = rng.uniform_int(1, max_blocks);
    std::vector<int> dims(static_cast<size_t>(k));
    for (int& d : dims)
        d = rng.uniform_int(1, max_block_dim);
    return System(std::move(dims));
}

State random_state(Rng& rng, const System& a) {
    std::vector<Matrix> ops;
    ops.reserve(static_cast<size_t>(a.num_blocks()));
    double trace_sum = 0.0;
    for (int i = 0; i < a.num_blocks(); ++i) {
        const int n = a.block_dim(i);
        Matrix g(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                g(r, c) = rng.complex_normal();
        Matrix w = g * g.adjoint();
        trace_sum += w.trace().real();
        ops.push_back(std::move(w));
    }
    for (Matrix& op : ops)
        op /= trace_sum;
    return State(a, std::move(ops));
}

namespace {

// Choi matrix of rho -> Tr_env(V rho V*) for a Haar isometry from in_dim to
// out_dim * env_dim: the sum of vec(K_s) vec(K_s)* over the Kraus slices.
Matrix random_stinespring_choi(Rng& rng, int in_dim, int out_dim) {
    const int env_dim = std::max(2, (in_dim + out_dim - 1) / out_dim);
    const Matrix v = haar_isometry(rng, out_dim * env_dim, in_dim);
    Matrix choi = Matrix::Zero(in_dim * out_dim, in_dim * out_dim);
    for (int s = 0; s < env_dim; ++s) {
        Vector w(in_dim * out_dim);
        for (int a = 0; a < in_dim; ++a)
            for (int r = 0; r < out_dim; ++r)
                w(a * out_dim + r) = v(r * env_dim + s, a);
        choi += w * w.adjoint();
    }
    return choi;
}

std::vector<double> random_distribution(Rng& rng, int n) {
    std::vector<double> w(static_cast<size_t>(n));
    double sum = 0.0;
    for (double& x : w) {
        x = -std::log(1.0 - rng.uniform());
        sum += x;
    }
    for (double& x : w)
        x /= sum;
    return w;
}

} // namespace

Channel random_cptp(Rng& rng, const System& source, const System& target) {
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(target.num_blocks()));
    for (int j = 0; j < target.num_blocks(); ++j)
        grid[static_cast<size_t>(j)].resize(static_cast<size_t>(source.num_blocks()));
    for (int i = 0; i < source.num_blocks(); ++i) {
        const std::vector<double> weights = random_distribution(rng, target.num_blocks());
        for (int j = 0; j < target.num_blocks(); ++j) {
            const int n = source.block_dim(i);
            const int m = target.block_dim(j);
            grid[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                weights[static_cast<size_t>(j)] * random_stinespring_choi(rng, n, m);
        }
    }
    return Channel(source, target, std::move(grid));
}

Channel random_classical_deterministic(Rng& rng, int x_size, int y_size) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(y_size, x_size);
    for (int x = 0; x < x_size; ++x)
        s(rng.uniform_int(0, y_size - 1), x) = 1.0;
    return from_stochastic_matrix(s);
}

namespace {

Channel random_isometric(Rng& rng, int max_block_dim) {
    const int n = rng.uniform_int(1, max_block_dim);
    const int m = rng.uniform_int(n, max_block_dim);
    return isometric_channel(haar_isometry(rng, m, n));
}

Channel random_embedding(Rng& rng, int max_blocks, int max_block_dim) {
    const System a = random_system(rng, max_blocks, max_block_dim);
    // Orthonormal families drawn per block from Haar unitaries; keep a random
    // nonempty subset of columns overall.
    std::vector<PureState> psis;
    for (int b = 0; b < a.num_blocks(); ++b) {
        const Matrix u = haar_unitary(rng, a.block_dim(b));
        const int take = rng.uniform_int(0, a.block_dim(b));
        for (int c = 0; c < take; ++c)
            psis.emplace_back(a, b, u.col(c));
    }
    if (psis.empty()) {
        const Matrix u = haar_unitary(rng, a.block_dim(0));
        psis.emplace_back(a, 0, u.col(0));
    }
    return embedding_channel(psis);
}

Channel random_block_permutation(Rng& rng, int max_blocks, int max_block_dim) {
    const System a = random_system(rng, max_blocks, max_block_dim);
    std::vector<int> perm(static_cast<size_t>(a.num_blocks()));
    std::iota(perm.begin(), perm.end(), 0);
    for (size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
    return block_permutation_channel(a, perm);
}

} // namespace

Channel random_pure_to_pure(Rng& rng, PureToPureFamily family, int max_blocks,
                            int max_block_dim) {
    if (family == PureToPureFamily::Any)
        family = static_cast<PureToPureFamily>(rng.uniform_int(0, 4));
    switch (family) {
    case PureToPureFamily::ClassicalDeterministic: {
        const int x = rng.uniform_int(1, std::max(1, max_blocks));
        const int y = rng.uniform_int(1, std::max(1, max_blocks));
        return random_classical_deterministic(rng, x, y);
    }
    case PureToPureFamily::Isometric:
        return random_isometric(rng, max_block_dim);
    case PureToPureFamily::Embedding:
        return random_embedding(rng, max_blocks, max_block_dim);
    case PureToPureFamily::BlockPermutation:
        return random_block_permutation(rng, max_blocks, max_block_dim);
    case PureToPureFamily::DirectSum: {
        // Two non-composite draws; halved block budget keeps sums desk-sized.
        const int half = std::max(1, max_blocks / 2);
        const Channel f = random_pure_to_pure(
            rng, static_cast<PureToPureFamily>(rng.uniform_int(0, 3)), half, max_block_dim);
        const Channel g = random_pure_to_pure(
            rng, static_cast<PureToPureFamily>(rng.uniform_int(0, 3)), half, max_block_dim);
        return direct_sum_channels(f, g);
    }
    case PureToPureFamily::Any:
        break;
    }
    throw InvalidArgumentError("random_pure_to_pure: unknown family");
}

} // namespace finstate
