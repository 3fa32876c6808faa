#include "finstate/channels.hpp"

#include <algorithm>
#include <cmath>

#include "finstate/rng.hpp"

namespace finstate {

namespace {

void check_grid_shape(const System& source, const System& target,
                      const std::vector<std::vector<Matrix>>& grid) {
    if (static_cast<int>(grid.size()) != target.num_blocks())
        throw InvalidArgumentError("Channel: grid row count does not match target blocks");
    for (int j = 0; j < target.num_blocks(); ++j) {
        const auto& row = grid[static_cast<size_t>(j)];
        if (static_cast<int>(row.size()) != source.num_blocks())
            throw InvalidArgumentError("Channel: grid column count does not match source blocks");
        for (int i = 0; i < source.num_blocks(); ++i) {
            const int order = source.block_dim(i) * target.block_dim(j);
            const Matrix& c = row[static_cast<size_t>(i)];
            if (c.rows() != order || c.cols() != order)
                throw InvalidArgumentError("Channel: component (" + std::to_string(j) + "," +
                                           std::to_string(i) + ") has wrong order");
        }
    }
}

// Partial trace of a component Choi matrix over the output factor: an
// in_dim x in_dim matrix with entries sum_r choi(a*m + r, b*m + r).
Matrix partial_trace_output(const Matrix& choi, int in_dim, int out_dim) {
    Matrix result = Matrix::Zero(in_dim, in_dim);
    for (int a = 0; a < in_dim; ++a)
        for (int b = 0; b < in_dim; ++b)
            result(a, b) = choi.block(a * out_dim, b * out_dim, out_dim, out_dim).trace();
    return result;
}

} // namespace

Channel::Channel(unchecked_t, System source, System target,
                 std::vector<std::vector<Matrix>> choi)
    : source_(std::move(source)), target_(std::move(target)), grid_(std::move(choi)) {
    check_grid_shape(source_, target_, grid_);
}

Channel::Channel(System source, System target, std::vector<std::vector<Matrix>> choi)
    : Channel(unchecked_t{}, std::move(source), std::move(target), std::move(choi)) {
    const CptpReport report = validate_cptp(*this);
    if (!report.cp_ok)
        throw InvalidArgumentError("Channel: component Choi matrices are not all PSD (violation " +
                                   std::to_string(report.max_violation) + ")");
    if (!report.tp_ok)
        throw InvalidArgumentError("Channel: trace preservation fails (violation " +
                                   std::to_string(report.max_violation) + ")");
}

Channel Channel::unchecked(System source, System target, std::vector<std::vector<Matrix>> choi) {
    return Channel(unchecked_t{}, std::move(source), std::move(target), std::move(choi));
}

Matrix apply_component_choi(const Matrix& choi, int in_dim, int out_dim, const Matrix& x) {
    Matrix result = Matrix::Zero(out_dim, out_dim);
    for (int a = 0; a < in_dim; ++a)
        for (int b = 0; b < in_dim; ++b) {
            const Complex w = x(a, b);
            if (w != Complex(0.0, 0.0))
                result += w * choi.block(a * out_dim, b * out_dim, out_dim, out_dim);
        }
    return result;
}

State apply(const Channel& f, const State& omega) {
    if (omega.system() != f.source())
        throw DomainMismatchError("apply: state system does not match channel source");
    std::vector<Matrix> out_blocks;
    out_blocks.reserve(static_cast<size_t>(f.target().num_blocks()));
    for (int j = 0; j < f.target().num_blocks(); ++j) {
        const int m = f.target().block_dim(j);
        Matrix block = Matrix::Zero(m, m);
        for (int i = 0; i < f.source().num_blocks(); ++i)
            block += apply_component_choi(f.choi(j, i), f.source().block_dim(i), m,
                                          omega.block_op(i));
        out_blocks.push_back(std::move(block));
    }
    return State(f.target(), std::move(out_blocks));
}

Channel compose(const Channel& g, const Channel& f) {
    if (f.target() != g.source())
        throw DomainMismatchError("compose: inner systems do not match");
    const System& a = f.source();
    const System& b = f.target();
    const System& c = g.target();
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(c.num_blocks()));
    for (int l = 0; l < c.num_blocks(); ++l) {
        const int cl = c.block_dim(l);
        grid[static_cast<size_t>(l)].reserve(static_cast<size_t>(a.num_blocks()));
        for (int i = 0; i < a.num_blocks(); ++i) {
            const int n = a.block_dim(i);
            Matrix choi = Matrix::Zero(n * cl, n * cl);
            for (int va = 0; va < n; ++va)
                for (int vb = 0; vb < n; ++vb) {
                    // Image of the matrix unit E_{va,vb} through f then g.
                    Matrix z = Matrix::Zero(cl, cl);
                    for (int j = 0; j < b.num_blocks(); ++j) {
                        const int m = b.block_dim(j);
                        const Matrix y = f.choi(j, i).block(va * m, vb * m, m, m);
                        z += apply_component_choi(g.choi(l, j), m, cl, y);
                    }
                    choi.block(va * cl, vb * cl, cl, cl) = z;
                }
            grid[static_cast<size_t>(l)].push_back(std::move(choi));
        }
    }
    return Channel(a, c, std::move(grid));
}

Channel identity_channel(const System& a) {
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(a.num_blocks()));
    for (int j = 0; j < a.num_blocks(); ++j) {
        for (int i = 0; i < a.num_blocks(); ++i) {
            const int n = a.block_dim(i);
            const int m = a.block_dim(j);
            Matrix choi = Matrix::Zero(n * m, n * m);
            if (i == j) {
                for (int va = 0; va < n; ++va)
                    for (int vb = 0; vb < n; ++vb)
                        choi(va * n + va, vb * n + vb) = Complex(1.0, 0.0);
            }
            grid[static_cast<size_t>(j)].push_back(std::move(choi));
        }
    }
    return Channel(a, a, std::move(grid));
}

Channel trace_channel(const System& a) {
    std::vector<std::vector<Matrix>> grid(1);
    for (int i = 0; i < a.num_blocks(); ++i)
        grid[0].push_back(Matrix::Identity(a.block_dim(i), a.block_dim(i)));
    return Channel(a, make_classical_system(1), std::move(grid));
}

Channel direct_sum_channels(const Channel& f, const Channel& g) {
    const System source = direct_sum_systems(f.source(), g.source());
    const System target = direct_sum_systems(f.target(), g.target());
    const int kf_in = f.source().num_blocks();
    const int kf_out = f.target().num_blocks();
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(target.num_blocks()));
    for (int j = 0; j < target.num_blocks(); ++j) {
        for (int i = 0; i < source.num_blocks(); ++i) {
            const bool in_f = i < kf_in && j < kf_out;
            const bool in_g = i >= kf_in && j >= kf_out;
            if (in_f)
                grid[static_cast<size_t>(j)].push_back(f.choi(j, i));
            else if (in_g)
                grid[static_cast<size_t>(j)].push_back(g.choi(j - kf_out, i - kf_in));
            else {
                const int order = source.block_dim(i) * target.block_dim(j);
                grid[static_cast<size_t>(j)].push_back(Matrix::Zero(order, order));
            }
        }
    }
    return Channel(source, target, std::move(grid));
}

Channel from_stochastic_matrix(const Eigen::MatrixXd& s) {
    const int y_size = static_cast<int>(s.rows());
    const int x_size = static_cast<int>(s.cols());
    if (y_size < 1 || x_size < 1)
        throw InvalidArgumentError("from_stochastic_matrix: empty matrix");
    for (int x = 0; x < x_size; ++x) {
        double col_sum = 0.0;
        for (int y = 0; y < y_size; ++y) {
            if (s(y, x) < -kTolPsd)
                throw InvalidArgumentError("from_stochastic_matrix: negative entry");
            col_sum += s(y, x);
        }
        if (std::abs(col_sum - 1.0) > 1e-9)
            throw InvalidArgumentError("from_stochastic_matrix: column " + std::to_string(x) +
                                       " sums to " + std::to_string(col_sum));
    }
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(y_size));
    for (int y = 0; y < y_size; ++y)
        for (int x = 0; x < x_size; ++x) {
            Matrix choi(1, 1);
            choi(0, 0) = Complex(s(y, x), 0.0);
            grid[static_cast<size_t>(y)].push_back(std::move(choi));
        }
    return Channel(make_classical_system(x_size), make_classical_system(y_size), std::move(grid));
}

Channel block_permutation_channel(const System& a, const std::vector<int>& perm) {
    const int k = a.num_blocks();
    if (static_cast<int>(perm.size()) != k)
        throw InvalidArgumentError("block_permutation_channel: permutation length mismatch");
    std::vector<int> seen(static_cast<size_t>(k), 0);
    for (int p : perm) {
        if (p < 0 || p >= k || seen[static_cast<size_t>(p)]++)
            throw InvalidArgumentError("block_permutation_channel: not a permutation");
    }
    std::vector<int> target_dims(static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        target_dims[static_cast<size_t>(perm[static_cast<size_t>(i)])] = a.block_dim(i);
    const System target{target_dims};
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            const int n = a.block_dim(i);
            const int m = target.block_dim(j);
            Matrix choi = Matrix::Zero(n * m, n * m);
            if (perm[static_cast<size_t>(i)] == j) {
                for (int va = 0; va < n; ++va)
                    for (int vb = 0; vb < n; ++vb)
                        choi(va * n + va, vb * n + vb) = Complex(1.0, 0.0);
            }
            grid[static_cast<size_t>(j)].push_back(std::move(choi));
        }
    return Channel(a, target, std::move(grid));
}

Channel isometric_channel(const Matrix& v, double tol) {
    const int m = static_cast<int>(v.rows());
    const int n = static_cast<int>(v.cols());
    if (m < n)
        throw InvalidArgumentError("isometric_channel: more columns than rows");
    if ((v.adjoint() * v - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
        throw InvalidArgumentError("isometric_channel: columns are not orthonormal");
    // Choi of rho -> V rho V* is the rank-1 matrix w w* with
    // w(a*m + r) = V(r, a), i.e. the column-major flattening of V.
    Eigen::Map<const Vector> w(v.data(), m * n);
    std::vector<std::vector<Matrix>> grid(1);
    grid[0].push_back(w * w.adjoint());
    return Channel(System({n}), System({m}), std::move(grid));
}

namespace {

void check_mutually_orthogonal(const std::vector<PureState>& psis, double tol) {
    if (psis.empty())
        throw InvalidArgumentError("orthogonal family: empty");
    const System& a = psis.front().system();
    for (const PureState& psi : psis)
        if (psi.system() != a)
            throw DomainMismatchError("orthogonal family: mixed systems");
    for (size_t i = 0; i < psis.size(); ++i)
        for (size_t j = i + 1; j < psis.size(); ++j) {
            if (psis[i].block_index() != psis[j].block_index())
                continue;
            const double overlap = std::abs(psis[i].vector().dot(psis[j].vector()));
            if (overlap > tol)
                throw InvalidArgumentError("orthogonal family: vectors " + std::to_string(i) +
                                           " and " + std::to_string(j) + " overlap");
        }
}

} // namespace

Channel embedding_channel(const std::vector<PureState>& psis, double tol) {
    check_mutually_orthogonal(psis, tol);
    const System& a = psis.front().system();
    const int n = static_cast<int>(psis.size());
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(a.num_blocks()));
    for (int j = 0; j < a.num_blocks(); ++j) {
        const int m = a.block_dim(j);
        for (int i = 0; i < n; ++i) {
            if (psis[static_cast<size_t>(i)].block_index() == j) {
                const Vector& v = psis[static_cast<size_t>(i)].vector();
                grid[static_cast<size_t>(j)].push_back(v * v.adjoint());
            } else {
                grid[static_cast<size_t>(j)].push_back(Matrix::Zero(m, m));
            }
        }
    }
    return Channel(make_classical_system(n), a, std::move(grid));
}

Channel measurement_channel(const std::vector<PureState>& psis, double tol) {
    check_mutually_orthogonal(psis, tol);
    const System& a = psis.front().system();
    const int n = static_cast<int>(psis.size());
    if (n != a.total_dim())
        throw InvalidArgumentError("measurement_channel: family has " + std::to_string(n) +
                                   " vectors, need total_dim = " + std::to_string(a.total_dim()));
    std::vector<std::vector<Matrix>> grid(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const PureState& psi = psis[static_cast<size_t>(i)];
        for (int b = 0; b < a.num_blocks(); ++b) {
            const int nb = a.block_dim(b);
            if (psi.block_index() == b) {
                // Choi of rho -> [Tr(psi rho)] is conj(v) v^T.
                const Vector& v = psi.vector();
                grid[static_cast<size_t>(i)].push_back(v.conjugate() * v.transpose());
            } else {
                grid[static_cast<size_t>(i)].push_back(Matrix::Zero(nb, nb));
            }
        }
    }
    return Channel(a, make_classical_system(n), std::move(grid));
}

namespace {

State image_of_pure(const Channel& f, const PureState& input) {
    return apply(f, input.to_state());
}

} // namespace

PureToPureVerdict is_pure_to_pure(const Channel& f, int num_samples, double tol,
                                  std::uint64_t rng_seed) {
    const System& a = f.source();
    if (a.is_classical()) {
        // Pure states of a classical system are exactly the point masses, so
        // checking each one decides the question with no sampling.
        for (int x = 0; x < a.num_blocks(); ++x) {
            PureState phi = classical_point_mass(a, x);
            if (!is_pure(image_of_pure(f, phi), tol))
                return {false, true, std::move(phi)};
        }
        return {true, true, std::nullopt};
    }
    Rng rng(rng_seed);
    for (int b = 0; b < a.num_blocks(); ++b) {
        const int n = a.block_dim(b);
        for (int e = 0; e < n; ++e) {
            Vector basis = Vector::Zero(n);
            basis(e) = Complex(1.0, 0.0);
            PureState probe(a, b, std::move(basis));
            if (!is_pure(image_of_pure(f, probe), tol))
                return {false, false, std::move(probe)};
        }
        for (int s = 0; s < num_samples; ++s) {
            PureState probe(a, b, haar_state_vector(rng, n));
            if (!is_pure(image_of_pure(f, probe), tol))
                return {false, false, std::move(probe)};
        }
    }
    return {true, false, std::nullopt};
}

bool verify_left_inverse(const Channel& g, const Channel& f, double tol) {
    if (f.target() != g.source() || g.target() != f.source())
        throw DomainMismatchError("verify_left_inverse: g must map f's target back to its source");
    const Channel gf = compose(g, f);
    const Channel id = identity_channel(f.source());
    double worst = 0.0;
    for (int j = 0; j < gf.target().num_blocks(); ++j)
        for (int i = 0; i < gf.source().num_blocks(); ++i)
            worst = std::max(worst, (gf.choi(j, i) - id.choi(j, i)).cwiseAbs().maxCoeff());
    return worst <= tol;
}

double channel_distance(const Channel& f, const Channel& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw DomainMismatchError("channel_distance: channels have different systems");
    double worst = 0.0;
    for (int j = 0; j < f.target().num_blocks(); ++j)
        for (int i = 0; i < f.source().num_blocks(); ++i)
            worst = std::max(worst, (f.choi(j, i) - g.choi(j, i)).norm());
    return worst;
}

CptpReport validate_cptp(const Channel& f, double tol) {
    double cp_violation = 0.0;
    double tp_violation = 0.0;
    for (int j = 0; j < f.target().num_blocks(); ++j)
        for (int i = 0; i < f.source().num_blocks(); ++i) {
            const Matrix& c = f.choi(j, i);
            cp_violation = std::max(cp_violation, (c - c.adjoint()).cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Matrix> solver(c, Eigen::EigenvaluesOnly);
            cp_violation = std::max(cp_violation, -solver.eigenvalues().minCoeff());
        }
    for (int i = 0; i < f.source().num_blocks(); ++i) {
        const int n = f.source().block_dim(i);
        Matrix sum = Matrix::Zero(n, n);
        for (int j = 0; j < f.target().num_blocks(); ++j)
            sum += partial_trace_output(f.choi(j, i), n, f.target().block_dim(j));
        tp_violation = std::max(tp_violation, (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    CptpReport report;
    report.cp_ok = cp_violation <= tol;
    report.tp_ok = tp_violation <= std::max(tol, kTolTp);
    report.max_violation = std::max(cp_violation, tp_violation);
    return report;
}

} // namespace finstate
