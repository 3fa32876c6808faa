#include "finstate/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace finstate {

namespace {

double hermiticity_violation(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace

System::System(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
    if (dims_.empty())
        throw InvalidArgumentError("System: block dimension list must be nonempty");
    for (int n : dims_) {
        if (n < 1)
            throw InvalidArgumentError("System: every block dimension must be >= 1");
        total_ += n;
    }
}

bool System::is_classical() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int n) { return n == 1; });
}

State::State(System system, std::vector<Matrix> block_ops)
    : system_(std::move(system)), ops_(std::move(block_ops)) {
    if (static_cast<int>(ops_.size()) != system_.num_blocks())
        throw InvalidStateError("State: block count does not match system");
    double trace_sum = 0.0;
    for (int i = 0; i < system_.num_blocks(); ++i) {
        const Matrix& op = ops_[static_cast<size_t>(i)];
        const int n = system_.block_dim(i);
        if (op.rows() != n || op.cols() != n)
            throw InvalidStateError("State: block " + std::to_string(i) + " has wrong order");
        if (hermiticity_violation(op) > kTolPsd)
            throw InvalidStateError("State: block " + std::to_string(i) + " is not Hermitian");
        if (min_eigenvalue(op) < -kTolPsd)
            throw InvalidStateError("State: block " + std::to_string(i) + " is not PSD");
        trace_sum += op.trace().real();
    }
    if (std::abs(trace_sum - 1.0) > kTolTrace)
        throw InvalidStateError("State: block traces sum to " + std::to_string(trace_sum) +
                                ", expected 1");
}

double State::block_trace(int i) const {
    return block_op(i).trace().real();
}

PureState::PureState(System system, int block_index, Vector vector)
    : system_(std::move(system)), block_(block_index), vec_(std::move(vector)) {
    if (block_ < 0 || block_ >= system_.num_blocks())
        throw InvalidArgumentError("PureState: block index out of range");
    if (vec_.size() != system_.block_dim(block_))
        throw InvalidArgumentError("PureState: vector length does not match block dimension");
    if (std::abs(vec_.norm() - 1.0) > kTolPsd)
        throw InvalidArgumentError("PureState: vector is not unit norm");
}

State PureState::to_state() const {
    std::vector<Matrix> ops;
    ops.reserve(static_cast<size_t>(system_.num_blocks()));
    for (int i = 0; i < system_.num_blocks(); ++i) {
        if (i == block_)
            ops.push_back(vec_ * vec_.adjoint());
        else
            ops.push_back(Matrix::Zero(system_.block_dim(i), system_.block_dim(i)));
    }
    return State(system_, std::move(ops));
}

System make_classical_system(int size) {
    if (size < 1)
        throw InvalidArgumentError("make_classical_system: size must be >= 1");
    return System(std::vector<int>(static_cast<size_t>(size), 1));
}

PureState classical_point_mass(const System& classical_system, int x) {
    if (!classical_system.is_classical())
        throw DomainMismatchError("classical_point_mass: system is not classical");
    Vector one(1);
    one(0) = Complex(1.0, 0.0);
    return PureState(classical_system, x, one);
}

State classical_state_from_probs(const std::vector<double>& probs) {
    if (probs.empty())
        throw InvalidStateError("classical_state_from_probs: empty probability vector");
    double sum = 0.0;
    for (double p : probs) {
        if (p < -kTolPsd)
            throw InvalidStateError("classical_state_from_probs: negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTolTrace)
        throw InvalidStateError("classical_state_from_probs: entries sum to " +
                                std::to_string(sum) + ", expected 1");
    std::vector<Matrix> ops;
    ops.reserve(probs.size());
    for (double p : probs) {
        Matrix op(1, 1);
        op(0, 0) = Complex(p, 0.0);
        ops.push_back(std::move(op));
    }
    return State(make_classical_system(static_cast<int>(probs.size())), std::move(ops));
}

std::vector<double> state_as_prob_vector(const State& state) {
    if (!state.system().is_classical())
        throw DomainMismatchError("state_as_prob_vector: system is not classical");
    std::vector<double> probs;
    probs.reserve(static_cast<size_t>(state.system().num_blocks()));
    for (int i = 0; i < state.system().num_blocks(); ++i)
        probs.push_back(state.block_op(i)(0, 0).real());
    return probs;
}

bool is_pure(const State& state, double tol) {
    int support_block = -1;
    for (int i = 0; i < state.system().num_blocks(); ++i) {
        if (state.block_trace(i) > tol) {
            if (support_block >= 0)
                return false; // trace split across blocks
            support_block = i;
        }
    }
    if (support_block < 0)
        return false;
    const Matrix& rho = state.block_op(support_block);
    const double purity = (rho * rho).trace().real();
    return purity >= 1.0 - tol;
}

System direct_sum_systems(const System& a, const System& b) {
    std::vector<int> dims = a.block_dims();
    dims.insert(dims.end(), b.block_dims().begin(), b.block_dims().end());
    return System(std::move(dims));
}

State direct_sum_states(double lambda, const State& omega, const State& xi) {
    if (lambda < 0.0 || lambda > 1.0)
        throw InvalidArgumentError("direct_sum_states: lambda must lie in [0, 1]");
    std::vector<Matrix> ops;
    ops.reserve(static_cast<size_t>(omega.system().num_blocks() + xi.system().num_blocks()));
    for (const Matrix& op : omega.block_ops())
        ops.push_back(lambda * op);
    for (const Matrix& op : xi.block_ops())
        ops.push_back((1.0 - lambda) * op);
    return State(direct_sum_systems(omega.system(), xi.system()), std::move(ops));
}

Matrix embed_state_full(const State& state) {
    const int n = state.system().total_dim();
    Matrix full = Matrix::Zero(n, n);
    int offset = 0;
    for (int i = 0; i < state.system().num_blocks(); ++i) {
        const int d = state.system().block_dim(i);
        full.block(offset, offset, d, d) = state.block_op(i);
        offset += d;
    }
    return full;
}

SpectralDecomposition spectral_decompose(const State& state) {
    struct Entry {
        double value;
        int block;
        int order; // eigensolver output position
        Vector vec;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<size_t>(state.system().total_dim()));
    for (int i = 0; i < state.system().num_blocks(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(state.block_op(i));
        if (solver.info() != Eigen::Success)
            throw InvalidStateError("spectral_decompose: eigensolver failed");
        for (int j = 0; j < solver.eigenvalues().size(); ++j) {
            entries.push_back(
                {std::max(0.0, solver.eigenvalues()(j)), i, j, solver.eigenvectors().col(j)});
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.value > b.value; // ties keep (block, output order)
    });

    SpectralDecomposition result;
    result.gammas.reserve(entries.size());
    result.psis.reserve(entries.size());
    for (Entry& e : entries) {
        result.gammas.push_back(e.value);
        result.psis.emplace_back(state.system(), e.block, std::move(e.vec));
    }
    return result;
}

double max_abs_diff(const State& a, const State& b) {
    if (a.system() != b.system())
        throw DomainMismatchError("max_abs_diff: states live on different systems");
    double worst = 0.0;
    for (int i = 0; i < a.system().num_blocks(); ++i)
        worst = std::max(worst, (a.block_op(i) - b.block_op(i)).cwiseAbs().maxCoeff());
    return worst;
}

double trace_distance(const State& a, const State& b) {
    if (a.system() != b.system())
        throw DomainMismatchError("trace_distance: states live on different systems");
    double sum = 0.0;
    for (int i = 0; i < a.system().num_blocks(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(a.block_op(i) - b.block_op(i),
                                                     Eigen::EigenvaluesOnly);
        sum += solver.eigenvalues().cwiseAbs().sum();
    }
    return 0.5 * sum;
}

} // namespace finstate
