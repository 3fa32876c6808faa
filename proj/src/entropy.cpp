#include "finstate/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace finstate {

namespace {

double clipped_term(double x) {
    return x <= kEntropyClipEps ? 0.0 : -x * std::log(x);
}

// -sum x*ln(x) over eigenvalues. Summation runs over descending values so the
// result does not depend on the order blocks were visited in.
double entropy_of_eigenvalues(std::vector<double>& values) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    double sum = 0.0;
    for (double x : values)
        sum += clipped_term(x);
    return std::max(0.0, sum);
}

} // namespace

EntropyValue shannon(const std::vector<double>& probs) {
    if (probs.empty())
        throw InvalidArgumentError("shannon: empty probability vector");
    double total = 0.0;
    for (double p : probs) {
        if (p < -kTolPsd)
            throw InvalidArgumentError("shannon: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kTolTrace)
        throw InvalidArgumentError("shannon: probabilities sum to " + std::to_string(total));
    double sum = 0.0;
    for (double p : probs)
        sum += clipped_term(p);
    return EntropyValue{std::max(0.0, sum)};
}

EntropyValue von_neumann(const Matrix& rho) {
    if (rho.rows() != rho.cols())
        throw InvalidArgumentError("von_neumann: matrix is not square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTolPsd)
        throw InvalidArgumentError("von_neumann: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kTolPsd)
        throw InvalidArgumentError("von_neumann: matrix is not PSD");
    if (std::abs(rho.trace().real() - 1.0) > kTolTrace)
        throw InvalidArgumentError("von_neumann: trace is not 1");
    std::vector<double> values(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + solver.eigenvalues().size());
    return EntropyValue{entropy_of_eigenvalues(values)};
}

EntropyValue segal(const State& omega) {
    std::vector<double> values;
    values.reserve(static_cast<size_t>(omega.system().total_dim()));
    for (int i = 0; i < omega.system().num_blocks(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(omega.block_op(i), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw InvalidStateError("segal: eigensolver failed");
        for (int j = 0; j < solver.eigenvalues().size(); ++j)
            values.push_back(solver.eigenvalues()(j));
    }
    return EntropyValue{entropy_of_eigenvalues(values)};
}

} // namespace finstate
