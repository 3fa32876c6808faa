#include "finstate/rng.hpp"

#include <stdexcept>

namespace finstate {

Eigen::VectorXcd haar_state_vector(Rng& rng, int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = rng.complex_normal();
    const double norm = v.norm();
    if (norm == 0.0)
        return haar_state_vector(rng, n);
    return v / norm;
}

Eigen::MatrixXcd haar_isometry(Rng& rng, int rows, int cols) {
    if (rows < cols)
        throw std::invalid_argument("haar_isometry: rows must be >= cols");
    Eigen::MatrixXcd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    // Multiply each column by the phase of the matching R diagonal entry so
    // the result is Haar-distributed rather than QR-convention-dependent.
    for (int j = 0; j < cols; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0)
            q.col(j) *= d / mag;
    }
    return q;
}

Eigen::MatrixXcd haar_unitary(Rng& rng, int n) {
    return haar_isometry(rng, n, n);
}

} // namespace finstate
