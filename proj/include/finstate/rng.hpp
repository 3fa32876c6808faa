#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace finstate {

/// Deterministic random stream. All draws go through explicit bit-level
/// conversions (never std:: distributions, whose output is
/// implementation-defined), so a seed reproduces the same values on any
/// platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Standard normal via Box-Muller; the spare value is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> complex_normal() {
        return {normal(), normal()};
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Splits a root seed into independent per-trial streams by counter, so
/// trials can run in any order (or in parallel) without reordering draws.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t counter) {
    auto splitmix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return splitmix(splitmix(splitmix(root) + stream) + counter);
}

/// Haar-random unit vector.
Eigen::VectorXcd haar_state_vector(Rng& rng, int n);

/// Haar-random isometry (rows >= cols) via QR of a complex Gaussian matrix
/// with the phase fix that makes the distribution uniform.
Eigen::MatrixXcd haar_isometry(Rng& rng, int rows, int cols);

/// Haar-random unitary.
Eigen::MatrixXcd haar_unitary(Rng& rng, int n);

} // namespace finstate
