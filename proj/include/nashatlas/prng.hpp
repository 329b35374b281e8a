// Deterministic 64-bit splittable generator (splitmix64).
//
// All sampling in the library flows through this generator so that runs are
// reproducible bit-for-bit across platforms for a fixed seed. Constants are
// the standard splitmix64 ones.
#ifndef NASHATLAS_PRNG_HPP
#define NASHATLAS_PRNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace nashatlas {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1), 53 bits of mantissa.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Index in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    bool coin() { return (next_u64() & 1ULL) != 0; }

    // Box-Muller; uses two draws per call.
    double gaussian() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // Uniform direction on the unit sphere of R^n via normalized gaussians.
    std::vector<double> sphere(int n) {
        std::vector<double> w(n);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int i = 0; i < n; ++i) {
                w[i] = gaussian();
                norm2 += w[i] * w[i];
            }
        } while (norm2 < 1e-12);
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : w) c *= inv;
        return w;
    }

    // Derives an independent stream; used to parallelize sampling loops.
    SplitMix64 split() { return SplitMix64(next_u64() ^ 0x9e3779b97f4a7c15ULL); }

  private:
    std::uint64_t state_;
};

}  // namespace nashatlas

#endif
