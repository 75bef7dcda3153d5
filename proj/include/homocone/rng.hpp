#pragma once

#include <cmath>
#include <cstdint>

#include "common.hpp"

namespace homocone {

// Counter-based RNG: output depends only on (seed, stream, counter), no
// mutable shared state, so parallel schedules cannot change any stream.
// The mixer is the splitmix64 finalizer applied to the keyed counter.
namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Derive a child seed; used to give each scenario / fuzz instance its own
// stream from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return detail::mix64(detail::mix64(master) ^ (index * 0xd1342543de82ef95ULL + 1));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(detail::mix64(seed ^ detail::mix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() { return detail::mix64(key_ ^ counter_++); }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Marsaglia polar method; consumes a variable, stream-local number of
  // counter steps, which is fine because counters are never shared.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  Vec gaussian_vec(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = gaussian();
    return x;
  }

  // Uniform direction on the unit sphere.
  Vec unit_vec(int n) {
    for (;;) {
      Vec x = gaussian_vec(n);
      double r = x.norm();
      if (r > 1e-8) return x / r;
    }
  }

  // Haar-uniform rotation via QR of a Gaussian matrix, sign-fixed so the
  // result is deterministic and a proper rotation.
  Mat rotation(int n) {
    Mat g(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = gaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
  }

  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace homocone
