#pragma once

// Deterministic randomness for measurements and Monte Carlo sampling.
//
// All stochastic decisions in the library flow through RngStream so that
// (a) a run is reproducible from its seed alone, (b) tests can count how
// many draws an operation consumed, and (c) tests can force specific
// uniform values to pin down branch behaviour.

#include <cstdint>
#include <deque>
#include <random>
#include <stdexcept>

namespace globalctl {

// Standard 64-bit mix; used to derive independent per-trial seeds from a
// master seed without correlations between consecutive trials.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    ++draws_;
    if (!forced_.empty()) {
      double v = forced_.front();
      forced_.pop_front();
      return v;
    }
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t draw_count() const { return draws_; }

  // Test seam: the next calls to uniform() return these values (still
  // counted as draws) before falling back to the engine.
  void force_next(double v) {
    if (v < 0.0 || v >= 1.0) throw std::invalid_argument("forced value outside [0,1)");
    forced_.push_back(v);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::uint64_t draws_ = 0;
  std::deque<double> forced_;
};

}  // namespace globalctl
