#pragma once

#include <cstdint>
#include <vector>

#include "shiftlab/rational.hpp"

namespace shiftlab {

// SplitMix64. Experiment outputs must be byte-identical for a fixed seed on
// every platform, so we avoid std:: distributions (their streams are
// implementation defined) and keep the generator self-contained.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) without modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Inclusive range.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

    // Rational in {lo/den, ..., hi/den}.
    Rat rat(long long lo, long long hi, long long den) {
        return Rat(range(lo, hi), den);
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

  private:
    std::uint64_t state_;
};

}  // namespace shiftlab
