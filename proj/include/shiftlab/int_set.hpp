#pragma once

#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

// Subset of the non-negative integers used for gap sizes and interspersion
// block lengths. Infinite sets are carried as named generators so that
// soficity tests can dispatch on the shape of the difference sequence.
class IntSet {
  public:
    enum class Kind { Finite, Pow2, Even, Squares, All };

    static IntSet finite(std::vector<long long> elems);
    static IntSet pow2();     // {1, 2, 4, 8, ...}
    static IntSet even();     // {0, 2, 4, ...}
    static IntSet squares();  // {1, 4, 9, ...}
    static IntSet all();      // {0, 1, 2, ...}

    Kind kind() const { return kind_; }
    bool finite_set() const { return kind_ == Kind::Finite; }
    bool contains(long long n) const;
    bool contains_geq(long long n) const;  // some element >= n?
    long long max_element() const;         // finite sets only
    std::vector<long long> prefix(int count) const;

    // Whether the sequence of consecutive differences is eventually periodic;
    // this is the exact soficity test for gap constraints. Finite sets
    // qualify vacuously.
    bool differences_eventually_periodic() const;

    std::string serialize() const;
    static IntSet deserialize(const std::string& text);

    bool operator==(const IntSet&) const = default;

  private:
    IntSet(Kind k, std::vector<long long> elems) : kind_(k), elems_(std::move(elems)) {}
    Kind kind_;
    std::vector<long long> elems_;  // sorted, Finite only
};

}  // namespace shiftlab
