#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace shiftlab {

// All scalar arithmetic in the library is exact. Rat carries arbitrary
// precision numerator/denominator so that every inequality we certify is a
// comparison of integers, never of rounded doubles.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat_pow(const Rat& base, unsigned long exp) {
    Rat r = 1;
    Rat b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Canonical "p/q" rendering; integers print without the "/1".
inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace shiftlab
