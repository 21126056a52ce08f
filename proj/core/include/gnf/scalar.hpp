#pragma once

#include <string>

#include "gnf/rational.hpp"

namespace gnf {

// The game engine is generic over its scalar: exact rationals for 1-2, tree
// and general metrics; doubles for Euclidean geometry.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat from_int(long long v) { return Rat(v); }
    static Rat from_ratio(long long p, long long q) { return Rat(p, q); }
    static double to_double(const Rat& v) { return v.to_double(); }
    static std::string str(const Rat& v) { return v.str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_int(long long v) { return static_cast<double>(v); }
    static double from_ratio(long long p, long long q) {
        return static_cast<double>(p) / static_cast<double>(q);
    }
    static double to_double(double v) { return v; }
    static std::string str(double v) { return std::to_string(v); }
};

template <class S>
S scalar_from_int(long long v) {
    return scalar_traits<S>::from_int(v);
}

}  // namespace gnf
