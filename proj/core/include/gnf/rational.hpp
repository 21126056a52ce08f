#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gnf {

// Exact rational on 64-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0). Intermediate products run in 128 bit; a result
// that does not fit back into 64 bit throws RationalOverflow. All gadget
// metrics in this project have small denominators, so this never triggers
// in practice, but silent wraparound would corrupt equilibrium verdicts.
class RationalOverflow : public std::overflow_error {
public:
    explicit RationalOverflow(const std::string& what) : std::overflow_error(what) {}
};

class Rat {
public:
    constexpr Rat() : p_(0), q_(1) {}
    Rat(long long value) : p_(value), q_(1) {}  // NOLINT: implicit on purpose
    Rat(int value) : p_(value), q_(1) {}        // NOLINT
    Rat(long long num, long long den);

    // Accepts "p/q", integers ("-3") and plain decimals ("1.14", "2.5e-3" is
    // not supported on purpose).
    static Rat parse(std::string_view text);

    long long num() const { return p_; }
    long long den() const { return q_; }
    bool is_zero() const { return p_ == 0; }
    int sign() const { return p_ < 0 ? -1 : (p_ > 0 ? 1 : 0); }

    double to_double() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    std::string str() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    void normalize();

    long long p_;
    long long q_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace gnf
