#include "gnf/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>

namespace gnf {

namespace {

using int128 = __int128;

long long narrow(int128 v, const char* op) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
        throw RationalOverflow(std::string("rational overflow in ") + op);
    }
    return static_cast<long long>(v);
}

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rat::Rat(long long num, long long den) : p_(num), q_(den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
}

void Rat::normalize() {
    if (q_ < 0) {
        p_ = narrow(-int128(p_), "negate");
        q_ = narrow(-int128(q_), "negate");
    }
    long long g = std::gcd(p_ < 0 ? -p_ : p_, q_);
    if (g > 1) {
        p_ /= g;
        q_ /= g;
    }
    if (p_ == 0) q_ = 1;
}

Rat Rat::operator-() const {
    Rat r;
    r.p_ = narrow(-int128(p_), "negate");
    r.q_ = q_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    int128 num = int128(p_) * o.q_ + int128(o.p_) * q_;
    int128 den = int128(q_) * o.q_;
    int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    p_ = narrow(num, "add");
    q_ = narrow(den, "add");
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    return *this += -o;
}

Rat& Rat::operator*=(const Rat& o) {
    // Cross-reduce before multiplying to keep intermediates small.
    long long g1 = std::gcd(p_ < 0 ? -p_ : p_, o.q_);
    long long g2 = std::gcd(o.p_ < 0 ? -o.p_ : o.p_, q_);
    int128 num = int128(p_ / g1) * (o.p_ / g2);
    int128 den = int128(q_ / g2) * (o.q_ / g1);
    p_ = narrow(num, "mul");
    q_ = narrow(den, "mul");
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.p_ == 0) throw std::invalid_argument("rational division by zero");
    Rat inv;
    inv.p_ = o.q_;
    inv.q_ = o.p_;
    if (inv.q_ < 0) {
        inv.p_ = -inv.p_;
        inv.q_ = -inv.q_;
    }
    return *this *= inv;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int128 lhs = int128(a.p_) * b.q_;
    int128 rhs = int128(b.p_) * a.q_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rat::str() const {
    if (q_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "/" + std::to_string(q_);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

Rat Rat::parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
    if (text.empty()) fail();

    auto parse_ll = [&](std::string_view s) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail();
        return v;
    };

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        long long p = parse_ll(text.substr(0, slash));
        long long q = parse_ll(text.substr(slash + 1));
        return Rat(p, q);
    }

    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        return Rat(parse_ll(text));
    }

    bool negative = text.front() == '-';
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) fail();
    long long whole = head.empty() || head == "-" ? 0 : parse_ll(head);
    long long scale = 1;
    long long frac_value = 0;
    for (char c : frac) {
        if (c < '0' || c > '9') fail();
        frac_value = narrow(int128(frac_value) * 10 + (c - '0'), "parse");
        scale = narrow(int128(scale) * 10, "parse");
    }
    Rat result = Rat(whole < 0 ? -whole : whole) + Rat(frac_value, scale);
    return (negative ? -result : result);
}

}  // namespace gnf
