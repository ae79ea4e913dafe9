#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace wbu {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rat& r) { return r.sign(); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Accepts "p", "-p", "p/q" with optional sign on the numerator.
inline std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) return std::nullopt;
        return Rat(p, q);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::string format_rat(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rat pow_int(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw domain_error("zero base with negative exponent");
        return Rat(0);
    }
    Rat b = base;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return inv ? Rat(1) / acc : acc;
}

// Exact integer n-th root when it exists.
inline std::optional<Int> int_nth_root(const Int& v, unsigned n) {
    if (v < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = int_nth_root(-v, n);
        if (!r) return std::nullopt;
        return -*r;
    }
    if (v == 0 || v == 1 || n == 1) return v;
    Int lo = 0, hi = v;
    // shrink hi: root of v has about bits(v)/n bits
    while (boost::multiprecision::pow(hi, n) > v) {
        Int mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, n) >= v)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1) break;
    }
    for (Int c = lo; c <= hi + 1; ++c)
        if (boost::multiprecision::pow(c, n) == v) return c;
    return std::nullopt;
}

// Exact rational n-th root when it exists.
inline std::optional<Rat> rat_nth_root(const Rat& r, unsigned n) {
    auto p = int_nth_root(rat_num(r), n);
    if (!p) return std::nullopt;
    auto q = int_nth_root(rat_den(r), n);
    if (!q) return std::nullopt;
    return Rat(*p, *q);
}

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

}  // namespace wbu
