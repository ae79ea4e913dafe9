#pragma once

#include "wbu/rational.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace wbu {

// Exact scalar of the form  coeff * prod_i base_i^(exp_i)  with rational coeff,
// positive rational bases and rational exponents. Closed under multiplication,
// division, integer powers and rational powers of positive values. Values whose
// control data are perfect roots collapse back to plain rationals. Comparison
// clears exponent denominators, so equality and sign are decided exactly.
class Exact {
  public:
    Exact() : coeff_(0) {}
    Exact(const Rat& r) : coeff_(r) {}  // NOLINT: implicit by design
    Exact(long n) : coeff_(n) {}        // NOLINT

    static Exact power(const Rat& base, const Rat& exp) {
        Exact e(Rat(1));
        e.push_factor(base, exp);
        e.normalize();
        return e;
    }

    bool is_rational() const { return factors_.empty(); }
    const Rat& rational() const {
        if (!is_rational()) throw domain_error("value is not rational: " + str());
        return coeff_;
    }

    int sign() const { return coeff_.sign(); }
    bool is_zero() const { return coeff_ == 0; }

    Exact operator-() const {
        Exact r = *this;
        r.coeff_ = -r.coeff_;
        return r;
    }

    Exact& operator*=(const Exact& o) {
        if (coeff_ == 0 || o.coeff_ == 0) {
            *this = Exact();
            return *this;
        }
        coeff_ *= o.coeff_;
        for (const auto& [b, e] : o.factors_) factors_[b] += e;
        normalize();
        return *this;
    }
    Exact& operator/=(const Exact& o) {
        if (o.coeff_ == 0) throw domain_error("division by zero");
        if (coeff_ == 0) return *this;
        coeff_ /= o.coeff_;
        for (const auto& [b, e] : o.factors_) factors_[b] -= e;
        normalize();
        return *this;
    }
    friend Exact operator*(Exact a, const Exact& b) { return a *= b; }
    friend Exact operator/(Exact a, const Exact& b) { return a /= b; }

    // v^(p/q); q-th roots require a positive value (or zero with positive exponent).
    Exact pow(const Rat& e) const {
        if (e == 0) return Exact(Rat(1));
        if (coeff_ == 0) {
            if (e < 0) throw domain_error("zero to a negative power");
            return Exact();
        }
        bool root = rat_den(e) != 1;
        if (root && coeff_ < 0)
            throw domain_error("fractional power of a negative value");
        Exact r(Rat(1));
        r.push_factor(coeff_, e);
        for (const auto& [b, f] : factors_) r.push_factor(b, f * e);
        r.normalize();
        return r;
    }
    Exact pow_i(long e) const { return pow(Rat(e)); }

    friend bool operator==(const Exact& a, const Exact& b) {
        if (a.sign() != b.sign()) return false;
        if (a.sign() == 0) return true;
        // compare |a|^L == |b|^L with L clearing all exponent denominators
        Int L = 1;
        for (const auto& [base, e] : a.factors_) L = lcm(L, rat_den(e));
        for (const auto& [base, e] : b.factors_) L = lcm(L, rat_den(e));
        long l = L.convert_to<long>();
        Rat lhs = pow_int(boost::multiprecision::abs(a.coeff_), l);
        Rat rhs = pow_int(boost::multiprecision::abs(b.coeff_), l);
        for (const auto& [base, e] : a.factors_) lhs *= pow_int(base, Rat(e * l).convert_to<long>());
        for (const auto& [base, e] : b.factors_) rhs *= pow_int(base, Rat(e * l).convert_to<long>());
        return lhs == rhs;
    }
    friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

    double to_double() const {
        double v = wbu::to_double(coeff_);
        for (const auto& [b, e] : factors_)
            v *= std::pow(wbu::to_double(b), wbu::to_double(e));
        return v;
    }

    std::string str() const {
        std::ostringstream os;
        os << format_rat(coeff_);
        for (const auto& [b, e] : factors_)
            os << "*(" << format_rat(b) << ")^(" << format_rat(e) << ")";
        return os.str();
    }

  private:
    void push_factor(const Rat& base, const Rat& exp) {
        if (base == 1 || exp == 0) return;
        factors_[base] += exp;
    }

    void normalize() {
        std::map<Rat, Rat> out;
        for (auto& [base, e] : factors_) {
            if (e == 0 || base == 1) continue;
            Rat b = base, f = e;
            if (b < 0) throw domain_error("negative base in exact scalar");
            long q = rat_den(f).convert_to<long>();
            if (q == 1) {
                coeff_ *= pow_int(b, rat_num(f).convert_to<long>());
                continue;
            }
            if (auto root = rat_nth_root(b, static_cast<unsigned>(q))) {
                coeff_ *= pow_int(*root, rat_num(f).convert_to<long>());
                continue;
            }
            out[b] += f;
        }
        // a second pass: merging may have produced integer exponents
        bool again = false;
        for (auto& [b, f] : out)
            if (f == 0 || rat_den(f) == 1) again = true;
        factors_ = std::move(out);
        if (again) {
            auto fs = std::move(factors_);
            factors_.clear();
            for (auto& [b, f] : fs) push_factor(b, f);
            normalize();
            return;
        }
        if (coeff_ == 0) factors_.clear();
    }

    Rat coeff_;
    std::map<Rat, Rat> factors_;  // base (positive, != 1) -> exponent (non-integer)
};

inline double to_double(const Exact& e) { return e.to_double(); }

using ExactVec = std::vector<Exact>;

}  // namespace wbu
