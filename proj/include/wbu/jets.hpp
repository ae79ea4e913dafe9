#pragma once

#include "wbu/rational.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace wbu {

// Per-coordinate non-negative integer weights.
struct WeightVector {
    std::vector<int> w;

    WeightVector() = default;
    explicit WeightVector(std::vector<int> ws) : w(std::move(ws)) {
        for (int x : w)
            if (x < 0) throw domain_error("negative weight");
        if (w.empty()) throw domain_error("empty weight vector");
    }

    int dim() const { return static_cast<int>(w.size()); }
    int order() const { return *std::max_element(w.begin(), w.end()); }
    int operator[](int i) const { return w[static_cast<size_t>(i)]; }

    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.w == b.w; }
};

// Coefficients x_i^(j) of a polynomial curve modulo order r.
struct TruncatedCurve {
    int order = 0;
    std::vector<std::vector<Rat>> coeffs;  // m rows, order+1 columns

    TruncatedCurve() = default;
    TruncatedCurve(int m, int r) : order(r), coeffs(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(r) + 1, Rat(0))) {
        if (m < 1 || r < 0) throw domain_error("bad curve shape");
    }

    int dim() const { return static_cast<int>(coeffs.size()); }
    const Rat& at(int i, int j) const { return coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    Rat& at(int i, int j) { return coeffs[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    friend bool operator==(const TruncatedCurve& a, const TruncatedCurve& b) {
        return a.order == b.order && a.coeffs == b.coeffs;
    }
};

// Multivariate polynomial with rational coefficients; no zero terms stored.
struct Polynomial {
    int vars = 0;
    std::map<std::vector<int>, Rat> terms;  // exponent multi-index -> coefficient

    Polynomial() = default;
    explicit Polynomial(int m) : vars(m) {}

    static Polynomial variable(int m, int i) {
        Polynomial p(m);
        std::vector<int> e(static_cast<size_t>(m), 0);
        e[static_cast<size_t>(i)] = 1;
        p.terms[e] = 1;
        return p;
    }
    static Polynomial constant(int m, const Rat& c) {
        Polynomial p(m);
        if (c != 0) p.terms[std::vector<int>(static_cast<size_t>(m), 0)] = c;
        return p;
    }

    void add_term(const std::vector<int>& e, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.vars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<int> e(ea);
                for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    template <class S>
    S eval(const std::vector<S>& x) const {
        S acc(Rat(0));
        for (const auto& [e, c] : terms) {
            S term{Rat(c)};
            for (size_t k = 0; k < e.size(); ++k)
                for (int p = 0; p < e[k]; ++p) term = term * x[k];
            acc = acc + term;
        }
        return acc;
    }

    double eval_d(const std::vector<double>& x) const {
        double acc = 0;
        for (const auto& [e, c] : terms) {
            double term = to_double(c);
            for (size_t k = 0; k < e.size(); ++k) term *= std::pow(x[k], e[k]);
            acc += term;
        }
        return acc;
    }

    Polynomial derivative(int i) const {
        Polynomial r(vars);
        for (const auto& [e, c] : terms) {
            if (e[static_cast<size_t>(i)] == 0) continue;
            std::vector<int> d(e);
            Rat cc = c * d[static_cast<size_t>(i)];
            d[static_cast<size_t>(i)] -= 1;
            r.add_term(d, cc);
        }
        return r;
    }
};

// Weighted normal vector: entry i is read as the lift x_i^(w_i); entries with
// w_i = 0 are base-point coordinates.
struct NormalVector {
    WeightVector weight;
    std::vector<Rat> coords;

    NormalVector() = default;
    NormalVector(WeightVector w, std::vector<Rat> c) : weight(std::move(w)), coords(std::move(c)) {
        if (weight.dim() != static_cast<int>(coords.size())) throw domain_error("normal vector shape mismatch");
    }
};

// result_i = lambda^(w_i) * v_i
template <class S>
std::vector<S> weighted_action(const S& lambda, const std::vector<S>& v, const WeightVector& w) {
    if (static_cast<int>(v.size()) != w.dim()) throw domain_error("weighted action shape mismatch");
    std::vector<S> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        S p{Rat(1)};
        for (int k = 0; k < w[static_cast<int>(i)]; ++k) p = p * lambda;
        r[i] = p * v[i];
    }
    return r;
}

inline std::vector<Rat> weighted_action(const Rat& lambda, const std::vector<Rat>& v, const WeightVector& w) {
    if (static_cast<int>(v.size()) != w.dim()) throw domain_error("weighted action shape mismatch");
    std::vector<Rat> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = pow_int(lambda, w[static_cast<int>(i)]) * v[i];
    return r;
}

namespace detail {

// Truncated power series in t, coefficients 0..order.
using Series = std::vector<Rat>;

inline Series series_mul(const Series& a, const Series& b) {
    Series r(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j + i < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

}  // namespace detail

// i-th lift f^(i)(q) = coefficient of t^i in f(gamma(t)) for the polynomial
// representative curve of q. Exact series composition.
inline Rat lift(const Polynomial& f, int i, const TruncatedCurve& q) {
    if (i < 0) throw domain_error("negative lift degree");
    if (i > q.order) throw domain_error("lift degree exceeds curve order");
    if (f.vars != q.dim()) throw domain_error("lift dimension mismatch");
    size_t len = static_cast<size_t>(q.order) + 1;
    detail::Series acc(len, Rat(0));
    for (const auto& [e, c] : f.terms) {
        detail::Series term(len, Rat(0));
        term[0] = c;
        for (size_t k = 0; k < e.size(); ++k)
            for (int p = 0; p < e[k]; ++p) term = detail::series_mul(term, q.coeffs[k]);
        for (size_t j = 0; j < len; ++j) acc[j] += term[j];
    }
    return acc[static_cast<size_t>(i)];
}

// true iff q lies in the standard weighting of w.
inline bool in_weighting(const TruncatedCurve& q, const WeightVector& w) {
    if (q.dim() != w.dim()) throw domain_error("in_weighting dimension mismatch");
    if (q.order < w.order() - 1) throw domain_error("curve order too low for weighting");
    for (int i = 0; i < q.dim(); ++i)
        for (int j = 0; j < w[i] && j <= q.order; ++j)
            if (q.at(i, j) != 0) return false;
    return true;
}

// Induced map between weighted normal bundles of nested standard weightings:
// keep entries whose weights agree, zero the rest.
inline NormalVector normal_induced(const NormalVector& v, const WeightVector& w_target) {
    if (v.weight.dim() != w_target.dim()) throw domain_error("normal_induced dimension mismatch");
    for (int i = 0; i < w_target.dim(); ++i)
        if (v.weight[i] < w_target[i])
            throw domain_error("identity is not a weighted morphism: weight increases at column " + std::to_string(i));
    std::vector<Rat> out(v.coords.size(), Rat(0));
    for (int i = 0; i < w_target.dim(); ++i)
        if (v.weight[i] == w_target[i]) out[static_cast<size_t>(i)] = v.coords[static_cast<size_t>(i)];
    return NormalVector(w_target, std::move(out));
}

// Reparametrization action on curves: (lambda . q)_i^(j) = lambda^j q_i^(j).
inline TruncatedCurve curve_scale(const Rat& lambda, const TruncatedCurve& q) {
    TruncatedCurve r = q;
    for (int i = 0; i < q.dim(); ++i)
        for (int j = 0; j <= q.order; ++j) r.at(i, j) = pow_int(lambda, j) * q.at(i, j);
    return r;
}

struct CurveSum {
    TruncatedCurve curve;
    bool truncated = false;  // set when input orders differed
};

// Coefficientwise sum; mixed orders truncate to the minimum with a flag.
inline CurveSum add_curves(const TruncatedCurve& a, const TruncatedCurve& b) {
    if (a.dim() != b.dim()) throw domain_error("curve sum dimension mismatch");
    CurveSum out;
    int r = std::min(a.order, b.order);
    out.truncated = a.order != b.order;
    out.curve = TruncatedCurve(a.dim(), r);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j <= r; ++j) out.curve.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

}  // namespace wbu
