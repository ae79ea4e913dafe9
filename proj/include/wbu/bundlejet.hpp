#pragma once

#include "wbu/fm.hpp"
#include "wbu/jets.hpp"

#include <cmath>
#include <vector>

namespace wbu {

// Element of Q(sqrt(base)): a + b*sqrt(base) for a shared positive rational
// base. Closed under the arithmetic of jet charts, where the only irrationality
// is the Euclidean length of the horizontal offset. Values with matching bases
// (or plain rationals) combine exactly.
class QExt {
  public:
    QExt() = default;
    QExt(const Rat& r) : a_(r) {}  // NOLINT
    QExt(long n) : a_(n) {}        // NOLINT
    static QExt sqrt_of(const Rat& base) {
        if (base < 0) throw domain_error("square root of a negative rational");
        if (auto r = rat_nth_root(base, 2)) return QExt(*r);
        QExt q;
        q.b_ = 1;
        q.base_ = base;
        return q;
    }

    bool is_rational() const { return b_ == 0; }
    const Rat& rational() const {
        if (!is_rational()) throw domain_error("value is irrational");
        return a_;
    }
    const Rat& base() const { return base_; }

    friend QExt operator+(const QExt& x, const QExt& y) {
        QExt r = x;
        r.a_ += y.a_;
        if (y.b_ != 0) {
            if (r.b_ != 0 && r.base_ != y.base_) throw domain_error("mixed radical bases");
            r.base_ = y.base_;
            r.b_ += y.b_;
        }
        r.norm();
        return r;
    }
    friend QExt operator-(const QExt& x, const QExt& y) { return x + (-y); }
    QExt operator-() const {
        QExt r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    friend QExt operator*(const QExt& x, const QExt& y) {
        QExt r;
        Rat base = x.b_ != 0 ? x.base_ : y.base_;
        if (x.b_ != 0 && y.b_ != 0 && x.base_ != y.base_) throw domain_error("mixed radical bases");
        r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * base;
        r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
        r.base_ = base;
        r.norm();
        return r;
    }
    friend QExt operator/(const QExt& x, const QExt& y) {
        // multiply by the conjugate
        if (y.a_ == 0 && y.b_ == 0) throw domain_error("division by zero");
        QExt conj = y;
        conj.b_ = -conj.b_;
        Rat denom = y.a_ * y.a_ - y.b_ * y.b_ * y.base_;
        if (denom == 0) throw domain_error("division by zero norm");
        QExt r = x * conj;
        r.a_ /= denom;
        r.b_ /= denom;
        r.norm();
        return r;
    }

    friend bool operator==(const QExt& x, const QExt& y) {
        QExt d = x - y;
        return d.a_ == 0 && d.b_ == 0;
    }
    friend bool operator!=(const QExt& x, const QExt& y) { return !(x == y); }

    int sign() const {
        if (b_ == 0) return a_.sign();
        if (a_ == 0) return b_.sign();
        // compare a and -b*sqrt(base): square both sides
        int sa = a_.sign(), sb = b_.sign();
        if (sa == sb) return sa;
        Rat lhs = a_ * a_, rhs = b_ * b_ * base_;
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? sa : sb;
    }

    double to_double() const { return wbu::to_double(a_) + wbu::to_double(b_) * std::sqrt(wbu::to_double(base_)); }

    std::string str() const {
        if (b_ == 0) return format_rat(a_);
        return format_rat(a_) + " + " + format_rat(b_) + "*sqrt(" + format_rat(base_) + ")";
    }

  private:
    void norm() {
        if (b_ == 0) base_ = 0;
    }
    Rat a_{0}, b_{0}, base_{0};
};

inline double to_double(const QExt& q) { return q.to_double(); }

// ---------------------------------------------------------------------------
// Second-order jets of maps R^m -> R and their collided pairs

// Symmetric bilinear form, stored as the packed upper triangle, row-major.
template <class S>
struct SymForm {
    int m = 0;
    std::vector<S> upper;  // m*(m+1)/2 entries

    SymForm() = default;
    explicit SymForm(int mm) : m(mm), upper(static_cast<size_t>(mm * (mm + 1) / 2), S(Rat(0))) {}

    static size_t pos(int m, int i, int j) {
        if (i > j) std::swap(i, j);
        return static_cast<size_t>(i * m - i * (i - 1) / 2 + (j - i));
    }
    const S& at(int i, int j) const { return upper[pos(m, i, j)]; }
    S& at(int i, int j) { return upper[pos(m, i, j)]; }

    S apply(const std::vector<S>& u, const std::vector<S>& v) const {
        S acc{Rat(0)};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) acc = acc + at(i, j) * u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
        return acc;
    }
    std::vector<S> contract(const std::vector<S>& u) const {  // v -> B(u, v) as a covector
        std::vector<S> out(static_cast<size_t>(m), S(Rat(0)));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) out[static_cast<size_t>(j)] = out[static_cast<size_t>(j)] + at(i, j) * u[static_cast<size_t>(i)];
        return out;
    }
    friend bool operator==(const SymForm& a, const SymForm& b) { return a.m == b.m && a.upper == b.upper; }
};

template <class S>
struct Jet2 {
    std::vector<S> x;      // base point in R^m
    S y{Rat(0)};           // value
    std::vector<S> yp;     // covector
    SymForm<S> ypp;        // symmetric form
};

template <class S>
struct JetPair2 {
    Jet2<S> first, second;
};

// Offsets of a pair of second-order jets: Taylor-remainder coordinates adapted
// to the diagonal.
template <class S>
struct JetOffsets {
    Jet2<S> base;
    std::vector<S> dx;
    S dy{Rat(0)};
    std::vector<S> dyp;
    SymForm<S> dypp;
};

template <class S>
JetOffsets<S> jet_offsets(const JetPair2<S>& p) {
    int m = static_cast<int>(p.first.x.size());
    JetOffsets<S> o;
    o.base = p.first;
    o.dx.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) o.dx[static_cast<size_t>(i)] = p.second.x[static_cast<size_t>(i)] - p.first.x[static_cast<size_t>(i)];
    S lin{Rat(0)};
    for (int i = 0; i < m; ++i) lin = lin + p.first.yp[static_cast<size_t>(i)] * o.dx[static_cast<size_t>(i)];
    o.dy = p.second.y - p.first.y - lin - S(Rat(1, 2)) * p.first.ypp.apply(o.dx, o.dx);
    auto hess = p.first.ypp.contract(o.dx);
    o.dyp.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        o.dyp[static_cast<size_t>(i)] = p.second.yp[static_cast<size_t>(i)] - p.first.yp[static_cast<size_t>(i)] - hess[static_cast<size_t>(i)];
    o.dypp = SymForm<S>(m);
    for (size_t k = 0; k < o.dypp.upper.size(); ++k) o.dypp.upper[k] = p.second.ypp.upper[k] - p.first.ypp.upper[k];
    return o;
}

template <class S>
JetPair2<S> jet_offsets_inv(const JetOffsets<S>& o) {
    int m = static_cast<int>(o.dx.size());
    JetPair2<S> p;
    p.first = o.base;
    p.second.x.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) p.second.x[static_cast<size_t>(i)] = o.base.x[static_cast<size_t>(i)] + o.dx[static_cast<size_t>(i)];
    S lin{Rat(0)};
    for (int i = 0; i < m; ++i) lin = lin + o.base.yp[static_cast<size_t>(i)] * o.dx[static_cast<size_t>(i)];
    p.second.y = o.base.y + lin + S(Rat(1, 2)) * o.base.ypp.apply(o.dx, o.dx) + o.dy;
    auto hess = o.base.ypp.contract(o.dx);
    p.second.yp.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        p.second.yp[static_cast<size_t>(i)] = o.base.yp[static_cast<size_t>(i)] + hess[static_cast<size_t>(i)] + o.dyp[static_cast<size_t>(i)];
    p.second.ypp = SymForm<S>(m);
    for (size_t k = 0; k < p.second.ypp.upper.size(); ++k) p.second.ypp.upper[k] = o.base.ypp.upper[k] + o.dypp.upper[k];
    return p;
}

// Blown-up pair: base jet, collision scale, unit horizontal direction and the
// weighted remainder data.
template <class S>
struct JetBlown2 {
    Jet2<S> base;
    S lambda{Rat(0)};      // >= 0
    std::vector<S> dx;     // |dx| = 1
    S dy{Rat(0)};
    std::vector<S> dyp;
    SymForm<S> dypp;
};

// Substitution (Dx, Dy, Dy', Dy'') = (l dx, 1/3 l^3 dy, 1/2 l^2 dy', l dy'').
template <class S>
JetPair2<S> jet_blow_down(const JetBlown2<S>& b) {
    int m = static_cast<int>(b.dx.size());
    JetOffsets<S> o;
    o.base = b.base;
    S l = b.lambda;
    S l2 = l * l, l3 = l2 * l;
    o.dx.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) o.dx[static_cast<size_t>(i)] = l * b.dx[static_cast<size_t>(i)];
    o.dy = S(Rat(1, 3)) * l3 * b.dy;
    o.dyp.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) o.dyp[static_cast<size_t>(i)] = S(Rat(1, 2)) * l2 * b.dyp[static_cast<size_t>(i)];
    o.dypp = SymForm<S>(m);
    for (size_t k = 0; k < o.dypp.upper.size(); ++k) o.dypp.upper[k] = l * b.dypp.upper[k];
    return jet_offsets_inv(o);
}

// Chart on pairs with a horizontal separation: normalize dx and rescale the
// vertical offsets by the corresponding powers of lambda.
inline JetBlown2<QExt> jet_chart(const JetPair2<QExt>& p) {
    auto o = jet_offsets(p);
    int m = static_cast<int>(o.dx.size());
    QExt norm2{Rat(0)};
    for (int i = 0; i < m; ++i) norm2 = norm2 + o.dx[static_cast<size_t>(i)] * o.dx[static_cast<size_t>(i)];
    if (norm2.sign() == 0) throw domain_error("vertical collision: dx = 0 is outside the jet chart");
    if (!norm2.is_rational()) throw domain_error("offset norm is not expressible in one radical");
    QExt lambda = QExt::sqrt_of(norm2.rational());
    QExt l2 = lambda * lambda, l3 = l2 * lambda;
    JetBlown2<QExt> b;
    b.base = o.base;
    b.lambda = lambda;
    b.dx.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) b.dx[static_cast<size_t>(i)] = o.dx[static_cast<size_t>(i)] / lambda;
    b.dy = QExt(Rat(3)) * o.dy / l3;
    b.dyp.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) b.dyp[static_cast<size_t>(i)] = QExt(Rat(2)) * o.dyp[static_cast<size_t>(i)] / l2;
    b.dypp = SymForm<QExt>(m);
    for (size_t k = 0; k < b.dypp.upper.size(); ++k) b.dypp.upper[k] = o.dypp.upper[k] / lambda;
    return b;
}

enum class HolonomicMode { paper_literal, derived };

// Contraction constant of the derived holonomicity relation dy = c * dy'(dx),
// fixed by the Taylor-remainder oracle of the test suite.
inline Rat holonomic_contraction_constant() { return Rat(1, 2); }

// At lambda = 0: the literal relations are dy = dy'(dx) and dy' = dy''(dx, .);
// the derived mode replaces the first with dy = c * dy'(dx).
template <class S>
bool holonomic_predicate(const JetBlown2<S>& b, HolonomicMode mode) {
    if (b.lambda.sign() > 0) return true;
    int m = static_cast<int>(b.dx.size());
    auto contracted = b.dypp.contract(b.dx);
    for (int i = 0; i < m; ++i)
        if (b.dyp[static_cast<size_t>(i)] != contracted[static_cast<size_t>(i)]) return false;
    S dir{Rat(0)};
    for (int i = 0; i < m; ++i) dir = dir + b.dyp[static_cast<size_t>(i)] * b.dx[static_cast<size_t>(i)];
    S expect = mode == HolonomicMode::paper_literal ? dir : S(holonomic_contraction_constant()) * dir;
    return b.dy == expect;
}

// Second-order jet of a polynomial at a rational point.
inline Jet2<Rat> polynomial_jet2(const Polynomial& f, const std::vector<Rat>& x) {
    int m = f.vars;
    Jet2<Rat> j;
    j.x = x;
    j.y = f.eval(x);
    j.yp.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) j.yp[static_cast<size_t>(i)] = f.derivative(i).eval(x);
    j.ypp = SymForm<Rat>(m);
    for (int i = 0; i < m; ++i)
        for (int k = i; k < m; ++k) j.ypp.at(i, k) = f.derivative(i).derivative(k).eval(x);
    return j;
}

template <class S>
Jet2<S> jet_cast(const Jet2<Rat>& j) {
    Jet2<S> out;
    for (const auto& v : j.x) out.x.push_back(S(v));
    out.y = S(j.y);
    for (const auto& v : j.yp) out.yp.push_back(S(v));
    out.ypp = SymForm<S>(j.ypp.m);
    for (size_t k = 0; k < j.ypp.upper.size(); ++k) out.ypp.upper[k] = S(j.ypp.upper[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic collision limit of prolonged jets along polynomial curves

using RatPoly = std::vector<Rat>;  // polynomial in t by ascending exponent

namespace jetdetail {

inline RatPoly p_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}
inline RatPoly p_neg(const RatPoly& a) {
    RatPoly r = a;
    for (auto& c : r) c = -c;
    return r;
}
inline RatPoly p_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}
inline RatPoly p_scale(const Rat& c, const RatPoly& a) {
    RatPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}
inline Rat p_coeff(const RatPoly& a, long e) {
    if (e < 0 || e >= static_cast<long>(a.size())) return Rat(0);
    return a[static_cast<size_t>(e)];
}
inline int p_ord(const RatPoly& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) return static_cast<int>(i);
    return -1;
}

inline RatPoly poly_eval_on_curves(const Polynomial& f, const std::vector<RatPoly>& x) {
    RatPoly acc;
    for (const auto& [e, c] : f.terms) {
        RatPoly term{c};
        for (size_t k = 0; k < e.size(); ++k)
            for (int p = 0; p < e[k]; ++p) term = p_mul(term, x[k]);
        acc = p_add(acc, term);
    }
    return acc;
}

}  // namespace jetdetail

// Exact limit of jet_chart applied to (j2 f(x1(t)), j2 f(x2(t))) as t -> 0+.
// Components land in Q(sqrt(nu)) for nu = |leading offset direction|^2.
inline JetBlown2<QExt> jet_limit(const Polynomial& f, const std::vector<RatPoly>& x1,
                                 const std::vector<RatPoly>& x2) {
    using namespace jetdetail;
    int m = f.vars;
    if (static_cast<int>(x1.size()) != m || static_cast<int>(x2.size()) != m)
        throw domain_error("curve dimension mismatch");
    // offset curves and their common vanishing order
    std::vector<RatPoly> dx(static_cast<size_t>(m));
    int k = -1;
    for (int i = 0; i < m; ++i) {
        dx[static_cast<size_t>(i)] = p_add(x2[static_cast<size_t>(i)], p_neg(x1[static_cast<size_t>(i)]));
        int o = p_ord(dx[static_cast<size_t>(i)]);
        if (o >= 0 && (k < 0 || o < k)) k = o;
    }
    if (k < 0) throw domain_error("curves coincide identically");
    if (k == 0) throw domain_error("curves do not collide at t = 0");
    std::vector<Rat> lead(static_cast<size_t>(m));
    Rat nu(0);
    for (int i = 0; i < m; ++i) {
        lead[static_cast<size_t>(i)] = p_coeff(dx[static_cast<size_t>(i)], k);
        nu += lead[static_cast<size_t>(i)] * lead[static_cast<size_t>(i)];
    }
    if (nu == 0) throw domain_error("no horizontal separation direction at leading order");

    // jets along the curves, as polynomials in t
    RatPoly y1 = poly_eval_on_curves(f, x1), y2 = poly_eval_on_curves(f, x2);
    std::vector<RatPoly> yp1(static_cast<size_t>(m)), yp2(static_cast<size_t>(m));
    std::vector<std::vector<RatPoly>> ypp1(static_cast<size_t>(m), std::vector<RatPoly>(static_cast<size_t>(m)));
    std::vector<std::vector<RatPoly>> ypp2 = ypp1;
    for (int i = 0; i < m; ++i) {
        Polynomial fi = f.derivative(i);
        yp1[static_cast<size_t>(i)] = poly_eval_on_curves(fi, x1);
        yp2[static_cast<size_t>(i)] = poly_eval_on_curves(fi, x2);
        for (int j = 0; j < m; ++j) {
            Polynomial fij = fi.derivative(j);
            ypp1[static_cast<size_t>(i)][static_cast<size_t>(j)] = poly_eval_on_curves(fij, x1);
            ypp2[static_cast<size_t>(i)][static_cast<size_t>(j)] = poly_eval_on_curves(fij, x2);
        }
    }
    // Taylor-remainder offsets as polynomials in t
    RatPoly dy = p_add(y2, p_neg(y1));
    for (int i = 0; i < m; ++i)
        dy = p_add(dy, p_neg(p_mul(yp1[static_cast<size_t>(i)], dx[static_cast<size_t>(i)])));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            dy = p_add(dy, p_scale(Rat(-1, 2), p_mul(ypp1[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                                      p_mul(dx[static_cast<size_t>(i)], dx[static_cast<size_t>(j)]))));
    std::vector<RatPoly> dyp(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        dyp[static_cast<size_t>(i)] = p_add(yp2[static_cast<size_t>(i)], p_neg(yp1[static_cast<size_t>(i)]));
        for (int j = 0; j < m; ++j)
            dyp[static_cast<size_t>(i)] = p_add(dyp[static_cast<size_t>(i)],
                                                p_neg(p_mul(ypp1[static_cast<size_t>(j)][static_cast<size_t>(i)],
                                                            dx[static_cast<size_t>(j)])));
    }
    // blown coordinates in the limit: lambda ~ t^k sqrt(nu)
    // dx_i -> lead_i / sqrt(nu); dy -> 3 [t^{3k}] dy / nu^{3/2};
    // dy'  -> 2 [t^{2k}] dy' / nu; dy'' -> [t^k] dy'' / sqrt(nu)
    QExt root = QExt::sqrt_of(nu);
    JetBlown2<QExt> out;
    // base jet: jets of f at the common limit point x1(0)
    std::vector<Rat> x0(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) x0[static_cast<size_t>(i)] = p_coeff(x1[static_cast<size_t>(i)], 0);
    out.base = jet_cast<QExt>(polynomial_jet2(f, x0));
    out.lambda = QExt(Rat(0));
    out.dx.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) out.dx[static_cast<size_t>(i)] = QExt(lead[static_cast<size_t>(i)]) / root;
    out.dy = QExt(Rat(3) * p_coeff(dy, 3L * k)) / (QExt(nu) * root);
    out.dyp.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        out.dyp[static_cast<size_t>(i)] = QExt(Rat(2) * p_coeff(dyp[static_cast<size_t>(i)], 2L * k)) / QExt(nu);
    out.dypp = SymForm<QExt>(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            RatPoly dpp = p_add(ypp2[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                p_neg(ypp1[static_cast<size_t>(i)][static_cast<size_t>(j)]));
            out.dypp.at(i, j) = QExt(p_coeff(dpp, k)) / root;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Local model for fiber bundles with horizontally trivial filtration

struct BundleModel {
    int m = 0;                  // horizontal dimension, weights all one
    int d = 0;                  // vertical dimension
    std::vector<int> vweights;  // d positive vertical weights

    BundleModel(int mm, int dd, std::vector<int> vw) : m(mm), d(dd), vweights(std::move(vw)) {
        if (static_cast<int>(vweights.size()) != d) throw domain_error("vertical weight count mismatch");
        for (int w : vweights)
            if (w < 1) throw domain_error("vertical weights must be positive");
    }
};

// Offset data of a configuration in the bundle: per root the full fiber point,
// per child the horizontal and vertical offsets (already in adapted form).
struct BundleOffsets {
    Forest forest;
    std::map<int, std::vector<double>> roots;        // m + d values
    std::map<int, std::vector<double>> hoffsets;     // child -> m values
    std::map<int, std::vector<double>> voffsets;     // child -> d values
};

struct BundleModelPoint {
    BundleModel model;
    IndexNest nest;
    Forest forest;
    std::map<IndexSet, IndexSet> controls;
    std::map<int, std::vector<double>> roots;
    std::map<IndexSet, std::vector<double>> hscreens;  // unit, |Ct|*m
    std::map<IndexSet, std::vector<double>> vdata;     // rescaled vertical offsets, |Ct|*d
    std::map<IndexSet, double> t;
};

// Normalization over the horizontal offsets only; vertical offsets are
// rescaled by the corresponding powers of the cumulative scale.
inline BundleModelPoint bundle_local_model_fwd(const BundleModel& model, const IndexNest& nest,
                                               const Forest& forest, const BundleOffsets& data) {
    if (!forest_covers(forest, nest)) throw domain_error("forest does not cover the nest");
    BundleModelPoint out{model, nest, forest, forest_controls(forest, nest), data.roots, {}, {}, {}};
    std::map<IndexSet, double> cumulative;
    for (const auto& I : nest.members) {
        std::vector<double> hblock;
        for (int l : out.controls.at(I))
            for (int j = 0; j < model.m; ++j) hblock.push_back(data.hoffsets.at(l)[static_cast<size_t>(j)]);
        double norm = 0;
        for (double v : hblock) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0)
            throw domain_error("vertical-only collision at " + index_set_name(I) + ": outside the bundle model");
        cumulative[I] = norm;
        for (auto& v : hblock) v /= norm;
        out.hscreens[I] = std::move(hblock);
        std::vector<double> vblock;
        for (int l : out.controls.at(I))
            for (int j = 0; j < model.d; ++j)
                vblock.push_back(data.voffsets.at(l)[static_cast<size_t>(j)] /
                                 std::pow(norm, model.vweights[static_cast<size_t>(j)]));
        out.vdata[I] = std::move(vblock);
    }
    for (const auto& I : nest.members) {
        const IndexSet* parent = nullptr;
        for (const auto& J : nest.members) {
            if (J == I || J.size() <= I.size()) continue;
            if (!std::includes(J.begin(), J.end(), I.begin(), I.end())) continue;
            if (!parent || J.size() < parent->size()) parent = &J;
        }
        out.t[I] = cumulative.at(I) / (parent ? cumulative.at(*parent) : 1.0);
    }
    return out;
}

inline BundleOffsets bundle_local_model_back(const BundleModelPoint& p) {
    BundleOffsets data;
    data.forest = p.forest;
    data.roots = p.roots;
    for (const auto& I : p.nest.members) {
        double scale = 1.0;
        for (const auto& [J, tj] : p.t)
            if (std::includes(J.begin(), J.end(), I.begin(), I.end())) scale *= tj;
        const auto& hs = p.hscreens.at(I);
        const auto& vs = p.vdata.at(I);
        size_t hi = 0, vi = 0;
        for (int l : p.controls.at(I)) {
            std::vector<double> h(static_cast<size_t>(p.model.m));
            for (int j = 0; j < p.model.m; ++j, ++hi) h[static_cast<size_t>(j)] = hs[hi] * scale;
            data.hoffsets[l] = std::move(h);
            std::vector<double> v(static_cast<size_t>(p.model.d));
            for (int j = 0; j < p.model.d; ++j, ++vi)
                v[static_cast<size_t>(j)] = vs[vi] * std::pow(scale, p.model.vweights[static_cast<size_t>(j)]);
            data.voffsets[l] = std::move(v);
        }
    }
    return data;
}

// Base projection: drop the vertical data. The result is an fm model point of
// the horizontal configuration with trivial weights.
inline FMModelPoint bundle_base_projection(const BundleModelPoint& p) {
    FMModelPoint out;
    out.s = p.nest.s;
    out.m = p.model.m;
    out.weights.assign(static_cast<size_t>(p.model.m), 1);
    out.nest = p.nest;
    out.forest = p.forest;
    out.controls = p.controls;
    for (const auto& [r, x] : p.roots)
        out.roots[r] = std::vector<double>(x.begin(), x.begin() + p.model.m);
    out.screens = p.hscreens;
    out.t = p.t;
    return out;
}

}  // namespace wbu
