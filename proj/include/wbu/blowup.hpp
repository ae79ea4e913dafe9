#pragma once

#include "wbu/arrangements.hpp"
#include "wbu/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wbu {

namespace scal {

inline Exact pow(const Exact& v, const Rat& e) { return v.pow(e); }
inline double pow(double v, const Rat& e) {
    if (rat_den(e) == 1) {
        long n = rat_num(e).convert_to<long>();
        double acc = 1.0, b = v;
        bool inv = n < 0;
        unsigned long k = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
        while (k) {
            if (k & 1) acc *= b;
            b *= b;
            k >>= 1;
        }
        return inv ? 1.0 / acc : acc;
    }
    if (v < 0) throw domain_error("fractional power of a negative value");
    return std::pow(v, to_double(e));
}
inline int sign(const Exact& v) { return v.sign(); }
inline int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace scal

// ---------------------------------------------------------------------------
// Single weighted blow-up charts on R^m for a standard weighting

struct SingleChart {
    WeightVector w;
    int h = 0;  // control column, w[h] >= 1
    int s = 1;  // +1 or -1

    SingleChart(WeightVector wv, int col, int sgn) : w(std::move(wv)), h(col), s(sgn) {
        if (h < 0 || h >= w.dim()) throw domain_error("chart column out of range");
        if (w[h] < 1) throw domain_error("chart column must carry a positive weight");
        if (s != 1 && s != -1) throw domain_error("chart sign must be +1 or -1");
    }
};

template <class S>
struct SinglePoint {
    bool divisor = false;
    std::vector<S> v;  // bulk coordinates, or weighted normal coordinates
};

// Chart coordinates of a bulk point or a divisor normal. Errors off-domain.
template <class S>
std::vector<S> single_chart_fwd(const SingleChart& c, const SinglePoint<S>& p) {
    const auto& x = p.v;
    if (static_cast<int>(x.size()) != c.w.dim()) throw domain_error("point dimension mismatch");
    S control = S(Rat(c.s)) * x[static_cast<size_t>(c.h)];
    if (scal::sign(control) <= 0)
        throw domain_error("point outside chart domain: s*x_h must be positive");
    std::vector<S> y(x.size());
    for (int i = 0; i < c.w.dim(); ++i) {
        if (i == c.h) continue;
        y[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] * scal::pow(control, Rat(-c.w[i], c.w[c.h]));
    }
    y[static_cast<size_t>(c.h)] = p.divisor ? S(Rat(0)) : scal::pow(control, Rat(1, c.w[c.h]));
    return y;
}

template <class S>
SinglePoint<S> single_chart_inv(const SingleChart& c, const std::vector<S>& y) {
    if (static_cast<int>(y.size()) != c.w.dim()) throw domain_error("point dimension mismatch");
    if (scal::sign(y[static_cast<size_t>(c.h)]) < 0) throw domain_error("corner coordinate must be non-negative");
    std::vector<S> q = y;
    q[static_cast<size_t>(c.h)] = S(Rat(c.s));
    SinglePoint<S> p;
    if (scal::sign(y[static_cast<size_t>(c.h)]) == 0) {
        p.divisor = true;
        p.v = std::move(q);
    } else {
        p.divisor = false;
        p.v = weighted_action(y[static_cast<size_t>(c.h)], q, c.w);
    }
    return p;
}

template <class S>
std::vector<S> single_blow_down(const SingleChart& c, const std::vector<S>& y) {
    if (scal::sign(y[static_cast<size_t>(c.h)]) < 0) throw domain_error("corner coordinate must be non-negative");
    std::vector<S> q = y;
    q[static_cast<size_t>(c.h)] = S(Rat(c.s));
    return weighted_action(y[static_cast<size_t>(c.h)], q, c.w);
}

// Transition between induced charts of the same standard weighting, in the
// closed form of the flat model; continuous across y_h = 0.
template <class S>
std::vector<S> single_transition(const WeightVector& w, int h, int s, int ht, int st, const std::vector<S>& y) {
    SingleChart src(w, h, s), dst(w, ht, st);
    if (scal::sign(y[static_cast<size_t>(h)]) < 0) throw domain_error("corner coordinate must be non-negative");
    if (h == ht) {
        if (s == st) return y;
        throw domain_error("opposite-sign charts on one column do not overlap");
    }
    S control = S(Rat(st)) * y[static_cast<size_t>(ht)];
    if (scal::sign(control) <= 0) throw domain_error("image outside target chart domain");
    std::vector<S> out(y.size());
    for (int i = 0; i < w.dim(); ++i) {
        if (i == ht) {
            out[static_cast<size_t>(i)] = y[static_cast<size_t>(h)] * scal::pow(control, Rat(1, w[ht]));
        } else if (i == h) {
            out[static_cast<size_t>(i)] = S(Rat(s)) * scal::pow(control, Rat(-w[h], w[ht]));
        } else {
            out[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] * scal::pow(control, Rat(-w[i], w[ht]));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Divisor classes

// Canonical representative of a positive-ray class: rescale so the first
// non-vanishing normal entry has absolute value one. Exact, so equality of
// classes is plain equality of representatives.
inline std::vector<Exact> canonical_ray(const WeightVector& w, std::vector<Exact> n) {
    int pivot = -1;
    for (int i = 0; i < w.dim(); ++i)
        if (w[i] > 0 && !n[static_cast<size_t>(i)].is_zero()) {
            pivot = i;
            break;
        }
    if (pivot < 0) throw domain_error("zero normal vector has no class");
    Exact mag = n[static_cast<size_t>(pivot)];
    if (mag.sign() < 0) mag = -mag;
    Exact lambda = mag.pow(Rat(-1, w[pivot]));
    std::vector<Exact> out(n.size());
    for (int i = 0; i < w.dim(); ++i)
        out[static_cast<size_t>(i)] = n[static_cast<size_t>(i)] * lambda.pow_i(w[i]);
    return out;
}

inline bool ray_class_equal(const WeightVector& w, const std::vector<Exact>& a, const std::vector<Exact>& b) {
    return canonical_ray(w, a) == canonical_ray(w, b);
}

// Induced blow-down between nested standard weightings (identity morphism):
// bulk by identity off the big support, divisors via the normal projection.
inline SinglePoint<Exact> induced_blowdown_nested(const WeightVector& w_small, const WeightVector& w_big,
                                                  const SinglePoint<Exact>& p) {
    if (w_small.dim() != w_big.dim()) throw domain_error("weight dimension mismatch");
    for (int i = 0; i < w_small.dim(); ++i)
        if (w_small[i] < w_big[i]) throw domain_error("identity is not a weighted morphism");
    if (!p.divisor) {
        bool on_support = true;
        for (int i = 0; i < w_big.dim(); ++i)
            if (w_big[i] > 0 && !p.v[static_cast<size_t>(i)].is_zero()) on_support = false;
        if (on_support) throw domain_error("bulk point lies on the target support: induced map undefined");
        return p;
    }
    std::vector<Exact> out(p.v.size(), Exact(Rat(0)));
    bool nonzero = false;
    for (int i = 0; i < w_big.dim(); ++i) {
        if (w_small[i] == w_big[i]) out[static_cast<size_t>(i)] = p.v[static_cast<size_t>(i)];
        if (w_big[i] > 0 && !out[static_cast<size_t>(i)].is_zero()) nonzero = true;
    }
    if (!nonzero) throw domain_error("induced normal vanishes: divisor point outside induced-map domain");
    SinglePoint<Exact> q;
    q.divisor = true;
    q.v = canonical_ray(w_big, std::move(out));
    return q;
}

// ---------------------------------------------------------------------------
// Charts for a whole weighted building set

struct Perspective {
    std::vector<std::string> nest;
    std::map<std::string, int> h;
    std::map<std::string, int> s;
};

// Validated good perspective over a coordinate-form building set.
class ChartContext {
  public:
    ChartContext(const BuildingSet& bs, const Perspective& p) : bs_(&bs) {
        if (!check_separated(bs).separated)
            throw domain_error("chart construction refused: building set is not separated");
        for (const auto& name : p.nest) nest_.push_back(bs.index_of(name));
        if (!is_nest(bs, nest_)) throw domain_error("chart construction refused: not a nest");
        {
            std::vector<WeightVector> ws;
            for (int i : nest_) ws.push_back(bs[i].induced_weights());
            auto chk = check_uniform_alignment(ws);
            if (!chk.ok)
                throw domain_error("chart construction refused: nest not uniformly aligned at column " +
                                   std::to_string(chk.column));
            weights_ = std::move(ws);
        }
        for (size_t k = 0; k < nest_.size(); ++k) {
            const auto& name = p.nest[k];
            auto ih = p.h.find(name);
            auto is = p.s.find(name);
            if (ih == p.h.end() || is == p.s.end())
                throw domain_error("perspective misses h or s for " + name);
            if (is->second != 1 && is->second != -1) throw domain_error("sign must be +1 or -1");
            h_.push_back(ih->second);
            s_.push_back(is->second);
        }
        for (size_t k = 0; k < nest_.size(); ++k) {
            int col = h_[k];
            if (col < 0 || col >= bs.dim) throw domain_error("control column out of range");
            if (weights_[k][col] == 0)
                throw domain_error("control column " + std::to_string(col) + " is not normal to " + name_of(k));
            for (size_t o = 0; o < nest_.size(); ++o) {
                if (o == k || weights_[o][col] == 0) continue;
                if (!bs.contains(nest_[k], nest_[o]))
                    throw domain_error("column " + std::to_string(col) + " of " + name_of(k) +
                                       " is not the topmost box (shadowed by " + name_of(o) + ")");
            }
            for (size_t o = 0; o < k; ++o)
                if (h_[o] == col) throw domain_error("control columns must be distinct");
        }
    }

    const BuildingSet& building_set() const { return *bs_; }
    int dim() const { return bs_->dim; }
    size_t nest_size() const { return nest_.size(); }
    int k2i(size_t k) const { return nest_[k]; }
    const std::string& name_of(size_t k) const { return (*bs_)[nest_[k]].name; }
    const WeightVector& weight_of(size_t k) const { return weights_[k]; }
    int h_of(size_t k) const { return h_[k]; }
    int s_of(size_t k) const { return s_[k]; }

    // position in the nest of the element with control column `col`, if any
    std::optional<size_t> owner_of_column(int col) const {
        for (size_t k = 0; k < nest_.size(); ++k)
            if (h_[k] == col) return k;
        return std::nullopt;
    }

    bool nest_contains(size_t outer, size_t inner) const {  // submanifold containment
        return bs_->contains(nest_[outer], nest_[inner]);
    }

    // selector: largest nest element normal to column i whose control column is not i
    std::optional<size_t> selector(int i) const {
        std::optional<size_t> best;
        for (size_t k = 0; k < nest_.size(); ++k) {
            if (weights_[k][i] == 0 || h_[k] == i) continue;
            if (!best) {
                best = k;
            } else if (nest_contains(k, *best)) {
                best = k;
            } else if (!nest_contains(*best, k)) {
                throw domain_error("selector tie: column " + std::to_string(i) + " has incomparable boxes");
            }
        }
        return best;
    }

  private:
    const BuildingSet* bs_;
    std::vector<int> nest_;
    std::vector<WeightVector> weights_;
    std::vector<int> h_;
    std::vector<int> s_;
};

// x_{i:N} as a monomial in the control parameters times y_i or a sign.
struct CoordFormula {
    std::vector<int> exps;  // exponent on t_N per nest position
    int var = -1;           // tail y_var, or
    int sign = 0;           // tail constant sign (+1/-1), or 1 with var == -1 for pure products
};

// N_pos == npos means the blown-down coordinate x_{i:empty}.
inline CoordFormula component_formula(const ChartContext& ctx, int i, size_t N_pos) {
    constexpr size_t npos = static_cast<size_t>(-1);
    CoordFormula f;
    f.exps.assign(ctx.nest_size(), 0);
    if (N_pos != npos && ctx.h_of(N_pos) == i) {
        for (size_t k = 0; k < ctx.nest_size(); ++k)
            if (k == N_pos || ctx.nest_contains(N_pos, k)) f.exps[k] = 1;
        f.var = -1;
        f.sign = 1;
        return f;
    }
    bool tangent = N_pos == npos || ctx.weight_of(N_pos)[i] == 0;
    for (size_t k = 0; k < ctx.nest_size(); ++k) {
        if (k == N_pos) continue;
        bool include = tangent || (ctx.nest_contains(k, N_pos) && k != N_pos);
        if (include) f.exps[k] = ctx.weight_of(k)[i];
    }
    if (auto owner = ctx.owner_of_column(i); owner && *owner != N_pos) {
        f.var = -1;
        f.sign = ctx.s_of(*owner);
    } else {
        f.var = i;
        f.sign = 0;
    }
    return f;
}

inline Exact eval_formula(const CoordFormula& f, const std::vector<Exact>& y, const ChartContext& ctx) {
    Exact acc(Rat(1));
    for (size_t k = 0; k < f.exps.size(); ++k)
        if (f.exps[k] != 0) acc *= y[static_cast<size_t>(ctx.h_of(k))].pow_i(f.exps[k]);
    if (f.var >= 0) return acc * y[static_cast<size_t>(f.var)];
    return acc * Exact(Rat(f.sign));
}

inline void check_corner(const ChartContext& ctx, const std::vector<Exact>& y) {
    if (static_cast<int>(y.size()) != ctx.dim()) throw domain_error("corner point dimension mismatch");
    for (size_t k = 0; k < ctx.nest_size(); ++k)
        if (y[static_cast<size_t>(ctx.h_of(k))].sign() < 0)
            throw domain_error("control parameter of " + ctx.name_of(k) + " must be non-negative");
}

// Full table { (i, N) -> value } including N = empty (the blow-down row).
struct ComponentCoords {
    std::vector<std::vector<Exact>> per_nest;  // nest position -> m values
    std::vector<Exact> blow_down;              // x_{i:empty}
};

inline ComponentCoords component_coords(const ChartContext& ctx, const std::vector<Exact>& y) {
    check_corner(ctx, y);
    ComponentCoords out;
    out.per_nest.resize(ctx.nest_size());
    for (size_t k = 0; k < ctx.nest_size(); ++k) {
        out.per_nest[k].resize(static_cast<size_t>(ctx.dim()));
        for (int i = 0; i < ctx.dim(); ++i)
            out.per_nest[k][static_cast<size_t>(i)] = eval_formula(component_formula(ctx, i, k), y, ctx);
    }
    out.blow_down.resize(static_cast<size_t>(ctx.dim()));
    for (int i = 0; i < ctx.dim(); ++i)
        out.blow_down[static_cast<size_t>(i)] =
            eval_formula(component_formula(ctx, i, static_cast<size_t>(-1)), y, ctx);
    return out;
}

inline std::vector<Exact> building_blow_down(const ChartContext& ctx, const std::vector<Exact>& y) {
    check_corner(ctx, y);
    std::vector<Exact> x(static_cast<size_t>(ctx.dim()));
    for (int i = 0; i < ctx.dim(); ++i)
        x[static_cast<size_t>(i)] = eval_formula(component_formula(ctx, i, static_cast<size_t>(-1)), y, ctx);
    return x;
}

// Control set in a chart: the nest elements whose control parameter vanishes.
inline std::vector<std::string> control_set(const ChartContext& ctx, const std::vector<Exact>& y) {
    check_corner(ctx, y);
    std::vector<std::string> out;
    for (size_t k = 0; k < ctx.nest_size(); ++k)
        if (y[static_cast<size_t>(ctx.h_of(k))].is_zero()) out.push_back(ctx.name_of(k));
    return out;
}

// Smooth-embedding failure: a nested pair in the control set whose outer
// element carries weight > 1 on its own control column.
inline bool weak_singularity(const ChartContext& ctx, const std::vector<Exact>& y) {
    check_corner(ctx, y);
    std::vector<size_t> ctrl;
    for (size_t k = 0; k < ctx.nest_size(); ++k)
        if (y[static_cast<size_t>(ctx.h_of(k))].is_zero()) ctrl.push_back(k);
    for (size_t a : ctrl)
        for (size_t b : ctrl) {
            if (a == b) continue;
            // a strictly inside b as submanifolds
            if (ctx.nest_contains(b, a) && ctx.weight_of(b)[ctx.h_of(b)] > 1) return true;
        }
    return false;
}

// One component of a point of the building-set blow-up.
struct Component {
    bool divisor = false;
    std::vector<Exact> v;  // bulk coordinates, or canonical divisor representative
};

struct BlowupPoint {
    std::map<std::string, Component> comps;  // keyed by building-set element name
};

inline bool component_equal(const WeightVector& w, const Component& a, const Component& b) {
    if (a.divisor != b.divisor) return false;
    if (!a.divisor) return a.v == b.v;
    return ray_class_equal(w, a.v, b.v);
}

inline std::vector<Exact> divisor_base_point(const WeightVector& w, const std::vector<Exact>& n) {
    std::vector<Exact> x(n.size(), Exact(Rat(0)));
    for (int i = 0; i < w.dim(); ++i)
        if (w[i] == 0) x[static_cast<size_t>(i)] = n[static_cast<size_t>(i)];
    return x;
}

// Reconstruct the full tuple of components from corner coordinates.
inline BlowupPoint building_chart_inv(const ChartContext& ctx, const std::vector<Exact>& y) {
    ComponentCoords table = component_coords(ctx, y);
    const BuildingSet& bs = ctx.building_set();
    BlowupPoint p;
    std::vector<std::optional<SinglePoint<Exact>>> nest_points(ctx.nest_size());
    for (size_t k = 0; k < ctx.nest_size(); ++k) {
        SingleChart c(ctx.weight_of(k), ctx.h_of(k), ctx.s_of(k));
        SinglePoint<Exact> sp = single_chart_inv(c, table.per_nest[k]);
        if (sp.divisor) sp.v = canonical_ray(ctx.weight_of(k), sp.v);
        nest_points[k] = sp;
        Component comp;
        comp.divisor = sp.divisor;
        comp.v = sp.v;
        p.comps[ctx.name_of(k)] = std::move(comp);
    }
    const std::vector<Exact>& base = table.blow_down;
    // components over elements outside the nest
    for (int g = 0; g < bs.size(); ++g) {
        bool in_nest = false;
        for (size_t k = 0; k < ctx.nest_size(); ++k)
            if (ctx.k2i(k) == g) in_nest = true;
        if (in_nest) continue;
        WeightVector wg = bs[g].induced_weights();
        bool on_support = true;
        for (int i = 0; i < wg.dim(); ++i)
            if (wg[i] > 0 && !base[static_cast<size_t>(i)].is_zero()) on_support = false;
        if (!on_support) {
            Component comp;
            comp.divisor = false;
            comp.v = base;
            p.comps[bs[g].name] = std::move(comp);
            continue;
        }
        // base lies on g: induce from the smallest nest element inside g
        std::vector<size_t> candidates;
        for (size_t k = 0; k < ctx.nest_size(); ++k)
            if (bs.contains(g, ctx.k2i(k)) && nest_points[k]->divisor) candidates.push_back(k);
        std::sort(candidates.begin(), candidates.end(), [&](size_t a, size_t b) {
            return bs[ctx.k2i(a)].space.codim() > bs[ctx.k2i(b)].space.codim();
        });
        bool done = false;
        for (size_t k : candidates) {
            try {
                SinglePoint<Exact> ind = induced_blowdown_nested(ctx.weight_of(k), wg, *nest_points[k]);
                Component comp;
                comp.divisor = true;
                comp.v = ind.v;
                p.comps[bs[g].name] = std::move(comp);
                done = true;
                break;
            } catch (const domain_error&) {
                continue;
            }
        }
        if (!done)
            throw domain_error("outside chart domain: no nest component determines " + bs[g].name);
    }
    return p;
}

// Corner coordinates of a point of the blow-up. Errors when the point is
// outside the chart domain or its components are inconsistent.
inline std::vector<Exact> building_chart_fwd(const ChartContext& ctx, const BlowupPoint& p) {
    const BuildingSet& bs = ctx.building_set();
    if (static_cast<int>(p.comps.size()) != bs.size())
        throw domain_error("point must carry one component per building-set element");
    // common base point
    std::optional<std::vector<Exact>> base;
    for (int g = 0; g < bs.size(); ++g) {
        const auto& comp = p.comps.at(bs[g].name);
        std::vector<Exact> b = comp.divisor ? divisor_base_point(bs[g].induced_weights(), comp.v) : comp.v;
        if (!base) {
            base = b;
        } else if (!(*base == b)) {
            throw domain_error("components disagree on the base point at " + bs[g].name);
        }
    }
    // nest components must lie in their chart domains
    for (size_t k = 0; k < ctx.nest_size(); ++k) {
        const auto& comp = p.comps.at(ctx.name_of(k));
        Exact ctrl = Exact(Rat(ctx.s_of(k))) * comp.v[static_cast<size_t>(ctx.h_of(k))];
        if (ctrl.sign() <= 0)
            throw domain_error("component " + ctx.name_of(k) + " outside its chart domain");
    }
    // components outside the nest must be determined by the nest data
    for (int g = 0; g < bs.size(); ++g) {
        bool in_nest = false;
        for (size_t k = 0; k < ctx.nest_size(); ++k)
            if (ctx.k2i(k) == g) in_nest = true;
        if (in_nest) continue;
        WeightVector wg = bs[g].induced_weights();
        const auto& comp = p.comps.at(bs[g].name);
        bool on_support = true;
        for (int i = 0; i < wg.dim(); ++i)
            if (wg[i] > 0 && !(*base)[static_cast<size_t>(i)].is_zero()) on_support = false;
        if (!on_support) {
            if (comp.divisor || !(comp.v == *base))
                throw domain_error("component " + bs[g].name + " must be the blown-down base point");
            continue;
        }
        bool determined = false;
        for (size_t k = 0; k < ctx.nest_size() && !determined; ++k) {
            if (!bs.contains(g, ctx.k2i(k))) continue;
            const auto& small = p.comps.at(ctx.name_of(k));
            SinglePoint<Exact> sp;
            sp.divisor = small.divisor;
            sp.v = small.v;
            try {
                SinglePoint<Exact> ind = induced_blowdown_nested(ctx.weight_of(k), wg, sp);
                Component expect;
                expect.divisor = ind.divisor;
                expect.v = ind.v;
                if (component_equal(wg, expect, comp)) determined = true;
            } catch (const domain_error&) {
            }
        }
        if (!determined)
            throw domain_error("outside chart domain: component " + bs[g].name +
                               " is not induced from the nest");
    }
    std::vector<Exact> y(static_cast<size_t>(ctx.dim()));
    for (int i = 0; i < ctx.dim(); ++i) {
        auto mu = ctx.selector(i);
        Exact xi;
        if (!mu) {
            xi = (*base)[static_cast<size_t>(i)];
        } else {
            const auto& comp = p.comps.at(ctx.name_of(*mu));
            SingleChart c(ctx.weight_of(*mu), ctx.h_of(*mu), ctx.s_of(*mu));
            SinglePoint<Exact> sp;
            sp.divisor = comp.divisor;
            sp.v = comp.v;
            xi = single_chart_fwd(c, sp)[static_cast<size_t>(i)];
        }
        if (auto owner = ctx.owner_of_column(i)) {
            Exact v = Exact(Rat(ctx.s_of(*owner))) * xi;
            if (v.sign() < 0)
                throw domain_error("point outside chart domain: negative control data in column " +
                                   std::to_string(i));
            y[static_cast<size_t>(i)] = v.pow(Rat(1, ctx.weight_of(*owner)[i]));
        } else {
            y[static_cast<size_t>(i)] = xi;
        }
    }
    return y;
}

// Transition between two perspectives over the same building set, by full
// reconstruction through the blow-up point.
inline std::vector<Exact> building_transition(const ChartContext& from, const std::vector<Exact>& y,
                                              const ChartContext& to) {
    if (from.building_set().dim != to.building_set().dim)
        throw domain_error("transition requires charts over one building set");
    return building_chart_fwd(to, building_chart_inv(from, y));
}

// ---------------------------------------------------------------------------
// Projective quotient

// Unit-norm canonical representative of a projective class: rescale the normal
// entries to Euclidean norm one, then pick the lexicographically larger of the
// representative and its (-1)-image. Numeric: the normalization is a root of a
// mixed-degree equation.
inline std::vector<double> projective_canonicalize(const WeightVector& w, const std::vector<double>& n) {
    double norm2 = 0;
    for (int i = 0; i < w.dim(); ++i)
        if (w[i] > 0) norm2 += n[static_cast<size_t>(i)] * n[static_cast<size_t>(i)];
    if (norm2 == 0) throw domain_error("zero normal vector has no class");
    // solve sum (lambda^{w_i} n_i)^2 = 1; strictly increasing in lambda
    auto val = [&](double lam) {
        double s = 0;
        for (int i = 0; i < w.dim(); ++i)
            if (w[i] > 0) s += std::pow(lam, 2 * w[i]) * n[static_cast<size_t>(i)] * n[static_cast<size_t>(i)];
        return s - 1.0;
    };
    double lo = 0, hi = 1;
    while (val(hi) < 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (val(mid) < 0 ? lo : hi) = mid;
    }
    double lam = 0.5 * (lo + hi);
    std::vector<double> rep(n.size());
    for (int i = 0; i < w.dim(); ++i)
        rep[static_cast<size_t>(i)] = std::pow(lam, w[i]) * n[static_cast<size_t>(i)];
    std::vector<double> mirror(rep);
    for (int i = 0; i < w.dim(); ++i)
        if (w[i] % 2 == 1) mirror[static_cast<size_t>(i)] = -mirror[static_cast<size_t>(i)];
    return std::max(rep, mirror);
}

// Orbifold singularity of a projective class: supported entirely on even-weight
// normal directions (and such a direction exists). Scale invariant, so any
// representative decides it.
template <class S>
bool projective_is_singular(const WeightVector& w, const std::vector<S>& n) {
    bool has_even = false;
    for (int i = 0; i < w.dim(); ++i) {
        if (w[i] == 0) continue;
        if (w[i] % 2 == 0) has_even = true;
        if (w[i] % 2 == 1 && scal::sign(S(n[static_cast<size_t>(i)])) != 0) return false;
    }
    return has_even;
}

}  // namespace wbu
