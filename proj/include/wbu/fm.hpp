#pragma once

#include "wbu/arrangements.hpp"
#include "wbu/fm_combinatorics.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wbu {

// Configuration of s points in R^m.
template <class S>
using Config = std::vector<std::vector<S>>;

// Roots carry their own coordinates, children carry offsets to their parent.
template <class S>
struct OffsetData {
    Forest forest;
    std::map<int, std::vector<S>> roots;    // root label -> coordinates
    std::map<int, std::vector<S>> offsets;  // child label -> x_child - x_parent
};

template <class S>
OffsetData<S> offset_fwd(const Forest& forest, const Config<S>& config) {
    if (static_cast<int>(config.size()) != forest.s) throw domain_error("configuration size mismatch");
    OffsetData<S> out;
    out.forest = forest;
    for (int i = 0; i < forest.s; ++i) {
        if (forest.is_root(i)) {
            out.roots[i] = config[static_cast<size_t>(i)];
        } else {
            int p = forest.parent[static_cast<size_t>(i)];
            std::vector<S> d(config[static_cast<size_t>(i)].size());
            for (size_t j = 0; j < d.size(); ++j)
                d[j] = config[static_cast<size_t>(i)][j] - config[static_cast<size_t>(p)][j];
            out.offsets[i] = std::move(d);
        }
    }
    return out;
}

template <class S>
Config<S> offset_inv(const OffsetData<S>& data) {
    Config<S> config(static_cast<size_t>(data.forest.s));
    for (int i : data.forest.top_down()) {
        if (data.forest.is_root(i)) {
            config[static_cast<size_t>(i)] = data.roots.at(i);
        } else {
            int p = data.forest.parent[static_cast<size_t>(i)];
            const auto& d = data.offsets.at(i);
            std::vector<S> x(d.size());
            for (size_t j = 0; j < d.size(); ++j) x[j] = config[static_cast<size_t>(p)][j] + d[j];
            config[static_cast<size_t>(i)] = std::move(x);
        }
    }
    return config;
}

// Point of the Fulton-MacPherson local model: roots, one unit screen per nest
// member over its controls, and non-negative control parameters.
struct FMModelPoint {
    int s = 0;
    int m = 0;
    std::vector<int> weights;  // length m, entries >= 1
    IndexNest nest;
    Forest forest;
    std::map<IndexSet, IndexSet> controls;
    std::map<int, std::vector<double>> roots;
    std::map<IndexSet, std::vector<double>> screens;  // row-major over controls x coordinates
    std::map<IndexSet, double> t;
};

namespace detail {

// unique mu > 0 with |mu^{-1} . v| = 1 under the weighted action; strictly
// monotone, solved by bisection refined with Newton steps
inline double weighted_unit_scale(const std::vector<double>& v, const std::vector<int>& weights_per_entry) {
    double norm2 = 0;
    for (double x : v) norm2 += x * x;
    if (norm2 == 0) throw domain_error("cannot normalize a zero block");
    auto f = [&](double mu) {
        double s = 0;
        for (size_t i = 0; i < v.size(); ++i)
            s += v[i] * v[i] / std::pow(mu, 2 * weights_per_entry[i]);
        return s - 1.0;
    };
    double lo = 1e-300, hi = 1.0;
    while (f(hi) > 0) hi *= 2;
    while (f(lo) < 0 && lo < 1) lo = std::min(1.0, lo * 1e6);
    if (f(lo) < 0) lo = 1e-300;
    for (int it = 0; it < 120; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? lo : hi) = mid;
    }
    double mu = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {  // Newton polish
        double val = f(mu), der = 0;
        for (size_t i = 0; i < v.size(); ++i)
            der += -2.0 * weights_per_entry[i] * v[i] * v[i] / std::pow(mu, 2 * weights_per_entry[i] + 1);
        if (der == 0) break;
        double next = mu - val / der;
        if (next > 0 && std::isfinite(next)) mu = next;
    }
    return mu;
}

inline std::vector<int> block_weights(int m, const std::vector<int>& weights, size_t controls) {
    std::vector<int> out;
    for (size_t c = 0; c < controls; ++c)
        for (int j = 0; j < m; ++j) out.push_back(weights[static_cast<size_t>(j)]);
    return out;
}

}  // namespace detail

// Chart of the local model on a bulk configuration: every screen block must be
// non-zero (no collided pair within a nest member grouping).
inline FMModelPoint fm_chart(const std::vector<int>& weights, const IndexNest& nest, const Forest& forest,
                             const Config<double>& config) {
    int s = nest.s;
    int m = static_cast<int>(weights.size());
    for (int w : weights)
        if (w < 1) throw domain_error("model weights must be positive");
    if (!forest_covers(forest, nest)) throw domain_error("forest does not cover the nest");
    FMModelPoint out;
    out.s = s;
    out.m = m;
    out.weights = weights;
    out.nest = nest;
    out.forest = forest;
    out.controls = forest_controls(forest, nest);
    auto data = offset_fwd(forest, config);
    for (const auto& [r, x] : data.roots) out.roots[r] = x;
    // cumulative scale per member: product of t over all members containing it
    std::map<IndexSet, double> cumulative;
    for (const auto& I : nest.members) {
        std::vector<double> block;
        for (int l : out.controls.at(I))
            for (int j = 0; j < m; ++j) block.push_back(data.offsets.at(l)[static_cast<size_t>(j)]);
        if (block.empty()) throw domain_error("nest member without controls");
        bool zero = true;
        for (double x : block)
            if (x != 0) zero = false;
        if (zero) throw domain_error("coinciding points: screen block of " + index_set_name(I) + " vanishes");
        double mu = detail::weighted_unit_scale(block, detail::block_weights(m, weights, out.controls.at(I).size()));
        cumulative[I] = mu;
        std::vector<double> screen(block.size());
        size_t idx = 0;
        for (size_t c = 0; c < out.controls.at(I).size(); ++c)
            for (int j = 0; j < m; ++j, ++idx)
                screen[idx] = block[idx] / std::pow(mu, weights[static_cast<size_t>(j)]);
        out.screens[I] = std::move(screen);
    }
    for (const auto& I : nest.members) {
        // parent in the nest: smallest strict superset
        const IndexSet* parent = nullptr;
        for (const auto& J : nest.members) {
            if (J == I || J.size() <= I.size()) continue;
            if (!std::includes(J.begin(), J.end(), I.begin(), I.end())) continue;
            if (!parent || J.size() < parent->size()) parent = &J;
        }
        double denom = parent ? cumulative.at(*parent) : 1.0;
        out.t[I] = cumulative.at(I) / denom;
    }
    return out;
}

// Blow-down: scale each screen by the product of controls of enclosing members
// and recompose offsets top-down.
inline Config<double> fm_blow_down(const FMModelPoint& p) {
    OffsetData<double> data;
    data.forest = p.forest;
    data.roots = p.roots;
    for (const auto& [I, screen] : p.screens) {
        double scale = 1.0;
        for (const auto& [J, tj] : p.t)
            if (std::includes(J.begin(), J.end(), I.begin(), I.end())) scale *= tj;
        size_t idx = 0;
        for (int l : p.controls.at(I)) {
            std::vector<double> d(static_cast<size_t>(p.m));
            for (int j = 0; j < p.m; ++j, ++idx)
                d[static_cast<size_t>(j)] = screen[idx] * std::pow(scale, p.weights[static_cast<size_t>(j)]);
            data.offsets[l] = std::move(d);
        }
    }
    return offset_inv(data);
}

// ---------------------------------------------------------------------------
// Collision limits of polynomial curves

// s curves t -> R^m with rational coefficients, one polynomial in t per
// coordinate: coefficient of t^e at [point][coord][e].
using CurveFamily = std::vector<std::vector<std::vector<Rat>>>;

namespace detail {

inline int poly_order(const std::vector<Rat>& p) {  // t-adic valuation, -1 for zero
    for (size_t e = 0; e < p.size(); ++e)
        if (p[e] != 0) return static_cast<int>(e);
    return -1;
}

inline std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
    for (size_t e = 0; e < a.size(); ++e) r[e] += a[e];
    for (size_t e = 0; e < b.size(); ++e) r[e] -= b[e];
    return r;
}

// weighted vanishing order of the offset between two curve points: min over
// coordinates of ord_i / w_i; nullopt when identically equal
inline std::optional<Rat> pair_order(const CurveFamily& curves, const std::vector<int>& weights, int k, int l) {
    std::optional<Rat> kappa;
    for (size_t j = 0; j < weights.size(); ++j) {
        auto diff = poly_sub(curves[static_cast<size_t>(k)][j], curves[static_cast<size_t>(l)][j]);
        int ord = poly_order(diff);
        if (ord < 0) continue;  // coordinate identically equal
        Rat val = Rat(ord) / weights[j];
        if (!kappa || val < *kappa) kappa = val;
    }
    return kappa;  // nullopt: all coordinates identically equal
}

}  // namespace detail

// Limit of a family of polynomial curves as t -> 0+, detected from weighted
// vanishing orders of pairwise offsets. All detected controls are zero.
inline FMModelPoint curve_limit(const std::vector<int>& weights, const CurveFamily& curves) {
    int s = static_cast<int>(curves.size());
    int m = static_cast<int>(weights.size());
    if (s < 1) throw domain_error("empty curve family");
    for (const auto& c : curves)
        if (static_cast<int>(c.size()) != m) throw domain_error("curve coordinate count mismatch");
    // pairwise collision rates
    std::map<std::pair<int, int>, Rat> kappa;
    std::set<Rat> thresholds;
    for (int k = 0; k < s; ++k)
        for (int l = k + 1; l < s; ++l) {
            auto ord = detail::pair_order(curves, weights, k, l);
            if (!ord) throw domain_error("points " + std::to_string(k + 1) + " and " + std::to_string(l + 1) +
                                         " are permanently collided");
            if (*ord > 0) {
                kappa[{k, l}] = *ord;
                thresholds.insert(*ord);
            }
        }
    // nest members: classes of the relation kappa >= tau at every threshold
    std::set<IndexSet> members;
    for (const Rat& tau : thresholds) {
        std::vector<int> cls(static_cast<size_t>(s), -1);
        int nc = 0;
        for (int k = 0; k < s; ++k) {
            if (cls[static_cast<size_t>(k)] >= 0) continue;
            cls[static_cast<size_t>(k)] = nc;
            for (int l = k + 1; l < s; ++l) {
                auto it = kappa.find({k, l});
                if (it != kappa.end() && it->second >= tau) cls[static_cast<size_t>(l)] = nc;
            }
            ++nc;
        }
        for (int c = 0; c < nc; ++c) {
            IndexSet I;
            for (int k = 0; k < s; ++k)
                if (cls[static_cast<size_t>(k)] == c) I.push_back(k);
            if (I.size() >= 2) members.insert(I);
        }
    }
    IndexNest nest(s, std::vector<IndexSet>(members.begin(), members.end()));
    auto cover = covering_forest(nest);

    FMModelPoint out;
    out.s = s;
    out.m = m;
    out.weights = weights;
    out.nest = nest;
    out.forest = cover.forest;
    out.controls = cover.controls;
    for (int r = 0; r < s; ++r) {
        if (!cover.forest.is_root(r)) continue;
        std::vector<double> x(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            x[static_cast<size_t>(j)] = curves[static_cast<size_t>(r)][static_cast<size_t>(j)].empty()
                                            ? 0.0
                                            : to_double(curves[static_cast<size_t>(r)][static_cast<size_t>(j)][0]);
        out.roots[r] = std::move(x);
    }
    for (const auto& I : nest.members) {
        // collision rate of the member: minimum pair rate inside it
        Rat rate;
        bool first = true;
        for (size_t a = 0; a < I.size(); ++a)
            for (size_t b = a + 1; b < I.size(); ++b) {
                const Rat& v = kappa.at({std::min(I[a], I[b]), std::max(I[a], I[b])});
                if (first || v < rate) {
                    rate = v;
                    first = false;
                }
            }
        // leading offset coefficients at order rate * w_j per coordinate
        std::vector<double> block;
        for (int l : cover.controls.at(I)) {
            int parent = cover.forest.parent[static_cast<size_t>(l)];
            for (int j = 0; j < m; ++j) {
                auto diff = detail::poly_sub(curves[static_cast<size_t>(l)][static_cast<size_t>(j)],
                                             curves[static_cast<size_t>(parent)][static_cast<size_t>(j)]);
                Rat target = rate * weights[static_cast<size_t>(j)];
                Rat lead(0);
                if (rat_den(target) == 1) {
                    size_t e = rat_num(target).convert_to<size_t>();
                    if (e < diff.size()) lead = diff[e];
                }
                block.push_back(to_double(lead));
            }
        }
        double mu = detail::weighted_unit_scale(block, detail::block_weights(m, weights, cover.controls.at(I).size()));
        std::vector<double> screen(block.size());
        size_t idx = 0;
        for (size_t c = 0; c < cover.controls.at(I).size(); ++c)
            for (int j = 0; j < m; ++j, ++idx)
                screen[idx] = block[idx] / std::pow(mu, weights[static_cast<size_t>(j)]);
        out.screens[I] = std::move(screen);
        out.t[I] = 0.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Induced building set in offset coordinates

// One weighted coordinate subspace of R^(s*m) per nest member: the offsets of
// its non-root labels vanish, with the model weights per coordinate.
inline BuildingSet induced_diag_building_set(const std::vector<int>& weights, const IndexNest& nest,
                                             const Forest& forest) {
    if (!forest_covers(forest, nest)) throw domain_error("forest does not cover the nest");
    int m = static_cast<int>(weights.size());
    std::vector<WeightedSubspace> elems;
    for (const auto& I : nest.members) {
        int root = forest.subtree_root(I);
        std::vector<int> zeros;
        std::map<int, int> ws;
        for (int l : I) {
            if (l == root) continue;
            for (int j = 0; j < m; ++j) {
                zeros.push_back(l * m + j);
                ws[l * m + j] = weights[static_cast<size_t>(j)];
            }
        }
        elems.push_back(make_coord_subspace(index_set_name(I), nest.s * m, std::move(zeros), std::move(ws)));
    }
    return make_building_set(nest.s * m, std::move(elems));
}

// ---------------------------------------------------------------------------
// Projective model and screens

struct FMProjectivePoint {
    FMModelPoint point;
    std::map<IndexSet, bool> singular;  // Z_2-fixed screens at t = 0
};

// Identify (screen, t) with ((-1)^w . screen, -t); canonical representative has
// t >= 0 and, at t = 0, the lexicographically larger screen.
inline FMProjectivePoint fm_projective_canonicalize(const FMModelPoint& p) {
    FMProjectivePoint out;
    out.point = p;
    for (auto& [I, screen] : out.point.screens) {
        std::vector<double> mirror(screen);
        size_t idx = 0;
        for (size_t c = 0; c < out.point.controls.at(I).size(); ++c)
            for (int j = 0; j < out.point.m; ++j, ++idx)
                if (out.point.weights[static_cast<size_t>(j)] % 2 == 1) mirror[idx] = -mirror[idx];
        double& t = out.point.t.at(I);
        if (t < 0) {
            t = -t;
            screen = mirror;
        } else if (t == 0) {
            screen = std::max(screen, mirror);
        }
        // recompute the mirror of the canonical representative for the flag
        std::vector<double> mirror2(screen);
        idx = 0;
        for (size_t c = 0; c < out.point.controls.at(I).size(); ++c)
            for (int j = 0; j < out.point.m; ++j, ++idx)
                if (out.point.weights[static_cast<size_t>(j)] % 2 == 1) mirror2[idx] = -mirror2[idx];
        out.singular[I] = (t == 0) && (mirror2 == screen);
    }
    return out;
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Per-collision-site tree listing of roots and screens.
inline std::string screens_render(const FMModelPoint& p) {
    std::ostringstream os;
    for (int r = 0; r < p.s; ++r) {
        if (!p.forest.is_root(r)) continue;
        os << "site at point " << (r + 1) << ": (";
        const auto& x = p.roots.at(r);
        for (size_t j = 0; j < x.size(); ++j) os << (j ? ", " : "") << format_double(x[j]);
        os << ")\n";
        // members rooted here, outermost first
        std::vector<const IndexSet*> here;
        for (const auto& I : p.nest.members)
            if (p.forest.subtree_root(I) == r) here.push_back(&I);
        std::sort(here.begin(), here.end(),
                  [](const IndexSet* a, const IndexSet* b) { return a->size() > b->size(); });
        for (const IndexSet* I : here) {
            os << "  screen " << index_set_name(*I) << " (t=" << format_double(p.t.at(*I)) << "):";
            const auto& ct = p.controls.at(*I);
            const auto& screen = p.screens.at(*I);
            size_t idx = 0;
            for (size_t c = 0; c < ct.size(); ++c) {
                os << "  d" << (ct[c] + 1) << "=(";
                for (int j = 0; j < p.m; ++j, ++idx) os << (j ? ", " : "") << format_double(screen[idx]);
                os << ")";
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace wbu
