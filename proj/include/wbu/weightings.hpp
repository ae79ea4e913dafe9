#pragma once

#include "wbu/jets.hpp"

#include <functional>
#include <map>
#include <set>
#include <vector>

namespace wbu {

using MultiIndex = std::vector<int>;

inline long weighted_degree(const MultiIndex& a, const WeightVector& w) {
    long d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += static_cast<long>(a[i]) * w[static_cast<int>(i)];
    return d;
}

inline bool divides(const MultiIndex& a, const MultiIndex& b) {  // a | b componentwise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

namespace detail {

template <class F>
void enumerate_support_indices(const WeightVector& w, const std::vector<int>& bounds, F&& visit) {
    MultiIndex a(static_cast<size_t>(w.dim()), 0);
    size_t n = a.size();
    while (true) {
        visit(a);
        size_t k = 0;
        for (; k < n; ++k) {
            if (w[static_cast<int>(k)] == 0) continue;
            if (a[k] < bounds[k]) {
                ++a[k];
                break;
            }
            a[k] = 0;
        }
        if (k == n) break;
    }
}

}  // namespace detail

// Minimal multi-indices a with a.w >= i and a_j = 0 whenever w_j = 0.
// These generate degree i of the structure filtration of the standard weighting.
inline std::set<MultiIndex> filtration_generators(const WeightVector& w, int i) {
    std::set<MultiIndex> out;
    if (i <= 0) {
        out.insert(MultiIndex(static_cast<size_t>(w.dim()), 0));
        return out;
    }
    std::vector<int> bounds(static_cast<size_t>(w.dim()), 0);
    bool any = false;
    for (int j = 0; j < w.dim(); ++j)
        if (w[j] > 0) {
            bounds[static_cast<size_t>(j)] = (i + w[j] - 1) / w[j];
            any = true;
        }
    if (!any) return out;  // all weights zero: no generators at positive degree
    std::vector<MultiIndex> hits;
    detail::enumerate_support_indices(w, bounds, [&](const MultiIndex& a) {
        if (weighted_degree(a, w) >= i) hits.push_back(a);
    });
    for (const auto& a : hits) {
        bool minimal = true;
        for (size_t j = 0; j < a.size() && minimal; ++j) {
            if (a[j] == 0) continue;
            MultiIndex b = a;
            --b[j];
            if (weighted_degree(b, w) >= i) minimal = false;
        }
        if (minimal) out.insert(a);
    }
    return out;
}

// Basis multi-indices of the degree-i weighted conormal bundle:
// a.w == i exactly, supported on the normal coordinates.
inline std::set<MultiIndex> conormal_basis(const WeightVector& w, int i) {
    std::set<MultiIndex> out;
    if (i <= 0) return out;
    std::vector<int> bounds(static_cast<size_t>(w.dim()), 0);
    for (int j = 0; j < w.dim(); ++j)
        if (w[j] > 0) bounds[static_cast<size_t>(j)] = i / w[j];
    detail::enumerate_support_indices(w, bounds, [&](const MultiIndex& a) {
        if (weighted_degree(a, w) == i) out.insert(a);
    });
    return out;
}

// degree -> multiplicity of that weight among the coordinates.
inline std::map<int, int> linearized_ranks(const WeightVector& w) {
    std::map<int, int> out;
    for (int j = 0; j < w.dim(); ++j)
        if (w[j] > 0) out[w[j]] += 1;
    return out;
}

// Intersection of standard weightings: componentwise maximum.
inline WeightVector intersect_standard(const WeightVector& a, const WeightVector& b) {
    if (a.dim() != b.dim()) throw domain_error("intersect_standard dimension mismatch");
    std::vector<int> m(static_cast<size_t>(a.dim()));
    for (int i = 0; i < a.dim(); ++i) m[static_cast<size_t>(i)] = std::max(a[i], b[i]);
    return WeightVector(std::move(m));
}

struct AlignmentCheck {
    bool ok = true;
    int column = -1;  // first offending column when !ok
};

// Uniform alignment of a family of standard weightings: in every column, all
// non-zero weights agree.
inline AlignmentCheck check_uniform_alignment(const std::vector<WeightVector>& ws) {
    AlignmentCheck r;
    if (ws.empty()) return r;
    int m = ws.front().dim();
    for (const auto& w : ws)
        if (w.dim() != m) throw domain_error("alignment check dimension mismatch");
    for (int col = 0; col < m; ++col) {
        int seen = 0;
        for (const auto& w : ws) {
            if (w[col] == 0) continue;
            if (seen == 0) {
                seen = w[col];
            } else if (seen != w[col]) {
                r.ok = false;
                r.column = col;
                return r;
            }
        }
    }
    return r;
}

// Monomial-ideal membership: a lies in the ideal generated by gens.
inline bool in_monomial_ideal(const MultiIndex& a, const std::set<MultiIndex>& gens) {
    for (const auto& g : gens)
        if (divides(g, a)) return true;
    return false;
}

// All monomials of total degree <= bound in m variables.
inline std::vector<MultiIndex> monomials_up_to(int m, int bound) {
    std::vector<MultiIndex> out;
    MultiIndex a(static_cast<size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == m) {
            out.push_back(a);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            a[static_cast<size_t>(pos)] = k;
            rec(pos + 1, left - k);
        }
        a[static_cast<size_t>(pos)] = 0;
    };
    rec(0, bound);
    return out;
}

}  // namespace wbu
