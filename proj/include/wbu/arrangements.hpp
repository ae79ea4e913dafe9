#pragma once

#include "wbu/fm_combinatorics.hpp"
#include "wbu/linalg.hpp"
#include "wbu/weightings.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wbu {

// Coordinate-subspace data: x_i = 0 for i in zero_set, with a positive weight
// per zeroed coordinate.
struct CoordData {
    std::vector<int> zero_set;     // sorted 0-based coordinate indices
    std::map<int, int> weights;    // index in zero_set -> positive weight
};

// Diagonal data for Fulton-MacPherson style elements of (R^m)^s: points in each
// block agree; every normal direction carries the block's weight sequence.
struct DiagData {
    int s = 0;
    int m = 1;
    std::vector<IndexSet> blocks;       // pairwise disjoint, each of size >= 2
    std::vector<int> weightseq;         // length m, all >= 1
};

// One building-set element. `space` is the exact linear model used for all
// lattice computations; the coordinate or diagonal form carries the weights.
struct WeightedSubspace {
    std::string name;
    int dim = 0;  // ambient dimension
    Subspace space;
    std::optional<CoordData> coord;
    std::optional<DiagData> diag;

    // weight of the ambient coordinate direction i (coordinate form only)
    WeightVector induced_weights() const {
        if (!coord) throw domain_error("element " + name + " has no coordinate form");
        std::vector<int> w(static_cast<size_t>(dim), 0);
        for (int i : coord->zero_set) w[static_cast<size_t>(i)] = coord->weights.at(i);
        return WeightVector(std::move(w));
    }
};

inline WeightedSubspace make_coord_subspace(const std::string& name, int dim, std::vector<int> zero_set,
                                            std::map<int, int> weights) {
    std::sort(zero_set.begin(), zero_set.end());
    zero_set.erase(std::unique(zero_set.begin(), zero_set.end()), zero_set.end());
    if (zero_set.empty()) throw domain_error("element " + name + ": empty zero set (codimension zero)");
    for (int i : zero_set) {
        if (i < 0 || i >= dim) throw domain_error("element " + name + ": coordinate index out of range");
        auto it = weights.find(i);
        if (it == weights.end() || it->second <= 0)
            throw domain_error("element " + name + ": missing or non-positive weight on coordinate " + std::to_string(i));
    }
    if (static_cast<int>(weights.size()) != static_cast<int>(zero_set.size()))
        throw domain_error("element " + name + ": weights do not match zero set");
    std::vector<std::vector<Rat>> rows;
    for (int i : zero_set) {
        std::vector<Rat> row(static_cast<size_t>(dim), Rat(0));
        row[static_cast<size_t>(i)] = 1;
        rows.push_back(std::move(row));
    }
    WeightedSubspace e;
    e.name = name;
    e.dim = dim;
    e.space = Subspace(dim, std::move(rows));
    e.coord = CoordData{std::move(zero_set), std::move(weights)};
    return e;
}

// General linear element carrying the trivial weighting; used for building
// sets whose supports are not coordinate subspaces.
inline WeightedSubspace make_linear_subspace(const std::string& name, int dim,
                                             std::vector<std::vector<Rat>> constraints) {
    WeightedSubspace e;
    e.name = name;
    e.dim = dim;
    e.space = Subspace(dim, std::move(constraints));
    if (e.space.codim() == 0) throw domain_error("element " + name + " has codimension zero");
    return e;
}

// Diagonal of (R^m)^s given by one or more blocks of collided points,
// as a subspace of R^(s*m). Coordinates are grouped point-major.
inline WeightedSubspace make_diagonal(int s, int m, std::vector<IndexSet> blocks, std::vector<int> weightseq) {
    if (static_cast<int>(weightseq.size()) != m) throw domain_error("diagonal weight sequence length mismatch");
    for (int w : weightseq)
        if (w < 1) throw domain_error("diagonal weights must be positive");
    blocks = factorize(blocks);
    std::vector<std::vector<Rat>> rows;
    int dim = s * m;
    for (const auto& I : blocks) {
        if (I.size() < 2) throw domain_error("diagonal block with fewer than two points");
        for (size_t k = 1; k < I.size(); ++k)
            for (int j = 0; j < m; ++j) {
                std::vector<Rat> row(static_cast<size_t>(dim), Rat(0));
                row[static_cast<size_t>(I[k] * m + j)] = 1;
                row[static_cast<size_t>(I[0] * m + j)] = -1;
                rows.push_back(std::move(row));
            }
    }
    WeightedSubspace e;
    std::string name;
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (b) name += "&";
        name += index_set_name(blocks[b]);
    }
    e.name = name;
    e.dim = dim;
    e.space = Subspace(dim, std::move(rows));
    e.diag = DiagData{s, m, std::move(blocks), std::move(weightseq)};
    return e;
}

struct BuildingSet {
    int dim = 0;
    std::vector<WeightedSubspace> elements;

    int size() const { return static_cast<int>(elements.size()); }
    const WeightedSubspace& operator[](int i) const { return elements[static_cast<size_t>(i)]; }

    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (elements[static_cast<size_t>(i)].name == name) return i;
        throw domain_error("no element named " + name);
    }

    // submanifold containment: a subset-of b
    bool contains(int outer, int inner) const {
        return elements[static_cast<size_t>(inner)].space.subset_of(elements[static_cast<size_t>(outer)].space);
    }
};

inline BuildingSet make_building_set(int dim, std::vector<WeightedSubspace> elems) {
    BuildingSet bs;
    bs.dim = dim;
    std::set<std::string> names;
    for (auto& e : elems) {
        if (e.dim != dim) throw domain_error("element " + e.name + " has wrong ambient dimension");
        if (!names.insert(e.name).second) throw domain_error("duplicate element name " + e.name);
        for (const auto& f : bs.elements)
            if (f.space == e.space) throw domain_error("duplicate element " + e.name + " = " + f.name);
        bs.elements.push_back(std::move(e));
    }
    return bs;
}

// The full Fulton-MacPherson building set of (R^m)^s: one diagonal per index
// set of size >= 2.
inline BuildingSet fm_building_set(int s, int m, std::vector<int> weightseq) {
    std::vector<WeightedSubspace> elems;
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
        IndexSet I;
        for (int i = 0; i < s; ++i)
            if (mask & (1u << i)) I.push_back(i);
        if (I.size() < 2) continue;
        elems.push_back(make_diagonal(s, m, {I}, weightseq));
    }
    std::sort(elems.begin(), elems.end(), [](const WeightedSubspace& a, const WeightedSubspace& b) {
        const auto& A = a.diag->blocks[0];
        const auto& B = b.diag->blocks[0];
        if (A.size() != B.size()) return A.size() < B.size();
        return A < B;
    });
    return make_building_set(s * m, std::move(elems));
}

// ---------------------------------------------------------------------------
// Arrangement lattice

struct ArrElement {
    Subspace space;
    std::string name;                 // named by the G-factors
    std::vector<int> factors;         // indices into the building set: min G_{>= S}
    std::vector<int> some_generators; // one generating subset (indices)
    bool is_ambient = false;
};

struct Arrangement {
    BuildingSet bs;
    std::vector<ArrElement> elements;  // element 0 is the ambient space

    int find(const Subspace& s) const {
        for (size_t i = 0; i < elements.size(); ++i)
            if (elements[i].space == s) return static_cast<int>(i);
        return -1;
    }

    // lattice join: the intersection of the two subspaces
    int join(int a, int b) const {
        int at = find(intersect(elements[static_cast<size_t>(a)].space, elements[static_cast<size_t>(b)].space));
        if (at < 0) throw domain_error("arrangement is not closed under intersection");
        return at;
    }

    // lattice meet: the smallest element containing both
    int meet(int a, int b) const {
        int best = -1;
        for (size_t i = 0; i < elements.size(); ++i) {
            const auto& s = elements[i].space;
            if (!elements[static_cast<size_t>(a)].space.subset_of(s)) continue;
            if (!elements[static_cast<size_t>(b)].space.subset_of(s)) continue;
            if (best < 0 || s.subset_of(elements[static_cast<size_t>(best)].space)) best = static_cast<int>(i);
        }
        return best;
    }
};

namespace detail {

inline std::vector<int> factor_indices(const BuildingSet& bs, const Subspace& S) {
    // minimal elements of the building set containing S
    std::vector<int> containing;
    for (int g = 0; g < bs.size(); ++g)
        if (S.subset_of(bs[g].space)) containing.push_back(g);
    std::vector<int> mins;
    for (int g : containing) {
        bool minimal = true;
        for (int h : containing)
            if (h != g && bs[h].space.subset_of(bs[g].space) && !(bs[h].space == bs[g].space)) {
                minimal = false;
                break;
            }
        if (minimal) mins.push_back(g);
    }
    return mins;
}

}  // namespace detail

// All intersections of subsets of the building set, closed under pairwise
// intersection, with the ambient space for the empty subset.
inline Arrangement arrangement(const BuildingSet& bs) {
    Arrangement arr;
    arr.bs = bs;
    ArrElement ambient;
    ambient.space = Subspace::full(bs.dim);
    ambient.name = "ambient";
    ambient.is_ambient = true;
    arr.elements.push_back(ambient);
    for (int g = 0; g < bs.size(); ++g) {
        if (arr.find(bs[g].space) >= 0) continue;
        ArrElement e;
        e.space = bs[g].space;
        e.some_generators = {g};
        arr.elements.push_back(std::move(e));
    }
    // close under pairwise intersection with single elements
    bool changed = true;
    while (changed) {
        changed = false;
        size_t n = arr.elements.size();
        for (size_t i = 1; i < n; ++i)
            for (int g = 0; g < bs.size(); ++g) {
                Subspace s = intersect(arr.elements[i].space, bs[g].space);
                if (arr.find(s) >= 0) continue;
                ArrElement e;
                e.space = s;
                e.some_generators = arr.elements[i].some_generators;
                e.some_generators.push_back(g);
                arr.elements.push_back(std::move(e));
                changed = true;
            }
    }
    for (auto& e : arr.elements) {
        if (e.is_ambient) continue;
        e.factors = detail::factor_indices(bs, e.space);
        std::string nm;
        for (size_t k = 0; k < e.factors.size(); ++k) {
            if (k) nm += "∩";
            nm += bs[static_cast<size_t>(e.factors[k])].name;
        }
        e.name = nm;
    }
    std::sort(arr.elements.begin(), arr.elements.end(), [](const ArrElement& a, const ArrElement& b) {
        if (a.is_ambient != b.is_ambient) return a.is_ambient;
        if (a.space.codim() != b.space.codim()) return a.space.codim() < b.space.codim();
        return a.name < b.name;
    });
    return arr;
}

// G-factors of an arrangement element: min G_{>= S}.
inline std::vector<int> factors(const BuildingSet& bs, const Subspace& S) {
    auto f = detail::factor_indices(bs, S);
    if (f.empty() && !(S == Subspace::full(bs.dim)))
        for (int g = 0; g < bs.size(); ++g)
            if (bs[g].space == S) return {g};
    return f;
}

struct SeparationCheck {
    bool separated = true;
    std::string witness;  // arrangement element at which transversality fails
};

// Separated: the factors of every arrangement element intersect transversely.
inline SeparationCheck check_separated(const BuildingSet& bs, const Arrangement* arr_opt = nullptr) {
    Arrangement local;
    const Arrangement* arr = arr_opt;
    if (!arr) {
        local = arrangement(bs);
        arr = &local;
    }
    for (const auto& e : arr->elements) {
        if (e.is_ambient) continue;
        int total = 0;
        for (int g : e.factors) total += bs[g].space.codim();
        Subspace meet = Subspace::full(bs.dim);
        for (int g : e.factors) meet = intersect(meet, bs[g].space);
        if (meet.codim() != total) return SeparationCheck{false, e.name};
    }
    return SeparationCheck{};
}

// ---------------------------------------------------------------------------
// Nests

namespace detail {

inline bool comparable(const BuildingSet& bs, int a, int b) {
    return bs.contains(a, b) || bs.contains(b, a);
}

// every antichain P of `chosen` with |P| >= 2 and `extra`, containing `extra`,
// has intersection outside the building set
inline bool antichains_ok(const BuildingSet& bs, const std::vector<int>& chosen, int extra) {
    std::vector<int> incomp;
    for (int c : chosen)
        if (!comparable(bs, c, extra)) incomp.push_back(c);
    // DFS over antichains within incomp, each extended by `extra`
    std::vector<int> stack;
    std::function<bool(size_t, const Subspace&)> rec = [&](size_t from, const Subspace& meet) -> bool {
        if (!stack.empty()) {
            for (int g = 0; g < bs.size(); ++g)
                if (bs[g].space == meet) return false;
        }
        for (size_t k = from; k < incomp.size(); ++k) {
            bool anti = true;
            for (int s : stack)
                if (comparable(bs, s, incomp[k])) {
                    anti = false;
                    break;
                }
            if (!anti) continue;
            stack.push_back(incomp[k]);
            bool ok = rec(k + 1, intersect(meet, bs[incomp[k]].space));
            stack.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return rec(0, bs[extra].space);
}

}  // namespace detail

// Flag-based nest enumeration (the definition): all unions of factor sets
// along chains of the arrangement. Ground truth for any building set.
struct FlagSearch {
    long flag_count = 0;  // non-trivial flags
    std::set<std::vector<int>> nests;  // sorted element-index sets, incl. empty
};

inline FlagSearch nests_from_flags(const BuildingSet& bs, int arr_cap = 64) {
    Arrangement arr = arrangement(bs);
    if (static_cast<int>(arr.elements.size()) > arr_cap)
        throw cap_error("arrangement size " + std::to_string(arr.elements.size()) + " exceeds flag-search cap " + std::to_string(arr_cap));
    FlagSearch out;
    out.nests.insert(std::vector<int>{});  // trivial flag -> empty nest
    std::vector<int> proper;
    for (size_t i = 0; i < arr.elements.size(); ++i)
        if (!arr.elements[i].is_ambient) proper.push_back(static_cast<int>(i));
    // chains S_1 strictly contained in S_2 ... ; collect union of factor sets
    std::vector<int> chain;
    std::function<void(int)> rec = [&](int last) {
        if (!chain.empty()) {
            ++out.flag_count;
            std::set<int> nest;
            for (int ci : chain)
                for (int g : arr.elements[static_cast<size_t>(ci)].factors) nest.insert(g);
            out.nests.insert(std::vector<int>(nest.begin(), nest.end()));
        }
        for (int i : proper) {
            if (last >= 0) {
                const auto& prev = arr.elements[static_cast<size_t>(last)].space;
                const auto& next = arr.elements[static_cast<size_t>(i)].space;
                if (!(prev.subset_of(next)) || prev == next) continue;  // need S_last strictly inside S_i
            }
            chain.push_back(i);
            rec(i);
            chain.pop_back();
        }
    };
    rec(-1);
    return out;
}

// Characterization for separated building sets: every antichain P with
// |P| >= 2 has an intersection outside the building set. Falls back to the
// flag definition when the set is not separated.
inline bool is_nest(const BuildingSet& bs, const std::vector<int>& subset) {
    for (int i : subset)
        if (i < 0 || i >= bs.size()) throw domain_error("nest element index out of range");
    if (check_separated(bs).separated) {
        std::vector<int> chosen;
        for (int i : subset) {
            if (!detail::antichains_ok(bs, chosen, i)) return false;
            chosen.push_back(i);
        }
        return true;
    }
    auto search = nests_from_flags(bs);
    std::vector<int> key(subset);
    std::sort(key.begin(), key.end());
    return search.nests.count(key) > 0;
}

inline bool is_nest(const BuildingSet& bs, const std::vector<std::string>& names) {
    std::vector<int> idx;
    for (const auto& n : names) idx.push_back(bs.index_of(n));
    return is_nest(bs, idx);
}

// All nests including the empty nest, in deterministic order.
inline std::vector<std::vector<int>> enumerate_nests(const BuildingSet& bs, int cap = 20) {
    if (bs.size() > cap)
        throw cap_error("building set size " + std::to_string(bs.size()) + " exceeds nest-enumeration cap " + std::to_string(cap));
    std::vector<std::vector<int>> out;
    if (check_separated(bs).separated) {
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int from) {
            out.push_back(cur);
            for (int g = from; g < bs.size(); ++g) {
                if (!detail::antichains_ok(bs, cur, g)) continue;
                cur.push_back(g);
                rec(g + 1);
                cur.pop_back();
            }
        };
        rec(0);
        std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        return out;
    }
    auto search = nests_from_flags(bs);
    out.assign(search.nests.begin(), search.nests.end());
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Weighted validity

struct WeightedSetDiagnostics {
    bool pass = true;
    std::vector<std::string> failures;

    void fail(const std::string& why) {
        pass = false;
        failures.push_back(why);
    }
};

// Induced weight vectors of a nest in a common adapted chart. Coordinate-form
// elements use the global chart; diagonal-form elements pass through offset
// coordinates of a covering forest of the index nest.
inline std::vector<WeightVector> nest_weight_vectors(const BuildingSet& bs, const std::vector<int>& nest) {
    std::vector<WeightVector> out;
    if (nest.empty()) return out;
    bool diag_kind = bs.elements.front().diag.has_value();
    if (!diag_kind) {
        for (int i : nest) out.push_back(bs[i].induced_weights());
        return out;
    }
    const auto& d0 = *bs[nest.front()].diag;
    std::vector<IndexSet> members;
    for (int i : nest) {
        const auto& dd = *bs[i].diag;
        if (dd.blocks.size() != 1) throw domain_error("nest element " + bs[i].name + " is a polydiagonal");
        members.push_back(dd.blocks[0]);
    }
    IndexNest inest(d0.s, members);
    auto cover = covering_forest(inest);
    for (int i : nest) {
        const auto& I = bs[i].diag->blocks[0];
        int root = cover.forest.subtree_root(I);
        std::vector<int> w(static_cast<size_t>(bs.dim), 0);
        for (int l : I) {
            if (l == root) continue;
            for (int j = 0; j < d0.m; ++j) w[static_cast<size_t>(l * d0.m + j)] = d0.weightseq[static_cast<size_t>(j)];
        }
        out.push_back(WeightVector(std::move(w)));
    }
    return out;
}

// (a) intersections landing in the building set carry the componentwise-max
// weights, (b) every nest is uniformly aligned.
inline WeightedSetDiagnostics check_weighted_building_set(const BuildingSet& bs, int subset_cap = 12,
                                                          int nest_cap = 20) {
    WeightedSetDiagnostics diag;
    // (a) the max rule, checked on coordinate-form sets; diagonal elements
    // share one weight sequence, so their intersections satisfy it structurally
    bool coord_kind = !bs.elements.empty() && bs.elements.front().coord.has_value();
    if (coord_kind) {
        Arrangement arr = arrangement(bs);
        for (const auto& e : arr.elements) {
            if (e.is_ambient) continue;
            int target = -1;
            for (int g = 0; g < bs.size(); ++g)
                if (bs[g].space == e.space) target = g;
            if (target < 0) continue;  // intersection not in the building set
            std::vector<int> above;
            for (int g = 0; g < bs.size(); ++g)
                if (e.space.subset_of(bs[g].space)) above.push_back(g);
            if (static_cast<int>(above.size()) > subset_cap)
                throw cap_error("more than " + std::to_string(subset_cap) + " elements above " + e.name);
            size_t n = above.size();
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                Subspace meet = Subspace::full(bs.dim);
                std::vector<int> chosen;
                for (size_t k = 0; k < n; ++k)
                    if (mask & (1u << k)) {
                        chosen.push_back(above[k]);
                        meet = intersect(meet, bs[above[k]].space);
                    }
                if (!(meet == bs[target].space)) continue;
                WeightVector expect = bs[target].induced_weights();
                std::vector<int> got(static_cast<size_t>(bs.dim), 0);
                for (int g : chosen) {
                    WeightVector wg = bs[g].induced_weights();
                    for (int c = 0; c < bs.dim; ++c) got[static_cast<size_t>(c)] = std::max(got[static_cast<size_t>(c)], wg[c]);
                }
                if (!(WeightVector(got) == expect)) {
                    std::ostringstream os;
                    os << "max rule fails at " << bs[target].name << " for {";
                    for (size_t k = 0; k < chosen.size(); ++k) os << (k ? "," : "") << bs[chosen[k]].name;
                    os << "}";
                    diag.fail(os.str());
                }
            }
        }
    }
    // (b) uniform alignment per nest; elements without weight data carry the
    // trivial weighting, which is uniformly aligned over separated sets
    bool linear_kind = !bs.elements.empty() && !bs.elements.front().coord && !bs.elements.front().diag;
    if (linear_kind) return diag;
    for (const auto& nest : enumerate_nests(bs, nest_cap)) {
        if (nest.empty()) continue;
        auto ws = nest_weight_vectors(bs, nest);
        auto chk = check_uniform_alignment(ws);
        if (!chk.ok) {
            std::ostringstream os;
            os << "nest {";
            for (size_t k = 0; k < nest.size(); ++k) os << (k ? "," : "") << bs[nest[k]].name;
            os << "} not uniformly aligned at column " << chk.column;
            diag.fail(os.str());
        }
    }
    return diag;
}

// ---------------------------------------------------------------------------
// Weight tableau rendering

struct TableauOptions {
    std::map<std::string, int> boxed;  // element name -> boxed column (the h choice)
};

struct TableauLayout {
    std::vector<int> column_order;               // new position -> original column
    std::vector<int> row_of;                     // per nest position, row from the top
    int rows = 0;
    std::vector<std::string> names;              // per nest position
    std::vector<WeightVector> weights;           // per nest position, original columns
};

// Column reordering and row stacking for the weight tableau of a nest.
// Throws when two elements share a column without being comparable.
inline TableauLayout tableau_layout(const BuildingSet& bs, const std::vector<int>& nest) {
    TableauLayout lay;
    lay.weights = nest_weight_vectors(bs, nest);
    for (int i : nest) lay.names.push_back(bs[i].name);
    size_t n = lay.weights.size();
    int m = lay.weights.empty() ? bs.dim : lay.weights.front().dim();
    auto support = [&](size_t e) {
        std::set<int> s;
        for (int c = 0; c < m; ++c)
            if (lay.weights[e][c] != 0) s.insert(c);
        return s;
    };
    std::vector<std::set<int>> sup(n);
    for (size_t e = 0; e < n; ++e) sup[e] = support(e);
    auto sub_sup = [&](size_t a, size_t b) {  // support(a) subset of support(b)
        return std::includes(sup[b].begin(), sup[b].end(), sup[a].begin(), sup[a].end());
    };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            std::vector<int> common;
            std::set_intersection(sup[a].begin(), sup[a].end(), sup[b].begin(), sup[b].end(),
                                  std::back_inserter(common));
            if (!common.empty() && !sub_sup(a, b) && !sub_sup(b, a))
                throw domain_error("impossible stacking: " + lay.names[a] + " and " + lay.names[b] +
                                   " overlap without nesting");
        }
    lay.row_of.assign(n, 0);
    std::vector<int> depth(n, 0);
    // height above the bottom: chains of strictly larger supports below
    std::function<int(size_t)> height = [&](size_t e) -> int {
        int h = 0;
        for (size_t o = 0; o < n; ++o)
            if (o != e && sub_sup(e, o) && sup[e] != sup[o]) h = std::max(h, 1 + height(o));
        return h;
    };
    int maxh = 0;
    for (size_t e = 0; e < n; ++e) {
        depth[e] = height(e);
        maxh = std::max(maxh, depth[e]);
    }
    lay.rows = n == 0 ? 0 : maxh + 1;
    for (size_t e = 0; e < n; ++e) lay.row_of[e] = maxh - depth[e];
    // column order: recurse over the stacking forest of supports
    std::vector<bool> used_col(static_cast<size_t>(m), false);
    std::function<void(const std::vector<size_t>&, std::vector<int>&)> place =
        [&](const std::vector<size_t>& elems, std::vector<int>& cols) {
            // maximal supports among elems
            std::vector<size_t> roots;
            for (size_t e : elems) {
                bool maximal = true;
                for (size_t o : elems)
                    if (o != e && sub_sup(e, o) && sup[e] != sup[o]) maximal = false;
                if (maximal) roots.push_back(e);
            }
            std::sort(roots.begin(), roots.end(), [&](size_t a, size_t b) {
                return *sup[a].begin() < *sup[b].begin();
            });
            for (size_t r : roots) {
                std::vector<size_t> inside;
                for (size_t e : elems)
                    if (e != r && sub_sup(e, r)) inside.push_back(e);
                std::vector<int> childcols;
                place(inside, childcols);
                std::set<int> covered(childcols.begin(), childcols.end());
                cols.insert(cols.end(), childcols.begin(), childcols.end());
                for (int c : sup[r])
                    if (!covered.count(c)) cols.push_back(c);
            }
        };
    std::vector<size_t> all(n);
    for (size_t e = 0; e < n; ++e) all[e] = e;
    std::vector<int> cols;
    place(all, cols);
    for (int c : cols) used_col[static_cast<size_t>(c)] = true;
    lay.column_order = cols;
    for (int c = 0; c < m; ++c)
        if (!used_col[static_cast<size_t>(c)]) lay.column_order.push_back(c);
    return lay;
}

inline std::string tableau_render(const BuildingSet& bs, const std::vector<int>& nest,
                                  const TableauOptions& opts = {}) {
    TableauLayout lay = tableau_layout(bs, nest);
    size_t n = lay.weights.size();
    int m = static_cast<int>(lay.column_order.size());
    // cell text per row/column
    std::vector<std::vector<std::string>> grid(static_cast<size_t>(lay.rows),
                                               std::vector<std::string>(static_cast<size_t>(m)));
    for (size_t e = 0; e < n; ++e) {
        auto boxed = opts.boxed.find(lay.names[e]);
        for (int pos = 0; pos < m; ++pos) {
            int col = lay.column_order[static_cast<size_t>(pos)];
            int w = lay.weights[e][col];
            if (w == 0) continue;
            std::string cell = std::to_string(w);
            if (boxed != opts.boxed.end() && boxed->second == col) cell = "[" + cell + "]";
            grid[static_cast<size_t>(lay.row_of[e])][static_cast<size_t>(pos)] = cell;
        }
    }
    std::vector<std::string> labels(static_cast<size_t>(m));
    for (int pos = 0; pos < m; ++pos)
        labels[static_cast<size_t>(pos)] = "x" + std::to_string(lay.column_order[static_cast<size_t>(pos)] + 1);
    std::vector<size_t> width(static_cast<size_t>(m), 0);
    for (int pos = 0; pos < m; ++pos) {
        width[static_cast<size_t>(pos)] = labels[static_cast<size_t>(pos)].size();
        for (int r = 0; r < lay.rows; ++r)
            width[static_cast<size_t>(pos)] = std::max(width[static_cast<size_t>(pos)],
                                                       grid[static_cast<size_t>(r)][static_cast<size_t>(pos)].size());
    }
    std::ostringstream os;
    for (int r = 0; r < lay.rows; ++r) {
        std::string line;
        for (int pos = 0; pos < m; ++pos) {
            std::string cell = grid[static_cast<size_t>(r)][static_cast<size_t>(pos)];
            cell.resize(width[static_cast<size_t>(pos)], ' ');
            line += cell;
            line += ' ';
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        // row legend: which elements live on this row
        std::string who;
        for (size_t e = 0; e < n; ++e)
            if (lay.row_of[e] == r) who += (who.empty() ? "" : ",") + lay.names[e];
        os << line << "   <- " << who << "\n";
    }
    std::string axis;
    for (int pos = 0; pos < m; ++pos) {
        std::string cell = labels[static_cast<size_t>(pos)];
        cell.resize(width[static_cast<size_t>(pos)], ' ');
        axis += cell;
        axis += ' ';
    }
    while (!axis.empty() && axis.back() == ' ') axis.pop_back();
    os << axis << "\n";
    return os.str();
}

}  // namespace wbu
