#pragma once

#include "wbu/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace wbu {

using IndexSet = std::vector<int>;  // sorted, 0-based point labels

inline std::string index_set_name(const IndexSet& I) {
    std::string s;
    for (int i : I) s += std::to_string(i + 1);  // 1-based in displays
    return s;
}

// Merge overlapping members into unions of the largest connected subsets.
inline std::vector<IndexSet> factorize(const std::vector<IndexSet>& members) {
    if (members.empty()) return {};
    int top = 0;
    for (const auto& I : members)
        for (int i : I) top = std::max(top, i + 1);
    std::vector<int> parent(static_cast<size_t>(top));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
    for (const auto& I : members)
        for (size_t k = 1; k < I.size(); ++k) parent[static_cast<size_t>(find(I[k]))] = find(I[0]);
    std::map<int, IndexSet> groups;
    std::set<int> touched;
    for (const auto& I : members)
        for (int i : I) touched.insert(i);
    for (int i : touched) groups[find(i)].push_back(i);
    std::vector<IndexSet> out;
    for (auto& [root, g] : groups) {
        std::sort(g.begin(), g.end());
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Pairwise nested-or-disjoint family of subsets of {0..s-1}, each of size >= 2.
struct IndexNest {
    int s = 0;
    std::vector<IndexSet> members;  // sorted by (size, lexicographic)

    IndexNest() = default;
    IndexNest(int points, std::vector<IndexSet> ms) : s(points), members(std::move(ms)) {
        for (auto& I : members) {
            std::sort(I.begin(), I.end());
            if (I.size() < 2) throw domain_error("nest member with fewer than two points");
            for (int i : I)
                if (i < 0 || i >= s) throw domain_error("nest member index out of range");
        }
        std::sort(members.begin(), members.end(), [](const IndexSet& a, const IndexSet& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = a + 1; b < members.size(); ++b)
                if (!nested_or_disjoint(members[a], members[b]))
                    throw domain_error("index sets neither nested nor disjoint: " + index_set_name(members[a]) + " vs " + index_set_name(members[b]));
        for (size_t a = 0; a + 1 < members.size(); ++a)
            if (members[a] == members[a + 1]) throw domain_error("duplicate nest member");
    }

    static bool nested_or_disjoint(const IndexSet& a, const IndexSet& b) {
        std::vector<int> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        if (inter.empty()) return true;
        return inter.size() == a.size() || inter.size() == b.size();
    }
};

// Parent structure on point labels; subtrees realize nest members.
struct Forest {
    int s = 0;
    std::vector<int> parent;  // parent[i] = parent label, -1 for roots

    Forest() = default;
    explicit Forest(int points) : s(points), parent(static_cast<size_t>(points), -1) {}

    bool is_root(int i) const { return parent[static_cast<size_t>(i)] < 0; }

    std::vector<int> roots() const {
        std::vector<int> r;
        for (int i = 0; i < s; ++i)
            if (is_root(i)) r.push_back(i);
        return r;
    }

    // topologically sorted labels, parents before children
    std::vector<int> top_down() const {
        std::vector<int> order, stack = roots();
        std::vector<std::vector<int>> children(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i)
            if (!is_root(i)) children[static_cast<size_t>(parent[static_cast<size_t>(i)])].push_back(i);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int c : children[static_cast<size_t>(v)]) stack.push_back(c);
        }
        if (static_cast<int>(order.size()) != s) throw domain_error("forest has a cycle");
        return order;
    }

    // unique maximal element of a subtree set
    int subtree_root(const IndexSet& I) const {
        for (int i : I) {
            int p = parent[static_cast<size_t>(i)];
            if (p < 0 || !std::binary_search(I.begin(), I.end(), p)) return i;
        }
        throw domain_error("set has no root under forest");
    }

    bool is_subtree(const IndexSet& I) const {
        // connected in the Hasse diagram: exactly one element whose parent is outside
        int outside = 0;
        for (int i : I) {
            int p = parent[static_cast<size_t>(i)];
            if (p < 0 || !std::binary_search(I.begin(), I.end(), p)) ++outside;
        }
        if (outside != 1) return false;
        return true;
    }

    IndexSet descendants(int k) const {
        std::vector<std::vector<int>> children(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i)
            if (!is_root(i)) children[static_cast<size_t>(parent[static_cast<size_t>(i)])].push_back(i);
        IndexSet out;
        std::vector<int> stack{k};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out.push_back(v);
            for (int c : children[static_cast<size_t>(v)]) stack.push_back(c);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Both covering conditions: every member is a subtree, and descendant subtrees
// of nodes with children are members.
inline bool forest_covers(const Forest& f, const IndexNest& nest) {
    for (const auto& I : nest.members)
        if (!f.is_subtree(I)) return false;
    std::set<IndexSet> ms(nest.members.begin(), nest.members.end());
    std::vector<bool> has_child(static_cast<size_t>(f.s), false);
    for (int i = 0; i < f.s; ++i)
        if (!f.is_root(i)) has_child[static_cast<size_t>(f.parent[static_cast<size_t>(i)])] = true;
    for (int k = 0; k < f.s; ++k) {
        if (!has_child[static_cast<size_t>(k)]) continue;
        if (!ms.count(f.descendants(k))) return false;
    }
    return true;
}

struct CoveringForest {
    Forest forest;
    std::map<IndexSet, IndexSet> controls;  // member -> Ct_N
};

// Ct_N = children l whose edge {l, parent(l)} has N as its smallest enclosing member.
inline std::map<IndexSet, IndexSet> forest_controls(const Forest& f, const IndexNest& nest) {
    std::map<IndexSet, IndexSet> ct;
    for (const auto& I : nest.members) ct[I] = {};
    for (int l = 0; l < f.s; ++l) {
        if (f.is_root(l)) continue;
        int p = f.parent[static_cast<size_t>(l)];
        const IndexSet* best = nullptr;
        for (const auto& I : nest.members) {
            if (!std::binary_search(I.begin(), I.end(), l)) continue;
            if (!std::binary_search(I.begin(), I.end(), p)) continue;
            if (!best || I.size() < best->size()) best = &I;
        }
        if (!best) throw domain_error("forest edge not covered by any nest member");
        ct[*best].push_back(l);
    }
    for (auto& [I, c] : ct) std::sort(c.begin(), c.end());
    return ct;
}

// Deterministic construction: members by non-decreasing size (ties
// lexicographic), attaching the current roots inside each member under its
// smallest-index root.
inline CoveringForest covering_forest(const IndexNest& nest) {
    CoveringForest out;
    out.forest = Forest(nest.s);
    auto& par = out.forest.parent;
    std::function<int(int)> top = [&](int x) { return par[static_cast<size_t>(x)] < 0 ? x : top(par[static_cast<size_t>(x)]); };
    for (const auto& I : nest.members) {  // members are sorted by (size, lex)
        std::set<int> roots_in;
        for (int i : I) roots_in.insert(top(i));
        int head = *roots_in.begin();
        for (int r : roots_in)
            if (r != head) par[static_cast<size_t>(r)] = head;
    }
    out.controls = forest_controls(out.forest, nest);
    if (!forest_covers(out.forest, nest)) throw domain_error("constructed forest fails covering check");
    return out;
}

}  // namespace wbu
