#pragma once

#include "wbu/blowup.hpp"
#include "wbu/bundlejet.hpp"
#include "wbu/fm.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace wbu {

using nlohmann::json;

// 64-bit FNV-1a over the raw input bytes, echoed by every command output.
inline std::string input_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("malformed JSON in " + what);
    return j;
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        auto r = parse_rat(j.get<std::string>());
        if (!r) throw parse_error("bad rational " + j.get<std::string>());
        return *r;
    }
    throw parse_error("rationals must be integers or \"p/q\" strings");
}

inline json rat_to_json(const Rat& r) { return format_rat(r); }

inline json exact_to_json(const Exact& e) {
    if (e.is_rational()) return format_rat(e.rational());
    return json{{"value", e.to_double()}, {"symbolic", e.str()}};
}

inline json qext_to_json(const QExt& q) {
    if (q.is_rational()) return format_rat(q.rational());
    return json{{"value", q.to_double()}, {"symbolic", q.str()}};
}

inline std::vector<Rat> rat_vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw parse_error(what + " must be an array");
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_from_json(v));
    return out;
}

// {"dim": m, "elements": [{"name", "zeros", "weights"}]} with 0-based columns,
// or the generator form {"fm": {"s", "m", "weights"}}.
inline BuildingSet building_set_from_json(const json& j) {
    if (j.contains("fm")) {
        const auto& f = j.at("fm");
        int s = f.at("s").get<int>();
        int m = f.at("m").get<int>();
        std::vector<int> w(static_cast<size_t>(m), 1);
        if (f.contains("weights")) w = f.at("weights").get<std::vector<int>>();
        if (static_cast<int>(w.size()) != m) throw parse_error("fm weights must have length m");
        return fm_building_set(s, m, w);
    }
    int dim = j.at("dim").get<int>();
    std::vector<WeightedSubspace> elems;
    for (const auto& e : j.at("elements")) {
        std::string name = e.at("name").get<std::string>();
        std::vector<int> zeros = e.at("zeros").get<std::vector<int>>();
        std::map<int, int> weights;
        for (const auto& [key, val] : e.at("weights").items()) weights[std::stoi(key)] = val.get<int>();
        elems.push_back(make_coord_subspace(name, dim, std::move(zeros), std::move(weights)));
    }
    return make_building_set(dim, std::move(elems));
}

// {"nest": [names], "h": {name: column}, "s": {name: 1|-1}}
inline Perspective perspective_from_json(const json& j) {
    Perspective p;
    p.nest = j.at("nest").get<std::vector<std::string>>();
    for (const auto& [key, val] : j.at("h").items()) p.h[key] = val.get<int>();
    for (const auto& [key, val] : j.at("s").items()) p.s[key] = val.get<int>();
    return p;
}

// {"components": {name: {"type": "bulk"|"divisor", "v": [rat...]}}}
inline BlowupPoint blowup_point_from_json(const json& j) {
    BlowupPoint p;
    for (const auto& [name, c] : j.at("components").items()) {
        Component comp;
        std::string type = c.at("type").get<std::string>();
        if (type == "divisor") {
            comp.divisor = true;
        } else if (type != "bulk") {
            throw parse_error("component type must be bulk or divisor");
        }
        for (const auto& v : rat_vector_from_json(c.at("v"), "component " + name)) comp.v.emplace_back(v);
        p.comps[name] = std::move(comp);
    }
    return p;
}

inline json blowup_point_to_json(const BuildingSet& bs, const BlowupPoint& p) {
    json comps = json::object();
    for (int g = 0; g < bs.size(); ++g) {
        const auto& comp = p.comps.at(bs[g].name);
        json v = json::array();
        for (const auto& e : comp.v) v.push_back(exact_to_json(e));
        comps[bs[g].name] = json{{"type", comp.divisor ? "divisor" : "bulk"}, {"v", v}};
    }
    return json{{"components", comps}};
}

// curves: per point, per coordinate, a list of [exponent, coefficient] pairs
inline CurveFamily curves_from_json(const json& j) {
    CurveFamily out;
    for (const auto& point : j) {
        std::vector<std::vector<Rat>> coords;
        for (const auto& coord : point) {
            std::vector<Rat> poly;
            for (const auto& term : coord) {
                int e = term.at(0).get<int>();
                Rat c = rat_from_json(term.at(1));
                if (static_cast<int>(poly.size()) <= e) poly.resize(static_cast<size_t>(e) + 1, Rat(0));
                poly[static_cast<size_t>(e)] = c;
            }
            coords.push_back(std::move(poly));
        }
        out.push_back(std::move(coords));
    }
    return out;
}

inline json index_set_to_json(const IndexSet& I) {
    json a = json::array();
    for (int i : I) a.push_back(i + 1);  // 1-based labels outside
    return a;
}

inline IndexSet index_set_from_json(const json& j) {
    IndexSet I;
    for (const auto& v : j) I.push_back(v.get<int>() - 1);
    std::sort(I.begin(), I.end());
    return I;
}

inline json model_point_to_json(const FMModelPoint& p) {
    json nest = json::array();
    for (const auto& I : p.nest.members) nest.push_back(index_set_to_json(I));
    json roots = json::object();
    for (const auto& [r, x] : p.roots) {
        json v = json::array();
        for (double c : x) v.push_back(c);
        roots[std::to_string(r + 1)] = v;
    }
    json screens = json::object(), controls = json::object(), ts = json::object();
    for (const auto& I : p.nest.members) {
        json v = json::array();
        for (double c : p.screens.at(I)) v.push_back(c);
        screens[index_set_name(I)] = v;
        controls[index_set_name(I)] = index_set_to_json(p.controls.at(I));
        ts[index_set_name(I)] = p.t.at(I);
    }
    json parent = json::array();
    for (int i = 0; i < p.s; ++i)
        parent.push_back(p.forest.is_root(i) ? 0 : p.forest.parent[static_cast<size_t>(i)] + 1);
    return json{{"s", p.s},       {"m", p.m},        {"weights", p.weights}, {"nest", nest},
                {"parent", parent}, {"roots", roots}, {"controls", controls}, {"screens", screens},
                {"t", ts}};
}

inline FMModelPoint model_point_from_json(const json& j) {
    FMModelPoint p;
    p.s = j.at("s").get<int>();
    p.m = j.at("m").get<int>();
    p.weights = j.at("weights").get<std::vector<int>>();
    std::vector<IndexSet> members;
    for (const auto& I : j.at("nest")) members.push_back(index_set_from_json(I));
    p.nest = IndexNest(p.s, members);
    p.forest = Forest(p.s);
    auto parent = j.at("parent").get<std::vector<int>>();
    for (int i = 0; i < p.s; ++i)
        p.forest.parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(i)] - 1;  // 0 becomes -1
    if (!forest_covers(p.forest, p.nest)) throw domain_error("model point forest does not cover its nest");
    p.controls = forest_controls(p.forest, p.nest);
    for (const auto& [key, val] : j.at("roots").items())
        p.roots[std::stoi(key) - 1] = val.get<std::vector<double>>();
    for (const auto& I : p.nest.members) {
        p.screens[I] = j.at("screens").at(index_set_name(I)).get<std::vector<double>>();
        p.t[I] = j.at("t").at(index_set_name(I)).get<double>();
    }
    return p;
}

// jets: symmetric forms stored as the packed upper triangle, row-major
inline Jet2<Rat> jet_from_json(const json& j, int m) {
    Jet2<Rat> out;
    out.x = rat_vector_from_json(j.at("x"), "x");
    if (static_cast<int>(out.x.size()) != m) throw parse_error("jet base-point dimension mismatch");
    out.y = rat_from_json(j.at("y"));
    out.yp = rat_vector_from_json(j.at("yp"), "yp");
    out.ypp = SymForm<Rat>(m);
    auto u = rat_vector_from_json(j.at("ypp"), "ypp");
    if (u.size() != out.ypp.upper.size()) throw parse_error("symmetric form needs m(m+1)/2 entries");
    out.ypp.upper = u;
    return out;
}

inline JetPair2<Rat> jet_pair_from_json(const json& j) {
    int m = j.at("m").get<int>();
    JetPair2<Rat> p;
    p.first = jet_from_json(j.at("first"), m);
    p.second = jet_from_json(j.at("second"), m);
    return p;
}

inline json qext_scalar_to_json(const Rat& r) { return rat_to_json(r); }
inline json qext_scalar_to_json(const QExt& q) { return qext_to_json(q); }

template <class S>
json jet_to_json(const Jet2<S>& jet) {
    json x = json::array(), yp = json::array(), ypp = json::array();
    for (const auto& v : jet.x) x.push_back(qext_scalar_to_json(v));
    for (const auto& v : jet.yp) yp.push_back(qext_scalar_to_json(v));
    for (const auto& v : jet.ypp.upper) ypp.push_back(qext_scalar_to_json(v));
    return json{{"x", x}, {"y", qext_scalar_to_json(jet.y)}, {"yp", yp}, {"ypp", ypp}};
}

template <class S>
json blown_jet_to_json(const JetBlown2<S>& b) {
    json dx = json::array(), dyp = json::array(), dypp = json::array();
    for (const auto& v : b.dx) dx.push_back(qext_scalar_to_json(v));
    for (const auto& v : b.dyp) dyp.push_back(qext_scalar_to_json(v));
    for (const auto& v : b.dypp.upper) dypp.push_back(qext_scalar_to_json(v));
    return json{{"base", jet_to_json(b.base)}, {"lambda", qext_scalar_to_json(b.lambda)},
                {"dx", dx},                    {"dy", qext_scalar_to_json(b.dy)},
                {"dyp", dyp},                  {"dypp", dypp}};
}

inline JetBlown2<Rat> blown_jet_from_json(const json& j) {
    int m = j.at("m").get<int>();
    JetBlown2<Rat> b;
    b.base = jet_from_json(j.at("base"), m);
    b.lambda = rat_from_json(j.at("lambda"));
    b.dx = rat_vector_from_json(j.at("dx"), "dx");
    b.dy = rat_from_json(j.at("dy"));
    b.dyp = rat_vector_from_json(j.at("dyp"), "dyp");
    b.dypp = SymForm<Rat>(m);
    auto u = rat_vector_from_json(j.at("dypp"), "dypp");
    if (u.size() != b.dypp.upper.size()) throw parse_error("symmetric form needs m(m+1)/2 entries");
    b.dypp.upper = u;
    return b;
}

inline Polynomial polynomial_from_json(const json& j) {
    int m = j.at("m").get<int>();
    Polynomial f(m);
    for (const auto& t : j.at("terms")) {
        auto e = t.at("exp").get<std::vector<int>>();
        if (static_cast<int>(e.size()) != m) throw parse_error("polynomial exponent length mismatch");
        f.add_term(e, rat_from_json(t.at("coeff")));
    }
    return f;
}

}  // namespace wbu
