#pragma once

#include "wbu/blowup.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace wbu {

struct VerifyConfig {
    double richardson_tol = 0.05;  // relative deviation of Richardson ratios
    double float_eq = 1e-10;       // absolute float equality unless stated otherwise
    std::vector<double> fd_steps = {1e-2, 3e-3, 1e-3};  // base one-sided steps tried in turn
    std::uint64_t seed = 20240915;
};

// ---------------------------------------------------------------------------
// One-sided finite-difference smoothness probe

struct FdComponentReport {
    double ratio1 = 0, ratio2 = 0;
    bool converged1 = false, converged2 = false;
    bool pass = false;
};

struct FdReport {
    bool pass = true;
    std::vector<FdComponentReport> components;
    std::string note;
};

namespace detail {

// A smooth one-sided expansion has difference quotients with error c_p h^p, so
// consecutive step halvings shrink the defect by 2^p. Accept the ratios 2, 4
// and 8 (p = 1..3 for degenerate leading terms); anything else flags a
// non-smooth boundary.
inline bool ratio_acceptable(double r, double tol) {
    for (double target : {2.0, 4.0, 8.0})
        if (std::abs(r - target) <= tol * target) return true;
    return false;
}

}  // namespace detail

using VectorMap = std::function<std::vector<double>(const std::vector<double>&)>;

// Richardson consistency of one-sided first and second difference quotients of
// `map` at `x0` along `dir`. A short ladder of base steps is tried: smooth
// one-sided expansions resolve at some window (or their defects sink below the
// rounding floor), while fractional-power boundary behaviour keeps the same
// wrong ratio at every scale.
inline FdReport fd_smoothness(const VectorMap& map, const std::vector<double>& x0,
                              const std::vector<double>& dir, const VerifyConfig& cfg = {}) {
    auto shift = [&](double t) {
        std::vector<double> x = x0;
        for (size_t i = 0; i < x.size(); ++i) x[i] += t * dir[i];
        return map(x);
    };
    size_t n = map(x0).size();
    FdReport rep;
    std::vector<FdComponentReport> comp(n);
    std::vector<bool> ok1(n, false), ok2(n, false);
    for (double h : cfg.fd_steps) {
        std::vector<std::vector<double>> f;  // values at 0, h/4, h/2, h, 2h
        for (double t : {0.0, h / 4, h / 2, h, 2 * h}) f.push_back(shift(t));
        for (size_t c = 0; c < n; ++c) {
            double scale = std::max({1.0, std::abs(f[0][c]), std::abs(f[3][c])});
            double noise1 = 64 * 1e-16 * scale / h;
            double noise2 = 64 * 1e-16 * scale / (h * h);
            double q1h = (f[3][c] - f[0][c]) / h;
            double q1h2 = (f[2][c] - f[0][c]) / (h / 2);
            double q1h4 = (f[1][c] - f[0][c]) / (h / 4);
            double num1 = q1h - q1h2, den1 = q1h2 - q1h4;
            if (std::abs(num1) <= noise1 && std::abs(den1) <= noise1) {
                comp[c].converged1 = true;
                ok1[c] = true;
            } else if (den1 != 0) {
                comp[c].ratio1 = num1 / den1;
                if (detail::ratio_acceptable(comp[c].ratio1, cfg.richardson_tol)) ok1[c] = true;
            }
            double q2h = (f[4][c] - 2 * f[3][c] + f[0][c]) / (h * h);
            double q2h2 = (f[3][c] - 2 * f[2][c] + f[0][c]) / (h * h / 4);
            double q2h4 = (f[2][c] - 2 * f[1][c] + f[0][c]) / (h * h / 16);
            double num2 = q2h - q2h2, den2 = q2h2 - q2h4;
            if (std::abs(num2) <= noise2 && std::abs(den2) <= noise2) {
                comp[c].converged2 = true;
                ok2[c] = true;
            } else if (den2 != 0) {
                comp[c].ratio2 = num2 / den2;
                if (detail::ratio_acceptable(comp[c].ratio2, cfg.richardson_tol)) ok2[c] = true;
            }
        }
    }
    for (size_t c = 0; c < n; ++c) {
        comp[c].pass = ok1[c] && ok2[c];
        rep.pass = rep.pass && comp[c].pass;
    }
    rep.components = comp;
    return rep;
}

// ---------------------------------------------------------------------------
// Coherence of blow-up points

struct CoherenceReport {
    bool coherent = true;
    std::vector<std::string> witnesses;
};

// Necessary relations of points of the building-set blow-up: a common base
// point, and nested components determined through the induced maps wherever
// those are defined.
inline CoherenceReport coherence(const BuildingSet& bs, const BlowupPoint& p) {
    CoherenceReport rep;
    std::optional<std::vector<Exact>> base;
    for (int g = 0; g < bs.size(); ++g) {
        auto it = p.comps.find(bs[g].name);
        if (it == p.comps.end()) {
            rep.coherent = false;
            rep.witnesses.push_back("missing component " + bs[g].name);
            return rep;
        }
        const auto& comp = it->second;
        std::vector<Exact> b =
            comp.divisor ? divisor_base_point(bs[g].induced_weights(), comp.v) : comp.v;
        if (!base) {
            base = b;
        } else if (!(*base == b)) {
            rep.coherent = false;
            rep.witnesses.push_back("base point of " + bs[g].name + " disagrees");
        }
    }
    for (int a = 0; a < bs.size(); ++a)
        for (int b = 0; b < bs.size(); ++b) {
            if (a == b) continue;
            // a strictly inside b as submanifolds
            if (!bs.contains(b, a) || bs[a].space == bs[b].space) continue;
            const auto& small = p.comps.at(bs[a].name);
            const auto& big = p.comps.at(bs[b].name);
            SinglePoint<Exact> sp;
            sp.divisor = small.divisor;
            sp.v = small.v;
            try {
                SinglePoint<Exact> ind =
                    induced_blowdown_nested(bs[a].induced_weights(), bs[b].induced_weights(), sp);
                Component expect;
                expect.divisor = ind.divisor;
                expect.v = ind.v;
                if (!component_equal(bs[b].induced_weights(), expect, big)) {
                    rep.coherent = false;
                    rep.witnesses.push_back("component " + bs[b].name + " is not induced from " + bs[a].name);
                }
            } catch (const domain_error&) {
                // outside the induced-map domain: no relation to check
            }
        }
    return rep;
}

// Control set of an arbitrary component tuple, straight from the definition:
// the elements through the base point that are not determined by a smaller
// component via the induced maps.
inline std::vector<std::string> tuple_control_set(const BuildingSet& bs, const BlowupPoint& p) {
    const auto& first = p.comps.at(bs[0].name);
    std::vector<Exact> base =
        first.divisor ? divisor_base_point(bs[0].induced_weights(), first.v) : first.v;
    std::vector<std::string> out;
    for (int g = 0; g < bs.size(); ++g) {
        WeightVector wg = bs[g].induced_weights();
        bool on = true;
        for (int i = 0; i < wg.dim(); ++i)
            if (wg[i] > 0 && !base[static_cast<size_t>(i)].is_zero()) on = false;
        if (!on) continue;
        bool determined = false;
        for (int h = 0; h < bs.size() && !determined; ++h) {
            if (h == g || !bs.contains(g, h) || bs[h].space == bs[g].space) continue;
            const auto& small = p.comps.at(bs[h].name);
            SinglePoint<Exact> sp;
            sp.divisor = small.divisor;
            sp.v = small.v;
            try {
                induced_blowdown_nested(bs[h].induced_weights(), wg, sp);
                determined = true;
            } catch (const domain_error&) {
            }
        }
        if (!determined) out.push_back(bs[g].name);
    }
    return out;
}

struct ControlSearchReport {
    int tuples = 0;
    int nest_control_sets = 0;  // how many sampled control sets were nests
};

// Exploratory search over coherent tuples of a trivially weighted building
// set: counts how often the control set is a nest. Asserts nothing; the
// question whether it always is one for trivial weightings stays open.
inline ControlSearchReport control_set_nest_search(const BuildingSet& bs, std::uint64_t seed,
                                                   int samples = 50) {
    std::mt19937_64 rng(seed);
    ControlSearchReport rep;
    auto flags = nests_from_flags(bs);
    for (int it = 0; it < samples; ++it) {
        BlowupPoint p;
        for (int g = 0; g < bs.size(); ++g) {
            WeightVector w = bs[g].induced_weights();
            Component c;
            c.divisor = true;
            c.v.assign(static_cast<size_t>(bs.dim), Exact(Rat(0)));
            bool nonzero = false;
            for (int i = 0; i < w.dim(); ++i)
                if (w[i] > 0) {
                    long v = static_cast<long>(rng() % 5) - 2;
                    c.v[static_cast<size_t>(i)] = Exact(Rat(v));
                    if (v != 0) nonzero = true;
                }
            if (!nonzero) c.v[static_cast<size_t>(bs[g].coord->zero_set.front())] = Exact(Rat(1));
            c.v = canonical_ray(w, c.v);
            p.comps[bs[g].name] = std::move(c);
        }
        if (!coherence(bs, p).coherent) continue;
        ++rep.tuples;
        auto names = tuple_control_set(bs, p);
        std::vector<int> idx;
        for (const auto& n : names) idx.push_back(bs.index_of(n));
        std::sort(idx.begin(), idx.end());
        if (flags.nests.count(idx)) ++rep.nest_control_sets;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Flag-search nest oracle

struct NestOracleReport {
    long flag_count = 0;
    std::vector<std::vector<int>> nests;  // sorted index sets, including empty
};

// Ground-truth nest enumeration straight from the definition: all unions of
// factor sets along flags of the arrangement.
inline NestOracleReport nest_oracle(const BuildingSet& bs, int arr_cap = 64) {
    auto search = nests_from_flags(bs, arr_cap);
    NestOracleReport rep;
    rep.flag_count = search.flag_count;
    rep.nests.assign(search.nests.begin(), search.nests.end());
    std::sort(rep.nests.begin(), rep.nests.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Stratification closure check

struct StratumClosureReport {
    bool pass = true;
    int sequences = 0;
    std::vector<std::string> violations;
};

// Along every in-chart sequence with a constant control set, the control set of
// the limit point must contain the eventual one.
inline StratumClosureReport stratum_closure(const ChartContext& ctx,
                                            const std::vector<std::vector<std::vector<Exact>>>& sequences) {
    StratumClosureReport rep;
    for (const auto& seq : sequences) {
        if (seq.size() < 2) continue;
        ++rep.sequences;
        std::vector<std::string> tail = control_set(ctx, seq[seq.size() - 2]);
        std::vector<std::string> limit = control_set(ctx, seq.back());
        bool contained = true;
        for (const auto& n : tail)
            if (std::find(limit.begin(), limit.end(), n) == limit.end()) contained = false;
        if (!contained) {
            rep.pass = false;
            std::ostringstream os;
            os << "sequence " << rep.sequences << ": control set not monotone at the limit";
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

// Deterministic rational sampling helpers for seeded property tests.
struct RatSampler {
    std::mt19937_64 rng;
    explicit RatSampler(std::uint64_t seed) : rng(seed) {}

    Rat rat(int lo = -6, int hi = 6, int den_hi = 4) {
        std::uniform_int_distribution<int> num(lo, hi);
        std::uniform_int_distribution<int> den(1, den_hi);
        return Rat(num(rng), den(rng));
    }
    Rat nonzero_rat(int lo = -6, int hi = 6, int den_hi = 4) {
        Rat r;
        do {
            r = rat(lo, hi, den_hi);
        } while (r == 0);
        return r;
    }
    Rat positive_rat(int hi = 6, int den_hi = 4) {
        std::uniform_int_distribution<int> num(1, hi);
        std::uniform_int_distribution<int> den(1, den_hi);
        return Rat(num(rng), den(rng));
    }
    int pick(int n) {  // 0..n-1
        std::uniform_int_distribution<int> d(0, n - 1);
        return d(rng);
    }
};

}  // namespace wbu
