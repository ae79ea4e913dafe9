#include "wbu/exact.hpp"
#include "wbu/jets.hpp"
#include "wbu/verify.hpp"
#include "wbu/weightings.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>

using namespace wbu;

namespace {

// Interpolation oracle for lifts: evaluate f along the curve at distinct
// rational nodes and read off the t^i coefficient by Lagrange interpolation.
// Independent of the truncated series composition used by lift().
Rat lift_oracle(const Polynomial& f, int i, const TruncatedCurve& q) {
    int deg = 0;
    for (const auto& [e, c] : f.terms) {
        int s = 0;
        for (int x : e) s += x;
        deg = std::max(deg, s);
    }
    int D = std::max(deg * q.order, q.order) + 1;
    std::vector<Rat> nodes, values;
    for (int k = 0; k <= D; ++k) {
        Rat t(k);
        std::vector<Rat> pos(static_cast<size_t>(q.dim()), Rat(0));
        for (int c = 0; c < q.dim(); ++c)
            for (int j = q.order; j >= 0; --j) pos[static_cast<size_t>(c)] = pos[static_cast<size_t>(c)] * t + q.at(c, j);
        nodes.push_back(t);
        values.push_back(f.eval(pos));
    }
    // Newton form, then expand to the monomial coefficient of t^i
    size_t n = nodes.size();
    std::vector<Rat> divided = values;
    for (size_t lvl = 1; lvl < n; ++lvl)
        for (size_t k = n - 1; k >= lvl; --k)
            divided[k] = (divided[k] - divided[k - 1]) / (nodes[k] - nodes[k - lvl]);
    std::vector<Rat> coeff(n, Rat(0)), basis{Rat(1)};
    for (size_t k = 0; k < n; ++k) {
        for (size_t j = 0; j < basis.size(); ++j) coeff[j] += divided[k] * basis[j];
        std::vector<Rat> next(basis.size() + 1, Rat(0));
        for (size_t j = 0; j < basis.size(); ++j) {
            next[j + 1] += basis[j];
            next[j] -= nodes[k] * basis[j];
        }
        basis = std::move(next);
    }
    return coeff[static_cast<size_t>(i)];
}

Polynomial random_poly(RatSampler& rs, int m, int maxdeg) {
    Polynomial f(m);
    int terms = 2 + rs.pick(4);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(static_cast<size_t>(m), 0);
        int budget = rs.pick(maxdeg + 1);
        for (int b = 0; b < budget; ++b) e[static_cast<size_t>(rs.pick(m))] += 1;
        f.add_term(e, rs.nonzero_rat());
    }
    return f;
}

TruncatedCurve random_curve(RatSampler& rs, int m, int order) {
    TruncatedCurve q(m, order);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= order; ++j) q.at(i, j) = rs.rat();
    return q;
}

}  // namespace

TEST_CASE("exact scalar arithmetic") {
    Exact two(Rat(2));
    Exact root2 = two.pow(Rat(1, 2));
    CHECK(root2 * root2 == two);
    CHECK((root2 * root2).is_rational());
    CHECK(Exact::power(Rat(4), Rat(1, 2)) == two);
    CHECK(Exact::power(Rat(8), Rat(1, 2)) == two * root2);
    CHECK(Exact::power(Rat(27), Rat(2, 3)) == Exact(Rat(9)));
    Exact x = Exact(Rat(3, 5)) * Exact::power(Rat(7), Rat(2, 5));
    CHECK(x.pow(Rat(5)).is_rational());
    CHECK(x.pow(Rat(5)) == Exact(pow_int(Rat(3, 5), 5) * pow_int(Rat(7), 2)));
    CHECK(x / x == Exact(Rat(1)));
    CHECK(x.sign() > 0);
    CHECK((-x).sign() < 0);
    CHECK(Exact(Rat(0)).is_zero());
}

TEST_CASE("weighted action") {
    WeightVector w({1, 2});
    std::vector<Rat> v{Rat(3), Rat(5)};
    auto r = weighted_action(Rat(2), v, w);
    CHECK(r == std::vector<Rat>{Rat(6), Rat(20)});

    WeightVector w0({0, 1, 2});
    std::vector<Rat> abc{Rat(7), Rat(-2), Rat(5)};
    auto z = weighted_action(Rat(0), abc, w0);
    CHECK(z == std::vector<Rat>{Rat(7), Rat(0), Rat(0)});

    // identity and group law
    RatSampler rs(11);
    for (int it = 0; it < 100; ++it) {
        std::vector<Rat> u{rs.rat(), rs.rat(), rs.rat()};
        CHECK(weighted_action(Rat(1), u, w0) == u);
        Rat l1 = rs.nonzero_rat(), l2 = rs.nonzero_rat();
        CHECK(weighted_action(l1, weighted_action(l2, u, w0), w0) == weighted_action(l1 * l2, u, w0));
    }
}

TEST_CASE("lifts of functions to higher tangent bundles") {
    RatSampler rs(23);

    SECTION("lift of a coordinate is its coefficient") {
        auto q = random_curve(rs, 3, 4);
        Polynomial x1 = Polynomial::variable(3, 0);
        for (int i = 0; i <= 4; ++i) CHECK(lift(x1, i, q) == q.at(0, i));
    }

    SECTION("Leibniz rule") {
        for (int it = 0; it < 100; ++it) {
            auto f = random_poly(rs, 2, 3);
            auto g = random_poly(rs, 2, 3);
            auto q = random_curve(rs, 2, 4);
            for (int i = 0; i <= 4; ++i) {
                Rat lhs = lift(f * g, i, q);
                Rat rhs(0);
                for (int a = 0; a <= i; ++a) rhs += lift(f, a, q) * lift(g, i - a, q);
                CHECK(lhs == rhs);
            }
        }
    }

    SECTION("homogeneity against the interpolation oracle") {
        for (int it = 0; it < 30; ++it) {
            auto f = random_poly(rs, 2, 3);
            auto q = random_curve(rs, 2, 4);
            Rat lambda(2);
            auto scaled = curve_scale(lambda, q);
            for (int i = 0; i <= 4; ++i) {
                CHECK(lift(f, i, q) == lift_oracle(f, i, q));
                CHECK(lift(f, i, scaled) == pow_int(lambda, i) * lift(f, i, q));
            }
        }
    }

    SECTION("degree past the order errors") {
        auto q = random_curve(rs, 2, 3);
        CHECK_THROWS_AS(lift(Polynomial::variable(2, 0), 4, q), domain_error);
    }
}

TEST_CASE("membership in standard weightings") {
    WeightVector w({0, 1, 2});
    TruncatedCurve q(3, 3);
    q.at(0, 0) = 5;  // f1(0) free
    q.at(1, 1) = 2;
    q.at(2, 2) = 3;
    CHECK(in_weighting(q, w));
    q.at(2, 1) = 1;  // f3'(0) != 0
    CHECK_FALSE(in_weighting(q, w));

    WeightVector zero({0, 0, 0});
    CHECK(in_weighting(q, zero));  // final weighting contains everything

    // membership forces lifts of coordinates below their weight to vanish
    RatSampler rs(5);
    for (int it = 0; it < 50; ++it) {
        TruncatedCurve c(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = w[i]; j <= 3; ++j) c.at(i, j) = rs.rat();
        REQUIRE(in_weighting(c, w));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < w[i]; ++j) CHECK(lift(Polynomial::variable(3, i), j, c) == 0);
    }

    TruncatedCurve low(3, 0);
    CHECK_THROWS_AS(in_weighting(low, w), domain_error);
}

TEST_CASE("induced maps between weighted normal bundles") {
    NormalVector v(WeightVector({1, 1, 2}), {Rat(4), Rat(-1), Rat(9)});

    SECTION("identity morphism") {
        auto r = normal_induced(v, WeightVector({1, 1, 2}));
        CHECK(r.coords == v.coords);
    }

    SECTION("projection keeps matching weights only") {
        auto r = normal_induced(v, WeightVector({0, 1, 1}));
        CHECK(r.coords == std::vector<Rat>{Rat(0), Rat(-1), Rat(0)});
    }

    SECTION("inclusion of (2,2) into (1,1) kills every normal vector") {
        NormalVector u(WeightVector({2, 2}), {Rat(3), Rat(5)});
        auto r = normal_induced(u, WeightVector({1, 1}));
        CHECK(r.coords == std::vector<Rat>{Rat(0), Rat(0)});
    }

    SECTION("weight increase is not a morphism") {
        CHECK_THROWS_AS(normal_induced(v, WeightVector({2, 1, 2})), domain_error);
    }

    SECTION("stepwise projection equals direct projection") {
        RatSampler rs(7);
        WeightVector w1({2, 3, 1, 2}), w2({2, 1, 1, 0}), w3({1, 1, 0, 0});
        for (int it = 0; it < 50; ++it) {
            NormalVector n(w1, {rs.rat(), rs.rat(), rs.rat(), rs.rat()});
            auto direct = normal_induced(n, w3);
            auto step = normal_induced(normal_induced(n, w2), w3);
            CHECK(direct.coords == step.coords);
        }
    }
}

TEST_CASE("mixed-order curve sums truncate with a flag") {
    TruncatedCurve a(2, 3), b(2, 5);
    a.at(0, 3) = 1;
    b.at(0, 5) = 2;
    auto r = add_curves(a, b);
    CHECK(r.truncated);
    CHECK(r.curve.order == 3);
    auto same = add_curves(a, a);
    CHECK_FALSE(same.truncated);
}

TEST_CASE("structure filtration of standard weightings") {
    WeightVector w({0, 1, 2});

    SECTION("the printed generator lists at low degrees") {
        auto g1 = filtration_generators(w, 1);
        CHECK(g1 == std::set<MultiIndex>{{0, 1, 0}, {0, 0, 1}});
        auto g2 = filtration_generators(w, 2);
        CHECK(g2 == std::set<MultiIndex>{{0, 2, 0}, {0, 0, 1}});
        auto g3 = filtration_generators(w, 3);
        CHECK(g3 == std::set<MultiIndex>{{0, 3, 0}, {0, 1, 1}, {0, 0, 2}});
        auto g4 = filtration_generators(w, 4);
        CHECK(g4 == std::set<MultiIndex>{{0, 4, 0}, {0, 2, 1}, {0, 0, 2}});
    }

    SECTION("degree zero is the unit ideal") {
        CHECK(filtration_generators(w, 0) == std::set<MultiIndex>{{0, 0, 0}});
    }

    SECTION("brute force for trivial weights") {
        CHECK(filtration_generators(WeightVector({1, 1}), 2) ==
              std::set<MultiIndex>{{2, 0}, {1, 1}, {0, 2}});
    }

    SECTION("generators are minimal and sufficient") {
        RatSampler rs(31);
        for (int it = 0; it < 20; ++it) {
            WeightVector rw({rs.pick(3), rs.pick(3), rs.pick(3)});
            for (int i = 1; i <= 5; ++i) {
                auto gens = filtration_generators(rw, i);
                for (const auto& a : gens) {
                    CHECK(weighted_degree(a, rw) >= i);
                    for (size_t j = 0; j < a.size(); ++j) {
                        if (a[j] == 0) continue;
                        MultiIndex b = a;
                        --b[j];
                        CHECK(weighted_degree(b, rw) < i);
                    }
                }
                // sufficiency: every monomial of weighted degree >= i within the
                // support lies in the generated ideal
                for (const auto& mono : monomials_up_to(3, 6)) {
                    bool support = true;
                    for (size_t j = 0; j < mono.size(); ++j)
                        if (mono[j] > 0 && rw[static_cast<int>(j)] == 0) support = false;
                    if (!support) continue;
                    if (weighted_degree(mono, rw) >= i) CHECK(in_monomial_ideal(mono, gens));
                }
            }
        }
    }
}

TEST_CASE("weighted conormal bases") {
    WeightVector w({0, 1, 2});
    CHECK(conormal_basis(w, 1) == std::set<MultiIndex>{{0, 1, 0}});
    CHECK(conormal_basis(w, 2) == std::set<MultiIndex>{{0, 2, 0}, {0, 0, 1}});
    CHECK(conormal_basis(w, 3) == std::set<MultiIndex>{{0, 3, 0}, {0, 1, 1}});
    CHECK(conormal_basis(w, 4) == std::set<MultiIndex>{{0, 4, 0}, {0, 2, 1}, {0, 0, 2}});
    CHECK(conormal_basis(WeightVector({2}), 3).empty());

    // each basis element has exact degree and lies in the filtration ideal
    for (int i = 1; i <= 6; ++i)
        for (const auto& a : conormal_basis(w, i)) {
            CHECK(weighted_degree(a, w) == i);
            CHECK(in_monomial_ideal(a, filtration_generators(w, i)));
        }
}

TEST_CASE("linear data of a weighting") {
    CHECK(linearized_ranks(WeightVector({0, 1, 2})) == std::map<int, int>{{1, 1}, {2, 1}});
    CHECK(linearized_ranks(WeightVector({1, 1, 2, 3, 3})) == std::map<int, int>{{1, 2}, {2, 1}, {3, 2}});
    // rank sum = codimension of the support
    WeightVector w({0, 2, 5, 0, 1});
    int sum = 0;
    for (const auto& [deg, k] : linearized_ranks(w)) sum += k;
    int codim = 0;
    for (int i = 0; i < w.dim(); ++i)
        if (w[i] > 0) ++codim;
    CHECK(sum == codim);
}

TEST_CASE("intersections of standard weightings") {
    CHECK(intersect_standard(WeightVector({0, 1}), WeightVector({1, 0})) == WeightVector({1, 1}));
    CHECK(intersect_standard(WeightVector({0, 2, 1}), WeightVector({1, 2, 0})) == WeightVector({1, 2, 1}));
    WeightVector w({3, 0, 2});
    CHECK(intersect_standard(w, w) == w);
    CHECK_THROWS_AS(intersect_standard(WeightVector({1}), WeightVector({1, 2})), domain_error);
}

TEST_CASE("clean-intersection identity for structure filtrations") {
    // degree i of the intersection ideal = sum over i1+i2=i of products,
    // checked by exhaustive monomial division up to total degree 8
    RatSampler rs(101);
    for (int pair = 0; pair < 50; ++pair) {
        WeightVector w1({rs.pick(3), rs.pick(3), rs.pick(3)});
        WeightVector w2({rs.pick(3), rs.pick(3), rs.pick(3)});
        WeightVector meet = intersect_standard(w1, w2);
        for (int i = 1; i <= 6; ++i) {
            auto gen_meet = filtration_generators(meet, i);
            std::set<MultiIndex> products;
            for (int i1 = 0; i1 <= i; ++i1) {
                for (const auto& a : filtration_generators(w1, i1))
                    for (const auto& b : filtration_generators(w2, i - i1)) {
                        MultiIndex p(a);
                        for (size_t j = 0; j < p.size(); ++j) p[j] += b[j];
                        products.insert(p);
                    }
            }
            for (const auto& mono : monomials_up_to(3, 8)) {
                CHECK(in_monomial_ideal(mono, gen_meet) == in_monomial_ideal(mono, products));
            }
        }
    }
}

TEST_CASE("uniform alignment of standard weighting families") {
    CHECK(check_uniform_alignment({WeightVector({0, 2, 1}), WeightVector({1, 2, 0})}).ok);
    auto bad = check_uniform_alignment({WeightVector({1, 1, 0}), WeightVector({1, 2, 1})});
    CHECK_FALSE(bad.ok);
    CHECK(bad.column == 1);
    CHECK(check_uniform_alignment({WeightVector({4, 0, 7})}).ok);
}

TEST_CASE("degrees past the order factor multiplicatively") {
    // for w=(0,1,2) of order 2, generators at degree i in {3,4,5} split into
    // products of monomials of degrees i_j <= 2 summing to i
    WeightVector w({0, 1, 2});
    std::function<bool(const MultiIndex&, int)> can_split = [&](const MultiIndex& g, int i) -> bool {
        if (i <= 2) return weighted_degree(g, w) >= i;
        // peel off one factor of degree i1 in 1..2
        std::vector<MultiIndex> subs;
        MultiIndex a(g.size(), 0);
        std::function<void(size_t)> rec = [&](size_t pos) {
            if (pos == g.size()) {
                subs.push_back(a);
                return;
            }
            for (int k = 0; k <= g[pos]; ++k) {
                a[pos] = k;
                rec(pos + 1);
            }
        };
        rec(0);
        for (int i1 = 1; i1 <= 2; ++i1)
            for (const auto& sa : subs) {
                if (weighted_degree(sa, w) < i1) continue;
                MultiIndex sb(g);
                for (size_t j = 0; j < sb.size(); ++j) sb[j] -= sa[j];
                if (can_split(sb, i - i1)) return true;
            }
        return false;
    };
    for (int i : {3, 4, 5})
        for (const auto& g : filtration_generators(w, i)) CHECK(can_split(g, i));
}
