#include <doctest.h>

#include "curvlab/poly.hpp"
#include "curvlab/polyfactor.hpp"
#include "curvlab/rng.hpp"

using namespace curvlab;

namespace {

PolyQ from_roots(const std::vector<Rat>& roots) {
    PolyQ p = PolyQ::constant(Rat(1));
    for (const auto& r : roots) p = p * PolyQ({-r, Rat(1)});
    return p;
}

PolyQ random_poly(Xoshiro256& rng, int deg) {
    std::vector<Rat> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(rng.range(-6, 6), rng.range(1, 3));
    if (c.back().is_zero()) c.back() = Rat(1);
    return PolyQ(c);
}

}  // namespace

TEST_CASE("divmod invariant a = qb + r") {
    Xoshiro256 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        PolyQ a = random_poly(rng, 2 + static_cast<int>(rng.below(5)));
        PolyQ b = random_poly(rng, 1 + static_cast<int>(rng.below(3)));
        PolyQ q, r;
        PolyQ::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("gcd contains common factor") {
    Xoshiro256 rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        PolyQ h = random_poly(rng, 1 + static_cast<int>(rng.below(2)));
        PolyQ f = random_poly(rng, static_cast<int>(rng.below(3)));
        PolyQ g = random_poly(rng, static_cast<int>(rng.below(3)));
        PolyQ d = poly_gcd(f * h, g * h);
        CHECK((d % h.monic()).is_zero());
    }
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
    PolyQ x = PolyQ::x();
    PolyQ p = (x - PolyQ::constant(Rat(1))) * (x - PolyQ::constant(Rat(1))) *
              (x + PolyQ::constant(Rat(2)));
    auto sq = squarefree_decomposition(p);
    REQUIRE(sq.size() == 2);
    PolyQ rebuilt = PolyQ::constant(Rat(1));
    for (const auto& [f, mult] : sq)
        for (int i = 0; i < mult; ++i) rebuilt = rebuilt * f;
    CHECK(rebuilt == p.monic());
}

TEST_CASE("sturm count and isolation") {
    PolyQ p = from_roots({Rat(-2), Rat(0), Rat(1, 2), Rat(3)});
    CHECK(sturm_count_all(p) == 4);
    CHECK(sturm_count(p, Rat(0), Rat(1)) == 1);   // (0, 1] contains 1/2
    CHECK(sturm_count(p, Rat(-3), Rat(0)) == 2);  // -2 and 0 in (-3, 0]
    auto ivs = isolate_real_roots(p);
    CHECK(ivs.size() == 4);
}

TEST_CASE("simplest rational in interval") {
    CHECK(simplest_rational_in(Rat(1, 3), Rat(1, 2)) == Rat(1, 2));
    CHECK(simplest_rational_in(Rat(-1, 2), Rat(1, 3)) == Rat(0));
    CHECK(simplest_rational_in(Rat(7, 3), Rat(5, 2)) == Rat(5, 2));
    CHECK(simplest_rational_in(Rat(13, 10), Rat(7, 5)) == Rat(4, 3));
}

TEST_CASE("rational roots with multiplicity and fractions") {
    PolyQ x = PolyQ::x();
    PolyQ p = from_roots({Rat(3, 7), Rat(3, 7), Rat(-2), Rat(5)});
    // Multiply in an irrational pair to make it realistic.
    p = p * PolyQ({Rat(-2), Rat(0), Rat(1)});  // x^2 - 2
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == std::make_pair(Rat(-2), 1));
    CHECK(roots[1] == std::make_pair(Rat(3, 7), 2));
    CHECK(roots[2] == std::make_pair(Rat(5), 1));
}

TEST_CASE("quadratic factor extraction") {
    SUBCASE("product of two rational quadratics") {
        PolyQ p = PolyQ({Rat(1), Rat(0), Rat(1)}) * PolyQ({Rat(2), Rat(0), Rat(1)});
        auto f = factor_rational_quadratic(p);
        CHECK(f.complete());
        CHECK(f.roots.empty());
        REQUIRE(f.quads.size() == 2);
        CHECK(f.quads[0].c == Rat(1));
        CHECK(f.quads[1].c == Rat(2));
    }
    SUBCASE("general quartic with cross terms") {
        PolyQ p = PolyQ({Rat(3), Rat(-1), Rat(1)}) * PolyQ({Rat(1), Rat(1), Rat(1)});
        auto f = factor_rational_quadratic(p);
        CHECK(f.complete());
        CHECK(f.quads.size() == 2);
    }
    SUBCASE("irreducible quartic stays in the residual") {
        PolyQ p({Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)});  // x^4 + 1
        auto f = factor_rational_quadratic(p);
        CHECK(!f.complete());
        CHECK(f.residual.degree() == 4);
    }
    SUBCASE("even sextic with real-irrational pair") {
        PolyQ p = PolyQ({Rat(-2), Rat(0), Rat(1)}) * PolyQ({Rat(3), Rat(0), Rat(1)}) *
                  PolyQ({Rat(-1), Rat(1)});
        auto f = factor_rational_quadratic(p);
        CHECK(f.complete());
        REQUIRE(f.roots.size() == 1);
        CHECK(f.roots[0].first == Rat(1));
        CHECK(f.quads.size() == 2);
    }
    SUBCASE("factors times residual rebuild the polynomial") {
        Xoshiro256 rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            PolyQ p = random_poly(rng, 2 + static_cast<int>(rng.below(4))).monic();
            auto f = factor_rational_quadratic(p);
            PolyQ rebuilt = f.residual;
            for (const auto& [r, mult] : f.roots)
                for (int i = 0; i < mult; ++i) rebuilt = rebuilt * PolyQ({-r, Rat(1)});
            for (const auto& q : f.quads)
                for (int i = 0; i < q.mult; ++i) rebuilt = rebuilt * PolyQ({q.c, q.b, Rat(1)});
            CHECK(rebuilt == p);
        }
    }
}

TEST_CASE("approximate roots of a known polynomial") {
    // (x-1)(x-2)(x^2+1)
    PolyD p({2.0, -3.0, 3.0, -3.0, 1.0});
    auto roots = roots_approx(p);
    REQUIRE(roots.size() == 4);
    double best1 = 1e9, best2 = 1e9, besti = 1e9;
    for (auto [re, im] : roots) {
        best1 = std::min(best1, std::abs(re - 1) + std::abs(im));
        best2 = std::min(best2, std::abs(re - 2) + std::abs(im));
        besti = std::min(besti, std::abs(re) + std::abs(im - 1));
    }
    CHECK(best1 < 1e-8);
    CHECK(best2 < 1e-8);
    CHECK(besti < 1e-8);
}
