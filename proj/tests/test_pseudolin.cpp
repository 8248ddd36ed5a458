#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "curvlab/pseudolin.hpp"
#include "curvlab/rng.hpp"

using namespace curvlab;
using namespace curvlab::pseudolin;

namespace {

MatQ from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int n = static_cast<int>(rows.size());
    MatQ m(n, static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long v : row) m(i, j++) = Rat(v);
        ++i;
    }
    return m;
}

// Independent characteristic polynomial: Laplace expansion of det(xI - A)
// over the polynomial ring.
PolyQ charpoly_laplace(const MatQ& a) {
    const int n = a.rows();
    std::vector<PolyQ> entries(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PolyQ e = PolyQ::constant(-a(i, j));
            if (i == j) e = e + PolyQ::x();
            entries[static_cast<std::size_t>(i * n + j)] = e;
        }
    std::function<PolyQ(std::vector<int>, int)> det = [&](std::vector<int> cols,
                                                          int row) -> PolyQ {
        if (cols.empty()) return PolyQ::constant(Rat(1));
        PolyQ acc;
        for (std::size_t t = 0; t < cols.size(); ++t) {
            std::vector<int> rest;
            for (std::size_t u = 0; u < cols.size(); ++u)
                if (u != t) rest.push_back(cols[u]);
            PolyQ term = entries[static_cast<std::size_t>(row * n + cols[t])] * det(rest, row + 1);
            acc = (t % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    };
    std::vector<int> cols;
    for (int j = 0; j < n; ++j) cols.push_back(j);
    return det(cols, 0);
}

MatQ random_matrix(Xoshiro256& rng, int n, int lo = -4, int hi = 4) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Rat(rng.range(lo, hi));
    return m;
}

MatQ inverse(const MatQ& a) {
    const int n = a.rows();
    MatQ aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = Rat(1);
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!aug(i, col).is_zero()) {
                piv = i;
                break;
            }
        REQUIRE(piv >= 0);
        for (int j = 0; j < 2 * n; ++j) std::swap(aug(piv, j), aug(col, j));
        Rat inv = Rat(1) / aug(col, col);
        for (int j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == col || aug(i, col).is_zero()) continue;
            Rat f = aug(i, col);
            for (int j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    MatQ out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

}  // namespace

TEST_CASE("inner product on the canonical basis") {
    Signature s11(1, 1), s03(0, 3), s22(2, 2);
    VecQ e1(2), e2(2);
    e1[0] = Rat(1);
    e2[1] = Rat(1);
    CHECK(inner(e1, e1, s11) == Rat(-1));
    VecQ a(3), b(3);
    a[0] = Rat(1);
    b[1] = Rat(1);
    CHECK(inner(a, b, s03) == Rat(0));
    VecQ n(4);
    n[0] = Rat(1);
    n[2] = Rat(1);
    CHECK(inner(n, n, s22) == Rat(0));
    CHECK_THROWS_AS(inner(a, n, s22), std::invalid_argument);
}

TEST_CASE("self- and skew-adjointness against the indefinite form") {
    CHECK(is_self_adjoint(MatQ::identity(3), Signature(1, 2)));
    // Swap map on signature (1,1): (Te1,e2) = 1 but (e1,Te2) = -1.
    MatQ swp = from_rows({{0, 1}, {1, 0}});
    CHECK(!is_self_adjoint(swp, Signature(1, 1)));
    CHECK(is_self_adjoint(swp, Signature(0, 2)));
    MatQ rot = from_rows({{0, -1}, {1, 0}});
    CHECK(is_skew_adjoint(rot, Signature(0, 2)));
}

TEST_CASE("characteristic polynomial matches the Laplace oracle") {
    Xoshiro256 rng(5);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 6; ++trial) {
            MatQ a = random_matrix(rng, n);
            CHECK(char_poly(a) == charpoly_laplace(a));
        }
}

TEST_CASE("spectrum examples") {
    MatQ d = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    auto s = spectrum(d);
    CHECK(s.exact);
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries[0].value == Rat(0));
    CHECK(s.entries[0].mult == 1);
    CHECK(s.entries[1].value == Rat(1));
    CHECK(s.entries[1].mult == 2);

    auto nil = spectrum(from_rows({{0, 1}, {0, 0}}));
    REQUIRE(nil.entries.size() == 1);
    CHECK(nil.entries[0].value == Rat(0));
    CHECK(nil.entries[0].mult == 2);

    auto rot = spectrum(from_rows({{0, -1}, {1, 0}}));
    REQUIRE(rot.entries.size() == 1);
    CHECK(rot.entries[0].kind == SpectrumEntry::Kind::QuadraticPair);
    CHECK(rot.entries[0].qb == Rat(0));
    CHECK(rot.entries[0].qc == Rat(1));  // x^2 + 1: conjugate pair +-i
}

TEST_CASE("spectrum multiplicities sum to the dimension") {
    Xoshiro256 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng.below(4));
        MatQ a = random_matrix(rng, n);
        auto s = spectrum(a);
        int total = 0;
        for (const auto& e : s.entries)
            total += e.mult * (e.kind == SpectrumEntry::Kind::QuadraticPair ? 2 : 1);
        CHECK(total == n);
    }
}

TEST_CASE("jordan signature examples") {
    auto j1 = jordan_signature(from_rows({{0, 1}, {0, 0}}));
    REQUIRE(j1.classes.size() == 1);
    CHECK(j1.classes[0].value == Rat(0));
    CHECK(j1.classes[0].partition == std::vector<int>{2});

    auto j2 = jordan_signature(from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
    REQUIRE(j2.classes.size() == 2);
    CHECK(j2.classes[0].value == Rat(2));
    CHECK(j2.classes[0].partition == std::vector<int>{1, 1});
    CHECK(j2.classes[1].value == Rat(3));
    CHECK(j2.classes[1].partition == std::vector<int>{1});

    MatQ two_blocks = from_rows({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    // Rank sequence oracle: rank(N) = 2, rank(N^2) = 0.
    CHECK(rank(two_blocks) == 2);
    CHECK(rank(two_blocks * two_blocks) == 0);
    auto j3 = jordan_signature(two_blocks);
    REQUIRE(j3.classes.size() == 1);
    CHECK(j3.classes[0].partition == std::vector<int>{2, 2});
}

TEST_CASE("jordan equivalence") {
    auto a = jordan_signature(from_rows({{0, 1}, {0, 0}}));
    auto b = jordan_signature(from_rows({{0, 0}, {0, 0}}));
    CHECK(jordan_equivalent(a, a));
    CHECK(!jordan_equivalent(a, b));  // same spectrum, different form
    auto c = jordan_signature(from_rows({{1, 0}, {0, -1}}));
    auto d = jordan_signature(from_rows({{-1, 0}, {0, 1}}));
    CHECK(jordan_equivalent(c, d));  // multiset order does not matter
}

TEST_CASE("jordan signature is conjugation invariant") {
    Xoshiro256 rng(7);
    int done = 0;
    while (done < 12) {
        int n = 2 + static_cast<int>(rng.below(3));
        MatQ t = random_matrix(rng, n, -3, 3);
        MatQ s = random_matrix(rng, n, -3, 3);
        if (rank(s) != n) continue;
        MatQ conj = s * t * inverse(s);
        CHECK(jordan_equivalent(jordan_signature(t), jordan_signature(conj)));
        ++done;
    }
}

TEST_CASE("prescribed jordan blocks are recovered") {
    Xoshiro256 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 2 + static_cast<int>(rng.below(7));  // m <= 8
        // Random block description.
        std::map<Rat, std::vector<int>> blocks;
        int used = 0;
        while (used < m) {
            int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - used)));
            Rat ev(rng.range(-2, 2));
            blocks[ev].push_back(size);
            used += size;
        }
        MatQ a(m, m);
        int at = 0;
        for (auto& [ev, parts] : blocks) {
            std::sort(parts.rbegin(), parts.rend());
            for (int sz : parts) {
                for (int i = 0; i < sz; ++i) {
                    a(at + i, at + i) = ev;
                    if (i + 1 < sz) a(at + i, at + i + 1) = Rat(1);
                }
                at += sz;
            }
        }
        auto js = jordan_signature(a);
        REQUIRE(js.exact);
        REQUIRE(js.classes.size() == blocks.size());
        for (const auto& cls : js.classes) {
            REQUIRE(cls.kind == JordanClass::Kind::Rational);
            CHECK(cls.partition == blocks.at(cls.value));
        }
    }
}

TEST_CASE("rank sequence is non-increasing and stabilizes") {
    Xoshiro256 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(rng.below(3));
        MatQ a = random_matrix(rng, n, -2, 2);
        MatQ pw = a;
        int prev = rank(a);
        for (int k = 2; k <= n + 1; ++k) {
            pw = pw * a;
            int r = rank(pw);
            CHECK(r <= prev);
            if (k == n + 1) CHECK(r == rank(pw * a));  // stabilized by k = n
            prev = r;
        }
    }
}

TEST_CASE("jordan simplicity") {
    CHECK(is_jordan_simple(MatQ::identity(3)));
    CHECK(!is_jordan_simple(from_rows({{0, 1}, {0, 0}})));
    CHECK(is_jordan_simple(from_rows({{0, -1}, {1, 0}})));  // complex pair, blocks size 1
}

TEST_CASE("degraded jordan falls back to float with a warning") {
    // Companion matrix of x^3 - x - 1 (irreducible over Q, irrational real root).
    MatQ a = from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
    auto js = jordan_signature(a);
    CHECK(!js.exact);
    CHECK(!js.warning.empty());
    CHECK(js.fclasses.size() == 2);  // one real root + one conjugate pair
}

TEST_CASE("inertia matches congruence-transform oracle") {
    Xoshiro256 rng(10);
    int done = 0;
    while (done < 15) {
        int n = 2 + static_cast<int>(rng.below(4));
        MatQ d(n, n);
        Inertia expect;
        for (int i = 0; i < n; ++i) {
            int pick = static_cast<int>(rng.below(3));
            d(i, i) = Rat(pick == 0 ? 0 : (pick == 1 ? rng.range(1, 3) : rng.range(-3, -1)));
            if (d(i, i).is_zero())
                ++expect.zero;
            else if (d(i, i).sign() > 0)
                ++expect.pos;
            else
                ++expect.neg;
        }
        MatQ s = random_matrix(rng, n, -3, 3);
        if (rank(s) != n) continue;
        MatQ g = s.transpose() * d * s;
        Inertia got = inertia(g);
        CHECK(got.pos == expect.pos);
        CHECK(got.neg == expect.neg);
        CHECK(got.zero == expect.zero);
        ++done;
    }
}

TEST_CASE("nullspace vectors annihilate") {
    Xoshiro256 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        MatQ a(3, 5);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = Rat(rng.range(-3, 3));
        auto basis = nullspace(a);
        CHECK(static_cast<int>(basis.size()) == 5 - rank(a));
        for (const auto& v : basis) CHECK(a.apply(v).is_zero());
    }
}

TEST_CASE("vector-field numbers") {
    CHECK(adams_number(1) == 0);
    CHECK(adams_number(8) == 7);
    CHECK(adams_number(16) == 8);
    CHECK_THROWS_AS(adams_number(0), std::invalid_argument);
    for (int q = 1; q <= 64; ++q) {
        CHECK(adams_number(q) < q);
        if (q % 2 == 1) CHECK(adams_number(q) == 0);
    }
}

TEST_CASE("stabilization") {
    MatQ one = from_rows({{1}});
    MatQ st = stabilize(one, 1);
    CHECK(st.rows() == 2);
    CHECK(st(0, 0) == Rat(1));
    CHECK(st(1, 1) == Rat(0));
    CHECK(stabilize(one, 0) == one);

    MatQ t = from_rows({{2, 1}, {0, 2}});
    auto base = jordan_signature(t);
    auto ext = jordan_signature(stabilize(t, 2));
    // 0-class partition extended by `extra` ones.
    REQUIRE(ext.classes.size() == 2);
    CHECK(ext.classes[0].value == Rat(0));
    CHECK(ext.classes[0].partition == std::vector<int>{1, 1});
    CHECK(ext.classes[1].value == Rat(2));
    CHECK(ext.classes[1].partition == base.classes[0].partition);
}

TEST_CASE("float mode: rank, spectrum clustering, ill-conditioned error") {
    MatD a(3, 3);
    a(0, 0) = 1;
    a(1, 1) = 1e-12;
    a(2, 2) = 0.5;
    CHECK(rank(a, 1e-8) == 2);

    MatD rot(2, 2);
    rot(0, 1) = -1;
    rot(1, 0) = 1;
    auto s = spectrum(rot, 1e-8);
    REQUIRE(s.entries.size() == 2);

    // Two clusters that stay distinct but sit inside each other's ambiguity
    // radius trip the error instead of merging silently.
    MatD close(2, 2);
    close(0, 0) = 1.0;
    close(1, 1) = 1.0 + 1.5e-4;
    CHECK_THROWS_AS(spectrum(close, 1e-4), IllConditionedSpectrum);
}

TEST_CASE("jordan signatures agree with a minimal-polynomial oracle") {
    // Independent route: the minimal polynomial degree is the smallest k with
    // {I, A, ..., A^k} linearly dependent; from the signature it equals the
    // sum over classes of (largest block size) * (factor degree).
    Xoshiro256 rng(97);
    int done = 0;
    while (done < 25) {
        int n = 2 + static_cast<int>(rng.below(4));
        MatQ a = random_matrix(rng, n, -2, 2);
        auto js = jordan_signature(a);
        if (!js.exact) continue;
        int expected = 0;
        for (const auto& cls : js.classes) {
            int mx = 0;
            for (int b : cls.partition) mx = std::max(mx, b);
            expected += mx * (cls.kind == JordanClass::Kind::Rational ? 1 : 2);
        }
        // Row j of the dependency matrix is vec(A^j).
        int found = -1;
        MatQ pw = MatQ::identity(n);
        for (int k = 1; k <= n && found < 0; ++k) {
            pw = pw * a;
            MatQ dep(k + 1, n * n);
            MatQ step = MatQ::identity(n);
            for (int j = 0; j <= k; ++j) {
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) dep(j, r * n + c) = step(r, c);
                if (j < k) step = step * a;
            }
            if (rank(dep) < k + 1) found = k;
        }
        CHECK(found == expected);
        ++done;
    }
}
