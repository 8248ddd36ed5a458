#include <doctest.h>

#include "curvlab/geometry.hpp"
#include "curvlab/operators.hpp"
#include "curvlab/pseudolin.hpp"
#include "curvlab/rng.hpp"

using namespace curvlab;
using namespace curvlab::geometry;

namespace {

MPoly X(int i) { return MPoly::var(i); }

std::vector<Rat> zeros(int n) { return std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)); }

}  // namespace

TEST_CASE("multivariate polynomials") {
    MPoly p = X(0) * X(0) + Rat(2) * (X(1) * X(1)) + MPoly::constant(Rat(1, 2));
    CHECK(p.eval({Rat(1), Rat(2)}) == Rat(19, 2));
    CHECK(p.derivative(0).eval({Rat(3), Rat(0)}) == Rat(6));
    SUBCASE("product rule") {
        Xoshiro256 rng(51);
        for (int t = 0; t < 20; ++t) {
            MPoly a, b;
            for (int k = 0; k < 4; ++k) {
                a = a + Rat(rng.range(-3, 3)) * (X(0).pow(static_cast<int>(rng.below(3))) *
                                                 X(1).pow(static_cast<int>(rng.below(2))));
                b = b + Rat(rng.range(-3, 3)) * (X(0).pow(static_cast<int>(rng.below(2))) *
                                                 X(1).pow(static_cast<int>(rng.below(3))));
            }
            MPoly lhs = (a * b).derivative(0);
            MPoly rhs = a.derivative(0) * b + a * b.derivative(0);
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("parser handles the flag syntax") {
        auto lookup = [](const std::string& n) -> int {
            if (n == "x1") return 0;
            if (n == "x2") return 1;
            return -1;
        };
        CHECK(parse_mpoly("x1^2 + 2*x2^2", lookup) == X(0).pow(2) + Rat(2) * X(1).pow(2));
        CHECK(parse_mpoly("1/2*(x1^2+x2^2)", lookup) ==
              Rat(1, 2) * (X(0).pow(2) + X(1).pow(2)));
        CHECK(parse_mpoly("-x1*(x2 - 3)", lookup) == -(X(0) * (X(1) - MPoly::constant(Rat(3)))));
        CHECK_THROWS_AS(parse_mpoly("x3 + 1", lookup), std::invalid_argument);
    }
}

TEST_CASE("rational functions") {
    RatFn f(MPoly::constant(Rat(1)), X(0));  // 1/t
    RatFn df = f.derivative(0);              // -1/t^2
    CHECK(df.eval({Rat(2)}) == Rat(-1, 4));
    CHECK_THROWS_AS(f.eval({Rat(0)}), std::domain_error);
}

TEST_CASE("flat family: psi = 0") {
    PsiAB flat{2, std::vector<MPoly>(4), 0, 0};
    MetricModel model{MetricFamily(flat)};
    PointEval pe = model.eval(zeros(4));
    for (const auto& g : pe.christoffel) CHECK(g.is_zero());
    CHECK(pe.R_coord.is_zero());
    CHECK(pe.dR_coord.is_zero());
}

TEST_CASE("fab with f = (x1^2+x2^2)/2 at the origin") {
    MPoly f = Rat(1, 2) * (X(0).pow(2) + X(1).pow(2));
    MetricModel model{MetricFamily(FAB{2, f, 0, 0})};
    PointEval pe = model.eval(zeros(4));
    // psi = df.df is quadratic, so all Christoffels vanish at 0.
    for (const auto& g : pe.christoffel) CHECK(g.is_zero());
    // Only x-block components; R(dx1,dx2,dx2,dx1) = det H(f) = 1.
    CHECK(pe.R_coord.at(0, 1, 1, 0) == Rat(1));
    const int m = 4;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    if (i >= 2 || j >= 2 || k >= 2 || l >= 2)
                        CHECK(pe.R_coord.at(i, j, k, l).is_zero());
    CHECK(curvature::two_nilpotent_acst(pe.R));  // canonical-basis endomorphisms
}

TEST_CASE("gauss-equation oracle for the hypersurface family") {
    // R(dx_a,dx_b,dx_c,dx_d) = H_ad H_bc - H_ac H_bd with H the Hessian of f.
    MPoly f = X(0).pow(2) + X(0) * X(1) + X(1).pow(2);
    MetricModel model{MetricFamily(FAB{2, f, 0, 1})};
    Xoshiro256 rng(52);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rat> pt(5);
        for (auto& c : pt) c = Rat(rng.range(-4, 4), 2);
        PointEval pe = model.eval(pt);
        MatQ h(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) h(i, j) = f.derivative(i).derivative(j).eval(pt);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d)
                        CHECK(pe.R_coord.at(a, b, c, d) ==
                              h(a, d) * h(b, c) - h(a, c) * h(b, d));
        CHECK(validate_acst(pe.R_coord).empty());
        CHECK(validate_acdt(pe.dR_coord).empty());
        CHECK(validate_acst(pe.R).empty());
        CHECK(validate_acdt(pe.dR).empty());
    }
}

TEST_CASE("affine connection family reproduces the coupling pattern") {
    // Gamma_{11}^2 = x1 only.
    const int u = 2;
    std::vector<MPoly> gamma(static_cast<std::size_t>(u * u * u));
    gamma[static_cast<std::size_t>((0 * u + 0) * u + 1)] = X(0);
    MetricModel model{MetricFamily(AffineNabla{u, gamma})};
    std::vector<Rat> pt = {Rat(3), Rat(7), Rat(11), Rat(5)};  // x1,x2,y1,y2
    PointEval pe = model.eval(pt);
    // Hand-expanded values: Gamma_{x1 x1}^{y1} = -y2, Gamma_{x1 x1}^{x2} = x1.
    CHECK(pe.christoffel_at(0, 0, 2) == Rat(-5));
    CHECK(pe.christoffel_at(0, 0, 1) == Rat(3));
    // The affine Christoffel reappears as the x-part of the metric one.
    CHECK(pe.christoffel_at(0, 0, 0) == Rat(0));
    CHECK(validate_acst(pe.R_coord).empty());
    CHECK(validate_acdt(pe.dR_coord).empty());
}

TEST_CASE("ricci and einstein checks") {
    CHECK(einstein_check(curvature::Tensor4Q(Signature(1, 2))).kind ==
          EinsteinKind::RicciFlat);
    for (int m = 3; m <= 5; ++m) {
        auto r = curvature::build_constant_curvature(Rat(1), Signature(0, m));
        auto er = einstein_check(r);
        CHECK(er.kind == EinsteinKind::Einstein);
        CHECK(er.c == Rat(m - 1));
    }
    // Indefinite signature round tensor is Einstein too.
    auto rl = curvature::build_constant_curvature(Rat(2), Signature(1, 3));
    auto erl = einstein_check(rl);
    CHECK(erl.kind == EinsteinKind::Einstein);
    CHECK(erl.c == Rat(6));
    // The hypersurface family is Ricci flat at sampled points.
    MPoly f = X(0).pow(2) + Rat(2) * X(1).pow(2);
    MetricModel model{MetricFamily(FAB{2, f, 1, 0})};
    Xoshiro256 rng(53);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rat> pt(5);
        for (auto& c : pt) c = Rat(rng.range(-4, 4), 2);
        CHECK(einstein_check(model.eval(pt).R).kind == EinsteinKind::RicciFlat);
    }
}

TEST_CASE("warped family") {
    SUBCASE("degenerate discriminant is rejected") {
        // eps=1, kappa=1, f(t) = t^2 + 2t + 1: A^2 - 4 eps kappa B = 0.
        Warped w{1, Rat(1), Rat(2), Rat(1), 2};
        CHECK_THROWS_AS(MetricModel{MetricFamily(w)}, std::invalid_argument);
    }
    SUBCASE("curvature and derivative validate exactly in coordinates") {
        Warped w{1, Rat(1), Rat(0), Rat(1), 2};  // f = t^2 + 1
        MetricModel model{MetricFamily(w)};
        CHECK(model.sig() == Signature(0, 3));
        PointEval pe = model.eval({Rat(0), Rat(0), Rat(0)});
        CHECK(pe.canonical_exact);  // f/h^2 = 1 at the origin
        CHECK(validate_acst(pe.R_coord).empty());
        CHECK(validate_acdt(pe.dR_coord).empty());
        CHECK(validate_acst(pe.R).empty());
        CHECK(validate_acdt(pe.dR).empty());
        CHECK(!pe.R.is_zero());
        // Generic point: fiber norm not a perfect square, exact canonical
        // components unavailable but coordinate data still exact.
        PointEval pg = model.eval({Rat(1), Rat(1, 2), Rat(0)});
        CHECK(!pg.canonical_exact);
        CHECK(validate_acst(pg.R_coord).empty());
        CHECK(validate_acdt(pg.dR_coord).empty());
        // Float fallback respects the identities within tolerance.
        CHECK(validate_acst(pg.R_float, 1e-9).empty());
    }
    SUBCASE("lorentzian variant") {
        Warped w{-1, Rat(0), Rat(1), Rat(3), 2};  // f = t + 3
        MetricModel model{MetricFamily(w)};
        CHECK(model.sig() == Signature(1, 2));
        PointEval pe = model.eval({Rat(1), Rat(0), Rat(0)});  // f = 4 = 2^2
        CHECK(pe.canonical_exact);
        CHECK(validate_acst(pe.R).empty());
        CHECK_THROWS_AS(model.eval({Rat(-3), Rat(0), Rat(0)}), std::invalid_argument);
    }
}

TEST_CASE("frame pivot permutation leaves spectral data invariant") {
    MPoly f = X(0).pow(2) + X(0) * X(1) + X(1).pow(2);
    MetricModel model{MetricFamily(FAB{2, f, 0, 1})};
    std::vector<Rat> pt = {Rat(1), Rat(1, 2), Rat(0), Rat(0), Rat(0)};
    PointEval a = model.eval(pt);
    std::vector<int> perm = {1, 0};
    PointEval b = model.eval(pt, &perm);
    CHECK(validate_acst(b.R).empty());
    // Full-space higher Jacobi operator: conjugate matrices, equal Jordan data.
    auto full_jacobi = [](const curvature::Tensor4Q& r) {
        const int m = r.dim();
        MatQ sum(m, m);
        for (int i = 0; i < m; ++i) {
            VecQ e(m);
            e[i] = Rat(1);
            MatQ j = operators::jacobi(r, e);
            sum = r.sig.eps(i) < 0 ? sum - j : sum + j;
        }
        return sum;
    };
    CHECK(pseudolin::jordan_equivalent(pseudolin::jordan_signature(full_jacobi(a.R)),
                                       pseudolin::jordan_signature(full_jacobi(b.R))));
}

TEST_CASE("psi membership cone") {
    const int u = 2;
    MPoly f = X(0).pow(2) + Rat(2) * X(1).pow(2);
    CHECK(psi_membership(psi_from_f(f, u), u, u, 61));
    std::vector<MPoly> zero_psi(4);
    CHECK(!psi_membership(zero_psi, u, u, 62));
    std::vector<MPoly> neg = psi_from_f(f, u);
    for (auto& e : neg) e = -e;
    CHECK(!psi_membership(neg, u, u, 63));
}

TEST_CASE("family validation") {
    CHECK_THROWS_AS(validate_family(MetricFamily(PsiAB{2, std::vector<MPoly>(3), 0, 0})),
                    std::invalid_argument);
    std::vector<MPoly> asym(4);
    asym[1] = X(0);  // psi_12 != psi_21
    CHECK_THROWS_AS(validate_family(MetricFamily(PsiAB{2, asym, 0, 0})), std::invalid_argument);
    std::vector<MPoly> gamma(8);
    gamma[static_cast<std::size_t>((0 * 2 + 1) * 2 + 0)] = X(0);  // torsion
    CHECK_THROWS_AS(validate_family(MetricFamily(AffineNabla{2, gamma})), std::invalid_argument);
    // f depending on y is rejected.
    CHECK_THROWS_AS(validate_family(MetricFamily(FAB{2, X(2), 0, 0})), std::invalid_argument);
}
