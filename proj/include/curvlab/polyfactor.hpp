#pragma once

// Exact factoring support for characteristic polynomials over the rationals:
// squarefree decomposition, Sturm-based real root isolation, rational root
// extraction, and splitting of quartic / even polynomials into rational
// quadratics. Polynomials the toolkit cannot split stay in `residual`;
// callers decide whether that forces a float-mode fallback.

#include <optional>
#include <utility>
#include <vector>

#include "curvlab/poly.hpp"
#include "curvlab/rational.hpp"

namespace curvlab {

// p = prod_i factors[i].first ^ factors[i].second with each factor squarefree,
// pairwise coprime, monic.
std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& p);

// Number of distinct real roots of a squarefree p in (a, b].
int sturm_count(const PolyQ& p, const Rat& a, const Rat& b);
int sturm_count_all(const PolyQ& p);

struct RootInterval {
    Rat lo, hi;  // one real root in (lo, hi]; lo == hi means exact root hi
};
// Disjoint isolating intervals for all real roots of squarefree p.
std::vector<RootInterval> isolate_real_roots(const PolyQ& p);

// The rational with smallest denominator in [lo, hi].
Rat simplest_rational_in(const Rat& lo, const Rat& hi);

// All rational roots of p (any multiplicity), each returned with multiplicity.
std::vector<std::pair<Rat, int>> rational_roots(const PolyQ& p);

struct QuadFactor {
    Rat b, c;  // x^2 + b x + c, irreducible over Q
    int mult = 1;
    Rat disc() const { return b * b - Rat(4) * c; }
};

struct CharFactorization {
    std::vector<std::pair<Rat, int>> roots;  // rational roots with multiplicity
    std::vector<QuadFactor> quads;           // irreducible quadratic factors
    PolyQ residual = PolyQ::constant(Rat(1));  // unfactored remainder (monic)
    bool complete() const { return residual.degree() <= 0; }
};

// Factors a monic rational polynomial into rational roots, irreducible
// quadratics, and a residual. Handles quartics via the resolvent cubic and
// even polynomials via the x^2 substitution.
CharFactorization factor_rational_quadratic(const PolyQ& p);

// Approximate complex roots (Durand-Kerner); used for display of residuals
// and for float-mode spectra.
std::vector<std::pair<double, double>> roots_approx(const PolyD& p);

}  // namespace curvlab
