#include "curvlab/polyfactor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>

namespace curvlab {

std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& p) {
    std::vector<std::pair<PolyQ, int>> out;
    if (p.degree() <= 0) return out;
    // Yun's algorithm over Q (characteristic zero).
    PolyQ a = p.monic();
    PolyQ g = poly_gcd(a, a.derivative());
    if (g.degree() == 0) {
        out.emplace_back(a, 1);
        return out;
    }
    PolyQ w = a / g;
    PolyQ y = a.derivative() / g;
    int k = 1;
    while (w.degree() > 0) {
        PolyQ z = y - w.derivative();
        PolyQ f = poly_gcd(w, z);
        if (f.degree() > 0) out.emplace_back(f.monic(), k);
        w = w / f;
        y = z / f;
        ++k;
    }
    return out;
}

namespace {

std::vector<PolyQ> sturm_chain(const PolyQ& p) {
    std::vector<PolyQ> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        PolyQ r = chain[chain.size() - 2] % chain.back();
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

int variations_at(const std::vector<PolyQ>& chain, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& q : chain) {
        int s = q.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int variations_at_inf(const std::vector<PolyQ>& chain, int dir) {  // dir = +1 or -1
    int var = 0, prev = 0;
    for (const auto& q : chain) {
        if (q.is_zero()) continue;
        int s = q.leading().sign();
        if (dir < 0 && q.degree() % 2 == 1) s = -s;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

Rat cauchy_root_bound(const PolyQ& p) {
    Rat lead = p.leading().abs();
    Rat mx(0);
    for (int k = 0; k < p.degree(); ++k) {
        Rat v = p.coeff(k).abs() / lead;
        if (v > mx) mx = v;
    }
    return Rat(1) + mx;
}

}  // namespace

int sturm_count(const PolyQ& p, const Rat& a, const Rat& b) {
    auto chain = sturm_chain(p);
    return variations_at(chain, a) - variations_at(chain, b);
}

int sturm_count_all(const PolyQ& p) {
    auto chain = sturm_chain(p);
    return variations_at_inf(chain, -1) - variations_at_inf(chain, +1);
}

std::vector<RootInterval> isolate_real_roots(const PolyQ& p) {
    std::vector<RootInterval> out;
    if (p.degree() <= 0) return out;
    auto chain = sturm_chain(p);
    Rat bound = cauchy_root_bound(p);
    auto count = [&](const Rat& a, const Rat& b) {
        return variations_at(chain, a) - variations_at(chain, b);
    };
    std::deque<std::pair<Rat, Rat>> work;
    work.emplace_back(-bound, bound);
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        int n = count(a, b);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back({a, b});
            continue;
        }
        // Split at a non-root interior point (at most deg(p) roots, so one of
        // deg(p)+1 equispaced candidates is free).
        Rat mid = (a + b) / Rat(2);
        for (long k = 1; p.eval(mid).is_zero(); ++k)
            mid = a + (b - a) * Rat(k, static_cast<long>(p.degree()) + 2);
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) {
        return x.hi < y.hi;
    });
    return out;
}

Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
    if (lo > hi) return simplest_rational_in(hi, lo);
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rat(0);
    if (hi.sign() < 0) return -simplest_rational_in(-hi, -lo);
    // 0 < lo <= hi: continued-fraction style descent.
    mpz_class ln = lo.num(), ld = lo.den(), hn = hi.num(), hd = hi.den();
    mpz_class fl = ln / ld;  // floor, operands positive
    mpz_class ceil_lo = (ln + ld - 1) / ld;
    if (ceil_lo * hd <= hn) return Rat(ceil_lo);
    // Both within (fl, fl+1): recurse on reciprocal of the fractional parts.
    Rat fr = simplest_rational_in(Rat(hd, hn - fl * hd), Rat(ld, ln - fl * ld));
    return Rat(fl) + Rat(1) / fr;
}

namespace {

// Rational roots of a squarefree monic polynomial.
std::vector<Rat> rational_roots_squarefree(const PolyQ& p) {
    std::vector<Rat> found;
    if (p.degree() <= 0) return found;
    if (p.coeff(0).is_zero()) found.push_back(Rat(0));
    // Denominator bound: for the primitive integer form a_n x^n + ... the
    // denominator of any rational root divides a_n.
    mpz_class den_lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    mpz_class an = p.leading().num() * (den_lcm / p.leading().den());
    mpz_class an_abs;
    mpz_abs(an_abs.get_mpz_t(), an.get_mpz_t());
    Rat qmax(an_abs);
    Rat width_target = Rat(1) / (Rat(2) * qmax * qmax);

    for (auto iv : isolate_real_roots(p)) {
        if (iv.lo == iv.hi) {
            if (p.eval(iv.hi).is_zero() && !(iv.hi.is_zero() && !found.empty() && found.front().is_zero()))
                found.push_back(iv.hi);
            continue;
        }
        Rat a = iv.lo, b = iv.hi;
        // Shrink until at most one rational with denominator <= qmax fits.
        while (b - a >= width_target) {
            Rat mid = (a + b) / Rat(2);
            int sm = p.eval(mid).sign();
            if (sm == 0) { a = b = mid; break; }
            if (sturm_count(p, a, mid) == 1)
                b = mid;
            else
                a = mid;
        }
        Rat cand = (a == b) ? a : simplest_rational_in(a, b);
        if (p.eval(cand).is_zero()) {
            bool dup = false;
            for (const auto& f : found) dup = dup || f == cand;
            if (!dup) found.push_back(cand);
        }
    }
    return found;
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const PolyQ& p) {
    std::vector<std::pair<Rat, int>> out;
    for (const auto& [f, mult] : squarefree_decomposition(p))
        for (const auto& r : rational_roots_squarefree(f)) out.emplace_back(r, mult);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

namespace {

PolyQ quad_poly(const Rat& b, const Rat& c) {
    return PolyQ({c, b, Rat(1)});
}

// Try to split a monic squarefree quartic with no rational roots into two
// monic rational quadratics, via the resolvent cubic.
std::optional<std::pair<QuadFactor, QuadFactor>> split_quartic(const PolyQ& h) {
    Rat p3 = h.coeff(3), p2 = h.coeff(2), p1 = h.coeff(1), p0 = h.coeff(0);
    // Depress: x = y - p3/4  =>  y^4 + A y^2 + B y + C.
    Rat sh = p3 / Rat(4);
    Rat A = p2 - Rat(6) * sh * sh;
    Rat B = p1 - Rat(2) * p2 * sh + Rat(8) * sh * sh * sh;
    Rat C = p0 - p1 * sh + p2 * sh * sh - Rat(3) * sh.pow(4);
    // (y^2+uy+v)(y^2-uy+w): z = u^2 satisfies z^3 + 2A z^2 + (A^2-4C) z - B^2 = 0.
    PolyQ resolvent({-(B * B), A * A - Rat(4) * C, Rat(2) * A, Rat(1)});
    for (const auto& [z, mult] : rational_roots(resolvent)) {
        (void)mult;
        if (z.sign() < 0) continue;
        auto u_opt = z.sqrt_exact();
        if (!u_opt) continue;
        Rat u = *u_opt;
        Rat v, w;
        if (!u.is_zero()) {
            w = (A + z + B / u) / Rat(2);
            v = (A + z - B / u) / Rat(2);
        } else {
            if (!B.is_zero()) continue;
            // y^4 + Ay^2 + C = (y^2+v)(y^2+w), v+w = A, vw = C.
            Rat disc = A * A - Rat(4) * C;
            auto sq = disc.sqrt_exact();
            if (!sq) continue;
            v = (A - *sq) / Rat(2);
            w = (A + *sq) / Rat(2);
        }
        // Un-depress: y = x + sh.
        Rat b1 = u + Rat(2) * sh, c1 = v + u * sh + sh * sh;
        Rat b2 = -u + Rat(2) * sh, c2 = w - u * sh + sh * sh;
        if (!(quad_poly(b1, c1) * quad_poly(b2, c2) == h)) continue;
        return std::make_pair(QuadFactor{b1, c1, 1}, QuadFactor{b2, c2, 1});
    }
    return std::nullopt;
}

// Factor a monic squarefree polynomial with no rational roots into
// irreducible rational quadratics where the toolkit can. Returns the
// unfactored remainder.
PolyQ quad_factors_squarefree(const PolyQ& h, std::vector<QuadFactor>& quads) {
    if (h.degree() <= 0) return h;
    if (h.degree() == 2) {
        quads.push_back({h.coeff(1), h.coeff(0), 1});
        return PolyQ::constant(Rat(1));
    }
    if (h.degree() == 4) {
        if (auto sp = split_quartic(h)) {
            quads.push_back(sp->first);
            quads.push_back(sp->second);
            return PolyQ::constant(Rat(1));
        }
        return h;
    }
    // Even polynomial: h(x) = g(x^2). Roots z of g give factors x^2 - z
    // (irreducible here: a square z would put rational roots in h).
    bool even = true;
    for (int k = 1; k <= h.degree(); k += 2) even = even && h.coeff(k).is_zero();
    if (even) {
        std::vector<Rat> gc;
        for (int k = 0; k <= h.degree(); k += 2) gc.push_back(h.coeff(k));
        PolyQ g{gc};
        PolyQ rem = PolyQ::constant(Rat(1));
        for (const auto& [z, mult] : rational_roots(g)) {
            (void)mult;
            quads.push_back({Rat(0), -z, 1});
            PolyQ q, r;
            PolyQ::divmod(g, PolyQ({-z, Rat(1)}), q, r);
            g = q;
        }
        if (g.degree() == 2) {
            // g = w^2 + bw + c with w = x^2: a quartic in x.
            PolyQ quart = g.compose_x_squared();
            if (auto sp = split_quartic(quart)) {
                quads.push_back(sp->first);
                quads.push_back(sp->second);
                g = PolyQ::constant(Rat(1));
            }
        }
        if (g.degree() > 0) rem = rem * g.compose_x_squared();
        return rem;
    }
    return h;
}

}  // namespace

CharFactorization factor_rational_quadratic(const PolyQ& p) {
    CharFactorization out;
    if (p.degree() <= 0) return out;
    for (const auto& [f, mult] : squarefree_decomposition(p.monic())) {
        PolyQ h = f;
        for (const auto& r : rational_roots_squarefree(f)) {
            out.roots.emplace_back(r, mult);
            PolyQ q, rem;
            PolyQ::divmod(h, PolyQ({-r, Rat(1)}), q, rem);
            h = q;
        }
        std::vector<QuadFactor> quads;
        PolyQ leftover = quad_factors_squarefree(h.monic(), quads);
        for (auto& qf : quads) {
            qf.mult = mult;
            out.quads.push_back(qf);
        }
        if (leftover.degree() > 0)
            for (int i = 0; i < mult; ++i) out.residual = out.residual * leftover;
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::sort(out.quads.begin(), out.quads.end(), [](const QuadFactor& a, const QuadFactor& b) {
        if (a.b != b.b) return a.b < b.b;
        return a.c < b.c;
    });
    return out;
}

std::vector<std::pair<double, double>> roots_approx(const PolyD& p) {
    int n = p.degree();
    std::vector<std::pair<double, double>> out;
    if (n <= 0) return out;
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = p.coeff(k) / p.leading();
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    // Durand-Kerner from a non-real spread of starting points.
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        z[static_cast<std::size_t>(i)] = acc;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int k = n; k >= 0; --k) v = v * x + a[static_cast<std::size_t>(k)];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> num = eval(z[static_cast<std::size_t>(i)]);
            std::complex<double> den(1, 0);
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            std::complex<double> step = num / den;
            z[static_cast<std::size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    for (auto& r : z) out.emplace_back(r.real(), r.imag());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace curvlab
