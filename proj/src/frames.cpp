#include "curvlab/frames.hpp"

#include <cmath>

#include "curvlab/pseudolin.hpp"

namespace curvlab {
namespace frames {

bool admissible(int r, int s, const Signature& sig) {
    return r >= 0 && s >= 0 && r <= sig.p && s <= sig.q && r + s >= 1 && r + s <= sig.dim() - 1;
}

MatQ gram_matrix(const std::vector<VecQ>& vs, const Signature& sig) {
    const int k = static_cast<int>(vs.size());
    MatQ g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = inner(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)], sig);
    return g;
}

FrameSample FrameSample::reversed() const {
    FrameSample f = *this;
    if (f.vectors.size() >= 2) {
        std::swap(f.vectors[0], f.vectors[1]);
        std::swap(f.norm_sq[0], f.norm_sq[1]);
    }
    return f;
}

namespace {

// Divide out the integer content of an all-integer vector (same line, smaller
// numbers); leaves vectors with non-integer entries alone.
void strip_content(VecQ& v) {
    mpz_class g = 0;
    for (int i = 0; i < v.dim(); ++i) {
        if (v[i].den() != 1) return;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].num().get_mpz_t());
    }
    if (g <= 1) return;
    for (int i = 0; i < v.dim(); ++i) v[i] = Rat(mpz_class(v[i].num() / g));
}

}  // namespace

std::optional<FrameSample> gram_schmidt_indefinite(const std::vector<VecQ>& basis,
                                                   const Signature& sig, bool oriented) {
    std::vector<VecQ> ws = basis;
    const int k = static_cast<int>(ws.size());
    FrameSample out;
    out.ambient = sig;
    out.oriented = oriented;
    for (int i = 0; i < k; ++i) {
        Rat n = inner(ws[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(i)], sig);
        if (n.is_zero()) {
            // Shear pivot: adding a later vector keeps the transition
            // determinant positive, so the sampled orientation survives.
            int found = -1;
            for (int j = i + 1; j < k; ++j)
                if (!inner(ws[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(j)], sig).is_zero()) {
                    found = j;
                    break;
                }
            if (found < 0) return std::nullopt;
            ws[static_cast<std::size_t>(i)] =
                ws[static_cast<std::size_t>(i)] + ws[static_cast<std::size_t>(found)];
            n = inner(ws[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(i)], sig);
            if (n.is_zero()) return std::nullopt;
        }
        // Fraction-free update: w_j <- n w_j - (w_j, w_i) w_i scales w_j by
        // n > 0 in absolute value terms, which the deferred normalization
        // absorbs. Negative n would flip orientation, so scale by |n|.
        for (int j = i + 1; j < k; ++j) {
            Rat c = inner(ws[static_cast<std::size_t>(j)], ws[static_cast<std::size_t>(i)], sig);
            VecQ& wj = ws[static_cast<std::size_t>(j)];
            if (c.is_zero()) continue;
            Rat scale = n.abs();
            Rat coef = n.sign() > 0 ? c : -c;
            for (int t = 0; t < wj.dim(); ++t)
                wj[t] = scale * wj[t] - coef * ws[static_cast<std::size_t>(i)][t];
            strip_content(wj);
        }
        strip_content(ws[static_cast<std::size_t>(i)]);
        n = inner(ws[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(i)], sig);
        out.vectors.push_back(ws[static_cast<std::size_t>(i)]);
        out.norm_sq.push_back(n);
        (n.sign() < 0 ? out.r : out.s) += 1;
    }
    return out;
}

VecQ Sampler::grid_vector(int dim) {
    // Integer representative of a k/grid_denom grid point on [-1,1]^dim. One
    // draw in four is sparse (most coordinates zero): degeneracy loci of the
    // structured families tend to contain coordinate subspaces, and a biased
    // distribution is fine for property falsification.
    VecQ v(dim);
    const long d = cfg_.grid_denom;
    if (rng_.below(4) == 0) {
        int nonzero = 1 + static_cast<int>(rng_.below(static_cast<std::uint64_t>(std::min(3, dim))));
        for (int t = 0; t < nonzero; ++t) {
            int pos = static_cast<int>(rng_.below(static_cast<std::uint64_t>(dim)));
            long val = rng_.range(0, 1) == 0 ? -1 : 1;
            v[pos] = Rat(val * rng_.range(1, 2));
        }
        return v;
    }
    for (int i = 0; i < dim; ++i) v[i] = Rat(rng_.range(-d, d));
    return v;
}

UnitSample Sampler::unit(const Signature& sig, int sign) {
    if (sign > 0 && sig.q < 1) throw std::invalid_argument("sample unit: S^+ empty (q = 0)");
    if (sign < 0 && sig.p < 1) throw std::invalid_argument("sample unit: S^- empty (p = 0)");
    // The degeneracy floor applies to the [-1,1]-grid point, i.e. to
    // (v,v)/grid_denom^2 for the integer representative.
    const Rat floor_scaled =
        cfg_.degenerate_floor * Rat(cfg_.grid_denom) * Rat(cfg_.grid_denom);
    for (int rejects = 0; rejects < cfg_.max_rejects; ++rejects) {
        VecQ v = grid_vector(sig.dim());
        Rat n = inner(v, v, sig);
        if (n.abs() < floor_scaled) continue;
        if (n.sign() != sign) continue;
        return {std::move(v), std::move(n)};
    }
    throw SamplerExhausted("sample unit: max_rejects exceeded");
}

FrameSample Sampler::frame(const Signature& sig, int r, int s, bool oriented) {
    // Accepts the full space (r+s = m) as well; the Grassmannian-nontriviality
    // condition is enforced by the property checkers, not the sampler.
    if (r < 0 || s < 0 || r > sig.p || s > sig.q || r + s < 1)
        throw std::invalid_argument("sample frame: (r,s) not admissible for signature " + sig.str());
    const int k = r + s;
    for (int rejects = 0; rejects < cfg_.max_rejects; ++rejects) {
        // One draw in eight is a canonical-basis frame: coordinate-aligned
        // subspaces (and their complements) carry the degeneracies that
        // falsify Jordan constancy, and the bias is harmless for the
        // holds-side because every returned frame is a valid domain point.
        if (rng_.below(8) == 0) {
            std::vector<int> minus, plus;
            for (int i = 0; i < sig.p; ++i) minus.push_back(i);
            for (int i = 0; i < sig.q; ++i) plus.push_back(sig.p + i);
            for (int i = sig.p - 1; i > 0; --i)
                std::swap(minus[static_cast<std::size_t>(i)],
                          minus[static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(i + 1)))]);
            for (int i = sig.q - 1; i > 0; --i)
                std::swap(plus[static_cast<std::size_t>(i)],
                          plus[static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(i + 1)))]);
            std::vector<int> picks(minus.begin(), minus.begin() + r);
            picks.insert(picks.end(), plus.begin(), plus.begin() + s);
            if (oriented && k >= 2 && rng_.below(2) == 0) std::swap(picks[0], picks[1]);
            FrameSample f;
            f.ambient = sig;
            f.oriented = oriented;
            f.r = r;
            f.s = s;
            for (int idx : picks) {
                VecQ e(sig.dim());
                e[idx] = Rat(1);
                f.vectors.push_back(std::move(e));
                f.norm_sq.push_back(Rat(sig.eps(idx)));
            }
            return f;
        }
        std::vector<VecQ> vs;
        vs.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) vs.push_back(grid_vector(sig.dim()));
        pseudolin::Inertia in = pseudolin::inertia(gram_matrix(vs, sig));
        if (in.zero != 0 || in.neg != r || in.pos != s) continue;
        auto f = gram_schmidt_indefinite(vs, sig, oriented);
        if (!f) continue;
        return *f;
    }
    throw SamplerExhausted("sample frame: max_rejects exceeded");
}

FrameSample Sampler::complex_line(const curvature::HermitianStructure& h) {
    const Rat floor_scaled =
        cfg_.degenerate_floor * Rat(cfg_.grid_denom) * Rat(cfg_.grid_denom);
    for (int rejects = 0; rejects < cfg_.max_rejects; ++rejects) {
        VecQ x = grid_vector(h.sig.dim());
        Rat n = inner(x, x, h.sig);
        if (n.abs() < floor_scaled) continue;
        VecQ jx = h.J.apply(x);
        FrameSample f;
        f.ambient = h.sig;
        f.oriented = true;
        f.vectors = {x, jx};
        f.norm_sq = {n, n};  // J is an isometry and (x, Jx) = 0 by skewness
        f.r = n.sign() < 0 ? 2 : 0;
        f.s = n.sign() > 0 ? 2 : 0;
        return f;
    }
    throw SamplerExhausted("sample complex line: max_rejects exceeded");
}

FrameSample complement(const FrameSample& f) {
    const Signature& sig = f.ambient;
    const int m = sig.dim();
    const int k = f.k();
    MatQ a(k, m);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = Rat(sig.eps(j)) * f.vectors[static_cast<std::size_t>(i)][j];
    std::vector<VecQ> basis = pseudolin::nullspace(a);
    for (auto& v : basis) {
        mpz_class l = 1;
        for (int i = 0; i < v.dim(); ++i)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[i].den().get_mpz_t());
        for (int i = 0; i < v.dim(); ++i) v[i] = Rat(l) * v[i];
    }
    auto comp = gram_schmidt_indefinite(basis, sig, false);
    if (!comp)
        throw std::invalid_argument("complement: span is degenerate");
    if (comp->r != sig.p - f.r || comp->s != sig.q - f.s)
        throw std::logic_error("complement: unexpected signature");
    return *comp;
}

FrameSampleD to_float(const FrameSample& f) {
    FrameSampleD out;
    out.ambient = f.ambient;
    out.oriented = f.oriented;
    for (int i = 0; i < f.k(); ++i) {
        double n = f.norm_sq[static_cast<std::size_t>(i)].to_double();
        double scale = 1.0 / std::sqrt(std::abs(n));
        VecD v(f.ambient.dim());
        for (int j = 0; j < f.ambient.dim(); ++j)
            v[j] = scale * f.vectors[static_cast<std::size_t>(i)][j].to_double();
        out.vectors.push_back(std::move(v));
        out.signs.push_back(n < 0 ? -1 : 1);
    }
    return out;
}

}  // namespace frames
}  // namespace curvlab
