#include "curvlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "curvlab/pseudolin.hpp"
#include "curvlab/rng.hpp"

namespace curvlab {
namespace geometry {

std::vector<MPoly> psi_from_f(const MPoly& f, int u) {
    std::vector<MPoly> df;
    df.reserve(static_cast<std::size_t>(u));
    for (int i = 0; i < u; ++i) df.push_back(f.derivative(i));
    std::vector<MPoly> psi(static_cast<std::size_t>(u) * u);
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < u; ++j)
            psi[static_cast<std::size_t>(i * u + j)] =
                df[static_cast<std::size_t>(i)] * df[static_cast<std::size_t>(j)];
    return psi;
}

namespace {

void check_walker_vars(const std::vector<MPoly>& entries, int maxvar, const char* what) {
    for (const auto& e : entries)
        if (e.max_var() >= maxvar)
            throw std::invalid_argument(std::string(what) + ": entry uses a variable out of range");
}

}  // namespace

void validate_family(const MetricFamily& mf) {
    if (const auto* w = std::get_if<Warped>(&mf)) {
        if (w->eps != 1 && w->eps != -1) throw std::invalid_argument("Warped: eps must be +1 or -1");
        if (w->fiber < 1) throw std::invalid_argument("Warped: fiber dimension >= 1 required");
        Rat disc = w->A * w->A - Rat(4 * w->eps) * w->kappa * w->B;
        if (disc.is_zero())
            throw std::invalid_argument("Warped: A^2 - 4 eps kappa B must be nonzero");
        return;
    }
    if (const auto* ps = std::get_if<PsiAB>(&mf)) {
        if (ps->u < 2) throw std::invalid_argument("PsiAB: u >= 2 required");
        if (ps->a < 0 || ps->b < 0) throw std::invalid_argument("PsiAB: a,b >= 0 required");
        if (static_cast<int>(ps->psi.size()) != ps->u * ps->u)
            throw std::invalid_argument("PsiAB: psi must be u x u");
        for (int i = 0; i < ps->u; ++i)
            for (int j = 0; j < ps->u; ++j)
                if (!(ps->psi[static_cast<std::size_t>(i * ps->u + j)] ==
                      ps->psi[static_cast<std::size_t>(j * ps->u + i)]))
                    throw std::invalid_argument("PsiAB: psi must be symmetric");
        check_walker_vars(ps->psi, ps->u, "PsiAB");  // psi depends on x only
        return;
    }
    if (const auto* fb = std::get_if<FAB>(&mf)) {
        if (fb->u < 2) throw std::invalid_argument("FAB: u >= 2 required");
        if (fb->a < 0 || fb->b < 0) throw std::invalid_argument("FAB: a,b >= 0 required");
        if (fb->f.max_var() >= fb->u)
            throw std::invalid_argument("FAB: f must depend on x variables only");
        return;
    }
    const auto& an = std::get<AffineNabla>(mf);
    if (an.u < 2) throw std::invalid_argument("AffineNabla: u >= 2 required");
    if (static_cast<int>(an.gamma.size()) != an.u * an.u * an.u)
        throw std::invalid_argument("AffineNabla: gamma must be u^3");
    for (int i = 0; i < an.u; ++i)
        for (int j = 0; j < an.u; ++j)
            for (int k = 0; k < an.u; ++k)
                if (!(an.gamma[static_cast<std::size_t>((i * an.u + j) * an.u + k)] ==
                      an.gamma[static_cast<std::size_t>((j * an.u + i) * an.u + k)]))
                    throw std::invalid_argument("AffineNabla: gamma must be torsion free");
    check_walker_vars(an.gamma, an.u, "AffineNabla");
}

Signature family_signature(const MetricFamily& mf) {
    if (const auto* w = std::get_if<Warped>(&mf))
        return w->eps < 0 ? Signature(1, w->fiber) : Signature(0, 1 + w->fiber);
    if (const auto* ps = std::get_if<PsiAB>(&mf)) return Signature(ps->u + ps->a, ps->u + ps->b);
    if (const auto* fb = std::get_if<FAB>(&mf)) return Signature(fb->u + fb->a, fb->u + fb->b);
    const auto& an = std::get<AffineNabla>(mf);
    return Signature(an.u, an.u);
}

std::string family_name(const MetricFamily& mf) {
    if (std::holds_alternative<Warped>(mf)) return "warped";
    if (std::holds_alternative<PsiAB>(mf)) return "psi-ab";
    if (std::holds_alternative<FAB>(mf)) return "f-ab";
    return "affine-nabla";
}

namespace {

struct WalkerShape {
    int u = 0, a = 0, b = 0;
    std::vector<MPoly> psi;  // may depend on x and (affine family) y
};

WalkerShape walker_shape(const MetricFamily& mf) {
    if (const auto* ps = std::get_if<PsiAB>(&mf)) return {ps->u, ps->a, ps->b, ps->psi};
    if (const auto* fb = std::get_if<FAB>(&mf))
        return {fb->u, fb->a, fb->b, psi_from_f(fb->f, fb->u)};
    const auto& an = std::get<AffineNabla>(mf);
    WalkerShape w{an.u, 0, 0, {}};
    w.psi.assign(static_cast<std::size_t>(an.u) * an.u, MPoly());
    for (int i = 0; i < an.u; ++i)
        for (int j = 0; j < an.u; ++j) {
            MPoly acc;
            for (int k = 0; k < an.u; ++k)
                acc = acc + MPoly::var(an.u + k) *
                                an.gamma[static_cast<std::size_t>((i * an.u + j) * an.u + k)];
            w.psi[static_cast<std::size_t>(i * an.u + j)] = Rat(-2) * acc;
        }
    return w;
}

}  // namespace

// --- chart-factor expressions ----------------------------------------------------

void MetricModel::cnormalize(CExpr& a) const {
    if (a.pw.empty()) return;
    if (a.n.is_zero()) {
        std::fill(a.pw.begin(), a.pw.end(), 0);
        return;
    }
    for (std::size_t i = 0; i < chart_.size(); ++i)
        while (a.pw[i] > 0) {
            auto q = try_divide(a.n, chart_[i]);
            if (!q) break;
            a.n = std::move(*q);
            --a.pw[i];
        }
}

MetricModel::CExpr MetricModel::cadd(const CExpr& a, const CExpr& b) const {
    if (a.n.is_zero()) return b;
    if (b.n.is_zero()) return a;
    CExpr r;
    r.pw.resize(chart_.size(), 0);
    MPoly na = a.n, nb = b.n;
    for (std::size_t i = 0; i < chart_.size(); ++i) {
        int common = std::max(a.pw[i], b.pw[i]);
        r.pw[i] = common;
        for (int t = a.pw[i]; t < common; ++t) na = na * chart_[i];
        for (int t = b.pw[i]; t < common; ++t) nb = nb * chart_[i];
    }
    r.n = na + nb;
    cnormalize(r);
    return r;
}

MetricModel::CExpr MetricModel::cmul(const CExpr& a, const CExpr& b) const {
    CExpr r;
    r.pw.resize(chart_.size(), 0);
    if (a.n.is_zero() || b.n.is_zero()) return r;
    r.n = a.n * b.n;
    for (std::size_t i = 0; i < chart_.size(); ++i) r.pw[i] = a.pw[i] + b.pw[i];
    cnormalize(r);
    return r;
}

MetricModel::CExpr MetricModel::cneg(const CExpr& a) const { return {-a.n, a.pw}; }

MetricModel::CExpr MetricModel::cderive(const CExpr& a, int var) const {
    // d(n / prod f_i^{p_i}) = [n_v prod f_i - n sum_i p_i f_{i,v} prod_{j!=i} f_j]
    //                         / prod f_i^{p_i+1}, over the involved factors.
    CExpr r;
    r.pw.resize(chart_.size(), 0);
    if (a.n.is_zero()) return r;
    std::vector<std::size_t> involved;
    for (std::size_t i = 0; i < chart_.size(); ++i)
        if (a.pw[i] > 0) involved.push_back(i);
    MPoly num = a.n.derivative(var);
    if (involved.empty()) {
        r.n = std::move(num);
        return r;
    }
    for (std::size_t i : involved) num = num * chart_[i];
    for (std::size_t i : involved) {
        MPoly dfi = chart_[i].derivative(var);
        if (dfi.is_zero()) continue;
        MPoly term = Rat(a.pw[i]) * (a.n * dfi);
        for (std::size_t j : involved)
            if (j != i) term = term * chart_[j];
        num = num - term;
    }
    r.n = std::move(num);
    r.pw = a.pw;
    for (std::size_t i : involved) ++r.pw[i];
    cnormalize(r);
    return r;
}

MetricModel::CExpr MetricModel::cinvert(const CExpr& a) const {
    if (a.n.is_zero()) throw std::invalid_argument("metric symbolically degenerate");
    // Peel the numerator into c * prod f_i^{beta_i}; the inverse is then
    // (1/c) * prod f_i^{pw_i} with denominators beta.
    MPoly n = a.n;
    std::vector<int> beta(chart_.size(), 0);
    for (std::size_t i = 0; i < chart_.size(); ++i)
        for (;;) {
            auto q = try_divide(n, chart_[i]);
            if (!q) break;
            n = std::move(*q);
            ++beta[i];
        }
    if (!n.is_constant())
        throw std::invalid_argument("cannot invert metric entry exactly in this chart");
    CExpr r;
    r.pw = beta;
    r.n = MPoly::constant(Rat(1) / n.constant_value());
    for (std::size_t i = 0; i < chart_.size(); ++i)
        for (int t = 0; t < a.pw[i]; ++t) r.n = r.n * chart_[i];
    cnormalize(r);
    return r;
}

Rat MetricModel::ceval(const CExpr& a, const std::vector<Rat>& point) const {
    Rat num = a.n.eval(point);
    for (std::size_t i = 0; i < chart_.size(); ++i) {
        if (a.pw[i] == 0) continue;
        Rat fv = chart_[i].eval(point);
        if (fv.is_zero())
            throw std::invalid_argument("metric chart degenerate at the evaluation point");
        num /= fv.pow(a.pw[i]);
    }
    return num;
}

// --- model construction ------------------------------------------------------------

MetricModel::MetricModel(MetricFamily mf) : mf_(std::move(mf)) {
    validate_family(mf_);
    sig_ = family_signature(mf_);
    m_ = sig_.dim();
    const int m = m_;

    auto zero = [&]() {
        CExpr e;
        e.pw.resize(chart_.size(), 0);
        return e;
    };
    auto from_poly = [&](MPoly p) {
        CExpr e;
        e.n = std::move(p);
        e.pw.resize(chart_.size(), 0);
        return e;
    };

    if (const auto* w = std::get_if<Warped>(&mf_)) {
        // t -> var 0, z_i -> vars 1..fiber; g_tt = eps, g_zz = f/h^2 delta.
        MPoly f = Rat(w->eps) * w->kappa * MPoly::var(0).pow(2) + w->A * MPoly::var(0) +
                  MPoly::constant(w->B);
        MPoly h = MPoly::constant(Rat(1));
        for (int i = 1; i <= w->fiber; ++i)
            h = h + (w->kappa / Rat(4)) * MPoly::var(i).pow(2);
        chart_.push_back(f);
        if (!h.is_constant()) chart_.push_back(h);
        g_.assign(static_cast<std::size_t>(m) * m, zero());
        CExpr fib = from_poly(f);
        if (!h.is_constant()) fib.pw[1] = 2;
        g_[0] = from_poly(MPoly::constant(Rat(w->eps)));
        for (int i = 1; i <= w->fiber; ++i) g_[static_cast<std::size_t>(i * m + i)] = fib;
    } else {
        WalkerShape ws = walker_shape(mf_);
        const int u = ws.u;
        g_.assign(static_cast<std::size_t>(m) * m, zero());
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < u; ++j)
                g_[static_cast<std::size_t>(i * m + j)] =
                    from_poly(ws.psi[static_cast<std::size_t>(i * u + j)]);
        for (int i = 0; i < u; ++i) {
            g_[static_cast<std::size_t>(i * m + (u + i))] = from_poly(MPoly::constant(Rat(1)));
            g_[static_cast<std::size_t>((u + i) * m + i)] = from_poly(MPoly::constant(Rat(1)));
        }
        for (int t = 0; t < ws.a; ++t)
            g_[static_cast<std::size_t>((2 * u + t) * m + (2 * u + t))] =
                from_poly(MPoly::constant(Rat(-1)));
        for (int s = 0; s < ws.b; ++s)
            g_[static_cast<std::size_t>((2 * u + ws.a + s) * m + (2 * u + ws.a + s))] =
                from_poly(MPoly::constant(Rat(1)));
    }

    // Inverse: diagonal metrics invert elementwise; the Walker block shape has
    // the closed form [[psi, I, 0], [I, 0, 0], [0,0,D]]^{-1} = [[0, I, 0],
    // [I, -psi, 0], [0,0,D]].
    ginv_.assign(static_cast<std::size_t>(m) * m, zero());
    if (std::holds_alternative<Warped>(mf_)) {
        for (int i = 0; i < m; ++i)
            ginv_[static_cast<std::size_t>(i * m + i)] =
                cinvert(g_[static_cast<std::size_t>(i * m + i)]);
    } else {
        WalkerShape ws = walker_shape(mf_);
        const int u = ws.u;
        for (int i = 0; i < u; ++i) {
            ginv_[static_cast<std::size_t>(i * m + (u + i))] = from_poly(MPoly::constant(Rat(1)));
            ginv_[static_cast<std::size_t>((u + i) * m + i)] = from_poly(MPoly::constant(Rat(1)));
            for (int j = 0; j < u; ++j)
                ginv_[static_cast<std::size_t>((u + i) * m + (u + j))] =
                    from_poly(-ws.psi[static_cast<std::size_t>(i * u + j)]);
        }
        for (int t = 0; t < ws.a; ++t)
            ginv_[static_cast<std::size_t>((2 * u + t) * m + (2 * u + t))] =
                from_poly(MPoly::constant(Rat(-1)));
        for (int s = 0; s < ws.b; ++s)
            ginv_[static_cast<std::size_t>((2 * u + ws.a + s) * m + (2 * u + ws.a + s))] =
                from_poly(MPoly::constant(Rat(1)));
        // Check g * ginv = Id symbolically once per model.
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                CExpr acc = zero();
                for (int k = 0; k < m; ++k)
                    acc = cadd(acc, cmul(g_[static_cast<std::size_t>(i * m + k)],
                                         ginv_[static_cast<std::size_t>(k * m + j)]));
                MPoly expect = i == j ? MPoly::constant(Rat(1)) : MPoly();
                if (!(acc.n == expect)) throw std::logic_error("walker inverse check failed");
            }
    }

    // Gamma_{mu nu}^rho = 1/2 g^{rho sigma} (d_mu g_{nu sigma} + d_nu g_{mu sigma}
    //                                        - d_sigma g_{mu nu})
    std::vector<CExpr> lowered(static_cast<std::size_t>(m) * m * m, zero());
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu; nu < m; ++nu)
            for (int sg = 0; sg < m; ++sg) {
                CExpr v = cadd(cderive(g_[static_cast<std::size_t>(nu * m + sg)], mu),
                               cderive(g_[static_cast<std::size_t>(mu * m + sg)], nu));
                v = cadd(v, cneg(cderive(g_[static_cast<std::size_t>(mu * m + nu)], sg)));
                v = cmul(from_poly(MPoly::constant(Rat(1, 2))), v);
                lowered[static_cast<std::size_t>((mu * m + nu) * m + sg)] = v;
                lowered[static_cast<std::size_t>((nu * m + mu) * m + sg)] = v;
            }
    gamma_.assign(static_cast<std::size_t>(m) * m * m, zero());
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu; nu < m; ++nu)
            for (int rho = 0; rho < m; ++rho) {
                CExpr acc = zero();
                for (int sg = 0; sg < m; ++sg) {
                    const CExpr& gij = ginv_[static_cast<std::size_t>(rho * m + sg)];
                    const CExpr& low = lowered[static_cast<std::size_t>((mu * m + nu) * m + sg)];
                    if (gij.n.is_zero() || low.n.is_zero()) continue;
                    acc = cadd(acc, cmul(gij, low));
                }
                gamma_[static_cast<std::size_t>((mu * m + nu) * m + rho)] = acc;
                gamma_[static_cast<std::size_t>((nu * m + mu) * m + rho)] = acc;
            }

    // R^rho_{sigma mu nu} = d_mu G^rho_{nu sigma} - d_nu G^rho_{mu sigma}
    //                      + G^rho_{mu l} G^l_{nu sigma} - G^rho_{nu l} G^l_{mu sigma};
    // lowered R(mu,nu,sigma,tau) = g_{tau rho} R^rho_{sigma mu nu}.
    auto G = [&](int mu, int nu, int rho) -> const CExpr& {
        return gamma_[static_cast<std::size_t>((mu * m + nu) * m + rho)];
    };
    std::vector<CExpr> upper(static_cast<std::size_t>(m) * m * m * m, zero());
    for (int rho = 0; rho < m; ++rho)
        for (int sg = 0; sg < m; ++sg)
            for (int mu = 0; mu < m; ++mu)
                for (int nu = mu + 1; nu < m; ++nu) {
                    CExpr acc = cadd(cderive(G(nu, sg, rho), mu),
                                     cneg(cderive(G(mu, sg, rho), nu)));
                    for (int l = 0; l < m; ++l) {
                        if (!G(mu, l, rho).n.is_zero() && !G(nu, sg, l).n.is_zero())
                            acc = cadd(acc, cmul(G(mu, l, rho), G(nu, sg, l)));
                        if (!G(nu, l, rho).n.is_zero() && !G(mu, sg, l).n.is_zero())
                            acc = cadd(acc, cneg(cmul(G(nu, l, rho), G(mu, sg, l))));
                    }
                    upper[static_cast<std::size_t>(((rho * m + sg) * m + mu) * m + nu)] = acc;
                    upper[static_cast<std::size_t>(((rho * m + sg) * m + nu) * m + mu)] = cneg(acc);
                }
    riem_.assign(static_cast<std::size_t>(m) * m * m * m, zero());
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu + 1; nu < m; ++nu)
            for (int sg = 0; sg < m; ++sg)
                for (int tau = 0; tau < m; ++tau) {
                    CExpr acc = zero();
                    for (int rho = 0; rho < m; ++rho) {
                        const CExpr& gt = g_[static_cast<std::size_t>(tau * m + rho)];
                        const CExpr& up =
                            upper[static_cast<std::size_t>(((rho * m + sg) * m + mu) * m + nu)];
                        if (gt.n.is_zero() || up.n.is_zero()) continue;
                        acc = cadd(acc, cmul(gt, up));
                    }
                    riem_[static_cast<std::size_t>(((mu * m + nu) * m + sg) * m + tau)] = acc;
                    riem_[static_cast<std::size_t>(((nu * m + mu) * m + sg) * m + tau)] = cneg(acc);
                }

    // nabla R(i,j,k,l;n) = d_n R_{ijkl} - G_{ni}^s R_{sjkl} - G_{nj}^s R_{iskl}
    //                      - G_{nk}^s R_{ijsl} - G_{nl}^s R_{ijks}
    auto R4 = [&](int i, int j, int k, int l) -> const CExpr& {
        return riem_[static_cast<std::size_t>(((i * m + j) * m + k) * m + l)];
    };
    driem_.assign(static_cast<std::size_t>(m) * m * m * m * m, zero());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    for (int n = 0; n < m; ++n) {
                        CExpr acc = cderive(R4(i, j, k, l), n);
                        for (int s = 0; s < m; ++s) {
                            if (!G(n, i, s).n.is_zero() && !R4(s, j, k, l).n.is_zero())
                                acc = cadd(acc, cneg(cmul(G(n, i, s), R4(s, j, k, l))));
                            if (!G(n, j, s).n.is_zero() && !R4(i, s, k, l).n.is_zero())
                                acc = cadd(acc, cneg(cmul(G(n, j, s), R4(i, s, k, l))));
                            if (!G(n, k, s).n.is_zero() && !R4(i, j, s, l).n.is_zero())
                                acc = cadd(acc, cneg(cmul(G(n, k, s), R4(i, j, s, l))));
                            if (!G(n, l, s).n.is_zero() && !R4(i, j, k, s).n.is_zero())
                                acc = cadd(acc, cneg(cmul(G(n, l, s), R4(i, j, k, s))));
                        }
                        driem_[static_cast<std::size_t>((((i * m + j) * m + k) * m + l) * m + n)] =
                            acc;
                        driem_[static_cast<std::size_t>((((j * m + i) * m + k) * m + l) * m + n)] =
                            cneg(acc);
                    }
}

namespace {

// Contract one slot with frame columns, cycling the contracted slot to the back.
curvature::Tensor4Q transform4(const curvature::Tensor4Q& t, const MatQ& fr) {
    const int m = t.dim();
    curvature::Tensor4Q cur = t;
    for (int slot = 0; slot < 4; ++slot) {
        curvature::Tensor4Q next(t.sig);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        Rat acc(0);
                        for (int srec = 0; srec < m; ++srec) {
                            const Rat& f = fr(srec, i);
                            if (f.is_zero()) continue;
                            acc += f * cur.at(srec, j, k, l);
                        }
                        next.at(j, k, l, i) = acc;
                    }
        cur = next;
    }
    return cur;
}

curvature::Tensor5Q transform5(const curvature::Tensor5Q& t, const MatQ& fr) {
    const int m = t.dim();
    curvature::Tensor5Q cur = t;
    for (int slot = 0; slot < 5; ++slot) {
        curvature::Tensor5Q next(t.sig);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                        for (int n = 0; n < m; ++n) {
                            Rat acc(0);
                            for (int srec = 0; srec < m; ++srec) {
                                const Rat& f = fr(srec, i);
                                if (f.is_zero()) continue;
                                acc += f * cur.at(srec, j, k, l, n);
                            }
                            next.at(j, k, l, n, i) = acc;
                        }
        cur = next;
    }
    return cur;
}

curvature::Tensor4D transform4_float(const curvature::Tensor4Q& t, const MatD& fr) {
    const int m = t.dim();
    curvature::Tensor4D cur = curvature::to_float(t);
    for (int slot = 0; slot < 4; ++slot) {
        curvature::Tensor4D next(t.sig);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        double acc = 0;
                        for (int srec = 0; srec < m; ++srec)
                            acc += fr(srec, i) * cur.at(srec, j, k, l);
                        next.at(j, k, l, i) = acc;
                    }
        cur = next;
    }
    return cur;
}

curvature::Tensor5D transform5_float(const curvature::Tensor5Q& t, const MatD& fr) {
    const int m = t.dim();
    curvature::Tensor5D cur = curvature::to_float(t);
    for (int slot = 0; slot < 5; ++slot) {
        curvature::Tensor5D next(t.sig);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                        for (int n = 0; n < m; ++n) {
                            double acc = 0;
                            for (int srec = 0; srec < m; ++srec)
                                acc += fr(srec, i) * cur.at(srec, j, k, l, n);
                            next.at(j, k, l, n, i) = acc;
                        }
        cur = next;
    }
    return cur;
}

}  // namespace

PointEval MetricModel::eval(const std::vector<Rat>& point,
                            const std::vector<int>* pair_perm) const {
    const int m = m_;
    if (static_cast<int>(point.size()) != m)
        throw std::invalid_argument("eval: point must have " + std::to_string(m) + " coordinates");
    if (const auto* w = std::get_if<Warped>(&mf_)) {
        Rat fval = Rat(w->eps) * w->kappa * point[0] * point[0] + w->A * point[0] + w->B;
        if (fval.sign() <= 0)
            throw std::invalid_argument("Warped: f(t) must be positive at the evaluation point");
    }
    PointEval pe;
    pe.sig = sig_;
    pe.point = point;
    pe.g = MatQ(m, m);
    pe.g_inv = MatQ(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            pe.g(i, j) = ceval(g_[static_cast<std::size_t>(i * m + j)], point);
            pe.g_inv(i, j) = ceval(ginv_[static_cast<std::size_t>(i * m + j)], point);
        }
    if (!(pe.g * pe.g_inv == MatQ::identity(m)))
        throw std::logic_error("metric inverse check failed at the point");
    pe.christoffel.resize(static_cast<std::size_t>(m) * m * m);
    for (std::size_t idx = 0; idx < gamma_.size(); ++idx)
        pe.christoffel[idx] = ceval(gamma_[idx], point);
    pe.R_coord = curvature::Tensor4Q(sig_);
    for (std::size_t idx = 0; idx < riem_.size(); ++idx)
        pe.R_coord.c[idx] = ceval(riem_[idx], point);
    pe.dR_coord = curvature::Tensor5Q(sig_);
    for (std::size_t idx = 0; idx < driem_.size(); ++idx)
        pe.dR_coord.c[idx] = ceval(driem_[idx], point);

    // Orthonormal frame at the point, timelike block first.
    std::vector<VecQ> timelike, spacelike;
    std::vector<Rat> time_norm, space_norm;
    if (const auto* w = std::get_if<Warped>(&mf_)) {
        VecQ dt(m);
        dt[0] = Rat(1);
        (w->eps < 0 ? timelike : spacelike).push_back(dt);
        (w->eps < 0 ? time_norm : space_norm).push_back(Rat(1));
        Rat nu = pe.g(1, 1);  // common fiber norm f/h^2 > 0
        for (int i = 1; i <= w->fiber; ++i) {
            VecQ dz(m);
            dz[i] = Rat(1);
            spacelike.push_back(dz);
            space_norm.push_back(nu);
        }
    } else {
        WalkerShape ws = walker_shape(mf_);
        const int u = ws.u;
        std::vector<int> order(static_cast<std::size_t>(u));
        for (int i = 0; i < u; ++i) order[static_cast<std::size_t>(i)] = i;
        if (pair_perm) {
            if (static_cast<int>(pair_perm->size()) != u)
                throw std::invalid_argument("eval: pair_perm must have length u");
            order = *pair_perm;
        }
        for (int oi = 0; oi < u; ++oi) {
            int i = order[static_cast<std::size_t>(oi)];
            // xt_i = dx_i - 1/2 sum_j psi_ij(P) dy_j is null and pairs with dy_i.
            VecQ xt(m);
            xt[i] = Rat(1);
            for (int j = 0; j < u; ++j)
                xt[u + j] -= Rat(1, 2) * ws.psi[static_cast<std::size_t>(i * u + j)].eval(point);
            VecQ dy(m);
            dy[u + i] = Rat(1);
            VecQ vminus(m), vplus(m);
            for (int t = 0; t < m; ++t) {
                vminus[t] = Rat(1, 2) * xt[t] - dy[t];
                vplus[t] = Rat(1, 2) * xt[t] + dy[t];
            }
            timelike.push_back(vminus);
            time_norm.push_back(Rat(1));
            spacelike.push_back(vplus);
            space_norm.push_back(Rat(1));
        }
        for (int t = 0; t < ws.a; ++t) {
            VecQ e(m);
            e[2 * u + t] = Rat(1);
            timelike.push_back(e);
            time_norm.push_back(Rat(1));
        }
        for (int s = 0; s < ws.b; ++s) {
            VecQ e(m);
            e[2 * u + ws.a + s] = Rat(1);
            spacelike.push_back(e);
            space_norm.push_back(Rat(1));
        }
    }

    pe.canonical_exact = true;
    std::vector<Rat> scale_exact;
    std::vector<double> scale_float;
    auto handle = [&](const Rat& n) {
        if (auto s = n.sqrt_exact()) {
            scale_exact.push_back(Rat(1) / *s);
            scale_float.push_back(1.0 / s->to_double());
        } else {
            pe.canonical_exact = false;
            scale_exact.push_back(Rat(1));
            scale_float.push_back(1.0 / std::sqrt(n.to_double()));
        }
    };
    for (const auto& n : time_norm) handle(n);
    for (const auto& n : space_norm) handle(n);

    std::vector<VecQ> frame_vecs;
    frame_vecs.insert(frame_vecs.end(), timelike.begin(), timelike.end());
    frame_vecs.insert(frame_vecs.end(), spacelike.begin(), spacelike.end());
    pe.frame = MatQ(m, m);
    for (int c = 0; c < m; ++c)
        for (int rrow = 0; rrow < m; ++rrow)
            pe.frame(rrow, c) =
                (pe.canonical_exact ? scale_exact[static_cast<std::size_t>(c)] : Rat(1)) *
                frame_vecs[static_cast<std::size_t>(c)][rrow];

    if (pe.canonical_exact) {
        pe.R = transform4(pe.R_coord, pe.frame);
        pe.dR = transform5(pe.dR_coord, pe.frame);
        // The frame really is orthonormal.
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                Rat ip(0);
                for (int a2 = 0; a2 < m; ++a2)
                    for (int b2 = 0; b2 < m; ++b2)
                        ip += pe.frame(a2, x) * pe.frame(b2, y) * pe.g(a2, b2);
                Rat expect = x == y ? Rat(sig_.eps(x)) : Rat(0);
                if (ip != expect) throw std::logic_error("orthonormal frame construction failed");
            }
    } else {
        // Exact coordinate data stands; canonical components fall back to floats.
        MatD fr(m, m);
        for (int c = 0; c < m; ++c)
            for (int rrow = 0; rrow < m; ++rrow)
                fr(rrow, c) = scale_float[static_cast<std::size_t>(c)] *
                              frame_vecs[static_cast<std::size_t>(c)][rrow].to_double();
        pe.R_float = transform4_float(pe.R_coord, fr);
        pe.dR_float = transform5_float(pe.dR_coord, fr);
    }
    return pe;
}

MatQ ricci_bilinear(const curvature::Tensor4Q& r) {
    const int m = r.dim();
    MatQ ric(m, m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            Rat s(0);
            for (int i = 0; i < m; ++i) {
                Rat t = r.at(i, x, y, i);
                if (r.sig.eps(i) < 0) t = -t;
                s += t;
            }
            ric(x, y) = s;
        }
    return ric;
}

MatQ ricci_operator(const curvature::Tensor4Q& r) {
    const int m = r.dim();
    MatQ rb = ricci_bilinear(r);
    MatQ op(m, m);
    for (int w = 0; w < m; ++w)
        for (int z = 0; z < m; ++z) {
            Rat v = rb(z, w);
            if (r.sig.eps(w) < 0) v = -v;
            op(w, z) = v;
        }
    return op;
}

EinsteinResult einstein_check(const curvature::Tensor4Q& r) {
    const int m = r.dim();
    MatQ rb = ricci_bilinear(r);
    if (rb.is_zero()) return {EinsteinKind::RicciFlat, Rat(0)};
    Rat c;
    bool have_c = false;
    for (int i = 0; i < m && !have_c; ++i)
        if (!rb(i, i).is_zero()) {
            c = rb(i, i) / Rat(r.sig.eps(i));
            have_c = true;
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Rat expect = i == j ? c * Rat(r.sig.eps(i)) : Rat(0);
            if (rb(i, j) != expect) return {EinsteinKind::Neither, Rat(0)};
        }
    return {EinsteinKind::Einstein, c};
}

bool psi_membership(const std::vector<MPoly>& psi, int u, int p, std::uint64_t seed,
                    int npoints, int nvecs) {
    PsiAB fam{u, psi, 0, 0};
    validate_family(MetricFamily(fam));
    MetricModel model{MetricFamily(fam)};
    Xoshiro256 rng(seed);
    const int m = 2 * u;
    for (int ip = 0; ip < npoints; ++ip) {
        std::vector<Rat> point(static_cast<std::size_t>(m));
        for (auto& c : point) c = Rat(rng.range(-8, 8), 4);
        PointEval pe = model.eval(point);
        for (int iv = 0; iv < nvecs; ++iv) {
            VecQ v(u);
            bool nonzero = false;
            for (int i = 0; i < u; ++i) {
                v[i] = Rat(rng.range(-8, 8), 4);
                nonzero = nonzero || !v[i].is_zero();
            }
            if (!nonzero) continue;
            // Jacobi form on the x-block: Q_ab = R(dx_a, v, v, dx_b).
            MatQ qf(u, u);
            for (int a = 0; a < u; ++a)
                for (int b = 0; b < u; ++b) {
                    Rat s(0);
                    for (int c = 0; c < u; ++c) {
                        if (v[c].is_zero()) continue;
                        for (int d = 0; d < u; ++d) {
                            if (v[d].is_zero()) continue;
                            s += v[c] * v[d] * pe.R_coord.at(a, c, d, b);
                        }
                    }
                    qf(a, b) = s;
                }
            pseudolin::Inertia in = pseudolin::inertia(qf);
            if (in.neg != 0 || in.pos != p - 1) return false;
        }
    }
    return true;
}

}  // namespace geometry
}  // namespace curvlab
