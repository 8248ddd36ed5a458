#include "curvlab/pseudolin.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace curvlab {

bool is_self_adjoint(const MatD& t, const Signature& sig, double tol) {
    MatD ad = adjoint(t, sig);
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j)
            if (std::abs(ad(i, j) - t(i, j)) > tol) return false;
    return true;
}

bool is_skew_adjoint(const MatD& t, const Signature& sig, double tol) {
    MatD ad = adjoint(t, sig);
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j)
            if (std::abs(ad(i, j) + t(i, j)) > tol) return false;
    return true;
}

MatD to_double(const MatQ& m) {
    MatD r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
    return r;
}

VecD to_double(const VecQ& v) {
    VecD r(v.dim());
    for (int i = 0; i < v.dim(); ++i) r[i] = v[i].to_double();
    return r;
}

namespace pseudolin {

int rank(const MatQ& a) {
    const int rows = a.rows(), cols = a.cols();
    // Scale each row to integers, then run Bareiss fraction-free elimination.
    std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(rows),
                                          std::vector<mpz_class>(static_cast<std::size_t>(cols)));
    for (int i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).den().get_mpz_t());
        for (int j = 0; j < cols; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                a(i, j).num() * (l / a(i, j).den());
    }
    int rk = 0;
    mpz_class prev = 1;
    for (int col = 0; col < cols && rk < rows; ++col) {
        int piv = -1;
        for (int i = rk; i < rows; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(rk)]);
        const mpz_class& pv = m[static_cast<std::size_t>(rk)][static_cast<std::size_t>(col)];
        for (int i = rk + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                mpz_class t = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * pv -
                              m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] *
                                  m[static_cast<std::size_t>(rk)][static_cast<std::size_t>(j)];
                mpz_divexact(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_mpz_t(),
                             t.get_mpz_t(), prev.get_mpz_t());
            }
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] = 0;
        }
        prev = pv;
        ++rk;
    }
    return rk;
}

std::vector<VecQ> nullspace(const MatQ& a) {
    const int rows = a.rows(), cols = a.cols();
    MatQ m = a;
    std::vector<int> pivot_col;
    int rk = 0;
    for (int col = 0; col < cols && rk < rows; ++col) {
        int piv = -1;
        for (int i = rk; i < rows; ++i)
            if (!m(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rk)
            for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(rk, j));
        Rat inv = Rat(1) / m(rk, col);
        for (int j = 0; j < cols; ++j) m(rk, j) = inv * m(rk, j);
        for (int i = 0; i < rows; ++i) {
            if (i == rk || m(i, col).is_zero()) continue;
            Rat f = m(i, col);
            for (int j = 0; j < cols; ++j) m(i, j) -= f * m(rk, j);
        }
        pivot_col.push_back(col);
        ++rk;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<VecQ> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        VecQ v(cols);
        v[free] = Rat(1);
        for (int r = 0; r < rk; ++r) v[pivot_col[static_cast<std::size_t>(r)]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Eigenvalues of a symmetric matrix by the cyclic Jacobi method.
std::vector<double> symmetric_eigenvalues(MatD s) {
    const int n = s.rows();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(s(p, q)) < 1e-300) continue;
                double theta = (s(q, q) - s(p, p)) / (2 * s(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (int k = 0; k < n; ++k) {
                    double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = s(i, i);
    return ev;
}

std::vector<double> singular_values(const MatD& a) {
    MatD ata = a.transpose() * a;
    auto ev = symmetric_eigenvalues(ata);
    std::vector<double> sv;
    sv.reserve(ev.size());
    for (double l : ev) sv.push_back(std::sqrt(std::max(0.0, l)));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

}  // namespace

int rank(const MatD& a, double tol) {
    auto sv = singular_values(a);
    if (sv.empty()) return 0;
    double top = sv.front();
    if (top == 0) return 0;
    int r = 0;
    for (double s : sv)
        if (s > tol * std::max(1.0, top)) ++r;
    return r;
}

Inertia inertia(const MatQ& sym) {
    if (!sym.is_square()) throw std::invalid_argument("inertia: square matrix required");
    const int n = sym.rows();
    MatQ s = sym;
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    Inertia out;
    for (;;) {
        int piv = -1;
        for (int i = 0; i < n; ++i)
            if (!done[static_cast<std::size_t>(i)] && !s(i, i).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) {
            // No diagonal pivot: look for an off-diagonal hyperbolic pair and
            // fold it onto the diagonal via e_i <- e_i + e_j.
            int hi = -1, hj = -1;
            for (int i = 0; i < n && hi < 0; ++i)
                for (int j = i + 1; j < n && hi < 0; ++j)
                    if (!done[static_cast<std::size_t>(i)] && !done[static_cast<std::size_t>(j)] &&
                        !s(i, j).is_zero()) {
                        hi = i;
                        hj = j;
                    }
            if (hi < 0) break;  // remaining block is zero
            for (int k = 0; k < n; ++k) s(hi, k) += s(hj, k);
            for (int k = 0; k < n; ++k) s(k, hi) += s(k, hj);
            continue;
        }
        (s(piv, piv).sign() > 0 ? out.pos : out.neg) += 1;
        Rat d = s(piv, piv);
        for (int i = 0; i < n; ++i) {
            if (i == piv || done[static_cast<std::size_t>(i)]) continue;
            Rat f = s(i, piv) / d;
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j) s(i, j) -= f * s(piv, j);
            for (int j = 0; j < n; ++j) s(j, i) -= f * s(j, piv);
        }
        done[static_cast<std::size_t>(piv)] = true;
    }
    out.zero = n - out.pos - out.neg;
    return out;
}

// --- spectra -----------------------------------------------------------------

std::string SpectrumEntry::str() const {
    std::string s;
    switch (kind) {
        case Kind::Rational: s = value.str(); break;
        case Kind::QuadraticPair:
            s = "roots(x^2" + (qb.sign() >= 0 ? "+" + qb.str() : qb.str()) + "x" +
                (qc.sign() >= 0 ? "+" + qc.str() : qc.str()) + ")";
            break;
        case Kind::Approx: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "~(%.6g%+.6gi)", approx.real(), approx.imag());
            s = buf;
            break;
        }
    }
    if (mult > 1) s += " x" + std::to_string(mult);
    return s;
}

std::string SpectrumSummary::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ", ";
        s += entries[i].str();
    }
    return s + "}";
}

SpectrumSummary spectrum(const MatQ& a) {
    SpectrumSummary out;
    out.dim = a.rows();
    PolyQ p = char_poly(a);
    CharFactorization f = factor_rational_quadratic(p);
    for (const auto& [r, mult] : f.roots) {
        SpectrumEntry e;
        e.kind = SpectrumEntry::Kind::Rational;
        e.value = r;
        e.mult = mult;
        out.entries.push_back(e);
    }
    for (const auto& q : f.quads) {
        SpectrumEntry e;
        e.kind = SpectrumEntry::Kind::QuadraticPair;
        e.qb = q.b;
        e.qc = q.c;
        e.mult = q.mult;
        out.entries.push_back(e);
    }
    if (!f.complete()) {
        out.exact = false;
        std::vector<double> cd;
        for (int k = 0; k <= f.residual.degree(); ++k) cd.push_back(f.residual.coeff(k).to_double());
        for (auto [re, im] : roots_approx(PolyD(cd))) {
            SpectrumEntry e;
            e.kind = SpectrumEntry::Kind::Approx;
            e.approx = {re, im};
            out.entries.push_back(e);
        }
    }
    return out;
}

namespace {

struct Cluster {
    std::complex<double> center;
    int mult = 0;
};

std::vector<Cluster> cluster_roots(std::vector<std::complex<double>> roots, double tol) {
    // Single-linkage clusters with diameter tol * max(1, |center|); two
    // clusters closer than their linking radius raise an error instead of
    // merging silently.
    std::vector<Cluster> cl;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> members{i};
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                if (used[j]) continue;
                for (std::size_t k : members) {
                    double link = tol * std::max(1.0, std::abs(roots[k]));
                    if (std::abs(roots[j] - roots[k]) <= link) {
                        members.push_back(j);
                        used[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        std::complex<double> c(0, 0);
        for (std::size_t k : members) c += roots[k];
        c /= static_cast<double>(members.size());
        cl.push_back({c, static_cast<int>(members.size())});
    }
    for (std::size_t i = 0; i < cl.size(); ++i)
        for (std::size_t j = i + 1; j < cl.size(); ++j) {
            double link = 2 * tol * std::max({1.0, std::abs(cl[i].center), std::abs(cl[j].center)});
            if (std::abs(cl[i].center - cl[j].center) < link)
                throw IllConditionedSpectrum("eigenvalue clusters closer than tolerance");
        }
    return cl;
}

}  // namespace

SpectrumSummary spectrum(const MatD& a, double tol) {
    SpectrumSummary out;
    out.dim = a.rows();
    out.exact = false;
    PolyD p = char_poly(a);
    std::vector<std::complex<double>> roots;
    for (auto [re, im] : roots_approx(p)) roots.emplace_back(re, im);
    for (const auto& c : cluster_roots(roots, tol)) {
        SpectrumEntry e;
        e.kind = SpectrumEntry::Kind::Approx;
        e.approx = std::abs(c.center.imag()) <= tol * std::max(1.0, std::abs(c.center))
                       ? std::complex<double>(c.center.real(), 0)
                       : c.center;
        e.mult = c.mult;
        out.entries.push_back(e);
    }
    return out;
}

// --- jordan ------------------------------------------------------------------

std::vector<int> partition_from_nullities(const std::vector<int>& nu) {
    // nu[k] = dim ker(A^k) per root, nu[0] = 0; blocks of size >= k number
    // nu[k] - nu[k-1]; the partition is the conjugate of that sequence.
    std::vector<int> part;
    for (std::size_t k = 1; k < nu.size(); ++k) {
        int ge_k = nu[k] - nu[k - 1];
        int ge_k1 = (k + 1 < nu.size()) ? nu[k + 1] - nu[k] : 0;
        int exactly_k = ge_k - ge_k1;
        for (int i = 0; i < exactly_k; ++i) part.push_back(static_cast<int>(k));
    }
    std::sort(part.rbegin(), part.rend());
    return part;
}

namespace {

std::vector<int> class_partition(const MatQ& acl, int mult, int root_count) {
    const int m = acl.rows();
    std::vector<int> nu{0};
    MatQ pw = acl;
    for (int k = 1; k <= m; ++k) {
        int nullity = (m - rank(pw)) / root_count;
        nu.push_back(nullity);
        if (nullity >= mult) break;
        pw = pw * acl;
    }
    return partition_from_nullities(nu);
}

std::string partition_str(const std::vector<int>& part) {
    std::string s = "[";
    for (std::size_t i = 0; i < part.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(part[i]);
    }
    return s + "]";
}

}  // namespace

std::string JordanClass::str() const {
    if (kind == Kind::Rational) return "(" + value.str() + ", " + partition_str(partition) + ")";
    return "(roots(x^2" + (qb.sign() >= 0 ? "+" + qb.str() : qb.str()) + "x" +
           (qc.sign() >= 0 ? "+" + qc.str() : qc.str()) + "), " + partition_str(partition) + ")";
}

std::string JordanSignature::str() const {
    std::string s = "{";
    if (exact) {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (i) s += ", ";
            s += classes[i].str();
        }
    } else {
        for (std::size_t i = 0; i < fclasses.size(); ++i) {
            if (i) s += ", ";
            char buf[64];
            std::snprintf(buf, sizeof buf, "(~%.6g%+.6gi, ", fclasses[i].value.real(),
                          fclasses[i].value.imag());
            s += buf;
            s += partition_str(fclasses[i].partition) + ")";
        }
        s += " [float]";
    }
    return s + "}";
}

JordanSignature jordan_signature(const MatQ& a) {
    if (!a.is_square()) throw std::invalid_argument("jordan_signature: square matrix required");
    JordanSignature out;
    out.dim = a.rows();
    PolyQ p = char_poly(a);
    CharFactorization f = factor_rational_quadratic(p);
    if (!f.complete()) {
        out = jordan_signature(to_double(a), 1e-8);
        out.warning =
            "spectrum does not factor into rational linear/quadratic classes; "
            "degraded to float mode";
        return out;
    }
    const MatQ id = MatQ::identity(a.rows());
    for (const auto& [r, mult] : f.roots) {
        JordanClass jc;
        jc.kind = JordanClass::Kind::Rational;
        jc.value = r;
        jc.partition = class_partition(a - r * id, mult, 1);
        out.classes.push_back(jc);
    }
    for (const auto& q : f.quads) {
        JordanClass jc;
        jc.kind = JordanClass::Kind::Quadratic;
        jc.qb = q.b;
        jc.qc = q.c;
        jc.partition = class_partition(a * a + q.b * a + q.c * id, q.mult, 2);
        out.classes.push_back(jc);
    }
    return out;
}

JordanSignature jordan_signature(const MatD& a, double tol) {
    JordanSignature out;
    out.dim = a.rows();
    out.exact = false;
    PolyD p = char_poly(a);
    std::vector<std::complex<double>> roots;
    for (auto [re, im] : roots_approx(p)) roots.emplace_back(re, im);
    auto clusters = cluster_roots(roots, tol);
    const int m = a.rows();
    std::vector<bool> taken(clusters.size(), false);
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        if (taken[ci]) continue;
        auto c = clusters[ci];
        bool realclass = std::abs(c.center.imag()) <= tol * std::max(1.0, std::abs(c.center));
        MatD acl(m, m);
        int root_count = 1;
        int mult = c.mult;
        if (realclass) {
            acl = a;
            for (int i = 0; i < m; ++i) acl(i, i) -= c.center.real();
        } else {
            if (c.center.imag() < 0) continue;  // handled with its conjugate
            // Pair with the conjugate cluster.
            for (std::size_t cj = 0; cj < clusters.size(); ++cj)
                if (cj != ci && std::abs(clusters[cj].center - std::conj(c.center)) <=
                                    tol * std::max(1.0, std::abs(c.center)))
                    taken[cj] = true;
            double tr = 2 * c.center.real(), det = std::norm(c.center);
            acl = a * a;
            MatD am = a;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) acl(i, j) += -tr * am(i, j) + (i == j ? det : 0.0);
            root_count = 2;
        }
        std::vector<int> nu{0};
        MatD pw = acl;
        for (int k = 1; k <= m; ++k) {
            int nullity = (m - rank(pw, tol)) / root_count;
            nu.push_back(nullity);
            if (nullity >= mult) break;
            pw = pw * acl;
        }
        FloatJordanClass fc;
        fc.value = realclass ? std::complex<double>(c.center.real(), 0) : c.center;
        fc.partition = partition_from_nullities(nu);
        out.fclasses.push_back(fc);
    }
    return out;
}

namespace {

bool partitions_equal(const std::vector<int>& a, const std::vector<int>& b) { return a == b; }

}  // namespace

bool jordan_equivalent(const JordanSignature& a, const JordanSignature& b, double tol) {
    if (a.dim != b.dim) return false;
    if (a.exact && b.exact) {
        auto key = [](const JordanClass& c) {
            return std::make_tuple(static_cast<int>(c.kind), c.value, c.qb, c.qc, c.partition);
        };
        auto ca = a.classes, cb = b.classes;
        auto cmp = [&](const JordanClass& x, const JordanClass& y) { return key(x) < key(y); };
        std::sort(ca.begin(), ca.end(), cmp);
        std::sort(cb.begin(), cb.end(), cmp);
        if (ca.size() != cb.size()) return false;
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (key(ca[i]) != key(cb[i])) return false;
        return true;
    }
    // Mixed or float: compare float classes within tolerance.
    auto to_float = [](const JordanSignature& s) {
        std::vector<FloatJordanClass> fc;
        if (!s.exact) {
            fc = s.fclasses;
        } else {
            for (const auto& c : s.classes) {
                if (c.kind == JordanClass::Kind::Rational) {
                    fc.push_back({{c.value.to_double(), 0}, c.partition});
                } else {
                    double tr = -c.qb.to_double() / 2;
                    double disc = c.qb.to_double() * c.qb.to_double() / 4 - c.qc.to_double();
                    if (disc >= 0) {
                        fc.push_back({{tr - std::sqrt(disc), 0}, c.partition});
                        fc.push_back({{tr + std::sqrt(disc), 0}, c.partition});
                    } else {
                        fc.push_back({{tr, std::sqrt(-disc)}, c.partition});
                    }
                }
            }
        }
        return fc;
    };
    auto fa = to_float(a), fb = to_float(b);
    if (fa.size() != fb.size()) return false;
    std::vector<bool> used(fb.size(), false);
    for (const auto& ca : fa) {
        bool matched = false;
        for (std::size_t j = 0; j < fb.size(); ++j) {
            if (used[j] || !partitions_equal(ca.partition, fb[j].partition)) continue;
            double link = tol * std::max(1.0, std::abs(ca.value));
            if (std::abs(ca.value - fb[j].value) <= link ||
                std::abs(ca.value - std::conj(fb[j].value)) <= link) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

bool is_jordan_simple(const MatQ& a) {
    PolyQ p = char_poly(a);
    PolyQ g = poly_gcd(p, p.derivative());
    PolyQ s = (p / g).monic();  // squarefree part
    // s(A) = 0 iff every Jordan block is trivial.
    MatQ acc(a.rows(), a.rows());
    MatQ pw = MatQ::identity(a.rows());
    for (int k = 0; k <= s.degree(); ++k) {
        acc = acc + s.coeff(k) * pw;
        if (k < s.degree()) pw = pw * a;
    }
    return acc.is_zero();
}

bool is_jordan_simple(const MatD& a, double tol) {
    auto js = jordan_signature(a, tol);
    for (const auto& c : js.fclasses)
        for (int b : c.partition)
            if (b > 1) return false;
    return true;
}

int adams_number(int q) {
    if (q < 1) throw std::invalid_argument("adams_number: q >= 1 required");
    int b = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++b;
    }
    int c = b % 4, d = b / 4;
    return (1 << c) + 8 * d - 1;
}

}  // namespace pseudolin
}  // namespace curvlab
