#include "curvlab/tensor.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "curvlab/pseudolin.hpp"

namespace curvlab {
namespace curvature {

namespace {

template <class K, class IsZero>
std::vector<Violation> validate_acst_impl(const Tensor4<K>& r, IsZero is_zero,
                                          const std::string& (*show)(const K&, std::string&)) {
    std::vector<Violation> out;
    const int m = r.dim();
    std::string buf;
    auto push = [&](const char* id, std::initializer_list<int> idx, const K& res) {
        out.push_back({id, std::vector<int>(idx), show(res, buf)});
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    K anti = r.at(i, j, k, l) + r.at(j, i, k, l);
                    if (!is_zero(anti)) push("antisymmetry(1,2)", {i, j, k, l}, anti);
                    K pair = r.at(i, j, k, l) - r.at(k, l, i, j);
                    if (!is_zero(pair)) push("pair-symmetry", {i, j, k, l}, pair);
                    K b = r.at(i, j, k, l) + r.at(j, k, i, l) + r.at(k, i, j, l);
                    if (!is_zero(b)) push("first-bianchi", {i, j, k, l}, b);
                }
    return out;
}

template <class K, class IsZero>
std::vector<Violation> validate_acdt_impl(const Tensor5<K>& d, IsZero is_zero,
                                          const std::string& (*show)(const K&, std::string&)) {
    std::vector<Violation> out;
    const int m = d.dim();
    std::string buf;
    auto push = [&](const char* id, std::initializer_list<int> idx, const K& res) {
        out.push_back({id, std::vector<int>(idx), show(res, buf)});
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    for (int n = 0; n < m; ++n) {
                        K anti = d.at(i, j, k, l, n) + d.at(j, i, k, l, n);
                        if (!is_zero(anti)) push("antisymmetry(1,2)", {i, j, k, l, n}, anti);
                        K pair = d.at(i, j, k, l, n) - d.at(k, l, i, j, n);
                        if (!is_zero(pair)) push("pair-symmetry", {i, j, k, l, n}, pair);
                        K b1 = d.at(i, j, k, l, n) + d.at(j, k, i, l, n) + d.at(k, i, j, l, n);
                        if (!is_zero(b1)) push("first-bianchi", {i, j, k, l, n}, b1);
                        K b2 = d.at(i, j, k, l, n) + d.at(i, j, l, n, k) + d.at(i, j, n, k, l);
                        if (!is_zero(b2)) push("second-bianchi", {i, j, k, l, n}, b2);
                    }
    return out;
}

const std::string& show_rat(const Rat& v, std::string& buf) {
    buf = v.str();
    return buf;
}
const std::string& show_dbl(const double& v, std::string& buf) {
    buf = std::to_string(v);
    return buf;
}

}  // namespace

std::vector<Violation> validate_acst(const Tensor4Q& r) {
    return validate_acst_impl(r, [](const Rat& v) { return v.is_zero(); }, show_rat);
}
std::vector<Violation> validate_acdt(const Tensor5Q& d) {
    return validate_acdt_impl(d, [](const Rat& v) { return v.is_zero(); }, show_rat);
}
std::vector<Violation> validate_acst(const Tensor4D& r, double tol) {
    return validate_acst_impl(r, [tol](double v) { return std::abs(v) <= tol; }, show_dbl);
}
std::vector<Violation> validate_acdt(const Tensor5D& d, double tol) {
    return validate_acdt_impl(d, [tol](double v) { return std::abs(v) <= tol; }, show_dbl);
}

Tensor4Q build_R_phi(const MatQ& phi, const Signature& sig) {
    const int m = sig.dim();
    if (phi.rows() != m || phi.cols() != m)
        throw std::invalid_argument("build_R_phi: dimension mismatch");
    if (!is_self_adjoint(phi, sig)) throw std::invalid_argument("build_R_phi: phi not self-adjoint");
    // B(i,l) = (phi e_i, e_l), symmetric.
    MatQ b(m, m);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) b(i, l) = Rat(sig.eps(l)) * phi(l, i);
    Tensor4Q r(sig);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    r.at(i, j, k, l) = b(i, l) * b(j, k) - b(i, k) * b(j, l);
    return r;
}

Tensor4Q build_constant_curvature(const Rat& kappa, const Signature& sig) {
    Tensor4Q r = build_R_phi(MatQ::identity(sig.dim()), sig);
    for (auto& x : r.c) x = kappa * x;
    return r;
}

MatQ build_Phi_a(int p, int q, int a) {
    if (a < 1 || 2 * a > p || p > q)
        throw std::invalid_argument("build_Phi_a: need 1 <= a, 2a <= p <= q");
    const int m = p + q;
    MatQ phi(m, m);
    // Basis: e^-_1..e^-_p at 0..p-1, e^+_1..e^+_q at p..p+q-1 (1-based k below).
    auto minus = [&](int k) { return k - 1; };
    auto plus = [&](int k) { return p + k - 1; };
    for (int k = 1; k <= 2 * a; ++k) {
        if (k % 2 == 1) {
            int i = (k + 1) / 2;  // k = 2i-1: e^pm_k -> pm(e^-_{2i} + e^+_{2i})
            phi(minus(2 * i), minus(k)) = Rat(-1);
            phi(plus(2 * i), minus(k)) = Rat(-1);
            phi(minus(2 * i), plus(k)) = Rat(1);
            phi(plus(2 * i), plus(k)) = Rat(1);
        } else {
            int i = k / 2;  // k = 2i: e^pm_k -> mp(e^-_{2i-1} + e^+_{2i-1})
            phi(minus(2 * i - 1), minus(k)) = Rat(1);
            phi(plus(2 * i - 1), minus(k)) = Rat(1);
            phi(minus(2 * i - 1), plus(k)) = Rat(-1);
            phi(plus(2 * i - 1), plus(k)) = Rat(-1);
        }
    }
    return phi;
}

Tensor4Q build_R_a(int p, int q, int a) {
    MatQ phi = build_Phi_a(p, q, a);
    Signature sig(p, q);
    const int m = sig.dim();
    // P(i,l) = (Phi e_i, e_l); (e_j, Phi e_k) = P(k,j).
    MatQ pm(m, m);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) pm(i, l) = Rat(sig.eps(l)) * phi(l, i);
    Tensor4Q r(sig);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    r.at(i, j, k, l) = pm(k, j) * pm(i, l) - pm(k, i) * pm(j, l) -
                                       Rat(2) * pm(j, i) * pm(k, l);
    return r;
}

namespace {

template <class T>
Rat clear_denominators_impl(T& t) {
    mpz_class l = 1;
    for (const auto& v : t.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
    Rat f(l);
    if (l != 1)
        for (auto& v : t.c) v *= f;
    return f;
}

}  // namespace

Rat clear_denominators(Tensor4Q& r) { return clear_denominators_impl(r); }
Rat clear_denominators(Tensor5Q& d) { return clear_denominators_impl(d); }

Tensor4D to_float(const Tensor4Q& r) {
    Tensor4D out(r.sig);
    for (std::size_t i = 0; i < r.c.size(); ++i) out.c[i] = r.c[i].to_double();
    return out;
}

Tensor5D to_float(const Tensor5Q& d) {
    Tensor5D out(d.sig);
    for (std::size_t i = 0; i < d.c.size(); ++i) out.c[i] = d.c[i].to_double();
    return out;
}

bool two_nilpotent_acst(const Tensor4Q& r) {
    const int m = r.dim();
    std::vector<MatQ> endos;
    endos.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) endos.push_back(r.endo(i, j));
    for (const auto& a : endos)
        for (const auto& b : endos)
            if (!(a * b).is_zero()) return false;
    return true;
}

bool two_nilpotent_acdt(const Tensor5Q& d) {
    const int m = d.dim();
    std::vector<MatQ> endos;
    for (int v = 0; v < m; ++v)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                MatQ e(m, m);
                for (int z = 0; z < m; ++z)
                    for (int w = 0; w < m; ++w) {
                        Rat val = d.at(i, j, z, w, v);
                        if (d.sig.eps(w) < 0) val = -val;
                        e(w, z) = val;
                    }
                endos.push_back(e);
            }
    for (const auto& a : endos)
        for (const auto& b : endos)
            if (!(a * b).is_zero()) return false;
    return true;
}

HermitianStructure::HermitianStructure(Signature s, MatQ j) : sig(s), J(std::move(j)) {
    const int m = sig.dim();
    if (m % 2 != 0) throw std::invalid_argument("HermitianStructure: even dimension required");
    if (J.rows() != m || J.cols() != m)
        throw std::invalid_argument("HermitianStructure: dimension mismatch");
    if (!is_skew_adjoint(J, sig)) throw std::invalid_argument("HermitianStructure: J not skew-adjoint");
    if (!(J * J == -MatQ::identity(m)))
        throw std::invalid_argument("HermitianStructure: J^2 != -Id");
    // Skew-adjoint + J^2 = -Id makes J an isometry; checked anyway.
    MatQ gram(m, m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            Rat s(0);
            for (int t = 0; t < m; ++t) s += Rat(sig.eps(t)) * J(t, x) * J(t, y);
            gram(x, y) = s;
        }
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (gram(x, y) != Rat(x == y ? sig.eps(x) : 0))
                throw std::invalid_argument("HermitianStructure: J not an isometry");
}

HermitianStructure HermitianStructure::standard(const Signature& sig) {
    if (sig.p % 2 != 0 || sig.q % 2 != 0)
        throw std::invalid_argument("HermitianStructure::standard: p and q must be even");
    const int m = sig.dim();
    MatQ j(m, m);
    for (int i = 0; i + 1 < m; i += 2) {
        j(i + 1, i) = Rat(1);
        j(i, i + 1) = Rat(-1);
    }
    return HermitianStructure(sig, j);
}

MatQ curv_endo(const Tensor4Q& r, const VecQ& x, const VecQ& y) {
    const int m = r.dim();
    MatQ n(m, m);
    for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w) {
            Rat s(0);
            for (int i = 0; i < m; ++i) {
                if (x[i].is_zero()) continue;
                for (int j = 0; j < m; ++j) {
                    if (y[j].is_zero()) continue;
                    s += x[i] * y[j] * r.at(i, j, z, w);
                }
            }
            if (r.sig.eps(w) < 0) s = -s;
            n(w, z) = s;
        }
    return n;
}

bool almost_complex_check(const Tensor4Q& r, const HermitianStructure& h,
                          std::uint64_t sample_seed, int spot_samples) {
    if (r.sig != h.sig) throw std::invalid_argument("almost_complex_check: signature mismatch");
    const int m = r.dim();
    const MatQ& J = h.J;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    Rat pull(0);
                    for (int a = 0; a < m; ++a) {
                        if (J(a, i).is_zero()) continue;
                        for (int b = 0; b < m; ++b) {
                            if (J(b, j).is_zero()) continue;
                            for (int c = 0; c < m; ++c) {
                                if (J(c, k).is_zero()) continue;
                                for (int d = 0; d < m; ++d)
                                    pull += J(a, i) * J(b, j) * J(c, k) * J(d, l) * r.at(a, b, c, d);
                            }
                        }
                    }
                    if (pull != r.at(i, j, k, l)) return false;
                }
    // Spot-check the commutation formulation on sampled complex lines; a
    // disagreement with the componentwise identity indicates a bug.
    Xoshiro256 rng(sample_seed);
    int done = 0, guard = 0;
    while (done < spot_samples && ++guard < 1000) {
        VecQ x(m);
        for (int i = 0; i < m; ++i) x[i] = Rat(rng.range(-8, 8), 8);
        Rat n = inner(x, x, r.sig);
        if (n.is_zero()) continue;
        VecQ jx = J.apply(x);
        MatQ rp = curv_endo(r, x, jx);
        if (!(J * rp == rp * J))
            throw std::logic_error(
                "almost_complex_check: componentwise identity and complex-line commutation "
                "disagree");
        ++done;
    }
    return true;
}

// --- random tensors with exact symmetries -------------------------------------

namespace {

std::vector<std::vector<Rat>> kernel_basis(const std::vector<std::vector<Rat>>& rows, int ncols) {
    MatQ a(static_cast<int>(rows.size()), ncols);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < ncols; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    std::vector<std::vector<Rat>> basis;
    for (const auto& v : pseudolin::nullspace(a)) basis.push_back(v.c);
    return basis;
}

struct PairIndexing {
    int m = 0;
    int npairs = 0;
    std::vector<std::vector<int>> pair_id;
    explicit PairIndexing(int m_) : m(m_), pair_id(static_cast<std::size_t>(m_), std::vector<int>(static_cast<std::size_t>(m_), -1)) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                pair_id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = npairs++;
    }
    // coordinate of unordered {pair(i,j), pair(k,l)} with sign; -1 if degenerate
    int coord(int i, int j, int k, int l, int& sign) const {
        if (i == j || k == l) return -1;
        int s = 1;
        if (i > j) { std::swap(i, j); s = -s; }
        if (k > l) { std::swap(k, l); s = -s; }
        int a = pair_id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        int b = pair_id[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        if (a > b) std::swap(a, b);
        sign = s;
        return a * npairs - a * (a - 1) / 2 + (b - a);
    }
    int ncoords() const { return npairs * (npairs + 1) / 2; }
};

std::vector<std::vector<Rat>> acst_basis(int m) {
    PairIndexing px(m);
    const int nc = px.ncoords();
    std::vector<std::vector<Rat>> rows;
    int sg = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    std::vector<Rat> row(static_cast<std::size_t>(nc), Rat(0));
                    bool nonzero = false;
                    auto add = [&](int a, int b, int c, int d) {
                        int id = px.coord(a, b, c, d, sg);
                        if (id >= 0) {
                            row[static_cast<std::size_t>(id)] += Rat(sg);
                            nonzero = true;
                        }
                    };
                    add(i, j, k, l);
                    add(j, k, i, l);
                    add(k, i, j, l);
                    bool any = false;
                    for (const auto& v : row) any = any || !v.is_zero();
                    if (nonzero && any) rows.push_back(std::move(row));
                }
    return kernel_basis(std::move(rows), nc);
}

std::vector<std::vector<Rat>> acdt_basis(int m) {
    PairIndexing px(m);
    const int nc = px.ncoords() * m;
    auto coord5 = [&](int i, int j, int k, int l, int n, int& sign) {
        int c = px.coord(i, j, k, l, sign);
        return c < 0 ? -1 : c * m + n;
    };
    std::vector<std::vector<Rat>> rows;
    int sg = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    for (int n = 0; n < m; ++n) {
                        {  // first Bianchi in (i,j,k)
                            std::vector<Rat> row(static_cast<std::size_t>(nc), Rat(0));
                            auto add = [&](int a, int b, int c, int d, int e) {
                                int id = coord5(a, b, c, d, e, sg);
                                if (id >= 0) row[static_cast<std::size_t>(id)] += Rat(sg);
                            };
                            add(i, j, k, l, n);
                            add(j, k, i, l, n);
                            add(k, i, j, l, n);
                            bool any = false;
                            for (const auto& v : row) any = any || !v.is_zero();
                            if (any) rows.push_back(std::move(row));
                        }
                        {  // second Bianchi, cyclic in the last three slots
                            std::vector<Rat> row(static_cast<std::size_t>(nc), Rat(0));
                            auto add = [&](int a, int b, int c, int d, int e) {
                                int id = coord5(a, b, c, d, e, sg);
                                if (id >= 0) row[static_cast<std::size_t>(id)] += Rat(sg);
                            };
                            add(i, j, k, l, n);
                            add(i, j, l, n, k);
                            add(i, j, n, k, l);
                            bool any = false;
                            for (const auto& v : row) any = any || !v.is_zero();
                            if (any) rows.push_back(std::move(row));
                        }
                    }
    return kernel_basis(std::move(rows), nc);
}

std::mutex basis_cache_mutex;
std::map<int, std::vector<std::vector<Rat>>> acst_cache, acdt_cache;

const std::vector<std::vector<Rat>>& cached_acst_basis(int m) {
    std::lock_guard<std::mutex> lock(basis_cache_mutex);
    auto it = acst_cache.find(m);
    if (it == acst_cache.end()) it = acst_cache.emplace(m, acst_basis(m)).first;
    return it->second;
}

const std::vector<std::vector<Rat>>& cached_acdt_basis(int m) {
    std::lock_guard<std::mutex> lock(basis_cache_mutex);
    auto it = acdt_cache.find(m);
    if (it == acdt_cache.end()) it = acdt_cache.emplace(m, acdt_basis(m)).first;
    return it->second;
}

}  // namespace

Tensor4Q random_acst(const Signature& sig, Xoshiro256& rng) {
    const int m = sig.dim();
    const auto& basis = cached_acst_basis(m);
    PairIndexing px(m);
    std::vector<Rat> x(static_cast<std::size_t>(px.ncoords()), Rat(0));
    bool nonzero = false;
    while (!nonzero) {
        for (auto& v : x) v = Rat(0);
        for (const auto& b : basis) {
            Rat coeff(rng.range(-3, 3));
            if (coeff.is_zero()) continue;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += coeff * b[i];
        }
        for (const auto& v : x) nonzero = nonzero || !v.is_zero();
    }
    Tensor4Q r(sig);
    int sg = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    int id = px.coord(i, j, k, l, sg);
                    if (id >= 0) r.at(i, j, k, l) = Rat(sg) * x[static_cast<std::size_t>(id)];
                }
    return r;
}

Tensor5Q random_acdt(const Signature& sig, Xoshiro256& rng) {
    const int m = sig.dim();
    const auto& basis = cached_acdt_basis(m);
    PairIndexing px(m);
    std::vector<Rat> x(static_cast<std::size_t>(px.ncoords() * m), Rat(0));
    bool nonzero = false;
    while (!nonzero) {
        for (auto& v : x) v = Rat(0);
        for (const auto& b : basis) {
            Rat coeff(rng.range(-3, 3));
            if (coeff.is_zero()) continue;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += coeff * b[i];
        }
        for (const auto& v : x) nonzero = nonzero || !v.is_zero();
    }
    Tensor5Q d(sig);
    int sg = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    int c = px.coord(i, j, k, l, sg);
                    if (c < 0) continue;
                    for (int n = 0; n < m; ++n)
                        d.at(i, j, k, l, n) =
                            Rat(sg) * x[static_cast<std::size_t>(c * m + n)];
                }
    return d;
}

}  // namespace curvature
}  // namespace curvlab
