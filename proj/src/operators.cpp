#include "curvlab/operators.hpp"

#include <stdexcept>

namespace curvlab {
namespace operators {

namespace {

// Pull the rational content of M into rho (true operator unchanged); exact
// kernels downstream then run on integer-valued matrices.
ScaledOp normalize_content(MatQ m, Rat rho) {
    mpz_class l = 1, g = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            mpz_class scaled = m(i, j).num() * (l / m(i, j).den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
        }
    if (g == 0) return {std::move(m), std::move(rho)};  // zero matrix
    Rat f(l, g);
    if (f != Rat(1)) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) *= f;
        rho = rho / (f * f);
    }
    return {std::move(m), std::move(rho)};
}

}  // namespace

MatQ jacobi(const curvature::Tensor4Q& r, const VecQ& x) {
    const int m = r.dim();
    if (x.dim() != m) throw std::invalid_argument("jacobi: dimension mismatch");
    // Stepwise contraction: t1[z,a,w] = sum_b x_b R(z,a,b,w), then contract a.
    std::vector<Rat> t1(static_cast<std::size_t>(m) * m * m, Rat(0));
    for (int z = 0; z < m; ++z)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (x[b].is_zero()) continue;
                const Rat* row = &r.at(z, a, b, 0);
                Rat* out = &t1[static_cast<std::size_t>((z * m + a) * m)];
                for (int w = 0; w < m; ++w) {
                    if (!row[w].is_zero()) out[w] += x[b] * row[w];
                }
            }
    MatQ j(m, m);
    for (int z = 0; z < m; ++z)
        for (int a = 0; a < m; ++a) {
            if (x[a].is_zero()) continue;
            for (int w = 0; w < m; ++w) {
                const Rat& v = t1[static_cast<std::size_t>((z * m + a) * m + w)];
                if (v.is_zero()) continue;
                if (r.sig.eps(w) < 0)
                    j(w, z) -= x[a] * v;
                else
                    j(w, z) += x[a] * v;
            }
        }
    return j;
}

ScaledOp jacobi_unit(const curvature::Tensor4Q& r, const frames::UnitSample& u) {
    MatQ raw = jacobi(r, u.v);
    Rat inv = Rat(1) / u.norm_sq.abs();
    return normalize_content(inv * raw, Rat(1));
}

ScaledOp higher_jacobi(const curvature::Tensor4Q& r, const frames::FrameSample& f) {
    const int m = r.dim();
    MatQ sum(m, m);
    for (int i = 0; i < f.k(); ++i) {
        MatQ raw = jacobi(r, f.vectors[static_cast<std::size_t>(i)]);
        sum = sum + (Rat(1) / f.norm_sq[static_cast<std::size_t>(i)]) * raw;
    }
    return normalize_content(std::move(sum), Rat(1));
}

ScaledOp skew_curvature(const curvature::Tensor4Q& r, const frames::FrameSample& f) {
    if (f.k() != 2 || !f.oriented)
        throw std::invalid_argument("skew_curvature: oriented 2-frame required");
    MatQ raw = curvature::curv_endo(r, f.vectors[0], f.vectors[1]);
    Rat prod = (f.norm_sq[0] * f.norm_sq[1]).abs();
    return normalize_content(std::move(raw), Rat(1) / prod);
}

MatQ szabo(const curvature::Tensor5Q& d, const VecQ& x) {
    const int m = d.dim();
    if (x.dim() != m) throw std::invalid_argument("szabo: dimension mismatch");
    // Contract the direction slot first, then as in jacobi.
    std::vector<Rat> t0(static_cast<std::size_t>(m) * m * m * m, Rat(0));
    for (int z = 0; z < m; ++z)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int w = 0; w < m; ++w) {
                    Rat acc(0);
                    for (int n = 0; n < m; ++n) {
                        if (x[n].is_zero()) continue;
                        const Rat& v = d.at(z, a, b, w, n);
                        if (!v.is_zero()) acc += x[n] * v;
                    }
                    t0[static_cast<std::size_t>(((z * m + a) * m + b) * m + w)] = std::move(acc);
                }
    std::vector<Rat> t1(static_cast<std::size_t>(m) * m * m, Rat(0));
    for (int z = 0; z < m; ++z)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (x[b].is_zero()) continue;
                for (int w = 0; w < m; ++w) {
                    const Rat& v = t0[static_cast<std::size_t>(((z * m + a) * m + b) * m + w)];
                    if (!v.is_zero()) t1[static_cast<std::size_t>((z * m + a) * m + w)] += x[b] * v;
                }
            }
    MatQ s(m, m);
    for (int z = 0; z < m; ++z)
        for (int a = 0; a < m; ++a) {
            if (x[a].is_zero()) continue;
            for (int w = 0; w < m; ++w) {
                const Rat& v = t1[static_cast<std::size_t>((z * m + a) * m + w)];
                if (v.is_zero()) continue;
                if (d.sig.eps(w) < 0)
                    s(w, z) -= x[a] * v;
                else
                    s(w, z) += x[a] * v;
            }
        }
    return s;
}

ScaledOp szabo_unit(const curvature::Tensor5Q& d, const frames::UnitSample& u) {
    MatQ raw = szabo(d, u.v);
    Rat n3 = u.norm_sq.abs().pow(3);
    return normalize_content(std::move(raw), Rat(1) / n3);
}

MatD jacobi(const curvature::Tensor4D& r, const VecD& x) {
    const int m = r.dim();
    MatD j(m, m);
    for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w) {
            double s = 0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) s += x[a] * x[b] * r.at(z, a, b, w);
            if (r.sig.eps(w) < 0) s = -s;
            j(w, z) = s;
        }
    return j;
}

MatD szabo(const curvature::Tensor5D& d, const VecD& x) {
    const int m = d.dim();
    MatD s(m, m);
    for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w) {
            double acc = 0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int n = 0; n < m; ++n) acc += x[a] * x[b] * x[n] * d.at(z, a, b, w, n);
            if (d.sig.eps(w) < 0) acc = -acc;
            s(w, z) = acc;
        }
    return s;
}

MatD higher_jacobi(const curvature::Tensor4D& r, const frames::FrameSampleD& f) {
    const int m = r.dim();
    MatD sum(m, m);
    for (std::size_t i = 0; i < f.vectors.size(); ++i) {
        MatD j = jacobi(r, f.vectors[i]);
        double sgn = f.signs[i];
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) sum(a, b) += sgn * j(a, b);
    }
    return sum;
}

MatD skew_curvature(const curvature::Tensor4D& r, const frames::FrameSampleD& f) {
    const int m = r.dim();
    MatD n(m, m);
    for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w) {
            double s = 0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) s += f.vectors[0][i] * f.vectors[1][j] * r.at(i, j, z, w);
            if (r.sig.eps(w) < 0) s = -s;
            n(w, z) = s;
        }
    return n;
}

}  // namespace operators
}  // namespace curvlab
