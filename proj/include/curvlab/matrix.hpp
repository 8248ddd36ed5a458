#pragma once

// Dense small-matrix/vector kernels, templated over the scalar (Rat or double).
// Everything here is value-semantic and side-effect free.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "curvlab/rational.hpp"
#include "curvlab/signature.hpp"

namespace curvlab {

template <class K>
struct Vec {
    std::vector<K> c;

    Vec() = default;
    explicit Vec(int n) : c(static_cast<std::size_t>(n), K(0)) {}
    Vec(std::initializer_list<K> il) : c(il) {}

    int dim() const { return static_cast<int>(c.size()); }
    K& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    const K& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }

    Vec operator-() const {
        Vec r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Vec operator+(Vec a, const Vec& b) {
        for (int i = 0; i < a.dim(); ++i) a[i] += b[i];
        return a;
    }
    friend Vec operator-(Vec a, const Vec& b) {
        for (int i = 0; i < a.dim(); ++i) a[i] -= b[i];
        return a;
    }
    friend Vec operator*(const K& s, Vec v) {
        for (auto& x : v.c) x = s * x;
        return v;
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (!(x == K(0))) return false;
        return true;
    }
};

template <class K>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, K(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    K& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const K& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Mat operator-() const {
        Mat m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    friend Mat operator+(Mat a, const Mat& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Mat operator-(Mat a, const Mat& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Mat operator*(const K& s, Mat m) {
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("Mat: dimension mismatch in product");
        Mat r(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const K& aik = a(i, k);
                if (aik == K(0)) continue;
                for (int j = 0; j < b.c_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    Vec<K> apply(const Vec<K>& v) const {
        if (c_ != v.dim()) throw std::invalid_argument("Mat: dimension mismatch in apply");
        Vec<K> r(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!(x == K(0))) return false;
        return true;
    }

    bool is_square() const { return r_ == c_; }

private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
    }
    int r_ = 0, c_ = 0;
    std::vector<K> a_;
};

using VecQ = Vec<Rat>;
using MatQ = Mat<Rat>;
using VecD = Vec<double>;
using MatD = Mat<double>;

// Indefinite inner product of the canonical basis: sum eps_i x_i y_i.
template <class K>
K inner(const Vec<K>& x, const Vec<K>& y, const Signature& sig) {
    if (x.dim() != sig.dim() || y.dim() != sig.dim())
        throw std::invalid_argument("inner: dimension mismatch");
    K s(0);
    for (int i = 0; i < sig.dim(); ++i) {
        K t = x[i] * y[i];
        if (sig.eps(i) < 0)
            s -= t;
        else
            s += t;
    }
    return s;
}

// Form-adjoint T* = G T^t G with G = diag(eps).
template <class K>
Mat<K> adjoint(const Mat<K>& t, const Signature& sig) {
    const int m = sig.dim();
    if (t.rows() != m || t.cols() != m) throw std::invalid_argument("adjoint: dimension mismatch");
    Mat<K> r(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            K v = t(j, i);
            if (sig.eps(i) * sig.eps(j) < 0) v = -v;
            r(i, j) = v;
        }
    return r;
}

inline bool is_self_adjoint(const MatQ& t, const Signature& sig) {
    return adjoint(t, sig) == t;
}
inline bool is_skew_adjoint(const MatQ& t, const Signature& sig) {
    return adjoint(t, sig) == -t;
}
bool is_self_adjoint(const MatD& t, const Signature& sig, double tol);
bool is_skew_adjoint(const MatD& t, const Signature& sig, double tol);

MatD to_double(const MatQ& m);
VecD to_double(const VecQ& v);

}  // namespace curvlab
