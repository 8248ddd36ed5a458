#pragma once

// Spectra, real Jordan signatures, ranks and related decisions over an
// indefinite inner-product space. Exact mode works over the rationals; float
// mode (explicit tolerance) exists for user-supplied numeric data and as the
// documented fallback when a spectrum does not factor over Q.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvlab/matrix.hpp"
#include "curvlab/poly.hpp"
#include "curvlab/polyfactor.hpp"

namespace curvlab {
namespace pseudolin {

// Characteristic polynomial det(x I - A), monic, by the Samuelson-Berkowitz
// recurrence (division-free).
template <class K>
Poly<K> char_poly(const Mat<K>& a) {
    if (!a.is_square()) throw std::invalid_argument("char_poly: square matrix required");
    const int n = a.rows();
    Poly<K> p = Poly<K>::constant(K(1));
    for (int r = 0; r < n; ++r) {
        // p is the characteristic polynomial of the leading r x r block B.
        // Moments m_i = R B^i C with R the new row, C the new column.
        std::vector<K> w(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) w[static_cast<std::size_t>(i)] = a(i, r);
        std::vector<K> moments;
        moments.reserve(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
            K dot(0);
            for (int j = 0; j < r; ++j) dot += a(r, j) * w[static_cast<std::size_t>(j)];
            moments.push_back(dot);
            if (i + 1 < r) {
                std::vector<K> w2(static_cast<std::size_t>(r), K(0));
                for (int row = 0; row < r; ++row)
                    for (int col = 0; col < r; ++col)
                        w2[static_cast<std::size_t>(row)] += a(row, col) * w[static_cast<std::size_t>(col)];
                w = std::move(w2);
            }
        }
        // p_new(x) = (x - a_rr) p(x) - sum_j x^j sum_i p_{j+i+1} m_i.
        std::vector<K> np(static_cast<std::size_t>(r) + 2, K(0));
        for (int k = 0; k <= r; ++k) {
            np[static_cast<std::size_t>(k) + 1] += p.coeff(k);
            np[static_cast<std::size_t>(k)] -= a(r, r) * p.coeff(k);
        }
        for (int j = 0; j <= r - 1; ++j) {
            K s(0);
            for (int i = 0; i + j + 1 <= r && i < r; ++i) s += p.coeff(j + i + 1) * moments[static_cast<std::size_t>(i)];
            np[static_cast<std::size_t>(j)] -= s;
        }
        p = Poly<K>(std::move(np));
    }
    return p;
}

// Exact rank by fraction-free (Bareiss) elimination on the integer-scaled matrix.
int rank(const MatQ& a);
// Float rank: scaled singular values against a relative tolerance.
int rank(const MatD& a, double tol);

// Basis of the right kernel {x : a x = 0}, exact.
std::vector<VecQ> nullspace(const MatQ& a);

struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};
// Inertia of a symmetric rational matrix by exact congruence diagonalization.
Inertia inertia(const MatQ& sym);

// --- Spectra ---------------------------------------------------------------

struct SpectrumEntry {
    enum class Kind { Rational, QuadraticPair, Approx };
    Kind kind = Kind::Rational;
    Rat value;        // Rational
    Rat qb, qc;       // QuadraticPair: roots of x^2 + qb x + qc
    std::complex<double> approx;  // Approx
    int mult = 1;
    std::string str() const;
};

struct SpectrumSummary {
    int dim = 0;
    bool exact = true;  // false once Approx entries appear
    std::vector<SpectrumEntry> entries;
    std::string str() const;
};

struct IllConditionedSpectrum : std::runtime_error {
    explicit IllConditionedSpectrum(const std::string& what) : std::runtime_error(what) {}
};

SpectrumSummary spectrum(const MatQ& a);
SpectrumSummary spectrum(const MatD& a, double tol);

// --- Jordan signatures -------------------------------------------------------

struct JordanClass {
    enum class Kind { Rational, Quadratic };
    Kind kind = Kind::Rational;
    Rat value;   // Rational eigenvalue
    Rat qb, qc;  // Quadratic: pair of roots of x^2 + qb x + qc (complex pair
                 // if disc < 0, real Galois pair if disc > 0)
    std::vector<int> partition;  // block sizes, descending; listed once per class
    int root_count() const { return kind == Kind::Rational ? 1 : 2; }
    std::string str() const;
};

struct FloatJordanClass {
    std::complex<double> value;  // representative; conjugate implied when imag != 0
    std::vector<int> partition;
};

struct JordanSignature {
    int dim = 0;
    bool exact = true;      // false when degraded to float mode
    std::string warning;    // set when degraded
    std::vector<JordanClass> classes;
    std::vector<FloatJordanClass> fclasses;
    std::string str() const;
};

// Exact when the characteristic polynomial splits into rational linear and
// quadratic factors; otherwise degrades to float mode with a warning flag.
JordanSignature jordan_signature(const MatQ& a);
JordanSignature jordan_signature(const MatD& a, double tol);

bool jordan_equivalent(const JordanSignature& a, const JordanSignature& b, double tol = 1e-8);

// Jordan simple = every block has size one = squarefree part of the
// characteristic polynomial annihilates the matrix.
bool is_jordan_simple(const MatQ& a);
bool is_jordan_simple(const MatD& a, double tol);

// Partition of an eigenvalue class from the kernel-dimension sequence
// nu_k = dim ker(A_cl^k) (per root); returns block sizes descending.
std::vector<int> partition_from_nullities(const std::vector<int>& nu);

// --- Misc -------------------------------------------------------------------

// Radon-Hurwitz: q = (2a+1) 2^b, b = c + 4d with 0 <= c <= 3, value 2^c + 8d - 1.
int adams_number(int q);

template <class K>
Mat<K> stabilize(const Mat<K>& t, int extra) {
    if (extra < 0) throw std::invalid_argument("stabilize: extra >= 0 required");
    Mat<K> r(t.rows() + extra, t.cols() + extra);
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j) r(i, j) = t(i, j);
    return r;
}

}  // namespace pseudolin
}  // namespace curvlab
