#pragma once

// Algebraic curvature tensors (rank 4) and algebraic covariant derivative
// curvature tensors (rank 5) with fully lowered components in the canonical
// basis, stored dense (the ambient dimension stays in single digits).
//
// Index conventions, used everywhere:
//   R(x,y,z,w)   -- antisymmetric in (x,y), pair symmetric, first Bianchi;
//   endomorphism R(x,y): z -> w-slot raised with eps;
//   D(x,y,z,w;v) -- same four-slot identities plus the cyclic identity in
//   (w ... v) block, endomorphism raised in the fourth slot.

#include <string>
#include <vector>

#include "curvlab/matrix.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/signature.hpp"

namespace curvlab {
namespace curvature {

template <class K>
struct Tensor4 {
    Signature sig;
    std::vector<K> c;

    Tensor4() = default;
    explicit Tensor4(Signature s)
        : sig(s), c(static_cast<std::size_t>(s.dim()) * s.dim() * s.dim() * s.dim(), K(0)) {}

    int dim() const { return sig.dim(); }
    K& at(int i, int j, int k, int l) {
        const int m = dim();
        return c[static_cast<std::size_t>(((i * m + j) * m + k)) * m + l];
    }
    const K& at(int i, int j, int k, int l) const {
        const int m = dim();
        return c[static_cast<std::size_t>(((i * m + j) * m + k)) * m + l];
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (!(x == K(0))) return false;
        return true;
    }

    friend bool operator==(const Tensor4& a, const Tensor4& b) {
        return a.sig == b.sig && a.c == b.c;
    }

    // Endomorphism R(e_i, e_j) with the last slot raised.
    Mat<K> endo(int i, int j) const {
        const int m = dim();
        Mat<K> r(m, m);
        for (int z = 0; z < m; ++z)
            for (int w = 0; w < m; ++w) {
                K v = at(i, j, z, w);
                if (sig.eps(w) < 0) v = -v;
                r(w, z) = v;
            }
        return r;
    }
};

template <class K>
struct Tensor5 {
    Signature sig;
    std::vector<K> c;

    Tensor5() = default;
    explicit Tensor5(Signature s)
        : sig(s),
          c(static_cast<std::size_t>(s.dim()) * s.dim() * s.dim() * s.dim() * s.dim(), K(0)) {}

    int dim() const { return sig.dim(); }
    K& at(int i, int j, int k, int l, int n) {
        const int m = dim();
        return c[(static_cast<std::size_t>(((i * m + j) * m + k)) * m + l) * m + n];
    }
    const K& at(int i, int j, int k, int l, int n) const {
        const int m = dim();
        return c[(static_cast<std::size_t>(((i * m + j) * m + k)) * m + l) * m + n];
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (!(x == K(0))) return false;
        return true;
    }

    friend bool operator==(const Tensor5& a, const Tensor5& b) {
        return a.sig == b.sig && a.c == b.c;
    }
};

using Tensor4Q = Tensor4<Rat>;
using Tensor5Q = Tensor5<Rat>;
using Tensor4D = Tensor4<double>;
using Tensor5D = Tensor5<double>;

struct Violation {
    std::string identity;     // which identity failed
    std::vector<int> indices; // offending index tuple
    std::string residual;     // printable residual
};

std::vector<Violation> validate_acst(const Tensor4Q& r);
std::vector<Violation> validate_acdt(const Tensor5Q& d);
std::vector<Violation> validate_acst(const Tensor4D& r, double tol);
std::vector<Violation> validate_acdt(const Tensor5D& d, double tol);

// R_phi(x,y,z,w) = (phi x,w)(phi y,z) - (phi x,z)(phi y,w), phi self-adjoint.
Tensor4Q build_R_phi(const MatQ& phi, const Signature& sig);

// kappa * R_Id: constant sectional curvature kappa.
Tensor4Q build_constant_curvature(const Rat& kappa, const Signature& sig);

// The rank-2a skew-adjoint map Phi_a on signature (p,q) (2a <= p <= q) and its
// associated curvature tensor
//   R_a(x,y)z = (y,Phi z)Phi x - (x,Phi z)Phi y - 2(x,Phi y)Phi z.
MatQ build_Phi_a(int p, int q, int a);
Tensor4Q build_R_a(int p, int q, int a);

bool two_nilpotent_acst(const Tensor4Q& r);
bool two_nilpotent_acdt(const Tensor5Q& d);

// Endomorphism R(x,y) (last slot raised) for arbitrary vectors.
MatQ curv_endo(const Tensor4Q& r, const VecQ& x, const VecQ& y);

// Scales the tensor by the least common denominator of its components and
// returns the factor. Constancy properties, ranks and Jordan block structure
// are scale invariant, so suites may clear denominators to keep the exact
// kernels on integer arithmetic.
Rat clear_denominators(Tensor4Q& r);
Rat clear_denominators(Tensor5Q& d);

Tensor4D to_float(const Tensor4Q& r);
Tensor5D to_float(const Tensor5Q& d);

struct HermitianStructure {
    Signature sig;
    MatQ J;  // skew-adjoint isometry with J^2 = -Id (requires even dimension)
    HermitianStructure(Signature s, MatQ j);
    static HermitianStructure standard(const Signature& sig);  // e1->e2, e3->e4, ...
};

// J*R = R componentwise; also spot-checks the commutation J R(pi) = R(pi) J on
// a few sampled complex lines (the two formulations are tested against each
// other, not assumed equivalent).
bool almost_complex_check(const Tensor4Q& r, const HermitianStructure& h,
                          std::uint64_t sample_seed = 17, int spot_samples = 8);

// Random tensors with the exact symmetries, drawn from an exact kernel basis
// of the identity constraints (used by falsification probes and tests).
Tensor4Q random_acst(const Signature& sig, Xoshiro256& rng);
Tensor5Q random_acdt(const Signature& sig, Xoshiro256& rng);

}  // namespace curvature
}  // namespace curvlab
