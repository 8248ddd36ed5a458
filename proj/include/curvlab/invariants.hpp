#pragma once

// Exact comparison keys for sampled natural operators.
//
// A sampled operator is stored as true_op = sqrt(rho) * M with M rational and
// rho > 0 rational: the Jacobi and higher-order Jacobi operators normalize to
// rho = 1 (their scaling laws absorb the frame norms into rational factors),
// while the skew-symmetric curvature operator and the Szabo operator keep the
// irrational part of the frame normalization in rho.
//
// Spectrum constancy is decided on the characteristic polynomial of the true
// operator: coefficient k equals a_k * rho^{(m-k)/2}, which is encoded exactly
// as the pair (sign a_k, a_k^2 * rho^{m-k}).
//
// Jordan constancy is decided on canonical scaled eigenvalue classes: any
// value of the form s*sqrt(u) (u rational >= 0) is encoded as (s, u); a
// quadratic class of M with b != 0 cannot produce such values (both roots of
// the form s*sqrt(u) force a rational root), so pairs are encoded by their
// elementary symmetric functions, and b = 0 real pairs are split into two
// single-value classes so that representations agree across samples with
// different rho.

#include <optional>
#include <string>
#include <vector>

#include "curvlab/matrix.hpp"
#include "curvlab/pseudolin.hpp"

namespace curvlab {

struct ScaledOp {
    MatQ M;
    Rat rho = Rat(1);
    int dim() const { return M.rows(); }
    bool rational() const { return rho.is_perfect_square(); }
    MatD to_float() const;  // sqrt(rho) * M in doubles
};

// Exact equality of the underlying true operators.
bool scaled_ops_equal(const ScaledOp& a, const ScaledOp& b);

struct SpectrumKey {
    int dim = 0;
    std::vector<std::pair<int, Rat>> enc;  // per degree: (sign, coeff^2 * rho^(m-k))
    friend bool operator==(const SpectrumKey& a, const SpectrumKey& b) {
        return a.dim == b.dim && a.enc == b.enc;
    }
    friend bool operator!=(const SpectrumKey& a, const SpectrumKey& b) { return !(a == b); }
    bool all_zero_spectrum() const;  // char poly == x^m
    std::string str() const;
};

SpectrumKey spectrum_key(const ScaledOp& op);

struct ScaledClassKey {
    enum class Tag { Real, RealPair, ComplexPair };
    Tag tag = Tag::Real;
    int sign = 0;   // Real: sign of the value; pairs: sign of the root sum
    Rat square;     // Real: value^2; pairs: (root sum)^2
    Rat prod;       // pairs only: product of the two roots
    std::vector<int> partition;

    friend bool operator==(const ScaledClassKey& a, const ScaledClassKey& b) {
        return a.tag == b.tag && a.sign == b.sign && a.square == b.square && a.prod == b.prod &&
               a.partition == b.partition;
    }
    bool operator<(const ScaledClassKey& o) const;
    std::string str() const;
};

struct JordanKey {
    int dim = 0;
    std::vector<ScaledClassKey> classes;  // sorted canonically
    friend bool operator==(const JordanKey& a, const JordanKey& b) {
        return a.dim == b.dim && a.classes == b.classes;
    }
    friend bool operator!=(const JordanKey& a, const JordanKey& b) { return !(a == b); }
    std::string str() const;
    bool jordan_simple() const;
};

// nullopt when the spectrum of M does not split into rational linear and
// quadratic factors (callers degrade to float comparison, flagged).
std::optional<JordanKey> jordan_key(const ScaledOp& op);

// Human-readable spectrum of the true operator (exact where possible).
std::string spectrum_display(const ScaledOp& op);

}  // namespace curvlab
