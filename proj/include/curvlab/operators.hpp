#pragma once

// The natural operators attached to curvature tensors: Jacobi, higher-order
// Jacobi, skew-symmetric curvature, Szabo. Raw forms accept unnormalized
// vectors; *_unit forms take frame samples and fold the deferred
// normalization into a ScaledOp (rho = 1 whenever the true operator is itself
// rational, which holds for the Jacobi family).
//
// Scaling laws: J(cx) = c^2 J(x); S(cx) = c^3 S(x); the skew operator on a
// frame scaled by (c1, c2) scales by c1*c2.

#include "curvlab/frames.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/matrix.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {
namespace operators {

// Raw Jacobi operator J(x): y -> R(y,x)x, entries eps_w R(e_z, x, x, e_w).
MatQ jacobi(const curvature::Tensor4Q& r, const VecQ& x);

// True Jacobi operator of the unit vector represented by u: J(x)/|n|, rational.
ScaledOp jacobi_unit(const curvature::Tensor4Q& r, const frames::UnitSample& u);

// Higher-order Jacobi operator of span(f): sum_i eps_i J(v_i-normalized)
// = sum_i J(v_i)/n_i, rational.
ScaledOp higher_jacobi(const curvature::Tensor4Q& r, const frames::FrameSample& f);

// Skew-symmetric curvature operator of an oriented orthogonal 2-frame:
// true op = R(v1,v2)-endo / sqrt(|n1 n2|).
ScaledOp skew_curvature(const curvature::Tensor4Q& r, const frames::FrameSample& f);

// Raw Szabo operator S(x): y -> (nabla_x R)(y,x)x from the rank-5 tensor.
MatQ szabo(const curvature::Tensor5Q& d, const VecQ& x);

// True Szabo operator of the unit vector u: S(x)/|n|^{3/2}.
ScaledOp szabo_unit(const curvature::Tensor5Q& d, const frames::UnitSample& u);

// Float-mode variants on normalized frames.
MatD jacobi(const curvature::Tensor4D& r, const VecD& x);
MatD szabo(const curvature::Tensor5D& d, const VecD& x);
MatD higher_jacobi(const curvature::Tensor4D& r, const frames::FrameSampleD& f);
MatD skew_curvature(const curvature::Tensor4D& r, const frames::FrameSampleD& f);

}  // namespace operators
}  // namespace curvlab
