#pragma once

// Metric families as symbolic objects with exact evaluation at rational
// points: metric, inverse, Christoffel symbols, curvature tensor R and its
// covariant derivative, all expressed first in the coordinate frame and then
// in an orthonormal tangent frame so downstream modules see canonical
// signature components.
//
// Families:
//   PsiAB        g = sum dx^i dy^i + psi_ij(x) dx^i dx^j on R^{2u}, plus a
//                flat factor of signature (a,b); signature (u+a, u+b).
//   FAB          PsiAB with psi = df.df.
//   AffineNabla  g = sum dx^i dy^i - 2 sum y_k Gamma_ij^k(x) dx^i dx^j.
//   Warped       eps dt^2 + f(t) ds_kappa^2, f(t) = eps*kappa*t^2 + A t + B,
//                fiber in stereographic coordinates; A^2 - 4 eps kappa B != 0.
//
// Variable layout: Walker families use x_i -> i-1, y_i -> u+i-1 (flat
// coordinates never appear in entries); Warped uses t -> 0, z_i -> i.

#include <optional>
#include <variant>
#include <vector>

#include "curvlab/matrix.hpp"
#include "curvlab/mpoly.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {
namespace geometry {

struct PsiAB {
    int u = 2;
    std::vector<MPoly> psi;  // u*u row-major, symmetric
    int a = 0, b = 0;
};

struct FAB {
    int u = 2;
    MPoly f;
    int a = 0, b = 0;
};

struct AffineNabla {
    int u = 2;
    std::vector<MPoly> gamma;  // u^3 row-major Gamma_ij^k, symmetric in (i,j)
};

struct Warped {
    int eps = 1;  // +1 or -1
    Rat kappa, A, B;
    int fiber = 2;
};

using MetricFamily = std::variant<PsiAB, FAB, AffineNabla, Warped>;

// Throws on invariant violations (psi asymmetric, gamma torsion, 2a > p,
// A^2 - 4 eps kappa B == 0, ...).
void validate_family(const MetricFamily& mf);
Signature family_signature(const MetricFamily& mf);
std::string family_name(const MetricFamily& mf);

// psi_f = df.df
std::vector<MPoly> psi_from_f(const MPoly& f, int u);

struct PointEval {
    Signature sig;
    std::vector<Rat> point;
    MatQ g, g_inv;               // coordinate metric at the point
    std::vector<Rat> christoffel;  // Gamma_{mu nu}^rho at ((mu*m+nu)*m+rho)
    curvature::Tensor4Q R_coord;   // lowered coordinate components
    curvature::Tensor5Q dR_coord;

    // Canonical-basis tensors in an orthonormal frame (columns of `frame`
    // in coordinate components, timelike block first).
    bool canonical_exact = true;
    MatQ frame;
    curvature::Tensor4Q R;
    curvature::Tensor5Q dR;
    // Float fallback, only populated when the frame norms are not perfect
    // squares (possible for Warped at generic points).
    curvature::Tensor4D R_float;
    curvature::Tensor5D dR_float;

    Rat christoffel_at(int mu, int nu, int rho) const {
        const int m = sig.dim();
        return christoffel[static_cast<std::size_t>((mu * m + nu) * m + rho)];
    }
};

class MetricModel {
public:
    explicit MetricModel(MetricFamily mf);

    const MetricFamily& family() const { return mf_; }
    Signature sig() const { return sig_; }
    int dim() const { return m_; }

    // Exact evaluation at a rational point. pair_perm (Walker families only)
    // permutes the hyperbolic-pair order of the orthonormal frame, exercising
    // the pivot-order independence of downstream spectral data.
    PointEval eval(const std::vector<Rat>& point,
                   const std::vector<int>* pair_perm = nullptr) const;

private:
    // Symbolic entries are numerator / product of chart factor powers; the
    // chart factors (the warped f(t) and the stereographic h(z)) are the only
    // denominators the pipeline can produce, so cancellation stays exact.
    struct CExpr {
        MPoly n;
        std::vector<int> pw;
    };
    CExpr cadd(const CExpr& a, const CExpr& b) const;
    CExpr cmul(const CExpr& a, const CExpr& b) const;
    CExpr cneg(const CExpr& a) const;
    CExpr cderive(const CExpr& a, int var) const;
    CExpr cinvert(const CExpr& a) const;
    void cnormalize(CExpr& a) const;
    Rat ceval(const CExpr& a, const std::vector<Rat>& point) const;

    MetricFamily mf_;
    int m_ = 0;
    Signature sig_{0, 1};
    std::vector<MPoly> chart_;     // factor polynomials (empty for Walker)
    std::vector<CExpr> g_, ginv_;  // m*m
    std::vector<CExpr> gamma_;     // m^3, Gamma_{mu nu}^rho
    std::vector<CExpr> riem_;      // m^4 lowered
    std::vector<CExpr> driem_;     // m^5 lowered, last slot = direction
};

// Ricci of a canonical-basis tensor: Ric(x,y) = sum_i eps_i R(e_i,x,y,e_i).
MatQ ricci_bilinear(const curvature::Tensor4Q& r);
MatQ ricci_operator(const curvature::Tensor4Q& r);

enum class EinsteinKind { RicciFlat, Einstein, Neither };
struct EinsteinResult {
    EinsteinKind kind = EinsteinKind::Neither;
    Rat c;  // Einstein constant when kind == Einstein
};
EinsteinResult einstein_check(const curvature::Tensor4Q& r);

// Membership test for the cone of symmetric 2-tensors whose associated
// Jacobi form on the x-block is positive semi-definite of rank p-1 for every
// nonzero x-block tangent vector: Monte-Carlo over rational points and
// vectors, counterexamples definitive.
bool psi_membership(const std::vector<MPoly>& psi, int u, int p, std::uint64_t seed,
                    int npoints = 12, int nvecs = 12);

}  // namespace geometry
}  // namespace curvlab
