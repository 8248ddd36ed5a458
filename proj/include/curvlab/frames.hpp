#pragma once

// Seeded sampling of pseudo-sphere unit vectors and of non-degenerate
// subspaces of prescribed signature, with indefinite Gram-Schmidt.
//
// Exact mode defers normalization: a sampled "unit" vector is stored
// unnormalized together with its norm-square, and downstream operators apply
// their documented scaling laws (J(cv) = c^2 J(v), S(cv) = c^3 S(v), the skew
// operator scales by the product of the frame norms). That keeps every number
// rational; true operators are recovered as sqrt(rho) * M (see invariants.hpp).
//
// Since any scalar multiple represents the same pseudo-sphere point, samples
// from the k/grid_denom grid on [-1,1] are stored as their integer
// representatives (scaled by grid_denom), and Gram-Schmidt runs fraction-free;
// every downstream number then stays integer-valued until normalization keys
// are formed.

#include <optional>
#include <stdexcept>
#include <vector>

#include "curvlab/matrix.hpp"
#include "curvlab/rng.hpp"
#include "curvlab/signature.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {
namespace frames {

struct SamplerConfig {
    std::uint64_t seed = 0;
    Rat degenerate_floor = Rat(1, 1L << 20);
    int max_rejects = 10000;
    int grid_denom = 8;  // coordinates drawn from {k/grid_denom : |k| <= grid_denom}
};

struct SamplerExhausted : std::runtime_error {
    explicit SamplerExhausted(const std::string& w) : std::runtime_error(w) {}
};

// Admissibility of Gr_{r,s}: 0 <= r <= p, 0 <= s <= q, 1 <= r+s <= m-1.
bool admissible(int r, int s, const Signature& sig);

struct UnitSample {
    VecQ v;
    Rat norm_sq;  // (v,v), sign matches the requested pseudo-sphere
};

struct FrameSample {
    Signature ambient;
    std::vector<VecQ> vectors;  // pairwise orthogonal, unnormalized
    std::vector<Rat> norm_sq;   // nonzero; sign pattern realizes (r,s)
    int r = 0, s = 0;
    bool oriented = false;

    int k() const { return static_cast<int>(vectors.size()); }
    FrameSample reversed() const;  // orientation flip (swap first two vectors)
};

// Orthogonalizes a basis of a non-degenerate subspace, pivoting only by
// unimodular shears so the orientation of the input order is preserved.
// Returns nullopt when the span is degenerate.
std::optional<FrameSample> gram_schmidt_indefinite(const std::vector<VecQ>& basis,
                                                   const Signature& sig, bool oriented);

// Sampler state is per-instance: distinct instances (distinct or derived
// seeds) may run on distinct threads, a single instance may not be shared.
class Sampler {
public:
    explicit Sampler(SamplerConfig cfg) : cfg_(cfg), rng_(cfg.seed) {}

    const SamplerConfig& cfg() const { return cfg_; }

    // Random rational vector from the configured grid (not necessarily unit).
    VecQ grid_vector(int dim);

    // sign = +1 draws from S^+ (needs q >= 1), sign = -1 from S^- (needs p >= 1).
    UnitSample unit(const Signature& sig, int sign);

    FrameSample frame(const Signature& sig, int r, int s, bool oriented);

    // Oriented frame {x, Jx} of a non-degenerate complex line.
    FrameSample complex_line(const curvature::HermitianStructure& h);

private:
    SamplerConfig cfg_;
    Xoshiro256 rng_;
};

// Orthonormal frame of the orthogonal complement of span(f); signature
// (p - r, q - s), unoriented.
FrameSample complement(const FrameSample& f);

MatQ gram_matrix(const std::vector<VecQ>& vs, const Signature& sig);

// Float-mode frame: actually normalized columns, sign list.
struct FrameSampleD {
    Signature ambient;
    std::vector<VecD> vectors;
    std::vector<int> signs;
    bool oriented = false;
};
FrameSampleD to_float(const FrameSample& f);

}  // namespace frames
}  // namespace curvlab
