#pragma once

// Monte-Carlo property checkers: sample the appropriate domain (pseudo-sphere,
// Grassmannian, oriented 2-plane bundle, complex lines), form the natural
// operator, normalize by its scaling law, and compare the exact invariant
// (spectrum key / Jordan key / rank) against the first sample. A mismatch
// stops early and ships a re-checkable witness. "Holds" always means
// holds-on-samples; the tool never claims a universal property from sampling.

#include <optional>
#include <string>
#include <vector>

#include "curvlab/frames.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/operators.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {
namespace classify {

enum class Property {
    SpacelikeOsserman,
    TimelikeOsserman,
    SpacelikeJordanOsserman,
    TimelikeJordanOsserman,
    OssermanType,         // (r,s)
    JordanOssermanType,   // (r,s)
    SpacelikeIP,
    TimelikeIP,
    MixedIP,
    SpacelikeJordanIP,
    TimelikeJordanIP,
    MixedJordanIP,
    RankConstantSpacelike,
    RankConstantTimelike,
    RankConstantMixed,
    SpacelikeSzabo,
    TimelikeSzabo,
    SpacelikeJordanSzabo,
    TimelikeJordanSzabo,
    AlmostComplexJordanIP,
    TwoNilpotent,
};

std::string property_name(Property p, int r = 0, int s = 0);
// Parses names like "timelike-osserman", "osserman-type:1,2",
// "jordan-osserman-type:2,0", "rank-constant:spacelike".
bool parse_property(const std::string& name, Property& p, int& r, int& s);

struct PropertyQuery {
    Property property = Property::SpacelikeOsserman;
    int r = 0, s = 0;  // for the typed properties
    int sample_budget = 200;
    frames::SamplerConfig cfg;
    bool early_exit = true;
    int threads = 1;
    double float_tol = 1e-8;  // used only on degraded Jordan comparisons
};

struct Witness {
    int index_a = 0, index_b = 0;
    std::vector<VecQ> vecs_a, vecs_b;  // sampled (unnormalized) vectors
    std::vector<Rat> norms_a, norms_b;
    std::string operator_a, operator_b;  // serialized scaled operators
    std::string invariant_a, invariant_b;
};

struct PropertyReport {
    std::string property;
    bool holds = false;
    int samples_used = 0;
    std::string reference;       // display form of the first sample's invariant
    std::string reference_key;   // canonical exact key
    bool reference_zero_spectrum = false;
    int reference_rank = -1;     // set by the rank-constancy checks
    std::optional<Witness> witness;
    std::vector<std::string> notes;
    std::uint64_t seed = 0;
    std::string verdict() const { return holds ? "holds-on-samples" : "fails"; }
};

PropertyReport check(const curvature::Tensor4Q& R, const PropertyQuery& q,
                     const curvature::HermitianStructure* H = nullptr);
PropertyReport check(const curvature::Tensor5Q& D, const PropertyQuery& q);

// Recomputes both witness samples from their stored frames and confirms the
// invariants still differ.
bool recheck_witness(const curvature::Tensor4Q& R, const PropertyQuery& q, const Witness& w,
                     const curvature::HermitianStructure* H = nullptr);
bool recheck_witness(const curvature::Tensor5Q& D, const PropertyQuery& q, const Witness& w);

// Float-mode checks for user-supplied numeric tensors: the domains are still
// sampled exactly (rational grid), frames are normalized in doubles, and
// invariants are compared within q.float_tol.
PropertyReport check_float(const curvature::Tensor4D& R, const PropertyQuery& q);
PropertyReport check_float(const curvature::Tensor5D& D, const PropertyQuery& q);

struct SuiteItem {
    std::string what;
    bool ok = false;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    bool pass = true;
    std::vector<SuiteItem> items;
    std::vector<std::string> notes;
    std::uint64_t seed = 0;
    void add(const std::string& what, bool ok, const std::string& detail = "") {
        items.push_back({what, ok, detail});
        pass = pass && ok;
    }
};

// J(pi) + J(pi-complement) = J(V) on samples; k-Osserman <=> (m-k)-Osserman
// verdict agreement; Jordan type (r,s) <=> (p-r,q-s) verdict agreement.
SuiteReport duality_suite(const curvature::Tensor4Q& R, const frames::SamplerConfig& cfg,
                          int budget = 100);

// Agreement of the equivalent property formulations applicable to the
// signature (Osserman timelike/spacelike; type-(r,s) within each k; the three
// IP kinds). Disagreement on a holds verdict is flagged as a falsification
// candidate: it would indicate a bug, not new mathematics.
SuiteReport equivalence_suite(const curvature::Tensor4Q& R, const frames::SamplerConfig& cfg,
                              int budget = 100);

// Structure checks for Szabo tensors: spectral symmetry, real/imaginary
// dichotomy, the p<q refinements, Jordan simplicity, the Adams-number rank
// bound, and the odd-q vanishing expectation.
SuiteReport szabo_structure_suite(const curvature::Tensor5Q& D, const frames::SamplerConfig& cfg,
                                  int budget = 100);

// Diagonalizability probe for spacelike Jordan Osserman tensors with p<q
// (reported as data; nilpotent examples exercise it only trivially).
bool jacobi_diagonalizable_on_samples(const curvature::Tensor4Q& R,
                                      const frames::SamplerConfig& cfg, int budget = 50);

// Eigenvalue-multiplicity validator for almost-complex Jordan IP tensors on
// definite signatures: multiplicities of J*Rpi obey the q mod 4 constraints.
SuiteReport almost_complex_multiplicity_suite(const curvature::Tensor4Q& R,
                                              const curvature::HermitianStructure& H,
                                              const frames::SamplerConfig& cfg, int budget = 50);

// Named verification suites exposed by the CLI.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace classify
}  // namespace curvlab
