#include <doctest.h>

#include "curvlab/classify.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/json_io.hpp"

using namespace curvlab;
using namespace curvlab::classify;

namespace {

PropertyQuery query(Property p, int budget, std::uint64_t seed, int r = 0, int s = 0) {
    PropertyQuery q;
    q.property = p;
    q.r = r;
    q.s = s;
    q.sample_budget = budget;
    q.cfg.seed = seed;
    return q;
}

curvature::Tensor4Q fab_curvature(int a, int b) {
    MPoly f = MPoly::var(0).pow(2) + Rat(2) * MPoly::var(1).pow(2);
    geometry::MetricModel model{geometry::MetricFamily(geometry::FAB{2, f, a, b})};
    std::vector<Rat> pt(static_cast<std::size_t>(model.dim()), Rat(0));
    pt[0] = Rat(1);
    pt[1] = Rat(1, 2);
    curvature::Tensor4Q R = model.eval(pt).R;
    curvature::clear_denominators(R);
    return R;
}

}  // namespace

TEST_CASE("property name round trip") {
    Property p;
    int r, s;
    CHECK(parse_property("timelike-osserman", p, r, s));
    CHECK(p == Property::TimelikeOsserman);
    CHECK(parse_property("jordan-osserman-type:2,0", p, r, s));
    CHECK(p == Property::JordanOssermanType);
    CHECK(r == 2);
    CHECK(s == 0);
    CHECK(parse_property("rank-constant:mixed", p, r, s));
    CHECK(p == Property::RankConstantMixed);
    CHECK(!parse_property("nope", p, r, s));
    CHECK(property_name(Property::OssermanType, 1, 2) == "osserman-type:1,2");
}

TEST_CASE("round sphere is spacelike osserman with spectrum {0,1,1,1}") {
    auto R = curvature::build_constant_curvature(Rat(1), Signature(0, 4));
    PropertyReport rep = check(R, query(Property::SpacelikeOsserman, 100, 7));
    CHECK(rep.holds);
    CHECK(rep.samples_used == 100);
    CHECK(rep.reference == "{0, 1 x3}");
    CHECK(!rep.reference_zero_spectrum);
}

TEST_CASE("precondition errors name the mismatch") {
    auto R = curvature::build_constant_curvature(Rat(1), Signature(0, 4));
    CHECK_THROWS_AS(check(R, query(Property::TimelikeOsserman, 10, 1)), std::invalid_argument);
    CHECK_THROWS_AS(check(R, query(Property::TimelikeIP, 10, 1)), std::invalid_argument);
    CHECK_THROWS_AS(check(R, query(Property::OssermanType, 10, 1, 1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(check(R, query(Property::SpacelikeSzabo, 10, 1)), std::invalid_argument);
}

TEST_CASE("nilpotent family type table spot checks") {
    auto R331 = curvature::build_R_a(3, 3, 1);
    PropertyQuery q = query(Property::JordanOssermanType, 300, 11, 1, 0);
    PropertyReport rep = check(R331, q);
    CHECK(!rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(recheck_witness(R331, q, *rep.witness));
    // (3,0) holds per the maximal-definite-type analysis.
    CHECK(check(R331, query(Property::JordanOssermanType, 150, 11, 3, 0)).holds);

    auto R221 = curvature::build_R_a(2, 2, 1);
    CHECK(check(R221, query(Property::TimelikeOsserman, 150, 12)).holds);
    CHECK(check(R221, query(Property::SpacelikeOsserman, 150, 12)).holds);
    CHECK(check(R221, query(Property::TwoNilpotent, 1, 0)).holds);
    CHECK(!check(curvature::build_constant_curvature(Rat(1), Signature(0, 4)),
                 query(Property::TwoNilpotent, 1, 0))
               .holds);
}

TEST_CASE("hypersurface family jordan-IP verdicts and witnesses") {
    auto R01 = fab_curvature(0, 1);  // spacelike Jordan IP fails (b > 0)
    PropertyQuery q = query(Property::SpacelikeJordanIP, 300, 13);
    PropertyReport rep = check(R01, q);
    CHECK(!rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(recheck_witness(R01, q, *rep.witness));
    CHECK(check(R01, query(Property::TimelikeJordanIP, 300, 13)).holds);  // a = 0
    // Spectrum-level IP still holds with zero spectra (nilpotent IP).
    PropertyReport ip = check(R01, query(Property::SpacelikeIP, 200, 13));
    CHECK(ip.holds);
    CHECK(ip.reference_zero_spectrum);
}

TEST_CASE("orientation classes are recorded as data") {
    auto R = curvature::build_constant_curvature(Rat(1), Signature(0, 4));
    PropertyReport rep = check(R, query(Property::SpacelikeIP, 60, 14));
    bool noted = false;
    for (const auto& n : rep.notes)
        noted = noted || n.find("orientation classes share the reference invariant: yes") !=
                             std::string::npos;
    CHECK(noted);
}

TEST_CASE("determinism and monotone confidence") {
    auto R = fab_curvature(1, 0);
    PropertyQuery q = query(Property::TimelikeJordanOsserman, 80, 15);
    PropertyReport a = check(R, q);
    PropertyReport b = check(R, q);
    io::RunManifest m;
    CHECK(io::report_to_json(a, m).dump() == io::report_to_json(b, m).dump());
    CHECK(!a.holds);
    // Budget extension keeps the verdict and the witness index.
    PropertyQuery q2 = q;
    q2.sample_budget = 240;
    PropertyReport c = check(R, q2);
    CHECK(!c.holds);
    REQUIRE(a.witness.has_value());
    REQUIRE(c.witness.has_value());
    CHECK(a.witness->index_b == c.witness->index_b);
}

TEST_CASE("threads do not change the report") {
    auto R = curvature::build_R_a(2, 2, 1);
    PropertyQuery q1 = query(Property::OssermanType, 60, 16, 1, 1);
    PropertyQuery q2 = q1;
    q2.threads = 2;
    io::RunManifest m;
    CHECK(io::report_to_json(check(R, q1), m).dump() ==
          io::report_to_json(check(R, q2), m).dump());
}

TEST_CASE("full-budget mode reports the mismatch rate") {
    auto R = fab_curvature(1, 0);
    PropertyQuery q = query(Property::TimelikeJordanOsserman, 60, 17);
    q.early_exit = false;
    PropertyReport rep = check(R, q);
    CHECK(!rep.holds);
    CHECK(rep.samples_used == 60);
    bool rate_note = false;
    for (const auto& n : rep.notes) rate_note = rate_note || n.find("mismatch rate") == 0;
    CHECK(rate_note);
}

TEST_CASE("szabo checks on random and structured tensors") {
    Xoshiro256 rng(18);
    auto D = curvature::random_acdt(Signature(0, 3), rng);
    curvature::clear_denominators(D);
    PropertyQuery q = query(Property::SpacelikeSzabo, 500, 19);
    PropertyReport rep = check(D, q);
    CHECK(!rep.holds);  // no nonzero Szabo tensors in the definite case
    REQUIRE(rep.witness.has_value());
    CHECK(recheck_witness(D, q, *rep.witness));
    CHECK(check(curvature::Tensor5Q(Signature(0, 3)), q).holds);  // zero tensor trivially
}

TEST_CASE("duality and equivalence suites pass on built-ins") {
    frames::SamplerConfig cfg;
    cfg.seed = 20;
    auto zero = curvature::Tensor4Q(Signature(2, 2));
    CHECK(duality_suite(zero, cfg, 20).pass);
    CHECK(equivalence_suite(zero, cfg, 20).pass);
    auto R = curvature::build_constant_curvature(Rat(1), Signature(1, 3));
    CHECK(duality_suite(R, cfg, 40).pass);
    CHECK(equivalence_suite(R, cfg, 40).pass);
}

TEST_CASE("szabo structure suite on the hypersurface derivative") {
    MPoly f = MPoly::var(0).pow(2) + Rat(2) * MPoly::var(1).pow(2);
    geometry::MetricModel model{geometry::MetricFamily(geometry::FAB{2, f, 0, 1})};
    std::vector<Rat> pt = {Rat(1), Rat(1, 2), Rat(0), Rat(0), Rat(0)};
    curvature::Tensor5Q D = model.eval(pt).dR;
    curvature::clear_denominators(D);
    frames::SamplerConfig cfg;
    cfg.seed = 21;
    SuiteReport rep = szabo_structure_suite(D, cfg, 40);
    CHECK(rep.pass);
}

TEST_CASE("diagonalizability probe and almost-complex multiplicities") {
    frames::SamplerConfig cfg;
    cfg.seed = 22;
    auto R = curvature::build_constant_curvature(Rat(1), Signature(1, 3));
    CHECK(jacobi_diagonalizable_on_samples(R, cfg, 30));
    Signature s04(0, 4);
    auto h = curvature::HermitianStructure::standard(s04);
    auto round4 = curvature::build_constant_curvature(Rat(1), s04);
    CHECK(almost_complex_multiplicity_suite(round4, h, cfg, 20).pass);
    // The almost-complex Jordan IP checker runs on complex lines.
    PropertyQuery q = query(Property::AlmostComplexJordanIP, 60, 23);
    PropertyReport rep = check(round4, q, &h);
    CHECK(rep.holds);
    // Non-almost-complex input is a precondition error.
    MatQ phi(4, 4);
    for (int i = 0; i < 4; ++i) phi(i, i) = Rat(i == 3 ? 2 : 1);
    auto bad = curvature::build_R_phi(phi, s04);
    CHECK_THROWS_AS(check(bad, q, &h), std::invalid_argument);
}

TEST_CASE("two-nilpotency forces zero spectra across all operators") {
    auto R = curvature::build_R_a(2, 2, 1);
    REQUIRE(check(R, query(Property::TwoNilpotent, 1, 0)).holds);
    std::vector<PropertyReport> reps;
    reps.push_back(check(R, query(Property::SpacelikeOsserman, 80, 24)));
    reps.push_back(check(R, query(Property::TimelikeOsserman, 80, 24)));
    for (auto [r, s] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{0, 2}})
        reps.push_back(check(R, query(Property::OssermanType, 80, 24, r, s)));
    reps.push_back(check(R, query(Property::SpacelikeIP, 80, 24)));
    reps.push_back(check(R, query(Property::MixedIP, 80, 24)));
    reps.push_back(check(R, query(Property::TimelikeIP, 80, 24)));
    for (const auto& rep : reps) {
        CHECK(rep.holds);
        CHECK(rep.reference_zero_spectrum);
    }
}

TEST_CASE("float mode on rank-5 tensors") {
    MPoly f = MPoly::var(0).pow(2) + MPoly::var(1).pow(2);
    geometry::MetricModel model{geometry::MetricFamily(geometry::FAB{2, f, 0, 0})};
    std::vector<Rat> pt = {Rat(1), Rat(1, 2), Rat(0), Rat(0)};
    curvature::Tensor5Q D = model.eval(pt).dR;
    PropertyQuery q = query(Property::SpacelikeSzabo, 60, 25);
    PropertyReport exact = check(D, q);
    PropertyReport fl = check_float(curvature::to_float(D), q);
    CHECK(exact.holds);
    CHECK(fl.holds);
    Xoshiro256 rng(26);
    auto bad = curvature::random_acdt(Signature(0, 3), rng);
    PropertyQuery q2 = query(Property::SpacelikeSzabo, 300, 27);
    CHECK(!check(bad, q2).holds);
    CHECK(!check_float(curvature::to_float(bad), q2).holds);
}

TEST_CASE("exact and float routes agree on built-in family verdicts") {
    struct Case {
        curvature::Tensor4Q R;
        Property prop;
        int r = 0, s = 0;
    };
    std::vector<Case> cases;
    cases.push_back({curvature::build_constant_curvature(Rat(1), Signature(0, 4)),
                     Property::SpacelikeOsserman});
    cases.push_back({curvature::build_constant_curvature(Rat(1), Signature(1, 3)),
                     Property::TimelikeOsserman});
    cases.push_back({curvature::build_R_a(2, 2, 1), Property::OssermanType, 1, 1});
    cases.push_back({curvature::build_R_a(2, 2, 1), Property::SpacelikeIP});
    cases.push_back({fab_curvature(0, 1), Property::MixedIP});
    cases.push_back({fab_curvature(1, 0), Property::TimelikeJordanOsserman});  // fails
    for (const auto& c : cases) {
        PropertyQuery q = query(c.prop, 80, 31, c.r, c.s);
        bool exact_holds = check(c.R, q).holds;
        bool float_holds = check_float(curvature::to_float(c.R), q).holds;
        CHECK(exact_holds == float_holds);
    }
}
