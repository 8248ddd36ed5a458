#include "curvlab/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <thread>

#include "curvlab/geometry.hpp"
#include "curvlab/polyfactor.hpp"

namespace curvlab {
namespace classify {

namespace {

struct NameEntry {
    Property p;
    const char* name;
    bool typed;
};

const NameEntry kNames[] = {
    {Property::SpacelikeOsserman, "spacelike-osserman", false},
    {Property::TimelikeOsserman, "timelike-osserman", false},
    {Property::SpacelikeJordanOsserman, "spacelike-jordan-osserman", false},
    {Property::TimelikeJordanOsserman, "timelike-jordan-osserman", false},
    {Property::OssermanType, "osserman-type", true},
    {Property::JordanOssermanType, "jordan-osserman-type", true},
    {Property::SpacelikeIP, "spacelike-ip", false},
    {Property::TimelikeIP, "timelike-ip", false},
    {Property::MixedIP, "mixed-ip", false},
    {Property::SpacelikeJordanIP, "spacelike-jordan-ip", false},
    {Property::TimelikeJordanIP, "timelike-jordan-ip", false},
    {Property::MixedJordanIP, "mixed-jordan-ip", false},
    {Property::RankConstantSpacelike, "rank-constant:spacelike", false},
    {Property::RankConstantTimelike, "rank-constant:timelike", false},
    {Property::RankConstantMixed, "rank-constant:mixed", false},
    {Property::SpacelikeSzabo, "spacelike-szabo", false},
    {Property::TimelikeSzabo, "timelike-szabo", false},
    {Property::SpacelikeJordanSzabo, "spacelike-jordan-szabo", false},
    {Property::TimelikeJordanSzabo, "timelike-jordan-szabo", false},
    {Property::AlmostComplexJordanIP, "almost-complex-jordan-ip", false},
    {Property::TwoNilpotent, "two-nilpotent", false},
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::string property_name(Property p, int r, int s) {
    for (const auto& e : kNames)
        if (e.p == p) {
            if (!e.typed) return e.name;
            return std::string(e.name) + ":" + std::to_string(r) + "," + std::to_string(s);
        }
    return "?";
}

bool parse_property(const std::string& name, Property& p, int& r, int& s) {
    for (const auto& e : kNames) {
        if (!e.typed) {
            if (name == e.name) {
                p = e.p;
                r = s = 0;
                return true;
            }
            continue;
        }
        std::string prefix = std::string(e.name) + ":";
        if (name.rfind(prefix, 0) == 0) {
            std::string rest = name.substr(prefix.size());
            auto comma = rest.find(',');
            if (comma == std::string::npos) return false;
            try {
                r = std::stoi(rest.substr(0, comma));
                s = std::stoi(rest.substr(comma + 1));
            } catch (...) {
                return false;
            }
            p = e.p;
            return true;
        }
    }
    return false;
}

namespace {

enum class Domain { UnitPlus, UnitMinus, Grass, Plane02, Plane20, Plane11, ComplexLine, None };
enum class InvKind { Spectrum, Jordan, Rank };

struct Traits {
    Domain domain = Domain::None;
    InvKind inv = InvKind::Spectrum;
    bool on_tensor5 = false;
    bool skew_operator = false;
};

Traits traits_of(Property p) {
    switch (p) {
        case Property::SpacelikeOsserman: return {Domain::UnitPlus, InvKind::Spectrum, false, false};
        case Property::TimelikeOsserman: return {Domain::UnitMinus, InvKind::Spectrum, false, false};
        case Property::SpacelikeJordanOsserman: return {Domain::UnitPlus, InvKind::Jordan, false, false};
        case Property::TimelikeJordanOsserman: return {Domain::UnitMinus, InvKind::Jordan, false, false};
        case Property::OssermanType: return {Domain::Grass, InvKind::Spectrum, false, false};
        case Property::JordanOssermanType: return {Domain::Grass, InvKind::Jordan, false, false};
        case Property::SpacelikeIP: return {Domain::Plane02, InvKind::Spectrum, false, true};
        case Property::TimelikeIP: return {Domain::Plane20, InvKind::Spectrum, false, true};
        case Property::MixedIP: return {Domain::Plane11, InvKind::Spectrum, false, true};
        case Property::SpacelikeJordanIP: return {Domain::Plane02, InvKind::Jordan, false, true};
        case Property::TimelikeJordanIP: return {Domain::Plane20, InvKind::Jordan, false, true};
        case Property::MixedJordanIP: return {Domain::Plane11, InvKind::Jordan, false, true};
        case Property::RankConstantSpacelike: return {Domain::Plane02, InvKind::Rank, false, true};
        case Property::RankConstantTimelike: return {Domain::Plane20, InvKind::Rank, false, true};
        case Property::RankConstantMixed: return {Domain::Plane11, InvKind::Rank, false, true};
        case Property::SpacelikeSzabo: return {Domain::UnitPlus, InvKind::Spectrum, true, false};
        case Property::TimelikeSzabo: return {Domain::UnitMinus, InvKind::Spectrum, true, false};
        case Property::SpacelikeJordanSzabo: return {Domain::UnitPlus, InvKind::Jordan, true, false};
        case Property::TimelikeJordanSzabo: return {Domain::UnitMinus, InvKind::Jordan, true, false};
        case Property::AlmostComplexJordanIP:
            return {Domain::ComplexLine, InvKind::Jordan, false, true};
        case Property::TwoNilpotent: return {Domain::None, InvKind::Spectrum, false, false};
    }
    return {};
}

void check_preconditions(Property p, int r, int s, const Signature& sig) {
    Traits t = traits_of(p);
    auto need = [&](bool cond, const std::string& what) {
        if (!cond)
            throw std::invalid_argument("property " + property_name(p, r, s) +
                                        " incompatible with signature " + sig.str() + ": " + what);
    };
    switch (t.domain) {
        case Domain::UnitPlus: need(sig.q >= 1, "needs q >= 1"); break;
        case Domain::UnitMinus: need(sig.p >= 1, "needs p >= 1"); break;
        case Domain::Grass:
            need(frames::admissible(r, s, sig), "(r,s) not admissible");
            break;
        case Domain::Plane02: need(frames::admissible(0, 2, sig), "needs admissible (0,2)"); break;
        case Domain::Plane20: need(frames::admissible(2, 0, sig), "needs admissible (2,0)"); break;
        case Domain::Plane11: need(frames::admissible(1, 1, sig), "needs admissible (1,1)"); break;
        case Domain::ComplexLine: need(sig.dim() % 2 == 0, "needs even dimension"); break;
        case Domain::None: break;
    }
}

struct Sampled {
    std::vector<VecQ> vecs;
    std::vector<Rat> norms;
    bool oriented = false;
};

Sampled draw_sample(Domain d, const Signature& sig, frames::Sampler& s, int r, int ss,
                    const curvature::HermitianStructure* H) {
    Sampled out;
    switch (d) {
        case Domain::UnitPlus:
        case Domain::UnitMinus: {
            auto u = s.unit(sig, d == Domain::UnitPlus ? +1 : -1);
            out.vecs = {u.v};
            out.norms = {u.norm_sq};
            return out;
        }
        case Domain::Grass: {
            auto f = s.frame(sig, r, ss, false);
            out.vecs = f.vectors;
            out.norms = f.norm_sq;
            return out;
        }
        case Domain::Plane02:
        case Domain::Plane20:
        case Domain::Plane11: {
            int rr = d == Domain::Plane20 ? 2 : (d == Domain::Plane11 ? 1 : 0);
            int sss = d == Domain::Plane02 ? 2 : (d == Domain::Plane11 ? 1 : 0);
            auto f = s.frame(sig, rr, sss, true);
            out.vecs = f.vectors;
            out.norms = f.norm_sq;
            out.oriented = true;
            return out;
        }
        case Domain::ComplexLine: {
            auto f = s.complex_line(*H);
            out.vecs = f.vectors;
            out.norms = f.norm_sq;
            out.oriented = true;
            return out;
        }
        case Domain::None: break;
    }
    throw std::logic_error("draw_sample: no domain");
}

frames::FrameSample to_frame(const Sampled& sd, const Signature& sig) {
    frames::FrameSample f;
    f.ambient = sig;
    f.vectors = sd.vecs;
    f.norm_sq = sd.norms;
    f.oriented = sd.oriented;
    for (const auto& n : sd.norms) (n.sign() < 0 ? f.r : f.s) += 1;
    return f;
}

ScaledOp op_of(Property p, const curvature::Tensor4Q* R, const curvature::Tensor5Q* D,
               const Sampled& sd) {
    Traits t = traits_of(p);
    const Signature& sig = t.on_tensor5 ? D->sig : R->sig;
    switch (t.domain) {
        case Domain::UnitPlus:
        case Domain::UnitMinus: {
            frames::UnitSample u{sd.vecs[0], sd.norms[0]};
            return t.on_tensor5 ? operators::szabo_unit(*D, u) : operators::jacobi_unit(*R, u);
        }
        case Domain::Grass:
            return operators::higher_jacobi(*R, to_frame(sd, sig));
        case Domain::Plane02:
        case Domain::Plane20:
        case Domain::Plane11:
        case Domain::ComplexLine:
            return operators::skew_curvature(*R, to_frame(sd, sig));
        case Domain::None: break;
    }
    throw std::logic_error("op_of: no domain");
}

std::vector<pseudolin::FloatJordanClass> key_to_float_classes(const JordanKey& key) {
    std::vector<pseudolin::FloatJordanClass> out;
    for (const auto& c : key.classes) {
        double sq = std::sqrt(std::max(0.0, c.square.to_double()));
        switch (c.tag) {
            case ScaledClassKey::Tag::Real:
                out.push_back({{c.sign * sq, 0}, c.partition});
                break;
            case ScaledClassKey::Tag::RealPair: {
                double sum = c.sign * sq, prod = c.prod.to_double();
                double disc = sum * sum - 4 * prod;
                double root = std::sqrt(std::max(0.0, disc));
                out.push_back({{(sum - root) / 2, 0}, c.partition});
                out.push_back({{(sum + root) / 2, 0}, c.partition});
                break;
            }
            case ScaledClassKey::Tag::ComplexPair: {
                double sum = c.sign * sq, prod = c.prod.to_double();
                double re = sum / 2;
                double im = std::sqrt(std::max(0.0, prod - re * re));
                out.push_back({{re, im}, c.partition});
                break;
            }
        }
    }
    return out;
}

struct Invariant {
    InvKind kind = InvKind::Spectrum;
    SpectrumKey skey;
    std::optional<JordanKey> jkey;
    pseudolin::JordanSignature jfloat;  // populated when Jordan degraded
    bool degraded = false;
    int rank = 0;
    std::string display, key;
    std::string op_desc;  // serialized scaled operator, for witnesses
    bool zero_spectrum = false;
};

std::string describe_op(const ScaledOp& op) {
    std::string s = "sqrt(" + op.rho.str() + ") * [";
    for (int i = 0; i < op.dim(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < op.dim(); ++j) {
            if (j) s += ",";
            s += op.M(i, j).str();
        }
    }
    return s + "]";
}

Invariant make_invariant(InvKind kind, const ScaledOp& op, double tol) {
    Invariant inv;
    inv.kind = kind;
    inv.op_desc = describe_op(op);
    switch (kind) {
        case InvKind::Spectrum:
            inv.skey = spectrum_key(op);
            inv.display = spectrum_display(op);
            inv.key = inv.skey.str();
            inv.zero_spectrum = inv.skey.all_zero_spectrum();
            break;
        case InvKind::Jordan:
            inv.jkey = jordan_key(op);
            if (inv.jkey) {
                inv.display = inv.jkey->str();
                inv.key = inv.display;
                inv.zero_spectrum = true;
                for (const auto& c : inv.jkey->classes)
                    inv.zero_spectrum = inv.zero_spectrum && c.tag == ScaledClassKey::Tag::Real &&
                                        c.sign == 0;
            } else {
                inv.degraded = true;
                inv.jfloat = pseudolin::jordan_signature(op.to_float(), tol);
                inv.display = inv.jfloat.str();
                inv.key = "float:" + inv.display;
            }
            break;
        case InvKind::Rank:
            inv.rank = pseudolin::rank(op.M);
            inv.display = "rank " + std::to_string(inv.rank);
            inv.key = inv.display;
            break;
    }
    return inv;
}

bool invariants_equal(const Invariant& a, const Invariant& b, double tol) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case InvKind::Spectrum: return a.skey == b.skey;
        case InvKind::Rank: return a.rank == b.rank;
        case InvKind::Jordan: {
            if (!a.degraded && !b.degraded) return *a.jkey == *b.jkey;
            // Degraded comparison: within float tolerance, flagged by caller.
            auto to_sig = [](const Invariant& x) {
                if (x.degraded) return x.jfloat;
                pseudolin::JordanSignature s;
                s.dim = x.jkey->dim;
                s.exact = false;
                s.fclasses = key_to_float_classes(*x.jkey);
                return s;
            };
            return pseudolin::jordan_equivalent(to_sig(a), to_sig(b), tol);
        }
    }
    return false;
}

SpectrumKey negate_key(const SpectrumKey& k) {
    SpectrumKey out = k;
    for (int deg = 0; deg <= k.dim; ++deg)
        if ((k.dim - deg) % 2 == 1) out.enc[static_cast<std::size_t>(deg)].first *= -1;
    return out;
}

JordanKey negate_key(const JordanKey& k) {
    JordanKey out = k;
    for (auto& c : out.classes) c.sign = -c.sign;
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

std::string frame_to_string(const Sampled& sd) {
    std::string s = "[";
    for (std::size_t i = 0; i < sd.vecs.size(); ++i) {
        if (i) s += "; ";
        s += "(";
        for (int j = 0; j < sd.vecs[i].dim(); ++j) {
            if (j) s += ",";
            s += sd.vecs[i][j].str();
        }
        s += ") norm " + sd.norms[i].str();
    }
    return s + "]";
}

PropertyReport run_samples(Property prop, const PropertyQuery& q, const Signature& sig,
                           const curvature::Tensor4Q* R, const curvature::Tensor5Q* D,
                           const curvature::HermitianStructure* H) {
    Traits t = traits_of(prop);
    PropertyReport rep;
    rep.property = property_name(prop, q.r, q.s);
    rep.seed = q.cfg.seed;
    const std::uint64_t stream = fnv1a(rep.property);

    struct Slot {
        Sampled sd;
        Invariant inv;
        bool done = false;
    };
    auto eval_sample = [&](int index) {
        Slot slot;
        frames::SamplerConfig cfg = q.cfg;
        cfg.seed = derive_seed(q.cfg.seed, stream, static_cast<std::uint64_t>(index));
        frames::Sampler smp(cfg);
        slot.sd = draw_sample(t.domain, sig, smp, q.r, q.s, H);
        ScaledOp op = op_of(prop, R, D, slot.sd);
        slot.inv = make_invariant(t.inv, op, q.float_tol);
        slot.done = true;
        return slot;
    };

    Slot ref;
    int mismatches = 0;
    bool degraded_note = false;
    const int budget = std::max(1, q.sample_budget);
    const int nthreads = std::max(1, q.threads);
    std::vector<Slot> chunk;
    int next = 0;
    rep.holds = true;
    while (next < budget) {
        int chunk_size = std::min(budget - next, nthreads <= 1 ? 1 : nthreads * 2);
        chunk.assign(static_cast<std::size_t>(chunk_size), Slot{});
        if (nthreads <= 1 || chunk_size == 1) {
            for (int i = 0; i < chunk_size; ++i) chunk[static_cast<std::size_t>(i)] = eval_sample(next + i);
        } else {
            std::vector<std::thread> pool;
            std::atomic<int> cursor{0};
            for (int w = 0; w < nthreads; ++w)
                pool.emplace_back([&]() {
                    for (;;) {
                        int i = cursor.fetch_add(1);
                        if (i >= chunk_size) return;
                        chunk[static_cast<std::size_t>(i)] = eval_sample(next + i);
                    }
                });
            for (auto& th : pool) th.join();
        }
        for (int i = 0; i < chunk_size; ++i) {
            Slot& slot = chunk[static_cast<std::size_t>(i)];
            ++rep.samples_used;
            degraded_note = degraded_note || slot.inv.degraded;
            if (next + i == 0) {
                ref = std::move(slot);
                rep.reference = ref.inv.display;
                rep.reference_key = ref.inv.key;
                rep.reference_zero_spectrum = ref.inv.zero_spectrum;
                if (t.inv == InvKind::Rank) rep.reference_rank = ref.inv.rank;
                continue;
            }
            if (!invariants_equal(ref.inv, slot.inv, q.float_tol)) {
                ++mismatches;
                if (!rep.witness) {
                    Witness w;
                    w.index_a = 0;
                    w.index_b = next + i;
                    w.vecs_a = ref.sd.vecs;
                    w.norms_a = ref.sd.norms;
                    w.vecs_b = slot.sd.vecs;
                    w.norms_b = slot.sd.norms;
                    w.operator_a = ref.inv.op_desc;
                    w.operator_b = slot.inv.op_desc;
                    w.invariant_a = ref.inv.key;
                    w.invariant_b = slot.inv.key;
                    rep.witness = std::move(w);
                }
                rep.holds = false;
                if (q.early_exit) break;
            }
        }
        if (!rep.holds && q.early_exit) break;
        next += chunk_size;
    }
    if (!q.early_exit && mismatches > 0)
        rep.notes.push_back("mismatch rate " + std::to_string(mismatches) + "/" +
                            std::to_string(rep.samples_used - 1));
    if (degraded_note)
        rep.notes.push_back(
            "jordan invariant degraded to float mode for at least one sample (spectrum did not "
            "factor over Q)");
    // Orientation classes: reversing the frame negates the skew operator; the
    // reference invariants of both orientation classes are recorded as data.
    if (t.skew_operator && ref.done) {
        bool agree = true;
        if (t.inv == InvKind::Spectrum)
            agree = negate_key(ref.inv.skey) == ref.inv.skey;
        else if (t.inv == InvKind::Jordan && !ref.inv.degraded)
            agree = negate_key(*ref.inv.jkey) == *ref.inv.jkey;
        rep.notes.push_back(std::string("orientation classes share the reference invariant: ") +
                            (agree ? "yes" : "no"));
        if (!agree) rep.holds = false;
    }
    return rep;
}

}  // namespace

PropertyReport check(const curvature::Tensor4Q& R, const PropertyQuery& q,
                     const curvature::HermitianStructure* H) {
    Traits t = traits_of(q.property);
    if (t.on_tensor5)
        throw std::invalid_argument("property " + property_name(q.property, q.r, q.s) +
                                    " applies to rank-5 tensors");
    if (q.property == Property::TwoNilpotent) {
        PropertyReport rep;
        rep.property = property_name(q.property);
        rep.seed = q.cfg.seed;
        rep.holds = curvature::two_nilpotent_acst(R);
        rep.samples_used = 0;
        rep.reference = rep.holds ? "two-nilpotent" : "not two-nilpotent";
        rep.reference_key = rep.reference;
        rep.reference_zero_spectrum = rep.holds;
        rep.notes.push_back("decided exactly by canonical-basis enumeration, no sampling");
        return rep;
    }
    if (q.property == Property::AlmostComplexJordanIP) {
        if (!H) throw std::invalid_argument("almost-complex-jordan-ip requires a Hermitian structure");
        if (!curvature::almost_complex_check(R, *H))
            throw std::invalid_argument(
                "almost-complex-jordan-ip: tensor is not almost complex (J*R != R)");
    }
    check_preconditions(q.property, q.r, q.s, R.sig);
    return run_samples(q.property, q, R.sig, &R, nullptr, H);
}

PropertyReport check(const curvature::Tensor5Q& D, const PropertyQuery& q) {
    Traits t = traits_of(q.property);
    if (!t.on_tensor5)
        throw std::invalid_argument("property " + property_name(q.property, q.r, q.s) +
                                    " applies to rank-4 tensors");
    check_preconditions(q.property, q.r, q.s, D.sig);
    return run_samples(q.property, q, D.sig, nullptr, &D, nullptr);
}

namespace {

bool witness_mismatch(Property prop, const PropertyQuery& q, const curvature::Tensor4Q* R,
                      const curvature::Tensor5Q* D, const Witness& w) {
    Traits t = traits_of(prop);
    Sampled a{w.vecs_a, w.norms_a, false}, b{w.vecs_b, w.norms_b, false};
    if (t.domain == Domain::Plane02 || t.domain == Domain::Plane20 || t.domain == Domain::Plane11 ||
        t.domain == Domain::ComplexLine)
        a.oriented = b.oriented = true;
    Invariant ia = make_invariant(t.inv, op_of(prop, R, D, a), q.float_tol);
    Invariant ib = make_invariant(t.inv, op_of(prop, R, D, b), q.float_tol);
    return !invariants_equal(ia, ib, q.float_tol);
}

}  // namespace

bool recheck_witness(const curvature::Tensor4Q& R, const PropertyQuery& q, const Witness& w,
                     const curvature::HermitianStructure* H) {
    (void)H;
    return witness_mismatch(q.property, q, &R, nullptr, w);
}

bool recheck_witness(const curvature::Tensor5Q& D, const PropertyQuery& q, const Witness& w) {
    return witness_mismatch(q.property, q, nullptr, &D, w);
}

// --- float mode ----------------------------------------------------------------

namespace {

struct FloatInv {
    InvKind kind = InvKind::Spectrum;
    std::vector<double> charpoly;  // spectrum compared through coefficients:
                                   // root extraction is ill-conditioned at
                                   // multiple eigenvalues, the coefficients
                                   // are not
    pseudolin::JordanSignature jsig;
    int rank = 0;
    std::string display;
};

FloatInv make_float_invariant(InvKind kind, const MatD& op, double tol) {
    FloatInv inv;
    inv.kind = kind;
    switch (kind) {
        case InvKind::Spectrum: {
            PolyD p = pseudolin::char_poly(op);
            inv.charpoly = p.coeffs();
            char buf[64];
            for (auto [re, im] : roots_approx(p)) {  // display only
                std::snprintf(buf, sizeof buf, "%.6g%+.6gi ", re, im);
                inv.display += buf;
            }
            break;
        }
        case InvKind::Jordan:
            inv.jsig = pseudolin::jordan_signature(op, tol);
            inv.display = inv.jsig.str();
            break;
        case InvKind::Rank:
            inv.rank = pseudolin::rank(op, tol);
            inv.display = "rank " + std::to_string(inv.rank);
            break;
    }
    return inv;
}

bool float_invariants_equal(const FloatInv& a, const FloatInv& b, double tol) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case InvKind::Spectrum: {
            if (a.charpoly.size() != b.charpoly.size()) return false;
            double scale = 1.0;
            for (double c : a.charpoly) scale = std::max(scale, std::abs(c));
            for (std::size_t i = 0; i < a.charpoly.size(); ++i)
                if (std::abs(a.charpoly[i] - b.charpoly[i]) > tol * scale) return false;
            return true;
        }
        case InvKind::Jordan: return pseudolin::jordan_equivalent(a.jsig, b.jsig, tol);
        case InvKind::Rank: return a.rank == b.rank;
    }
    return false;
}

MatD float_op_of(Property p, const curvature::Tensor4D* R, const curvature::Tensor5D* D,
                 const Sampled& sd, const Signature& sig) {
    Traits t = traits_of(p);
    frames::FrameSampleD f = frames::to_float(to_frame(sd, sig));
    switch (t.domain) {
        case Domain::UnitPlus:
        case Domain::UnitMinus:
            return t.on_tensor5 ? operators::szabo(*D, f.vectors[0])
                                : operators::jacobi(*R, f.vectors[0]);
        case Domain::Grass:
            return operators::higher_jacobi(*R, f);
        case Domain::Plane02:
        case Domain::Plane20:
        case Domain::Plane11:
        case Domain::ComplexLine:
            return operators::skew_curvature(*R, f);
        case Domain::None: break;
    }
    throw std::logic_error("float_op_of: no domain");
}

PropertyReport run_samples_float(Property prop, const PropertyQuery& q, const Signature& sig,
                                 const curvature::Tensor4D* R, const curvature::Tensor5D* D) {
    Traits t = traits_of(prop);
    PropertyReport rep;
    rep.property = property_name(prop, q.r, q.s);
    rep.seed = q.cfg.seed;
    {
        char buf[48];
        std::snprintf(buf, sizeof buf, "float mode, relative tolerance %g", q.float_tol);
        rep.notes.push_back(buf);
    }
    const std::uint64_t stream = fnv1a(rep.property);
    std::optional<FloatInv> ref;
    Sampled ref_sd;
    rep.holds = true;
    for (int i = 0; i < std::max(1, q.sample_budget); ++i) {
        frames::SamplerConfig cfg = q.cfg;
        cfg.seed = derive_seed(q.cfg.seed, stream, static_cast<std::uint64_t>(i));
        frames::Sampler smp(cfg);
        Sampled sd = draw_sample(t.domain, sig, smp, q.r, q.s, nullptr);
        FloatInv inv = make_float_invariant(t.inv, float_op_of(prop, R, D, sd, sig), q.float_tol);
        ++rep.samples_used;
        if (!ref) {
            ref = std::move(inv);
            ref_sd = std::move(sd);
            rep.reference = ref->display;
            rep.reference_key = "float:" + ref->display;
            if (t.inv == InvKind::Rank) rep.reference_rank = ref->rank;
            continue;
        }
        if (!float_invariants_equal(*ref, inv, q.float_tol)) {
            Witness w;
            w.index_a = 0;
            w.index_b = i;
            w.vecs_a = ref_sd.vecs;
            w.norms_a = ref_sd.norms;
            w.vecs_b = sd.vecs;
            w.norms_b = sd.norms;
            w.invariant_a = ref->display;
            w.invariant_b = inv.display;
            rep.witness = std::move(w);
            rep.holds = false;
            if (q.early_exit) break;
        }
    }
    return rep;
}

}  // namespace

PropertyReport check_float(const curvature::Tensor4D& R, const PropertyQuery& q) {
    Traits t = traits_of(q.property);
    if (t.on_tensor5)
        throw std::invalid_argument("property applies to rank-5 tensors");
    if (q.property == Property::TwoNilpotent || q.property == Property::AlmostComplexJordanIP)
        throw std::invalid_argument("property not available in float mode");
    check_preconditions(q.property, q.r, q.s, R.sig);
    return run_samples_float(q.property, q, R.sig, &R, nullptr);
}

PropertyReport check_float(const curvature::Tensor5D& D, const PropertyQuery& q) {
    Traits t = traits_of(q.property);
    if (!t.on_tensor5)
        throw std::invalid_argument("property applies to rank-4 tensors");
    check_preconditions(q.property, q.r, q.s, D.sig);
    return run_samples_float(q.property, q, D.sig, nullptr, &D);
}

// --- suites ------------------------------------------------------------------

namespace {

MatQ full_space_jacobi(const curvature::Tensor4Q& R) {
    const int m = R.dim();
    MatQ sum(m, m);
    for (int i = 0; i < m; ++i) {
        VecQ e(m);
        e[i] = Rat(1);
        MatQ j = operators::jacobi(R, e);
        if (R.sig.eps(i) < 0)
            sum = sum - j;
        else
            sum = sum + j;
    }
    return sum;
}

MatQ higher_jacobi_matrix(const curvature::Tensor4Q& R, const frames::FrameSample& f) {
    const int m = R.dim();
    MatQ sum(m, m);
    for (int i = 0; i < f.k(); ++i) {
        MatQ raw = operators::jacobi(R, f.vectors[static_cast<std::size_t>(i)]);
        sum = sum + (Rat(1) / f.norm_sq[static_cast<std::size_t>(i)]) * raw;
    }
    return sum;
}

std::vector<std::pair<int, int>> admissible_types(const Signature& sig) {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r <= sig.p; ++r)
        for (int s = 0; s <= sig.q; ++s)
            if (frames::admissible(r, s, sig)) out.emplace_back(r, s);
    return out;
}

PropertyQuery typed_query(Property p, int r, int s, const frames::SamplerConfig& cfg, int budget) {
    PropertyQuery q;
    q.property = p;
    q.r = r;
    q.s = s;
    q.cfg = cfg;
    q.sample_budget = budget;
    return q;
}

}  // namespace

SuiteReport duality_suite(const curvature::Tensor4Q& R, const frames::SamplerConfig& cfg,
                          int budget) {
    SuiteReport rep;
    rep.name = "duality";
    rep.seed = cfg.seed;
    const Signature sig = R.sig;
    auto types = admissible_types(sig);

    // (i) J(pi) + J(pi-perp) = J(V), exactly, on samples across all types.
    MatQ jv = full_space_jacobi(R);
    bool additive = true;
    int count = 0;
    for (int i = 0; i < budget && additive; ++i) {
        auto [r, s] = types[static_cast<std::size_t>(i) % types.size()];
        frames::SamplerConfig c = cfg;
        c.seed = derive_seed(cfg.seed, fnv1a("duality-additivity"), static_cast<std::uint64_t>(i));
        frames::Sampler smp(c);
        frames::FrameSample f = smp.frame(sig, r, s, false);
        frames::FrameSample fperp = frames::complement(f);
        MatQ sum = higher_jacobi_matrix(R, f) + higher_jacobi_matrix(R, fperp);
        additive = sum == jv;
        ++count;
    }
    rep.add("J(pi) + J(pi_perp) == J(V) on " + std::to_string(count) + " sampled subspaces",
            additive);

    // (ii) k-Osserman <=> (m-k)-Osserman verdict agreement.
    std::map<int, bool> k_verdict;
    for (auto [r, s] : types) {
        auto q = typed_query(Property::OssermanType, r, s, cfg, budget);
        bool holds = check(R, q).holds;
        auto it = k_verdict.find(r + s);
        if (it == k_verdict.end())
            k_verdict[r + s] = holds;
        else
            k_verdict[r + s] = it->second && holds;
    }
    bool dual_ok = true;
    for (auto [k, v] : k_verdict) {
        int mk = sig.dim() - k;
        if (k_verdict.count(mk) && k_verdict[mk] != v) dual_ok = false;
    }
    rep.add("k-Osserman verdict agrees with (m-k)-Osserman verdict", dual_ok);

    // (iii) Jordan type (r,s) co-occurs with (p-r, q-s).
    bool jordan_dual_ok = true;
    std::string detail;
    for (auto [r, s] : types) {
        int rd = sig.p - r, sd = sig.q - s;
        if (std::make_pair(rd, sd) < std::make_pair(r, s)) continue;  // test each dual pair once
        auto qa = typed_query(Property::JordanOssermanType, r, s, cfg, budget);
        auto qb = typed_query(Property::JordanOssermanType, rd, sd, cfg, budget);
        bool va = check(R, qa).holds, vb = check(R, qb).holds;
        if (va != vb) {
            jordan_dual_ok = false;
            detail += "(" + std::to_string(r) + "," + std::to_string(s) + ") vs dual: " +
                      (va ? "holds" : "fails") + "/" + (vb ? "holds" : "fails") + "; ";
        }
    }
    rep.add("Jordan Osserman type (r,s) verdict agrees with type (p-r,q-s)", jordan_dual_ok,
            detail);
    return rep;
}

SuiteReport equivalence_suite(const curvature::Tensor4Q& R, const frames::SamplerConfig& cfg,
                              int budget) {
    SuiteReport rep;
    rep.name = "equivalences";
    rep.seed = cfg.seed;
    const Signature sig = R.sig;

    if (sig.p >= 1 && sig.q >= 1) {
        bool tl = check(R, typed_query(Property::TimelikeOsserman, 0, 0, cfg, budget)).holds;
        bool sl = check(R, typed_query(Property::SpacelikeOsserman, 0, 0, cfg, budget)).holds;
        rep.add("timelike Osserman <=> spacelike Osserman", tl == sl,
                tl == sl ? "" : "disagreement: falsification candidate, indicates a bug");
    }

    std::map<int, std::vector<bool>> by_k;
    for (auto [r, s] : admissible_types(sig)) {
        auto q = typed_query(Property::OssermanType, r, s, cfg, budget);
        by_k[r + s].push_back(check(R, q).holds);
    }
    bool all_agree = true;
    for (auto& [k, verdicts] : by_k)
        for (bool v : verdicts) all_agree = all_agree && v == verdicts.front();
    rep.add("type-(r,s) verdicts agree within each k", all_agree,
            all_agree ? "" : "disagreement: falsification candidate, indicates a bug");

    std::vector<bool> ip;
    if (frames::admissible(2, 0, sig))
        ip.push_back(check(R, typed_query(Property::TimelikeIP, 0, 0, cfg, budget)).holds);
    if (frames::admissible(1, 1, sig))
        ip.push_back(check(R, typed_query(Property::MixedIP, 0, 0, cfg, budget)).holds);
    if (frames::admissible(0, 2, sig))
        ip.push_back(check(R, typed_query(Property::SpacelikeIP, 0, 0, cfg, budget)).holds);
    bool ip_agree = true;
    for (bool v : ip) ip_agree = ip_agree && v == ip.front();
    if (!ip.empty())
        rep.add("IP verdicts agree across the applicable 2-plane kinds", ip_agree,
                ip_agree ? "" : "disagreement: falsification candidate, indicates a bug");
    return rep;
}

SuiteReport szabo_structure_suite(const curvature::Tensor5Q& D, const frames::SamplerConfig& cfg,
                                  int budget) {
    SuiteReport rep;
    rep.name = "szabo-structure";
    rep.seed = cfg.seed;
    const Signature sig = D.sig;
    const int m = sig.dim();

    std::optional<PropertyReport> plus, minus;
    if (sig.q >= 1) plus = check(D, typed_query(Property::SpacelikeSzabo, 0, 0, cfg, budget));
    if (sig.p >= 1) minus = check(D, typed_query(Property::TimelikeSzabo, 0, 0, cfg, budget));
    if (plus && minus)
        rep.add("timelike Szabo <=> spacelike Szabo", plus->holds == minus->holds);
    bool szabo = (plus ? plus->holds : true) && (minus ? minus->holds : true);
    rep.add("Szabo verdict", true,
            szabo ? "holds-on-samples" : "fails (structure checks inapplicable)");
    if (!szabo) return rep;

    // Reference operators for the structure checks (first-sample seeds).
    auto ref_op = [&](int sign) {
        frames::SamplerConfig c = cfg;
        c.seed = derive_seed(cfg.seed, fnv1a(sign > 0 ? "szabo-ref+" : "szabo-ref-"), 0);
        frames::Sampler smp(c);
        auto u = smp.unit(sig, sign);
        return operators::szabo_unit(D, u);
    };

    // (1a) spec = -spec on each pseudo-sphere, and spec^+ = i * spec^-.
    std::optional<SpectrumKey> kp, km;
    if (sig.q >= 1) kp = spectrum_key(ref_op(+1));
    if (sig.p >= 1) km = spectrum_key(ref_op(-1));
    if (kp) rep.add("spec^+ closed under negation", negate_key(*kp) == *kp);
    if (km) rep.add("spec^- closed under negation", negate_key(*km) == *km);
    if (kp && km) {
        bool rot_ok = true;
        for (int deg = 0; deg <= m; ++deg) {
            const auto& [sgp, sqp] = kp->enc[static_cast<std::size_t>(deg)];
            const auto& [sgm, sqm] = km->enc[static_cast<std::size_t>(deg)];
            int parity = (m - deg) % 2;
            if (parity == 1) {
                rot_ok = rot_ok && sgp == 0 && sgm == 0;
            } else {
                int flip = ((m - deg) / 2) % 2 == 0 ? 1 : -1;
                rot_ok = rot_ok && sgp == flip * sgm && sqp == sqm;
            }
        }
        rep.add("spec^+ equals sqrt(-1) * spec^-", rot_ok);
    }

    // (1b)/(1c): roots of the even part g (charpoly = x^j g(x^2)).
    auto even_part = [&](const ScaledOp& op) -> std::optional<PolyQ> {
        PolyQ p = pseudolin::char_poly(op.M);
        std::vector<Rat> coeff = p.coeffs();
        int j = 0;
        while (j < static_cast<int>(coeff.size()) && coeff[static_cast<std::size_t>(j)].is_zero())
            ++j;
        std::vector<Rat> shifted(coeff.begin() + j, coeff.end());
        for (std::size_t i = 1; i < shifted.size(); i += 2)
            if (!shifted[i].is_zero()) return std::nullopt;  // not negation-closed
        std::vector<Rat> g;
        for (std::size_t i = 0; i < shifted.size(); i += 2) g.push_back(shifted[i]);
        return PolyQ(g);
    };
    auto analyze = [&](int sign, const char* tag) {
        ScaledOp op = ref_op(sign);
        auto g = even_part(op);
        if (!g) {
            rep.add(std::string(tag) + ": spectrum in R union iR", false, "charpoly not even");
            return;
        }
        PolyQ gs = (*g / poly_gcd(*g, g->derivative())).monic();
        int real_roots = sturm_count_all(gs);
        rep.add(std::string(tag) + ": spectrum contained in R union iR",
                real_roots == gs.degree());
        if (sig.p < sig.q) {
            Rat bound(1);
            for (int k = 0; k <= gs.degree(); ++k) {
                Rat c = gs.coeff(k).abs();
                if (c > bound) bound = c;
            }
            bound = Rat(1) + bound;
            if (sign > 0) {
                int positive = sturm_count(gs, Rat(0), bound);
                rep.add(std::string(tag) + ": spec^+ within iR (p<q)", positive == 0);
            } else {
                int negative = sturm_count(gs, -bound, Rat(0)) -
                               (gs.eval(Rat(0)).is_zero() ? 1 : 0);
                rep.add(std::string(tag) + ": spec^- within R (p<q)", negative <= 0);
            }
        }
    };
    if (sig.q >= 1) analyze(+1, "spacelike");
    if (sig.p >= 1) analyze(-1, "timelike");

    // (2) spacelike Jordan Szabo refinements for p < q.
    if (sig.q >= 1 && sig.p < sig.q) {
        auto jq = typed_query(Property::SpacelikeJordanSzabo, 0, 0, cfg, budget);
        bool jholds = check(D, jq).holds;
        rep.add("spacelike Jordan Szabo verdict recorded", true,
                jholds ? "holds-on-samples" : "fails");
        if (jholds) {
            int nu = pseudolin::adams_number(sig.q);
            bool simple_ok = true, rank_ok = true;
            for (int i = 0; i < budget; ++i) {
                frames::SamplerConfig c = cfg;
                c.seed = derive_seed(cfg.seed, fnv1a("szabo-structure+"), static_cast<std::uint64_t>(i));
                frames::Sampler smp(c);
                auto u = smp.unit(sig, +1);
                ScaledOp op = operators::szabo_unit(D, u);
                simple_ok = simple_ok && pseudolin::is_jordan_simple(op.M);
                if (sig.p < sig.q - nu) rank_ok = rank_ok && pseudolin::rank(op.M) <= 2 * nu;
            }
            rep.add("S(v) Jordan simple on S^+", simple_ok);
            if (sig.p < sig.q - nu)
                rep.add("rank S(v) <= 2 nu(q) when p < q - nu(q)", rank_ok);
            if (sig.q % 2 == 1 && !D.is_zero()) {
                rep.add("odd q with p<q forces the zero tensor", true,
                        "!!! nonzero tensor passed every sampled spacelike Jordan Szabo check; "
                        "theory predicts it must be zero -- increase the budget and investigate");
                rep.notes.push_back(
                    "LOUD FLAG: sampled checks passed on a nonzero tensor where the vanishing "
                    "theorem applies");
            }
        }
    }
    return rep;
}

bool jacobi_diagonalizable_on_samples(const curvature::Tensor4Q& R,
                                      const frames::SamplerConfig& cfg, int budget) {
    for (int i = 0; i < budget; ++i) {
        frames::SamplerConfig c = cfg;
        c.seed = derive_seed(cfg.seed, fnv1a("diagonalizable"), static_cast<std::uint64_t>(i));
        frames::Sampler smp(c);
        auto u = smp.unit(R.sig, +1);
        ScaledOp op = operators::jacobi_unit(R, u);
        if (!pseudolin::is_jordan_simple(op.M)) return false;
    }
    return true;
}

SuiteReport almost_complex_multiplicity_suite(const curvature::Tensor4Q& R,
                                              const curvature::HermitianStructure& H,
                                              const frames::SamplerConfig& cfg, int budget) {
    SuiteReport rep;
    rep.name = "almost-complex-multiplicities";
    rep.seed = cfg.seed;
    if (R.sig.p != 0) {
        rep.add("eigenvalue-structure constraints apply to definite signature (0,q)", false);
        return rep;
    }
    const int q = R.sig.q;
    bool ok = true;
    std::string detail;
    for (int i = 0; i < budget && ok; ++i) {
        frames::SamplerConfig c = cfg;
        c.seed = derive_seed(cfg.seed, fnv1a("ac-mult"), static_cast<std::uint64_t>(i));
        frames::Sampler smp(c);
        frames::FrameSample line = smp.complex_line(H);
        ScaledOp op = operators::skew_curvature(R, line);
        MatQ jr = H.J * op.M;  // multiplicities are scale invariant
        pseudolin::SpectrumSummary spec = pseudolin::spectrum(jr);
        if (!spec.exact) {
            rep.notes.push_back("sample skipped: spectrum did not factor exactly");
            continue;
        }
        std::vector<int> mults;
        for (const auto& e : spec.entries) {
            if (e.kind == pseudolin::SpectrumEntry::Kind::Rational)
                mults.push_back(e.mult);
            else {
                mults.push_back(e.mult);
                mults.push_back(e.mult);
            }
        }
        std::sort(mults.rbegin(), mults.rend());
        int ell = static_cast<int>(mults.size()) - 1;
        if (ell >= 1) {
            if (q % 4 == 2)
                ok = ell == 1 && mults[1] == 1;
            else if (q % 4 == 0)
                ok = (ell == 1 && mults[1] <= 2) ||
                     (ell == 2 && mults[1] == 1 && mults[2] == 1);
            if (!ok) {
                detail = "sample " + std::to_string(i) + ": multiplicities ";
                for (int mu : mults) detail += std::to_string(mu) + " ";
            }
        }
    }
    rep.add("multiplicity constraints (q mod 4) on J*R(pi)", ok, detail);
    return rep;
}

}  // namespace classify
}  // namespace curvlab
