#include "curvlab/json_io.hpp"

#include <stdexcept>

namespace curvlab {
namespace io {

json RunManifest::to_json() const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["seed"] = seed;
    j["budget"] = budget;
    j["scalar_mode"] = scalar_mode;
    j["out"] = out;
    return j;
}

RunManifest RunManifest::from_json(const json& j) {
    RunManifest m;
    m.command = j.value("command", "");
    m.inputs = j.value("inputs", json::object());
    m.seed = j.value("seed", 0ULL);
    m.budget = j.value("budget", 0);
    m.scalar_mode = j.value("scalar_mode", "exact");
    m.out = j.value("out", "");
    return m;
}

json to_json(const MatQ& m, const Signature& sig) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        entries.push_back(std::move(row));
    }
    json j;
    j["p"] = sig.p;
    j["q"] = sig.q;
    j["entries"] = entries;
    return j;
}

json to_json(const curvature::Tensor4Q& r) {
    json j;
    j["p"] = r.sig.p;
    j["q"] = r.sig.q;
    json comp = json::array();
    for (const auto& v : r.c) comp.push_back(v.str());
    j["components"] = std::move(comp);
    return j;
}

json to_json(const curvature::Tensor5Q& d) {
    json j;
    j["p"] = d.sig.p;
    j["q"] = d.sig.q;
    j["rank"] = 5;
    json comp = json::array();
    for (const auto& v : d.c) comp.push_back(v.str());
    j["components"] = std::move(comp);
    return j;
}

json frame_to_json(const std::vector<VecQ>& vecs, const std::vector<Rat>& norms) {
    json arr = json::array();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        json v;
        json coords = json::array();
        for (int t = 0; t < vecs[i].dim(); ++t) coords.push_back(vecs[i][t].str());
        v["coords"] = std::move(coords);
        v["norm_sq"] = norms[i].str();
        arr.push_back(std::move(v));
    }
    return arr;
}

namespace {

Rat parse_scalar(const json& v) {
    if (v.is_string()) return Rat::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (v.is_number_float()) {
        // Decimal via string round-trip keeps user-supplied floats exact-ish.
        return Rat::parse(v.dump());
    }
    throw std::invalid_argument("expected a string-rational or number");
}

Signature parse_sig(const json& j) {
    if (!j.contains("p") || !j.contains("q"))
        throw std::invalid_argument("missing signature fields p/q");
    return Signature(j["p"].get<int>(), j["q"].get<int>());
}

}  // namespace

MatQ linear_map_from_json(const json& j, Signature& sig_out) {
    sig_out = parse_sig(j);
    const auto& entries = j.at("entries");
    const int m = sig_out.dim();
    if (static_cast<int>(entries.size()) != m)
        throw std::invalid_argument("entries rows do not match p+q");
    MatQ out(m, m);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(entries[static_cast<std::size_t>(i)].size()) != m)
            throw std::invalid_argument("entries cols do not match p+q");
        for (int c = 0; c < m; ++c)
            out(i, c) = parse_scalar(entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
    }
    return out;
}

curvature::Tensor4Q tensor4_from_json(const json& j) {
    Signature sig = parse_sig(j);
    curvature::Tensor4Q r(sig);
    const auto& comp = j.at("components");
    if (comp.size() != r.c.size())
        throw std::invalid_argument("component count does not match (p+q)^4");
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = parse_scalar(comp[i]);
    return r;
}

curvature::Tensor5Q tensor5_from_json(const json& j) {
    Signature sig = parse_sig(j);
    curvature::Tensor5Q d(sig);
    const auto& comp = j.at("components");
    if (comp.size() != d.c.size())
        throw std::invalid_argument("component count does not match (p+q)^5");
    for (std::size_t i = 0; i < d.c.size(); ++i) d.c[i] = parse_scalar(comp[i]);
    return d;
}

curvature::Tensor4D tensor4_float_from_json(const json& j) {
    curvature::Tensor4Q q = tensor4_from_json(j);
    curvature::Tensor4D r(q.sig);
    for (std::size_t i = 0; i < q.c.size(); ++i) r.c[i] = q.c[i].to_double();
    return r;
}

curvature::Tensor5D tensor5_float_from_json(const json& j) {
    curvature::Tensor5Q q = tensor5_from_json(j);
    curvature::Tensor5D d(q.sig);
    for (std::size_t i = 0; i < q.c.size(); ++i) d.c[i] = q.c[i].to_double();
    return d;
}

namespace {

json witness_to_json(const classify::Witness& w) {
    json j;
    j["sample_a"] = w.index_a;
    j["sample_b"] = w.index_b;
    j["frame_a"] = frame_to_json(w.vecs_a, w.norms_a);
    j["frame_b"] = frame_to_json(w.vecs_b, w.norms_b);
    j["operator_a"] = w.operator_a;
    j["operator_b"] = w.operator_b;
    j["invariant_a"] = w.invariant_a;
    j["invariant_b"] = w.invariant_b;
    return j;
}

}  // namespace

json report_to_json(const classify::PropertyReport& rep, const RunManifest& manifest) {
    json j;
    j["property"] = rep.property;
    j["verdict"] = rep.verdict();
    j["samples"] = rep.samples_used;
    json ref;
    ref["display"] = rep.reference;
    ref["key"] = rep.reference_key;
    ref["zero_spectrum"] = rep.reference_zero_spectrum;
    if (rep.reference_rank >= 0) ref["rank"] = rep.reference_rank;
    j["reference"] = std::move(ref);
    j["witness"] = rep.witness ? witness_to_json(*rep.witness) : json();
    j["notes"] = rep.notes;
    j["seed"] = rep.seed;
    j["manifest"] = manifest.to_json();
    return j;
}

json suite_to_json(const classify::SuiteReport& rep, const RunManifest& manifest) {
    json j;
    j["suite"] = rep.name;
    j["pass"] = rep.pass;
    json items = json::array();
    for (const auto& item : rep.items) {
        json it;
        it["what"] = item.what;
        it["ok"] = item.ok;
        if (!item.detail.empty()) it["detail"] = item.detail;
        items.push_back(std::move(it));
    }
    j["items"] = std::move(items);
    j["notes"] = rep.notes;
    j["seed"] = rep.seed;
    j["manifest"] = manifest.to_json();
    return j;
}

json tensor_file_to_json(const TensorFile& tf) {
    json j;
    if (tf.R && tf.D) {
        j["kind"] = "bundle";
        j["R"] = to_json(*tf.R);
        j["nablaR"] = to_json(*tf.D);
    } else if (tf.R) {
        j["kind"] = "curvature";
        j.update(to_json(*tf.R));
    } else if (tf.D) {
        j["kind"] = "covderiv";
        j.update(to_json(*tf.D));
    }
    for (auto& [k, v] : tf.extra.items()) j[k] = v;
    return j;
}

TensorFile tensor_file_from_json(const json& j) {
    TensorFile tf;
    std::string kind = j.value("kind", "");
    if (kind == "bundle") {
        tf.R = tensor4_from_json(j.at("R"));
        tf.D = tensor5_from_json(j.at("nablaR"));
        return tf;
    }
    if (kind == "covderiv" || j.value("rank", 4) == 5) {
        tf.D = tensor5_from_json(j);
        return tf;
    }
    tf.R = tensor4_from_json(j);
    return tf;
}

}  // namespace io
}  // namespace curvlab
