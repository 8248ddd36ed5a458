#pragma once

// JSON (de)serialization for the file formats the CLI exchanges. All emitters
// use ordered maps and string rationals so identical runs produce
// byte-identical files.

#include <optional>
#include <string>

#include <json.hpp>

#include "curvlab/classify.hpp"
#include "curvlab/matrix.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {
namespace io {

using json = nlohmann::ordered_json;

struct RunManifest {
    std::string command;
    json inputs = json::object();
    std::uint64_t seed = 0;
    int budget = 0;
    std::string scalar_mode = "exact";
    std::string out;
    json to_json() const;
    static RunManifest from_json(const json& j);
};

json to_json(const MatQ& m, const Signature& sig);         // LinearMap form
json to_json(const curvature::Tensor4Q& r);
json to_json(const curvature::Tensor5Q& d);
json frame_to_json(const std::vector<VecQ>& vecs, const std::vector<Rat>& norms);

MatQ linear_map_from_json(const json& j, Signature& sig_out);
curvature::Tensor4Q tensor4_from_json(const json& j);
curvature::Tensor5Q tensor5_from_json(const json& j);
curvature::Tensor4D tensor4_float_from_json(const json& j);
curvature::Tensor5D tensor5_float_from_json(const json& j);

json report_to_json(const classify::PropertyReport& rep, const RunManifest& manifest);
json suite_to_json(const classify::SuiteReport& rep, const RunManifest& manifest);

// Files written by `build`: a lone tensor or a bundle {R, nablaR} from a
// metric evaluation.
struct TensorFile {
    std::optional<curvature::Tensor4Q> R;
    std::optional<curvature::Tensor5Q> D;
    json extra = json::object();
};
json tensor_file_to_json(const TensorFile& tf);
TensorFile tensor_file_from_json(const json& j);

}  // namespace io
}  // namespace curvlab
