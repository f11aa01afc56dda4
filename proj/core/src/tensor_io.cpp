#include "tinv/tensor_io.hpp"

#include <string>

namespace tinv {

std::string_view to_string(Variance v) noexcept {
  return v == Variance::upper ? "upper" : "lower";
}

Variance variance_from_string(std::string_view s) {
  if (s == "upper") return Variance::upper;
  if (s == "lower") return Variance::lower;
  throw TensorError("unknown variance '" + std::string(s) + "'");
}

nlohmann::json to_json(const TensorValue& t) {
  nlohmann::json j;
  j["shape"] = std::vector<int>(static_cast<std::size_t>(t.rank()), t.dim());
  auto& variance = j["variance"] = nlohmann::json::array();
  for (Variance v : t.variance()) variance.push_back(to_string(v));
  j["data"] = std::vector<double>(t.data().begin(), t.data().end());
  j["index_order"] = "paper";
  if (t.rank() == 0) j["dim"] = t.dim();
  return j;
}

TensorValue tensor_from_json(const nlohmann::json& j) {
  const auto shape = j.at("shape").get<std::vector<int>>();
  Signature sig;
  for (const auto& v : j.at("variance")) sig.push_back(variance_from_string(v.get<std::string>()));
  if (shape.size() != sig.size()) throw TensorError("shape and variance lengths differ");
  if (j.value("index_order", "paper") != "paper") throw TensorError("unsupported index order");
  int dim = shape.empty() ? j.value("dim", 0) : shape.front();
  for (int s : shape) {
    if (s != dim) throw TensorError("only square shapes are supported");
  }
  if (dim < 1) throw TensorError("rank-0 tensor dump needs a positive \"dim\"");
  TensorValue t(dim, sig);
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != t.size()) throw TensorError("data length does not match shape");
  std::copy(data.begin(), data.end(), t.data().begin());
  return t;
}

}  // namespace tinv
