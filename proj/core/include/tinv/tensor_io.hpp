#pragma once

// Tensor dump format:
//   {"shape": [N, ...], "variance": ["upper", "lower", ...],
//    "data": [row-major values], "index_order": "paper"}

#include <nlohmann/json.hpp>

#include "tinv/tensor.hpp"

namespace tinv {

nlohmann::json to_json(const TensorValue& t);
TensorValue tensor_from_json(const nlohmann::json& j);

std::string_view to_string(Variance v) noexcept;
Variance variance_from_string(std::string_view s);

}  // namespace tinv
