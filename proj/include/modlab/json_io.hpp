#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "modlab/matrix.hpp"

namespace modlab {

using Json = nlohmann::json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const std::vector<ComplexMatrix>& list);
std::vector<ComplexMatrix> matrices_from_json(const Json& j);

/// Serialized text; doubles are written in shortest round-trip form
/// (at most 17 significant digits), so decoding restores every bit.
std::string dump(const Json& j, int indent = -1);

/// 64-bit FNV-1a over shapes and entry bit patterns, as 16 hex digits.
std::string digest(const std::vector<ComplexMatrix>& list);

}  // namespace modlab
