#include "modlab/json_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>

#include "modlab/error.hpp"

namespace modlab {

Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const auto& z : m.data()) data.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& data = j.at("data");
    if (rows == 0 || cols == 0) throw Error(ErrorCode::ParseError, "matrix dimensions must be positive");
    if (data.size() != rows * cols) throw Error(ErrorCode::ParseError, "data length != rows*cols");
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const auto& z : data) {
      if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::ParseError, "entry must be [re, im]");
      entries.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    ComplexMatrix m(rows, cols, std::move(entries));
    if (!m.all_finite()) throw Error(ErrorCode::ParseError, "non-finite entry");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const std::vector<ComplexMatrix>& list) {
  Json out = Json::array();
  for (const auto& m : list) out.push_back(to_json(m));
  return out;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

std::string dump(const Json& j, int indent) { return j.dump(indent); }

std::string digest(const std::vector<ComplexMatrix>& list) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& m : list) {
    mix(m.rows());
    mix(m.cols());
    for (const auto& z : m.data()) {
      mix(std::bit_cast<std::uint64_t>(z.real()));
      mix(std::bit_cast<std::uint64_t>(z.imag()));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace modlab
