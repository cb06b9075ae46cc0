#pragma once

#include <cmath>
#include <vector>

#include "modlab/matrix.hpp"

namespace modlab::testing {

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

inline ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Complex> data;
  std::size_t cols = rows.begin()->size();
  for (const auto& r : rows)
    for (double x : r) data.emplace_back(x, 0.0);
  return {rows.size(), cols, std::move(data)};
}

/// Real column vector as complex.
inline std::vector<Complex> vec(std::initializer_list<double> xs, double scale = 1.0) {
  std::vector<Complex> v;
  for (double x : xs) v.emplace_back(x * scale, 0.0);
  return v;
}

}  // namespace modlab::testing
