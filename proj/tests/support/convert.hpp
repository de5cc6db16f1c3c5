#pragma once

#include "oracles.hpp"
#include "tiltlab/matrix.hpp"

namespace testing_support {

inline tiltlab::Matrix to_matrix(const oracle::Grid& g, std::size_t cols_if_empty = 0) {
  const std::size_t m = g.size(), n = m ? g[0].size() : cols_if_empty;
  std::vector<tiltlab::Element> entries;
  for (const auto& row : g)
    for (const auto& v : row) entries.emplace_back(tiltlab::Integer(v));
  return tiltlab::Matrix::from_elements(tiltlab::RingTag::Integers, m, n, entries);
}

inline oracle::Grid to_grid(const tiltlab::Matrix& m) {
  oracle::Grid g(m.rows(), std::vector<oracle::Int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = std::get<tiltlab::Integer>(m.at(i, j));
  return g;
}

}  // namespace testing_support
