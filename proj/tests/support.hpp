#pragma once

// Conversions between library values and the oracle representation.

#include "oracles.hpp"
#include "ul/spaces.hpp"

namespace support {

inline oracle::Mat to_oracle(const ul::DenseMatrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

inline oracle::Vec to_oracle(const ul::DenseVector& v) { return oracle::Vec(v.data(), v.data() + v.dim()); }

inline ul::DenseMatrix from_oracle(const oracle::Mat& m) {
  std::vector<ul::Complex> entries;
  for (const auto& row : m) entries.insert(entries.end(), row.begin(), row.end());
  return ul::DenseMatrix(m.size(), m[0].size(), std::move(entries), ul::Field::complex);
}

inline ul::DenseVector from_oracle(const oracle::Vec& v) { return ul::DenseVector(v, ul::Field::complex); }

}  // namespace support
