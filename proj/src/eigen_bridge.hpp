#pragma once

#include <Eigen/Dense>

#include "ul/spaces.hpp"

namespace ul::detail {

inline Eigen::MatrixXcd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

inline DenseMatrix from_eigen(const Eigen::MatrixXcd& m, Field field) {
  std::vector<Complex> e(static_cast<std::size_t>(m.rows() * m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      Complex z = m(r, c);
      if (field == Field::real) z = Complex(z.real(), 0.0);
      e[static_cast<std::size_t>(r * m.cols() + c)] = z;
    }
  }
  return DenseMatrix(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()), std::move(e), field);
}

inline DenseVector from_eigen(const Eigen::VectorXcd& v, Field field) {
  std::vector<Complex> e(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Complex z = v(i);
    if (field == Field::real) z = Complex(z.real(), 0.0);
    e[static_cast<std::size_t>(i)] = z;
  }
  return DenseVector(std::move(e), field);
}

}  // namespace ul::detail
