#include "ul/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ul/errors.hpp"
#include "ul/kernels.hpp"

namespace ul {
namespace {

void require_real(std::span<const Complex> entries) {
  for (const auto& z : entries) {
    if (z.imag() != 0.0) throw DomainError("real-tagged data has a nonzero imaginary part");
  }
}

void scrub_imag(std::vector<Complex>& entries) {
  for (auto& z : entries) z = Complex(z.real(), 0.0);
}

}  // namespace

std::string_view field_name(Field f) { return f == Field::real ? "real" : "complex"; }

Field parse_field(std::string_view name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw StructuralError("unknown field '" + std::string(name) + "'");
}

double conjugate_exponent(double p) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw DomainError("exponent p = " + std::to_string(p) + " is outside the open interval (1, inf)");
  }
  if (p == 2.0) return 2.0;
  return p / (p - 1.0);
}

Exponent::Exponent(double p) : p_(p), q_(conjugate_exponent(p)) {}

// ---- DenseVector ----

DenseVector::DenseVector(std::size_t dim, Field field) : entries_(dim), field_(field) {}

DenseVector::DenseVector(std::vector<Complex> entries, Field field)
    : entries_(std::move(entries)), field_(field) {
  if (field_ == Field::real) require_real(entries_);
}

DenseVector DenseVector::real(std::vector<double> values) {
  std::vector<Complex> e(values.begin(), values.end());
  return DenseVector(std::move(e), Field::real);
}

DenseVector DenseVector::complex(std::vector<Complex> values) {
  return DenseVector(std::move(values), Field::complex);
}

DenseVector DenseVector::basis(std::size_t dim, std::size_t index) {
  DenseVector v(dim);
  v.entries_.at(index) = 1.0;
  return v;
}

void DenseVector::set(std::size_t i, Complex z) {
  if (z.imag() != 0.0) field_ = Field::complex;
  entries_.at(i) = z;
}

DenseVector& DenseVector::operator+=(const DenseVector& other) {
  if (other.dim() != dim()) throw StructuralError("vector dimension mismatch in +");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
  field_ = join(field_, other.field_);
  return *this;
}

DenseVector& DenseVector::operator-=(const DenseVector& other) {
  if (other.dim() != dim()) throw StructuralError("vector dimension mismatch in -");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
  field_ = join(field_, other.field_);
  return *this;
}

DenseVector& DenseVector::operator*=(Complex c) {
  for (auto& z : entries_) z *= c;
  if (c.imag() != 0.0) field_ = Field::complex;
  if (field_ == Field::real) scrub_imag(entries_);
  return *this;
}

DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
DenseVector operator*(Complex c, DenseVector v) { return v *= c; }

// ---- DenseMatrix ----

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), entries_(rows * cols), field_(field) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries, Field field)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), field_(field) {
  if (entries_.size() != rows_ * cols_) {
    throw StructuralError("matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (field_ == Field::real) require_real(entries_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1.0;
  return m;
}

DenseMatrix DenseMatrix::real(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw StructuralError("ragged matrix literal");
    for (double v : row) e.emplace_back(v, 0.0);
  }
  return DenseMatrix(r, c, std::move(e), Field::real);
}

DenseMatrix DenseMatrix::complex(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw StructuralError("ragged matrix literal");
    e.insert(e.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(e), Field::complex);
}

void DenseMatrix::set(std::size_t r, std::size_t c, Complex z) {
  if (r >= rows_ || c >= cols_) throw StructuralError("matrix index out of range");
  if (z.imag() != 0.0) field_ = Field::complex;
  entries_[r * cols_ + c] = z;
}

DenseVector DenseMatrix::row_vector(std::size_t r) const {
  auto span = row(r);
  return DenseVector(std::vector<Complex>(span.begin(), span.end()), field_);
}

DenseVector DenseMatrix::column(std::size_t c) const {
  std::vector<Complex> e(rows_);
  for (std::size_t r = 0; r < rows_; ++r) e[r] = (*this)(r, c);
  return DenseVector(std::move(e), field_);
}

DenseMatrix DenseMatrix::promoted(Field field) const {
  DenseMatrix out = *this;
  out.field_ = join(field_, field);
  return out;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.entries_[c * rows_ + r] = std::conj((*this)(r, c));
  }
  if (field_ == Field::real) scrub_imag(out.entries_);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.entries_[c * rows_ + r] = (*this)(r, c);
  }
  return out;
}

double DenseMatrix::max_abs() const { return kernels::active().abs_max(entries_.data(), entries_.size()); }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw StructuralError("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                          " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const auto& k = kernels::active();
  const DenseMatrix bt = b.transpose();
  const Field field = join(a.field(), b.field());
  std::vector<Complex> out(a.rows() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      out[r * b.cols() + c] = k.dot(a.row(r).data(), bt.row(c).data(), a.cols());
    }
  }
  if (field == Field::real) scrub_imag(out);
  return DenseMatrix(a.rows(), b.cols(), std::move(out), field);
}

DenseVector operator*(const DenseMatrix& a, const DenseVector& x) {
  if (a.cols() != x.dim()) throw StructuralError("matrix-vector dimension mismatch");
  std::vector<Complex> y(a.rows());
  kernels::active().matvec(a.data(), x.data(), y.data(), a.rows(), a.cols());
  const Field field = join(a.field(), x.field());
  if (field == Field::real) scrub_imag(y);
  return DenseVector(std::move(y), field);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  if (a.dim() != b.dim()) throw StructuralError("vector dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double pth_root(double sum, double p) {
  if (p == 2.0) return std::sqrt(sum);
  if (p == 1.0) return sum;
  return std::pow(sum, 1.0 / p);
}

double p_norm(std::span<const Complex> v, double p) {
  if (v.empty()) throw DomainError("p-norm of an empty vector");
  if (!std::isfinite(p) || p < 1.0) throw DomainError("p-norm needs finite p >= 1");
  if (p == 1.0) {
    double s = 0.0;
    for (const auto& z : v) s += std::abs(z);
    return s;
  }
  // Rescale by the largest component so |v_i|^p cannot underflow or overflow.
  // (abs_max squares, so it cannot be used for the scale itself.)
  double scale = 0.0;
  for (const auto& z : v) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  if (scale == 0.0) return 0.0;
  if (!std::isfinite(scale)) return scale;
  if (scale > 1e100 || scale < 1e-100) {
    std::vector<Complex> scaled(v.begin(), v.end());
    for (auto& z : scaled) z /= scale;
    return scale * pth_root(kernels::active().abs_pow_sum(scaled.data(), scaled.size(), p), p);
  }
  return pth_root(kernels::active().abs_pow_sum(v.data(), v.size(), p), p);
}

double p_norm(const DenseVector& v, double p) { return p_norm(v.entries(), p); }

double functional_norm(const DenseVector& coeffs, double p) {
  return p_norm(coeffs, conjugate_exponent(p));
}

}  // namespace ul
