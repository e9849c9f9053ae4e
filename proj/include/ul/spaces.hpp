#pragma once

// Scalars, exponents, dense vectors and matrices, and l^p norms.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace ul {

using Complex = std::complex<double>;

// Value-level tag: a real-tagged vector or matrix has zero imaginary parts.
enum class Field { real, complex };

constexpr Field join(Field a, Field b) {
  return (a == Field::complex || b == Field::complex) ? Field::complex : Field::real;
}
std::string_view field_name(Field f);
Field parse_field(std::string_view name);

/// Exponent p in the open interval (1, inf) together with its conjugate q.
///
/// p = 1 and p = inf are rejected at construction.
class Exponent {
 public:
  explicit Exponent(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool hilbert() const noexcept { return p_ == 2.0; }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double p_;
  double q_;
};

// q with 1/p + 1/q = 1. Throws DomainError unless 1 < p < inf.
double conjugate_exponent(double p);

class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t dim, Field field = Field::real);
  DenseVector(std::vector<Complex> entries, Field field);

  static DenseVector real(std::vector<double> values);
  static DenseVector complex(std::vector<Complex> values);
  static DenseVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return entries_.size(); }
  Field field() const noexcept { return field_; }
  bool empty() const noexcept { return entries_.empty(); }

  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  // Promotes the tag to complex when z has a nonzero imaginary part.
  void set(std::size_t i, Complex z);

  std::span<const Complex> entries() const noexcept { return entries_; }
  const Complex* data() const noexcept { return entries_.data(); }
  Complex* mutable_data() noexcept { return entries_.data(); }

  DenseVector& operator+=(const DenseVector& other);
  DenseVector& operator-=(const DenseVector& other);
  DenseVector& operator*=(Complex c);

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<Complex> entries_;
  Field field_ = Field::real;
};

DenseVector operator+(DenseVector a, const DenseVector& b);
DenseVector operator-(DenseVector a, const DenseVector& b);
DenseVector operator*(Complex c, DenseVector v);

/// Row-major dense matrix with a field tag.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, Field field = Field::real);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries, Field field);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix real(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix complex(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Field field() const noexcept { return field_; }
  bool square() const noexcept { return rows_ == cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Complex z);

  std::span<const Complex> row(std::size_t r) const {
    return std::span<const Complex>(entries_).subspan(r * cols_, cols_);
  }
  DenseVector row_vector(std::size_t r) const;
  DenseVector column(std::size_t c) const;
  std::span<const Complex> entries() const noexcept { return entries_; }
  const Complex* data() const noexcept { return entries_.data(); }

  // Same entries tagged complex when `field` is complex; never demotes.
  DenseMatrix promoted(Field field) const;
  DenseMatrix adjoint() const;
  DenseMatrix transpose() const;
  double max_abs() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
  Field field_ = Field::real;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseVector operator*(const DenseMatrix& a, const DenseVector& x);

// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(const DenseVector& a, const DenseVector& b);

/// (sum |v_i|^p)^(1/p) for finite p >= 1. Throws DomainError on empty input.
double p_norm(std::span<const Complex> v, double p);
double p_norm(const DenseVector& v, double p);

// Dual norm of the functional x -> sum a_i x_i on l^p, i.e. the q-norm of a.
double functional_norm(const DenseVector& coeffs, double p);

// sum^(1/p), with the p = 2 case routed through sqrt.
double pth_root(double sum, double p);

}  // namespace ul
