#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nlc {

/// Structured-grid layout of a flat vector: node-major, `dof` fields interleaved per node,
/// x index fastest. A plain (unstructured) vector of length n uses {n, 1, 1}.
struct Layout {
  std::size_t nx = 0;
  std::size_t ny = 1;
  std::size_t dof = 1;

  std::size_t nodes() const { return nx * ny; }
  std::size_t size() const { return nx * ny * dof; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t field = 0) const {
    return (j * nx + i) * dof + field;
  }
  bool on_boundary(std::size_t i, std::size_t j) const {
    return i == 0 || i + 1 == nx || (ny > 1 && (j == 0 || j + 1 == ny));
  }

  static Layout flat(std::size_t n) { return Layout{n, 1, 1}; }
  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Real vector with grid layout metadata.
class Vector {
 public:
  Vector() = default;
  explicit Vector(Layout layout, double value = 0.0);
  explicit Vector(std::size_t n, double value = 0.0) : Vector(Layout::flat(n), value) {}
  Vector(std::initializer_list<double> values);
  Vector(std::vector<double> values, Layout layout);

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  const Layout& layout() const { return layout_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> span() { return data_; }
  std::span<const double> span() const { return data_; }
  const std::vector<double>& values() const { return data_; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  void fill(double value);

 private:
  std::vector<double> data_;
  Layout layout_;
};

// Kernels. All reductions run sequentially left to right so results are reproducible bit for bit.
// Mismatched layouts throw std::invalid_argument.

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);
/// y <- y + alpha * x
void axpy(double alpha, const Vector& x, Vector& y);
/// Returns b + alpha * a.
Vector axpy(double alpha, const Vector& a, const Vector& b);
/// y <- x + beta * y
void aypx(double beta, const Vector& x, Vector& y);
/// w <- alpha * x + y
void waxpy(Vector& w, double alpha, const Vector& x, const Vector& y);
void scale(double alpha, Vector& x);
void copy(const Vector& src, Vector& dst);
Vector difference(const Vector& a, const Vector& b);  // a - b
bool all_finite(const Vector& x);

void require_same_layout(const Vector& a, const Vector& b, const char* what);

}  // namespace nlc
