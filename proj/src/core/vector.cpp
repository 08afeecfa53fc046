#include "nlc/core/vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlc {

Vector::Vector(Layout layout, double value) : data_(layout.size(), value), layout_(layout) {}

Vector::Vector(std::initializer_list<double> values)
    : data_(values), layout_(Layout::flat(values.size())) {}

Vector::Vector(std::vector<double> values, Layout layout) : data_(std::move(values)), layout_(layout) {
  if (data_.size() != layout_.size()) {
    throw std::invalid_argument("vector length " + std::to_string(data_.size()) +
                                " does not match layout size " + std::to_string(layout_.size()));
  }
}

void Vector::fill(double value) {
  for (auto& v : data_) v = value;
}

void require_same_layout(const Vector& a, const Vector& b, const char* what) {
  if (a.layout() != b.layout()) {
    throw std::invalid_argument(std::string(what) + ": layout mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
}

double dot(const Vector& a, const Vector& b) {
  require_same_layout(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same_layout(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector axpy(double alpha, const Vector& a, const Vector& b) {
  Vector out = b;
  axpy(alpha, a, out);
  return out;
}

void aypx(double beta, const Vector& x, Vector& y) {
  require_same_layout(x, y, "aypx");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + beta * y[i];
}

void waxpy(Vector& w, double alpha, const Vector& x, const Vector& y) {
  require_same_layout(x, y, "waxpy");
  if (w.layout() != x.layout()) w = Vector(x.layout());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = alpha * x[i] + y[i];
}

void scale(double alpha, Vector& x) {
  for (auto& v : x) v *= alpha;
}

void copy(const Vector& src, Vector& dst) { dst = src; }

Vector difference(const Vector& a, const Vector& b) {
  require_same_layout(a, b, "difference");
  Vector out(a.layout());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool all_finite(const Vector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace nlc
