#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "nlc/core/problem.hpp"
#include "nlc/linalg/band_lu.hpp"
#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

/// Half-open node box [i0, i1) x [j0, j1).
struct Box {
  std::size_t i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  std::size_t width() const { return i1 - i0; }
  std::size_t height() const { return j1 - j0; }
  bool contains(std::size_t i, std::size_t j) const { return i >= i0 && i < i1 && j >= j0 && j < j1; }
};

struct Subdomain {
  Box owned;
  Box overlap;
  Layout local_layout;                  // layout of the overlapping box
  std::vector<std::size_t> dofs;        // global indices of the overlapping box, increasing
  std::vector<std::size_t> owned_local; // positions in `dofs` of the owned unknowns
};

/// P x Q box partition of a structured grid with overlapping extensions.
class SubdomainDecomposition {
 public:
  /// Throws ConfigError when the grid cannot be split into px x py non-empty boxes.
  SubdomainDecomposition(Layout layout, std::size_t px, std::size_t py, std::size_t overlap);

  std::size_t size() const { return domains_.size(); }
  const Subdomain& operator[](std::size_t b) const { return domains_[b]; }
  const Layout& layout() const { return layout_; }
  std::size_t overlap() const { return overlap_; }
  /// Number of overlapping boxes containing each unknown.
  const std::vector<double>& multiplicity() const { return multiplicity_; }

  /// R^B: values of the overlapping box.
  Vector restrict_to(std::size_t b, const Vector& global) const;
  /// global[dofs] = local.
  void scatter(std::size_t b, const Vector& local, Vector& global) const;
  /// global += P~^B local (owned unknowns only).
  void add_owned(std::size_t b, const Vector& local, Vector& global, double scale = 1.0) const;
  /// global += P^B local / multiplicity (overlap averaged).
  void add_averaged(std::size_t b, const Vector& local, Vector& global, double scale = 1.0) const;

 private:
  Layout layout_;
  std::size_t overlap_;
  std::vector<Subdomain> domains_;
  std::vector<double> multiplicity_;
};

/// Restriction of a global problem to an overlapping box. Unknowns outside the box are frozen at
/// the values of the global state given at construction and act as Dirichlet data; the local
/// residual is the global residual at the box rows.
class SubdomainProblem : public NonlinearProblem {
 public:
  SubdomainProblem(ProblemPtr global, const SubdomainDecomposition& dd, std::size_t b, const Vector& frozen);

  std::string name() const override { return global_->name() + "[subdomain]"; }
  Layout layout() const override { return domain_.local_layout; }
  void apply(const Vector& x, Vector& f) const override;
  const Vector* rhs() const override { return b_.empty() ? nullptr : &b_; }
  bool has_jacobian() const override { return global_->has_jacobian(); }
  SparseMatrix jacobian(const Vector& x) const override;
  bool symmetric_jacobian() const override { return global_->symmetric_jacobian(); }
  double default_ksp_rtol() const override { return global_->default_ksp_rtol(); }
  Vector initial_guess() const override;

 private:
  ProblemPtr global_;
  const SubdomainDecomposition& dd_;
  const Subdomain& domain_;
  std::size_t index_;
  mutable Vector state_;
  mutable Vector fglobal_;
  Vector b_;
};

/// Restricted additive Schwarz linear preconditioner with subdomain LU factors.
class LinearAsm {
 public:
  LinearAsm(const SparseMatrix& a, Layout layout, std::size_t px, std::size_t py, std::size_t overlap);
  void apply(const Vector& in, Vector& out) const;

 private:
  SubdomainDecomposition dd_;
  std::vector<LUFactors> factors_;
};

}  // namespace nlc
