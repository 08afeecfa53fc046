#include "nlc/decomposition/subdomains.hpp"

#include <algorithm>
#include <string>

namespace nlc {

namespace {
std::vector<std::size_t> split(std::size_t n, std::size_t parts) {
  std::vector<std::size_t> cuts{0};
  const std::size_t base = n / parts, extra = n % parts;
  for (std::size_t k = 0; k < parts; ++k) cuts.push_back(cuts.back() + base + (k < extra ? 1 : 0));
  return cuts;
}
}  // namespace

SubdomainDecomposition::SubdomainDecomposition(Layout layout, std::size_t px, std::size_t py, std::size_t overlap)
    : layout_(layout), overlap_(overlap), multiplicity_(layout.size(), 0.0) {
  if (layout.ny == 1) py = 1;
  if (px == 0 || py == 0 || px > layout.nx || py > layout.ny) {
    throw ConfigError("cannot split a " + std::to_string(layout.nx) + "x" + std::to_string(layout.ny) + " grid into " +
                      std::to_string(px) + "x" + std::to_string(py) + " subdomains");
  }
  const auto xc = split(layout.nx, px), yc = split(layout.ny, py);
  for (std::size_t q = 0; q < py; ++q) {
    for (std::size_t p = 0; p < px; ++p) {
      Subdomain d;
      d.owned = {xc[p], xc[p + 1], yc[q], yc[q + 1]};
      d.overlap.i0 = d.owned.i0 >= overlap ? d.owned.i0 - overlap : 0;
      d.overlap.i1 = std::min(layout.nx, d.owned.i1 + overlap);
      d.overlap.j0 = d.owned.j0 >= overlap ? d.owned.j0 - overlap : 0;
      d.overlap.j1 = std::min(layout.ny, d.owned.j1 + overlap);
      d.local_layout = Layout{d.overlap.width(), d.overlap.height(), layout.dof};
      for (std::size_t j = d.overlap.j0; j < d.overlap.j1; ++j) {
        for (std::size_t i = d.overlap.i0; i < d.overlap.i1; ++i) {
          for (std::size_t f = 0; f < layout.dof; ++f) {
            if (d.owned.contains(i, j)) d.owned_local.push_back(d.dofs.size());
            d.dofs.push_back(layout.index(i, j, f));
          }
        }
      }
      for (std::size_t g : d.dofs) multiplicity_[g] += 1.0;
      domains_.push_back(std::move(d));
    }
  }
}

Vector SubdomainDecomposition::restrict_to(std::size_t b, const Vector& global) const {
  const Subdomain& d = domains_[b];
  Vector local(d.local_layout);
  for (std::size_t k = 0; k < d.dofs.size(); ++k) local[k] = global[d.dofs[k]];
  return local;
}

void SubdomainDecomposition::scatter(std::size_t b, const Vector& local, Vector& global) const {
  const Subdomain& d = domains_[b];
  for (std::size_t k = 0; k < d.dofs.size(); ++k) global[d.dofs[k]] = local[k];
}

void SubdomainDecomposition::add_owned(std::size_t b, const Vector& local, Vector& global, double scale) const {
  const Subdomain& d = domains_[b];
  for (std::size_t k : d.owned_local) global[d.dofs[k]] += scale * local[k];
}

void SubdomainDecomposition::add_averaged(std::size_t b, const Vector& local, Vector& global, double scale) const {
  const Subdomain& d = domains_[b];
  for (std::size_t k = 0; k < d.dofs.size(); ++k) {
    global[d.dofs[k]] += scale * local[k] / multiplicity_[d.dofs[k]];
  }
}

SubdomainProblem::SubdomainProblem(ProblemPtr global, const SubdomainDecomposition& dd, std::size_t b,
                                   const Vector& frozen)
    : global_(std::move(global)), dd_(dd), domain_(dd[b]), index_(b), state_(frozen), fglobal_(frozen.layout()) {
  if (const Vector* gb = global_->rhs()) b_ = dd_.restrict_to(index_, *gb);
}

void SubdomainProblem::apply(const Vector& x, Vector& f) const {
  dd_.scatter(index_, x, state_);
  global_->apply(state_, fglobal_);
  f = dd_.restrict_to(index_, fglobal_);
}

SparseMatrix SubdomainProblem::jacobian(const Vector& x) const {
  dd_.scatter(index_, x, state_);
  return global_->jacobian(state_).submatrix(domain_.dofs);
}

Vector SubdomainProblem::initial_guess() const { return dd_.restrict_to(index_, state_); }

LinearAsm::LinearAsm(const SparseMatrix& a, Layout layout, std::size_t px, std::size_t py, std::size_t overlap)
    : dd_(layout, px, py, overlap) {
  factors_.reserve(dd_.size());
  for (std::size_t b = 0; b < dd_.size(); ++b) factors_.emplace_back(a.submatrix(dd_[b].dofs));
}

void LinearAsm::apply(const Vector& in, Vector& out) const {
  out = Vector(in.layout());
  for (std::size_t b = 0; b < dd_.size(); ++b) {
    Vector local = dd_.restrict_to(b, in);
    factors_[b].solve_in_place(local.data());
    dd_.add_owned(b, local, out);
  }
}

}  // namespace nlc
