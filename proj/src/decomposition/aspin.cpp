#include "nlc/decomposition/aspin.hpp"

#include <stdexcept>

namespace nlc {

LinearOperator aspin_operator(const NasmSolver& nasm, const SparseMatrix& jacobian) {
  if (!nasm.cached_point()) throw std::logic_error("aspin: no cached subdomain factors");
  return [&nasm, &jacobian](const Vector& v, Vector& out) {
    const SubdomainDecomposition& dd = nasm.decomposition();
    const Vector w = jacobian.multiply(v);
    out = Vector(v.layout());
    for (std::size_t b = 0; b < dd.size(); ++b) {
      const auto& factor = nasm.cached_factors()[b];
      if (!factor) continue;
      Vector local = dd.restrict_to(b, w);
      factor->solve_in_place(local.data());
      nasm.inject(b, local, out);
    }
  };
}

LinearOperator aspin_operator(const NasmSolver& nasm) {
  if (!nasm.cached_point()) throw std::logic_error("aspin: no cached subdomain factors");
  return [&nasm](const Vector& v, Vector& out) {
    const SubdomainDecomposition& dd = nasm.decomposition();
    out = Vector(v.layout());
    for (std::size_t b = 0; b < dd.size(); ++b) {
      const auto& factor = nasm.cached_factors()[b];
      if (!factor) continue;
      Vector local = dd.restrict_to(b, nasm.cached_jacobians()[b]->multiply(v));
      factor->solve_in_place(local.data());
      nasm.inject(b, local, out);
    }
  };
}

}  // namespace nlc
