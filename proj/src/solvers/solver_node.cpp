#include "nlc/solvers/solver_node.hpp"

#include <charconv>

#include "nlc/core/problem.hpp"

namespace nlc {

namespace {
constexpr std::pair<SolverKind, const char*> kKinds[] = {
    {SolverKind::newton, "newton"}, {SolverKind::nrich, "nrich"},   {SolverKind::anderson, "anderson"},
    {SolverKind::ngmres, "ngmres"}, {SolverKind::qn, "qn"},         {SolverKind::ncg, "ncg"},
    {SolverKind::fas, "fas"},       {SolverKind::nasm, "nasm"},     {SolverKind::ras, "ras"},
    {SolverKind::gsn, "gsn"},       {SolverKind::composite, "composite"},
};
constexpr std::pair<LinearPcKind, const char*> kPcs[] = {
    {LinearPcKind::lu, "lu"},     {LinearPcKind::sor, "sor"}, {LinearPcKind::jacobi, "jacobi"},
    {LinearPcKind::none, "none"}, {LinearPcKind::mg, "mg"},   {LinearPcKind::asm_, "asm"},
};

std::string fmt_num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool same_ptr(const std::shared_ptr<SolverNode>& a, const std::shared_ptr<SolverNode>& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

class ArgList {
 public:
  template <class T>
  void num(const char* key, const std::optional<T>& v) {
    if (v) add(std::string(key) + "=" + fmt_num(static_cast<double>(*v)));
  }
  void str(const char* key, const std::optional<std::string>& v) {
    if (v) add(std::string(key) + "=" + *v);
  }
  void flag(const char* key, const std::optional<bool>& v) {
    if (v) add(std::string(key) + "=" + (*v ? "true" : "false"));
  }
  void node(const char* key, const std::shared_ptr<SolverNode>& n) {
    if (n) add(std::string(key) + "=" + to_string(*n));
  }
  void add(std::string s) { args_.push_back(std::move(s)); }
  std::string wrap(const std::string& head) const {
    if (args_.empty()) return head;
    std::string out = head + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) out += ",";
      out += args_[i];
    }
    return out + ")";
  }

 private:
  std::vector<std::string> args_;
};

std::string pc_to_string(const LinearPcSpec& pc) {
  ArgList a;
  a.num("levels", pc.levels);
  a.str("smoother", pc.smoother);
  a.num("overlap", pc.overlap);
  a.num("px", pc.px);
  a.num("py", pc.py);
  a.num("omega", pc.omega);
  return a.wrap(to_string(pc.kind));
}
}  // namespace

const char* to_string(SolverKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<SolverKind> solver_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kKinds) {
    if (name == n) return k;
  }
  return std::nullopt;
}

const char* to_string(LinearPcKind kind) {
  for (const auto& [k, name] : kPcs) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<LinearPcKind> linear_pc_from_string(const std::string& name) {
  for (const auto& [k, n] : kPcs) {
    if (name == n) return k;
  }
  return std::nullopt;
}

SolverNode make_node(SolverKind kind) {
  SolverNode n;
  n.kind = kind;
  return n;
}

bool operator==(const SolverNode& a, const SolverNode& b) {
  return a.kind == b.kind && a.rtol == b.rtol && a.atol == b.atol && a.stol == b.stol && a.divtol == b.divtol &&
         a.max_it == b.max_it && a.ls == b.ls && a.damping == b.damping && a.ls_its == b.ls_its &&
         a.ls_order == b.ls_order && a.ls_unpreconditioned == b.ls_unpreconditioned && a.lpc == b.lpc &&
         a.ksp_rtol == b.ksp_rtol && a.ksp_max_it == b.ksp_max_it && a.m == b.m && a.levels == b.levels &&
         a.sweeps == b.sweeps && a.max_block_it == b.max_block_it && a.overlap == b.overlap && a.px == b.px &&
         a.py == b.py && a.type == b.type && a.weights == b.weights && a.allow_unsym == b.allow_unsym &&
         same_ptr(a.lp, b.lp) && same_ptr(a.rp, b.rp) && same_ptr(a.sub, b.sub) &&
         same_ptr(a.smoother, b.smoother) && same_ptr(a.coarse, b.coarse) && a.children == b.children;
}

std::string to_string(const SolverNode& n) {
  ArgList a;
  if (n.kind == SolverKind::composite) {
    a.str("type", n.type);
    for (const auto& child : n.children) a.add(to_string(child));
  }
  a.node("lp", n.lp);
  a.node("rp", n.rp);
  if (n.lpc) a.add("lpc=" + pc_to_string(*n.lpc));
  if (n.ls) a.add(std::string("ls=") + to_string(*n.ls));
  a.num("damping", n.damping);
  a.num("ls_its", n.ls_its);
  a.num("ls_order", n.ls_order);
  a.flag("ls_unpreconditioned", n.ls_unpreconditioned);
  a.node("sub", n.sub);
  a.node("smoother", n.smoother);
  a.node("coarse", n.coarse);
  a.num("m", n.m);
  a.num("levels", n.levels);
  a.num("sweeps", n.sweeps);
  a.num("max_block_it", n.max_block_it);
  a.num("overlap", n.overlap);
  a.num("px", n.px);
  a.num("py", n.py);
  if (!n.weights.empty()) {
    std::string w = "weights=\"";
    for (std::size_t i = 0; i < n.weights.size(); ++i) {
      if (i) w += " ";
      w += fmt_num(n.weights[i]);
    }
    a.add(w + "\"");
  }
  a.flag("allow_unsym", n.allow_unsym);
  a.num("max_it", n.max_it);
  a.num("rtol", n.rtol);
  a.num("atol", n.atol);
  a.num("stol", n.stol);
  a.num("divtol", n.divtol);
  a.num("ksp_rtol", n.ksp_rtol);
  a.num("ksp_max_it", n.ksp_max_it);
  return a.wrap(to_string(n.kind));
}

void SolverNode::validate() const {
  auto fail = [this](const std::string& what) {
    throw ConfigError(std::string(to_string(kind)) + ": " + what);
  };
  if (lp && rp) fail("at most one of lp and rp may be set");
  if (rtol && *rtol < 0) fail("rtol must be >= 0");
  if (atol && *atol < 0) fail("atol must be >= 0");
  if (stol && *stol < 0) fail("stol must be >= 0");
  if (divtol && *divtol <= 1) fail("divtol must be > 1");
  if (max_it && *max_it < 0) fail("max_it must be >= 0");
  if (m && *m < 1) fail("m must be >= 1");
  if (levels && *levels < 1) fail("levels must be >= 1");
  if (sweeps && *sweeps < 1) fail("sweeps must be >= 1");
  if (max_block_it && *max_block_it < 1) fail("max_block_it must be >= 1");
  if (overlap && *overlap < 0) fail("overlap must be >= 0");
  if ((px && *px < 1) || (py && *py < 1)) fail("px and py must be >= 1");
  if (ls_its && *ls_its < 1) fail("ls_its must be >= 1");
  if (ls_order && *ls_order != 1 && *ls_order != 2) fail("ls_order must be 1 or 2");
  if (damping && *damping < 0) fail("damping must be >= 0");
  if (ksp_rtol && (*ksp_rtol <= 0 || *ksp_rtol >= 1)) fail("ksp_rtol must lie in (0,1)");
  if (ksp_max_it && *ksp_max_it < 1) fail("ksp_max_it must be >= 1");
  if (rp && (kind == SolverKind::ncg || kind == SolverKind::qn)) {
    fail("right preconditioning is not applicable to this solver");
  }
  if (rp && kind != SolverKind::newton && kind != SolverKind::anderson && kind != SolverKind::ngmres &&
      kind != SolverKind::nrich) {
    fail("right preconditioning requires newton, anderson, ngmres or nrich");
  }
  if (lp && kind != SolverKind::newton && kind != SolverKind::nrich && kind != SolverKind::qn &&
      kind != SolverKind::ncg && kind != SolverKind::anderson && kind != SolverKind::ngmres) {
    fail("left preconditioning requires newton, nrich, qn, ncg, anderson or ngmres");
  }
  if (lp && kind == SolverKind::newton && lp->kind != SolverKind::nasm && lp->kind != SolverKind::ras) {
    fail("left-preconditioned newton requires lp=nasm or lp=ras (ASPIN)");
  }
  if (kind == SolverKind::composite) {
    if (children.size() < 2) fail("composite needs at least two child solvers");
    if (type && *type != "additive" && *type != "multiplicative") fail("type must be additive or multiplicative");
    if (!weights.empty() && weights.size() != children.size()) fail("weights length must match the children");
  } else {
    if (!children.empty()) fail("positional solver arguments are only allowed in composite");
    if (type) fail("key 'type' is only valid for composite");
  }
  if (lpc) {
    if (lpc->smoother && *lpc->smoother != "sor" && *lpc->smoother != "gs") fail("mg smoother must be sor or gs");
    if (lpc->levels && *lpc->levels < 1) fail("mg levels must be >= 1");
    if (lpc->overlap && *lpc->overlap < 0) fail("asm overlap must be >= 0");
  }
  for (const auto* child : {&lp, &rp, &sub, &smoother, &coarse}) {
    if (*child) (*child)->validate();
  }
  for (const auto& c : children) c.validate();
}

}  // namespace nlc
