#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "nlc/cli/spec_parser.hpp"

namespace nlc {

namespace {

const std::vector<std::string> kSolverNames = {"newton", "nrich", "anderson", "ngmres", "qn",       "ncg",
                                               "fas",    "nasm",  "ras",      "gsn",    "composite"};
const std::vector<std::string> kKeys = {
    "lp",     "rp",     "ls",        "lpc",      "sub",          "smoother", "coarse",
    "type",   "m",      "levels",    "sweeps",   "overlap",      "max_it",   "rtol",
    "atol",   "ksp_rtol", "damping", "max_block_it", "px",       "py",       "weights",
    "ksp_max_it", "ls_its", "ls_order", "ls_unpreconditioned", "allow_unsym", "stol", "divtol"};
const std::vector<std::string> kPcNames = {"lu", "sor", "jacobi", "none", "mg", "asm"};
const std::vector<std::string> kPcKeys = {"levels", "smoother", "overlap", "px", "py", "omega"};
const std::vector<std::string> kLineSearches = {"bt", "cp", "l2", "basic", "none"};

std::string suggestion(const std::string& word, const std::vector<std::string>& options) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& o : options) {
    const std::size_t d = levenshtein(word, o);
    if (d < best_d) {
      best_d = d;
      best = o;
    }
  }
  if (best_d <= std::max<std::size_t>(2, word.size() / 2)) return "; did you mean '" + best + "'?";
  return "";
}

[[noreturn]] void type_error(const SpecArg& a, const std::string& expected) {
  throw SpecError(a.value.position, "key '" + a.key + "' expects " + expected);
}

double real_value(const SpecArg& a) {
  if (a.value.kind != SpecValue::Kind::number) type_error(a, "a number");
  return a.value.number;
}

int int_value(const SpecArg& a) {
  const double v = real_value(a);
  if (v != std::floor(v) || std::abs(v) > 1e9) type_error(a, "an integer");
  return static_cast<int>(v);
}

bool bool_value(const SpecArg& a) {
  if (a.value.kind == SpecValue::Kind::ident && (a.value.text == "true" || a.value.text == "false")) {
    return a.value.text == "true";
  }
  if (a.value.kind == SpecValue::Kind::number && (a.value.number == 0.0 || a.value.number == 1.0)) {
    return a.value.number == 1.0;
  }
  type_error(a, "true or false");
}

std::string ident_value(const SpecArg& a, const std::vector<std::string>& allowed) {
  if (a.value.kind != SpecValue::Kind::ident) type_error(a, "one of its named values");
  for (const auto& s : allowed) {
    if (a.value.text == s) return s;
  }
  std::string list;
  for (const auto& s : allowed) list += (list.empty() ? "" : ", ") + s;
  throw SpecError(a.value.position, "key '" + a.key + "' does not accept '" + a.value.text + "' (expected " + list +
                                        ")" + suggestion(a.value.text, allowed));
}

SolverNode compile_call(const SpecCall& call);

std::shared_ptr<SolverNode> solver_value(const SpecArg& a) {
  if (a.value.kind == SpecValue::Kind::call) return std::make_shared<SolverNode>(compile_call(a.value.call.front()));
  if (a.value.kind == SpecValue::Kind::ident) {
    SpecCall bare;
    bare.name = a.value.text;
    bare.position = a.value.position;
    return std::make_shared<SolverNode>(compile_call(bare));
  }
  type_error(a, "a solver");
}

LinearPcSpec compile_pc(const SpecArg& a) {
  SpecCall call;
  if (a.value.kind == SpecValue::Kind::ident) {
    call.name = a.value.text;
    call.position = a.value.position;
  } else if (a.value.kind == SpecValue::Kind::call) {
    call = a.value.call.front();
  } else {
    type_error(a, "a linear preconditioner (lu, sor, jacobi, none, mg(...), asm(...))");
  }
  auto kind = linear_pc_from_string(call.name);
  if (!kind) {
    throw SpecError(call.position, "unknown linear preconditioner '" + call.name + "'" + suggestion(call.name, kPcNames));
  }
  LinearPcSpec pc;
  pc.kind = *kind;
  for (const SpecArg& arg : call.args) {
    if (arg.key.empty()) throw SpecError(arg.position, "linear preconditioner arguments must be key=value");
    if (arg.key == "levels") {
      pc.levels = int_value(arg);
    } else if (arg.key == "smoother") {
      pc.smoother = ident_value(arg, {"sor", "gs"});
    } else if (arg.key == "overlap") {
      pc.overlap = int_value(arg);
    } else if (arg.key == "px") {
      pc.px = int_value(arg);
    } else if (arg.key == "py") {
      pc.py = int_value(arg);
    } else if (arg.key == "omega") {
      pc.omega = real_value(arg);
    } else {
      throw SpecError(arg.position, "unknown linear preconditioner key '" + arg.key + "'" + suggestion(arg.key, kPcKeys));
    }
  }
  return pc;
}

std::vector<double> weights_value(const SpecArg& a) {
  if (a.value.kind == SpecValue::Kind::number) return {a.value.number};
  if (a.value.kind != SpecValue::Kind::string) type_error(a, "a quoted list of numbers");
  std::string text = a.value.text;
  for (char& c : text) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) type_error(a, "a quoted list of numbers");
    out.push_back(v);
  }
  if (out.empty()) type_error(a, "a quoted list of numbers");
  return out;
}

SolverNode compile_call(const SpecCall& call) {
  auto kind = solver_kind_from_string(call.name);
  if (!kind) {
    throw SpecError(call.position, "unknown solver '" + call.name + "'" + suggestion(call.name, kSolverNames));
  }
  SolverNode n = make_node(*kind);
  std::vector<std::string> seen;
  for (const SpecArg& a : call.args) {
    if (a.key.empty()) {
      if (*kind != SolverKind::composite) {
        throw SpecError(a.position, "positional solver arguments are only allowed in composite");
      }
      n.children.push_back(compile_call(a.value.call.front()));
      continue;
    }
    for (const auto& s : seen) {
      if (s == a.key) throw SpecError(a.position, "key '" + a.key + "' given twice");
    }
    seen.push_back(a.key);
    const std::string& k = a.key;
    if (k == "lp") n.lp = solver_value(a);
    else if (k == "rp") n.rp = solver_value(a);
    else if (k == "sub") n.sub = solver_value(a);
    else if (k == "smoother") n.smoother = solver_value(a);
    else if (k == "coarse") n.coarse = solver_value(a);
    else if (k == "ls") n.ls = line_search_from_string(ident_value(a, kLineSearches));
    else if (k == "lpc") n.lpc = compile_pc(a);
    else if (k == "type") n.type = ident_value(a, {"additive", "multiplicative"});
    else if (k == "m") n.m = int_value(a);
    else if (k == "levels") n.levels = int_value(a);
    else if (k == "sweeps") n.sweeps = int_value(a);
    else if (k == "overlap") n.overlap = int_value(a);
    else if (k == "max_it") n.max_it = int_value(a);
    else if (k == "max_block_it") n.max_block_it = int_value(a);
    else if (k == "px") n.px = int_value(a);
    else if (k == "py") n.py = int_value(a);
    else if (k == "ksp_max_it") n.ksp_max_it = int_value(a);
    else if (k == "ls_its") n.ls_its = int_value(a);
    else if (k == "ls_order") n.ls_order = int_value(a);
    else if (k == "rtol") n.rtol = real_value(a);
    else if (k == "atol") n.atol = real_value(a);
    else if (k == "stol") n.stol = real_value(a);
    else if (k == "divtol") n.divtol = real_value(a);
    else if (k == "ksp_rtol") n.ksp_rtol = real_value(a);
    else if (k == "damping") n.damping = real_value(a);
    else if (k == "ls_unpreconditioned") n.ls_unpreconditioned = bool_value(a);
    else if (k == "allow_unsym") n.allow_unsym = bool_value(a);
    else if (k == "weights") n.weights = weights_value(a);
    else throw SpecError(a.position, "unknown key '" + k + "'" + suggestion(k, kKeys));
  }
  try {
    n.validate();
  } catch (const SpecError&) {
    throw;
  } catch (const ConfigError& e) {
    throw SpecError(call.position, e.what());
  }
  return n;
}

}  // namespace

SolverNode compile_spec(const SpecCall& call) { return compile_call(call); }

SolverNode parse_solver(const std::string& text) { return compile_spec(parse_spec(text)); }

}  // namespace nlc
