#include "nlc/cli/spec_parser.hpp"

#include <cctype>
#include <charconv>

namespace nlc {

SpecError::SpecError(std::size_t position, const std::string& message)
    : ConfigError("solver spec error at position " + std::to_string(position) + ": " + message),
      position_(position),
      message_(message) {}

std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  SpecCall parse() {
    skip_ws();
    SpecCall call = solver();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "' after the solver");
    return call;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SpecError(pos_ + 1, what); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but the input ended");
    if (s_[pos_] != c) fail(std::string("expected '") + c + "' but found '" + s_[pos_] + "'");
    ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected an identifier but the input ended");
    if (!ident_start(s_[pos_])) fail("expected an identifier but found '" + std::string(1, s_[pos_]) + "'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  SpecCall solver() {
    skip_ws();
    SpecCall call;
    call.position = pos_ + 1;
    call.name = ident();
    if (peek('(')) {
      ++pos_;
      call.has_parens = true;
      call.args.push_back(arg());
      while (peek(',')) {
        ++pos_;
        call.args.push_back(arg());
      }
      expect(')');
    }
    return call;
  }

  SpecArg arg() {
    skip_ws();
    SpecArg a;
    a.position = pos_ + 1;
    const std::size_t save = pos_;
    std::string name = ident();
    if (peek('=')) {
      ++pos_;
      a.key = std::move(name);
      a.value = value();
      return a;
    }
    pos_ = save;
    a.value.kind = SpecValue::Kind::call;
    a.value.position = pos_ + 1;
    a.value.call.push_back(solver());
    return a;
  }

  SpecValue value() {
    skip_ws();
    SpecValue v;
    v.position = pos_ + 1;
    if (pos_ >= s_.size()) fail("expected a value but the input ended");
    const char c = s_[pos_];
    if (c == '"') {
      const std::size_t start = ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
      if (pos_ >= s_.size()) fail("unterminated string");
      v.kind = SpecValue::Kind::string;
      v.text = s_.substr(start, pos_ - start);
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      const std::size_t start = pos_;
      const char* first = s_.data() + pos_ + (c == '+' ? 1 : 0);
      auto res = std::from_chars(first, s_.data() + s_.size(), v.number);
      if (res.ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(res.ptr - s_.data());
      v.kind = SpecValue::Kind::number;
      v.text = s_.substr(start, pos_ - start);
      return v;
    }
    if (ident_start(c)) {
      const std::size_t save = pos_;
      std::string name = ident();
      if (peek('(')) {
        pos_ = save;
        v.kind = SpecValue::Kind::call;
        v.call.push_back(solver());
        return v;
      }
      v.kind = SpecValue::Kind::ident;
      v.text = std::move(name);
      return v;
    }
    fail("expected a value but found '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

SpecCall parse_spec(const std::string& text) { return Parser(text).parse(); }

}  // namespace nlc
