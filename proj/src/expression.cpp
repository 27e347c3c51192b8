#include "qclust/expression.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace qclust {

namespace {

class Parser {
 public:
  Parser(std::string_view text, Frame frame) : s_(text), frame_(frame) {}

  TorusElement parse() {
    TorusElement r = factor();
    while (skip(), eat('*')) r = r * factor();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  std::string_view s_;
  Frame frame_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  void expect(char c) {
    skip();
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(s_[pos_ - 1]))) fail("expected an integer");
    try {
      return std::stoi(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  int bracketed() {
    expect('[');
    const int v = integer();
    expect(']');
    return v;
  }

  // exponent of q, in halves
  int q_exponent() {
    skip();
    if (!eat('^')) return 2;
    skip();
    if (eat('(')) {
      const int e = integer();
      skip();
      if (eat('/')) {
        if (integer() != 2) fail("q exponents are halves: q^(e/2)");
        expect(')');
        return e;
      }
      expect(')');
      return 2 * e;
    }
    return 2 * integer();
  }

  TorusElement atom() {
    skip();
    if (eat_word("X")) return cluster_var(bracketed(), frame_);
    if (eat_word("F")) return chebyshev(ChebyshevKind::F, bracketed(), frame_);
    if (eat_word("S")) return chebyshev(ChebyshevKind::S, bracketed(), frame_);
    if (eat_word("delta")) return x_delta(frame_);
    if (eat_word("q")) return TorusElement(QLaurent::monomial(q_exponent()));
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-'))
      return TorusElement(QLaurent(integer()));
    fail("expected X[m], F[n], S[n], delta, q or an integer");
  }

  TorusElement factor() {
    TorusElement base = atom();
    skip();
    // q^... already consumed its exponent
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      const int k = integer();
      if (k < 0) fail("negative powers are not supported");
      return power(base, k);
    }
    return base;
  }
};

}  // namespace

TorusElement evaluate_expression(std::string_view text, Frame frame) { return Parser(text, frame).parse(); }

}  // namespace qclust
