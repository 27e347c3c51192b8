#include "qclust/labels.hpp"

#include "qclust/errors.hpp"

#include <regex>
#include <sstream>

namespace qclust {

BasisLabel BasisLabel::cluster(int m, int a, int b) {
  if (a < 0 || b < 0) throw DomainError("cluster monomial exponents must be nonnegative");
  if (a == 0 && b == 0) return one();
  BasisLabel l;
  l.kind = Kind::Cluster;
  if (a == 0) {
    l.m = m + 1;
    l.a = b;
  } else {
    l.m = m;
    l.a = a;
    l.b = b;
  }
  return l;
}

namespace {

BasisLabel family(BasisLabel::Kind kind, int n) {
  if (n < 0) throw DomainError("family index must be nonnegative");
  if (n == 0) return BasisLabel::one();
  BasisLabel l;
  l.kind = kind;
  l.n = n;
  return l;
}

std::string power_text(int m, int e) {
  std::string s = "X[" + std::to_string(m) + "]";
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace

BasisLabel BasisLabel::f(int n) { return family(Kind::F, n); }
BasisLabel BasisLabel::s(int n) { return family(Kind::S, n); }
BasisLabel BasisLabel::delta_pow(int n) { return family(Kind::DeltaPow, n); }

std::string to_string(const BasisLabel& l) {
  switch (l.kind) {
    case BasisLabel::Kind::One:
      return "1";
    case BasisLabel::Kind::Cluster: {
      std::string s = power_text(l.m, l.a);
      if (l.b > 0) s += "*" + power_text(l.m + 1, l.b);
      return s;
    }
    case BasisLabel::Kind::F:
      return "F[" + std::to_string(l.n) + "]";
    case BasisLabel::Kind::S:
      return "S[" + std::to_string(l.n) + "]";
    case BasisLabel::Kind::DeltaPow:
      return "delta^" + std::to_string(l.n);
  }
  return "?";
}

BasisLabel parse_label(std::string_view text) {
  static const std::regex one_re(R"(\s*1\s*)");
  static const std::regex fam_re(R"(\s*([FS])\[(-?\d+)\]\s*)");
  static const std::regex delta_re(R"(\s*delta(?:\^(\d+))?\s*)");
  static const std::regex cl_re(R"(\s*X\[(-?\d+)\](?:\^(\d+))?(?:\s*\*\s*X\[(-?\d+)\](?:\^(\d+))?)?\s*)");
  std::string s(text);
  std::smatch mt;
  if (std::regex_match(s, one_re)) return BasisLabel::one();
  if (std::regex_match(s, mt, fam_re)) {
    int n = std::stoi(mt[2]);
    return mt[1] == "F" ? BasisLabel::f(n) : BasisLabel::s(n);
  }
  if (std::regex_match(s, mt, delta_re)) return BasisLabel::delta_pow(mt[1].matched ? std::stoi(mt[1]) : 1);
  if (std::regex_match(s, mt, cl_re)) {
    int m = std::stoi(mt[1]);
    int a = mt[2].matched ? std::stoi(mt[2]) : 1;
    if (!mt[3].matched) return BasisLabel::cluster(m, a, 0);
    if (std::stoi(mt[3]) != m + 1) throw std::invalid_argument("cluster monomial needs consecutive indices: " + s);
    return BasisLabel::cluster(m, a, mt[4].matched ? std::stoi(mt[4]) : 1);
  }
  throw std::invalid_argument("cannot parse basis label '" + s + "'");
}

void FormalCombination::add(const BasisLabel& label, const QLaurent& coef) {
  if (coef.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(label, coef);
  if (!fresh) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QLaurent FormalCombination::coeff(const BasisLabel& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? QLaurent() : it->second;
}

FormalCombination& FormalCombination::operator+=(const FormalCombination& other) {
  for (const auto& [l, c] : other.terms_) add(l, c);
  return *this;
}

FormalCombination& FormalCombination::operator-=(const FormalCombination& other) {
  for (const auto& [l, c] : other.terms_) add(l, -c);
  return *this;
}

bool is_positive(const FormalCombination& c) {
  for (const auto& [l, f] : c.terms())
    if (!is_positive(f)) return false;
  return true;
}

std::string to_string(const FormalCombination& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [label, coef] : c.terms()) {
    const bool unit_label = label.kind == BasisLabel::Kind::One;
    if (coef.term_count() == 1) {
      bool neg = coef.coeff(coef.min_exp()) < 0;
      QLaurent mag = neg ? -coef : coef;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (unit_label)
        os << to_string(mag);
      else if (mag.is_one())
        os << to_string(label);
      else
        os << to_string(mag) << "*" << to_string(label);
    } else {
      os << (first ? "" : " + ") << "(" << to_string(coef) << ")";
      if (!unit_label) os << "*" << to_string(label);
    }
    first = false;
  }
  return os.str();
}

}  // namespace qclust
