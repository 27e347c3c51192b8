#include "qclust/serialize.hpp"

#include <stdexcept>

namespace qclust {

Json to_json(const QLaurent& f) {
  Json out = Json::array();
  f.for_each_term([&](int e, const Integer& c) { out.push_back({{"e", e}, {"c", c.str()}}); });
  return out;
}

QLaurent qlaurent_from_json(const Json& j) {
  QLaurent f;
  for (const auto& t : j) f += QLaurent::monomial(t.at("e").get<int>(), Integer(t.at("c").get<std::string>()));
  return f;
}

Json to_json(const TorusElement& x) {
  Json terms = Json::array();
  for (const auto& [u, c] : x.terms()) terms.push_back({{"a", u.a}, {"b", u.b}, {"coef", to_json(c)}});
  return {{"terms", terms}};
}

TorusElement torus_from_json(const Json& j) {
  std::vector<TorusElement::Term> terms;
  for (const auto& t : j.at("terms"))
    terms.emplace_back(ExponentPair{t.at("a").get<int>(), t.at("b").get<int>()}, qlaurent_from_json(t.at("coef")));
  return TorusElement::from_terms(std::move(terms));
}

Json to_json(const BasisLabel& l) {
  Json out = {{"text", to_string(l)}};
  switch (l.kind) {
    case BasisLabel::Kind::One:
      out["kind"] = "one";
      break;
    case BasisLabel::Kind::Cluster:
      out["kind"] = "cluster";
      out["m"] = l.m;
      out["a"] = l.a;
      out["b"] = l.b;
      break;
    case BasisLabel::Kind::F:
      out["kind"] = "F";
      out["n"] = l.n;
      break;
    case BasisLabel::Kind::S:
      out["kind"] = "S";
      out["n"] = l.n;
      break;
    case BasisLabel::Kind::DeltaPow:
      out["kind"] = "delta";
      out["n"] = l.n;
      break;
  }
  return out;
}

BasisLabel label_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "one") return BasisLabel::one();
  if (kind == "cluster") return BasisLabel::cluster(j.at("m").get<int>(), j.at("a").get<int>(), j.at("b").get<int>());
  const int n = j.at("n").get<int>();
  if (kind == "F") return BasisLabel::f(n);
  if (kind == "S") return BasisLabel::s(n);
  if (kind == "delta") return BasisLabel::delta_pow(n);
  throw std::invalid_argument("unknown label kind '" + kind + "'");
}

Json to_json(const FormalCombination& c) {
  Json out = Json::array();
  for (const auto& [l, coef] : c.terms()) out.push_back({{"label", to_json(l)}, {"coef", to_json(coef)}});
  return out;
}

FormalCombination combination_from_json(const Json& j) {
  FormalCombination c;
  for (const auto& t : j) c.add(label_from_json(t.at("label")), qlaurent_from_json(t.at("coef")));
  return c;
}

Json to_json(const EExpansion& e) {
  Json out = Json::array();
  for (const auto& [u, c] : e.terms()) out.push_back({{"a", u.a}, {"b", u.b}, {"coef", to_json(c)}});
  return out;
}

EExpansion eexpansion_from_json(const Json& j) {
  EExpansion e;
  for (const auto& t : j) e.add({t.at("a").get<int>(), t.at("b").get<int>()}, qlaurent_from_json(t.at("coef")));
  return e;
}

Json to_json(const Report& r) {
  Json out = Json::array();
  for (const auto& e : r.entries) {
    Json j = {{"case", e.check}, {"m", e.m},           {"n", e.n},
              {"frame", e.frame}, {"status", e.pass ? "pass" : "fail"}, {"diff", to_json(e.diff)}};
    if (!e.detail.empty()) j["detail"] = e.detail;
    out.push_back(std::move(j));
  }
  return out;
}

Report report_from_json(const Json& j) {
  Report r;
  for (const auto& t : j) {
    ReportEntry e = ReportEntry::make(t.at("case").get<std::string>(), t.at("m").get<int>(), t.at("n").get<int>(),
                                      t.at("frame").get<int>());
    e.pass = t.at("status").get<std::string>() == "pass";
    e.diff = torus_from_json(t.at("diff"));
    if (t.contains("detail")) e.detail = t.at("detail").get<std::string>();
    r.add(std::move(e));
  }
  return r;
}

}  // namespace qclust
