#include "doctest.h"
#include "support.hpp"

#include "qclust/bases.hpp"
#include "qclust/expression.hpp"
#include "qclust/serialize.hpp"

#include <stdexcept>

using namespace qtest;
using namespace qclust;

namespace {

const Frame f1{1}, f2{2};

template <class T, class F>
void round_trip(const T& x, F from_json) {
  const Json j = to_json(x);
  CHECK(from_json(j) == x);
  CHECK(from_json(Json::parse(j.dump())) == x);
}

}  // namespace

TEST_CASE("json round trips") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    round_trip(random_qlaurent(rng), qlaurent_from_json);
    round_trip(random_torus(rng), torus_from_json);
  }
  // coefficients beyond 64 bits stay exact
  QLaurent big = QLaurent::monomial(-3, Integer("123456789012345678901234567890"));
  round_trip(big, qlaurent_from_json);
  round_trip(cluster_var(-9, f2), torus_from_json);

  for (const BasisLabel& l : {BasisLabel::one(), BasisLabel::cluster(-3, 2, 1), BasisLabel::var(5, 3), BasisLabel::f(4),
                              BasisLabel::s(2), BasisLabel::delta_pow(3)})
    round_trip(l, label_from_json);

  FormalCombination c;
  c.add(BasisLabel::var(4, 2), q(2));
  c.add(BasisLabel::f(1), q(-1) + q(1));
  c.add(BasisLabel::one(), QLaurent(-3));
  round_trip(c, combination_from_json);

  EExpansion e;
  e.add({-2, -4}, QLaurent(1));
  e.add({1, 0}, q(-3, 2));
  round_trip(e, eexpansion_from_json);

  Report r;
  ReportEntry ok = ReportEntry::make("commute", 3, 0, 1);
  ok.pass = true;
  r.add(ok);
  ReportEntry bad = ReportEntry::make("exchange", -2, 4, 2);
  bad.diff = mono(1, -1, q(3));
  bad.detail = "note";
  r.add(bad);
  const Report back = report_from_json(to_json(r));
  REQUIRE(back.entries.size() == 2);
  CHECK(back.summary() == r.summary());
  CHECK(back.entries[1].diff == bad.diff);
  CHECK(back.entries[0].pass);
  CHECK(to_json(back) == to_json(r));
}

TEST_CASE("json layout") {
  const Json j = to_json(mono(-1, 4) + mono(-1, 0, q(1, -2)));
  CHECK(j.dump() ==
        R"({"terms":[{"a":-1,"b":0,"coef":[{"e":1,"c":"-2"}]},{"a":-1,"b":4,"coef":[{"e":0,"c":"1"}]}]})");
  CHECK(to_json(BasisLabel::cluster(2, 1, 1)).dump() == R"({"text":"X[2]*X[3]","kind":"cluster","m":2,"a":1,"b":1})");
  CHECK_THROWS_AS(label_from_json(Json::parse(R"({"kind":"G","n":1})")), std::invalid_argument);
}

TEST_CASE("expressions") {
  CHECK(evaluate_expression("X[3]", f1) == cluster_var(3, f1));
  CHECK(evaluate_expression("X[1]*X[3]", f1) == cluster_var(1, f1) * cluster_var(3, f1));
  // products keep the written order
  CHECK(evaluate_expression("X[2]*X[1]", f1) == cluster_var(2, f1) * cluster_var(1, f1));
  CHECK(evaluate_expression("X[2]*X[1]", f1) != evaluate_expression("X[1]*X[2]", f1));
  CHECK(evaluate_expression(" X[-2] ^ 3 ", f2) == power(cluster_var(-2, f2), 3));
  CHECK(evaluate_expression("X[4]^0", f1) == TorusElement(QLaurent(1)));
  CHECK(evaluate_expression("F[2]*S[1]", f1) ==
        chebyshev(ChebyshevKind::F, 2, f1) * chebyshev(ChebyshevKind::S, 1, f1));
  CHECK(evaluate_expression("delta^2", f1) == x_delta(f1) * x_delta(f1));
  CHECK(evaluate_expression("q^(-3/2)*X[1]", f1) == cluster_var(1, f1).scaled(q(-3)));
  CHECK(evaluate_expression("q^2", f1) == TorusElement(q(4)));
  CHECK(evaluate_expression("q^(3)", f1) == TorusElement(q(6)));
  CHECK(evaluate_expression("q", f1) == TorusElement(q(2)));
  CHECK(evaluate_expression("-3*X[0]", f1) == cluster_var(0, f1).scaled(QLaurent(-3)));

  // the X1 X6 display
  const TorusElement x16 = evaluate_expression("X[1]*X[6]", f1);
  CHECK(x16 == evaluate_expression("q^(-3/2)*X[-2]", f1) + cluster_var(2, f1).scaled(q(-1) + q(1) + q(3)) +
                   evaluate_expression("q^2*X[2]*X[3]", f1));

  for (const char* bad : {"", "X", "X[1", "X[a]", "X[1]*", "X[1]^-1", "Y[2]", "q^(1/3)", "X[1] X[2]", "F[2]^"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(evaluate_expression(bad, f1), std::invalid_argument);
  }
}
