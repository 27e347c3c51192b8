#include "doctest.h"
#include "support.hpp"

#include "qclust/cluster.hpp"
#include "qclust/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <thread>

using namespace qtest;
using qclust::ChebyshevKind;
using qclust::ClusterTable;
using qclust::DeltaFormula;
using qclust::Frame;
using qclust::cluster_var;
using qclust::x_delta;

namespace {

const Frame f1{1}, f2{2};

TorusElement X(int m, Frame f = f1) { return cluster_var(m, f); }
TorusElement F(int n, Frame f = f1) { return qclust::chebyshev(ChebyshevKind::F, n, f); }
TorusElement S(int n, Frame f = f1) { return qclust::chebyshev(ChebyshevKind::S, n, f); }
TorusElement one() { return TorusElement(QLaurent(1)); }
TorusElement sc(int half_exp) { return TorusElement(q(half_exp)); }

using Rational = boost::multiprecision::cpp_rational;

// Commutative q = 1 oracle: x_{k-1} x_{k+1} = x_k + 1 (k odd), x_k^4 + 1 (k even),
// run numerically from x_s = u, x_{s+1} = v.
std::map<int, Rational> commutative_orbit(int s, Rational u, Rational v, int lo, int hi) {
  std::map<int, Rational> x{{s, u}, {s + 1, v}};
  auto rhs = [](int k, const Rational& xk) { return (k & 1) ? Rational(xk + 1) : Rational(xk * xk * xk * xk + 1); };
  for (int k = s + 1; k < hi; ++k) x[k + 1] = rhs(k, x[k]) / x[k - 1];
  for (int k = s; k > lo; --k) x[k - 1] = rhs(k, x[k]) / x[k + 1];
  return x;
}

Rational evaluate_at_one(const TorusElement& t, const Rational& u, const Rational& v) {
  Rational total = 0;
  for (const auto& [e, c] : t.terms()) {
    Rational term = Rational(at_one(c));
    for (int i = 0; i < std::abs(e.a); ++i) term = e.a > 0 ? Rational(term * u) : Rational(term / u);
    for (int i = 0; i < std::abs(e.b); ++i) term = e.b > 0 ? Rational(term * v) : Rational(term / v);
    total += term;
  }
  return total;
}

}  // namespace

TEST_CASE("frame generators") {
  for (int s = -3; s <= 4; ++s) {
    CHECK(X(s, Frame{s}) == mono(1, 0));
    CHECK(X(s + 1, Frame{s}) == mono(0, 1));
  }
}

TEST_CASE("paper expansions in the initial cluster") {
  CHECK(X(0) == T("(1,-1) + (0,-1)"));
  CHECK(X(3) == T("(-1,4) + (-1,0)"));
  CHECK(X(4) == T("(-1,3) + (-1,-1) + (0,-1)"));
  // The middle coefficient is the q-binomial [4 choose 2]; at q = 1 it is C(4,2) = 6.
  CHECK(X(-1) == T("(3,-4) + (q^(-3/2) + q^(-1/2) + q^(1/2) + q^(3/2))*(2,-4)"
                   " + (q^-2 + q^-1 + 2 + q + q^2)*(1,-4)"
                   " + (q^(-3/2) + q^(-1/2) + q^(1/2) + q^(3/2))*(0,-4) + (-1,0) + (-1,-4)"));
  CHECK(X(-2) == T("(-1,1) + (2,-3) + (q^-1 + 1 + q)*(1,-3) + (q^-1 + 1 + q)*(0,-3) + (-1,-3)"));
  CHECK(x_delta(f1) == T("(-1,-2) + (-1,2) + (1,-2) + (q^(-1/2) + q^(1/2))*(0,-2)"));
  CHECK(F(2) == T("(-2,-4) + (q^-2 + q^2)*(-2,0) + (q^-2 + q^-1 + 2 + q + q^2)*(0,-4)"
                  " + (q^(-3/2) + q^(-1/2) + q^(1/2) + q^(3/2))*(-1,-4)"
                  " + (q^(-3/2) + q^(-1/2) + q^(1/2) + q^(3/2))*(1,-4)"
                  " + (q^(-3/2) + q^(-1/2) + q^(1/2) + q^(3/2))*(-1,0) + (-2,4) + (2,-4)"));
}

TEST_CASE("misprinted variants fail the relations") {
  // Middle coefficient 1 instead of 2: the exchange relation at k = 0 breaks.
  TorusElement bad = X(-1) - mono(1, -4);
  CHECK(bad * X(1) != sc(4) * power(X(0), 4) + one());
  // Exponent (-1,4) instead of (-1,-4): F_2 = delta^2 - 2 breaks.
  TorusElement c = mono(0, 0, Q("q^(-3/2) + q^(-1/2) + q^(1/2) + q^(3/2)"));
  TorusElement bad_f2 = F(2) - c * mono(-1, -4) + c * mono(-1, 4);
  CHECK(bad_f2 != x_delta(f1) * x_delta(f1) - TorusElement(QLaurent(2)));
}

TEST_CASE("both window formulas give the same delta") {
  for (int s = -4; s <= 5; ++s) {
    Frame f{s};
    for (int w = s - 3; w <= s + 4; ++w) {
      auto formula = (w & 1) ? DeltaFormula::OddWindow : DeltaFormula::EvenWindow;
      CHECK(qclust::x_delta_from_window(f, formula, w) == x_delta(f));
    }
    CHECK(bar(x_delta(f)) == x_delta(f));
    // Odd and even frames swap the roles of the two generators.
    ExponentPair low = (s & 1) ? ExponentPair{-1, -2} : ExponentPair{-2, -1};
    CHECK(min_terms(x_delta(f)) == std::vector<ExponentPair>{low});
  }
  CHECK_THROWS_AS(qclust::x_delta_from_window(f1, DeltaFormula::EvenWindow, 1), qclust::PreconditionError);
  CHECK_THROWS_AS(qclust::x_delta_from_window(f1, DeltaFormula::OddWindow, 2), qclust::PreconditionError);
}

TEST_CASE("frame 2 delta against the direct product") {
  TorusElement lhs = sc(2) * X(2, f2) * X(2, f2) * X(5, f2) -
                     sc(4) * (sc(2) * X(3, f2) + TorusElement(QLaurent::quantum_two())) * X(4, f2) * X(4, f2);
  CHECK(lhs == x_delta(f2));
}

TEST_CASE("exchange relations") {
  for (Frame f : {f1, f2, Frame{-3}, Frame{6}}) {
    for (int k = -7; k <= 9; ++k) {
      TorusElement lhs = X(k - 1, f) * X(k + 1, f);
      TorusElement rhs = (k & 1) ? sc(1) * X(k, f) + one() : sc(4) * power(X(k, f), 4) + one();
      CHECK_MESSAGE(lhs == rhs, "k=" << k << " s=" << f.s);
    }
  }
}

TEST_CASE("q-commutation of neighbours") {
  for (Frame f : {f1, f2})
    for (int m = -8; m <= 10; ++m) CHECK(X(m, f) * X(m + 1, f) == sc(2) * X(m + 1, f) * X(m, f));
}

TEST_CASE("shift by two is a frame change") {
  for (int s = -2; s <= 3; ++s)
    for (int m = -6; m <= 8; ++m) CHECK(X(m, Frame{s}) == X(m + 2, Frame{s + 2}));
}

TEST_CASE("ladder identity and bar invariance") {
  for (Frame f : {f1, f2}) {
    for (int n = -4; n <= 5; ++n) {
      CHECK(X(2 * n, f) * x_delta(f) == sc(-1) * X(2 * n - 2, f) + sc(1) * X(2 * n + 2, f));
    }
    for (int m = -8; m <= 10; ++m) CHECK(bar(X(m, f)) == X(m, f));
    for (int n = 0; n <= 6; ++n) {
      CHECK(bar(F(n, f)) == F(n, f));
      CHECK(bar(S(n, f)) == S(n, f));
    }
  }
}

TEST_CASE("Chebyshev families") {
  TorusElement d = x_delta(f1);
  CHECK(F(0) == one());
  CHECK(S(0) == one());
  CHECK(F(-3).is_zero());
  CHECK(S(-1).is_zero());
  CHECK(F(1) == d);
  CHECK(S(2) == d * d - one());
  CHECK(S(3) == d * d * d - TorusElement(QLaurent(2)) * d);
  CHECK(S(3) == S(2) * d - S(1));
  CHECK(F(3) == d * d * d - TorusElement(QLaurent(3)) * d);
  for (Frame f : {f1, f2}) {
    for (int m = 2; m <= 6; ++m)
      for (int n = 1; n < m; ++n) CHECK(F(n, f) * F(m, f) == F(m + n, f) + F(m - n, f));
    for (int n = 1; n <= 6; ++n) CHECK(F(n, f) * F(n, f) == F(2 * n, f) + TorusElement(QLaurent(2)));
  }
}

TEST_CASE("cluster monomials") {
  CHECK(qclust::cluster_monomial(1, 1, 1, f1) == mono(1, 1));
  CHECK(qclust::cluster_monomial(2, 0, 0, f1) == one());
  CHECK(qclust::cluster_monomial(0, 2, 1, f1) == sc(-2) * X(0) * X(0) * X(1));
  CHECK(qclust::cluster_monomial(2, 1, 1, f1) == sc(-1) * X(2) * X(3));
  CHECK_THROWS_AS(qclust::cluster_monomial(0, -1, 1, f1), qclust::DomainError);
}

TEST_CASE("evaluation order does not matter") {
  ClusterTable up, down;
  for (int m = -9; m <= 11; ++m) up.var(m, f2);
  for (int m = 11; m >= -9; --m) down.var(m, f2);
  for (int m = -9; m <= 11; ++m) {
    CHECK(up.var(m, f2) == down.var(m, f2));
    CHECK(up.var(m, f2) == X(m, f2));
  }
}

TEST_CASE("concurrent fills agree") {
  ClusterTable shared;
  std::vector<TorusElement> a(8), b(8);
  std::thread t1([&] { for (int i = 0; i < 8; ++i) a[i] = shared.chebyshev(ChebyshevKind::F, i, f1) * shared.var(10 - i, f1); });
  std::thread t2([&] { for (int i = 0; i < 8; ++i) b[i] = shared.chebyshev(ChebyshevKind::F, i, f1) * shared.var(10 - i, f1); });
  t1.join();
  t2.join();
  for (int i = 0; i < 8; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("specialization q=1 matches the commutative recursion") {
  for (Frame f : {f1, f2}) {
    for (auto [u, v] : {std::pair<Rational, Rational>{Rational(2, 3), Rational(5, 7)}, {Rational(3), Rational(-1, 2)}}) {
      auto orbit = commutative_orbit(f.s, u, v, -8, 10);
      for (int m = -8; m <= 10; ++m) CHECK_MESSAGE(evaluate_at_one(X(m, f), u, v) == orbit[m], "m=" << m);
    }
  }
}

TEST_CASE("relation verifier") {
  qclust::Report r = qclust::verify_cluster_relations(-8, 10);
  CHECK(r.all_pass());
  std::map<std::string, int> counts;
  for (const auto& e : r.entries) ++counts[e.check];
  CHECK(counts["commute"] == 2 * 19);
  CHECK(counts["shift"] == 2 * 19);
  CHECK(counts["exchange"] == 2 * 17);
  CHECK(counts["q=1"] == 2 * 17);
}

TEST_CASE("far odd variables from the F2 ladder") {
  // q = 1 values against the commutative orbit, well past the ladder start
  for (Frame f : {f1, f2}) {
    const Rational u(2, 3), v(5, 7);
    auto orbit = commutative_orbit(f.s, u, v, f.s - 34, f.s + 36);
    for (int m : {f.s - 33, f.s - 29, f.s - 27, f.s + 27, f.s + 29, f.s + 35})
      CHECK_MESSAGE(evaluate_at_one(X(m, f), u, v) == orbit[m], "m=" << m << " s=" << f.s);
  }
  // exact exchange relations across the switch (odd k: linear in X_k)
  for (int k : {27, 29, -27, -29}) {
    CAPTURE(k);
    CHECK(X(k - 1) * X(k + 1) == qclust::exchange_rhs(k, X(k)));
  }
}
