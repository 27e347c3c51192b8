#pragma once

// Cluster variables X_m, the imaginary element X_delta and the Chebyshev
// families F_n(X_delta), S_n(X_delta), expanded in the torus of a chosen
// cluster {X_s, X_{s+1}}.

#include "qclust/report.hpp"
#include "qclust/torus.hpp"

#include <memory>

namespace qclust {

/// Torus coordinates given by the cluster {X_s, X_{s+1}}:
/// X_s = X^(1,0), X_{s+1} = X^(0,1).
struct Frame {
  int s = 1;
  friend auto operator<=>(const Frame&, const Frame&) = default;
};

/// Right-hand side of the exchange relation X_{k-1} X_{k+1} = rhs at k.
TorusElement exchange_rhs(int k, const TorusElement& xk);

/// Laurent expansion of X_m in the frame. Memoized, thread-safe; the
/// reference stays valid for the lifetime of the process.
const TorusElement& cluster_var(int m, Frame frame);

enum class DeltaFormula {
  Auto,        // whichever the generator uses
  EvenWindow,  // q X_{2j}^2 X_{2j+3} - q^2 (q X_{2j+1} + q^{-1/2} + q^{1/2}) X_{2j+2}^2
  OddWindow,   // q^-1 X_{2j+4}^2 X_{2j+1} - q^-2 (q^-1 X_{2j+3} + q^{-1/2} + q^{1/2}) X_{2j+2}^2
};

/// X_delta in the frame. `Auto` is memoized; the explicit formulas are
/// evaluated from scratch on the four-variable window next to the frame.
const TorusElement& x_delta(Frame frame);
TorusElement x_delta_from_window(Frame frame, DeltaFormula formula, int window_start);

enum class ChebyshevKind { F, S };

/// F_n(X_delta) or S_n(X_delta); zero for n < 0. Memoized.
const TorusElement& chebyshev(ChebyshevKind kind, int n, Frame frame);

/// q^{-ab/2} X_m^a X_{m+1}^b. Throws DomainError for negative a or b.
/// Memoized only for a + b <= kCachedMonomialDegree; high powers get large.
inline constexpr int kCachedMonomialDegree = 4;
TorusElement cluster_monomial(int m, int a, int b, Frame frame);

/// Instance checks, frame by frame:
///  commute  X_m X_{m+1} = q X_{m+1} X_m            m in [lo, hi]
///  shift    X_m in frame s equals X_{m+2} in frame s+2
///  exchange X_{k-1} X_{k+1} = rhs(k)               k in (lo, hi)
///  q=1      the exchange relation at q^{1/2} = 1 (commutative)
/// Index fields: m carries m or k, n is unused.
Report verify_cluster_relations(int lo, int hi, const std::vector<int>& frames = {1, 2});

/// An independent memo table. The free functions above share one global
/// table; a private table is useful for checking that results do not depend
/// on evaluation order. Entries are never evicted, so returned references
/// live as long as the table (monomials above the cache degree are returned
/// by value).
class ClusterTable {
 public:
  ClusterTable();
  ~ClusterTable();
  ClusterTable(const ClusterTable&) = delete;
  ClusterTable& operator=(const ClusterTable&) = delete;

  const TorusElement& var(int m, Frame frame);
  const TorusElement& delta(Frame frame);
  const TorusElement& chebyshev(ChebyshevKind kind, int n, Frame frame);
  TorusElement monomial(int m, int a, int b, Frame frame);

  static ClusterTable& global();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qclust
