#pragma once

// Standard monomials E_(a,b), their auxiliary variants, the orders used by
// the Lusztig-lemma construction and the triangular basis C_(a,b).

#include "qclust/cluster.hpp"
#include "qclust/errors.hpp"
#include "qclust/report.hpp"

#include <map>
#include <memory>
#include <vector>

namespace qclust {

/// Index (a,b) of E_(a,b) and C_(a,b).
struct StandardIndex {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const StandardIndex&, const StandardIndex&) = default;
};

std::string to_string(StandardIndex u);

/// max(x, 0)
inline int plus_part(int x) { return x > 0 ? x : 0; }

/// Strict order: [-a']_+ < [-a]_+ and [-b']_+ < [-b]_+.
bool order_prec(StandardIndex lower, StandardIndex upper);
/// Same with <=.
bool order_preceq(StandardIndex lower, StandardIndex upper);

/// [-a]_+ + [-b]_+; strictly decreases along the strict order.
inline int prec_height(StandardIndex u) { return plus_part(-u.a) + plus_part(-u.b); }

StandardIndex phi(StandardIndex u);  // (a, -4[-a]_+ - b)
StandardIndex psi(StandardIndex u);  // (-a-[-b]_+, b)
/// Lattice vector with C_{a1 alpha(n) + a2 alpha(n+1)} = q^{-a1a2/2} X_n^a1 X_{n+1}^a2.
StandardIndex alpha(int n);

/// q^{-ab/2} X3^[-a]+ X1^[a]+ X2^[b]+ X0^[-b]+ in the frame.
TorusElement standard_monomial(int a, int b, Frame frame);
inline TorusElement standard_monomial(StandardIndex u, Frame frame) { return standard_monomial(u.a, u.b, frame); }

/// sigma_shift(E_(a,b)): every cluster index moved by `shift` (even).
TorusElement shifted_standard_monomial(int a, int b, int shift, Frame frame);

/// E'_(a,b) = q^{-ab/2} X2^[-b]+ X0^[b]+ X1^[a]+ X_{-1}^[-a]+.
TorusElement e_prime(int a, int b, Frame frame);
/// mu1 E_(a,b) = q^{-ab/2} X4^[-b]+ X2^[b]+ X3^[a]+ X1^[-a]+.
TorusElement mu1_e(int a, int b, Frame frame);

/// Finite combination of standard monomials, no zero coefficients.
class EExpansion {
 public:
  void add(StandardIndex u, const QLaurent& c);
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<StandardIndex, QLaurent>& terms() const { return terms_; }
  QLaurent coeff(StandardIndex u) const;
  EExpansion& operator+=(const EExpansion& other);
  EExpansion& operator-=(const EExpansion& other);
  friend EExpansion operator+(EExpansion x, const EExpansion& y) { return x += y; }
  friend EExpansion operator-(EExpansion x, const EExpansion& y) { return x -= y; }
  friend bool operator==(const EExpansion&, const EExpansion&) = default;

 private:
  std::map<StandardIndex, QLaurent> terms_;
};

std::string to_string(const EExpansion& e);

/// All coefficients lie in q^{-1/2} Z[q^{-1/2}].
bool in_small_lattice(const EExpansion& e);
/// Every index of the support satisfies order_preceq(u, bound).
bool supported_preceq(const EExpansion& e, StandardIndex bound);
/// Every index of the support satisfies order_prec(u, bound).
bool supported_prec(const EExpansion& e, StandardIndex bound);

/// sigma_shift(sum c_u E_u) in the frame; shift must be even.
TorusElement shifted(const EExpansion& e, int shift, Frame frame);

/// sum c_u E_u in the frame.
TorusElement realize(const EExpansion& e, Frame frame);

/// Index box for E-expansions.
struct StandardWindow {
  int a_lo = -6, a_hi = 14;
  int b_lo = -6, b_hi = 14;
  bool contains(StandardIndex u) const { return a_lo <= u.a && u.a <= a_hi && b_lo <= u.b && u.b <= b_hi; }
};

/// Exponent of the unique minimal torus term of E_u, predicted additively
/// from the denominator vectors of X0..X3.
ExponentPair standard_lead(StandardIndex u, Frame frame);

/// Expansion left a residue (a term whose exponent is no window lead, or the
/// iteration cap was hit).
class StandardExpansionFailure : public StructuralViolation {
 public:
  StandardExpansionFailure(const std::string& what, TorusElement residue, EExpansion partial)
      : StructuralViolation(what), residue_(std::move(residue)), partial_(std::move(partial)) {}
  const TorusElement& residue() const { return residue_; }
  const EExpansion& partial() const { return partial_; }

 private:
  TorusElement residue_;
  EExpansion partial_;
};

/// Writes x as a combination of E_u, u in the window, by peeling the residue's
/// least term (total order: a+b, then a). Leads are checked injective on the
/// window and each E_u used is checked to be pointed at its predicted lead.
EExpansion expand_in_standard(const TorusElement& x, Frame frame, const StandardWindow& window = {});

/// Smallest window containing every index whose lead could be a term of x.
StandardWindow window_for(const TorusElement& x, Frame frame, int margin = 0);

struct TriangularElement {
  TorusElement value;     // C_u in the frame
  EExpansion expansion;   // C_u in standard monomials
};

/// Memo of C_u per frame. C_u is built from E_u by subtracting corrections
/// along already computed C_{u'} with u' strictly below u.
class TriangularTable {
 public:
  explicit TriangularTable(Frame frame);
  ~TriangularTable();
  TriangularTable(const TriangularTable&) = delete;
  TriangularTable& operator=(const TriangularTable&) = delete;

  Frame frame() const;
  const TorusElement& standard(StandardIndex u);
  /// E-expansion with a window sized to x.
  EExpansion expand(const TorusElement& x);
  const TriangularElement& c(StandardIndex u);
  /// Replaces the stored E_u (negative controls). Clears memoized C's.
  void override_standard(StandardIndex u, TorusElement e);
  /// Rewrites an E-combination in the C basis.
  EExpansion to_c_basis(EExpansion e);

  static TriangularTable& global(Frame frame);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// C_(a,b) in the frame (global table).
const TriangularElement& lusztig_c(int a, int b, Frame frame);

/// Right side of the closed S_n(X_delta) formula in cluster variables.
TorusElement sn_closed_form(int n, Frame frame);

struct Section4Window {
  int ab = 4;         // |a|, |b| bound for E', mu1 E and lead checks
  int n_max = 6;      // C_(-n,-2n)
  int alpha_lo = -3;  // alpha-lattice base points
  int alpha_hi = 5;
  int alpha_mult = 3;  // a1, a2 <= alpha_mult
  int sn_formula_max = 8;
};

/// Instance checks of the triangular-basis statements, frame 1.
///  alpha:  C at a1 alpha(n) + a2 alpha(n+1) is the cluster monomial
///  sn:     C_(-n,-2n) = S_n(X_delta)
///  sn-formula: closed S_n formula
///  phi, psi: E' - E_phi and mu1 E - E_psi lie in q^{-1/2} A_+
///  bar-support: bar(E_u) - E_u supported strictly below u
///  shift+2, shift-2: sigma_{+-2} maps C to C at the conjugated index
///  lem-1..lem-6: membership statements for products with X0, X3, X1, X4
Report verify_section4(const Section4Window& window = {});

}  // namespace qclust
