#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bbk/graded.hpp"

namespace bbk {

/// Dense rational-coefficient polynomial in one variable, exact arithmetic.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(Rat v);
  static Poly monomial(int k, Rat v = Rat(1));

  bool isZero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // −1 for zero
  Rat coeff(int k) const;

  Rat eval(const Rat& t) const;
  Poly derivative() const;
  /// Antiderivative with value 0 at t = 0.
  Poly antiderivative() const;
  /// Exact ∫ over [a, b].
  Rat integrate(const Rat& a, const Rat& b) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend Poly operator*(const Rat& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  const std::vector<Rat>& coeffs() const { return c_; }
  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

enum class SupportFlag { free_, vanishing_at_delta, vanishing_at_zero };

/// Polynomial de Rham form p(t) + q(t)·dt on [0, δ].
struct PolyForm {
  Poly p;  // 0-form part
  Poly q;  // 1-form coefficient
  Rat delta{1};

  static PolyForm zeroForm(Poly p0, Rat delta) { return PolyForm{std::move(p0), Poly(), delta}; }
  static PolyForm oneForm(Poly q0, Rat delta) { return PolyForm{Poly(), std::move(q0), delta}; }

  bool isZero() const { return p.isZero() && q.isZero(); }
  bool isHomogeneous() const { return p.isZero() || q.isZero(); }
  /// 0 or 1 for homogeneous forms; throws on mixed ones.
  int formDegree() const;

  PolyForm d() const { return PolyForm{Poly(), p.derivative(), delta}; }
  /// Graded-commutative product; exact, no degree cap.
  PolyForm wedge(const PolyForm& other) const;
  /// Exact ∫₀^δ of the 1-form part; rejects forms with a 0-form part.
  Rat integrate() const;
  /// Pullback to t = 0: returns p(0), kills dt.
  Rat eval0() const { return p.eval(Rat(0)); }
  Rat evalDelta() const { return p.eval(delta); }

  bool vanishesAtDelta() const { return p.eval(delta).isZero() && q.eval(delta).isZero(); }
  bool vanishesAtZero() const { return p.eval(Rat(0)).isZero() && q.eval(Rat(0)).isZero(); }
  /// Strictest flag the form satisfies (delta preferred when both hold).
  SupportFlag flag() const;

  friend PolyForm operator+(const PolyForm& a, const PolyForm& b);
  friend PolyForm operator*(const Rat& s, const PolyForm& f);
  friend bool operator==(const PolyForm& a, const PolyForm& b);
};

/// Contracting homotopy K(p + q·dt) = (−∫_t^δ q(s) ds, 0).
/// Requires p(δ) = 0; together with d it satisfies dK + Kd = id there.
PolyForm homotopyK(const PolyForm& w);

/// Mirrored homotopy anchored at t = 0; requires p(0) = 0.
PolyForm homotopyK0(const PolyForm& w);

/// Which endpoint conditions cut out a sub-complex of forms on a cell.
/// Only the 0-form part is constrained: d produces unconstrained 1-forms.
struct EndConditions {
  bool vanishLeft = false;   // p(0) = 0
  bool vanishRight = false;  // p(δ) = 0
};

/// Finite model of the forms on one cell: monomial-type basis under a
/// polynomial degree cap (0-forms up to t^N, 1-forms up to t^{N−1} dt).
class IntervalModel {
 public:
  IntervalModel(Rat delta, int cap, std::string coordName = "t");

  const Rat& delta() const { return delta_; }
  int cap() const { return cap_; }

  /// Basis forms for the subcomplex cut out by the end conditions.
  std::vector<PolyForm> basis(EndConditions ec = {}) const;
  std::vector<std::string> basisLabels(EndConditions ec = {}) const;
  std::vector<int> basisDegrees(EndConditions ec = {}) const;

  /// The subcomplex itself (d expressed in the basis above).
  CochainComplex complex(EndConditions ec = {}) const;

  /// Coordinates of a form in the free monomial basis; rejects forms
  /// beyond the cap.
  Vec coordinates(const PolyForm& w) const;
  PolyForm fromCoordinates(const Vec& x, EndConditions ec = {}) const;

  /// Wedge inside the capped model; explicit error on degree overflow.
  PolyForm wedgeCapped(const PolyForm& a, const PolyForm& b) const;

 private:
  Rat delta_;
  int cap_;
  std::string coord_;
};

/// Coordinates of `w` in an arbitrary list of basis forms (exact solve);
/// empty when w is outside the span.
std::optional<Vec> coordinatesIn(const std::vector<PolyForm>& basis, const PolyForm& w);

/// Express d of each basis form back in the basis; throws if the list is
/// not closed under d. Returns the cochain complex on these forms.
CochainComplex complexFromForms(const std::vector<PolyForm>& basis,
                                const std::vector<std::string>& labels);

/// Finite site on [0, δ]: ordered rational breakpoints; opens are unions of
/// open cells, optionally with the boundary point 0 attached to cell 0.
class CellMesh {
 public:
  explicit CellMesh(std::vector<Rat> breakpoints);
  static CellMesh uniform(int cells, Rat delta = Rat(1));

  int cellCount() const { return static_cast<int>(breaks_.size()) - 1; }
  Rat cellWidth(int cell) const { return breaks_[cell + 1] - breaks_[cell]; }
  const std::vector<Rat>& breakpoints() const { return breaks_; }

 private:
  std::vector<Rat> breaks_;
};

struct OpenSet {
  std::set<int> cells;
  bool boundary = false;  // includes the point t = 0; requires cell 0

  bool empty() const { return cells.empty() && !boundary; }
  bool contains(const OpenSet& other) const;
  bool disjointFrom(const OpenSet& other) const;
  OpenSet intersect(const OpenSet& other) const;
  OpenSet unionWith(const OpenSet& other) const;
  bool operator==(const OpenSet& o) const { return cells == o.cells && boundary == o.boundary; }
  bool operator<(const OpenSet& o) const {
    return cells != o.cells ? cells < o.cells : boundary < o.boundary;
  }
  std::string str() const;

  static OpenSet wholeOf(const CellMesh& mesh, bool withBoundary = true);
};

/// All nonempty opens of the mesh (cell subsets, with and without the
/// boundary point where cell 0 is present).
std::vector<OpenSet> allOpens(const CellMesh& mesh);

}  // namespace bbk
