#pragma once

#include <map>
#include <string>
#include <vector>

#include "bbk/observables.hpp"

namespace bbk {

/// Registered example systems.
BulkBoundarySystem makeToplmech(int cells = 3, int cap = 2);
BulkBoundarySystem makeBf1dAbelian(int cells = 3, int cap = 1);
BulkBoundarySystem makeBf1dSl2(int cells = 3, int cap = 1);

/// CE cohomology dims of g with Sym^w(g[shift]) coefficients, per
/// (cochain degree, weight ≤ weightCap). coefficientDegree is the internal
/// degree of the coefficient generators (0 for unshifted ones).
std::map<std::pair<int, int>, Index> lieCohomology(const LieAlgebra& g, int coefficientDegree,
                                                   int weightCap);

/// Trivial-coefficient cohomology dims H^k(g).
std::map<int, Index> lieAlgebraCohomology(const LieAlgebra& g);

/// Local-functional complex of BF theory on the half-plane model, with the
/// de Rham factors contracted: the reduced CE cochains with polynomial-field
/// coefficients in homological shift [2], mapping onto the boundary term in
/// shift [1] by the coefficient projection. Variant A keeps the ghost-only
/// boundary term, variant B the field-weight-one-and-up boundary term.
class HalfPlaneFunctionals {
 public:
  enum class Variant { A, B };

  HalfPlaneFunctionals(const LieAlgebra& g, Variant variant, int weightCap);

  int weightCap() const { return cap_; }
  Variant variant() const { return variant_; }

  /// The weight-w subcomplex of the total complex (weight is preserved).
  const CochainComplex& weightBlock(int w) const;
  /// (degree, weight) → dim H.
  std::map<std::pair<int, int>, Index> cohomologyTable() const;

  /// Independent route: H^{≥1}(g, Sym^w)[2] ⊕ (Sym^w / invariants)[1] per
  /// weight w ≥ 1, assembled from the CE dimension tables.
  std::map<std::pair<int, int>, Index> closedFormTable() const;

  /// Boundary-term functional attached to x ∈ g (weight 1, degree −1):
  /// closedness certificate plus its class data.
  struct BoundaryFunctional {
    Vec vector;      // in the weight-1 block coordinates
    bool closed = false;
  };
  BoundaryFunctional boundaryFunctional(const Vec& x) const;
  /// True when the classes of the given functionals are independent and span
  /// the weight-1 cohomology.
  bool boundaryClassesSpan(const std::vector<Vec>& xs) const;

  /// Basis size bookkeeping for reports.
  Index weightBlockDim(int w) const { return weightBlock(w).space->dim(); }
  bool weightZeroBoundaryEmpty() const;

 private:
  LieAlgebra g_;
  Variant variant_;
  int cap_;
  std::map<int, CochainComplex> blocks_;
  std::map<int, Index> boundaryOffset_;  // first boundary-part index per weight
  std::map<int, Index> boundaryDim_;
};

/// Pushforward comparison for BF theory one dimension up: for every open U
/// of a boundary mesh, the de Rham side Sym^{≤T}(compact forms ⊗ g[1]) with
/// only the de Rham differential maps quasi-isomorphically into the
/// observables of the conditioned bulk over U × [0, δ).
struct PushforwardReport {
  bool pass = false;
  std::string detail;
  std::map<OpenSet, std::map<int, Index>> dims;  // de Rham side cohomology
};
PushforwardReport pushforwardCompare(const LieAlgebra& g, int truncation, int boundaryCells,
                                     int boundaryCap = 2, int intervalCap = 1);

}  // namespace bbk
