#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bbk/linalg.hpp"

namespace bbk {

/// Finite graded vector space over Rat: an ordered basis of unique labels,
/// each with an integer cohomological degree. The empty space is legal.
class GradedVectorSpace {
 public:
  GradedVectorSpace() = default;
  GradedVectorSpace(std::vector<std::string> labels, std::vector<int> degrees);

  Index dim() const { return static_cast<Index>(labels_.size()); }
  Index dimAt(int k) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degreeOf(Index i) const { return degrees_[i]; }
  const std::string& labelOf(Index i) const { return labels_[i]; }
  std::optional<Index> indexOf(const std::string& label) const;

  /// Global indices of the degree-k part, in basis order.
  const std::vector<Index>& slot(int k) const;
  const std::map<int, std::vector<Index>>& slots() const { return slots_; }
  /// Position of basis vector i inside its degree slot.
  Index posInSlot(Index i) const { return posInSlot_[i]; }

  int minDegree() const;
  int maxDegree() const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::map<int, std::vector<Index>> slots_;
  std::vector<Index> posInSlot_;
};

using SpaceRef = std::shared_ptr<const GradedVectorSpace>;

SpaceRef makeSpace(std::vector<std::string> labels, std::vector<int> degrees);

/// Degree-homogeneous linear map between graded spaces, stored as one matrix
/// block per source degree. Block k maps the degree-k source slot to the
/// degree-(k+degree) target slot; absent blocks are zero.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(SpaceRef source, SpaceRef target, int degree);

  static GradedMap zero(SpaceRef source, SpaceRef target, int degree) {
    return GradedMap(std::move(source), std::move(target), degree);
  }
  static GradedMap identity(SpaceRef space);

  /// Builds from global (row, col, value) triplets; throws if an entry sits
  /// outside the degree pattern.
  static GradedMap fromTriplets(SpaceRef source, SpaceRef target, int degree,
                                const std::vector<std::tuple<Index, Index, Rat>>& entries);

  const SpaceRef& source() const { return source_; }
  const SpaceRef& target() const { return target_; }
  int degree() const { return degree_; }

  /// Block at source degree k (copy; zero-sized block materialized on demand).
  Mat block(int k) const;
  const std::map<int, Mat>& blocks() const { return blocks_; }
  void setBlock(int k, Mat m);
  void addEntry(Index row, Index col, const Rat& value);
  Rat entry(Index row, Index col) const;

  Vec apply(const Vec& x) const;
  GradedMap compose(const GradedMap& inner) const;  // this ∘ inner
  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-() const;
  GradedMap scaled(const Rat& c) const;

  bool isZero() const;

 private:
  SpaceRef source_, target_;
  int degree_ = 0;
  std::map<int, Mat> blocks_;
};

/// True when target.d ∘ f == f ∘ source.d (f of degree 0).
struct CochainComplex;
bool isChainMap(const GradedMap& f, const CochainComplex& src, const CochainComplex& tgt);

/// Graded space with a square-zero degree +1 differential.
struct CochainComplex {
  SpaceRef space;
  GradedMap d;

  static CochainComplex zero();
  /// Throws unless d has degree +1 and matching spaces; verifies d∘d = 0.
  static CochainComplex checked(SpaceRef space, GradedMap d);
};

/// Per-degree cohomology: dimension plus exact-rational representatives
/// (columns, in global coordinates).
struct CohomologyPiece {
  Index dim = 0;
  Mat representatives;
};
using Cohomology = std::map<int, CohomologyPiece>;

Cohomology cohomology(const CochainComplex& c);
std::map<int, Index> cohomologyDims(const CochainComplex& c);
Index totalCohomologyDim(const CochainComplex& c);
bool isAcyclic(const CochainComplex& c);

/// Shifted complex: (V[n])^k = V^{k+n}, d[n] = (−1)^n d.
CochainComplex shifted(const CochainComplex& c, int n);
SpaceRef shiftedSpace(const GradedVectorSpace& v, int n);

/// Mapping cone of a chain map f: X → Y, carried on X[1] ⊕ Y with
/// d(x, y) = (−d x, f x + d y). Basis order: shifted X basis, then Y basis.
struct ConeResult {
  CochainComplex complex;
  Index sourceOffset = 0;  // X[1] block start
  Index targetOffset = 0;  // Y block start
};
ConeResult cone(const GradedMap& f, const CochainComplex& x, const CochainComplex& y);

/// Koszul-signed tensor product; basis (i, j) ordered with the second factor
/// fastest, d = d⊗1 + (−1)^{|x|} 1⊗d.
struct TensorResult {
  CochainComplex complex;
  Index rightDim = 0;
  Index pairIndex(Index i, Index j) const { return i * rightDim + j; }
};
TensorResult tensorComplex(const CochainComplex& a, const CochainComplex& b);

/// Dual complex: basis duals in primal order, degrees negated,
/// (d* λ)(x) = −(−1)^{|λ|} λ(d x).
CochainComplex dualComplex(const CochainComplex& c);

struct QuasiIsoResult {
  bool ok = false;
  std::optional<int> witnessDegree;  // first degree with nonzero cone cohomology
};
/// Requires f to be a chain map; decides via acyclicity of cone(f).
QuasiIsoResult isQuasiIso(const GradedMap& f, const CochainComplex& x, const CochainComplex& y);

}  // namespace bbk
