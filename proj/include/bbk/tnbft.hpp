#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbk/linf.hpp"
#include "bbk/poly.hpp"

namespace bbk {

/// Capped polynomial forms on an open of the mesh, as a cdga model with full
/// basis provenance. Basis order: cell-major, free forms of the cell model.
struct OpenForms {
  OpenSet open;
  std::vector<int> cellOf;          // mesh cell per basis form
  std::vector<PolyForm> forms;      // local coordinates per cell
  std::vector<Index> cellStart;     // offset of each listed cell
  std::vector<int> cellsListed;     // cells in enumeration order
  CdgaModel cdga;

  Index dim() const { return static_cast<Index>(forms.size()); }
  std::optional<Index> indexOf(int cell, Index localForm) const;
};

OpenForms openForms(const CellMesh& mesh, const OpenSet& u, int cap);

/// Boundary condition: graded subspaces L and L′ of the boundary fields,
/// given by basis columns.
struct BoundaryCondition {
  Mat l;
  Mat lPrime;
  std::string name;
};

enum class ConditionViolation { none, isotropy, complement, bracketClosure };

struct ConditionReport {
  bool pass = true;
  ConditionViolation tag = ConditionViolation::none;
  std::string detail;
};

/// The three gates of a local boundary condition: L isotropic, L′ an
/// isotropic complement, L closed under every bracket (including b₁).
ConditionReport validateBoundaryCondition(const CyclicLInfinity& boundary,
                                          const BoundaryCondition& cond);

/// Exact field element of E(U) kept at the polynomial level; used wherever
/// the capped bracket tensors would truncate products.
struct HonestField {
  std::map<std::pair<Index, int>, PolyForm> parts;  // (coefficient, cell) -> form
  bool isZero() const;
};

/// Per-open field data of a bulk-boundary system.
struct OpenFields {
  OpenSet open;
  OpenForms omega;
  CyclicLInfinity algebra;  // E(U), capped brackets, exact pairing
  GradedMap rho;            // E(U) → boundary fields; zero target when no boundary

  Mat compactInclusion;     // E_c(U) basis, columns in E(U) coordinates
  CochainComplex compactComplex;

  // Conditioned data (present once a condition is set).
  Mat elInclusion;                       // E_L(U) basis columns
  std::shared_ptr<CyclicLInfinity> el;   // restricted algebra on E_L(U)
  Mat elCompactInclusion;                // E_{L,c}(U) basis columns
};

struct LagrangianReport {
  bool pass = false;
  bool chainMap = false;
  bool quasiIso = false;
  std::optional<int> witnessDegree;
  bool boundarySidesAcyclic = false;  // meaningful on connected boundary opens
  std::string detail;
};

struct SplittingReport {
  bool pass = false;
  Mat projection;  // E(U) → L′ coordinates
  Mat extension;   // L′ coordinates → E(U)
  bool retractIdentity = false;       // P∘I = id
  bool idempotent = false;            // (1−IP)² = 1−IP
  bool imageConditioned = false;      // im(1−IP) ⊆ E_L
  bool extensionCompact = false;      // im(I) ⊆ E_c
  std::string detail;
};

/// Bulk theory over an interval mesh, built from boundary data tensored with
/// polynomial forms; holds the per-open caches and all verification passes.
class BulkBoundarySystem {
 public:
  BulkBoundarySystem(std::string name, CyclicLInfinity boundaryCoefs, CellMesh mesh, int polyCap);

  const std::string& name() const { return name_; }
  const CyclicLInfinity& boundary() const { return boundary_; }
  const CellMesh& mesh() const { return mesh_; }
  int polyCap() const { return cap_; }

  void setCondition(BoundaryCondition cond);
  bool hasCondition() const { return condition_.has_value(); }
  const BoundaryCondition& condition() const { return *condition_; }

  const OpenFields& fields(const OpenSet& u) const;

  // Honest polynomial-level operations.
  HonestField fromVec(const OpenSet& u, const Vec& x) const;
  HonestField basisField(const OpenSet& u, Index i) const;
  HonestField bracket(const OpenSet& u, const std::vector<HonestField>& args) const;
  HonestField differentialOf(const OpenSet& u, const HonestField& f) const;
  Rat pairFields(const OpenSet& u, const HonestField& a, const HonestField& b) const;
  Vec rhoOf(const OpenSet& u, const HonestField& f) const;
  /// True when every function part vanishes at each open end of its cell.
  bool compactlyFlagged(const OpenSet& u, const HonestField& f) const;
  /// Homogeneous degree of a field; empty for mixed fields.
  std::optional<int> degreeOf(const HonestField& f) const;

  /// Both sides of the arity-1 cyclicity defect:
  ///   ⟨b₁ f, g⟩ + (−1)^{|f|} ⟨f, b₁ g⟩  and  −⟨ρf, ρg⟩∂.
  /// The fields must be homogeneous; the orientation sign −1 is fixed once by
  /// the worked topological-mechanics value.
  std::pair<Rat, Rat> boundaryDefect(const OpenSet& u, const HonestField& f,
                                     const HonestField& g) const;

  /// Arity-1 defect identity on the compact basis plus cyclic invariance of
  /// every higher bracket against the pairing, all at the polynomial level.
  CheckResult checkIsotropic(const OpenSet& u) const;

  /// Ψ: Cone(ρ) → E_c(U)^∨, Ψ(f,g) = ⟨f,·⟩ − ⟨g, ρ(·)⟩∂; verifies the chain
  /// property and quasi-isomorphism; on connected boundary opens also checks
  /// that both sides are acyclic and that constants embed quasi-isomorphically.
  LagrangianReport checkLagrangian(const OpenSet& u) const;

  /// Degreewise surjectivity of ρ plus quasi-isomorphism of E_L with the
  /// three-term homotopy pullback built from ρ and L → E∂.
  CheckResult strictPullbackCheck(const OpenSet& u) const;

  /// Appendix-style splitting E(U) ≅ E_L(U) ⊕ L′ with extension I(c) = χ·c;
  /// χ must satisfy χ(0) = 1 and χ(width of cell 0) = 0.
  SplittingReport splitting(const OpenSet& u, const Poly& chi) const;
  Poly defaultCutoff() const;

  /// Restriction E(V) → E(U) on field coordinates, for U ⊆ V.
  Mat fieldRestriction(const OpenSet& v, const OpenSet& u) const;
  /// Restriction E_L(V) → E_L(U) in the conditioned bases.
  Mat conditionedRestriction(const OpenSet& v, const OpenSet& u) const;

  /// Cells plus the boundary point, as the point set of the Weiss condition.
  int pointCount(const OpenSet& u) const {
    return static_cast<int>(u.cells.size()) + (u.boundary ? 1 : 0);
  }

 private:
  void buildConditioned(OpenFields& of) const;

  std::string name_;
  CyclicLInfinity boundary_;
  CellMesh mesh_;
  int cap_;
  std::optional<BoundaryCondition> condition_;
  mutable std::map<OpenSet, std::shared_ptr<OpenFields>> cache_;
};

/// Topological mechanics: a symplectic coefficient space (ω(e₁,e₂) = 1 per
/// symplectic pair), no brackets.
CyclicLInfinity symplecticBoundary(int pairs);

/// BF boundary data on a point: g[1] ⊕ g^∨[n−2] with the evaluation pairing.
CyclicLInfinity bfBoundary(const LieAlgebra& g, int n);

BoundaryCondition lagrangianLineCondition(const Vec& l, const Vec& lPrime,
                                          const std::string& name = "line");
/// A condition: the g[1] summand; B condition: the g^∨ summand.
BoundaryCondition bfACondition(const LieAlgebra& g);
BoundaryCondition bfBCondition(const LieAlgebra& g);

}  // namespace bbk
