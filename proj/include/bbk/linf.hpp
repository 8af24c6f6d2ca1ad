#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbk/graded.hpp"
#include "bbk/word_algebra.hpp"

namespace bbk {

/// Cyclic L∞ structure on a finite graded field space F.
///
/// Brackets are stored in the shifted-symmetric convention: every b_k is a
/// graded-symmetric multilinear operation on F of degree +1, and the
/// generalized Jacobi identities carry pure Koszul signs in F-degrees
/// (docs/signs.md gives the dictionary to the antisymmetric picture on
/// F[−1]). b₁ doubles as the differential of the underlying complex.
///
/// Pairings are graded-antisymmetric in the shifted sense:
/// ⟨y,x⟩ = −(−1)^{|x||y|} ⟨x,y⟩ with F-degrees.
class CyclicLInfinity {
 public:
  CyclicLInfinity();  // empty theory
  CyclicLInfinity(SpaceRef space, int maxArity, int declaredPairingDegree);

  const SpaceRef& space() const { return space_; }
  int maxArity() const { return maxArity_; }
  int declaredPairingDegree() const { return pairingDegree_; }

  void setDifferential(GradedMap d);
  const GradedMap& differential() const { return d1_; }
  CochainComplex complex() const;

  /// Adds a structure constant b_k(inputs) ∋ coeff·e_output. Inputs may come
  /// in any order; they are canonicalized with Koszul signs. Arity beyond the
  /// budget is refused.
  void addBracket(const std::vector<Index>& inputs, Index output, const Rat& coeff);

  /// Sparse value of b_k on a basis tuple (any order).
  std::vector<std::pair<Index, Rat>> evalBasis(const std::vector<Index>& inputs) const;
  /// Multilinear evaluation on vectors (includes b₁ when arity is 1).
  Vec eval(const std::vector<Vec>& args) const;
  bool hasArity(int k) const;
  int topNonzeroArity() const;

  void setPairing(Mat p, bool symplectic);
  void setPairingEntry(Index i, Index j, const Rat& v);
  const Mat& pairingMatrix() const { return pairing_; }
  bool symplectic() const { return symplectic_; }
  /// Parity of the total degree the pairing is supported on (0 for boundary
  /// pairings, 1 for interval-integration pairings). Zero pairings report 0.
  int pairingValenceParity() const;
  Rat pair(const Vec& x, const Vec& y) const;
  Rat pairBasis(Index i, Index j) const { return pairing_(i, j); }

  /// All stored entries of arity k, canonical order.
  struct Entry {
    std::vector<Index> inputs;
    Index output;
    Rat coeff;
  };
  std::vector<Entry> entries(int arity) const;

 private:
  SpaceRef space_;
  int maxArity_;
  int pairingDegree_;
  GradedMap d1_;
  // arity (≥2) -> canonical input tuple -> sparse output
  std::map<int, std::map<std::vector<Index>, std::map<Index, Rat>>> brackets_;
  Mat pairing_;
  bool symplectic_ = false;
};

struct CheckResult {
  bool pass = true;
  std::string detail;                 // human-readable witness
  std::vector<Index> witnessTuple;    // offending basis tuple, if any
};

/// Generalized Jacobi identities for n = 1 .. 2·topArity−1 on all basis
/// tuples:  Σ_{i+j=n+1} Σ_{(i,n−i)-unshuffles σ} ε(σ) b_j(b_i(…), …) = 0.
CheckResult checkJacobi(const CyclicLInfinity& alg);
/// Single identity at word length n; refuses n beyond the certified range.
CheckResult checkJacobiAt(const CyclicLInfinity& alg, int n);

struct CyclicOptions {
  bool includeArity1 = true;  // skip for models whose ℓ₁ has a boundary defect
};

/// Pairing symmetry, nondegeneracy when flagged symplectic, and the
/// cyclic invariance of θ_k(f₀,…,f_k) = ⟨f₀, b_k(f₁,…,f_k)⟩, which must be
/// graded-symmetric with F-Koszul signs.
CheckResult checkCyclic(const CyclicLInfinity& alg, CyclicOptions opts = {});

/// S(φ) = Σ_{k≥1} 1/(k+1)! ⟨φ, b_k(φ,…,φ)⟩; the interaction drops k = 1.
Rat actionFunctional(const CyclicLInfinity& alg, const Vec& phi);
Rat interactionFunctional(const CyclicLInfinity& alg, const Vec& phi);

/// Chevalley–Eilenberg complex on Sym^{≤T}(F^∨): dual generators ξ^a of
/// degree −|e_a|, with d ξ^b accumulated from the structure constants and
/// extended as a degree-+1 derivation. Truncation is a quotient complex.
struct CeComplex {
  WordAlgebra alg;
  WordBasis basis;
  std::vector<WordElem> genImages;  // d of each generator
  CochainComplex complex;

  const SpaceRef& space() const { return basis.space(); }
};
CeComplex ceComplex(const CyclicLInfinity& alg, int symTruncation);

/// Generator images of the CE differential only (no enumeration).
std::vector<WordElem> ceGeneratorImages(const CyclicLInfinity& alg, const WordAlgebra& walg);
WordAlgebra ceWordAlgebra(const CyclicLInfinity& alg);

/// Finite commutative dg algebra presented on a basis: products observed
/// through the basis (a filtered truncation may drop top components — exact
/// for every functional supported on the basis), plus the exact integration
/// pairing and boundary evaluation used by interval models.
struct CdgaModel {
  CochainComplex complex;
  /// Projection of basis_i · basis_j onto the basis.
  std::function<std::vector<std::pair<Index, Rat>>(Index, Index)> mulProjected;
  /// Exact ∫ basis_i ∧ basis_j (no truncation).
  std::function<Rat(Index, Index)> integratePair;
  /// Pullback of basis_i to the boundary point; empty when the model has none.
  std::function<Rat(Index)> eval0;
  Vec unit;  // coordinates of 1
};

/// Tensor of a cyclic L∞ structure with a commutative dg algebra model:
/// b_k(v₁⊗ω₁,…,v_k⊗ω_k) = ±b_k(v⃗)⊗(ω₁⋯ω_k), b₁ gains 1⊗d, and the pairing
/// becomes ⟨,⟩⊗∫(· ∧ ·). Basis order: coefficient index major.
CyclicLInfinity tensorWithCdga(const CyclicLInfinity& boundary, const CdgaModel& omega,
                               int bulkPairingDegree);

/// Restricts an algebra to a subspace given by inclusion columns; verifies
/// bracket closure exactly and pulls back the pairing.
CyclicLInfinity restrictAlgebra(const CyclicLInfinity& alg, SpaceRef subSpace,
                                const Mat& inclusion);

/// Finite Lie algebra data with optional invariant form.
struct LieAlgebra {
  std::vector<std::string> basis;
  // structure[i][j] = coefficients of [e_i, e_j]
  std::vector<std::vector<std::vector<Rat>>> structure;
  std::optional<Mat> invariantForm;

  int dim() const { return static_cast<int>(basis.size()); }
  static LieAlgebra abelian(int n, const std::string& prefix = "x");
  static LieAlgebra sl2();
  static LieAlgebra directSum(const LieAlgebra& a, const LieAlgebra& b);

  /// Antisymmetry and the classical Jacobi identity on basis triples.
  CheckResult validate() const;
};

/// g placed in gauge position: F = g[1] (degree −1), b₂ = the Lie bracket,
/// optional pairing from the invariant form.
CyclicLInfinity gaugeAlgebra(const LieAlgebra& g, int maxArity = 3);

/// F = g[1] ⊕ g^∨[shift]: the coadjoint semidirect product in gauge
/// position; the pairing is the evaluation pairing when requested.
CyclicLInfinity coadjointGaugeAlgebra(const LieAlgebra& g, int dualShift, bool withPairing,
                                      int maxArity = 3);

}  // namespace bbk
