#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "bbk/tnbft.hpp"

namespace bbk {

/// Sym-truncated observable complexes over the opens of a bulk-boundary
/// system: Sym^{≤T}(E_L(U)^∨) with the Chevalley-Eilenberg differential,
/// cached per open, plus the prefactorization structure maps.
class ObservablesContext {
 public:
  ObservablesContext(const BulkBoundarySystem& sys, int truncation);

  const BulkBoundarySystem& system() const { return sys_; }
  int truncation() const { return t_; }

  const CeComplex& obs(const OpenSet& u) const;

  /// Dual of the field restriction E_L(V) → E_L(U), extended multiplicatively:
  /// obs(U) → obs(V) for U ⊆ V.
  GradedMap extension(const OpenSet& u, const OpenSet& v) const;

  /// Structure map for pairwise disjoint opens inside V: extend each input,
  /// then multiply in the truncated algebra. Rejects overlapping inputs.
  WordElem structureMap(const std::vector<OpenSet>& parts, const std::vector<WordElem>& inputs,
                        const OpenSet& v) const;

  /// Every ≤level-point set of cells (plus the boundary point, if present)
  /// of V lies inside a single member.
  bool weissAtLevel(const OpenSet& v, const std::vector<OpenSet>& cover, int level) const;

  /// Irredundant covers of V (antichains of proper or improper sub-opens)
  /// satisfying the Weiss condition at the given level.
  std::vector<std::vector<OpenSet>> weissCovers(const OpenSet& v, int level) const;

  /// Čech complex of the cover against the observable precosheaf; passes when
  /// the augmentation to obs(V) is a quasi-isomorphism (exact ranks).
  /// A non-Weiss cover is a precondition error, not a failure.
  CheckResult weissCechCheck(const OpenSet& v, const std::vector<OpenSet>& cover) const;

 private:
  const std::vector<WordElem>& extensionImages(const OpenSet& u, const OpenSet& v) const;
  const BulkBoundarySystem& sys_;
  int t_;
  mutable std::map<OpenSet, std::shared_ptr<CeComplex>> cache_;
  mutable std::map<std::pair<OpenSet, OpenSet>, std::vector<WordElem>> extImages_;
};

/// Observables presented by pairing kernels: the subalgebra generated by
/// O_φ(e) = ⟨φ, e⟩ with φ a compactly flagged conditioned field. Carries the
/// degree-+1 Poisson bracket {O_φ, O_ψ} = ⟨φ, ψ⟩ extended as a biderivation.
class KernelObservables {
 public:
  KernelObservables(const BulkBoundarySystem& sys, OpenSet u, std::vector<HonestField> kernels);

  int size() const { return static_cast<int>(kernels_.size()); }
  const WordAlgebra& words() const { return alg_; }
  /// Functional degree of O_{φ_i} (= |φ_i| − 1).
  int degreeOf(int i) const { return alg_.gens()[i].degree; }
  Rat kernelPairing(int i, int j) const { return pairing_(i, j); }

  /// The shifted Poisson bracket on kernel words.
  WordElem bracket(const WordElem& f, const WordElem& g) const;

  /// d at the kernel level: O_φ ↦ (−1)^{|φ|} O_{b₁φ} (+ quadratic terms from
  /// the higher brackets, expanded back into kernel generators). Requires the
  /// kernel span to be closed under those operations.
  WordElem differential(const WordElem& f) const;

  /// Expansion into the observable complex of the same open.
  WordElem expand(const ObservablesContext& ctx, const WordElem& f) const;

 private:
  std::optional<WordElem> presentLinear(const HonestField& f) const;
  const BulkBoundarySystem& sys_;
  OpenSet u_;
  std::vector<HonestField> kernels_;
  WordAlgebra alg_;
  Mat pairing_;
};

/// Factorization data assigning an algebra to interior cells and a module to
/// the boundary cell, both realized as CE complexes of finite coefficient
/// algebras (the value on an open is the tensor product over its components).
struct AMFactorization {
  CyclicLInfinity interior;  // S_int
  CyclicLInfinity boundary;  // S_bdy
  Mat inclusion;             // S_bdy → S_int, fields
  int truncation = 2;

  /// Block-sum coefficient algebra over the components of U.
  CyclicLInfinity valueAlgebra(const OpenSet& u) const;
  CeComplex value(const OpenSet& u) const;
};

struct AmCompareReport {
  bool pass = false;
  std::string detail;
  std::map<OpenSet, std::map<int, Index>> dims;  // candidate cohomology per open
};

/// The constants-inclusion S(U) → E_L(U) induces obs(U) → F_{A,M}(U);
/// verifies it is a chain map and quasi-isomorphism on every open and that it
/// commutes with the structure maps of all disjoint pairs.
AmCompareReport amCompare(const ObservablesContext& ctx, const AMFactorization& fam);

/// Canonical candidate for a conditioned system: interior value from the
/// boundary coefficients, boundary value from the condition subalgebra.
AMFactorization famFromSystem(const BulkBoundarySystem& sys, int truncation);

/// Algebra/module axioms for abstractly presented (A, M) data.
struct FamCheck {
  bool associative = false;
  bool unital = false;
  bool moduleLaw = false;
  bool pass = false;
  std::string detail;
};
struct FiniteAlgebra {
  CochainComplex complex;
  std::function<std::vector<std::pair<Index, Rat>>(Index, Index)> mul;
  Vec unit;
};
struct FiniteModule {
  CochainComplex complex;
  std::function<std::vector<std::pair<Index, Rat>>(Index, Index)> act;  // m ⊗ a → m
};
FamCheck famBuilderCheck(const FiniteAlgebra& a, const FiniteModule& m);

}  // namespace bbk
