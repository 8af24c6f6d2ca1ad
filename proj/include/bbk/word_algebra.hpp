#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbk/graded.hpp"

namespace bbk {

/// Generator of a free graded-commutative algebra.
struct WordGen {
  std::string label;
  int degree = 0;
  int weight = 1;  // truncation weight; usually 1 per letter
};

/// Sorted multi-index into the generator list; odd generators never repeat.
using Word = std::vector<int32_t>;

struct WordTerm {
  Word word;
  Rat coeff;
};

/// Sparse element of the word algebra.
using WordElem = std::map<Word, Rat>;

WordElem& addTo(WordElem& acc, const Word& w, const Rat& c);
WordElem scaled(const WordElem& e, const Rat& c);

/// Free graded-commutative algebra on a finite generator list, with Koszul
/// normal form (ascending generator index; odd squares vanish).
class WordAlgebra {
 public:
  explicit WordAlgebra(std::vector<WordGen> gens) : gens_(std::move(gens)) {}

  const std::vector<WordGen>& gens() const { return gens_; }
  int genDegree(int g) const { return gens_[g].degree; }
  bool genOdd(int g) const { return gens_[g].degree % 2 != 0; }

  int degreeOf(const Word& w) const;
  int weightOf(const Word& w) const;
  std::string labelOf(const Word& w) const;

  /// Koszul-signed merge of two normal-form words; nullopt when the product
  /// vanishes (repeated odd generator).
  std::optional<std::pair<Rat, Word>> mul(const Word& a, const Word& b) const;
  WordElem mul(const WordElem& a, const WordElem& b) const;

  /// Multiplies, then drops words of weight > cap (truncated quotient algebra).
  WordElem mulTruncated(const WordElem& a, const WordElem& b, int weightCap) const;

  /// Degree-+1 derivation determined by generator images:
  /// d(g₁⋯g_m) = Σ_i (−1)^{|g₁|+⋯+|g_{i−1}|} g₁⋯(d g_i)⋯g_m.
  WordElem derive(const std::vector<WordElem>& genImages, const Word& w) const;

  /// Algebra map determined by generator images (degree-preserving).
  WordElem substitute(const std::vector<WordElem>& genImages, const Word& w) const;
  WordElem substitute(const std::vector<WordElem>& genImages, const WordElem& e) const;

 private:
  std::vector<WordGen> gens_;
};

/// Enumerated basis of words of weight ≤ cap, organized as a graded space.
class WordBasis {
 public:
  WordBasis(const WordAlgebra& alg, int weightCap,
            std::function<bool(const Word&)> filter = nullptr);

  const SpaceRef& space() const { return space_; }
  int weightCap() const { return cap_; }
  const std::vector<Word>& words() const { return words_; }
  std::optional<Index> indexOf(const Word& w) const;

  /// Projects an element onto the enumerated words (weight-truncation).
  Vec toVec(const WordElem& e) const;
  WordElem toElem(const Vec& v) const;

  /// The complex with differential induced by generator images, truncated at
  /// the weight cap (a quotient complex, since d never lowers weight).
  CochainComplex complex(const WordAlgebra& alg, const std::vector<WordElem>& genImages) const;

  /// Degree-0 map of word spaces induced by an algebra map on generators.
  GradedMap inducedMap(const WordAlgebra& srcAlg, const WordBasis& target,
                       const WordAlgebra& tgtAlg,
                       const std::vector<WordElem>& genImages) const;

 private:
  int cap_;
  std::vector<Word> words_;
  std::map<Word, Index> index_;
  SpaceRef space_;
};

}  // namespace bbk
