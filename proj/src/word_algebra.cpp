#include "bbk/word_algebra.hpp"

#include <stdexcept>

namespace bbk {

WordElem& addTo(WordElem& acc, const Word& w, const Rat& c) {
  if (c.isZero()) return acc;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.isZero()) acc.erase(it);
  }
  return acc;
}

WordElem scaled(const WordElem& e, const Rat& c) {
  WordElem out;
  if (c.isZero()) return out;
  for (const auto& [w, v] : e) out.emplace(w, v * c);
  return out;
}

int WordAlgebra::degreeOf(const Word& w) const {
  int d = 0;
  for (int g : w) d += gens_[g].degree;
  return d;
}

int WordAlgebra::weightOf(const Word& w) const {
  int d = 0;
  for (int g : w) d += gens_[g].weight;
  return d;
}

std::string WordAlgebra::labelOf(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += gens_[w[i]].label;
  }
  return s;
}

std::optional<std::pair<Rat, Word>> WordAlgebra::mul(const Word& a, const Word& b) const {
  Word out;
  out.reserve(a.size() + b.size());
  // Suffix degree parities of a, for crossing signs.
  std::vector<int> suffixParity(a.size() + 1, 0);
  for (size_t i = a.size(); i-- > 0;)
    suffixParity[i] = (suffixParity[i + 1] + (genOdd(a[i]) ? 1 : 0)) % 2;
  size_t i = 0, j = 0;
  int parity = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j] && genOdd(a[i])) return std::nullopt;
    if (a[i] <= b[j]) {
      out.push_back(a[i++]);
    } else {
      if (genOdd(b[j]) && suffixParity[i]) parity ^= 1;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  // Adjacent equal odd generators can also arise after the merge.
  for (size_t k = 0; k + 1 < out.size(); ++k)
    if (out[k] == out[k + 1] && genOdd(out[k])) return std::nullopt;
  return std::make_pair(parity ? Rat(-1) : Rat(1), std::move(out));
}

WordElem WordAlgebra::mul(const WordElem& a, const WordElem& b) const {
  WordElem out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      auto m = mul(wa, wb);
      if (!m) continue;
      addTo(out, m->second, m->first * ca * cb);
    }
  }
  return out;
}

WordElem WordAlgebra::mulTruncated(const WordElem& a, const WordElem& b, int weightCap) const {
  WordElem out = mul(a, b);
  for (auto it = out.begin(); it != out.end();) {
    if (weightOf(it->first) > weightCap)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

WordElem WordAlgebra::derive(const std::vector<WordElem>& genImages, const Word& w) const {
  WordElem out;
  int prefixParity = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    const WordElem& dg = genImages[w[i]];
    if (!dg.empty()) {
      Word prefix(w.begin(), w.begin() + i);
      Word suffix(w.begin() + i + 1, w.end());
      Rat sign = prefixParity ? Rat(-1) : Rat(1);
      for (const auto& [dw, dc] : dg) {
        auto m1 = mul(prefix, dw);
        if (!m1) continue;
        auto m2 = mul(m1->second, suffix);
        if (!m2) continue;
        addTo(out, m2->second, sign * m1->first * m2->first * dc);
      }
    }
    if (genOdd(w[i])) prefixParity ^= 1;
  }
  return out;
}

WordElem WordAlgebra::substitute(const std::vector<WordElem>& genImages, const Word& w) const {
  WordElem acc;
  acc.emplace(Word{}, Rat(1));
  for (int g : w) acc = mul(acc, genImages[g]);
  return acc;
}

WordElem WordAlgebra::substitute(const std::vector<WordElem>& genImages, const WordElem& e) const {
  WordElem out;
  for (const auto& [w, c] : e) {
    WordElem img = substitute(genImages, w);
    for (const auto& [iw, ic] : img) addTo(out, iw, ic * c);
  }
  return out;
}

namespace {
void enumerate(const WordAlgebra& alg, int cap, std::function<bool(const Word&)>& filter,
               Word& current, int fromGen, std::vector<Word>& out) {
  if (!filter || filter(current)) out.push_back(current);
  const int n = static_cast<int>(alg.gens().size());
  for (int g = fromGen; g < n; ++g) {
    if (alg.weightOf(current) + alg.gens()[g].weight > cap) continue;
    if (alg.genOdd(g) && !current.empty() && current.back() == g) continue;
    current.push_back(g);
    enumerate(alg, cap, filter, current, g, out);
    current.pop_back();
  }
}
}  // namespace

WordBasis::WordBasis(const WordAlgebra& alg, int weightCap, std::function<bool(const Word&)> filter)
    : cap_(weightCap) {
  Word current;
  enumerate(alg, weightCap, filter, current, 0, words_);
  std::vector<std::string> labels;
  std::vector<int> degrees;
  labels.reserve(words_.size());
  for (size_t i = 0; i < words_.size(); ++i) {
    labels.push_back(alg.labelOf(words_[i]));
    degrees.push_back(alg.degreeOf(words_[i]));
    index_.emplace(words_[i], static_cast<Index>(i));
  }
  space_ = makeSpace(std::move(labels), std::move(degrees));
}

std::optional<Index> WordBasis::indexOf(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vec WordBasis::toVec(const WordElem& e) const {
  Vec v = Vec::Zero(space_->dim());
  for (const auto& [w, c] : e) {
    auto idx = indexOf(w);
    if (idx) v(*idx) += c;
  }
  return v;
}

WordElem WordBasis::toElem(const Vec& v) const {
  WordElem e;
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).isZero()) e.emplace(words_[i], v(i));
  return e;
}

CochainComplex WordBasis::complex(const WordAlgebra& alg,
                                  const std::vector<WordElem>& genImages) const {
  GradedMap d(space_, space_, 1);
  for (size_t j = 0; j < words_.size(); ++j) {
    WordElem dj = alg.derive(genImages, words_[j]);
    for (const auto& [w, c] : dj) {
      auto idx = indexOf(w);
      if (idx) {
        d.addEntry(*idx, static_cast<Index>(j), c);
      } else if (alg.weightOf(w) <= cap_) {
        // Dropping above the cap is the truncation quotient; an in-cap miss
        // means the enumeration filter is not closed under d.
        throw std::invalid_argument("WordBasis::complex: differential escapes the basis at " +
                                    alg.labelOf(w));
      }
    }
  }
  return CochainComplex::checked(space_, std::move(d));
}

GradedMap WordBasis::inducedMap(const WordAlgebra& srcAlg, const WordBasis& target,
                                const WordAlgebra& tgtAlg,
                                const std::vector<WordElem>& genImages) const {
  GradedMap f(space_, target.space(), 0);
  for (size_t j = 0; j < words_.size(); ++j) {
    WordElem img = tgtAlg.substitute(genImages, words_[j]);
    for (const auto& [w, c] : img) {
      auto idx = target.indexOf(w);
      if (idx) f.addEntry(*idx, static_cast<Index>(j), c);
    }
  }
  return f;
}

}  // namespace bbk
