#include "bbk/linf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bbk {

namespace {

// Koszul sign for sorting a tuple of basis indices ascending (F-degrees).
// Returns nullopt when two equal odd indices collide (symmetric component 0).
std::optional<std::pair<Rat, std::vector<Index>>> canonicalize(const GradedVectorSpace& space,
                                                               std::vector<Index> idx) {
  int parity = 0;
  for (size_t i = 1; i < idx.size(); ++i) {
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      if ((space.degreeOf(idx[j]) % 2 != 0) && (space.degreeOf(idx[j - 1]) % 2 != 0)) parity ^= 1;
      std::swap(idx[j], idx[j - 1]);
    }
  }
  for (size_t i = 0; i + 1 < idx.size(); ++i) {
    if (idx[i] == idx[i + 1] && space.degreeOf(idx[i]) % 2 != 0) return std::nullopt;
  }
  return std::make_pair(parity ? Rat(-1) : Rat(1), std::move(idx));
}

Rat stabilizerFactorial(const std::vector<Index>& sorted) {
  Rat f(1);
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    for (size_t m = 2; m <= j - i; ++m) f *= Rat(static_cast<long>(m));
    i = j;
  }
  return f;
}

}  // namespace

CyclicLInfinity::CyclicLInfinity() : CyclicLInfinity(makeSpace({}, {}), 1, 0) {}

CyclicLInfinity::CyclicLInfinity(SpaceRef space, int maxArity, int declaredPairingDegree)
    : space_(std::move(space)),
      maxArity_(maxArity),
      pairingDegree_(declaredPairingDegree),
      d1_(space_, space_, 1),
      pairing_(Mat::Zero(space_->dim(), space_->dim())) {
  if (maxArity_ < 1) throw std::invalid_argument("CyclicLInfinity: maxArity must be >= 1");
}

void CyclicLInfinity::setDifferential(GradedMap d) {
  if (d.degree() != 1) throw std::invalid_argument("CyclicLInfinity: differential degree must be +1");
  d1_ = std::move(d);
}

CochainComplex CyclicLInfinity::complex() const { return CochainComplex::checked(space_, d1_); }

void CyclicLInfinity::addBracket(const std::vector<Index>& inputs, Index output, const Rat& coeff) {
  const int k = static_cast<int>(inputs.size());
  if (k > maxArity_)
    throw std::invalid_argument("CyclicLInfinity: arity budget exceeded (arity " +
                                std::to_string(k) + " > " + std::to_string(maxArity_) + ")");
  if (k < 2) throw std::invalid_argument("CyclicLInfinity: use setDifferential for arity 1");
  if (coeff.isZero()) return;
  // Degree check: brackets have degree +1.
  int degIn = 0;
  for (Index i : inputs) degIn += space_->degreeOf(i);
  if (space_->degreeOf(output) != degIn + 1)
    throw std::invalid_argument("CyclicLInfinity: bracket entry violates degree +1");
  auto canon = canonicalize(*space_, inputs);
  if (!canon)
    throw std::invalid_argument("CyclicLInfinity: repeated odd input has no symmetric component");
  auto& sparse = brackets_[k][canon->second];
  auto [it, inserted] = sparse.emplace(output, canon->first * coeff);
  if (!inserted) {
    it->second += canon->first * coeff;
    if (it->second.isZero()) sparse.erase(it);
  }
}

std::vector<std::pair<Index, Rat>> CyclicLInfinity::evalBasis(
    const std::vector<Index>& inputs) const {
  std::vector<std::pair<Index, Rat>> out;
  const int k = static_cast<int>(inputs.size());
  if (k == 1) {
    Vec e = Vec::Zero(space_->dim());
    e(inputs[0]) = Rat(1);
    Vec v = d1_.apply(e);
    for (Index i = 0; i < v.size(); ++i)
      if (!v(i).isZero()) out.emplace_back(i, v(i));
    return out;
  }
  auto itk = brackets_.find(k);
  if (itk == brackets_.end()) return out;
  auto canon = canonicalize(*space_, inputs);
  if (!canon) return out;
  auto it = itk->second.find(canon->second);
  if (it == itk->second.end()) return out;
  for (const auto& [o, c] : it->second) out.emplace_back(o, canon->first * c);
  return out;
}

Vec CyclicLInfinity::eval(const std::vector<Vec>& args) const {
  const int k = static_cast<int>(args.size());
  Vec out = Vec::Zero(space_->dim());
  if (k == 1) return d1_.apply(args[0]);
  // Expand multilinearly over nonzero coordinates.
  std::vector<std::vector<Index>> support(k);
  for (int i = 0; i < k; ++i)
    for (Index a = 0; a < args[i].size(); ++a)
      if (!args[i](a).isZero()) support[i].push_back(a);
  std::vector<size_t> pos(k, 0);
  if (std::any_of(support.begin(), support.end(), [](const auto& s) { return s.empty(); }))
    return out;
  while (true) {
    std::vector<Index> tuple(k);
    Rat c(1);
    for (int i = 0; i < k; ++i) {
      tuple[i] = support[i][pos[i]];
      c *= args[i](tuple[i]);
    }
    for (const auto& [o, v] : evalBasis(tuple)) out(o) += c * v;
    int i = k - 1;
    while (i >= 0 && ++pos[i] == support[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

bool CyclicLInfinity::hasArity(int k) const {
  if (k == 1) return !d1_.isZero();
  auto it = brackets_.find(k);
  return it != brackets_.end() && !it->second.empty();
}

int CyclicLInfinity::topNonzeroArity() const {
  int top = hasArity(1) ? 1 : 0;
  for (const auto& [k, m] : brackets_)
    if (!m.empty()) top = std::max(top, k);
  return top;
}

void CyclicLInfinity::setPairing(Mat p, bool symplectic) {
  if (p.rows() != space_->dim() || p.cols() != space_->dim())
    throw std::invalid_argument("CyclicLInfinity: pairing shape mismatch");
  pairing_ = std::move(p);
  symplectic_ = symplectic;
}

void CyclicLInfinity::setPairingEntry(Index i, Index j, const Rat& v) { pairing_(i, j) = v; }

int CyclicLInfinity::pairingValenceParity() const {
  for (Index i = 0; i < pairing_.rows(); ++i)
    for (Index j = 0; j < pairing_.cols(); ++j)
      if (!pairing_(i, j).isZero())
        return ((space_->degreeOf(i) + space_->degreeOf(j)) % 2 + 2) % 2;
  return 0;
}

Rat CyclicLInfinity::pair(const Vec& x, const Vec& y) const {
  Rat acc(0);
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i).isZero()) continue;
    for (Index j = 0; j < y.size(); ++j) {
      if (y(j).isZero() || pairing_(i, j).isZero()) continue;
      acc += x(i) * pairing_(i, j) * y(j);
    }
  }
  return acc;
}

std::vector<CyclicLInfinity::Entry> CyclicLInfinity::entries(int arity) const {
  std::vector<Entry> out;
  auto it = brackets_.find(arity);
  if (it == brackets_.end()) return out;
  for (const auto& [inputs, sparse] : it->second)
    for (const auto& [o, c] : sparse) out.push_back(Entry{inputs, o, c});
  return out;
}

namespace {

// Iterate ascending tuples (with repetition) of length n over [0, dim).
bool nextSortedTuple(std::vector<Index>& t, Index dim) {
  int i = static_cast<int>(t.size()) - 1;
  while (i >= 0 && t[i] == dim - 1) --i;
  if (i < 0) return false;
  Index v = t[i] + 1;
  for (size_t j = i; j < t.size(); ++j) t[j] = v;
  return true;
}

// Koszul sign of the (i, n−i) unshuffle given by selecting positions `sel`.
Rat unshuffleSign(const GradedVectorSpace& space, const std::vector<Index>& tuple,
                  const std::vector<int>& sel) {
  std::vector<bool> chosen(tuple.size(), false);
  for (int s : sel) chosen[s] = true;
  int parity = 0;
  for (int s : sel) {
    if (space.degreeOf(tuple[s]) % 2 == 0) continue;
    for (int m = 0; m < s; ++m)
      if (!chosen[m] && space.degreeOf(tuple[m]) % 2 != 0) parity ^= 1;
  }
  return parity ? Rat(-1) : Rat(1);
}

void forEachSubset(int n, int i, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> sel(i);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == i) {
      fn(sel);
      return;
    }
    for (int s = start; s < n; ++s) {
      sel[depth] = s;
      rec(s + 1, depth + 1);
    }
  };
  rec(0, 0);
}

Vec jacobiResidual(const CyclicLInfinity& alg, const std::vector<Index>& tuple) {
  const int n = static_cast<int>(tuple.size());
  Vec acc = Vec::Zero(alg.space()->dim());
  for (int i = 1; i <= n; ++i) {
    const int j = n + 1 - i;
    if (j < 1) continue;
    if (!alg.hasArity(i) || !alg.hasArity(j)) continue;
    forEachSubset(n, i, [&](const std::vector<int>& sel) {
      Rat sign = unshuffleSign(*alg.space(), tuple, sel);
      std::vector<Index> inner;
      inner.reserve(i);
      for (int s : sel) inner.push_back(tuple[s]);
      auto innerVal = alg.evalBasis(inner);
      if (innerVal.empty()) return;
      std::vector<bool> chosen(n, false);
      for (int s : sel) chosen[s] = true;
      std::vector<Index> rest;
      for (int m = 0; m < n; ++m)
        if (!chosen[m]) rest.push_back(tuple[m]);
      for (const auto& [o, c] : innerVal) {
        std::vector<Index> outer;
        outer.reserve(j);
        outer.push_back(o);
        for (Index r : rest) outer.push_back(r);
        for (const auto& [oo, cc] : alg.evalBasis(outer)) acc(oo) += sign * c * cc;
      }
    });
  }
  return acc;
}

std::string tupleStr(const GradedVectorSpace& space, const std::vector<Index>& tuple) {
  std::string s = "(";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ", ";
    s += space.labelOf(tuple[i]);
  }
  return s + ")";
}

}  // namespace

CheckResult checkJacobiAt(const CyclicLInfinity& alg, int n) {
  const int top = alg.topNonzeroArity();
  const int certified = std::max(1, 2 * alg.maxArity() - 1);
  if (n > certified)
    throw std::invalid_argument("checkJacobiAt: identity length exceeds the arity budget");
  if (top == 0 || alg.space()->dim() == 0) return CheckResult{};
  std::vector<Index> tuple(n, 0);
  do {
    // Repeated odd entries force the symmetric residual to vanish.
    Vec r = jacobiResidual(alg, tuple);
    for (Index i = 0; i < r.size(); ++i) {
      if (!r(i).isZero()) {
        CheckResult bad;
        bad.pass = false;
        bad.witnessTuple = tuple;
        std::ostringstream os;
        os << "identity of length " << n << " fails on " << tupleStr(*alg.space(), tuple)
           << " with residual component " << r(i).str() << " on " << alg.space()->labelOf(i);
        bad.detail = os.str();
        return bad;
      }
    }
  } while (nextSortedTuple(tuple, alg.space()->dim()));
  return CheckResult{};
}

CheckResult checkJacobi(const CyclicLInfinity& alg) {
  const int top = alg.topNonzeroArity();
  if (top == 0) return CheckResult{};
  for (int n = 1; n <= 2 * top - 1; ++n) {
    CheckResult r = checkJacobiAt(alg, n);
    if (!r.pass) return r;
  }
  return CheckResult{};
}

CheckResult checkCyclic(const CyclicLInfinity& alg, CyclicOptions opts) {
  const auto& space = *alg.space();
  const Mat& p = alg.pairingMatrix();
  // Pairing symmetry: ⟨y,x⟩ = −(−1)^{|x||y|} ⟨x,y⟩.
  for (Index i = 0; i < space.dim(); ++i) {
    for (Index j = 0; j < space.dim(); ++j) {
      Rat expected = ((space.degreeOf(i) * space.degreeOf(j)) % 2 == 0) ? -p(i, j) : p(i, j);
      if (p(j, i) != expected) {
        CheckResult bad;
        bad.pass = false;
        bad.witnessTuple = {i, j};
        bad.detail = "pairing symmetry fails on (" + space.labelOf(i) + ", " + space.labelOf(j) + ")";
        return bad;
      }
    }
  }
  if (alg.symplectic() && space.dim() > 0 && rank(p) != space.dim()) {
    CheckResult bad;
    bad.pass = false;
    bad.detail = "pairing flagged symplectic but degenerate";
    return bad;
  }
  // θ_k(f₀,…,f_k) = ⟨f₀, b_k(f₁,…,f_k)⟩ must be symmetric under the
  // slot-0/slot-1 swap with the parity-twisted Koszul sign
  //   (−1)^{|a||b| + p(|a|+|b|)},
  // p the pairing valence parity; the other swaps are built into the
  // bracket storage (docs/signs.md).
  const int top = alg.topNonzeroArity();
  const int vp = alg.pairingValenceParity();
  auto par = [](int x) { return ((x % 2) + 2) % 2; };
  for (int k = 1; k <= top; ++k) {
    if (!alg.hasArity(k)) continue;
    if (k == 1 && !opts.includeArity1) continue;
    std::vector<Index> rest(k - 1, 0);
    bool more = true;
    while (more) {
      for (Index a = 0; a < space.dim(); ++a) {
        for (Index b = 0; b < space.dim(); ++b) {
          std::vector<Index> args1;
          args1.push_back(b);
          args1.insert(args1.end(), rest.begin(), rest.end());
          Rat lhs(0);
          for (const auto& [o, c] : alg.evalBasis(args1)) lhs += p(a, o) * c;
          std::vector<Index> args2;
          args2.push_back(a);
          args2.insert(args2.end(), rest.begin(), rest.end());
          Rat rhs(0);
          for (const auto& [o, c] : alg.evalBasis(args2)) rhs += p(b, o) * c;
          const int da = space.degreeOf(a), db = space.degreeOf(b);
          Rat sign = (par(da * db + vp * (da + db)) == 0) ? Rat(1) : Rat(-1);
          if (lhs != sign * rhs) {
            CheckResult bad;
            bad.pass = false;
            bad.witnessTuple = {a, b};
            bad.witnessTuple.insert(bad.witnessTuple.end(), rest.begin(), rest.end());
            std::ostringstream os;
            os << "cyclic invariance fails at arity " << k << " on "
               << tupleStr(space, bad.witnessTuple) << ": " << lhs.str() << " vs "
               << (sign * rhs).str();
            bad.detail = os.str();
            return bad;
          }
        }
      }
      more = !rest.empty() && nextSortedTuple(rest, space.dim());
      if (rest.empty()) more = false;
    }
  }
  return CheckResult{};
}

Rat actionFunctional(const CyclicLInfinity& alg, const Vec& phi) {
  Rat acc(0);
  const int top = alg.topNonzeroArity();
  for (int k = 1; k <= top; ++k) {
    if (!alg.hasArity(k)) continue;
    std::vector<Vec> args(k, phi);
    Vec v = alg.eval(args);
    acc += Rat::invFactorial(k + 1) * alg.pair(phi, v);
  }
  return acc;
}

Rat interactionFunctional(const CyclicLInfinity& alg, const Vec& phi) {
  Rat acc = actionFunctional(alg, phi);
  if (alg.hasArity(1)) {
    acc -= Rat::invFactorial(2) * alg.pair(phi, alg.differential().apply(phi));
  }
  return acc;
}

WordAlgebra ceWordAlgebra(const CyclicLInfinity& alg) {
  std::vector<WordGen> gens;
  const auto& space = *alg.space();
  for (Index i = 0; i < space.dim(); ++i)
    gens.push_back(WordGen{space.labelOf(i) + "^", -space.degreeOf(i), 1});
  return WordAlgebra(std::move(gens));
}

std::vector<WordElem> ceGeneratorImages(const CyclicLInfinity& alg, const WordAlgebra& walg) {
  const auto& space = *alg.space();
  std::vector<WordElem> images(space.dim());
  // Arity 1: d ξ^b = −Σ_a ⟨ξ^b, b₁ e_a⟩ ξ^a.
  for (const auto& [k, m] : alg.differential().blocks()) {
    const auto& src = space.slot(k);
    const auto& tgt = space.slot(k + 1);
    for (size_t j = 0; j < src.size(); ++j)
      for (size_t i = 0; i < tgt.size(); ++i) {
        const Rat& c = m(static_cast<Index>(i), static_cast<Index>(j));
        if (c.isZero()) continue;
        addTo(images[tgt[i]], Word{static_cast<int32_t>(src[j])}, -c);
      }
  }
  // Arity ≥ 2: for a canonical entry b_k(a⃗) ∋ c·e_o,
  //   d ξ^o −= c/|stab(a⃗)| · ξ^{a₁}⋯ξ^{a_k}.
  // The universal-element expansion produces the reversed word together with
  // a coordinate-interleave sign; the two Koszul factors cancel exactly, so
  // the ascending word enters with prefactor 1 (docs/signs.md).
  for (int k = 2; k <= alg.maxArity(); ++k) {
    for (const auto& e : alg.entries(k)) {
      Rat coeff = -(e.coeff / stabilizerFactorial(e.inputs));
      Word w;
      for (Index a : e.inputs) w.push_back(static_cast<int32_t>(a));
      addTo(images[e.output], w, coeff);
    }
  }
  return images;
}

CeComplex ceComplex(const CyclicLInfinity& alg, int symTruncation) {
  if (symTruncation < 1) throw std::invalid_argument("ceComplex: truncation must be >= 1");
  const int top = alg.topNonzeroArity();
  if (top >= 2 && symTruncation < top - 1)
    throw std::invalid_argument("ceComplex: truncation too small for the bracket arity");
  WordAlgebra walg = ceWordAlgebra(alg);
  std::vector<WordElem> images = ceGeneratorImages(alg, walg);
  WordBasis basis(walg, symTruncation);
  CochainComplex cc = basis.complex(walg, images);
  return CeComplex{std::move(walg), std::move(basis), std::move(images), std::move(cc)};
}

CyclicLInfinity tensorWithCdga(const CyclicLInfinity& boundary, const CdgaModel& omega,
                               int bulkPairingDegree) {
  const auto& vs = *boundary.space();
  const auto& os = *omega.complex.space;
  const Index nv = vs.dim(), no = os.dim();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  labels.reserve(nv * no);
  for (Index v = 0; v < nv; ++v)
    for (Index w = 0; w < no; ++w) {
      labels.push_back(vs.labelOf(v) + "(x)" + os.labelOf(w));
      degrees.push_back(vs.degreeOf(v) + os.degreeOf(w));
    }
  SpaceRef space = makeSpace(std::move(labels), std::move(degrees));
  CyclicLInfinity bulk(space, boundary.maxArity(), bulkPairingDegree);
  auto flat = [no](Index v, Index w) { return v * no + w; };

  // b₁ = b₁∂ ⊗ 1 + (−1)^{|v|} v ⊗ d.
  GradedMap d1(space, space, 1);
  for (const auto& [k, m] : boundary.differential().blocks()) {
    const auto& src = vs.slot(k);
    const auto& tgt = vs.slot(k + 1);
    for (size_t j = 0; j < src.size(); ++j)
      for (size_t i = 0; i < tgt.size(); ++i) {
        const Rat& c = m(static_cast<Index>(i), static_cast<Index>(j));
        if (c.isZero()) continue;
        for (Index w = 0; w < no; ++w) d1.addEntry(flat(tgt[i], w), flat(src[j], w), c);
      }
  }
  for (const auto& [k, m] : omega.complex.d.blocks()) {
    const auto& src = os.slot(k);
    const auto& tgt = os.slot(k + 1);
    for (size_t j = 0; j < src.size(); ++j)
      for (size_t i = 0; i < tgt.size(); ++i) {
        const Rat& c = m(static_cast<Index>(i), static_cast<Index>(j));
        if (c.isZero()) continue;
        for (Index v = 0; v < nv; ++v) {
          Rat sign = (vs.degreeOf(v) % 2 == 0) ? Rat(1) : Rat(-1);
          d1.addEntry(flat(v, tgt[i]), flat(v, src[j]), sign * c);
        }
      }
  }
  bulk.setDifferential(std::move(d1));

  // Higher brackets on canonical (ascending) tuples of product basis vectors.
  for (int k = 2; k <= boundary.maxArity() && nv * no > 0; ++k) {
    if (!boundary.hasArity(k)) continue;
    std::vector<Index> tuple(k, 0);
    do {
      std::vector<Index> vIdx(k), wIdx(k);
      for (int i = 0; i < k; ++i) {
        vIdx[i] = tuple[i] / no;
        wIdx[i] = tuple[i] % no;
      }
      auto bval = boundary.evalBasis(vIdx);
      if (bval.empty()) continue;
      // Koszul sign for interleaving ω's past coefficient slots.
      int parity = 0;
      for (int i = 0; i < k; ++i) {
        if (os.degreeOf(wIdx[i]) % 2 == 0) continue;
        for (int j = i + 1; j < k; ++j)
          if (vs.degreeOf(vIdx[j]) % 2 != 0) parity ^= 1;
      }
      // Product of the ω's observed through the basis.
      std::vector<std::pair<Index, Rat>> prod = {{wIdx[0], Rat(1)}};
      for (int i = 1; i < k && !prod.empty(); ++i) {
        std::vector<std::pair<Index, Rat>> next;
        for (const auto& [wi, ci] : prod)
          for (const auto& [wo, co] : omega.mulProjected(wi, wIdx[i]))
            next.emplace_back(wo, ci * co);
        prod = std::move(next);
      }
      if (prod.empty()) continue;
      Rat sign = parity ? Rat(-1) : Rat(1);
      for (const auto& [vo, cv] : bval)
        for (const auto& [wo, cw] : prod) {
          Rat coeff = sign * cv * cw;
          if (!coeff.isZero()) bulk.addBracket(tuple, flat(vo, wo), coeff);
        }
    } while (nextSortedTuple(tuple, nv * no));
  }

  // Pairing: ⟨v₁⊗ω₁, v₂⊗ω₂⟩ = (−1)^{|ω₁||v₂|} ⟨v₁,v₂⟩ ∫ ω₁∧ω₂ (exact).
  Mat p = Mat::Zero(nv * no, nv * no);
  for (Index v1 = 0; v1 < nv; ++v1)
    for (Index v2 = 0; v2 < nv; ++v2) {
      const Rat& pb = boundary.pairingMatrix()(v1, v2);
      if (pb.isZero()) continue;
      for (Index w1 = 0; w1 < no; ++w1)
        for (Index w2 = 0; w2 < no; ++w2) {
          Rat integral = omega.integratePair(w1, w2);
          if (integral.isZero()) continue;
          Rat sign = ((os.degreeOf(w1) * vs.degreeOf(v2)) % 2 == 0) ? Rat(1) : Rat(-1);
          p(flat(v1, w1), flat(v2, w2)) = sign * pb * integral;
        }
    }
  bulk.setPairing(std::move(p), false);
  return bulk;
}

CyclicLInfinity restrictAlgebra(const CyclicLInfinity& alg, SpaceRef subSpace,
                                const Mat& inclusion) {
  const Index subDim = inclusion.cols();
  if (subSpace->dim() != subDim) throw std::invalid_argument("restrictAlgebra: dim mismatch");
  CyclicLInfinity out(subSpace, alg.maxArity(), alg.declaredPairingDegree());

  auto express = [&](const Vec& v) -> Vec {
    auto x = solve(inclusion, v);
    if (!x) throw std::invalid_argument("restrictAlgebra: brackets do not close on the subspace");
    return *x;
  };

  GradedMap d1(subSpace, subSpace, 1);
  for (Index j = 0; j < subDim; ++j) {
    Vec dj = express(alg.differential().apply(inclusion.col(j)));
    for (Index i = 0; i < subDim; ++i)
      if (!dj(i).isZero()) d1.addEntry(i, j, dj(i));
  }
  out.setDifferential(std::move(d1));

  for (int k = 2; k <= alg.maxArity() && subDim > 0; ++k) {
    if (!alg.hasArity(k)) continue;
    std::vector<Index> tuple(k, 0);
    do {
      std::vector<Vec> args;
      args.reserve(k);
      for (Index t : tuple) args.push_back(inclusion.col(t));
      Vec v = alg.eval(args);
      bool zero = true;
      for (Index i = 0; i < v.size(); ++i)
        if (!v(i).isZero()) {
          zero = false;
          break;
        }
      if (zero) continue;
      Vec x = express(v);
      for (Index i = 0; i < subDim; ++i)
        if (!x(i).isZero()) out.addBracket(tuple, i, x(i));
    } while (nextSortedTuple(tuple, subDim));
  }

  Mat p(subDim, subDim);
  for (Index i = 0; i < subDim; ++i)
    for (Index j = 0; j < subDim; ++j)
      p(i, j) = alg.pair(inclusion.col(i), inclusion.col(j));
  out.setPairing(std::move(p), false);
  return out;
}

LieAlgebra LieAlgebra::abelian(int n, const std::string& prefix) {
  LieAlgebra g;
  for (int i = 0; i < n; ++i) g.basis.push_back(prefix + std::to_string(i + 1));
  g.structure.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
  return g;
}

LieAlgebra LieAlgebra::sl2() {
  LieAlgebra g;
  g.basis = {"e", "f", "h"};
  g.structure.assign(3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
  auto set = [&](int i, int j, int k, long c) {
    g.structure[i][j][k] = Rat(c);
    g.structure[j][i][k] = Rat(-c);
  };
  // [e,f] = h, [h,e] = 2e, [h,f] = −2f
  set(0, 1, 2, 1);
  set(2, 0, 0, 2);
  set(2, 1, 1, -2);
  Mat killing = Mat::Zero(3, 3);
  // Killing form in the (e,f,h) basis.
  killing(0, 1) = Rat(4);
  killing(1, 0) = Rat(4);
  killing(2, 2) = Rat(8);
  g.invariantForm = killing;
  return g;
}

LieAlgebra LieAlgebra::directSum(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra g;
  const int na = a.dim(), nb = b.dim();
  for (const auto& l : a.basis) g.basis.push_back("a." + l);
  for (const auto& l : b.basis) g.basis.push_back("b." + l);
  const int n = na + nb;
  g.structure.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k) g.structure[i][j][k] = a.structure[i][j][k];
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k) g.structure[na + i][na + j][na + k] = b.structure[i][j][k];
  return g;
}

CheckResult LieAlgebra::validate() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (structure[i][j][k] != -structure[j][i][k]) {
          CheckResult bad;
          bad.pass = false;
          bad.detail = "antisymmetry fails on (" + basis[i] + ", " + basis[j] + ")";
          return bad;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
        std::vector<Rat> acc(n, Rat(0));
        for (int m = 0; m < n; ++m) {
          for (int t = 0; t < n; ++t) {
            acc[t] += structure[i][j][m] * structure[m][k][t];
            acc[t] += structure[j][k][m] * structure[m][i][t];
            acc[t] += structure[k][i][m] * structure[m][j][t];
          }
        }
        for (int t = 0; t < n; ++t)
          if (!acc[t].isZero()) {
            CheckResult bad;
            bad.pass = false;
            bad.witnessTuple = {i, j, k};
            bad.detail = "Jacobi fails on (" + basis[i] + ", " + basis[j] + ", " + basis[k] + ")";
            return bad;
          }
      }
  return CheckResult{};
}

CyclicLInfinity gaugeAlgebra(const LieAlgebra& g, int maxArity) {
  const int n = g.dim();
  std::vector<std::string> labels = g.basis;
  std::vector<int> degrees(n, -1);
  SpaceRef space = makeSpace(std::move(labels), std::move(degrees));
  CyclicLInfinity alg(space, maxArity, -2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!g.structure[i][j][k].isZero())
          alg.addBracket({i, j}, k, g.structure[i][j][k]);
  if (g.invariantForm) alg.setPairing(*g.invariantForm, false);
  return alg;
}

CyclicLInfinity coadjointGaugeAlgebra(const LieAlgebra& g, int dualFDegree, bool withPairing,
                                      int maxArity) {
  const int n = g.dim();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (const auto& l : g.basis) {
    labels.push_back(l);
    degrees.push_back(-1);
  }
  for (const auto& l : g.basis) {
    labels.push_back(l + "*");
    degrees.push_back(dualFDegree);
  }
  SpaceRef space = makeSpace(std::move(labels), std::move(degrees));
  CyclicLInfinity alg(space, maxArity, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!g.structure[i][j][k].isZero()) alg.addBracket({i, j}, k, g.structure[i][j][k]);
  // Coadjoint action: b₂(x_i, ξ^j) = −Σ_m c^j_{im} ξ^m.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        if (!g.structure[i][m][j].isZero())
          alg.addBracket({i, static_cast<Index>(n + j)}, n + m, -g.structure[i][m][j]);
  if (withPairing) {
    Mat p = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      p(i, n + i) = Rat(1);
      // ⟨ξ, x⟩ = −(−1)^{|x||ξ|} ⟨x, ξ⟩ with |x| = −1.
      p(n + i, i) = (dualFDegree % 2 == 0) ? Rat(-1) : Rat(1);
    }
    alg.setPairing(std::move(p), true);
  }
  return alg;
}

}  // namespace bbk
