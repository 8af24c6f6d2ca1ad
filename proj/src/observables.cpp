#include "bbk/observables.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bbk {

ObservablesContext::ObservablesContext(const BulkBoundarySystem& sys, int truncation)
    : sys_(sys), t_(truncation) {
  if (t_ < 1) throw std::invalid_argument("ObservablesContext: truncation must be >= 1");
}

const CeComplex& ObservablesContext::obs(const OpenSet& u) const {
  auto it = cache_.find(u);
  if (it != cache_.end()) return *it->second;
  const auto& of = sys_.fields(u);
  const CyclicLInfinity& alg = sys_.hasCondition() ? *of.el : of.algebra;
  auto ce = std::make_shared<CeComplex>(ceComplex(alg, t_));
  auto [pos, inserted] = cache_.emplace(u, std::move(ce));
  return *pos->second;
}

const std::vector<WordElem>& ObservablesContext::extensionImages(const OpenSet& u,
                                                                 const OpenSet& v) const {
  auto key = std::make_pair(u, v);
  auto it = extImages_.find(key);
  if (it != extImages_.end()) return it->second;
  const CeComplex& src = obs(u);
  Mat r = sys_.hasCondition() ? sys_.conditionedRestriction(v, u) : sys_.fieldRestriction(v, u);
  std::vector<WordElem> genImages(src.alg.gens().size());
  for (Index a = 0; a < r.rows(); ++a) {
    for (Index b = 0; b < r.cols(); ++b) {
      if (!r(a, b).isZero()) addTo(genImages[a], Word{static_cast<int32_t>(b)}, r(a, b));
    }
  }
  return extImages_.emplace(key, std::move(genImages)).first->second;
}

GradedMap ObservablesContext::extension(const OpenSet& u, const OpenSet& v) const {
  if (!v.contains(u)) throw std::invalid_argument("extension: U must lie inside V");
  const CeComplex& src = obs(u);
  const CeComplex& tgt = obs(v);
  return src.basis.inducedMap(src.alg, tgt.basis, tgt.alg, extensionImages(u, v));
}

WordElem ObservablesContext::structureMap(const std::vector<OpenSet>& parts,
                                          const std::vector<WordElem>& inputs,
                                          const OpenSet& v) const {
  if (parts.size() != inputs.size())
    throw std::invalid_argument("structureMap: parts/inputs size mismatch");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!v.contains(parts[i]))
      throw std::invalid_argument("structureMap: every part must lie inside V");
    for (size_t j = i + 1; j < parts.size(); ++j)
      if (!parts[i].disjointFrom(parts[j]))
        throw std::invalid_argument("structureMap: inputs must be pairwise disjoint");
  }
  const CeComplex& tgt = obs(v);
  WordElem acc;
  acc.emplace(Word{}, Rat(1));
  for (size_t i = 0; i < parts.size(); ++i) {
    WordElem mapped = tgt.alg.substitute(extensionImages(parts[i], v), inputs[i]);
    acc = tgt.alg.mulTruncated(acc, mapped, t_);
  }
  return acc;
}

namespace {
struct PointSet {
  std::set<int> cells;
  bool bdy = false;
};

bool pointSubset(const PointSet& s, const OpenSet& m) {
  if (s.bdy && !m.boundary) return false;
  for (int c : s.cells)
    if (!m.cells.count(c)) return false;
  return true;
}
}  // namespace

bool ObservablesContext::weissAtLevel(const OpenSet& v, const std::vector<OpenSet>& cover,
                                      int level) const {
  std::vector<int> points(v.cells.begin(), v.cells.end());
  const int extra = v.boundary ? 1 : 0;
  const int np = static_cast<int>(points.size()) + extra;
  for (unsigned mask = 1; mask < (1u << np); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) > level) continue;
    PointSet s;
    for (int b = 0; b < static_cast<int>(points.size()); ++b)
      if (mask & (1u << b)) s.cells.insert(points[b]);
    if (extra && (mask & (1u << points.size()))) s.bdy = true;
    bool covered = false;
    for (const auto& m : cover)
      if (pointSubset(s, m)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

std::vector<std::vector<OpenSet>> ObservablesContext::weissCovers(const OpenSet& v,
                                                                  int level) const {
  std::vector<OpenSet> subs;
  std::vector<int> cells(v.cells.begin(), v.cells.end());
  const int n = static_cast<int>(cells.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    OpenSet o;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) o.cells.insert(cells[b]);
    subs.push_back(o);
    if (v.boundary && o.cells.count(0)) {
      OpenSet ob = o;
      ob.boundary = true;
      subs.push_back(ob);
    }
  }
  std::vector<std::vector<OpenSet>> out;
  const int m = static_cast<int>(subs.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<OpenSet> family;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) family.push_back(subs[b]);
    bool antichain = true;
    for (size_t i = 0; i < family.size() && antichain; ++i)
      for (size_t j = 0; j < family.size() && antichain; ++j)
        if (i != j && family[i].contains(family[j])) antichain = false;
    if (!antichain) continue;
    if (!weissAtLevel(v, family, level)) continue;
    out.push_back(std::move(family));
  }
  return out;
}

CheckResult ObservablesContext::weissCechCheck(const OpenSet& v,
                                               const std::vector<OpenSet>& cover) const {
  if (!weissAtLevel(v, cover, t_))
    throw std::invalid_argument("weissCechCheck: cover fails the Weiss condition at level " +
                                std::to_string(t_));
  const int m = static_cast<int>(cover.size());
  struct Simplex {
    std::vector<int> members;
    OpenSet open;
    Index offset = 0;
  };
  std::vector<Simplex> simplices;
  std::map<std::vector<int>, size_t> simplexIndex;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Simplex s;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) s.members.push_back(b);
    s.open = cover[s.members[0]];
    for (size_t i = 1; i < s.members.size(); ++i)
      s.open = s.open.intersect(cover[s.members[i]]);
    simplexIndex[s.members] = simplices.size();
    simplices.push_back(std::move(s));
  }
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (auto& s : simplices) {
    s.offset = static_cast<Index>(labels.size());
    const auto& c = obs(s.open);
    const int p = static_cast<int>(s.members.size()) - 1;
    std::string tag = "S";
    for (int i : s.members) tag += std::to_string(i);
    for (Index i = 0; i < c.space()->dim(); ++i) {
      labels.push_back(tag + ":" + c.space()->labelOf(i));
      degrees.push_back(c.space()->degreeOf(i) - p);
    }
  }
  SpaceRef total = makeSpace(std::move(labels), std::move(degrees));
  GradedMap d(total, total, 1);
  auto addShifted = [&](const GradedMap& f, Index rowOff, Index colOff, const Rat& scale) {
    for (const auto& [k, blk] : f.blocks()) {
      const auto& src = f.source()->slot(k);
      const auto& tgt = f.target()->slot(k + f.degree());
      for (size_t j = 0; j < src.size(); ++j)
        for (size_t i = 0; i < tgt.size(); ++i) {
          const Rat& val = blk(static_cast<Index>(i), static_cast<Index>(j));
          if (!val.isZero()) d.addEntry(rowOff + tgt[i], colOff + src[j], scale * val);
        }
    }
  };
  for (const auto& s : simplices) {
    const auto& c = obs(s.open);
    const int p = static_cast<int>(s.members.size()) - 1;
    addShifted(c.complex.d, s.offset, s.offset, (p % 2 == 0) ? Rat(1) : Rat(-1));
    if (p == 0) continue;
    for (size_t drop = 0; drop < s.members.size(); ++drop) {
      std::vector<int> face = s.members;
      face.erase(face.begin() + drop);
      const Simplex& fs = simplices[simplexIndex[face]];
      GradedMap ext = extension(s.open, fs.open);
      addShifted(ext, fs.offset, s.offset, (drop % 2 == 0) ? Rat(1) : Rat(-1));
    }
  }
  CochainComplex totalComplex = CochainComplex::checked(total, std::move(d));
  const CeComplex& target = obs(v);
  GradedMap aug(total, target.space(), 0);
  for (const auto& s : simplices) {
    if (s.members.size() != 1) continue;
    GradedMap ext = extension(s.open, v);
    for (const auto& [k, blk] : ext.blocks()) {
      const auto& src = ext.source()->slot(k);
      const auto& tgt = ext.target()->slot(k);
      for (size_t j = 0; j < src.size(); ++j)
        for (size_t i = 0; i < tgt.size(); ++i) {
          const Rat& val = blk(static_cast<Index>(i), static_cast<Index>(j));
          if (!val.isZero()) aug.addEntry(tgt[i], s.offset + src[j], val);
        }
    }
  }
  CheckResult out;
  if (!isChainMap(aug, totalComplex, target.complex)) {
    out.pass = false;
    out.detail = "Cech augmentation is not a chain map";
    return out;
  }
  auto qi = isQuasiIso(aug, totalComplex, target.complex);
  if (!qi.ok) {
    out.pass = false;
    out.detail = "Cech comparison fails at degree " + std::to_string(*qi.witnessDegree);
  }
  return out;
}

KernelObservables::KernelObservables(const BulkBoundarySystem& sys, OpenSet u,
                                     std::vector<HonestField> kernels)
    : sys_(sys), u_(std::move(u)), kernels_(std::move(kernels)), alg_({}) {
  std::vector<WordGen> gens;
  for (size_t i = 0; i < kernels_.size(); ++i) {
    if (!sys_.compactlyFlagged(u_, kernels_[i]))
      throw std::invalid_argument("KernelObservables: kernel " + std::to_string(i) +
                                  " is not compactly flagged");
    if (sys_.hasCondition()) {
      Vec rho = sys_.rhoOf(u_, kernels_[i]);
      if (!spans(sys_.condition().l, Mat(rho)))
        throw std::invalid_argument("KernelObservables: kernel " + std::to_string(i) +
                                    " violates the boundary condition");
    }
    auto deg = sys_.degreeOf(kernels_[i]);
    if (!deg) throw std::invalid_argument("KernelObservables: kernels must be homogeneous");
    gens.push_back(WordGen{"O" + std::to_string(i), *deg - 1, 1});
  }
  alg_ = WordAlgebra(std::move(gens));
  const int n = static_cast<int>(kernels_.size());
  pairing_ = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pairing_(i, j) = sys_.pairFields(u_, kernels_[i], kernels_[j]);
}

namespace {
WordElem leftDerive(const WordAlgebra& alg, const Word& w, int gen) {
  WordElem out;
  int prefixParity = 0;
  const int gd = ((alg.gens()[gen].degree % 2) + 2) % 2;
  for (size_t p = 0; p < w.size(); ++p) {
    if (w[p] == gen) {
      Word rest = w;
      rest.erase(rest.begin() + p);
      Rat sign = ((gd * prefixParity) % 2 == 0) ? Rat(1) : Rat(-1);
      addTo(out, rest, sign);
    }
    prefixParity = (prefixParity + ((alg.gens()[w[p]].degree % 2) + 2)) % 2;
  }
  return out;
}

WordElem rightDerive(const WordAlgebra& alg, const Word& w, int gen) {
  WordElem out;
  const int gd = ((alg.gens()[gen].degree % 2) + 2) % 2;
  for (size_t p = 0; p < w.size(); ++p) {
    if (w[p] != gen) continue;
    int suffixParity = 0;
    for (size_t q = p + 1; q < w.size(); ++q)
      suffixParity = (suffixParity + ((alg.gens()[w[q]].degree % 2) + 2)) % 2;
    Word rest = w;
    rest.erase(rest.begin() + p);
    Rat sign = ((gd * suffixParity) % 2 == 0) ? Rat(1) : Rat(-1);
    addTo(out, rest, sign);
  }
  return out;
}
}  // namespace

WordElem KernelObservables::bracket(const WordElem& f, const WordElem& g) const {
  WordElem out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rat& w = pairing_(i, j);
      if (w.isZero()) continue;
      for (const auto& [wf, cf] : f) {
        WordElem df = rightDerive(alg_, wf, i);
        if (df.empty()) continue;
        for (const auto& [wg, cg] : g) {
          WordElem dg = leftDerive(alg_, wg, j);
          if (dg.empty()) continue;
          for (const auto& [a, ca] : df)
            for (const auto& [b, cb] : dg) {
              auto prod = alg_.mul(a, b);
              if (!prod) continue;
              addTo(out, prod->second, prod->first * ca * cb * cf * cg * w);
            }
        }
      }
    }
  }
  return out;
}

std::optional<WordElem> KernelObservables::presentLinear(const HonestField& f) const {
  auto gridOf = [](const HonestField& h, std::map<std::tuple<Index, int, int, int>, Rat>& grid) {
    for (const auto& [key, form] : h.parts) {
      for (int k = 0; k <= form.p.degree(); ++k)
        if (!form.p.coeff(k).isZero()) grid[{key.first, key.second, 0, k}] = form.p.coeff(k);
      for (int k = 0; k <= form.q.degree(); ++k)
        if (!form.q.coeff(k).isZero()) grid[{key.first, key.second, 1, k}] = form.q.coeff(k);
    }
  };
  std::map<std::tuple<Index, int, int, int>, Rat> target;
  gridOf(f, target);
  std::vector<std::map<std::tuple<Index, int, int, int>, Rat>> kernelGrids(kernels_.size());
  std::set<std::tuple<Index, int, int, int>> keys;
  for (auto& [k, v] : target) keys.insert(k);
  for (size_t i = 0; i < kernels_.size(); ++i) {
    gridOf(kernels_[i], kernelGrids[i]);
    for (auto& [k, v] : kernelGrids[i]) keys.insert(k);
  }
  std::vector<std::tuple<Index, int, int, int>> keyList(keys.begin(), keys.end());
  Mat a = Mat::Zero(static_cast<Index>(keyList.size()), static_cast<Index>(kernels_.size()));
  Vec b = Vec::Zero(static_cast<Index>(keyList.size()));
  for (size_t r = 0; r < keyList.size(); ++r) {
    auto it = target.find(keyList[r]);
    if (it != target.end()) b(static_cast<Index>(r)) = it->second;
    for (size_t c = 0; c < kernels_.size(); ++c) {
      auto kt = kernelGrids[c].find(keyList[r]);
      if (kt != kernelGrids[c].end()) a(static_cast<Index>(r), static_cast<Index>(c)) = kt->second;
    }
  }
  auto x = solve(a, b);
  if (!x) return std::nullopt;
  WordElem out;
  for (Index i = 0; i < x->size(); ++i)
    if (!(*x)(i).isZero()) addTo(out, Word{static_cast<int32_t>(i)}, (*x)(i));
  return out;
}

WordElem KernelObservables::differential(const WordElem& f) const {
  if (sys_.boundary().topNonzeroArity() >= 2)
    throw std::invalid_argument("KernelObservables::differential: higher brackets present");
  std::vector<WordElem> genImages(size());
  for (int i = 0; i < size(); ++i) {
    HonestField df = sys_.differentialOf(u_, kernels_[i]);
    if (df.isZero()) continue;
    auto pres = presentLinear(df);
    if (!pres)
      throw std::invalid_argument("KernelObservables: kernel span is not closed under b1");
    auto deg = sys_.degreeOf(kernels_[i]);
    Rat sign = ((*deg % 2) == 0) ? Rat(1) : Rat(-1);
    genImages[i] = scaled(*pres, sign);
  }
  WordElem out;
  for (const auto& [w, c] : f) {
    WordElem dw = alg_.derive(genImages, w);
    for (const auto& [ww, cc] : dw) addTo(out, ww, cc * c);
  }
  return out;
}

WordElem KernelObservables::expand(const ObservablesContext& ctx, const WordElem& f) const {
  const CeComplex& target = ctx.obs(u_);
  const auto& of = sys_.fields(u_);
  Mat inc;
  if (sys_.hasCondition()) {
    inc = of.elInclusion;
  } else {
    inc = Mat::Identity(of.algebra.space()->dim(), of.algebra.space()->dim());
  }
  std::vector<WordElem> genImages(size());
  for (int i = 0; i < size(); ++i) {
    for (Index a = 0; a < inc.cols(); ++a) {
      HonestField beta = sys_.fromVec(u_, inc.col(a));
      Rat c = sys_.pairFields(u_, kernels_[i], beta);
      if (!c.isZero()) addTo(genImages[i], Word{static_cast<int32_t>(a)}, c);
    }
  }
  WordElem out;
  for (const auto& [w, c] : f) {
    WordElem img = target.alg.substitute(genImages, w);
    for (const auto& [ww, cc] : img) addTo(out, ww, cc * c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (target.alg.weightOf(it->first) > ctx.truncation())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

CyclicLInfinity AMFactorization::valueAlgebra(const OpenSet& u) const {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  struct Block {
    int cell;
    const CyclicLInfinity* alg;
    Index offset;
  };
  std::vector<Block> blocks;
  Index offset = 0;
  for (int c : u.cells) {
    const CyclicLInfinity* part = (c == 0 && u.boundary) ? &boundary : &interior;
    blocks.push_back({c, part, offset});
    for (Index i = 0; i < part->space()->dim(); ++i) {
      labels.push_back("c" + std::to_string(c) + "." + part->space()->labelOf(i));
      degrees.push_back(part->space()->degreeOf(i));
    }
    offset += part->space()->dim();
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  CyclicLInfinity out(s, std::max(interior.maxArity(), boundary.maxArity()), 0);
  GradedMap d(s, s, 1);
  for (const auto& blk : blocks) {
    for (const auto& [k, m] : blk.alg->differential().blocks()) {
      const auto& src = blk.alg->space()->slot(k);
      const auto& tgt = blk.alg->space()->slot(k + 1);
      for (size_t j = 0; j < src.size(); ++j)
        for (size_t i = 0; i < tgt.size(); ++i) {
          const Rat& c = m(static_cast<Index>(i), static_cast<Index>(j));
          if (!c.isZero()) d.addEntry(blk.offset + tgt[i], blk.offset + src[j], c);
        }
    }
  }
  out.setDifferential(std::move(d));
  for (const auto& blk : blocks) {
    for (int k = 2; k <= blk.alg->maxArity(); ++k) {
      for (const auto& e : blk.alg->entries(k)) {
        std::vector<Index> inputs;
        for (Index i : e.inputs) inputs.push_back(blk.offset + i);
        out.addBracket(inputs, blk.offset + e.output, e.coeff);
      }
    }
  }
  return out;
}

CeComplex AMFactorization::value(const OpenSet& u) const {
  return ceComplex(valueAlgebra(u), truncation);
}

namespace {

Mat constantsInclusion(const BulkBoundarySystem& sys, const AMFactorization& fam,
                       const OpenSet& u) {
  const auto& of = sys.fields(u);
  const Index no = of.omega.dim();
  const CyclicLInfinity sAlg = fam.valueAlgebra(u);
  Mat cols = Mat::Zero(sys.boundary().space()->dim() * no, sAlg.space()->dim());
  Index sIdx = 0;
  for (int c : u.cells) {
    const bool bdyCell = (c == 0 && u.boundary);
    const CyclicLInfinity* part = bdyCell ? &fam.boundary : &fam.interior;
    size_t cpos = std::find(of.omega.cellsListed.begin(), of.omega.cellsListed.end(), c) -
                  of.omega.cellsListed.begin();
    Index unitIdx = of.omega.cellStart[cpos];  // the constant function of the cell
    for (Index i = 0; i < part->space()->dim(); ++i, ++sIdx) {
      Vec coef;
      if (bdyCell) {
        coef = fam.inclusion.col(i);
      } else {
        coef = Vec::Zero(sys.boundary().space()->dim());
        coef(i) = Rat(1);
      }
      for (Index v = 0; v < coef.size(); ++v)
        if (!coef(v).isZero()) cols(v * no + unitIdx, sIdx) = coef(v);
    }
  }
  if (!sys.hasCondition()) return cols;
  Mat out(of.elInclusion.cols(), cols.cols());
  for (Index j = 0; j < cols.cols(); ++j) {
    auto x = solve(of.elInclusion, Vec(cols.col(j)));
    if (!x) throw std::logic_error("constantsInclusion: constants escape E_L");
    out.col(j) = *x;
  }
  return out;
}

}  // namespace

AmCompareReport amCompare(const ObservablesContext& ctx, const AMFactorization& fam) {
  AmCompareReport rep;
  const auto& sys = ctx.system();
  std::vector<OpenSet> opens = allOpens(sys.mesh());
  std::map<OpenSet, CeComplex> famValues;
  std::map<OpenSet, Mat> inclusions;
  for (const auto& u : opens) {
    famValues.emplace(u, fam.value(u));
    inclusions.emplace(u, constantsInclusion(sys, fam, u));
  }
  std::map<OpenSet, GradedMap> cmpCache;
  auto comparisonMap = [&](const OpenSet& u) -> const GradedMap& {
    auto it = cmpCache.find(u);
    if (it != cmpCache.end()) return it->second;
    const CeComplex& src = ctx.obs(u);
    const CeComplex& tgt = famValues.at(u);
    const Mat& iota = inclusions.at(u);
    std::vector<WordElem> genImages(src.alg.gens().size());
    for (Index a = 0; a < iota.rows(); ++a)
      for (Index s = 0; s < iota.cols(); ++s)
        if (!iota(a, s).isZero()) addTo(genImages[a], Word{static_cast<int32_t>(s)}, iota(a, s));
    return cmpCache
        .emplace(u, src.basis.inducedMap(src.alg, tgt.basis, tgt.alg, genImages))
        .first->second;
  };
  for (const auto& u : opens) {
    const CeComplex& src = ctx.obs(u);
    const CeComplex& tgt = famValues.at(u);
    GradedMap cmp = comparisonMap(u);
    if (!isChainMap(cmp, src.complex, tgt.complex)) {
      rep.detail = "comparison is not a chain map on " + u.str();
      return rep;
    }
    auto qi = isQuasiIso(cmp, src.complex, tgt.complex);
    if (!qi.ok) {
      rep.detail =
          "comparison fails on " + u.str() + " at degree " + std::to_string(*qi.witnessDegree);
      return rep;
    }
    rep.dims[u] = cohomologyDims(tgt.complex);
  }
  std::map<OpenSet, CyclicLInfinity> famAlgebras;
  for (const auto& u : opens) famAlgebras.emplace(u, fam.valueAlgebra(u));
  std::map<std::pair<OpenSet, OpenSet>, GradedMap> famExtCache;
  auto famExtension = [&](const OpenSet& u, const OpenSet& v) -> const GradedMap& {
    auto key = std::make_pair(u, v);
    auto it = famExtCache.find(key);
    if (it != famExtCache.end()) return it->second;
    const CeComplex& fu = famValues.at(u);
    const CeComplex& fv = famValues.at(v);
    const CyclicLInfinity& aV = famAlgebras.at(v);
    const CyclicLInfinity& aU = famAlgebras.at(u);
    std::vector<WordElem> genImages(aU.space()->dim());
    for (Index i = 0; i < aU.space()->dim(); ++i) {
      auto idx = aV.space()->indexOf(aU.space()->labelOf(i));
      if (!idx) throw std::logic_error("famExtension: label mismatch");
      addTo(genImages[i], Word{static_cast<int32_t>(*idx)}, Rat(1));
    }
    return famExtCache
        .emplace(key, fu.basis.inducedMap(fu.alg, fv.basis, fv.alg, genImages))
        .first->second;
  };
  for (const auto& u1 : opens) {
    for (const auto& u2 : opens) {
      if (!(u1 < u2) || !u1.disjointFrom(u2)) continue;
      OpenSet v = u1.unionWith(u2);
      const CeComplex& s1 = ctx.obs(u1);
      const CeComplex& s2 = ctx.obs(u2);
      const CeComplex& fv = famValues.at(v);
      const GradedMap& cmpV = comparisonMap(v);
      const GradedMap& f1 = famExtension(u1, v);
      const GradedMap& f2 = famExtension(u2, v);
      const GradedMap& c1 = comparisonMap(u1);
      const GradedMap& c2 = comparisonMap(u2);
      for (Index g1 = 0; g1 < s1.space()->dim(); ++g1) {
        if (s1.alg.weightOf(s1.basis.words()[g1]) != 1) continue;
        for (Index g2 = 0; g2 < s2.space()->dim(); ++g2) {
          if (s2.alg.weightOf(s2.basis.words()[g2]) != 1) continue;
          WordElem w1, w2;
          w1.emplace(s1.basis.words()[g1], Rat(1));
          w2.emplace(s2.basis.words()[g2], Rat(1));
          WordElem viaObs = ctx.structureMap({u1, u2}, {w1, w2}, v);
          Vec lhs = cmpV.apply(ctx.obs(v).basis.toVec(viaObs));
          Vec e1 = f1.apply(c1.apply(s1.basis.toVec(w1)));
          Vec e2 = f2.apply(c2.apply(s2.basis.toVec(w2)));
          WordElem prod =
              fv.alg.mulTruncated(fv.basis.toElem(e1), fv.basis.toElem(e2), fam.truncation);
          Vec rhs = fv.basis.toVec(prod);
          for (Index i = 0; i < lhs.size(); ++i) {
            if (lhs(i) != rhs(i)) {
              rep.detail = "structure square fails for " + u1.str() + " + " + u2.str();
              return rep;
            }
          }
        }
      }
    }
  }
  rep.pass = true;
  return rep;
}

AMFactorization famFromSystem(const BulkBoundarySystem& sys, int truncation) {
  if (!sys.hasCondition()) throw std::invalid_argument("famFromSystem: condition required");
  AMFactorization fam;
  fam.interior = sys.boundary();
  const auto& cond = sys.condition();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (Index j = 0; j < cond.l.cols(); ++j) {
    labels.push_back("L" + std::to_string(j));
    int deg = 0;
    for (Index i = 0; i < cond.l.rows(); ++i)
      if (!cond.l(i, j).isZero()) {
        deg = sys.boundary().space()->degreeOf(i);
        break;
      }
    degrees.push_back(deg);
  }
  fam.boundary = restrictAlgebra(sys.boundary(), makeSpace(labels, degrees), cond.l);
  fam.inclusion = cond.l;
  fam.truncation = truncation;
  return fam;
}

FamCheck famBuilderCheck(const FiniteAlgebra& a, const FiniteModule& m) {
  FamCheck out;
  const Index na = a.complex.space->dim();
  const Index nm = m.complex.space->dim();
  auto mulVec = [&](const Vec& x, const Vec& y) {
    Vec r = Vec::Zero(na);
    for (Index i = 0; i < na; ++i) {
      if (x(i).isZero()) continue;
      for (Index j = 0; j < na; ++j) {
        if (y(j).isZero()) continue;
        for (const auto& [o, c] : a.mul(i, j)) r(o) += x(i) * y(j) * c;
      }
    }
    return r;
  };
  auto actVec = [&](const Vec& x, const Vec& y) {
    Vec r = Vec::Zero(nm);
    for (Index i = 0; i < nm; ++i) {
      if (x(i).isZero()) continue;
      for (Index j = 0; j < na; ++j) {
        if (y(j).isZero()) continue;
        for (const auto& [o, c] : m.act(i, j)) r(o) += x(i) * y(j) * c;
      }
    }
    return r;
  };
  auto basisVec = [](Index n, Index i) {
    Vec e = Vec::Zero(n);
    e(i) = Rat(1);
    return e;
  };
  auto eq = [](const Vec& x, const Vec& y) {
    for (Index t = 0; t < x.size(); ++t)
      if (x(t) != y(t)) return false;
    return true;
  };
  out.associative = true;
  for (Index i = 0; i < na && out.associative; ++i)
    for (Index j = 0; j < na && out.associative; ++j)
      for (Index k = 0; k < na && out.associative; ++k) {
        Vec lhs = mulVec(mulVec(basisVec(na, i), basisVec(na, j)), basisVec(na, k));
        Vec rhs = mulVec(basisVec(na, i), mulVec(basisVec(na, j), basisVec(na, k)));
        if (!eq(lhs, rhs)) out.associative = false;
      }
  out.unital = true;
  for (Index i = 0; i < na && out.unital; ++i) {
    if (!eq(mulVec(a.unit, basisVec(na, i)), basisVec(na, i))) out.unital = false;
    if (!eq(mulVec(basisVec(na, i), a.unit), basisVec(na, i))) out.unital = false;
  }
  out.moduleLaw = true;
  for (Index i = 0; i < nm && out.moduleLaw; ++i) {
    Vec mi = basisVec(nm, i);
    if (!eq(actVec(mi, a.unit), mi)) out.moduleLaw = false;
    for (Index j = 0; j < na && out.moduleLaw; ++j)
      for (Index k = 0; k < na && out.moduleLaw; ++k) {
        Vec lhs = actVec(actVec(mi, basisVec(na, j)), basisVec(na, k));
        Vec rhs = actVec(mi, mulVec(basisVec(na, j), basisVec(na, k)));
        if (!eq(lhs, rhs)) out.moduleLaw = false;
      }
  }
  out.pass = out.associative && out.unital && out.moduleLaw;
  if (!out.pass) out.detail = "algebra/module axioms failed";
  return out;
}

}  // namespace bbk
