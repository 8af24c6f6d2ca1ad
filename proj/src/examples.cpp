#include "bbk/examples.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbk {

BulkBoundarySystem makeToplmech(int cells, int cap) {
  BulkBoundarySystem sys("toplmech", symplecticBoundary(1), CellMesh::uniform(cells), cap);
  sys.setCondition(lagrangianLineCondition((Vec(2) << Rat(1), Rat(0)).finished(),
                                           (Vec(2) << Rat(0), Rat(1)).finished(), "q-line"));
  return sys;
}

BulkBoundarySystem makeBf1dAbelian(int cells, int cap) {
  auto g = LieAlgebra::abelian(1);
  BulkBoundarySystem sys("bf1d-abelian", bfBoundary(g, 1), CellMesh::uniform(cells), cap);
  sys.setCondition(bfBCondition(g));
  return sys;
}

BulkBoundarySystem makeBf1dSl2(int cells, int cap) {
  auto g = LieAlgebra::sl2();
  BulkBoundarySystem sys("bf1d-sl2", bfBoundary(g, 1), CellMesh::uniform(cells), cap);
  sys.setCondition(bfBCondition(g));
  return sys;
}

std::map<std::pair<int, int>, Index> lieCohomology(const LieAlgebra& g, int coefficientDegree,
                                                   int weightCap) {
  auto alg = coadjointGaugeAlgebra(g, coefficientDegree, false);
  WordAlgebra walg = ceWordAlgebra(alg);
  auto images = ceGeneratorImages(alg, walg);
  const int n = g.dim();
  auto bCount = [n](const Word& w) {
    int c = 0;
    for (int gidx : w) c += (gidx >= n) ? 1 : 0;
    return c;
  };
  std::map<std::pair<int, int>, Index> table;
  for (int w = 0; w <= weightCap; ++w) {
    WordBasis basis(walg, n + w, [&](const Word& word) { return bCount(word) == w; });
    auto complex = basis.complex(walg, images);
    for (const auto& [deg, dim] : cohomologyDims(complex)) {
      // Ghost count = word degree + w·coefficientDegree.
      table[{deg + w * coefficientDegree, w}] = dim;
    }
  }
  return table;
}

std::map<int, Index> lieAlgebraCohomology(const LieAlgebra& g) {
  auto ce = ceComplex(gaugeAlgebra(g), std::max(1, g.dim()));
  return cohomologyDims(ce.complex);
}

HalfPlaneFunctionals::HalfPlaneFunctionals(const LieAlgebra& g, Variant variant, int weightCap)
    : g_(g), variant_(variant), cap_(weightCap) {
  auto alg = coadjointGaugeAlgebra(g, 0, false);
  WordAlgebra walg = ceWordAlgebra(alg);
  auto images = ceGeneratorImages(alg, walg);
  const int n = g.dim();
  auto bCount = [n](const Word& w) {
    int c = 0;
    for (int gidx : w) c += (gidx >= n) ? 1 : 0;
    return c;
  };
  for (int w = 0; w <= cap_; ++w) {
    // Bulk words: ghosts free, coefficient weight w; the constant word is
    // removed (reduced functionals).
    WordBasis bulk(walg, n + w, [&](const Word& word) {
      if (bCount(word) != w) return false;
      if (w == 0 && word.empty()) return false;
      return true;
    });
    // Boundary term: variant B keeps the ghost-free words of weight ≥ 1,
    // variant A the ghost-only words.
    std::vector<Word> boundaryWords;
    if (variant_ == Variant::B && w >= 1) {
      WordBasis bdy(walg, n + w, [&](const Word& word) {
        return bCount(word) == w && static_cast<int>(word.size()) == w;
      });
      boundaryWords = bdy.words();
    } else if (variant_ == Variant::A && w == 0) {
      WordBasis bdy(walg, n,
                    [&](const Word& word) { return bCount(word) == 0 && !word.empty(); });
      boundaryWords = bdy.words();
    }
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::map<Word, Index> bulkIndex;
    for (size_t i = 0; i < bulk.words().size(); ++i) {
      labels.push_back("blk:" + walg.labelOf(bulk.words()[i]));
      degrees.push_back(walg.degreeOf(bulk.words()[i]) - 2);
      bulkIndex[bulk.words()[i]] = static_cast<Index>(i);
    }
    const Index bOffset = static_cast<Index>(labels.size());
    std::map<Word, Index> bdyIndex;
    for (size_t i = 0; i < boundaryWords.size(); ++i) {
      labels.push_back("bdy:" + walg.labelOf(boundaryWords[i]));
      degrees.push_back(walg.degreeOf(boundaryWords[i]) - 1);
      bdyIndex[boundaryWords[i]] = bOffset + static_cast<Index>(i);
    }
    SpaceRef space = makeSpace(std::move(labels), std::move(degrees));
    GradedMap d(space, space, 1);
    for (size_t j = 0; j < bulk.words().size(); ++j) {
      WordElem dj = walg.derive(images, bulk.words()[j]);
      for (const auto& [word, c] : dj) {
        auto it = bulkIndex.find(word);
        if (it != bulkIndex.end()) d.addEntry(it->second, static_cast<Index>(j), c);
      }
      auto bt = bdyIndex.find(bulk.words()[j]);
      if (bt != bdyIndex.end()) d.addEntry(bt->second, static_cast<Index>(j), Rat(1));
    }
    if (variant_ == Variant::A && w == 0) {
      for (size_t j = 0; j < boundaryWords.size(); ++j) {
        WordElem dj = walg.derive(images, boundaryWords[j]);
        for (const auto& [word, c] : dj) {
          auto it = bdyIndex.find(word);
          if (it != bdyIndex.end())
            d.addEntry(it->second, bdyIndex.at(boundaryWords[j]), -c);
        }
      }
    }
    blocks_.emplace(w, CochainComplex::checked(space, std::move(d)));
    boundaryOffset_[w] = bOffset;
    boundaryDim_[w] = static_cast<Index>(boundaryWords.size());
  }
}

const CochainComplex& HalfPlaneFunctionals::weightBlock(int w) const {
  auto it = blocks_.find(w);
  if (it == blocks_.end()) throw std::invalid_argument("weightBlock: weight beyond the cap");
  return it->second;
}

std::map<std::pair<int, int>, Index> HalfPlaneFunctionals::cohomologyTable() const {
  std::map<std::pair<int, int>, Index> out;
  for (const auto& [w, complex] : blocks_) {
    for (const auto& [deg, dim] : cohomologyDims(complex)) out[{deg, w}] = dim;
  }
  return out;
}

std::map<std::pair<int, int>, Index> HalfPlaneFunctionals::closedFormTable() const {
  if (variant_ != Variant::B)
    throw std::invalid_argument("closedFormTable: stated for the B variant");
  auto ce = lieCohomology(g_, 0, cap_);
  std::map<std::pair<int, int>, Index> out;
  auto dimAt = [&](int k, int w) {
    auto it = ce.find({k, w});
    return it == ce.end() ? Index(0) : it->second;
  };
  auto symDim = [&](int w) {
    Index n = g_.dim(), num = 1, den = 1;
    for (int i = 0; i < w; ++i) {
      num *= n + i;
      den *= i + 1;
    }
    return num / den;
  };
  for (int w = 0; w <= cap_; ++w) {
    if (w == 0) {
      for (int k = 1; k <= g_.dim(); ++k)
        if (dimAt(k, 0) > 0) out[{k - 2, 0}] += dimAt(k, 0);
      continue;
    }
    Index minusOne = dimAt(1, w) + symDim(w) - dimAt(0, w);
    if (minusOne > 0) out[{-1, w}] = minusOne;
    for (int k = 2; k <= g_.dim(); ++k)
      if (dimAt(k, w) > 0) out[{k - 2, w}] += dimAt(k, w);
  }
  return out;
}

HalfPlaneFunctionals::BoundaryFunctional HalfPlaneFunctionals::boundaryFunctional(
    const Vec& x) const {
  if (variant_ != Variant::B)
    throw std::invalid_argument("boundaryFunctional: stated for the B variant");
  const auto& block = weightBlock(1);
  BoundaryFunctional out;
  out.vector = Vec::Zero(block.space->dim());
  for (Index i = 0; i < x.size(); ++i) out.vector(boundaryOffset_.at(1) + i) = x(i);
  Vec img = block.d.apply(out.vector);
  out.closed = true;
  for (Index i = 0; i < img.size(); ++i)
    if (!img(i).isZero()) out.closed = false;
  return out;
}

bool HalfPlaneFunctionals::boundaryClassesSpan(const std::vector<Vec>& xs) const {
  const auto& block = weightBlock(1);
  auto h = cohomologyDims(block);
  Index hDim = h.count(-1) ? h.at(-1) : 0;
  Mat dPrev = block.d.block(-2);
  const auto& slot = block.space->slot(-1);
  Mat boundaries = imageBasis(dPrev);
  Mat js = Mat::Zero(static_cast<Index>(slot.size()), static_cast<Index>(xs.size()));
  for (size_t j = 0; j < xs.size(); ++j) {
    auto bf = boundaryFunctional(xs[j]);
    if (!bf.closed) return false;
    for (size_t i = 0; i < slot.size(); ++i)
      js(static_cast<Index>(i), static_cast<Index>(j)) = bf.vector(slot[i]);
  }
  Mat joined(js.rows(), boundaries.cols() + js.cols());
  if (boundaries.cols() > 0) joined.leftCols(boundaries.cols()) = boundaries;
  joined.rightCols(js.cols()) = js;
  return rank(joined) - rank(boundaries) == hDim;
}

bool HalfPlaneFunctionals::weightZeroBoundaryEmpty() const {
  return variant_ == Variant::B && boundaryDim_.at(0) == 0;
}

PushforwardReport pushforwardCompare(const LieAlgebra& g, int truncation, int boundaryCells,
                                     int boundaryCap, int intervalCap) {
  PushforwardReport rep;
  CellMesh bdyMesh = CellMesh::uniform(boundaryCells);
  std::vector<OpenSet> opens;
  for (const auto& u : allOpens(bdyMesh))
    if (!u.boundary) opens.push_back(u);
  const int n = g.dim();
  for (const auto& u : opens) {
    OpenForms bforms = openForms(bdyMesh, u, boundaryCap);
    CyclicLInfinity coefs = coadjointGaugeAlgebra(g, 0, true);
    CyclicLInfinity bdyTheory = tensorWithCdga(coefs, bforms.cdga, 0);
    const Index nb = bdyTheory.space()->dim();
    const Index nf = bforms.dim();
    BulkBoundarySystem sys("pushforward" + u.str(), bdyTheory,
                           CellMesh(std::vector<Rat>{Rat(0), Rat(1)}), intervalCap);
    BoundaryCondition cond;
    cond.l = Mat::Zero(nb, n * nf);
    cond.lPrime = Mat::Zero(nb, n * nf);
    Index col = 0;
    for (Index v = n; v < 2 * n; ++v)
      for (Index w = 0; w < nf; ++w, ++col) cond.l(v * nf + w, col) = Rat(1);
    col = 0;
    for (Index v = 0; v < n; ++v)
      for (Index w = 0; w < nf; ++w, ++col) cond.lPrime(v * nf + w, col) = Rat(1);
    cond.name = "B";
    sys.setCondition(std::move(cond));
    ObservablesContext ctx(sys, truncation);
    OpenSet whole{{0}, true};
    const CeComplex& obs = ctx.obs(whole);
    const auto& of = sys.fields(whole);

    // de Rham side: Sym^{≤T}(compact boundary forms ⊗ gauge coefficients)
    // with only the de Rham differential.
    std::vector<WordGen> gens;
    std::vector<PolyForm> genForms;
    std::vector<int> genCell, genCoef;
    for (size_t ci = 0; ci < bforms.cellsListed.size(); ++ci) {
      int cell = bforms.cellsListed[ci];
      IntervalModel m(bdyMesh.cellWidth(cell), boundaryCap, "s" + std::to_string(cell));
      for (const auto& form : m.basis({true, true})) {
        for (int x = 0; x < n; ++x) {
          gens.push_back(
              WordGen{"w" + std::to_string(gens.size()), form.formDegree() - 1, 1});
          genForms.push_back(form);
          genCell.push_back(cell);
          genCoef.push_back(x);
        }
      }
    }
    WordAlgebra dalg(gens);
    std::vector<WordElem> dImages(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
      PolyForm df = genForms[i].d();
      if (df.isZero()) continue;
      for (int k = 0; k <= df.q.degree(); ++k) {
        Rat c = df.q.coeff(k);
        if (c.isZero()) continue;
        bool placed = false;
        for (size_t j = 0; j < gens.size() && !placed; ++j) {
          if (genCell[j] != genCell[i] || genCoef[j] != genCoef[i]) continue;
          if (genForms[j].formDegree() == 1 && genForms[j].q == Poly::monomial(k)) {
            addTo(dImages[i], Word{static_cast<int32_t>(j)}, c);
            placed = true;
          }
        }
        if (!placed)
          throw std::logic_error("pushforwardCompare: de Rham image escapes the basis");
      }
    }
    WordBasis dBasis(dalg, truncation);
    CochainComplex deRham = dBasis.complex(dalg, dImages);

    std::vector<WordElem> cmpImages(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
      Vec gv = Vec::Zero(nb);
      IntervalModel m(bdyMesh.cellWidth(genCell[i]), boundaryCap, "s");
      Vec coords = m.coordinates(genForms[i]);
      size_t cpos = std::find(bforms.cellsListed.begin(), bforms.cellsListed.end(),
                              genCell[i]) -
                    bforms.cellsListed.begin();
      for (Index k = 0; k < coords.size(); ++k) {
        if (coords(k).isZero()) continue;
        gv(genCoef[i] * nf + bforms.cellStart[cpos] + k) = coords(k);
      }
      for (Index a = 0; a < of.elInclusion.cols(); ++a) {
        Vec rhoA = of.rho.apply(of.elInclusion.col(a));
        Rat c = bdyTheory.pair(gv, rhoA);
        if (!c.isZero()) addTo(cmpImages[i], Word{static_cast<int32_t>(a)}, c);
      }
    }
    GradedMap cmp = dBasis.inducedMap(dalg, obs.basis, obs.alg, cmpImages);
    if (!isChainMap(cmp, deRham, obs.complex)) {
      rep.detail = "pushforward comparison is not a chain map on " + u.str();
      return rep;
    }
    auto qi = isQuasiIso(cmp, deRham, obs.complex);
    if (!qi.ok) {
      rep.detail = "pushforward comparison fails on " + u.str() + " at degree " +
                   std::to_string(*qi.witnessDegree);
      return rep;
    }
    rep.dims[u] = cohomologyDims(deRham);
  }
  rep.pass = true;
  return rep;
}

}  // namespace bbk
