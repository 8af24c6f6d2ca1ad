#include "bbk/graded.hpp"

#include <set>
#include <stdexcept>

namespace bbk {

GradedVectorSpace::GradedVectorSpace(std::vector<std::string> labels, std::vector<int> degrees)
    : labels_(std::move(labels)), degrees_(std::move(degrees)) {
  if (labels_.size() != degrees_.size())
    throw std::invalid_argument("GradedVectorSpace: label/degree size mismatch");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second)
      throw std::invalid_argument("GradedVectorSpace: duplicate basis label " + l);
  }
  posInSlot_.resize(labels_.size());
  for (Index i = 0; i < dim(); ++i) {
    auto& s = slots_[degrees_[i]];
    posInSlot_[i] = static_cast<Index>(s.size());
    s.push_back(i);
  }
}

Index GradedVectorSpace::dimAt(int k) const {
  auto it = slots_.find(k);
  return it == slots_.end() ? 0 : static_cast<Index>(it->second.size());
}

std::optional<Index> GradedVectorSpace::indexOf(const std::string& label) const {
  for (Index i = 0; i < dim(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

const std::vector<Index>& GradedVectorSpace::slot(int k) const {
  static const std::vector<Index> empty;
  auto it = slots_.find(k);
  return it == slots_.end() ? empty : it->second;
}

int GradedVectorSpace::minDegree() const { return slots_.empty() ? 0 : slots_.begin()->first; }
int GradedVectorSpace::maxDegree() const { return slots_.empty() ? 0 : slots_.rbegin()->first; }

SpaceRef makeSpace(std::vector<std::string> labels, std::vector<int> degrees) {
  return std::make_shared<const GradedVectorSpace>(std::move(labels), std::move(degrees));
}

GradedMap::GradedMap(SpaceRef source, SpaceRef target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {}

GradedMap GradedMap::identity(SpaceRef space) {
  GradedMap f(space, space, 0);
  for (const auto& [k, idx] : space->slots()) {
    f.setBlock(k, Mat::Identity(static_cast<Index>(idx.size()), static_cast<Index>(idx.size())));
  }
  return f;
}

GradedMap GradedMap::fromTriplets(SpaceRef source, SpaceRef target, int degree,
                                  const std::vector<std::tuple<Index, Index, Rat>>& entries) {
  GradedMap f(std::move(source), std::move(target), degree);
  for (const auto& [row, col, value] : entries) f.addEntry(row, col, value);
  return f;
}

Mat GradedMap::block(int k) const {
  auto it = blocks_.find(k);
  if (it != blocks_.end()) return it->second;
  return Mat::Zero(target_->dimAt(k + degree_), source_->dimAt(k));
}

void GradedMap::setBlock(int k, Mat m) {
  if (m.rows() != target_->dimAt(k + degree_) || m.cols() != source_->dimAt(k))
    throw std::invalid_argument("GradedMap: block shape mismatch at degree " + std::to_string(k));
  if (m.rows() == 0 || m.cols() == 0) return;
  blocks_[k] = std::move(m);
}

void GradedMap::addEntry(Index row, Index col, const Rat& value) {
  if (value.isZero()) return;
  const int ks = source_->degreeOf(col);
  const int kt = target_->degreeOf(row);
  if (kt != ks + degree_)
    throw std::invalid_argument("GradedMap: entry outside the degree pattern");
  auto it = blocks_.find(ks);
  if (it == blocks_.end()) {
    it = blocks_.emplace(ks, Mat::Zero(target_->dimAt(kt), source_->dimAt(ks))).first;
  }
  it->second(target_->posInSlot(row), source_->posInSlot(col)) += value;
}

Rat GradedMap::entry(Index row, Index col) const {
  const int ks = source_->degreeOf(col);
  if (target_->degreeOf(row) != ks + degree_) return Rat(0);
  auto it = blocks_.find(ks);
  if (it == blocks_.end()) return Rat(0);
  return it->second(target_->posInSlot(row), source_->posInSlot(col));
}

Vec GradedMap::apply(const Vec& x) const {
  if (x.size() != source_->dim()) throw std::invalid_argument("GradedMap::apply: size mismatch");
  Vec y = Vec::Zero(target_->dim());
  for (const auto& [k, m] : blocks_) {
    const auto& srcSlot = source_->slot(k);
    const auto& tgtSlot = target_->slot(k + degree_);
    for (size_t j = 0; j < srcSlot.size(); ++j) {
      const Rat& xj = x(srcSlot[j]);
      if (xj.isZero()) continue;
      for (size_t i = 0; i < tgtSlot.size(); ++i) {
        const Rat& mij = m(static_cast<Index>(i), static_cast<Index>(j));
        if (!mij.isZero()) y(tgtSlot[i]) += mij * xj;
      }
    }
  }
  return y;
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
  if (inner.target_.get() != source_.get() && inner.target_->labels() != source_->labels())
    throw std::invalid_argument("GradedMap::compose: space mismatch");
  GradedMap out(inner.source_, target_, degree_ + inner.degree_);
  for (const auto& [k, m] : inner.blocks_) {
    auto it = blocks_.find(k + inner.degree_);
    if (it == blocks_.end()) continue;
    const Mat& mine = it->second;
    if (mine.rows() == 0 || mine.cols() == 0) continue;
    // Column-accumulation product that skips zero entries; the differentials
    // handled here are sparse and dense products dominate otherwise.
    Mat prod = Mat::Zero(mine.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index r = 0; r < m.rows(); ++r) {
        const Rat& v = m(r, j);
        if (v.isZero()) continue;
        for (Index i = 0; i < mine.rows(); ++i) {
          const Rat& w = mine(i, r);
          if (!w.isZero()) prod(i, j) += w * v;
        }
      }
    }
    Mat existing = out.block(k);
    out.setBlock(k, existing + prod);
  }
  return out;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
  if (degree_ != o.degree_) throw std::invalid_argument("GradedMap: degree mismatch in +");
  GradedMap out(source_, target_, degree_);
  std::set<int> keys;
  for (const auto& [k, m] : blocks_) keys.insert(k);
  for (const auto& [k, m] : o.blocks_) keys.insert(k);
  for (int k : keys) out.setBlock(k, block(k) + o.block(k));
  return out;
}

GradedMap GradedMap::operator-() const { return scaled(Rat(-1)); }

GradedMap GradedMap::scaled(const Rat& c) const {
  GradedMap out(source_, target_, degree_);
  if (c.isZero()) return out;
  for (const auto& [k, m] : blocks_) out.setBlock(k, m * c);
  return out;
}

bool GradedMap::isZero() const {
  for (const auto& [k, m] : blocks_) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (!m(i, j).isZero()) return false;
  }
  return true;
}

bool isChainMap(const GradedMap& f, const CochainComplex& src, const CochainComplex& tgt) {
  if (f.degree() != 0) throw std::invalid_argument("isChainMap: expected a degree-0 map");
  GradedMap lhs = tgt.d.compose(f);
  GradedMap rhs = f.compose(src.d);
  return (lhs + (-rhs)).isZero();
}

CochainComplex CochainComplex::zero() {
  SpaceRef s = makeSpace({}, {});
  return CochainComplex{s, GradedMap::zero(s, s, 1)};
}

CochainComplex CochainComplex::checked(SpaceRef space, GradedMap d) {
  if (d.degree() != 1) throw std::invalid_argument("CochainComplex: differential must have degree +1");
  if (d.source().get() != space.get() || d.target().get() != space.get())
    throw std::invalid_argument("CochainComplex: differential spaces mismatch");
  if (!d.compose(d).isZero()) throw std::invalid_argument("CochainComplex: d∘d ≠ 0");
  return CochainComplex{std::move(space), std::move(d)};
}

Cohomology cohomology(const CochainComplex& c) {
  Cohomology h;
  if (c.space->dim() == 0) return h;
  for (int k = c.space->minDegree(); k <= c.space->maxDegree(); ++k) {
    if (c.space->dimAt(k) == 0) continue;
    Mat dk = c.d.block(k);
    Mat dprev = c.d.block(k - 1);
    Mat cycles = dk.rows() == 0 ? Mat::Identity(c.space->dimAt(k), c.space->dimAt(k))
                                : kernelBasis(dk);
    Mat boundaries = imageBasis(dprev);
    Mat reps = complementInto(boundaries, cycles);
    CohomologyPiece piece;
    piece.dim = reps.cols();
    // Lift representatives to global coordinates.
    const auto& slot = c.space->slot(k);
    piece.representatives = Mat::Zero(c.space->dim(), reps.cols());
    for (Index j = 0; j < reps.cols(); ++j)
      for (size_t i = 0; i < slot.size(); ++i)
        piece.representatives(slot[i], j) = reps(static_cast<Index>(i), j);
    if (piece.dim > 0) h[k] = std::move(piece);
  }
  return h;
}

std::map<int, Index> cohomologyDims(const CochainComplex& c) {
  std::map<int, Index> out;
  if (c.space->dim() == 0) return out;
  // dim H^k = dim ker d^k − rank d^{k−1} = dim_k − rank d^k − rank d^{k−1}.
  std::map<int, Index> ranks;
  for (int k = c.space->minDegree(); k <= c.space->maxDegree(); ++k) {
    Mat dk = c.d.block(k);
    ranks[k] = (dk.rows() == 0 || dk.cols() == 0) ? 0 : rank(dk);
  }
  for (int k = c.space->minDegree(); k <= c.space->maxDegree(); ++k) {
    Index dimK = c.space->dimAt(k);
    if (dimK == 0) continue;
    Index rk = ranks.count(k) ? ranks[k] : 0;
    Index rprev = ranks.count(k - 1) ? ranks[k - 1] : 0;
    Index h = dimK - rk - rprev;
    if (h != 0) out[k] = h;
  }
  return out;
}

Index totalCohomologyDim(const CochainComplex& c) {
  Index total = 0;
  for (const auto& [k, d] : cohomologyDims(c)) total += d;
  return total;
}

bool isAcyclic(const CochainComplex& c) { return cohomologyDims(c).empty(); }

SpaceRef shiftedSpace(const GradedVectorSpace& v, int n) {
  std::vector<int> deg(v.degrees());
  for (auto& d : deg) d -= n;
  return makeSpace(v.labels(), std::move(deg));
}

CochainComplex shifted(const CochainComplex& c, int n) {
  SpaceRef s = shiftedSpace(*c.space, n);
  GradedMap d(s, s, 1);
  for (const auto& [k, m] : c.d.blocks()) {
    Mat block = (n % 2 == 0) ? m : Mat(-m);
    d.setBlock(k - n, std::move(block));
  }
  return CochainComplex{s, d};
}

ConeResult cone(const GradedMap& f, const CochainComplex& x, const CochainComplex& y) {
  if (f.degree() != 0) throw std::invalid_argument("cone: expected a degree-0 chain map");
  if (!isChainMap(f, x, y)) throw std::invalid_argument("cone: not a chain map");
  std::vector<std::string> labels;
  std::vector<int> degrees;
  labels.reserve(x.space->dim() + y.space->dim());
  for (Index i = 0; i < x.space->dim(); ++i) {
    labels.push_back("s[1]:" + x.space->labelOf(i));
    degrees.push_back(x.space->degreeOf(i) - 1);
  }
  for (Index i = 0; i < y.space->dim(); ++i) {
    labels.push_back("t:" + y.space->labelOf(i));
    degrees.push_back(y.space->degreeOf(i));
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  const Index xo = 0, yo = x.space->dim();
  GradedMap d(s, s, 1);
  for (const auto& [k, m] : x.d.blocks()) {
    const auto& src = x.space->slot(k);
    const auto& tgt = x.space->slot(k + 1);
    for (size_t j = 0; j < src.size(); ++j)
      for (size_t i = 0; i < tgt.size(); ++i)
        d.addEntry(xo + tgt[i], xo + src[j], -m(static_cast<Index>(i), static_cast<Index>(j)));
  }
  for (const auto& [k, m] : y.d.blocks()) {
    const auto& src = y.space->slot(k);
    const auto& tgt = y.space->slot(k + 1);
    for (size_t j = 0; j < src.size(); ++j)
      for (size_t i = 0; i < tgt.size(); ++i)
        d.addEntry(yo + tgt[i], yo + src[j], m(static_cast<Index>(i), static_cast<Index>(j)));
  }
  for (const auto& [k, m] : f.blocks()) {
    const auto& src = x.space->slot(k);
    const auto& tgt = y.space->slot(k);
    for (size_t j = 0; j < src.size(); ++j)
      for (size_t i = 0; i < tgt.size(); ++i)
        d.addEntry(yo + tgt[i], xo + src[j], m(static_cast<Index>(i), static_cast<Index>(j)));
  }
  CochainComplex cc = CochainComplex::checked(s, std::move(d));
  return ConeResult{std::move(cc), xo, yo};
}

TensorResult tensorComplex(const CochainComplex& a, const CochainComplex& b) {
  const Index an = a.space->dim(), bn = b.space->dim();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  labels.reserve(an * bn);
  for (Index i = 0; i < an; ++i) {
    for (Index j = 0; j < bn; ++j) {
      labels.push_back(a.space->labelOf(i) + "(x)" + b.space->labelOf(j));
      degrees.push_back(a.space->degreeOf(i) + b.space->degreeOf(j));
    }
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  GradedMap d(s, s, 1);
  auto pair = [bn](Index i, Index j) { return i * bn + j; };
  // d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy
  for (Index i = 0; i < an; ++i) {
    Vec ei = Vec::Zero(an);
    ei(i) = Rat(1);
    Vec di = a.d.apply(ei);
    for (Index i2 = 0; i2 < an; ++i2) {
      if (di(i2).isZero()) continue;
      for (Index j = 0; j < bn; ++j) d.addEntry(pair(i2, j), pair(i, j), di(i2));
    }
  }
  for (Index j = 0; j < bn; ++j) {
    Vec ej = Vec::Zero(bn);
    ej(j) = Rat(1);
    Vec dj = b.d.apply(ej);
    for (Index j2 = 0; j2 < bn; ++j2) {
      if (dj(j2).isZero()) continue;
      for (Index i = 0; i < an; ++i) {
        Rat sign = (a.space->degreeOf(i) % 2 == 0) ? Rat(1) : Rat(-1);
        d.addEntry(pair(i, j2), pair(i, j), sign * dj(j2));
      }
    }
  }
  CochainComplex cc = CochainComplex::checked(s, std::move(d));
  return TensorResult{std::move(cc), bn};
}

CochainComplex dualComplex(const CochainComplex& c) {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  labels.reserve(c.space->dim());
  for (Index i = 0; i < c.space->dim(); ++i) {
    labels.push_back(c.space->labelOf(i) + "^");
    degrees.push_back(-c.space->degreeOf(i));
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  GradedMap d(s, s, 1);
  // (d* λ)(x) = −(−1)^{|λ|} λ(d x): block at dual degree m is
  // −(−1)^m times the transpose of the primal block at −m−1.
  for (const auto& [k, m] : c.d.blocks()) {
    const int dualDeg = -(k + 1);
    Rat sign = (dualDeg % 2 == 0) ? Rat(-1) : Rat(1);
    const auto& primalSrc = c.space->slot(k);        // degree k, dual degree −k
    const auto& primalTgt = c.space->slot(k + 1);    // degree k+1, dual degree −k−1
    for (size_t i = 0; i < primalTgt.size(); ++i)
      for (size_t j = 0; j < primalSrc.size(); ++j) {
        const Rat& val = m(static_cast<Index>(i), static_cast<Index>(j));
        if (!val.isZero()) d.addEntry(primalSrc[j], primalTgt[i], sign * val);
      }
  }
  return CochainComplex::checked(s, std::move(d));
}

QuasiIsoResult isQuasiIso(const GradedMap& f, const CochainComplex& x, const CochainComplex& y) {
  ConeResult cr = cone(f, x, y);
  auto dims = cohomologyDims(cr.complex);
  if (dims.empty()) return QuasiIsoResult{true, std::nullopt};
  return QuasiIsoResult{false, dims.begin()->first};
}

}  // namespace bbk
