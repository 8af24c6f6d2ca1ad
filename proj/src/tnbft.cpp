#include "bbk/tnbft.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bbk {

namespace {

// Orientation of the boundary of [0, δ): fixed once by the worked
// topological-mechanics defect value.
const Rat kOrientation(-1);

std::string cellCoord(int cell) { return "t" + std::to_string(cell); }

bool matIsZero(const Mat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) return false;
  return true;
}

bool nextTupleSorted(std::vector<Index>& t, Index dim) {
  int i = static_cast<int>(t.size()) - 1;
  while (i >= 0 && t[i] == dim - 1) --i;
  if (i < 0) return false;
  Index v = t[i] + 1;
  for (size_t j = i; j < t.size(); ++j) t[j] = v;
  return true;
}

// Sub-complex carried by inclusion columns; throws when not d-stable.
CochainComplex subComplexFromColumns(const CochainComplex& ambient, const Mat& inclusion,
                                     const std::string& tag) {
  const Index n = inclusion.cols();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (Index j = 0; j < n; ++j) {
    int deg = 0;
    bool seen = false;
    for (Index i = 0; i < inclusion.rows(); ++i) {
      if (inclusion(i, j).isZero()) continue;
      int d = ambient.space->degreeOf(i);
      if (seen && d != deg)
        throw std::invalid_argument("subComplexFromColumns: non-homogeneous column");
      deg = d;
      seen = true;
    }
    labels.push_back(tag + ":" + std::to_string(j));
    degrees.push_back(deg);
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  GradedMap d(s, s, 1);
  for (Index j = 0; j < n; ++j) {
    Vec img = ambient.d.apply(inclusion.col(j));
    auto x = solve(inclusion, img);
    if (!x) throw std::invalid_argument("subComplexFromColumns: not closed under d");
    for (Index i = 0; i < n; ++i)
      if (!(*x)(i).isZero()) d.addEntry(i, j, (*x)(i));
  }
  return CochainComplex::checked(s, std::move(d));
}

}  // namespace

std::optional<Index> OpenForms::indexOf(int cell, Index localForm) const {
  for (size_t c = 0; c < cellsListed.size(); ++c) {
    if (cellsListed[c] == cell) return cellStart[c] + localForm;
  }
  return std::nullopt;
}

OpenForms openForms(const CellMesh& mesh, const OpenSet& u, int cap) {
  if (u.boundary && !u.cells.count(0))
    throw std::invalid_argument("openForms: boundary point requires cell 0");
  OpenForms out;
  out.open = u;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (int c : u.cells) {
    out.cellsListed.push_back(c);
    out.cellStart.push_back(out.dim());
    IntervalModel m(mesh.cellWidth(c), cap, cellCoord(c));
    auto cellLabels = m.basisLabels();
    auto cellForms = m.basis();
    for (size_t i = 0; i < cellForms.size(); ++i) {
      out.forms.push_back(cellForms[i]);
      out.cellOf.push_back(c);
      labels.push_back("c" + std::to_string(c) + "." + cellLabels[i]);
      degrees.push_back(cellForms[i].formDegree());
    }
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  GradedMap d(s, s, 1);
  for (size_t j = 0; j < out.forms.size(); ++j) {
    PolyForm dj = out.forms[j].d();
    if (dj.isZero()) continue;
    int c = out.cellOf[j];
    size_t pos = std::find(out.cellsListed.begin(), out.cellsListed.end(), c) -
                 out.cellsListed.begin();
    Index base = out.cellStart[pos];
    for (int k = 0; k <= dj.q.degree(); ++k) {
      Rat coeff = dj.q.coeff(k);
      if (coeff.isZero()) continue;
      d.addEntry(base + (cap + 1) + k, static_cast<Index>(j), coeff);
    }
  }
  CochainComplex complex = CochainComplex::checked(s, std::move(d));

  auto forms = out.forms;
  auto cellOf = out.cellOf;
  auto starts = out.cellStart;
  auto listed = out.cellsListed;
  CdgaModel cdga;
  cdga.complex = complex;
  cdga.mulProjected = [forms, cellOf, cap, starts, listed](Index a, Index b) {
    std::vector<std::pair<Index, Rat>> res;
    if (cellOf[a] != cellOf[b]) return res;  // distinct components multiply to 0
    PolyForm w = forms[a].wedge(forms[b]);
    size_t pos = std::find(listed.begin(), listed.end(), cellOf[a]) - listed.begin();
    Index base = starts[pos];
    for (int k = 0; k <= std::min(w.p.degree(), cap); ++k)
      if (!w.p.coeff(k).isZero()) res.emplace_back(base + k, w.p.coeff(k));
    for (int k = 0; k <= std::min(w.q.degree(), cap - 1); ++k)
      if (!w.q.coeff(k).isZero()) res.emplace_back(base + (cap + 1) + k, w.q.coeff(k));
    return res;
  };
  cdga.integratePair = [forms, cellOf](Index a, Index b) {
    if (cellOf[a] != cellOf[b]) return Rat(0);
    PolyForm w = forms[a].wedge(forms[b]);
    if (w.q.isZero()) return Rat(0);
    return PolyForm::oneForm(w.q, w.delta).integrate();
  };
  const bool hasBoundary = u.boundary;
  cdga.eval0 = [forms, cellOf, hasBoundary](Index a) {
    if (!hasBoundary || cellOf[a] != 0) return Rat(0);
    return forms[a].eval0();
  };
  cdga.unit = Vec::Zero(out.dim());
  for (size_t c = 0; c < out.cellsListed.size(); ++c) cdga.unit(out.cellStart[c]) = Rat(1);
  out.cdga = std::move(cdga);
  return out;
}

ConditionReport validateBoundaryCondition(const CyclicLInfinity& boundary,
                                          const BoundaryCondition& cond) {
  const Mat& p = boundary.pairingMatrix();
  const Index dim = boundary.space()->dim();
  auto isotropic = [&](const Mat& m) {
    for (Index i = 0; i < m.cols(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        Rat v = (m.col(i).transpose() * p * m.col(j))(0, 0);
        if (!v.isZero()) return false;
      }
    return true;
  };
  if (!isotropic(cond.l))
    return ConditionReport{false, ConditionViolation::isotropy, "pairing does not vanish on L⊗L"};
  for (Index j = 0; j < cond.l.cols(); ++j) {
    Vec img = boundary.differential().apply(cond.l.col(j));
    if (!spans(cond.l, Mat(img)))
      return ConditionReport{false, ConditionViolation::bracketClosure, "b1 does not preserve L"};
  }
  for (int k = 2; k <= boundary.maxArity(); ++k) {
    if (!boundary.hasArity(k) || cond.l.cols() == 0) continue;
    std::vector<Index> tuple(k, 0);
    do {
      std::vector<Vec> args;
      for (Index t : tuple) args.push_back(cond.l.col(t));
      Vec v = boundary.eval(args);
      if (!spans(cond.l, Mat(v)))
        return ConditionReport{false, ConditionViolation::bracketClosure,
                               "bracket of arity " + std::to_string(k) + " leaves L"};
    } while (nextTupleSorted(tuple, cond.l.cols()));
  }
  if (cond.l.cols() + cond.lPrime.cols() != dim)
    return ConditionReport{false, ConditionViolation::complement,
                           "L and L' do not have complementary dimensions"};
  Mat joined(dim, dim);
  if (cond.l.cols() > 0) joined.leftCols(cond.l.cols()) = cond.l;
  if (cond.lPrime.cols() > 0) joined.rightCols(cond.lPrime.cols()) = cond.lPrime;
  if (rank(joined) != dim)
    return ConditionReport{false, ConditionViolation::complement, "L + L' does not span"};
  if (!isotropic(cond.lPrime))
    return ConditionReport{false, ConditionViolation::complement,
                           "the supplied complement is not isotropic"};
  return ConditionReport{};
}

bool HonestField::isZero() const {
  for (const auto& [k, f] : parts)
    if (!f.isZero()) return false;
  return true;
}

BulkBoundarySystem::BulkBoundarySystem(std::string name, CyclicLInfinity boundaryCoefs,
                                       CellMesh mesh, int polyCap)
    : name_(std::move(name)),
      boundary_(std::move(boundaryCoefs)),
      mesh_(std::move(mesh)),
      cap_(polyCap) {}

void BulkBoundarySystem::setCondition(BoundaryCondition cond) {
  auto report = validateBoundaryCondition(boundary_, cond);
  if (!report.pass)
    throw std::invalid_argument("setCondition: invalid boundary condition: " + report.detail);
  condition_ = std::move(cond);
  cache_.clear();
}

const OpenFields& BulkBoundarySystem::fields(const OpenSet& u) const {
  auto it = cache_.find(u);
  if (it != cache_.end()) return *it->second;
  auto of = std::make_shared<OpenFields>();
  of->open = u;
  of->omega = openForms(mesh_, u, cap_);
  of->algebra = tensorWithCdga(boundary_, of->omega.cdga, -1);

  const Index nv = boundary_.space()->dim();
  const Index no = of->omega.dim();
  auto flat = [no](Index v, Index w) { return v * no + w; };

  GradedMap rho(of->algebra.space(), boundary_.space(), 0);
  if (u.boundary) {
    for (Index v = 0; v < nv; ++v)
      for (Index w = 0; w < no; ++w) {
        Rat e0 = of->omega.cdga.eval0(w);
        if (!e0.isZero()) rho.addEntry(v, flat(v, w), e0);
      }
  }
  of->rho = std::move(rho);

  std::vector<Vec> compactCols;
  for (Index v = 0; v < nv; ++v) {
    for (size_t ci = 0; ci < of->omega.cellsListed.size(); ++ci) {
      int c = of->omega.cellsListed[ci];
      IntervalModel m(mesh_.cellWidth(c), cap_, cellCoord(c));
      EndConditions ec;
      ec.vanishRight = true;
      ec.vanishLeft = !(c == 0 && u.boundary);
      for (const auto& f : m.basis(ec)) {
        Vec col = Vec::Zero(nv * no);
        Vec local = m.coordinates(f);
        for (Index k = 0; k < local.size(); ++k)
          if (!local(k).isZero()) col(flat(v, of->omega.cellStart[ci] + k)) = local(k);
        compactCols.push_back(std::move(col));
      }
    }
  }
  of->compactInclusion = Mat::Zero(nv * no, static_cast<Index>(compactCols.size()));
  for (size_t j = 0; j < compactCols.size(); ++j)
    of->compactInclusion.col(static_cast<Index>(j)) = compactCols[j];
  of->compactComplex =
      subComplexFromColumns(of->algebra.complex(), of->compactInclusion, "c" + u.str());

  if (condition_) buildConditioned(*of);

  auto [pos, inserted] = cache_.emplace(u, std::move(of));
  return *pos->second;
}

void BulkBoundarySystem::buildConditioned(OpenFields& of) const {
  const auto& cond = *condition_;
  const Index dimB = boundary_.space()->dim();
  Mat joined(dimB, dimB);
  if (cond.l.cols() > 0) joined.leftCols(cond.l.cols()) = cond.l;
  if (cond.lPrime.cols() > 0) joined.rightCols(cond.lPrime.cols()) = cond.lPrime;
  const Index dimE = of.algebra.space()->dim();
  Mat conditionMap = Mat::Zero(cond.lPrime.cols(), dimE);
  for (Index j = 0; j < dimE; ++j) {
    Vec e = Vec::Zero(dimE);
    e(j) = Rat(1);
    Vec y = of.rho.apply(e);
    auto coords = solve(joined, y);
    if (!coords) throw std::logic_error("buildConditioned: splitting solve failed");
    for (Index i = 0; i < cond.lPrime.cols(); ++i)
      conditionMap(i, j) = (*coords)(cond.l.cols() + i);
  }
  of.elInclusion = kernelBasis(conditionMap);
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (Index j = 0; j < of.elInclusion.cols(); ++j) {
    int deg = 0;
    for (Index i = 0; i < dimE; ++i)
      if (!of.elInclusion(i, j).isZero()) {
        deg = of.algebra.space()->degreeOf(i);
        break;
      }
    labels.push_back("EL" + of.open.str() + ":" + std::to_string(j));
    degrees.push_back(deg);
  }
  SpaceRef elSpace = makeSpace(std::move(labels), std::move(degrees));
  of.el = std::make_shared<CyclicLInfinity>(restrictAlgebra(of.algebra, elSpace, of.elInclusion));

  Mat m = conditionMap * of.compactInclusion;
  Mat k = kernelBasis(m);
  of.elCompactInclusion = of.compactInclusion * k;
}

HonestField BulkBoundarySystem::fromVec(const OpenSet& u, const Vec& x) const {
  const auto& of = fields(u);
  const Index no = of.omega.dim();
  HonestField f;
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i).isZero()) continue;
    Index v = i / no, w = i % no;
    auto key = std::make_pair(v, of.omega.cellOf[w]);
    PolyForm scaledForm = x(i) * of.omega.forms[w];
    auto it = f.parts.find(key);
    if (it == f.parts.end())
      f.parts.emplace(key, scaledForm);
    else
      it->second = it->second + scaledForm;
  }
  return f;
}

HonestField BulkBoundarySystem::basisField(const OpenSet& u, Index i) const {
  Vec e = Vec::Zero(fields(u).algebra.space()->dim());
  e(i) = Rat(1);
  return fromVec(u, e);
}

namespace {
// Homogeneous pieces of an honest field.
struct Piece {
  Index v;
  int cell;
  int formDeg;
  Poly poly;
  Rat delta;
};

std::vector<Piece> pieces(const HonestField& f) {
  std::vector<Piece> out;
  for (const auto& [key, form] : f.parts) {
    if (!form.p.isZero()) out.push_back({key.first, key.second, 0, form.p, form.delta});
    if (!form.q.isZero()) out.push_back({key.first, key.second, 1, form.q, form.delta});
  }
  return out;
}

void accumulate(HonestField& f, Index v, int cell, const PolyForm& form) {
  auto key = std::make_pair(v, cell);
  auto it = f.parts.find(key);
  if (it == f.parts.end())
    f.parts.emplace(key, form);
  else
    it->second = it->second + form;
}
}  // namespace

HonestField BulkBoundarySystem::bracket(const OpenSet& u,
                                        const std::vector<HonestField>& args) const {
  const int k = static_cast<int>(args.size());
  HonestField out;
  std::vector<std::vector<Piece>> ps;
  ps.reserve(k);
  for (const auto& a : args) {
    ps.push_back(pieces(a));
    if (ps.back().empty()) return out;
  }
  const auto& vs = *boundary_.space();
  std::vector<size_t> pos(k, 0);
  while (true) {
    bool sameCell = true;
    for (int i = 1; i < k; ++i)
      if (ps[i][pos[i]].cell != ps[0][pos[0]].cell) sameCell = false;
    if (sameCell) {
      std::vector<Index> coefs(k);
      for (int i = 0; i < k; ++i) coefs[i] = ps[i][pos[i]].v;
      auto bval = boundary_.evalBasis(coefs);
      if (!bval.empty()) {
        int parity = 0;
        for (int i = 0; i < k; ++i) {
          if (ps[i][pos[i]].formDeg % 2 == 0) continue;
          for (int j = i + 1; j < k; ++j)
            if (vs.degreeOf(ps[j][pos[j]].v) % 2 != 0) parity ^= 1;
        }
        PolyForm w = ps[0][pos[0]].formDeg == 0
                         ? PolyForm::zeroForm(ps[0][pos[0]].poly, ps[0][pos[0]].delta)
                         : PolyForm::oneForm(ps[0][pos[0]].poly, ps[0][pos[0]].delta);
        for (int i = 1; i < k && !w.isZero(); ++i) {
          PolyForm fi = ps[i][pos[i]].formDeg == 0
                            ? PolyForm::zeroForm(ps[i][pos[i]].poly, ps[i][pos[i]].delta)
                            : PolyForm::oneForm(ps[i][pos[i]].poly, ps[i][pos[i]].delta);
          w = w.wedge(fi);
        }
        if (!w.isZero()) {
          Rat sign = parity ? Rat(-1) : Rat(1);
          for (const auto& [vo, cv] : bval)
            accumulate(out, vo, ps[0][pos[0]].cell, (sign * cv) * w);
        }
      }
    }
    int i = k - 1;
    while (i >= 0 && ++pos[i] == ps[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

HonestField BulkBoundarySystem::differentialOf(const OpenSet& u, const HonestField& f) const {
  HonestField out;
  const auto& vs = *boundary_.space();
  for (const auto& p : pieces(f)) {
    Vec e = Vec::Zero(vs.dim());
    e(p.v) = Rat(1);
    Vec dv = boundary_.differential().apply(e);
    PolyForm form = p.formDeg == 0 ? PolyForm::zeroForm(p.poly, p.delta)
                                   : PolyForm::oneForm(p.poly, p.delta);
    for (Index i = 0; i < dv.size(); ++i) {
      if (dv(i).isZero()) continue;
      accumulate(out, i, p.cell, dv(i) * form);
    }
    if (p.formDeg == 0) {
      Rat sign = (vs.degreeOf(p.v) % 2 == 0) ? Rat(1) : Rat(-1);
      PolyForm dform{Poly(), p.poly.derivative(), p.delta};
      if (!dform.isZero()) accumulate(out, p.v, p.cell, sign * dform);
    }
  }
  return out;
}

Rat BulkBoundarySystem::pairFields(const OpenSet& u, const HonestField& a,
                                   const HonestField& b) const {
  Rat acc(0);
  const auto& vs = *boundary_.space();
  const Mat& p = boundary_.pairingMatrix();
  for (const auto& pa : pieces(a)) {
    for (const auto& pb : pieces(b)) {
      if (pa.cell != pb.cell) continue;
      if (pa.formDeg + pb.formDeg != 1) continue;
      const Rat& pv = p(pa.v, pb.v);
      if (pv.isZero()) continue;
      Rat sign = ((pa.formDeg * vs.degreeOf(pb.v)) % 2 == 0) ? Rat(1) : Rat(-1);
      Poly q = pa.poly * pb.poly;
      acc += sign * pv * q.integrate(Rat(0), pa.delta);
    }
  }
  return acc;
}

Vec BulkBoundarySystem::rhoOf(const OpenSet& u, const HonestField& f) const {
  Vec out = Vec::Zero(boundary_.space()->dim());
  if (!u.boundary) return out;
  for (const auto& p : pieces(f)) {
    if (p.cell != 0 || p.formDeg != 0) continue;
    out(p.v) += p.poly.eval(Rat(0));
  }
  return out;
}

bool BulkBoundarySystem::compactlyFlagged(const OpenSet& u, const HonestField& f) const {
  for (const auto& p : pieces(f)) {
    if (p.formDeg != 0) continue;
    Rat width = mesh_.cellWidth(p.cell);
    if (!p.poly.eval(width).isZero()) return false;
    bool leftOpen = !(p.cell == 0 && u.boundary);
    if (leftOpen && !p.poly.eval(Rat(0)).isZero()) return false;
  }
  return true;
}

namespace {
std::optional<int> fieldDegree(const CyclicLInfinity& boundary, const HonestField& f) {
  std::optional<int> deg;
  for (const auto& [key, form] : f.parts) {
    int vdeg = boundary.space()->degreeOf(key.first);
    if (!form.p.isZero()) {
      if (deg && *deg != vdeg) return std::nullopt;
      deg = vdeg;
    }
    if (!form.q.isZero()) {
      if (deg && *deg != vdeg + 1) return std::nullopt;
      deg = vdeg + 1;
    }
  }
  if (!deg) deg = 0;
  return deg;
}
}  // namespace

std::optional<int> BulkBoundarySystem::degreeOf(const HonestField& f) const {
  return fieldDegree(boundary_, f);
}

std::pair<Rat, Rat> BulkBoundarySystem::boundaryDefect(const OpenSet& u, const HonestField& f,
                                                       const HonestField& g) const {
  auto deg = fieldDegree(boundary_, f);
  if (!deg) throw std::invalid_argument("boundaryDefect: first field is not homogeneous");
  Rat sign = (*deg % 2 == 0) ? Rat(1) : Rat(-1);
  Rat lhs = pairFields(u, differentialOf(u, f), g) + sign * pairFields(u, f, differentialOf(u, g));
  Rat rhs = kOrientation * boundary_.pair(rhoOf(u, f), rhoOf(u, g));
  return {lhs, rhs};
}

CheckResult BulkBoundarySystem::checkIsotropic(const OpenSet& u) const {
  const auto& of = fields(u);
  const Index nc = of.compactInclusion.cols();
  std::vector<HonestField> compact;
  compact.reserve(nc);
  for (Index j = 0; j < nc; ++j) compact.push_back(fromVec(u, of.compactInclusion.col(j)));
  for (Index i = 0; i < nc; ++i) {
    for (Index j = 0; j < nc; ++j) {
      auto [lhs, rhs] = boundaryDefect(u, compact[i], compact[j]);
      if (lhs != rhs) {
        CheckResult bad;
        bad.pass = false;
        bad.witnessTuple = {i, j};
        bad.detail = "defect identity fails on compact pair (" + std::to_string(i) + ", " +
                     std::to_string(j) + "): " + lhs.str() + " vs " + rhs.str();
        return bad;
      }
    }
  }
  for (int k = 2; k <= boundary_.maxArity(); ++k) {
    if (!boundary_.hasArity(k)) continue;
    std::vector<Index> rest(k - 1, 0);
    bool more = true;
    while (more) {
      std::vector<HonestField> restFields;
      for (Index r : rest) restFields.push_back(compact[r]);
      for (Index a = 0; a < nc; ++a) {
        for (Index b = 0; b < nc; ++b) {
          std::vector<HonestField> args1 = {compact[b]};
          args1.insert(args1.end(), restFields.begin(), restFields.end());
          Rat lhs = pairFields(u, compact[a], bracket(u, args1));
          std::vector<HonestField> args2 = {compact[a]};
          args2.insert(args2.end(), restFields.begin(), restFields.end());
          Rat rhs = pairFields(u, compact[b], bracket(u, args2));
          auto da = fieldDegree(boundary_, compact[a]);
          auto db = fieldDegree(boundary_, compact[b]);
          // Swap sign with the parity twist of the valence-odd bulk pairing.
          auto par = [](int x) { return ((x % 2) + 2) % 2; };
          const int vp = of.algebra.pairingValenceParity();
          Rat sign = (par(*da * *db + vp * (*da + *db)) == 0) ? Rat(1) : Rat(-1);
          if (lhs != sign * rhs) {
            CheckResult bad;
            bad.pass = false;
            bad.witnessTuple = {a, b};
            bad.detail = "higher-bracket cyclicity fails at arity " + std::to_string(k);
            return bad;
          }
        }
      }
      more = !rest.empty() && nextTupleSorted(rest, nc);
      if (rest.empty()) more = false;
    }
  }
  return CheckResult{};
}

LagrangianReport BulkBoundarySystem::checkLagrangian(const OpenSet& u) const {
  const auto& of = fields(u);
  LagrangianReport rep;
  CochainComplex eComplex = of.algebra.complex();
  CochainComplex bComplex = u.boundary ? boundary_.complex() : CochainComplex::zero();
  GradedMap rho = u.boundary ? of.rho : GradedMap::zero(eComplex.space, bComplex.space, 0);
  if (!isChainMap(rho, eComplex, bComplex)) {
    rep.detail = "rho is not a chain map";
    return rep;
  }
  ConeResult cr = cone(rho, eComplex, bComplex);
  CochainComplex dual = dualComplex(of.compactComplex);

  const Index ne = eComplex.space->dim();
  const Index nb = bComplex.space->dim();
  const Index nc = of.compactInclusion.cols();
  GradedMap psi(cr.complex.space, dual.space, 0);
  const Mat& p = of.algebra.pairingMatrix();
  for (Index j = 0; j < ne; ++j) {
    for (Index m = 0; m < nc; ++m) {
      Rat val(0);
      for (Index i = 0; i < p.cols(); ++i) {
        if (of.compactInclusion(i, m).isZero() || p(j, i).isZero()) continue;
        val += p(j, i) * of.compactInclusion(i, m);
      }
      if (!val.isZero()) psi.addEntry(m, cr.sourceOffset + j, val);
    }
  }
  if (u.boundary) {
    for (Index m = 0; m < nc; ++m) {
      Vec rhoC = of.rho.apply(of.compactInclusion.col(m));
      for (Index j = 0; j < nb; ++j) {
        Vec ge = Vec::Zero(nb);
        ge(j) = Rat(1);
        Rat val = -boundary_.pair(ge, rhoC);
        if (!val.isZero()) psi.addEntry(m, cr.targetOffset + j, val);
      }
    }
  }
  rep.chainMap = isChainMap(psi, cr.complex, dual);
  if (!rep.chainMap) {
    rep.detail = "Psi is not a chain map";
    return rep;
  }
  auto qi = isQuasiIso(psi, cr.complex, dual);
  rep.quasiIso = qi.ok;
  rep.witnessDegree = qi.witnessDegree;
  if (!qi.ok) {
    rep.detail =
        "Psi fails to be a quasi-isomorphism at degree " + std::to_string(*qi.witnessDegree);
    return rep;
  }
  if (u.boundary && u.cells.size() == 1) {
    bool coneAcyclic = isAcyclic(cr.complex);
    bool dualAcyclic = isAcyclic(dual);
    ConeResult idCone = cone(GradedMap::identity(bComplex.space), bComplex, bComplex);
    GradedMap phi(idCone.complex.space, cr.complex.space, 0);
    const Index no = of.omega.dim();
    for (Index v = 0; v < nb; ++v) {
      for (Index w = 0; w < no; ++w) {
        if (of.omega.cellOf[w] != 0) continue;
        Rat c = of.omega.cdga.unit(w);
        if (!c.isZero()) phi.addEntry(cr.sourceOffset + v * no + w, idCone.sourceOffset + v, c);
      }
      phi.addEntry(cr.targetOffset + v, idCone.targetOffset + v, Rat(1));
    }
    bool phiChain = isChainMap(phi, idCone.complex, cr.complex);
    rep.boundarySidesAcyclic = coneAcyclic && dualAcyclic && phiChain;
    if (!rep.boundarySidesAcyclic) {
      rep.detail = "boundary-cell acyclicity or the constants comparison failed";
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

CheckResult BulkBoundarySystem::strictPullbackCheck(const OpenSet& u) const {
  if (!condition_) throw std::logic_error("strictPullbackCheck: no condition set");
  const auto& of = fields(u);
  CheckResult out;
  const auto& cond = *condition_;
  if (u.boundary) {
    for (const auto& [k, idx] : boundary_.space()->slots()) {
      Mat block = of.rho.block(k);
      if (rank(block) != static_cast<Index>(idx.size())) {
        out.pass = false;
        out.detail = "rho not surjective in degree " + std::to_string(k);
        return out;
      }
    }
  }
  CochainComplex eComplex = of.algebra.complex();
  const bool bdy = u.boundary;
  Mat lCols = bdy ? cond.l : Mat(boundary_.space()->dim(), 0);
  CochainComplex lComplex = lCols.cols() > 0
                                ? subComplexFromColumns(boundary_.complex(), lCols, "L")
                                : CochainComplex::zero();
  CochainComplex bComplex = bdy ? boundary_.complex() : CochainComplex::zero();
  const Index ne = eComplex.space->dim();
  const Index nl = lComplex.space->dim();
  const Index nbb = bComplex.space->dim();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (Index i = 0; i < ne; ++i) {
    labels.push_back("e:" + eComplex.space->labelOf(i));
    degrees.push_back(eComplex.space->degreeOf(i));
  }
  for (Index i = 0; i < nl; ++i) {
    labels.push_back("l:" + lComplex.space->labelOf(i));
    degrees.push_back(lComplex.space->degreeOf(i));
  }
  for (Index i = 0; i < nbb; ++i) {
    labels.push_back("b[-1]:" + bComplex.space->labelOf(i));
    degrees.push_back(bComplex.space->degreeOf(i) + 1);
  }
  SpaceRef hpSpace = makeSpace(std::move(labels), std::move(degrees));
  GradedMap d(hpSpace, hpSpace, 1);
  auto addBlock = [&](const GradedMap& m, Index rowOff, Index colOff, const Rat& scale) {
    for (const auto& [k, blk] : m.blocks()) {
      const auto& src = m.source()->slot(k);
      const auto& tgt = m.target()->slot(k + m.degree());
      for (size_t j = 0; j < src.size(); ++j)
        for (size_t i = 0; i < tgt.size(); ++i) {
          const Rat& c = blk(static_cast<Index>(i), static_cast<Index>(j));
          if (!c.isZero()) d.addEntry(rowOff + tgt[i], colOff + src[j], scale * c);
        }
    }
  };
  addBlock(eComplex.d, 0, 0, Rat(1));
  addBlock(lComplex.d, ne, ne, Rat(1));
  if (bdy) {
    addBlock(of.rho, ne + nl, 0, Rat(1));
    for (Index j = 0; j < nl; ++j) {
      for (Index i = 0; i < nbb; ++i)
        if (!cond.l(i, j).isZero()) d.addEntry(ne + nl + i, ne + j, -cond.l(i, j));
    }
    addBlock(bComplex.d, ne + nl, ne + nl, Rat(-1));
  }
  CochainComplex hp = CochainComplex::checked(hpSpace, std::move(d));

  const Index nel = of.elInclusion.cols();
  CochainComplex elComplex = of.el->complex();
  GradedMap cmp(elComplex.space, hpSpace, 0);
  for (Index j = 0; j < nel; ++j) {
    for (Index i = 0; i < ne; ++i)
      if (!of.elInclusion(i, j).isZero()) cmp.addEntry(i, j, of.elInclusion(i, j));
    if (bdy && nl > 0) {
      Vec y = of.rho.apply(of.elInclusion.col(j));
      auto coords = solve(lCols, y);
      if (!coords) throw std::logic_error("strictPullbackCheck: rho(E_L) escapes L");
      for (Index i = 0; i < nl; ++i)
        if (!(*coords)(i).isZero()) cmp.addEntry(ne + i, j, (*coords)(i));
    }
  }
  if (!isChainMap(cmp, elComplex, hp)) {
    out.pass = false;
    out.detail = "comparison into the homotopy pullback is not a chain map";
    return out;
  }
  auto qi = isQuasiIso(cmp, elComplex, hp);
  if (!qi.ok) {
    out.pass = false;
    out.detail = "E_L is not quasi-isomorphic to the homotopy pullback (degree " +
                 std::to_string(*qi.witnessDegree) + ")";
  }
  return out;
}

SplittingReport BulkBoundarySystem::splitting(const OpenSet& u, const Poly& chi) const {
  if (!condition_) throw std::logic_error("splitting: no condition set");
  SplittingReport rep;
  if (!u.boundary) {
    rep.detail = "splitting is only defined on boundary opens";
    return rep;
  }
  Rat w0 = mesh_.cellWidth(0);
  if (chi.eval(Rat(0)) != Rat(1) || !chi.eval(w0).isZero())
    throw std::invalid_argument("splitting: cutoff must satisfy chi(0) = 1, chi(width0) = 0");
  if (chi.degree() > cap_) throw std::invalid_argument("splitting: cutoff beyond the degree cap");
  const auto& of = fields(u);
  const auto& cond = *condition_;
  const Index dimB = boundary_.space()->dim();
  const Index dimE = of.algebra.space()->dim();
  Mat joined(dimB, dimB);
  joined.leftCols(cond.l.cols()) = cond.l;
  joined.rightCols(cond.lPrime.cols()) = cond.lPrime;
  Mat proj = Mat::Zero(cond.lPrime.cols(), dimE);
  for (Index j = 0; j < dimE; ++j) {
    Vec e = Vec::Zero(dimE);
    e(j) = Rat(1);
    auto coords = solve(joined, of.rho.apply(e));
    for (Index i = 0; i < cond.lPrime.cols(); ++i) proj(i, j) = (*coords)(cond.l.cols() + i);
  }
  const Index no = of.omega.dim();
  IntervalModel m0(w0, cap_, cellCoord(0));
  Vec chiCoords = m0.coordinates(PolyForm::zeroForm(chi, w0));
  size_t c0pos = std::find(of.omega.cellsListed.begin(), of.omega.cellsListed.end(), 0) -
                 of.omega.cellsListed.begin();
  Index base = of.omega.cellStart[c0pos];
  Mat ext = Mat::Zero(dimE, cond.lPrime.cols());
  for (Index c = 0; c < cond.lPrime.cols(); ++c) {
    for (Index v = 0; v < dimB; ++v) {
      if (cond.lPrime(v, c).isZero()) continue;
      for (Index k = 0; k < chiCoords.size(); ++k)
        if (!chiCoords(k).isZero()) ext(v * no + base + k, c) += cond.lPrime(v, c) * chiCoords(k);
    }
  }
  rep.projection = proj;
  rep.extension = ext;
  Mat pi = proj * ext;
  rep.retractIdentity = matIsZero(pi - Mat::Identity(pi.rows(), pi.cols()));
  Mat oneMinus = Mat::Identity(dimE, dimE) - ext * proj;
  rep.idempotent = matIsZero(oneMinus * oneMinus - oneMinus);
  rep.imageConditioned = matIsZero(proj * oneMinus);
  rep.extensionCompact = true;
  for (Index c = 0; c < ext.cols(); ++c) {
    if (!compactlyFlagged(u, fromVec(u, ext.col(c)))) rep.extensionCompact = false;
  }
  rep.pass = rep.retractIdentity && rep.idempotent && rep.imageConditioned && rep.extensionCompact;
  if (!rep.pass) rep.detail = "splitting identities failed";
  return rep;
}

Poly BulkBoundarySystem::defaultCutoff() const {
  Rat w0 = mesh_.cellWidth(0);
  return Poly::constant(Rat(1)) - Poly::monomial(1, Rat(1) / w0);
}

Mat BulkBoundarySystem::fieldRestriction(const OpenSet& v, const OpenSet& u) const {
  if (!v.contains(u)) throw std::invalid_argument("fieldRestriction: U must lie inside V");
  const auto& fv = fields(v);
  const auto& fu = fields(u);
  const Index nv = boundary_.space()->dim();
  const Index noV = fv.omega.dim();
  const Index noU = fu.omega.dim();
  Mat r = Mat::Zero(nv * noU, nv * noV);
  for (Index w = 0; w < noV; ++w) {
    int cell = fv.omega.cellOf[w];
    if (!u.cells.count(cell)) continue;
    size_t posV = std::find(fv.omega.cellsListed.begin(), fv.omega.cellsListed.end(), cell) -
                  fv.omega.cellsListed.begin();
    Index local = w - fv.omega.cellStart[posV];
    auto idxU = fu.omega.indexOf(cell, local);
    if (!idxU) continue;
    for (Index c = 0; c < nv; ++c) r(c * noU + *idxU, c * noV + w) = Rat(1);
  }
  return r;
}

Mat BulkBoundarySystem::conditionedRestriction(const OpenSet& v, const OpenSet& u) const {
  const auto& fv = fields(v);
  const auto& fu = fields(u);
  Mat r = fieldRestriction(v, u);
  Mat img = r * fv.elInclusion;
  Mat out(fu.elInclusion.cols(), fv.elInclusion.cols());
  for (Index j = 0; j < img.cols(); ++j) {
    auto x = solve(fu.elInclusion, Vec(img.col(j)));
    if (!x) throw std::logic_error("conditionedRestriction: restriction escapes E_L(U)");
    out.col(j) = *x;
  }
  return out;
}

CyclicLInfinity symplecticBoundary(int pairs) {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (int i = 0; i < pairs; ++i) {
    labels.push_back("q" + std::to_string(i + 1));
    labels.push_back("p" + std::to_string(i + 1));
    degrees.push_back(0);
    degrees.push_back(0);
  }
  SpaceRef s = makeSpace(std::move(labels), std::move(degrees));
  CyclicLInfinity alg(s, 3, 0);
  Mat omega = Mat::Zero(2 * pairs, 2 * pairs);
  for (int i = 0; i < pairs; ++i) {
    omega(2 * i, 2 * i + 1) = Rat(1);
    omega(2 * i + 1, 2 * i) = Rat(-1);
  }
  alg.setPairing(std::move(omega), true);
  return alg;
}

CyclicLInfinity bfBoundary(const LieAlgebra& g, int n) {
  return coadjointGaugeAlgebra(g, 2 - n, true);
}

BoundaryCondition lagrangianLineCondition(const Vec& l, const Vec& lPrime,
                                          const std::string& name) {
  BoundaryCondition cond;
  cond.l = Mat(l.size(), 1);
  cond.l.col(0) = l;
  cond.lPrime = Mat(lPrime.size(), 1);
  cond.lPrime.col(0) = lPrime;
  cond.name = name;
  return cond;
}

BoundaryCondition bfACondition(const LieAlgebra& g) {
  const int n = g.dim();
  BoundaryCondition cond;
  cond.l = Mat::Zero(2 * n, n);
  cond.lPrime = Mat::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    cond.l(i, i) = Rat(1);
    cond.lPrime(n + i, i) = Rat(1);
  }
  cond.name = "A";
  return cond;
}

BoundaryCondition bfBCondition(const LieAlgebra& g) {
  const int n = g.dim();
  BoundaryCondition cond;
  cond.l = Mat::Zero(2 * n, n);
  cond.lPrime = Mat::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    cond.l(n + i, i) = Rat(1);
    cond.lPrime(i, i) = Rat(1);
  }
  cond.name = "B";
  return cond;
}

}  // namespace bbk
