#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bbk/tnbft.hpp"

using namespace bbk;

namespace {

BulkBoundarySystem toplmech(int cells = 1, int cap = 3) {
  return BulkBoundarySystem("toplmech", symplecticBoundary(1), CellMesh::uniform(cells), cap);
}

BulkBoundarySystem bf1dSl2(int cells = 1, int cap = 2) {
  return BulkBoundarySystem("bf1d-sl2", bfBoundary(LieAlgebra::sl2(), 1),
                            CellMesh::uniform(cells), cap);
}

BoundaryCondition qLine() {
  return lagrangianLineCondition((Vec(2) << Rat(1), Rat(0)).finished(),
                                 (Vec(2) << Rat(0), Rat(1)).finished());
}

Poly randomVanishing(std::mt19937& rng, const Rat& width, int maxDeg) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), deg(0, maxDeg);
  int d = deg(rng);
  std::vector<Rat> c;
  for (int i = 0; i <= d; ++i) c.push_back(Rat(num(rng), den(rng)));
  Poly raw(std::move(c));
  return raw - Poly::constant(raw.eval(width));
}

}  // namespace

TEST_CASE("bulk theory of a zero boundary space is the zero theory") {
  SpaceRef empty = makeSpace({}, {});
  CyclicLInfinity zero(empty, 3, 0);
  BulkBoundarySystem sys("zero", zero, CellMesh::uniform(1), 2);
  OpenSet u{{0}, true};
  CHECK(sys.fields(u).algebra.space()->dim() == 0);
}

TEST_CASE("bulk fields of topological mechanics: H = V on every open") {
  auto sys = toplmech(2, 3);
  for (const auto& u : allOpens(sys.mesh())) {
    auto h = cohomologyDims(sys.fields(u).algebra.complex());
    CHECK(h[0] == 2 * static_cast<Index>(u.cells.size()));
    CHECK(h.size() == 1);
  }
}

TEST_CASE("rho strictly intertwines brackets (BF with sl2)") {
  auto sys = bf1dSl2(1, 2);
  OpenSet u{{0}, true};
  const auto& of = sys.fields(u);
  const Index dim = of.algebra.space()->dim();
  std::mt19937 rng(3);
  std::uniform_int_distribution<Index> pick(0, dim - 1);
  for (int trial = 0; trial < 40; ++trial) {
    Index a = pick(rng), b = pick(rng);
    HonestField fa = sys.basisField(u, a), fb = sys.basisField(u, b);
    Vec lhs = sys.rhoOf(u, sys.bracket(u, {fa, fb}));
    Vec rhs = sys.boundary().eval({sys.rhoOf(u, fa), sys.rhoOf(u, fb)});
    for (Index i = 0; i < lhs.size(); ++i) CHECK(lhs(i) == rhs(i));
  }
}

TEST_CASE("worked action value: S(t·e1 + 1·e2) = −1/2 for topological mechanics") {
  auto sys = toplmech(1, 3);
  OpenSet u{{0}, true};
  const auto& of = sys.fields(u);
  Vec phi = Vec::Zero(of.algebra.space()->dim());
  const Index no = of.omega.dim();
  phi(0 * no + 1) = Rat(1);  // q1 ⊗ t
  phi(1 * no + 0) = Rat(1);  // p1 ⊗ 1
  CHECK(actionFunctional(of.algebra, phi) == Rat(-1, 2));
  CHECK(interactionFunctional(of.algebra, phi) == Rat(0));
}

TEST_CASE("worked boundary defect: e = (1−t)⊗v gives LHS = RHS = −1") {
  auto sys = toplmech(1, 3);
  OpenSet u{{0}, true};
  Poly oneMinusT = Poly::constant(Rat(1)) - Poly::monomial(1);
  HonestField f, g;
  f.parts[{0, 0}] = PolyForm::zeroForm(oneMinusT, Rat(1));  // q1 ⊗ (1−t)
  g.parts[{1, 0}] = PolyForm::zeroForm(oneMinusT, Rat(1));  // p1 ⊗ (1−t)
  CHECK(sys.compactlyFlagged(u, f));
  auto [lhs, rhs] = sys.boundaryDefect(u, f, g);
  CHECK(lhs == Rat(-1));
  CHECK(rhs == Rat(-1));
}

TEST_CASE("boundary defect vanishes for conditioned pairs") {
  auto sys = toplmech(1, 3);
  sys.setCondition(qLine());
  OpenSet u{{0}, true};
  const auto& of = sys.fields(u);
  REQUIRE(of.elCompactInclusion.cols() > 0);
  for (Index i = 0; i < of.elCompactInclusion.cols(); ++i)
    for (Index j = 0; j < of.elCompactInclusion.cols(); ++j) {
      HonestField f = sys.fromVec(u, of.elCompactInclusion.col(i));
      HonestField g = sys.fromVec(u, of.elCompactInclusion.col(j));
      auto [lhs, rhs] = sys.boundaryDefect(u, f, g);
      CHECK(lhs == Rat(0));
      CHECK(rhs == Rat(0));
    }
}

TEST_CASE("randomized defect identity for both example systems") {
  std::mt19937 rng(7);
  auto run = [&](BulkBoundarySystem& sys, int trials) {
    OpenSet u{{0}, true};
    const Index nv = sys.boundary().space()->dim();
    std::uniform_int_distribution<Index> coef(0, nv - 1);
    Rat width = sys.mesh().cellWidth(0);
    for (int t = 0; t < trials; ++t) {
      HonestField f, g;
      Index v1 = coef(rng), v2 = coef(rng);
      f.parts[{v1, 0}] = PolyForm::zeroForm(randomVanishing(rng, width, 4), width);
      g.parts[{v2, 0}] = PolyForm::zeroForm(randomVanishing(rng, width, 4), width);
      auto [lhs, rhs] = sys.boundaryDefect(u, f, g);
      CHECK(lhs == rhs);
      HonestField h;
      h.parts[{v2, 0}] = PolyForm::oneForm(randomVanishing(rng, width, 3), width);
      auto [lhs2, rhs2] = sys.boundaryDefect(u, f, h);
      CHECK(lhs2 == rhs2);
    }
  };
  auto tm = toplmech(1, 8);
  run(tm, 25);
  auto bf = bf1dSl2(1, 8);
  run(bf, 25);
}

TEST_CASE("isotropy of the canonical structure, with a sign-flip control") {
  auto tm = toplmech(1, 2);
  CHECK(tm.checkIsotropic(OpenSet{{0}, true}).pass);
  CHECK(tm.checkIsotropic(OpenSet{{0}, false}).pass);
  auto bf = bf1dSl2(1, 2);
  CHECK(bf.checkIsotropic(OpenSet{{0}, true}).pass);
  // Negative control: against a flipped bulk pairing the defect identity
  // fails whenever the boundary term is nonzero.
  auto bad = toplmech(1, 2);
  OpenSet u{{0}, true};
  const auto& of = bad.fields(u);
  bool sawMismatch = false;
  for (Index i = 0; i < of.compactInclusion.cols() && !sawMismatch; ++i)
    for (Index j = 0; j < of.compactInclusion.cols() && !sawMismatch; ++j) {
      HonestField f = bad.fromVec(u, of.compactInclusion.col(i));
      HonestField g = bad.fromVec(u, of.compactInclusion.col(j));
      auto [lhs, rhs] = bad.boundaryDefect(u, f, g);
      if (!lhs.isZero() && -lhs != rhs) sawMismatch = true;
    }
  CHECK(sawMismatch);
}

TEST_CASE("boundary conditions validate: Lagrangian lines and BF A/B") {
  auto v = symplecticBoundary(1);
  std::vector<std::pair<Vec, Vec>> lines;
  lines.push_back({(Vec(2) << Rat(1), Rat(0)).finished(), (Vec(2) << Rat(0), Rat(1)).finished()});
  lines.push_back({(Vec(2) << Rat(0), Rat(1)).finished(), (Vec(2) << Rat(1), Rat(0)).finished()});
  lines.push_back({(Vec(2) << Rat(1), Rat(2)).finished(), (Vec(2) << Rat(1), Rat(3)).finished()});
  lines.push_back({(Vec(2) << Rat(2), Rat(-5)).finished(), (Vec(2) << Rat(1), Rat(7)).finished()});
  for (const auto& [l, lp] : lines)
    CHECK(validateBoundaryCondition(v, lagrangianLineCondition(l, lp)).pass);

  auto g = LieAlgebra::sl2();
  auto bfB = bfBoundary(g, 1);
  CHECK(validateBoundaryCondition(bfB, bfACondition(g)).pass);
  CHECK(validateBoundaryCondition(bfB, bfBCondition(g)).pass);
}

TEST_CASE("boundary condition negative controls carry the right tags") {
  auto g = LieAlgebra::sl2();
  auto boundary = bfBoundary(g, 1);
  auto nonIso = bfACondition(g);
  nonIso.l(3, 0) = Rat(1);  // e + e* pairs against itself
  auto r1 = validateBoundaryCondition(boundary, nonIso);
  CHECK(!r1.pass);
  CHECK(r1.tag == ConditionViolation::isotropy);

  BoundaryCondition notClosed;
  notClosed.l = Mat::Zero(6, 2);
  notClosed.l(0, 0) = Rat(1);
  notClosed.l(1, 1) = Rat(1);  // span{e, f}: isotropic, [e,f] = h escapes
  notClosed.lPrime = Mat::Zero(6, 4);
  auto r2 = validateBoundaryCondition(boundary, notClosed);
  CHECK(!r2.pass);
  CHECK(r2.tag == ConditionViolation::bracketClosure);

  auto noComp = bfBCondition(g);
  noComp.lPrime = noComp.l;
  auto r3 = validateBoundaryCondition(boundary, noComp);
  CHECK(!r3.pass);
  CHECK(r3.tag == ConditionViolation::complement);
}

TEST_CASE("imposing the condition: conditioned cohomology per open") {
  auto sys = toplmech(2, 3);
  sys.setCondition(qLine());
  OpenSet b{{0}, true};
  auto hb = cohomologyDims(sys.fields(b).el->complex());
  CHECK(hb[0] == 1);
  CHECK(hb.size() == 1);
  OpenSet i{{1}, false};
  auto hi = cohomologyDims(sys.fields(i).el->complex());
  CHECK(hi[0] == 2);
  CHECK(hi.size() == 1);
}

TEST_CASE("Lagrangian check passes on every open of a 3-cell mesh (both systems)") {
  auto tm = toplmech(3, 2);
  tm.setCondition(qLine());
  for (const auto& u : allOpens(tm.mesh())) {
    auto rep = tm.checkLagrangian(u);
    CHECK(rep.pass);
    if (u.boundary && u.cells.size() == 1) CHECK(rep.boundarySidesAcyclic);
  }
  auto bf = bf1dSl2(3, 1);
  bf.setCondition(bfBCondition(LieAlgebra::sl2()));
  for (const auto& u : allOpens(bf.mesh())) {
    CHECK(bf.checkLagrangian(u).pass);
  }
}

TEST_CASE("Lagrangian check detects a degenerate pairing") {
  std::vector<std::string> labels = {"q1", "p1"};
  std::vector<int> degrees = {0, 0};
  CyclicLInfinity degenerate(makeSpace(labels, degrees), 3, 0);
  BulkBoundarySystem sys("degenerate", degenerate, CellMesh::uniform(1), 2);
  auto rep = sys.checkLagrangian(OpenSet{{0}, false});
  CHECK(!rep.pass);
  CHECK(rep.witnessDegree.has_value());
}

TEST_CASE("strict pullback model: surjectivity plus quasi-isomorphism") {
  auto tm = toplmech(2, 2);
  tm.setCondition(qLine());
  for (const auto& u : allOpens(tm.mesh())) CHECK(tm.strictPullbackCheck(u).pass);
  auto bf = bf1dSl2(2, 1);
  bf.setCondition(bfBCondition(LieAlgebra::sl2()));
  for (const auto& u : allOpens(bf.mesh())) CHECK(bf.strictPullbackCheck(u).pass);
}

TEST_CASE("splitting: retract identities, conditioned image, compact extension") {
  auto sys = toplmech(2, 3);
  sys.setCondition(qLine());
  OpenSet u{{0, 1}, true};
  auto rep = sys.splitting(u, sys.defaultCutoff());
  CHECK(rep.pass);
  CHECK(rep.retractIdentity);
  CHECK(rep.idempotent);
  CHECK(rep.imageConditioned);
  CHECK(rep.extensionCompact);
  CHECK_THROWS(sys.splitting(u, Poly::monomial(1)));
  auto bf = bf1dSl2(1, 2);
  bf.setCondition(bfBCondition(LieAlgebra::sl2()));
  CHECK(bf.splitting(OpenSet{{0}, true}, bf.defaultCutoff()).pass);
}

TEST_CASE("tensorWithCdga preserves the Jacobi identities (capped brackets)") {
  auto bf = bf1dSl2(1, 2);
  CHECK(checkJacobi(bf.fields(OpenSet{{0}, true}).algebra).pass);
  CHECK(checkJacobi(bf.fields(OpenSet{{0}, false}).algebra).pass);
}

TEST_CASE("field restriction and conditioned restriction compose") {
  auto sys = toplmech(2, 2);
  sys.setCondition(qLine());
  OpenSet v{{0, 1}, true};
  OpenSet u{{1}, false};
  Mat r = sys.fieldRestriction(v, u);
  CHECK(r.rows() == sys.fields(u).algebra.space()->dim());
  CHECK(r.cols() == sys.fields(v).algebra.space()->dim());
  Mat cr = sys.conditionedRestriction(v, u);
  CHECK(cr.rows() == sys.fields(u).elInclusion.cols());
  CHECK(cr.cols() == sys.fields(v).elInclusion.cols());
  OpenSet w{{0, 1}, false};
  Mat direct = sys.fieldRestriction(v, u);
  Mat composed = sys.fieldRestriction(w, u) * sys.fieldRestriction(v, w);
  bool equal = true;
  for (Index i = 0; i < direct.rows(); ++i)
    for (Index j = 0; j < direct.cols(); ++j)
      if (direct(i, j) != composed(i, j)) equal = false;
  CHECK(equal);
}
