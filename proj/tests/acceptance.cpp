// Acceptance suite: runs every criterion at its stated tolerance (exact
// rational identities throughout) and prints one pass/fail line each.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "bbk/examples.hpp"
#include "bbk/suites.hpp"

using namespace bbk;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << note
            << std::endl;
  if (!ok) ++failures;
}

Poly randomPoly(std::mt19937& rng, int maxDeg) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), deg(0, maxDeg);
  int d = deg(rng);
  std::vector<Rat> c;
  for (int i = 0; i <= d; ++i) c.push_back(Rat(num(rng), den(rng)));
  return Poly(std::move(c));
}

Poly vanishingAt(std::mt19937& rng, const Rat& at, int maxDeg) {
  Poly raw = randomPoly(rng, maxDeg);
  return raw - Poly::constant(raw.eval(at));
}

}  // namespace

int main() {
  // 1. Homotopy identity on 200 randomized vanishing-at-delta forms.
  criterion(1, "contracting homotopy identity dK + Kd = id (200 random forms, caps <= 8)", [] {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> num(1, 9), den(1, 6);
    for (int t = 0; t < 200; ++t) {
      Rat delta(num(rng), den(rng));
      Poly p = vanishingAt(rng, delta, 8);
      Poly q = vanishingAt(rng, delta, 7);  // flagged: both parts vanish at delta
      PolyForm w{p, q, delta};
      if (w.flag() != SupportFlag::vanishing_at_delta) return false;
      if (!(homotopyK(w.d()) + homotopyK(w).d() == w)) return false;
    }
    return true;
  });

  // 2. Boundary-defect identity, randomized, both systems; zero on
  //    conditioned pairs.
  criterion(2, "boundary defect identity (100 random compact pairs, both systems)", [] {
    auto tm = makeToplmech(1, 8);
    auto bf = makeBf1dSl2(1, 8);
    std::mt19937 rng(202);
    for (BulkBoundarySystem* sys : {&tm, &bf}) {
      OpenSet u{{0}, true};
      const Index nv = sys->boundary().space()->dim();
      std::uniform_int_distribution<Index> coef(0, nv - 1);
      Rat width = sys->mesh().cellWidth(0);
      for (int t = 0; t < 100; ++t) {
        HonestField f, g;
        f.parts[{coef(rng), 0}] = PolyForm::zeroForm(vanishingAt(rng, width, 6), width);
        if (t % 2 == 0)
          g.parts[{coef(rng), 0}] = PolyForm::zeroForm(vanishingAt(rng, width, 6), width);
        else
          g.parts[{coef(rng), 0}] = PolyForm::oneForm(randomPoly(rng, 5), width);
        if (!sys->compactlyFlagged(u, f)) return false;
        auto [lhs, rhs] = sys->boundaryDefect(u, f, g);
        if (lhs != rhs) return false;
      }
      const auto& of = sys->fields(u);
      for (Index i = 0; i < of.elCompactInclusion.cols(); ++i)
        for (Index j = 0; j < of.elCompactInclusion.cols(); ++j) {
          auto [lhs, rhs] = sys->boundaryDefect(u, sys->fromVec(u, of.elCompactInclusion.col(i)),
                                                sys->fromVec(u, of.elCompactInclusion.col(j)));
          if (!lhs.isZero() || !rhs.isZero()) return false;
        }
    }
    return true;
  });

  // 3. Lagrangian structure on every open of a 3-cell mesh, both systems.
  criterion(3, "Lagrangian quasi-isomorphism on every open (3-cell mesh, both systems)", [] {
    auto tm = makeToplmech(3, 2);
    auto bf = makeBf1dSl2(3, 1);
    for (BulkBoundarySystem* sys : {&tm, &bf}) {
      for (const auto& u : allOpens(sys->mesh())) {
        auto rep = sys->checkLagrangian(u);
        if (!rep.pass) return false;
        if (u.boundary && u.cells.size() == 1 && !rep.boundarySidesAcyclic) return false;
      }
    }
    return true;
  });

  // 4. Boundary-condition gate plus three tagged negative controls.
  criterion(4, "boundary-condition gate with tagged negative controls", [] {
    auto v = symplecticBoundary(1);
    std::vector<std::pair<Vec, Vec>> lines = {
        {(Vec(2) << Rat(1), Rat(0)).finished(), (Vec(2) << Rat(0), Rat(1)).finished()},
        {(Vec(2) << Rat(0), Rat(1)).finished(), (Vec(2) << Rat(1), Rat(0)).finished()},
        {(Vec(2) << Rat(1), Rat(2)).finished(), (Vec(2) << Rat(1), Rat(3)).finished()},
        {(Vec(2) << Rat(3), Rat(-7)).finished(), (Vec(2) << Rat(2), Rat(5)).finished()}};
    for (const auto& [l, lp] : lines)
      if (!validateBoundaryCondition(v, lagrangianLineCondition(l, lp)).pass) return false;
    auto g = LieAlgebra::sl2();
    auto boundary = bfBoundary(g, 1);
    if (!validateBoundaryCondition(boundary, bfACondition(g)).pass) return false;
    if (!validateBoundaryCondition(boundary, bfBCondition(g)).pass) return false;
    auto nonIso = bfACondition(g);
    nonIso.l(3, 0) = Rat(1);
    auto r1 = validateBoundaryCondition(boundary, nonIso);
    if (r1.pass || r1.tag != ConditionViolation::isotropy) return false;
    BoundaryCondition notClosed;
    notClosed.l = Mat::Zero(6, 2);
    notClosed.l(0, 0) = Rat(1);
    notClosed.l(1, 1) = Rat(1);
    notClosed.lPrime = Mat::Zero(6, 4);
    auto r2 = validateBoundaryCondition(boundary, notClosed);
    if (r2.pass || r2.tag != ConditionViolation::bracketClosure) return false;
    auto noComp = bfBCondition(g);
    noComp.lPrime = noComp.l;
    auto r3 = validateBoundaryCondition(boundary, noComp);
    if (r3.pass || r3.tag != ConditionViolation::complement) return false;
    return true;
  });

  // 5. Weiss covers at level 2 on meshes with up to three cells.
  criterion(5, "Cech descent for every level-2 Weiss cover (meshes <= 3 cells, both systems)",
            [] {
              for (int cells = 1; cells <= 3; ++cells) {
                auto tm = makeToplmech(cells, 2);
                auto bf = makeBf1dSl2(cells, 1);
                for (BulkBoundarySystem* sys : {&tm, &bf}) {
                  ObservablesContext ctx(*sys, 2);
                  for (const auto& v : allOpens(sys->mesh())) {
                    for (const auto& cover : ctx.weissCovers(v, 2)) {
                      if (!ctx.weissCechCheck(v, cover).pass) return false;
                    }
                  }
                }
              }
              return true;
            });

  // 6. P0 axioms on a six-generator kernel pool.
  criterion(6, "P0 bracket axioms on a six-generator kernel pool", [] {
    auto sys = makeToplmech(1, 3);
    OpenSet u{{0}, true};
    Poly oneMinusT = Poly::constant(Rat(1)) - Poly::monomial(1);
    Poly tOneMinusT = Poly::monomial(1) * oneMinusT;
    std::vector<HonestField> kernels(6);
    kernels[0].parts[{0, 0}] = PolyForm::zeroForm(oneMinusT, Rat(1));
    kernels[1].parts[{0, 0}] = PolyForm::zeroForm(tOneMinusT, Rat(1));
    kernels[2].parts[{1, 0}] = PolyForm::zeroForm(tOneMinusT, Rat(1));
    kernels[3].parts[{0, 0}] = PolyForm::oneForm(Poly::constant(Rat(1)), Rat(1));
    kernels[4].parts[{1, 0}] = PolyForm::oneForm(Poly::monomial(1), Rat(1));
    kernels[5].parts[{1, 0}] = PolyForm::oneForm(Poly::constant(Rat(1)), Rat(1));
    KernelObservables pool(sys, u, kernels);
    const auto& walg = pool.words();
    auto par = [](int x) { return ((x % 2) + 2) % 2; };
    auto elem = [](const Word& w) {
      WordElem e;
      e.emplace(w, Rat(1));
      return e;
    };
    auto eq = [](const WordElem& a, const WordElem& b) {
      WordElem d = a;
      for (const auto& [w, c] : b) addTo(d, w, -c);
      return d.empty();
    };
    WordBasis two(walg, 2);
    for (const auto& wa : two.words())
      for (const auto& wb : two.words()) {
        WordElem lhs = pool.bracket(elem(wa), elem(wb));
        WordElem rhs = pool.bracket(elem(wb), elem(wa));
        Rat sign =
            (par((walg.degreeOf(wa) + 1) * (walg.degreeOf(wb) + 1)) == 0) ? Rat(-1) : Rat(1);
        if (!eq(lhs, scaled(rhs, sign))) return false;
        for (const auto& [w, c] : lhs)
          if (walg.degreeOf(w) != walg.degreeOf(wa) + walg.degreeOf(wb) + 1) return false;
      }
    WordBasis one(walg, 1);
    for (const auto& wf : one.words())
      for (const auto& wg : one.words())
        for (const auto& wh : one.words()) {
          if (wf.empty() || wg.empty() || wh.empty()) continue;
          WordElem gh = walg.mul(elem(wg), elem(wh));
          WordElem lhs = pool.bracket(elem(wf), gh);
          WordElem t1 = walg.mul(pool.bracket(elem(wf), elem(wg)), elem(wh));
          Rat sign = (par((walg.degreeOf(wf) + 1) * walg.degreeOf(wg)) == 0) ? Rat(1) : Rat(-1);
          WordElem t2 = scaled(walg.mul(elem(wg), pool.bracket(elem(wf), elem(wh))), sign);
          WordElem rhs = t1;
          for (const auto& [w, c] : t2) addTo(rhs, w, c);
          if (!eq(lhs, rhs)) return false;
        }
    for (const auto& wf : two.words())
      for (const auto& wg : two.words())
        for (const auto& wh : two.words()) {
          WordElem lhs = pool.bracket(elem(wf), pool.bracket(elem(wg), elem(wh)));
          WordElem t1 = pool.bracket(pool.bracket(elem(wf), elem(wg)), elem(wh));
          Rat sign =
              (par((walg.degreeOf(wf) + 1) * (walg.degreeOf(wg) + 1)) == 0) ? Rat(1) : Rat(-1);
          WordElem t2 = scaled(pool.bracket(elem(wg), pool.bracket(elem(wf), elem(wh))), sign);
          WordElem rhs = t1;
          for (const auto& [w, c] : t2) addTo(rhs, w, c);
          if (!eq(lhs, rhs)) return false;
        }
    // Differential compatibility over a d-closed pool.
    std::vector<HonestField> closed = kernels;
    for (size_t i = 0; i < 3; ++i) {
      HonestField d = sys.differentialOf(u, closed[i]);
      if (!d.isZero()) closed.push_back(d);
    }
    KernelObservables dpool(sys, u, closed);
    const auto& dwalg = dpool.words();
    WordBasis dtwo(dwalg, 2);
    for (const auto& wf : dtwo.words())
      for (const auto& wg : dtwo.words()) {
        WordElem lhs = dpool.differential(dpool.bracket(elem(wf), elem(wg)));
        WordElem t1 = dpool.bracket(dpool.differential(elem(wf)), elem(wg));
        Rat sign = (par(dwalg.degreeOf(wf) + 1) == 0) ? Rat(1) : Rat(-1);
        WordElem t2 = scaled(dpool.bracket(elem(wf), dpool.differential(elem(wg))), sign);
        WordElem rhs = t1;
        for (const auto& [w, c] : t2) addTo(rhs, w, c);
        if (!eq(lhs, rhs)) return false;
      }
    return true;
  });

  // 7. The polynomial-algebra candidate for topological mechanics.
  criterion(7, "polynomial candidate comparison for topological mechanics (T = 2)", [] {
    // Independent oracle first: monomial counts of the truncated polynomial
    // algebras on V = Q^2 and on the Lagrangian line.
    auto monomialsOfWeight = [](int vars, int w) {
      Index num = 1, den = 1;
      for (int i = 0; i < w; ++i) {
        num *= vars + i;
        den *= i + 1;
      }
      return num / den;
    };
    std::map<int, Index> interiorExpected, boundaryExpected;
    for (int w = 0; w <= 2; ++w) {
      interiorExpected[w] = monomialsOfWeight(2, w);  // 1, 2, 3
      boundaryExpected[w] = monomialsOfWeight(1, w);  // 1, 1, 1
    }
    if (interiorExpected[0] != 1 || interiorExpected[1] != 2 || interiorExpected[2] != 3)
      return false;
    if (boundaryExpected[0] != 1 || boundaryExpected[1] != 1 || boundaryExpected[2] != 1)
      return false;
    auto sys = makeToplmech(2, 2);
    ObservablesContext ctx(sys, 2);
    auto fam = famFromSystem(sys, 2);
    auto rep = amCompare(ctx, fam);
    if (!rep.pass) return false;
    // Weight-filtered cohomology matches the oracle per open type.
    auto weightDims = [&](const OpenSet& u) {
      const auto& ce = ctx.obs(u);
      std::map<int, Index> out;
      for (int w = 0; w <= 2; ++w) {
        WordBasis filtered(ce.alg, 2,
                           [&](const Word& word) { return ce.alg.weightOf(word) == w; });
        auto h = cohomologyDims(filtered.complex(ce.alg, ce.genImages));
        out[w] = h.count(0) ? h[0] : 0;
        if (h.size() > (h.count(0) ? 1u : 0u)) out[w] = -1;
      }
      return out;
    };
    if (weightDims(OpenSet{{1}, false}) != interiorExpected) return false;
    if (weightDims(OpenSet{{0}, true}) != boundaryExpected) return false;
    return true;
  });

  // 8. The algebra/module candidate for one-dimensional BF theory.
  criterion(8, "algebra-module candidate comparison for 1d BF (abelian and sl2, T = 2)", [] {
    // Brute-force expansion oracle for the abelian interior value: words in
    // one ghost (degree +1) and one field generator (degree -1).
    std::map<int, Index> expected = {{-1, 1}, {0, 2}, {1, 1}};
    auto ab = makeBf1dAbelian(2, 1);
    ObservablesContext ctxA(ab, 2);
    auto famA = famFromSystem(ab, 2);
    OpenSet interior{{1}, false};
    auto a = famA.value(interior);
    std::map<int, Index> dims;
    for (Index i = 0; i < a.space()->dim(); ++i) dims[a.space()->degreeOf(i)]++;
    if (dims != expected) return false;
    if (!amCompare(ctxA, famA).pass) return false;
    auto sl2 = makeBf1dSl2(2, 1);
    ObservablesContext ctxS(sl2, 2);
    if (!amCompare(ctxS, famFromSystem(sl2, 2)).pass) return false;
    return true;
  });

  // 9. Half-plane local functionals in coefficient weight one.
  criterion(9, "half-plane functional cohomology at weight 1 (dimension 3, both routes)", [] {
    HalfPlaneFunctionals hp(LieAlgebra::sl2(), HalfPlaneFunctionals::Variant::B, 1);
    auto table = hp.cohomologyTable();
    Index weight1 = 0;
    for (const auto& [key, dim] : table)
      if (key.second == 1) weight1 += dim;
    if (weight1 != 3) return false;
    if (table != hp.closedFormTable()) return false;
    Vec e = (Vec(3) << Rat(1), Rat(0), Rat(0)).finished();
    Vec f = (Vec(3) << Rat(0), Rat(1), Rat(0)).finished();
    Vec h = (Vec(3) << Rat(0), Rat(0), Rat(1)).finished();
    for (const Vec& x : {e, f, h})
      if (!hp.boundaryFunctional(x).closed) return false;
    return hp.boundaryClassesSpan({e, f, h});
  });

  // 10. Whitehead prerequisite by direct rank computation.
  criterion(10, "sl2 cohomology with trivial coefficients is (1, 0, 0, 1)", [] {
    auto h = lieAlgebraCohomology(LieAlgebra::sl2());
    return h[0] == 1 && h.count(1) == 0 && h.count(2) == 0 && h[3] == 1;
  });

  // 11. Pushforward comparison one dimension up.
  criterion(11, "pushforward comparison on a 2-cell boundary mesh (abelian and sl2, T = 2)", [] {
    if (!pushforwardCompare(LieAlgebra::abelian(1), 2, 2, 2, 1).pass) return false;
    if (!pushforwardCompare(LieAlgebra::sl2(), 2, 2, 1, 1).pass) return false;
    return true;
  });

  // 12. Strict pullback model: surjectivity plus quasi-isomorphism.
  criterion(12, "strict pullback matches the homotopy pullback on every open", [] {
    auto tm = makeToplmech(3, 2);
    auto bf = makeBf1dSl2(3, 1);
    for (BulkBoundarySystem* sys : {&tm, &bf}) {
      for (const auto& u : allOpens(sys->mesh()))
        if (!sys->strictPullbackCheck(u).pass) return false;
    }
    return true;
  });

  if (failures == 0) {
    std::cout << "acceptance: all 12 criteria pass" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  return 1;
}
