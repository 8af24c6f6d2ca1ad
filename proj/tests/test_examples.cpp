#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bbk/examples.hpp"

using namespace bbk;

TEST_CASE("trivial-coefficient cohomology: abelian and sl2") {
  auto ab = lieAlgebraCohomology(LieAlgebra::abelian(1));
  CHECK(ab[0] == 1);
  CHECK(ab[1] == 1);
  auto sl2 = lieAlgebraCohomology(LieAlgebra::sl2());
  CHECK(sl2[0] == 1);
  CHECK(sl2.count(1) == 0);
  CHECK(sl2.count(2) == 0);
  CHECK(sl2[3] == 1);
}

TEST_CASE("coefficient cohomology: adjoint weight of sl2 vanishes") {
  auto table = lieCohomology(LieAlgebra::sl2(), 0, 1);
  // weight 0: trivial coefficients
  CHECK(table.at({0, 0}) == 1);
  CHECK(table.at({3, 0}) == 1);
  CHECK(table.count({1, 0}) == 0);
  CHECK(table.count({2, 0}) == 0);
  // weight 1: the adjoint module, all degrees vanish
  for (int k = 0; k <= 3; ++k) CHECK(table.count({k, 1}) == 0);
}

TEST_CASE("half-plane functionals, B variant, sl2 weight 1: total dimension 3") {
  HalfPlaneFunctionals hp(LieAlgebra::sl2(), HalfPlaneFunctionals::Variant::B, 1);
  auto table = hp.cohomologyTable();
  Index weight1 = 0;
  for (const auto& [key, dim] : table)
    if (key.second == 1) weight1 += dim;
  CHECK(weight1 == 3);
  CHECK(table.at({-1, 1}) == 3);
  // Independent decomposition route agrees everywhere.
  auto closed = hp.closedFormTable();
  CHECK(table == closed);
  CHECK(hp.weightZeroBoundaryEmpty());
}

TEST_CASE("half-plane functionals: abelian weight 1 is one-dimensional") {
  HalfPlaneFunctionals hp(LieAlgebra::abelian(1), HalfPlaneFunctionals::Variant::B, 1);
  auto table = hp.cohomologyTable();
  Index weight1 = 0;
  for (const auto& [key, dim] : table)
    if (key.second == 1) weight1 += dim;
  CHECK(weight1 == 1);
  CHECK(table == hp.closedFormTable());
}

TEST_CASE("half-plane functionals agree with the closed form for a direct sum") {
  auto g = LieAlgebra::directSum(LieAlgebra::sl2(), LieAlgebra::abelian(1));
  HalfPlaneFunctionals hp(g, HalfPlaneFunctionals::Variant::B, 1);
  CHECK(hp.cohomologyTable() == hp.closedFormTable());
}

TEST_CASE("A variant builds and its weight-0 block carries the ghost boundary term") {
  HalfPlaneFunctionals hp(LieAlgebra::sl2(), HalfPlaneFunctionals::Variant::A, 1);
  CHECK(hp.weightBlockDim(0) > 0);
  CHECK_NOTHROW(hp.weightBlock(1));
}

TEST_CASE("boundary-field functionals: closed, nonzero, independent, spanning") {
  HalfPlaneFunctionals hp(LieAlgebra::sl2(), HalfPlaneFunctionals::Variant::B, 1);
  Vec zero = Vec::Zero(3);
  auto j0 = hp.boundaryFunctional(zero);
  CHECK(j0.closed);
  bool allZero = true;
  for (Index i = 0; i < j0.vector.size(); ++i)
    if (!j0.vector(i).isZero()) allZero = false;
  CHECK(allZero);
  Vec e = (Vec(3) << Rat(1), Rat(0), Rat(0)).finished();
  Vec f = (Vec(3) << Rat(0), Rat(1), Rat(0)).finished();
  Vec h = (Vec(3) << Rat(0), Rat(0), Rat(1)).finished();
  auto jh = hp.boundaryFunctional(h);
  CHECK(jh.closed);
  CHECK(hp.boundaryClassesSpan({e, f, h}));
  // A single functional cannot span the 3-dimensional space.
  CHECK(!hp.boundaryClassesSpan({h}));
}

TEST_CASE("pushforward comparison: abelian, single boundary cell") {
  auto rep = pushforwardCompare(LieAlgebra::abelian(1), 2, 1);
  CHECK(rep.pass);
  OpenSet cell{{0}, false};
  // Cohomology of the de Rham side over one cell: Sym^{≤2} of one generator.
  CHECK(rep.dims.at(cell).at(0) == 3);
}

TEST_CASE("pushforward comparison: abelian and sl2 on a 2-cell boundary mesh") {
  CHECK(pushforwardCompare(LieAlgebra::abelian(1), 2, 2).pass);
  CHECK(pushforwardCompare(LieAlgebra::sl2(), 2, 2, 1, 1).pass);
}

TEST_CASE("registered systems build with their conditions") {
  CHECK(makeToplmech(2, 2).hasCondition());
  CHECK(makeBf1dAbelian(2, 1).hasCondition());
  CHECK(makeBf1dSl2(1, 1).hasCondition());
}
