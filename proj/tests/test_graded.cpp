#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bbk/graded.hpp"

using namespace bbk;

namespace {

// Two-term complex 0 → Q --v--> Q → 0 in degrees (0, 1); acyclic when v ≠ 0.
CochainComplex twoTerm(const Rat& v, const std::string& tag) {
  SpaceRef s = makeSpace({tag + ".x", tag + ".y"}, {0, 1});
  GradedMap d(s, s, 1);
  d.addEntry(1, 0, v);
  return CochainComplex::checked(s, d);
}

// Random small complex: degrees in {0,1,2}, d built upper-triangular with
// d² = 0 enforced by construction (d of degree-1 chosen in ker of degree-2 map).
CochainComplex randomComplex(std::mt19937& rng, const std::string& tag) {
  std::uniform_int_distribution<int> dimDist(1, 3), valDist(-2, 2);
  int n0 = dimDist(rng), n1 = dimDist(rng), n2 = dimDist(rng);
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (int i = 0; i < n0; ++i) { labels.push_back(tag + ".a" + std::to_string(i)); degrees.push_back(0); }
  for (int i = 0; i < n1; ++i) { labels.push_back(tag + ".b" + std::to_string(i)); degrees.push_back(1); }
  for (int i = 0; i < n2; ++i) { labels.push_back(tag + ".c" + std::to_string(i)); degrees.push_back(2); }
  SpaceRef s = makeSpace(labels, degrees);
  Mat d1 = Mat::Zero(n2, n1);
  for (Index i = 0; i < d1.rows(); ++i)
    for (Index j = 0; j < d1.cols(); ++j) d1(i, j) = Rat(valDist(rng));
  // d0 columns from ker(d1)
  Mat k = kernelBasis(d1);
  Mat d0 = Mat::Zero(n1, n0);
  if (k.cols() > 0) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(k.cols()) - 1);
    for (Index j = 0; j < n0; ++j) d0.col(j) = k.col(pick(rng)) * Rat(valDist(rng));
  }
  GradedMap d(s, s, 1);
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n0; ++j) d.addEntry(n0 + i, j, d0(i, j));
  for (Index i = 0; i < n2; ++i)
    for (Index j = 0; j < n1; ++j) d.addEntry(n0 + n1 + i, n0 + j, d1(i, j));
  return CochainComplex::checked(s, d);
}

}  // namespace

TEST_CASE("cohomology of a two-term acyclic complex") {
  auto c = twoTerm(Rat(2), "t");
  CHECK(isAcyclic(c));
  auto z = twoTerm(Rat(0), "z");
  auto h = cohomologyDims(z);
  CHECK(h[0] == 1);
  CHECK(h[1] == 1);
}

TEST_CASE("cone of the identity is acyclic; cone of zero sums shifted pieces") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = randomComplex(rng, "r" + std::to_string(trial));
    auto id = GradedMap::identity(c.space);
    auto cr = cone(id, c, c);
    CHECK(isAcyclic(cr.complex));
  }
  // zero map: H(cone) = H(X[1]) ⊕ H(Y)
  auto x = twoTerm(Rat(0), "x");
  auto y = twoTerm(Rat(0), "y");
  auto zero = GradedMap::zero(x.space, y.space, 0);
  auto cz = cone(zero, x, y);
  auto h = cohomologyDims(cz.complex);
  CHECK(h[-1] == 1);
  CHECK(h[0] == 2);
  CHECK(h[1] == 1);
}

TEST_CASE("quasi-isomorphism detection with witness") {
  auto x = twoTerm(Rat(0), "x");
  auto y = twoTerm(Rat(0), "y");
  auto id = GradedMap::identity(x.space);
  CHECK(isQuasiIso(id, x, x).ok);
  auto zero = GradedMap::zero(x.space, y.space, 0);
  auto r = isQuasiIso(zero, x, y);
  CHECK(!r.ok);
  CHECK(r.witnessDegree.has_value());
}

TEST_CASE("shift convention: H(V[n])^k = H(V)^{k+n}") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = randomComplex(rng, "s" + std::to_string(trial));
    auto h = cohomologyDims(c);
    for (int n : {-2, -1, 1, 3}) {
      auto cs = shifted(c, n);
      auto hs = cohomologyDims(cs);
      for (const auto& [k, dim] : h) {
        CHECK(hs[k - n] == dim);
      }
    }
  }
}

TEST_CASE("Kunneth at desk scale for random complexes") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = randomComplex(rng, "ka" + std::to_string(trial));
    auto b = randomComplex(rng, "kb" + std::to_string(trial));
    auto t = tensorComplex(a, b);
    auto ha = cohomologyDims(a);
    auto hb = cohomologyDims(b);
    auto ht = cohomologyDims(t.complex);
    for (int n = -1; n <= 5; ++n) {
      Index expected = 0;
      for (const auto& [i, di] : ha) {
        auto it = hb.find(n - i);
        if (it != hb.end()) expected += di * it->second;
      }
      Index got = ht.count(n) ? ht[n] : 0;
      CHECK(got == expected);
    }
  }
}

TEST_CASE("tensor with the ground field is the identity") {
  auto a = twoTerm(Rat(3), "u");
  SpaceRef unit = makeSpace({"1"}, {0});
  CochainComplex ground{unit, GradedMap::zero(unit, unit, 1)};
  auto t = tensorComplex(a, ground);
  CHECK(t.complex.space->dim() == a.space->dim());
  CHECK(cohomologyDims(t.complex) == cohomologyDims(a));
}

TEST_CASE("dual complex squares to zero and dualizes cohomology") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = randomComplex(rng, "d" + std::to_string(trial));
    auto dc = dualComplex(c);
    auto h = cohomologyDims(c);
    auto hd = cohomologyDims(dc);
    for (const auto& [k, dim] : h) CHECK(hd[-k] == dim);
  }
}

TEST_CASE("degenerate inputs: empty spaces are legal zero objects") {
  auto z = CochainComplex::zero();
  CHECK(z.space->dim() == 0);
  CHECK(isAcyclic(z));
  auto t = tensorComplex(z, z);
  CHECK(t.complex.space->dim() == 0);
}
