#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bbk/linalg.hpp"

using namespace bbk;

TEST_CASE("rational parsing and arithmetic") {
  auto r = Rat::parse("3/6");
  REQUIRE(r.has_value());
  CHECK(*r == Rat(1, 2));
  CHECK(r->str() == "1/2");
  CHECK(!Rat::parse("1/0").has_value());
  CHECK(!Rat::parse("").has_value());
  CHECK(!Rat::parse("a/b").has_value());
  CHECK(!Rat::parse("1/").has_value());
  CHECK(Rat::parse("-7")->str() == "-7");
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 4).str() == "1/2");
  CHECK(Rat::invFactorial(4) == Rat(1, 24));
}

TEST_CASE("rref, rank, kernel on a known matrix") {
  Mat a(3, 4);
  a << Rat(1), Rat(2), Rat(3), Rat(4),
       Rat(2), Rat(4), Rat(6), Rat(8),
       Rat(0), Rat(1), Rat(1), Rat(0);
  CHECK(rank(a) == 2);
  Mat k = kernelBasis(a);
  CHECK(k.cols() == 2);
  for (Index j = 0; j < k.cols(); ++j) {
    Vec img = a * k.col(j);
    for (Index i = 0; i < img.size(); ++i) CHECK(img(i).isZero());
  }
}

TEST_CASE("solve recovers exact rational solutions") {
  Mat a(2, 2);
  a << Rat(1, 2), Rat(1, 3), Rat(1, 5), Rat(1, 7);
  Vec b(2);
  b << Rat(1), Rat(0);
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  Vec r = a * (*x) - b;
  CHECK(r(0).isZero());
  CHECK(r(1).isZero());
  // Inconsistent system.
  Mat c(2, 1);
  c << Rat(1), Rat(2);
  Vec d(2);
  d << Rat(1), Rat(3);
  CHECK(!solve(c, d).has_value());
}

TEST_CASE("complementInto picks representatives modulo a subspace") {
  Mat base(3, 1);
  base << Rat(1), Rat(0), Rat(0);
  Mat cand(3, 3);
  cand << Rat(1), Rat(1), Rat(0),
          Rat(0), Rat(1), Rat(1),
          Rat(0), Rat(0), Rat(0);
  Mat ext = complementInto(base, cand);
  CHECK(ext.cols() == 1);
  CHECK(spans(base, Mat(cand.col(0))));
}
