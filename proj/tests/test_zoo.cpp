#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <homspace/lie.hpp>
#include <homspace/zoo.hpp>

using namespace homspace;

TEST_CASE("every constructor satisfies Jacobi exactly") {
  CHECK(make_sl2().verify_jacobi().ok());
  CHECK(make_aff().verify_jacobi().ok());
  CHECK(make_so3().verify_jacobi().ok());
  for (int n = 0; n <= 4; ++n) CHECK(make_abelian(n).verify_jacobi().ok());
  for (int d = 1; d <= 4; ++d) CHECK(make_heisenberg(d).verify_jacobi().ok());
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(1, 9), dd(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    Lambda l;
    int d = dd(rng);
    for (int k = 0; k < d; ++k) l.push_back(Int(entry(rng)));
    CHECK(make_twisted_heisenberg(l).verify_jacobi().ok());
  }
}

TEST_CASE("bracket tables") {
  LieAlgebra g = make_twisted_heisenberg(Lambda{Int(2), Int(5)});
  // order: T, Z, X1, Y1, X2, Y2
  CHECK(g.sc(2, 3, 1) == Rat(2));   // [X1,Y1] = 2Z
  CHECK(g.sc(4, 5, 1) == Rat(5));   // [X2,Y2] = 5Z
  CHECK(g.sc(0, 2, 3) == Rat(2));   // [T,X1] = 2Y1
  CHECK(g.sc(0, 3, 2) == Rat(-2));  // [T,Y1] = -2X1
  CHECK(g.sc(0, 4, 5) == Rat(5));
  CHECK(g.sc(0, 5, 4) == Rat(-5));
  CHECK(g.sc(2, 5, 1) == Rat(0));   // no cross pair terms
  CHECK(g.labels == std::vector<std::string>{"T", "Z", "X1", "Y1", "X2", "Y2"});

  LieAlgebra he = make_heisenberg(2);
  CHECK(he.labels == std::vector<std::string>{"Z", "X1", "Y1", "X2", "Y2"});
  CHECK(he.sc(1, 2, 0) == Rat(1));
  CHECK(he.sc(3, 4, 0) == Rat(1));
  CHECK(he.sc(1, 4, 0) == Rat(0));

  LieAlgebra aff = make_aff();
  CHECK(aff.sc(0, 1, 1) == Rat(1));  // [X,Y] = Y
}

TEST_CASE("lambda canonicalization") {
  CHECK(lambda_canonicalize(Lambda{Int(2), Int(4)}) == Lambda{Int(1), Int(2)});
  CHECK(lambda_canonicalize(Lambda{Int(4), Int(2)}) == Lambda{Int(1), Int(2)});
  CHECK(lambda_canonicalize(Lambda{Int(6), Int(2), Int(4)}) == (Lambda{Int(1), Int(2), Int(3)}));
  CHECK(lambda_canonicalize(std::vector<Rat>{Rat(2) / Rat(3), Rat(4) / Rat(3)}) ==
        (Lambda{Int(1), Int(2)}));
  CHECK(lambda_canonicalize(std::vector<Rat>{Rat(1) / Rat(2), Rat(1) / Rat(3)}) ==
        (Lambda{Int(2), Int(3)}));
  CHECK(lambda_canonicalize(Lambda{Int(7)}) == Lambda{Int(1)});
}

TEST_CASE("lambda equivalence is scale and permutation invariance") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(1, 12), dd(1, 4), scale(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    int d = dd(rng);
    std::vector<Rat> a;
    for (int k = 0; k < d; ++k) a.push_back(Rat(entry(rng)));
    std::vector<Rat> b = a;
    std::shuffle(b.begin(), b.end(), rng);
    Rat c(scale(rng), scale(rng));
    c.canonicalize();
    for (Rat& x : b) x = x * c;
    CHECK(lambda_equivalent(a, b));
  }
  CHECK_FALSE(lambda_equivalent({Rat(1), Rat(2)}, {Rat(1), Rat(3)}));
  CHECK_FALSE(lambda_equivalent({Rat(1)}, {Rat(1), Rat(1)}));
  CHECK(lambda_equivalent({Rat(2), Rat(4)}, {Rat(3), Rat(6)}));
}

TEST_CASE("name parser") {
  CHECK(algebra_from_name("sl2").n == 3);
  CHECK(algebra_from_name("aff").n == 2);
  CHECK(algebra_from_name("so3").n == 3);
  CHECK(algebra_from_name("abelian(3)").n == 3);
  CHECK(algebra_from_name("he(2)").n == 5);
  LieAlgebra g = algebra_from_name("heL(1,2)");
  CHECK(g.n == 6);
  CHECK(g.sc(4, 5, 1) == Rat(2));
  CHECK(algebra_from_name("heL(3/2)").sc(2, 3, 1) == Rat(3) / Rat(2));
  LieAlgebra s = algebra_from_name("sl2+he(1)+abelian(2)");
  CHECK(s.n == 8);
  CHECK(s.verify_jacobi().ok());
  CHECK_THROWS_AS(algebra_from_name("sp4"), ParseError);
  CHECK_THROWS_AS(algebra_from_name("heL()"), ParseError);
  CHECK_THROWS_AS(algebra_from_name(""), ParseError);
}

TEST_CASE("standard Lorentz form") {
  for (int d = 1; d <= 4; ++d) {
    QMat b = standard_lorentz_form(d);
    int n = 2 * d + 2;
    REQUIRE(b.rows == n);
    CHECK(b.is_symmetric());
    CHECK(b.at(0, 1) == Rat(1));
    CHECK(b.at(0, 0) == Rat(0));
    CHECK(b.at(1, 1) == Rat(0));
    for (int i = 2; i < n; ++i) CHECK(b.at(i, i) == Rat(1));
    Signature sig = congruence_signature(b);
    CHECK(sig.positive == 2 * d + 1);
    CHECK(sig.negative == 1);
    CHECK(sig.zero == 0);
  }
}
