#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <homspace/poly.hpp>

using namespace homspace;

TEST_CASE("division and gcd") {
  // (x^2 - 1) = (x - 1)(x + 1)
  Poly p({Rat(-1), Rat(0), Rat(1)});
  Poly q({Rat(-1), Rat(1)});
  auto [quo, rem] = poly_divmod(p, q);
  CHECK(rem.is_zero());
  CHECK(quo.c == std::vector<Rat>{Rat(1), Rat(1)});
  Poly g = poly_gcd(p, q);
  CHECK(g.degree() == 1);
}

TEST_CASE("real root isolation") {
  // (x^2 - 2)(x - 3): two irrational roots and one rational root
  Poly p({Rat(6), Rat(-2), Rat(-3), Rat(1)});
  auto roots = real_roots(p);
  REQUIRE(roots.size() == 3);
  // enclosures are sorted and disjoint; the middle interval brackets sqrt(2)
  CHECK(roots[0].lo < roots[0].hi);
  CHECK(roots[1].lo <= Rat(3) / Rat(2));
  CHECK(roots[1].hi >= Rat(7) / Rat(5));
  CHECK(roots[2].lo <= Rat(3));
  CHECK(roots[2].hi >= Rat(3));
}

TEST_CASE("rational roots with multiplicity") {
  // (x - 1)^2 (x + 2)
  Poly p({Rat(2), Rat(-3), Rat(0), Rat(1)});
  auto roots = rational_roots(p);
  REQUIRE(roots.size() == 2);
  bool saw_one = false, saw_neg2 = false;
  for (const auto& [r, mult] : roots) {
    if (r == Rat(1)) {
      saw_one = true;
      CHECK(mult == 2);
    }
    if (r == Rat(-2)) {
      saw_neg2 = true;
      CHECK(mult == 1);
    }
  }
  CHECK(saw_one);
  CHECK(saw_neg2);

  // x^2 - 2 has no rational roots
  CHECK(rational_roots(Poly({Rat(-2), Rat(0), Rat(1)})).empty());
}

TEST_CASE("continued fraction rationalization") {
  CHECK(continued_fraction_approx(2.25, 1000) == Rat(9) / Rat(4));
  CHECK(continued_fraction_approx(0.6, 1000) == Rat(3) / Rat(5));
  CHECK(continued_fraction_approx(1.0 / 3.0, 1000000) == Rat(1) / Rat(3));
  CHECK(continued_fraction_approx(-1.5, 1000) == Rat(-3) / Rat(2));
  Rat near_sqrt2 = continued_fraction_approx(1.4142135623730951, 1000000);
  double err = rat_double(near_sqrt2) - 1.4142135623730951;
  CHECK(err < 1e-9);
  CHECK(err > -1e-9);
}

TEST_CASE("minimal polynomial") {
  CHECK(minimal_polynomial(QMat::identity(3)).c == std::vector<Rat>{Rat(-1), Rat(1)});
  QMat nil = QMat::from_rows({{Rat(0), Rat(1)}, {Rat(0), Rat(0)}});
  CHECK(minimal_polynomial(nil).c == std::vector<Rat>{Rat(0), Rat(0), Rat(1)});
}

TEST_CASE("skew spectrum of a rotation block sum") {
  QMat m = QMat::zero(4, 4);
  m.at(0, 1) = Rat(-1);
  m.at(1, 0) = Rat(1);
  m.at(2, 3) = Rat(-3);
  m.at(3, 2) = Rat(3);
  auto spec = skew_spectrum(m);
  REQUIRE(spec.size() == 4);  // conjugate pairs come back as two entries each
  std::vector<double> pos;
  for (const auto& ev : spec) {
    CHECK(ev.re == doctest::Approx(0.0));
    if (ev.im > 0) pos.push_back(ev.im);
  }
  std::sort(pos.begin(), pos.end());
  REQUIRE(pos.size() == 2);
  CHECK(pos[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pos[1] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("square detection in Q") {
  Rat root;
  CHECK(rat_is_square(Rat(9) / Rat(4), &root));
  CHECK(root == Rat(3) / Rat(2));
  CHECK(rat_is_square(Rat(0)));
  CHECK_FALSE(rat_is_square(Rat(2)));
  CHECK_FALSE(rat_is_square(Rat(-4)));
}
