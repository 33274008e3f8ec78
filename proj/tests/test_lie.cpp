#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homspace/lie.hpp>
#include <homspace/zoo.hpp>

using namespace homspace;

namespace {
// [h,e] = 3e instead of 2e: antisymmetric but Jacobi fails
std::vector<Rat> broken_sl2_tensor() {
  std::vector<Rat> t = detail::zero_tensor(3);
  detail::set_bracket(t, 3, 0, 1, 2, Rat(1));   // [e,f] = h
  detail::set_bracket(t, 3, 2, 0, 0, Rat(3));   // [h,e] = 3e
  detail::set_bracket(t, 3, 2, 1, 1, Rat(-2));  // [h,f] = -2f
  return t;
}
}  // namespace

TEST_CASE("construction validates the Jacobi identity") {
  CHECK_THROWS_AS(LieAlgebra::make(3, {"e", "f", "h"}, broken_sl2_tensor()), JacobiError);
  LieAlgebra raw = LieAlgebra::make_unchecked(3, {"e", "f", "h"}, broken_sl2_tensor());
  JacobiReport rep = raw.verify_jacobi();
  CHECK(rep.antisymmetric);
  CHECK_FALSE(rep.residual == 0);
  CHECK_FALSE(rep.ok());
  CHECK(make_sl2().verify_jacobi().ok());
}

TEST_CASE("bracket evaluation") {
  LieAlgebra g = make_sl2();  // e, f, h
  QVec h = g.bracket(unit_vec<Rat>(3, 0), unit_vec<Rat>(3, 1));
  CHECK(h == QVec{Rat(0), Rat(0), Rat(1)});
  QVec two_e = g.bracket(unit_vec<Rat>(3, 2), unit_vec<Rat>(3, 0));
  CHECK(two_e == QVec{Rat(2), Rat(0), Rat(0)});
}

TEST_CASE("center, derived, nilpotency") {
  LieAlgebra he = make_heisenberg(1);  // Z, X1, Y1
  Subspace zc = center(he);
  Subspace der = derived(he);
  CHECK(zc.dim() == 1);
  CHECK(der.dim() == 1);
  CHECK(zc.contains(unit_vec<Rat>(3, 0)));
  CHECK(der == zc);
  CHECK(is_nilpotent(he));
  CHECK_FALSE(is_abelian(he));

  LieAlgebra sl2 = make_sl2();
  CHECK(center(sl2).dim() == 0);
  CHECK(derived(sl2).dim() == 3);
  CHECK_FALSE(is_nilpotent(sl2));

  CHECK(is_abelian(make_abelian(4)));
  auto lcs = lower_central_series(he);
  CHECK(lcs.back().dim() == 0);
}

TEST_CASE("Killing forms of the basic algebras") {
  QMat b = killing_form(make_sl2());
  QMat expect = QMat::from_rows({{Rat(0), Rat(4), Rat(0)},
                                 {Rat(4), Rat(0), Rat(0)},
                                 {Rat(0), Rat(0), Rat(8)}});
  CHECK(b == expect);

  QMat ba = killing_form(make_aff());
  CHECK(ba == QMat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(0)}}));

  CHECK(killing_form(make_so3()) == QMat::identity(3) * Rat(-2));
  CHECK(killing_form(make_heisenberg(3)).is_zero());
}

TEST_CASE("centralizer and ideals") {
  LieAlgebra he = make_heisenberg(1);
  CHECK(centralizer(he, span_vecs(3, {unit_vec<Rat>(3, 0)})).dim() == 3);
  Subspace cx = centralizer(he, span_vecs(3, {unit_vec<Rat>(3, 1)}));
  CHECK(cx.dim() == 2);
  CHECK(is_ideal(he, derived(he)));
  CHECK_FALSE(is_ideal(he, span_vecs(3, {unit_vec<Rat>(3, 1)})));
}

TEST_CASE("change of basis preserves structure") {
  LieAlgebra g = make_sl2();
  QMat p = QMat::from_rows({{Rat(1), Rat(1), Rat(0)},
                            {Rat(0), Rat(1), Rat(2)},
                            {Rat(1), Rat(0), Rat(1)}});
  LieAlgebra g2 = change_basis(g, p);
  // p maps g2 coordinates to g coordinates as a homomorphism
  CHECK(bracket_residual(g2, g, p) == 0);
  CHECK(g2.verify_jacobi().ok());

  QMat sing = QMat::from_rows({{Rat(1), Rat(2), Rat(0)},
                               {Rat(2), Rat(4), Rat(0)},
                               {Rat(0), Rat(0), Rat(1)}});
  CHECK_THROWS_AS(change_basis(g, sing), SingularError);
}

TEST_CASE("direct sums") {
  LieAlgebra s = direct_sum({make_sl2(), make_heisenberg(1)});
  CHECK(s.n == 6);
  CHECK(s.verify_jacobi().ok());
  // cross brackets vanish
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) CHECK(vec_is_zero(s.bracket(unit_vec<Rat>(6, i), unit_vec<Rat>(6, j))));
  CHECK(derived(s).dim() == 4);
}

TEST_CASE("restriction to a subalgebra") {
  LieAlgebra he = make_heisenberg(2);
  LieAlgebra z = restrict_to_subalgebra(he, derived(he));
  CHECK(z.n == 1);
  CHECK(is_abelian(z));
}

TEST_CASE("bracket residual detects non-homomorphisms") {
  LieAlgebra he = make_heisenberg(1);
  CHECK(bracket_residual(he, he, QMat::identity(3)) == 0);
  CHECK_FALSE(bracket_residual(he, he, QMat::identity(3) * Rat(2)) == 0);
}
