#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homspace/linalg.hpp>

using namespace homspace;

TEST_CASE("matrix basics") {
  QMat m = QMat::from_rows({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}});
  CHECK(QMat::identity(2) * m == m);
  CHECK(m.transpose().at(0, 1) == Rat(3));
  CHECK((m * Rat(2)).at(1, 1) == Rat(8));
  QVec v{Rat(1), Rat(1)};
  QVec mv = m * v;
  CHECK(mv[0] == Rat(3));
  CHECK(mv[1] == Rat(7));
  CHECK(m.col(1) == QVec{Rat(2), Rat(4)});
  CHECK_FALSE(m.is_symmetric());
  CHECK((m + m.transpose()).is_symmetric());
  CHECK_THROWS_AS(m * QVec{Rat(1)}, ShapeError);
}

TEST_CASE("solve and kernel") {
  QMat a = QMat::from_rows({{Rat(1), Rat(2), Rat(1)}, {Rat(0), Rat(1), Rat(1)}});
  QMat b = QMat::column({Rat(4), Rat(2)});
  auto res = solve(a, b);
  REQUIRE(res.solvable);
  CHECK(res.kernel.cols == 1);
  QVec x = res.particular.col(0);
  QVec ax = a * x;
  CHECK(ax[0] == Rat(4));
  CHECK(ax[1] == Rat(2));
  QVec k = res.kernel.col(0);
  QVec ak = a * k;
  CHECK(ak[0] == Rat(0));
  CHECK(ak[1] == Rat(0));

  QMat bad = QMat::from_rows({{Rat(1), Rat(1)}, {Rat(1), Rat(1)}});
  auto none = solve(bad, QMat::column({Rat(0), Rat(1)}));
  CHECK_FALSE(none.solvable);
}

TEST_CASE("inverse") {
  QMat m = QMat::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(1)}});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == QMat::identity(2));
  QMat sing = QMat::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
  CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("nullspace") {
  QMat m = QMat::from_rows({{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}});
  QMat k = nullspace(m);
  CHECK(k.cols == 2);
  for (int j = 0; j < k.cols; ++j) {
    QVec img = m * k.col(j);
    for (const Rat& e : img) CHECK(e == 0);
  }
}

TEST_CASE("characteristic polynomial is monic with ascending coefficients") {
  QMat m = QMat::from_rows({{Rat(2), Rat(1)}, {Rat(0), Rat(3)}});
  std::vector<Rat> cp = char_poly(m);
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == Rat(6));
  CHECK(cp[1] == Rat(-5));
  CHECK(cp[2] == Rat(1));
}

TEST_CASE("congruence signature and diagonalizing basis") {
  QMat lor = QMat::from_rows({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  QMat p;
  QVec diag;
  Signature sig = congruence_signature(lor, &p, &diag);
  CHECK(sig.positive == 1);
  CHECK(sig.negative == 1);
  CHECK(sig.zero == 0);
  CHECK(sig.is_lorentzian());
  // columns of p diagonalize: p^T lor p has the reported diagonal
  QMat dm = p.transpose() * lor * p;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(dm.at(i, j) == (i == j ? diag[i] : Rat(0)));

  QMat deg = QMat::from_rows({{Rat(1), Rat(0), Rat(0)},
                              {Rat(0), Rat(-2), Rat(0)},
                              {Rat(0), Rat(0), Rat(0)}});
  Signature s2 = congruence_signature(deg);
  CHECK(s2.positive == 1);
  CHECK(s2.negative == 1);
  CHECK(s2.zero == 1);
  CHECK_FALSE(s2.is_positive_definite());
}

TEST_CASE("subspaces") {
  QMat gens = QMat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
  Subspace s = span_cols(gens);
  CHECK(s.dim() == 2);
  CHECK(s.contains(QVec{Rat(2), Rat(3), Rat(5)}));
  CHECK_FALSE(s.contains(QVec{Rat(0), Rat(0), Rat(1)}));

  Subspace x = span_vecs(3, {QVec{Rat(1), Rat(0), Rat(0)}});
  Subspace y = span_vecs(3, {QVec{Rat(0), Rat(1), Rat(0)}});
  CHECK(subspace_sum(x, y).dim() == 2);
  CHECK(subspace_intersect(x, y).dim() == 0);
  Subspace xz = span_vecs(3, {QVec{Rat(1), Rat(0), Rat(0)}, QVec{Rat(0), Rat(0), Rat(1)}});
  Subspace cut = subspace_intersect(s, xz);
  CHECK(cut.dim() == 1);
  CHECK(cut.contains(QVec{Rat(1), Rat(0), Rat(1)}));
  CHECK(Subspace::zero(3).dim() == 0);
  CHECK(Subspace::full(3).dim() == 3);
  CHECK(span_vecs(3, {}).dim() == 0);
  Subspace same = span_vecs(3, {QVec{Rat(1), Rat(1), Rat(2)}, QVec{Rat(2), Rat(2), Rat(4)}});
  CHECK(same.dim() == 1);
}

TEST_CASE("vector helpers") {
  QVec a{Rat(1), Rat(2)}, b{Rat(3), Rat(5)};
  CHECK(vec_add(a, b) == QVec{Rat(4), Rat(7)});
  CHECK(vec_sub(b, a) == QVec{Rat(2), Rat(3)});
  CHECK(vec_scale(Rat(1) / Rat(2), a) == QVec{Rat(1) / Rat(2), Rat(1)});
  CHECK(unit_vec<Rat>(3, 1) == QVec{Rat(0), Rat(1), Rat(0)});
  CHECK(vec_is_zero(QVec{Rat(0), Rat(0)}));
  CHECK_FALSE(vec_is_zero(QVec{Rat(0), Rat(1)}));
}
