#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <homspace/model.hpp>
#include <homspace/zoo.hpp>

using namespace homspace;

namespace {

QMat random_pd_metric(std::mt19937_64& rng, int p) {
  QMat a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Rat e(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3));
      e.canonicalize();
      a.at(i, j) = e;
    }
  return a.transpose() * a + QMat::identity(p);
}

ReductiveModel random_model(std::mt19937_64& rng, const Rat& zz) {
  int d = 1 + static_cast<int>(rng() % 3);
  std::vector<Rat> lambda;
  for (int k = 0; k < d; ++k) lambda.push_back(Rat(1 + static_cast<long>(rng() % 9)));
  int p = static_cast<int>(rng() % 5);
  std::vector<PBracket> pbs;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      int c = static_cast<int>(rng() % 7) - 3;
      if (c != 0) pbs.push_back(PBracket{i, j, {{p, Rat(c)}}});
    }
  QMat gp = p > 0 ? random_pd_metric(rng, p) : QMat::zero(0, 0);
  return build_heisenberg_model(lambda, p, pbs, gp, zz);
}

}  // namespace

TEST_CASE("builder validation") {
  CHECK_THROWS_AS(build_heisenberg_model({Rat(-1)}, 0, {}, QMat::zero(0, 0)), DomainError);
  CHECK_THROWS_AS(build_heisenberg_model({Rat(1)}, 2, {}, QMat::identity(2) * Rat(-1)),
                  SignatureError);
  QMat asym = QMat::from_rows({{Rat(1), Rat(2)}, {Rat(0), Rat(1)}});
  CHECK_THROWS_AS(build_heisenberg_model({Rat(1)}, 2, {}, asym), ShapeError);
  CHECK_THROWS_AS(build_heisenberg_model({Rat(1)}, 0, {}, QMat::zero(0, 0), Rat(0)),
                  SignatureError);
  // p brackets that break Jacobi are rejected at construction
  std::vector<PBracket> bad{PBracket{0, 1, {{0, Rat(1)}}},
                            PBracket{0, 2, {{1, Rat(1)}}},
                            PBracket{1, 2, {{2, Rat(5)}}}};
  CHECK_THROWS_AS(build_heisenberg_model({Rat(1)}, 3, bad, QMat::identity(3)), JacobiError);
}

TEST_CASE("pure-S curvature") {
  ReductiveModel m = build_heisenberg_model({Rat(1)}, 0, {}, QMat::zero(0, 0));
  CurvatureReport cr = ricci_specialized(m);
  CHECK(cr.max_discrepancy == 0);
  CHECK(cr.positivity.lambda_term == Rat(1) / Rat(2));
  CHECK(cr.positivity.bracket_term == 0);
  CHECK(cr.positivity.ricci_tt() == Rat(1) / Rat(2));
  CHECK(cr.positivity.positive);
  CHECK(cr.special);
  CHECK(nomizu_ricci(m).at(0, 0) == Rat(1) / Rat(2));
}

TEST_CASE("central p bracket fixture") {
  // [W1, W2] = Z with the identity p metric
  std::vector<PBracket> pbs{PBracket{0, 1, {{2, Rat(1)}}}};
  ReductiveModel m = build_heisenberg_model({Rat(1)}, 2, pbs, QMat::identity(2));
  int n = 6;  // T Z X1 Y1 W1 W2

  CHECK_FALSE(is_special(m));
  CurvatureReport cr = ricci_specialized(m);
  CHECK(cr.max_discrepancy == 0);
  CHECK_FALSE(cr.special);
  CHECK(cr.positivity.lambda_term == Rat(1) / Rat(2));
  CHECK(cr.positivity.bracket_term == Rat(1) / Rat(2));
  CHECK(cr.positivity.ricci_tt() == Rat(1));
  CHECK(nomizu_ricci(m).at(0, 0) == Rat(1));

  QVec tw1 = vec_add(unit_vec<Rat>(n, 0), unit_vec<Rat>(n, 4));
  QVec v = v_map(m, tw1, tw1);
  QVec expect(n, Rat(0));
  expect[5] = Rat(-1);
  CHECK(v == expect);
}

TEST_CASE("p-valued bracket fixture is special") {
  // [W1, W2] = W2: no Z component, V vanishes, U does not
  std::vector<PBracket> pbs{PBracket{0, 1, {{1, Rat(1)}}}};
  ReductiveModel m = build_heisenberg_model({Rat(1)}, 2, pbs, QMat::identity(2));
  int n = 6;
  CHECK(is_special(m));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      CHECK(vec_is_zero(v_map(m, unit_vec<Rat>(n, i), unit_vec<Rat>(n, j))));

  HomogeneousSpace space(m);
  QVec u = space.u_map(unit_vec<Rat>(n, 5), unit_vec<Rat>(n, 5));
  QVec expect(n, Rat(0));
  expect[4] = Rat(1);
  CHECK(u == expect);  // U(W2, W2) = W1

  // the defining identity of U on the whole basis grid
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QVec a = unit_vec<Rat>(n, i), b = unit_vec<Rat>(n, j);
      QVec uab = space.u_map(a, b);
      for (int k = 0; k < n; ++k) {
        QVec c = unit_vec<Rat>(n, k);
        Rat lhs = Rat(2) * space.inner(uab, c);
        Rat rhs = space.inner(space.bracket_m(c, a), b) + space.inner(a, space.bracket_m(c, b));
        CHECK(lhs == rhs);
      }
    }

  CurvatureReport cr = ricci_specialized(m);
  CHECK(cr.max_discrepancy == 0);
  CHECK(cr.special);
}

TEST_CASE("specialized Ricci matches the Nomizu oracle on random models") {
  std::mt19937_64 rng(0xa11ce);
  std::vector<Rat> zzs{Rat(1), Rat(2), Rat(1) / Rat(3), Rat(7) / Rat(5)};
  for (int trial = 0; trial < 32; ++trial) {
    ReductiveModel m = random_model(rng, zzs[trial % zzs.size()]);
    CurvatureReport cr = ricci_specialized(m);
    CHECK(cr.max_discrepancy == 0);
    CHECK(cr.ricci == cr.ricci_specialized);

    // positivity certificate recomputed from the raw structure constants;
    // the bracket term lives in an orthonormal frame of p, so the sum of
    // squared Z-coefficients becomes tr(C G^-1 C^T G^-1) for the Gram matrix G
    Rat lt(0);
    for (const Rat& l : m.lambda) lt += l * l;
    lt /= 2;
    Rat bt(0);
    int sd = m.s_dim();
    if (m.p_dim > 0) {
      QMat cmat(m.p_dim, m.p_dim), gram(m.p_dim, m.p_dim);
      for (int i = 0; i < m.p_dim; ++i)
        for (int j = 0; j < m.p_dim; ++j) {
          cmat.at(i, j) = m.g.sc(sd + i, sd + j, 1);
          gram.at(i, j) = m.metric.at(sd + i, sd + j);
        }
      QMat ginv = *inverse(gram);
      QMat prod = cmat * ginv * cmat.transpose() * ginv;
      for (int i = 0; i < m.p_dim; ++i) bt += prod.at(i, i);
      bt /= 4;
    }
    CHECK(cr.positivity.lambda_term == lt);
    CHECK(cr.positivity.bracket_term == bt);
    CHECK(cr.positivity.ricci_tt() == lt + bt);
    CHECK(cr.positivity.positive);
    CHECK(cr.positivity.lambda_term >= Rat(1) / Rat(2));
    CHECK(nomizu_ricci(m).at(0, 0) == lt + bt);
  }
}

TEST_CASE("bi-invariant metric on sl2") {
  LieAlgebra g = make_sl2();
  QMat kappa = killing_form(g);
  ReductiveModel m =
      make_reductive_model(g, Subspace::zero(3), Subspace::full(3), kappa);
  QMat ric = nomizu_ricci(m);
  CHECK(ric == kappa * (Rat(-1) / Rat(4)));
  CHECK_THROWS_AS(ricci_specialized(m), DomainError);
  CHECK_THROWS_AS(v_map(m, unit_vec<Rat>(3, 0), unit_vec<Rat>(3, 0)), DomainError);
}

TEST_CASE("reductive complement under the Killing form") {
  // so3 with a one-dimensional isotropy: complement is the Killing-orthogonal
  LieAlgebra g = make_so3();
  Subspace h = span_vecs(3, {unit_vec<Rat>(3, 0)});
  Subspace m = reductive_complement(g, h, killing_form(g));
  CHECK(m.dim() == 2);
  CHECK(subspace_intersect(m, h).dim() == 0);
  Subspace hm = bracket_span(g, h, m);
  CHECK(m.contains(hm));
}
