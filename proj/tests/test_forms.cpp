#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <homspace/forms.hpp>
#include <homspace/zoo.hpp>

using namespace homspace;

namespace {
Rat pair_norm(const QMat& b, const QVec& u, const QVec& v) {
  Rat acc(0);
  QVec bv = b * v;
  for (size_t i = 0; i < u.size(); ++i) acc += u[i] * bv[i];
  return acc;
}
}  // namespace

TEST_CASE("standard form is ad-invariant on twisted Heisenberg") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> entry(1, 9);
  for (int d = 1; d <= 4; ++d) {
    Lambda l;
    for (int k = 0; k < d; ++k) l.push_back(Int(entry(rng)));
    LieAlgebra g = make_twisted_heisenberg(l);
    QMat b = standard_lorentz_form(d);
    CHECK(ad_invariance_residual(g, b) == 0);
    QMat tampered = b;
    tampered.at(2, 2) = Rat(2);  // breaks the X1/Y1 balance
    CHECK_FALSE(ad_invariance_residual(g, tampered) == 0);
  }
}

TEST_CASE("invariant form space has dimension exactly 2") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> entry(1, 9);
  for (int d = 1; d <= 4; ++d) {
    // distinct lambda
    Lambda l;
    for (int k = 0; k < d; ++k) l.push_back(Int(2 * k + 1 + entry(rng) % 2));
    CHECK(invariant_form_space(make_twisted_heisenberg(lambda_canonicalize(l))).size() == 2);
    // fully repeated lambda
    Lambda rep(d, Int(3));
    CHECK(invariant_form_space(make_twisted_heisenberg(rep)).size() == 2);
  }
}

TEST_CASE("nilradical invariance forces full invariance") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> entry(1, 9), coef(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    Lambda l;
    for (int k = 0; k < d; ++k) l.push_back(Int(entry(rng)));
    LieAlgebra g = make_twisted_heisenberg(l);
    Subspace nil = derived(g);
    auto basis = invariant_form_space(g, nil);
    REQUIRE_FALSE(basis.empty());
    QMat b = QMat::zero(g.n, g.n);
    bool nonzero = false;
    for (const QMat& m : basis) {
      int c = coef(rng);
      if (c != 0) nonzero = true;
      b = b + m * Rat(c);
    }
    if (!nonzero) b = basis[0];
    REQUIRE(ad_invariance_residual(g, b, nil) == 0);
    InvarianceEquivalenceReport eq = verify_invariance_equivalence(g, b);
    CHECK(eq.full_residual == 0);
    CHECK(eq.equivalent);
  }
}

TEST_CASE("condition star fixtures") {
  LieAlgebra g = make_twisted_heisenberg(Lambda{Int(1)});  // T, Z, X1, Y1
  QMat b = standard_lorentz_form(1);
  int n = 4;
  QVec t = unit_vec<Rat>(n, 0), z = unit_vec<Rat>(n, 1), x1 = unit_vec<Rat>(n, 2);

  CHECK(check_condition_star(b, span_vecs(n, {z})).passes());
  CHECK(check_condition_star(b, span_vecs(n, {z, x1})).passes());
  CHECK(check_condition_star(b, span_vecs(n, {})).passes());
  CHECK(check_condition_star(b, Subspace::full(n)).passes() == false);

  StarReport tz = check_condition_star(b, span_vecs(n, {t, z}));
  CHECK_FALSE(tz.passes());
  REQUIRE(tz.witness.has_value());
  CHECK(tz.witness_norm < 0);
  CHECK(pair_norm(b, *tz.witness, *tz.witness) == tz.witness_norm);
  CHECK(span_vecs(n, {t, z}).contains(*tz.witness));

  StarReport tmz = check_condition_star(b, span_vecs(n, {vec_sub(t, z)}));
  CHECK_FALSE(tmz.passes());
  REQUIRE(tmz.witness.has_value());
  CHECK(tmz.witness_norm < 0);
  CHECK(pair_norm(b, *tmz.witness, *tmz.witness) == tmz.witness_norm);
  CHECK(span_vecs(n, {vec_sub(t, z)}).contains(*tmz.witness));

  // psd but with a two-dimensional kernel still fails
  QMat deg = QMat::zero(3, 3);
  deg.at(0, 0) = Rat(1);
  StarReport two_kernel = check_condition_star(deg, Subspace::full(3));
  CHECK(two_kernel.psd);
  CHECK(two_kernel.kernel_dim == 2);
  CHECK_FALSE(two_kernel.passes());
}

TEST_CASE("normal form of invariant Lorentz forms") {
  LieAlgebra g = make_twisted_heisenberg(Lambda{Int(1)});
  QMat std1 = standard_lorentz_form(1);

  // already standard: mu = 1, nu = 0, rational scaling
  LorentzNormalForm nf = lorentz_normal_form(g, std1);
  CHECK(nf.mu == 1);
  CHECK(nf.nu == 0);
  CHECK(nf.c_squared == 1);
  CHECK(nf.c_rational);
  CHECK(normal_form_verifies(g, std1, nf));

  // nu = 3 shifts T by -(3/2) Z and keeps mu
  QMat shifted = std1;
  shifted.at(0, 0) = Rat(3);
  REQUIRE(ad_invariance_residual(g, shifted) == 0);
  LorentzNormalForm nf2 = lorentz_normal_form(g, shifted);
  CHECK(nf2.nu == 3);
  CHECK(nf2.mu == 1);
  CHECK(normal_form_verifies(g, shifted, nf2));
  CHECK(nf2.automorphism.at(1, 0).a == Rat(-3) / Rat(2));

  // doubled form: c^2 = 1/2 leaves Q, the automorphism lives in Q(sqrt(2))
  QMat doubled = std1 * Rat(2);
  LorentzNormalForm nf3 = lorentz_normal_form(g, doubled);
  CHECK(nf3.mu == 2);
  CHECK(nf3.c_squared == Rat(1) / Rat(2));
  CHECK_FALSE(nf3.c_rational);
  CHECK(normal_form_verifies(g, doubled, nf3));

  // random invariant Lorentz combinations normalize and verify
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> entry(1, 9), coef(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    Lambda l;
    for (int k = 0; k < d; ++k) l.push_back(Int(entry(rng)));
    LieAlgebra gt = make_twisted_heisenberg(l);
    auto basis = invariant_form_space(gt);
    REQUIRE(basis.size() == 2);
    QMat b(gt.n, gt.n);
    Signature sig;
    do {
      b = basis[0] * Rat(1 + rng() % 7) + basis[1] * Rat(coef(rng));
      sig = congruence_signature(b);
    } while (!sig.is_lorentzian());
    LorentzNormalForm nfr = lorentz_normal_form(gt, b);
    CHECK(normal_form_verifies(gt, b, nfr));
    CHECK(nfr.mu > 0);
  }
}

TEST_CASE("imaginary semisimple directions") {
  LieAlgebra g = make_twisted_heisenberg(Lambda{Int(1), Int(3)});
  CHECK(imaginary_semisimple_direction(g, unit_vec<Rat>(6, 0)));  // T: rotation spectrum
  CHECK(imaginary_semisimple_direction(g, unit_vec<Rat>(6, 1)));  // Z: ad = 0, trivially so
  CHECK_FALSE(imaginary_semisimple_direction(g, unit_vec<Rat>(6, 2)));  // X1 nilpotent

  LieAlgebra sl2 = make_sl2();
  CHECK_FALSE(imaginary_semisimple_direction(sl2, unit_vec<Rat>(3, 2)));  // h: real spectrum

  LieAlgebra k = make_so3();
  CHECK(imaginary_semisimple_direction(k, unit_vec<Rat>(3, 0)));
}
