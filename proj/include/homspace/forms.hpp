// Symmetric bilinear forms on Lie algebras: invariance residuals, the
// semidefiniteness test on subspaces, the two-parameter normal form for
// invariant Lorentz forms on twisted Heisenberg algebras, and the
// nilradical-vs-full invariance comparison.
#pragma once

#include <optional>
#include <vector>

#include "lie.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "quadext.hpp"
#include "rational.hpp"
#include "zoo.hpp"

namespace homspace {

struct SymmetricBilinearForm {
  QMat matrix;
  Signature signature;

  static SymmetricBilinearForm make(const LieAlgebra& g, QMat m) {
    if (m.rows != g.n || m.cols != g.n) throw ShapeError("form: size mismatch with algebra");
    if (!m.is_symmetric()) throw ShapeError("form: matrix not symmetric");
    SymmetricBilinearForm f;
    f.signature = congruence_signature(m);
    f.matrix = std::move(m);
    return f;
  }
};

// max |b([x, e_j], e_k) + b(e_j, [x, e_k])| over x in the generator columns;
// as matrices, the residual for generator x is ad(x)^T b + b ad(x).
inline Rat ad_invariance_residual(const LieAlgebra& g, const QMat& b, const Subspace& generators) {
  if (b.rows != g.n || b.cols != g.n) throw ShapeError("residual: form size mismatch");
  Rat worst(0);
  for (int c = 0; c < generators.basis.cols; ++c) {
    QMat a = g.ad(generators.basis.col(c));
    QMat r = a.transpose() * b + b * a;
    for (const Rat& v : r.a) {
      Rat av = rat_abs(v);
      if (av > worst) worst = av;
    }
  }
  return worst;
}

inline Rat ad_invariance_residual(const LieAlgebra& g, const QMat& b) {
  return ad_invariance_residual(g, b, Subspace::full(g.n));
}

// Basis of the space of symmetric forms with zero residual over the given
// generator set, solved as one linear system in the n(n+1)/2 upper entries.
inline std::vector<QMat> invariant_form_space(const LieAlgebra& g, const Subspace& generators) {
  int n = g.n;
  int unknowns = n * (n + 1) / 2;
  auto sym_index = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
  };
  std::vector<QMat> ads;
  for (int c = 0; c < generators.basis.cols; ++c) ads.push_back(g.ad(generators.basis.col(c)));
  QMat sys(static_cast<int>(ads.size()) * unknowns, unknowns);
  int row = 0;
  for (const QMat& a : ads) {
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        // residual(j, k) = sum_p a[p][j] b[p][k] + sum_q a[q][k] b[j][q]
        for (int p = 0; p < n; ++p) {
          if (!(a.at(p, j) == 0)) sys.at(row, sym_index(p, k)) += a.at(p, j);
          if (!(a.at(p, k) == 0)) sys.at(row, sym_index(j, p)) += a.at(p, k);
        }
        ++row;
      }
  }
  QMat ker = nullspace(sys);
  std::vector<QMat> basis;
  for (int c = 0; c < ker.cols; ++c) {
    QMat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        b.at(i, j) = ker.at(sym_index(i, j), c);
        b.at(j, i) = b.at(i, j);
      }
    basis.push_back(b);
  }
  return basis;
}

inline std::vector<QMat> invariant_form_space(const LieAlgebra& g) {
  return invariant_form_space(g, Subspace::full(g.n));
}

// Restriction of b to a subspace must be positive semidefinite with kernel of
// dimension at most one; on failure a witness vector (negative norm, or a
// second kernel direction) is extracted from the congruence transform.
struct StarReport {
  bool psd = false;
  int kernel_dim = 0;
  std::optional<QVec> witness;  // ambient coordinates
  Rat witness_norm;             // b(w, w) for the witness
  bool passes() const { return psd && kernel_dim <= 1; }
};

inline StarReport check_condition_star(const QMat& b, const Subspace& v) {
  if (b.rows != v.ambient || b.cols != v.ambient)
    throw ShapeError("condition check: form/subspace ambient mismatch");
  StarReport rep;
  int k = v.dim();
  if (k == 0) {
    rep.psd = true;
    return rep;
  }
  QMat gram(k, k);
  QMat bv = b * v.basis;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat acc(0);
      for (int r = 0; r < v.ambient; ++r) acc += v.basis.at(r, i) * bv.at(r, j);
      gram.at(i, j) = acc;
    }
  QMat p;
  QVec diag;
  Signature sig = congruence_signature(gram, &p, &diag);
  rep.psd = sig.negative == 0;
  rep.kernel_dim = sig.zero;
  auto ambient_witness = [&](int col) { return v.basis * p.col(col); };
  if (!rep.psd) {
    for (int i = 0; i < k; ++i)
      if (diag[i] < 0) {
        rep.witness = ambient_witness(i);
        rep.witness_norm = diag[i];
        break;
      }
  } else if (rep.kernel_dim > 1) {
    for (int i = 0; i < k; ++i)
      if (diag[i] == 0) {
        rep.witness = ambient_witness(i);
        rep.witness_norm = Rat(0);
        break;
      }
  }
  return rep;
}

// Necessary (not sufficient) condition for a direction to generate a
// precompact one-parameter group: ad(u) semisimple with purely imaginary
// spectrum.  Exact: minimal polynomial square-free, of the shape
// x^e * q(-x^2) with e <= 1 and q having only nonnegative real roots.
inline bool imaginary_semisimple_direction(const LieAlgebra& g, const QVec& u) {
  QMat a = g.ad(u);
  Poly m = minimal_polynomial(a);
  if (!(poly_gcd(m, m.derivative()).degree() == 0)) return false;  // not semisimple
  int zeros = 0;
  while (!m.is_zero() && m.c[0] == 0) {
    m.c.erase(m.c.begin());
    ++zeros;
  }
  if (zeros > 1) return false;
  if (m.degree() <= 0) return true;
  for (size_t i = 1; i < m.c.size(); i += 2)
    if (!(m.c[i] == 0)) return false;  // odd terms: real nonzero eigenvalue present
  // m(x) = q(y) at y = -x^2; eigenvalues are +/- i sqrt(y) over the roots of
  // q, purely imaginary exactly when all roots of q are real and positive.
  std::vector<Rat> qc;
  for (size_t i = 0; i < m.c.size(); i += 2) {
    Rat v = m.c[i];
    if ((i / 2) % 2 == 1) v = -v;
    qc.push_back(v);
  }
  Poly q(std::move(qc));
  std::vector<Poly> chain = sturm_chain(q);
  Rat bound = cauchy_root_bound(q);
  if (sturm_count(chain, -bound, Rat(0)) > 0) return false;       // negative root
  return sturm_count(chain, Rat(0), bound) == q.degree();         // all roots real
}

// --- normal form of invariant Lorentz forms on twisted Heisenberg ----------

struct LorentzNormalForm {
  Rat mu;                    // b(T, Z) = common X/Y norm
  Rat nu;                    // b(T, T)
  Rat c_squared;             // 1/mu, the central scaling factor
  bool c_rational = false;   // whether sqrt(1/mu) stayed in Q
  Mat<QuadExt> automorphism; // L with b(Lx, Ly) = standard form
};

namespace detail {
// Pull the lambda tuple back out of a twisted Heisenberg algebra in the
// standard basis T, Z, X1, Y1, ...
inline std::vector<Rat> twisted_lambda_of(const LieAlgebra& s) {
  if (s.n < 4 || s.n % 2 != 0) throw DomainError("not a twisted Heisenberg basis");
  int d = (s.n - 2) / 2;
  std::vector<Rat> lambda;
  for (int k = 0; k < d; ++k) lambda.push_back(s.sc(2 + 2 * k, 3 + 2 * k, 1));
  return lambda;
}
}  // namespace detail

inline Mat<QuadExt> quad_lift(const QMat& m, const Rat& radicand) {
  Mat<QuadExt> out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = QuadExt(m.at(i, j), Rat(0), radicand);
  return out;
}

// max norm of [L e_i, L e_j] - L [e_i, e_j] over the extension field, using
// |a + b sqrt(m)| = 0 iff a = b = 0.
inline bool quad_bracket_compatible(const LieAlgebra& g, const Mat<QuadExt>& l) {
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      std::vector<QuadExt> lhs(g.n, QuadExt(Rat(0)));
      // [L e_i, L e_j] expanded through the structure tensor
      for (int p = 0; p < g.n; ++p)
        for (int q = 0; q < g.n; ++q) {
          QuadExt f = l.at(p, i) * l.at(q, j);
          if (f.is_zero()) continue;
          for (int k = 0; k < g.n; ++k)
            if (!(g.sc(p, q, k) == 0)) lhs[k] += f * QuadExt(g.sc(p, q, k));
        }
      for (int k = 0; k < g.n; ++k) {
        QuadExt rhs(Rat(0));
        for (int w = 0; w < g.n; ++w)
          if (!(g.sc(i, j, w) == 0)) rhs += l.at(k, w) * QuadExt(g.sc(i, j, w));
        if (!(lhs[k] == rhs)) return false;
      }
    }
  return true;
}

inline LorentzNormalForm lorentz_normal_form(const LieAlgebra& s, const QMat& b) {
  std::vector<Rat> lambda = detail::twisted_lambda_of(s);
  int d = static_cast<int>(lambda.size());
  int n = s.n;
  if (b.rows != n || b.cols != n || !b.is_symmetric())
    throw ShapeError("normal form: bad form matrix");
  if (!(ad_invariance_residual(s, b) == 0)) throw InvarianceError("form is not ad-invariant");
  Signature sig = congruence_signature(b);
  if (!sig.is_lorentzian()) throw SignatureError("form is not Lorentzian: signature " + sig.str());

  LorentzNormalForm nf;
  nf.mu = b.at(0, 1);
  nf.nu = b.at(0, 0);
  // Invariance forces b = mu * standard + nu * (T-dual)^2; re-check entrywise
  // to catch algebras handed over in a non-standard basis.
  QMat expect = standard_lorentz_form(d) * nf.mu;
  expect.at(0, 0) += nf.nu;
  if (!(b == expect)) throw DomainError("invariant form violates the two-parameter shape; basis is not standard");
  if (!(nf.mu > 0)) throw SignatureError("Lorentz form must have positive central pairing");

  nf.c_squared = Rat(1) / nf.mu;
  Rat root;
  nf.c_rational = rat_is_square(nf.c_squared, &root);
  QuadExt c = nf.c_rational ? QuadExt(root) : QuadExt(Rat(0), Rat(1) / nf.mu, nf.mu);  // 1/sqrt(mu)

  // T -> T - nu/(2 mu) Z kills the T-norm; X_k, Y_k -> c X_k, c Y_k with
  // Z -> c^2 Z rescales mu away and stays bracket-compatible.
  Mat<QuadExt> l(n, n);
  l.at(0, 0) = QuadExt(Rat(1));
  l.at(1, 0) = QuadExt(-nf.nu / (2 * nf.mu));
  l.at(1, 1) = QuadExt(nf.c_squared);
  for (int i = 2; i < n; ++i) l.at(i, i) = c;
  nf.automorphism = l;
  return nf;
}

// Verifies b(L x, L y) = standard(x, y) entrywise over the extension field.
inline bool normal_form_verifies(const LieAlgebra& s, const QMat& b, const LorentzNormalForm& nf) {
  int d = (s.n - 2) / 2;
  Rat radicand = nf.c_rational ? Rat(0) : nf.mu;
  Mat<QuadExt> bl = quad_lift(b, radicand);
  Mat<QuadExt> lt = nf.automorphism.transpose();
  Mat<QuadExt> transformed = lt * bl * nf.automorphism;
  Mat<QuadExt> std_form = quad_lift(standard_lorentz_form(d), radicand);
  return transformed == std_form && quad_bracket_compatible(s, nf.automorphism);
}

// --- nilradical vs full invariance ------------------------------------------

struct InvarianceEquivalenceReport {
  Rat nilradical_residual;
  Rat full_residual;
  bool equivalent = false;  // both vanish or both fail
};

inline InvarianceEquivalenceReport verify_invariance_equivalence(const LieAlgebra& s, const QMat& b) {
  InvarianceEquivalenceReport rep;
  Subspace nil = derived(s);  // for twisted Heisenberg: everything but T
  rep.nilradical_residual = ad_invariance_residual(s, b, nil);
  rep.full_residual = ad_invariance_residual(s, b);
  rep.equivalent = (rep.nilradical_residual == 0) == (rep.full_residual == 0);
  return rep;
}

}  // namespace homspace
