// Structure recognition: classify a Lie algebra given in an arbitrary rational
// basis, and when possible produce an exact change of basis onto the matching
// zoo model.  Exact paths (abelian, aff, Heisenberg via symplectic
// Gram-Schmidt, sl2 via an isotropic vector of the Killing form) certify the
// result with bracket residual 0; the twisted-Heisenberg path recovers the
// frequency tuple from eigenvalue ratios and then re-certifies it exactly
// against the characteristic polynomial.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lie.hpp"
#include "nt.hpp"
#include "poly.hpp"
#include "zoo.hpp"

namespace homspace {

struct RecognitionResult {
  std::string family;  // abelian | aff | heisenberg | twisted_heisenberg | sl2 |
                       // compact_semisimple | direct_sum | unknown
  int param = 0;       // n for abelian, d for heisenberg
  Lambda lambda;       // canonical tuple for twisted_heisenberg
  bool lambda_rationalized = false;  // ratios needed denominator clearing
  double spectral_residual = 0.0;    // worst float ratio error before rationalizing

  std::optional<LieAlgebra> model;      // zoo algebra this g was identified with
  std::optional<QMat> canonical_basis;  // columns: model basis realized inside g
  std::optional<QMat> canonical_map;    // inverse: g coordinates -> model coordinates
  std::optional<Rat> residual;          // bracket residual of canonical_basis (0 when set)

  std::vector<RecognitionResult> parts;  // direct_sum members
  std::vector<QMat> part_bases;          // ambient embedding of each member

  std::string type_tag() const {
    if (family == "heisenberg") return "heisenberg(" + std::to_string(param) + ")";
    if (family == "twisted_heisenberg") return "twisted_heisenberg" + lambda_str(lambda);
    if (family == "direct_sum") {
      std::string s = "direct_sum(";
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i].type_tag();
      }
      return s + ")";
    }
    return family;
  }
};

namespace detail {

inline int index_outside(const Subspace& s) {
  for (int i = 0; i < s.ambient; ++i)
    if (!s.contains(unit_vec<Rat>(s.ambient, i))) return i;
  return -1;
}

// Coefficient c with v = c * line, for v known to lie on the line.
inline std::optional<Rat> line_coefficient(const QVec& v, const QVec& line) {
  int i0 = -1;
  for (size_t i = 0; i < line.size(); ++i)
    if (line[i] != 0) {
      i0 = static_cast<int>(i);
      break;
    }
  if (i0 < 0) return std::nullopt;
  Rat c = v[i0] / line[i0];
  for (size_t i = 0; i < v.size(); ++i) {
    Rat want = c * line[i];
    if (v[i] != want) return std::nullopt;
  }
  return c;
}

}  // namespace detail

// Canonical Heisenberg basis (Z, X_1, Y_1, ..., X_d, Y_d) as columns, by exact
// symplectic Gram-Schmidt on the Z-coefficient form of the bracket.
inline QMat darboux_basis(const LieAlgebra& g) {
  Subspace zc = center(g);
  Subspace der = derived(g);
  if (zc.dim() != 1 || !(der == zc) || g.n % 2 == 0)
    throw NotHeisenbergError("darboux_basis: not a Heisenberg-shaped algebra");
  QVec zeta = zc.basis.col(0);
  auto omega = [&](const QVec& u, const QVec& v) {
    auto c = detail::line_coefficient(g.bracket(u, v), zeta);
    if (!c) throw NotHeisenbergError("darboux_basis: bracket leaves the center line");
    return *c;
  };
  // complement pool: standard vectors extending span(zeta)
  std::vector<QVec> pool;
  Subspace seen = zc;
  for (int i = 0; i < g.n && static_cast<int>(pool.size()) < g.n - 1; ++i) {
    QVec e = unit_vec<Rat>(g.n, i);
    if (seen.contains(e)) continue;
    pool.push_back(e);
    std::vector<QVec> vs = pool;
    vs.push_back(zeta);
    seen = span_vecs(g.n, vs);
  }
  std::vector<QVec> pairs;
  while (!pool.empty()) {
    QVec x = pool.front();
    int partner = -1;
    for (size_t j = 1; j < pool.size(); ++j)
      if (omega(x, pool[j]) != 0) {
        partner = static_cast<int>(j);
        break;
      }
    if (partner < 0) throw NotHeisenbergError("darboux_basis: degenerate symplectic form");
    Rat w = omega(x, pool[partner]);
    QVec y = vec_scale(Rat(1) / w, pool[partner]);
    pool.erase(pool.begin() + partner);
    pool.erase(pool.begin());
    for (QVec& v : pool) {
      Rat a = omega(v, y), b = omega(v, x);
      v = vec_add(v, vec_add(vec_scale(-a, x), vec_scale(b, y)));
    }
    pairs.push_back(x);
    pairs.push_back(y);
  }
  QMat phi = QMat::zero(g.n, g.n);
  phi.set_col(0, zeta);
  for (size_t k = 0; k < pairs.size(); ++k) phi.set_col(static_cast<int>(k) + 1, pairs[k]);
  int d = (g.n - 1) / 2;
  if (bracket_residual(make_heisenberg(d), g, phi) != 0)
    throw NotHeisenbergError("darboux_basis: canonical relations failed to verify");
  return phi;
}

// Exact sl2 triple: columns (e, f, h) in g coordinates.  e comes from a
// rational isotropic vector of the Killing form (such a vector spans a
// nilpotent line), f and h from linear completion.  Absent when the Killing
// form has no rational isotropic vector.
inline std::optional<QMat> sl2_triple(const LieAlgebra& g) {
  if (g.n != 3) return std::nullopt;
  QMat kappa = killing_form(g);
  auto e0opt = nt::isotropic_vector(kappa);
  if (!e0opt) return std::nullopt;
  QVec e = *e0opt;
  QMat ade = g.ad(e);
  auto sol = solve(ade * ade, QMat::column(vec_scale(Rat(-2), e)));
  if (!sol.solvable) return std::nullopt;
  QVec y = sol.particular.col(0);
  QVec h = g.bracket(e, y);
  QVec r = vec_add(g.bracket(h, y), vec_scale(Rat(2), y));
  auto c = detail::line_coefficient(r, e);
  if (!c) return std::nullopt;
  QVec f = vec_sub(y, vec_scale(*c / Rat(4), e));
  QMat phi = QMat::zero(3, 3);
  phi.set_col(0, e);
  phi.set_col(1, f);
  phi.set_col(2, h);
  if (!inverse(phi)) return std::nullopt;
  if (bracket_residual(make_sl2(), g, phi) != 0) return std::nullopt;
  return phi;
}

namespace detail {

struct TwistedAnalysis {
  Lambda lambda;
  Rat scale_sq;        // square of the ad_t frequency unit (rational)
  bool rationalized = false;
  double spectral_residual = 0.0;
  QVec t0;                     // the complement vector used
  QVec zeta;                   // center line
  QMat der_basis;              // columns: zeta then complement of zeta in derived
  QMat quotient_action;        // ad_t0 on derived mod center
};

// Shared twisted-Heisenberg spectral analysis; throws NotTwistedHeisenbergError.
inline TwistedAnalysis analyze_twisted(const LieAlgebra& g, double tol) {
  int n = g.n;
  if (n < 4 || n % 2 != 0)
    throw NotTwistedHeisenbergError("twisted analysis: dimension must be even and >= 4");
  Subspace zc = center(g);
  Subspace der = derived(g);
  if (zc.dim() != 1 || der.dim() != n - 1 || !der.contains(zc))
    throw NotTwistedHeisenbergError("twisted analysis: center/derived shape mismatch");
  TwistedAnalysis out;
  out.zeta = zc.basis.col(0);
  // basis of derived starting with the center line
  QMat cb = QMat::zero(n, n - 1);
  cb.set_col(0, out.zeta);
  {
    std::vector<QVec> cols = {out.zeta};
    Subspace seen = zc;
    for (int j = 0; j < n - 1 && static_cast<int>(cols.size()) < n - 1; ++j) {
      QVec v = der.basis.col(j);
      if (seen.contains(v)) continue;
      cols.push_back(v);
      seen = span_vecs(n, cols);
    }
    if (static_cast<int>(cols.size()) != n - 1)
      throw NotTwistedHeisenbergError("twisted analysis: derived basis extension failed");
    for (size_t j = 0; j < cols.size(); ++j) cb.set_col(static_cast<int>(j), cols[j]);
  }
  out.der_basis = cb;
  int idx = index_outside(der);
  if (idx < 0) throw NotTwistedHeisenbergError("twisted analysis: no complement vector");
  out.t0 = unit_vec<Rat>(n, idx);
  // ad_t0 on derived in cb coordinates, then quotient by the center line
  QMat act = QMat::zero(n - 1, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    QVec w = g.bracket(out.t0, cb.col(j));
    auto s = solve(cb, QMat::column(w));
    if (!s.solvable)
      throw NotTwistedHeisenbergError("twisted analysis: derived is not ad_t invariant");
    act.set_col(j, s.particular.col(0));
  }
  QMat m = QMat::zero(n - 2, n - 2);
  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j) m.at(i, j) = act.at(i + 1, j + 1);
  out.quotient_action = m;

  std::vector<EigenvaluePair> spec;
  try {
    spec = skew_spectrum(m, tol);
  } catch (const std::runtime_error&) {
    throw NotTwistedHeisenbergError("twisted analysis: spectrum computation failed");
  }
  std::vector<std::pair<double, int>> freqs;  // positive imaginary parts
  for (const EigenvaluePair& ev : spec) {
    if (std::abs(ev.re) > tol || ev.im == 0.0)
      throw NotTwistedHeisenbergError("twisted analysis: spectrum is not purely rotational");
    if (ev.im > 0) freqs.push_back({ev.im, ev.multiplicity});
  }
  int total = 0;
  for (auto& [im, mult] : freqs) total += 2 * mult;
  if (total != n - 2)
    throw NotTwistedHeisenbergError("twisted analysis: eigenvalues do not pair");
  std::sort(freqs.begin(), freqs.end());
  double base = freqs.front().first;
  std::vector<Rat> raw;
  for (auto& [im, mult] : freqs) {
    double ratio = im / base;
    Rat rho = continued_fraction_approx(ratio, 1000000L);
    double err = std::abs(rat_double(rho) - ratio);
    out.spectral_residual = std::max(out.spectral_residual, err);
    if (err > tol * std::max(1.0, std::abs(ratio)))
      throw NotTwistedHeisenbergError("twisted analysis: irrational frequency ratio");
    if (rho.get_den() != 1) out.rationalized = true;
    for (int q = 0; q < mult; ++q) raw.push_back(rho);
  }
  out.lambda = lambda_canonicalize(raw);

  // exact certification: char(m) must equal prod_k (x^2 + s lambda_k^2)
  Poly cp(char_poly(m));
  Rat lam_sq_sum(0);
  for (const Int& lk : out.lambda) lam_sq_sum += Rat(lk) * Rat(lk);
  if (cp.degree() != n - 2 || lam_sq_sum == 0)
    throw NotTwistedHeisenbergError("twisted analysis: malformed characteristic polynomial");
  Rat s = cp.c[n - 4] / lam_sq_sum;
  if (s <= 0) throw NotTwistedHeisenbergError("twisted analysis: non-rotational scale");
  Poly prod({Rat(1)});
  for (const Int& lk : out.lambda) {
    Rat a = s * Rat(lk) * Rat(lk);
    prod = prod * Poly({a, Rat(0), Rat(1)});
  }
  if (!(prod == cp))
    throw NotTwistedHeisenbergError("twisted analysis: spectrum failed exact certification");
  out.scale_sq = s;
  return out;
}

}  // namespace detail

// Canonical frequency tuple of a twisted-Heisenberg-shaped algebra, recovered
// from the ad-spectrum of any element outside the nilradical.
inline Lambda extract_lambda(const LieAlgebra& g, double tol = 1e-9) {
  return detail::analyze_twisted(g, tol).lambda;
}

namespace detail {

// Best-effort exact canonical basis (T, Z, X_1, Y_1, ...) for a certified
// twisted-Heisenberg algebra.  Multiplicity-one frequencies always succeed;
// repeated frequencies may fail to split rationally, in which case nullopt.
inline std::optional<QMat> twisted_canonical_basis(const LieAlgebra& g,
                                                   const TwistedAnalysis& ta) {
  int n = g.n;
  Rat c;
  if (!rat_is_square(ta.scale_sq, &c)) return std::nullopt;
  if (c < 0) c = -c;
  QVec t1 = vec_scale(Rat(1) / c, ta.t0);
  const QMat& cb = ta.der_basis;
  const QVec& zeta = ta.zeta;
  auto zcoeff = [&](const QVec& v) -> std::optional<Rat> {
    return line_coefficient(v, zeta);
  };
  // center-leak correction: subtract u from t1 so that ad_t1 maps the
  // complement directions without a zeta component
  int q = n - 2;
  QMat omega_mat = QMat::zero(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      auto w = zcoeff(g.bracket(cb.col(i + 1), cb.col(j + 1)));
      if (!w) return std::nullopt;
      omega_mat.at(i, j) = *w;
    }
  QVec rhs(q, Rat(0));
  for (int j = 0; j < q; ++j) {
    QVec br = g.bracket(t1, cb.col(j + 1));
    auto coords = solve(cb, QMat::column(br));
    if (!coords.solvable) return std::nullopt;
    rhs[j] = coords.particular.at(0, 0);
  }
  auto usol = solve(omega_mat.transpose(), QMat::column(rhs));
  if (!usol.solvable) return std::nullopt;
  QVec t2 = t1;
  for (int k = 0; k < q; ++k)
    t2 = vec_sub(t2, vec_scale(usol.particular.at(k, 0), cb.col(k + 1)));

  // action of ad_t2 on derived, in cb coordinates
  QMat act = QMat::zero(n - 1, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    auto s = solve(cb, QMat::column(g.bracket(t2, cb.col(j))));
    if (!s.solvable) return std::nullopt;
    act.set_col(j, s.particular.col(0));
  }
  QMat act2 = act * act;

  std::vector<Int> distinct;
  for (const Int& lk : ta.lambda)
    if (distinct.empty() || distinct.back() != lk) distinct.push_back(lk);

  auto omega_amb = [&](const QVec& u, const QVec& v) -> std::optional<Rat> {
    return zcoeff(g.bracket(u, v));
  };

  struct Plane {
    Int lam;
    std::vector<QVec> basis;  // ambient vectors
  };
  std::vector<Plane> planes;
  for (const Int& lv : distinct) {
    QMat op = act2;
    Rat l2 = Rat(lv) * Rat(lv);
    for (int i = 0; i < n - 1; ++i) op.at(i, i) += l2;
    QMat kern = nullspace(op);
    Plane pl;
    pl.lam = lv;
    for (int kc = 0; kc < kern.cols; ++kc) {
      QVec kv = kern.col(kc);
      if (kv[0] != 0) return std::nullopt;  // plane must avoid the center line
      QVec amb(n, Rat(0));
      for (int i = 0; i < n - 1; ++i) amb = vec_add(amb, vec_scale(kv[i], cb.col(i)));
      pl.basis.push_back(amb);
    }
    int mult = static_cast<int>(std::count(ta.lambda.begin(), ta.lambda.end(), lv));
    if (static_cast<int>(pl.basis.size()) != 2 * mult) return std::nullopt;
    planes.push_back(std::move(pl));
  }

  auto jmap = [&](const QVec& v, const Int& lam) {
    return vec_scale(Rat(1) / Rat(lam), g.bracket(t2, v));
  };
  auto norm_of = [&](const QVec& v, const Int& lam) -> std::optional<Rat> {
    return omega_amb(v, jmap(v, lam));
  };

  // rational s, r with s^2 + r^2 = rho.  rho = n d / d^2, and n, d are kept
  // apart so only numbers of their own size ever reach the factoring step.
  auto two_square_split = [](const Rat& rho) -> std::optional<std::pair<Rat, Rat>> {
    if (rho <= 0) return std::nullopt;
    std::map<Int, int> fac;
    nt::factor_into(Int(rho.get_num()), fac);
    nt::factor_into(Int(rho.get_den()), fac);
    auto xy = nt::two_square_from_factors(fac);
    if (!xy) return std::nullopt;
    Rat den(rho.get_den());
    return std::make_pair(Rat(xy->first) / den, Rat(xy->second) / den);
  };

  // Each plane carries the definite form w(v) = omega(v, Jv) and a complex
  // structure J, i.e. a Hermitian form over Q(J).  The pairing
  // b(x, y) = omega(x, Jy) is symmetric and definite on a plane, so an exact
  // Lovasz-reduced basis keeps the numbers entering the frame small.
  auto lll_reduce = [&](std::vector<QVec>& vs, const Int& lam) -> bool {
    int m = static_cast<int>(vs.size());
    for (QVec& v : vs) {  // primitive integer representative
      Int den(1);
      for (const Rat& e : v) den = lcm(den, Int(e.get_den()));
      QVec w = vec_scale(Rat(den), v);
      Int cont(0);
      for (const Rat& e : w) cont = gcd(cont, Int(e.get_num()));
      if (cont > 1) {
        Rat inv(Int(1), cont);
        inv.canonicalize();
        w = vec_scale(inv, w);
      }
      v = std::move(w);
    }
    if (m <= 1) return true;
    auto raw = [&](const QVec& x, const QVec& y) { return omega_amb(x, jmap(y, lam)); };
    auto d00 = raw(vs[0], vs[0]);
    if (!d00 || *d00 == 0) return false;
    Rat sgn = (*d00 < 0) ? Rat(-1) : Rat(1);
    auto dot = [&](const QVec& x, const QVec& y) -> std::optional<Rat> {
      auto r = raw(x, y);
      if (!r) return std::nullopt;
      return sgn * *r;
    };
    auto nearest = [](const Rat& x) {
      Int twice = 2 * Int(x.get_num()) + Int(x.get_den()), den2 = 2 * Int(x.get_den());
      Int r;
      mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
      return r;
    };
    const Rat delta(3, 4);
    int k = 1, guard = 0;
    while (k < m) {
      if (++guard > 20000) return false;
      std::vector<std::vector<Rat>> mu(k + 1, std::vector<Rat>(k + 1, Rat(0)));
      std::vector<QVec> bstar(k + 1);
      std::vector<Rat> bn(k + 1, Rat(0));
      for (int i = 0; i <= k; ++i) {
        bstar[i] = vs[i];
        for (int j = 0; j < i; ++j) {
          auto dij = dot(vs[i], bstar[j]);
          if (!dij) return false;
          mu[i][j] = *dij / bn[j];
          bstar[i] = vec_sub(bstar[i], vec_scale(mu[i][j], bstar[j]));
        }
        auto bb = dot(bstar[i], bstar[i]);
        if (!bb || !(*bb > 0)) return false;
        bn[i] = *bb;
      }
      bool changed = false;
      for (int j = k - 1; j >= 0; --j) {
        Int r = nearest(mu[k][j]);
        if (r != 0) {
          vs[k] = vec_sub(vs[k], vec_scale(Rat(r), vs[j]));
          changed = true;
        }
      }
      if (changed) continue;  // refresh the projections before the exchange test
      if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
        ++k;
      } else {
        std::swap(vs[k], vs[k - 1]);
        k = std::max(1, k - 1);
      }
    }
    return true;
  };
  for (Plane& pl : planes)
    if (!lll_reduce(pl.basis, pl.lam)) return std::nullopt;

  // Reduce every plane to a J-orthogonal frame u_1, ..., u_m with norms a_k
  // once, up front.
  struct Frame {
    std::vector<QVec> u;
    std::vector<Rat> a;
  };
  std::vector<Frame> frames(planes.size());
  for (size_t pi = 0; pi < planes.size(); ++pi) {
    const Plane& pl = planes[pi];
    Frame& fr = frames[pi];
    for (const QVec& v0 : pl.basis) {
      QVec v = v0;
      for (size_t k = 0; k < fr.u.size(); ++k) {
        QVec y = jmap(fr.u[k], pl.lam);
        auto gv = omega_amb(v, y);
        auto ov = omega_amb(v, fr.u[k]);
        if (!gv || !ov) return std::nullopt;
        v = vec_sub(v, vec_scale(*gv / fr.a[k], fr.u[k]));
        v = vec_add(v, vec_scale(*ov / fr.a[k], y));
      }
      if (vec_is_zero(v)) continue;
      auto w = norm_of(v, pl.lam);
      if (!w || *w == 0) return std::nullopt;  // the form is definite on a true plane
      // rescale so the norm becomes a squarefree integer: w(c v) = c^2 w(v)
      Int sq;
      Int part = nt::squarefree_part(Int(w->get_num()) * Int(w->get_den()), &sq);
      Rat cs(Int(w->get_den()), sq);
      cs.canonicalize();
      fr.u.push_back(vec_scale(cs, v));
      fr.a.push_back(Rat(part));
      if (2 * fr.u.size() == pl.basis.size()) break;
    }
    if (2 * fr.u.size() != pl.basis.size()) return std::nullopt;
  }

  // Squarefree integers built from 2 and primes = 1 mod 4: representatives of
  // the square classes that are sums of two rational squares.
  static const std::vector<int> class_reps = [] {
    std::vector<int> ms;
    for (int m = 1; m <= 1500 && ms.size() < 150; ++m) {
      int v = m;
      bool good = true;
      for (int p = 2; p * p <= v && good; ++p) {
        if (v % p != 0) continue;
        v /= p;
        if (v % p == 0 || p % 4 == 3) good = false;
      }
      if (v > 2 && v % 4 == 3) good = false;
      if (good) ms.push_back(m);
    }
    return ms;
  }();

  // r = class * scale^2 with class a squarefree integer carrying the sign
  auto square_class = [](const Rat& r, Rat* scale) -> Int {
    Int sq;
    Int part = nt::squarefree_part(Int(r.get_num()) * Int(r.get_den()), &sq);
    if (scale) {
      *scale = Rat(sq, Int(r.get_den()));
      scale->canonicalize();
    }
    return part;
  };

  // Solve a N(sigma) + b N(tau) = t over the Gaussian rationals, on the
  // squarefree classes A, B, T of a, b, t.  Quick exits: t/a or t/b already a
  // two-square, then a short scan of ternary slices A x^2 + B y^2 = (T m) z^2
  // over small two-square multipliers m; dividing by a Gaussian mu with
  // N(mu) = m folds the multiplier back in.  That scan only reaches sigma,
  // tau proportional over Q(i), so when it misses, build the general
  // solution: pick a two-square n2 whose square class keeps the quaternary
  // form <A, A, -T, B n2> isotropic at every place, then a common value
  // c = A (two-square) of <A, A> and the binary <T, -B n2> by prescribing
  // quadratic residues of a fresh prime, and stitch the two conic solutions
  // together.
  auto hermitian_represent = [&](Rat a, Rat b, Rat t) -> std::optional<std::array<Rat, 4>> {
    if (a < 0) {
      a = -a;
      b = -b;
      t = -t;
    }
    if (!(a > 0) || !(b > 0) || !(t > 0)) return std::nullopt;
    if (auto sr = two_square_split(t / a))
      return std::array<Rat, 4>{sr->first, sr->second, Rat(0), Rat(0)};
    if (auto sr = two_square_split(t / b))
      return std::array<Rat, 4>{Rat(0), Rat(0), sr->first, sr->second};
    Rat sa, sb, st;
    Int A = square_class(a, &sa), B = square_class(b, &sb), T = square_class(t, &st);
    Rat fa = st / sa, fb = st / sb;  // maps solutions for (A, B, T) back to (a, b, t)
    // bounded scan through the slices T D^2 = P (X^2 + Y^2) + r with P one of
    // A, B: the leftover r lands in a two-square class often enough that a
    // small grid of X, Y, D nearly always finishes the job cheaply
    for (int side = 0; side < 2; ++side) {
      const Int &P = (side == 0) ? A : B, &Q = (side == 0) ? B : A;
      const Rat &fp = (side == 0) ? fa : fb, &fq = (side == 0) ? fb : fa;
      int budget = 400;
      Int D0;  // smallest denominator leaving the grid room to move
      mpz_sqrt(D0.get_mpz_t(), Int((P + Q) / T).get_mpz_t());
      if (D0 < 1) D0 = 1;
      for (Int D(D0); budget > 0 && D <= D0 + 31; ++D) {
        Int cap = T * D * D;
        for (Int Y(0); budget > 0 && Y <= 19 && P * Y * Y < cap; ++Y) {
          for (Int X(0); X <= Y && budget > 0; ++X) {
            if (X == 0 && Y == 0) continue;
            Int r = cap - P * (X * X + Y * Y);
            if (r <= 0) break;
            --budget;
            Rat rq(r, Q);
            rq.canonicalize();
            auto sr = two_square_split(rq);
            if (!sr) continue;
            Rat dd(D);
            std::array<Rat, 4> out{Rat(X) / dd * fp, Rat(Y) / dd * fp, sr->first / dd * fq,
                                   sr->second / dd * fq};
            if (side == 1) {
              std::swap(out[0], out[2]);
              std::swap(out[1], out[3]);
            }
            if (a * (out[0] * out[0] + out[1] * out[1]) + b * (out[2] * out[2] + out[3] * out[3]) ==
                t)
              return out;
          }
        }
      }
    }

    // proportional solutions (tau a rational multiple of sigma) via a single
    // conic; worth a try only while the coefficients stay small
    if (A * B * T < Int("1000000000000000000"))
      for (size_t mi = 0; mi < class_reps.size() && mi < 12; ++mi) {
        Int m(class_reps[mi]);
        auto sol = nt::solve_conic(A, B, -T * m);
        if (!sol) continue;
        const auto& [x, y, z] = *sol;
        if (z == 0) continue;
        auto mu = two_square_split(Rat(m));
        if (!mu) continue;
        Rat xz = Rat(x) / Rat(z), yz = Rat(y) / Rat(z), mm(m);
        return std::array<Rat, 4>{xz * mu->first / mm * fa, -xz * mu->second / mm * fa,
                                  yz * mu->first / mm * fb, -yz * mu->second / mm * fb};
      }

    std::vector<Int> bad;  // odd primes dividing A, B, or T
    {
      std::map<Int, int> f;
      nt::factor_into(A, f);
      nt::factor_into(B, f);
      nt::factor_into(T, f);
      for (const auto& [p, e] : f)
        if (p != 2) bad.push_back(p);
    }
    Int avoid = 2 * A * B * T;

    // n2 = 2^k1 q1: dodge the square class of -T B at every bad place, so the
    // determinant of <A, A, -T, B n2> is a non-square there
    int k1 = 0, qm8_1 = 1;
    {
      int v2 = 0;
      Int odd = T * B;
      while (odd % 2 == 0) {
        odd /= 2;
        ++v2;
      }
      bool picked = false;
      for (int k : {0, 1}) {
        for (int u8 : {1, 5}) {
          Int cls = ((-odd * u8) % 8 + 8) % 8;
          if ((v2 + k) % 2 == 0 && cls == 1) continue;  // -T B n2 would be a 2-adic square
          k1 = k;
          qm8_1 = u8;
          picked = true;
          break;
        }
        if (picked) break;
      }
      if (!picked) return std::nullopt;
    }
    std::vector<nt::ResidueCondition> conds1;
    for (const Int& p : bad) {
      int v = 0;
      Int u = T * B;
      while (u % p == 0) {
        u /= p;
        ++v;
      }
      if (v % 2 == 1) continue;  // determinant class is off the squares for free
      int chi = -nt::legendre(-u, p);
      int adj = (k1 == 1) ? nt::legendre(Int(2), p) : 1;
      conds1.push_back({p, chi * adj});
    }
    auto q1 = nt::prime_with_residues(qm8_1, conds1, avoid);
    if (!q1) return std::nullopt;
    Int n2 = (k1 == 1 ? Int(2) : Int(1)) * *q1;

    // c = A 2^k2 tps q2 with tps the forced odd part: c/A stays a two-square
    // while <T, -B n2> represents c at every place
    Int beta = T * B * n2;
    std::vector<Int> bad2 = bad;
    bad2.push_back(*q1);
    std::vector<Int> tprim;
    for (const Int& p : bad2) {
      int vb = 0;
      Int ub = beta;
      while (ub % p == 0) {
        ub /= p;
        ++vb;
      }
      if (vb % 2 == 1) continue;
      if (nt::legendre(ub, p) == 1) continue;
      int vat = 0;
      Int uat = A * T;
      while (uat % p == 0) {
        uat /= p;
        ++vat;
      }
      if (vat % 2 == 0) continue;
      if (p % 4 != 1) return std::nullopt;  // no Gaussian-norm value c can work here
      tprim.push_back(p);
    }
    Int tps(1);
    for (const Int& p : tprim) tps *= p;
    for (int k2 : {0, 1}) {
      for (int u8 : {1, 5}) {
        std::vector<nt::ResidueCondition> conds2;
        for (const Int& p : bad2) {
          int vb = 0;
          Int ub = beta;
          while (ub % p == 0) {
            ub /= p;
            ++vb;
          }
          if (vb % 2 == 0) continue;
          int vat = 0;
          Int uat = A * T;
          while (uat % p == 0) {
            uat /= p;
            ++vat;
          }
          bool in_t = std::find(tprim.begin(), tprim.end(), p) != tprim.end();
          int vc = (vat + (in_t ? 1 : 0)) % 2;
          Int rest = uat * (k2 == 1 ? 2 : 1) * (in_t ? tps / p : tps);
          int l0 = nt::legendre(rest, p);
          int sgn0 = (p % 4 == 3 && vc == 1) ? -1 : 1;
          int ubp = (vc == 1) ? nt::legendre(ub, p) : 1;
          conds2.push_back({p, sgn0 * l0 * ubp});
        }
        int v2 = k2;
        Int uat2 = A * T;
        while (uat2 % 2 == 0) {
          uat2 /= 2;
          ++v2;
        }
        Int wrep = ((uat2 * tps * u8) % 8 + 8) % 8;
        Int proxy = (Int(1) << v2) * wrep;
        if (nt::hilbert_symbol(proxy, beta, Int(2)) != 1) continue;
        auto q2 = nt::prime_with_residues(u8, conds2, avoid * *q1);
        if (!q2) continue;
        Int c = A * (k2 == 1 ? 2 : 1) * tps * *q2;

        auto s12 = two_square_split(Rat(c) / Rat(A));
        auto mu = two_square_split(Rat(n2));
        if (!s12 || !mu) continue;
        auto sol = nt::solve_conic(T, -B * n2, -c);
        if (!sol) continue;
        const auto& [cz, cw, cu] = *sol;
        Rat zp, wp;
        if (cu != 0) {
          zp = Rat(cz) / Rat(cu);
          wp = Rat(cw) / Rat(cu);
        } else {
          // <T, -B n2> is isotropic: slide off the isotropic vector to value c
          Rat e1(0), e2(0), qe, bil;
          if (cz != 0) {
            e1 = 1;
            qe = Rat(T);
            bil = Rat(T) * Rat(cz);
          } else {
            e2 = 1;
            qe = Rat(-B * n2);
            bil = Rat(-B * n2) * Rat(cw);
          }
          Rat s = (Rat(c) - qe) / (Rat(2) * bil);
          zp = s * Rat(cz) + e1;
          wp = s * Rat(cw) + e2;
        }
        if (wp == 0) continue;  // would make T/A a two-square, ruled out above
        Rat zeta2 = zp / wp;
        if (zeta2 == 0) continue;
        // A N(s12)/wp^2 - T zeta2^2 = -B n2, so T = A N(s12/(wp zeta2)) + B N(mu/zeta2)
        std::array<Rat, 4> out{s12->first / (wp * zeta2) * fa, s12->second / (wp * zeta2) * fa,
                               mu->first / zeta2 * fb, mu->second / zeta2 * fb};
        if (a * (out[0] * out[0] + out[1] * out[1]) + b * (out[2] * out[2] + out[3] * out[3]) == t)
          return out;
        return std::nullopt;  // exact check failed; give up rather than mislead
      }
    }
    return std::nullopt;
  };

  // Candidate center scales.  Norms a/lam land in the correct square class
  // for 2-dimensional planes; the frame-norm product times lam covers planes
  // of odd complex rank, and even ranks accept any scale of the right sign.
  std::vector<Rat> zcands;
  auto push_z = [&](const Rat& zc) {
    if (zc == 0) return;
    // only the square class matters; use its squarefree representative
    Rat cls{nt::squarefree_part(Int(zc.get_num()) * Int(zc.get_den()))};
    for (const Rat& e : zcands)
      if (e == cls) return;
    zcands.push_back(cls);
  };
  for (size_t pi = 0; pi < planes.size(); ++pi)
    for (const Rat& av : frames[pi].a) push_z(av / Rat(planes[pi].lam));
  for (size_t pi = 0; pi < planes.size(); ++pi) {
    Rat prod(1);
    for (const Rat& av : frames[pi].a) prod *= av;
    push_z(prod * Rat(planes[pi].lam));
  }

  LieAlgebra model = make_twisted_heisenberg(ta.lambda);
  for (const Rat& zval : zcands) {
    std::vector<QVec> cols;
    cols.push_back(t2);
    cols.push_back(vec_scale(zval, zeta));
    bool good = true;
    for (size_t pi = 0; pi < planes.size() && good; ++pi) {
      const Int& lam = planes[pi].lam;
      Rat target = Rat(lam) * zval;
      std::vector<QVec> u = frames[pi].u;
      std::vector<Rat> av = frames[pi].a;
      while (good && !u.empty()) {
        if (u.size() == 1) {
          auto sr = two_square_split(target / av[0]);
          if (!sr) {
            good = false;
            break;
          }
          QVec x = vec_add(vec_scale(sr->first, u[0]), vec_scale(sr->second, jmap(u[0], lam)));
          cols.push_back(x);
          cols.push_back(jmap(x, lam));
          u.clear();
          av.clear();
          break;
        }
        auto rep = hermitian_represent(av[0], av[1], target);
        if (!rep) {
          good = false;
          break;
        }
        QVec x = vec_add(vec_scale((*rep)[0], u[0]), vec_scale((*rep)[1], jmap(u[0], lam)));
        x = vec_add(x, vec_scale((*rep)[2], u[1]));
        x = vec_add(x, vec_scale((*rep)[3], jmap(u[1], lam)));
        QVec y = jmap(x, lam);  // J x, so [x, y] = w(x) zeta with w(x) = target
        cols.push_back(x);
        cols.push_back(y);
        // complement of the (x, Jx) plane inside the first two frame lines.
        // Writing x = sigma u1 + tau u2 over Q(J), the vector
        //   v = -a2 conj(tau) u1 + a1 conj(sigma) u2
        // is Hermitian-orthogonal to x and has w(v) = a1 a2 w(x) exactly,
        // which avoids recomputing (and factoring) the complement norm.
        QVec vp = vec_scale(-av[1] * (*rep)[2], u[0]);
        vp = vec_add(vp, vec_scale(av[1] * (*rep)[3], jmap(u[0], lam)));
        vp = vec_add(vp, vec_scale(av[0] * (*rep)[0], u[1]));
        vp = vec_sub(vp, vec_scale(av[0] * (*rep)[1], jmap(u[1], lam)));
        Rat wn = av[0] * av[1] * target;
        if (vec_is_zero(vp) || norm_of(vp, lam) != std::optional<Rat>(wn)) {
          good = false;
          break;
        }
        std::vector<QVec> nu{std::move(vp)};
        std::vector<Rat> na{wn};
        for (size_t k = 2; k < u.size(); ++k) {
          nu.push_back(std::move(u[k]));
          na.push_back(av[k]);
        }
        u = std::move(nu);
        av = std::move(na);
      }
    }
    if (!good || static_cast<int>(cols.size()) != n) continue;
    QMat phi = QMat::zero(n, n);
    for (int i = 0; i < n; ++i) phi.set_col(i, cols[i]);
    if (!inverse(phi)) continue;
    if (bracket_residual(model, g, phi) == 0) return phi;
  }
  return std::nullopt;
}

}  // namespace detail

// Basis of the centroid: matrices gamma with gamma[x,y] = [gamma x, y] = [x, gamma y].
inline std::vector<QMat> centroid_basis(const LieAlgebra& g) {
  int n = g.n;
  if (n == 0) return {};
  int pairs = n * (n - 1) / 2;
  QMat sys = QMat::zero(2 * pairs * n, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        for (int k = 0; k < n; ++k) sys.at(row, c * n + k) += g.sc(i, j, k);
        for (int p = 0; p < n; ++p) sys.at(row, p * n + i) -= g.sc(p, j, c);
        for (int k = 0; k < n; ++k) sys.at(row + 1, c * n + k) += g.sc(i, j, k);
        for (int p = 0; p < n; ++p) sys.at(row + 1, p * n + j) -= g.sc(i, p, c);
        row += 2;
      }
  std::vector<QMat> out;
  QMat kern = nullspace(sys);
  for (int c = 0; c < kern.cols; ++c) {
    QMat m = QMat::zero(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) m.at(p, q) = kern.at(p * n + q, c);
    out.push_back(m);
  }
  return out;
}

namespace detail {

// Split g into complementary commuting ideals through generalized eigenspaces
// of a generic centroid element; every candidate decomposition is verified
// before being accepted.
inline std::optional<std::vector<Subspace>> centroid_split(const LieAlgebra& g) {
  int n = g.n;
  std::vector<QMat> cb = centroid_basis(g);
  if (cb.size() <= 1) return std::nullopt;
  std::mt19937_64 rng(0x5eedULL);
  for (int attempt = 0; attempt < 12; ++attempt) {
    QMat gamma = QMat::zero(n, n);
    for (const QMat& b : cb) {
      long coef = 1 + static_cast<long>(rng() % 11);
      gamma = gamma + b * Rat(coef);
    }
    Poly cp(char_poly(gamma));
    auto roots = rational_roots(cp);
    int total = 0;
    for (auto& [r, mult] : roots) total += mult;
    if (total != n || roots.size() < 2) continue;
    std::vector<Subspace> spaces;
    bool ok = true;
    for (auto& [r, mult] : roots) {
      QMat shifted = gamma;
      for (int i = 0; i < n; ++i) shifted.at(i, i) -= r;
      QMat pw = QMat::identity(n);
      for (int e = 0; e < n; ++e) pw = pw * shifted;
      Subspace es = span_cols(nullspace(pw));
      if (es.dim() != mult || !is_ideal(g, es)) {
        ok = false;
        break;
      }
      spaces.push_back(es);
    }
    if (!ok) continue;
    int dimsum = 0;
    for (const Subspace& s : spaces) dimsum += s.dim();
    if (dimsum != n) continue;
    for (size_t a = 0; a < spaces.size() && ok; ++a)
      for (size_t b = a + 1; b < spaces.size() && ok; ++b)
        for (int i = 0; i < spaces[a].dim() && ok; ++i)
          for (int j = 0; j < spaces[b].dim(); ++j) {
            QVec br = g.bracket(spaces[a].basis.col(i), spaces[b].basis.col(j));
            bool zero = true;
            for (const Rat& x : br) zero = zero && x == 0;
            if (!zero) {
              ok = false;
              break;
            }
          }
    if (ok) return spaces;
  }
  return std::nullopt;
}

}  // namespace detail

RecognitionResult recognize(const LieAlgebra& g, double tol = 1e-9);

namespace detail {

// Recognize each ideal, flatten nested sums, and reassemble the global map
// when every member produced one.
inline RecognitionResult assemble_sum(const LieAlgebra& g, const std::vector<Subspace>& ideals,
                                      double tol) {
  RecognitionResult out;
  out.family = "direct_sum";
  for (const Subspace& s : ideals) {
    LieAlgebra sub = restrict_to_subalgebra(g, s);
    RecognitionResult r = recognize(sub, tol);
    out.spectral_residual = std::max(out.spectral_residual, r.spectral_residual);
    if (r.family == "direct_sum") {
      for (size_t i = 0; i < r.parts.size(); ++i) {
        out.parts.push_back(r.parts[i]);
        out.part_bases.push_back(s.basis * r.part_bases[i]);
      }
    } else {
      out.parts.push_back(r);
      out.part_bases.push_back(s.basis);
    }
  }
  bool mappable = true;
  for (const RecognitionResult& p : out.parts)
    mappable = mappable && p.model.has_value() && p.canonical_basis.has_value();
  if (mappable) {
    std::vector<LieAlgebra> models;
    for (const RecognitionResult& p : out.parts) models.push_back(*p.model);
    LieAlgebra model = direct_sum(models);
    QMat phi = QMat::zero(g.n, g.n);
    int col = 0;
    for (size_t i = 0; i < out.parts.size(); ++i) {
      QMat block = out.part_bases[i] * *out.parts[i].canonical_basis;
      for (int j = 0; j < block.cols; ++j) phi.set_col(col++, block.col(j));
    }
    auto inv = col == g.n ? inverse(phi) : std::nullopt;
    if (inv && bracket_residual(model, g, phi) == 0) {
      out.model = model;
      out.canonical_basis = phi;
      out.canonical_map = *inv;
      out.residual = bracket_residual(g, model, *inv);
    }
  }
  return out;
}

}  // namespace detail

// Classification by structure invariants, with exact canonical maps on the
// rational paths and spectral certification on the twisted-Heisenberg path.
inline RecognitionResult recognize(const LieAlgebra& g, double tol) {
  int n = g.n;
  RecognitionResult out;
  Subspace der = derived(g);

  auto finish_exact = [&](const std::string& family, int param, LieAlgebra model, QMat phi) {
    out.family = family;
    out.param = param;
    auto inv = inverse(phi);
    if (!inv) throw DomainError("recognize: canonical basis not invertible");
    out.residual = bracket_residual(g, model, *inv);
    out.model = std::move(model);
    out.canonical_basis = phi;
    out.canonical_map = *inv;
  };

  if (der.dim() == 0) {
    finish_exact("abelian", n, make_abelian(n), QMat::identity(n));
    return out;
  }

  // split off the abelian complement of center-cap-derived inside the center
  Subspace zc = center(g);
  Subspace zd = subspace_intersect(zc, der);
  if (zd.dim() < zc.dim()) {
    std::vector<QVec> acols;
    Subspace seen = zd;
    for (int j = 0; j < zc.dim(); ++j) {
      QVec v = zc.basis.col(j);
      if (seen.contains(v)) continue;
      acols.push_back(v);
      std::vector<QVec> vs = acols;
      for (int i = 0; i < zd.dim(); ++i) vs.push_back(zd.basis.col(i));
      seen = span_vecs(n, vs);
    }
    Subspace abelian_part = span_vecs(n, acols);
    std::vector<QVec> gcols;
    for (int j = 0; j < der.dim(); ++j) gcols.push_back(der.basis.col(j));
    Subspace full = subspace_sum(der, abelian_part);
    for (int i = 0; i < n && full.dim() < n; ++i) {
      QVec e = unit_vec<Rat>(n, i);
      if (full.contains(e)) continue;
      gcols.push_back(e);
      full = subspace_sum(full, span_vecs(n, {e}));
    }
    Subspace main_part = span_vecs(n, gcols);
    return detail::assemble_sum(g, {main_part, abelian_part}, tol);
  }

  if (n == 2 && der.dim() == 1) {
    QVec y = der.basis.col(0);
    int i0 = detail::index_outside(der);
    QVec x0 = unit_vec<Rat>(n, i0);
    auto c = detail::line_coefficient(g.bracket(x0, y), y);
    if (c && *c != 0) {
      QMat phi = QMat::zero(2, 2);
      phi.set_col(0, vec_scale(Rat(1) / *c, x0));
      phi.set_col(1, y);
      finish_exact("aff", 0, make_aff(), phi);
      return out;
    }
  }

  QMat kappa = killing_form(g);
  Signature ksig = congruence_signature(kappa);
  if (n == 3 && ksig.positive == 2 && ksig.negative == 1) {
    out.family = "sl2";
    if (auto phi = sl2_triple(g)) {
      finish_exact("sl2", 0, make_sl2(), *phi);
    }
    return out;
  }
  if (n > 0 && ksig.is_negative_definite()) {
    out.family = "compact_semisimple";
    out.param = n;
    return out;
  }

  if (n % 2 == 1 && zc.dim() == 1 && der == zc && is_nilpotent(g)) {
    try {
      QMat phi = darboux_basis(g);
      finish_exact("heisenberg", (n - 1) / 2, make_heisenberg((n - 1) / 2), phi);
      return out;
    } catch (const NotHeisenbergError&) {
    }
  }

  if (n % 2 == 0 && n >= 4 && zc.dim() == 1 && der.dim() == n - 1 && der.contains(zc)) {
    try {
      detail::TwistedAnalysis ta = detail::analyze_twisted(g, tol);
      out.family = "twisted_heisenberg";
      out.param = static_cast<int>(ta.lambda.size());
      out.lambda = ta.lambda;
      out.lambda_rationalized = ta.rationalized;
      out.spectral_residual = ta.spectral_residual;
      if (auto phi = detail::twisted_canonical_basis(g, ta)) {
        if (auto inv = inverse(*phi)) {
          out.model = make_twisted_heisenberg(ta.lambda);
          out.canonical_basis = *phi;
          out.canonical_map = *inv;
          out.residual = bracket_residual(g, *out.model, *inv);
        }
      }
      return out;
    } catch (const NotTwistedHeisenbergError&) {
    }
  }

  if (auto ideals = detail::centroid_split(g)) return detail::assemble_sum(g, *ideals, tol);

  out.family = "unknown";
  return out;
}

}  // namespace homspace
