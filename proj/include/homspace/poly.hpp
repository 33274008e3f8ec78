// Univariate rational polynomials: exact arithmetic, Sturm sequences, real
// root isolation, Yun square-free decomposition, and the spectral routine for
// operators whose eigenvalues come in +/- pairs (rotational actions).
#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace homspace {

struct Poly {
  std::vector<Rat> c;  // c[i] multiplies x^i; normalized, no trailing zeros

  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }
  static Poly constant(const Rat& v) { return Poly({v}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  Rat lead() const { return c.empty() ? Rat(0) : c.back(); }

  Rat eval(const Rat& x) const {
    Rat r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return Poly(std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Poly(std::move(r));
  }
  Poly operator*(const Rat& s) const {
    std::vector<Rat> r = c;
    for (Rat& v : r) v *= s;
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return c == o.c; }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Rat> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rat(static_cast<long>(i));
    return Poly(std::move(r));
  }
  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / lead());
  }
};

inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly rem = a;
  std::vector<Rat> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, Rat(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    Rat f = rem.lead() / b.lead();
    q[shift] += f;
    for (size_t i = 0; i < b.c.size(); ++i) rem.c[i + shift] -= f * b.c[i];
    rem.normalize();
  }
  return {Poly(std::move(q)), rem};
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Yun's square-free decomposition: p = prod out[i]^(i+1) up to a constant.
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.degree() <= 0) return out;
  Poly g = poly_gcd(p, p.derivative());
  Poly w = poly_divmod(p, g).first;
  while (w.degree() > 0) {
    Poly y = poly_gcd(w, g);
    Poly factor = poly_divmod(w, y).first;
    out.push_back(factor.monic());
    w = y;
    g = poly_divmod(g, y).first;
  }
  return out;
}

inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero()) {
    Poly r = poly_divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(Poly() - r);
  }
  chain.pop_back();
  return chain;
}

inline int sign_variations_at(const std::vector<Poly>& chain, const Rat& x) {
  int v = 0, last = 0;
  for (const Poly& p : chain) {
    Rat val = p.eval(x);
    int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Number of distinct real roots in (a, b].
inline int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

inline Rat cauchy_root_bound(const Poly& p) {
  Rat m(0);
  Rat lead = rat_abs(p.lead());
  for (size_t i = 0; i + 1 < p.c.size(); ++i) {
    Rat q = rat_abs(p.c[i]) / lead;
    if (q > m) m = q;
  }
  return m + 1;
}

// Isolating intervals (lo, hi] for the distinct real roots of a square-free
// polynomial, in increasing order.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly& p) {
  std::vector<std::pair<Rat, Rat>> out;
  if (p.degree() <= 0) return out;
  std::vector<Poly> chain = sturm_chain(p);
  Rat bound = cauchy_root_bound(p);
  struct Seg {
    Rat lo, hi;
    int count;
  };
  std::vector<Seg> stack;
  int total = sturm_count(chain, -bound, bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      out.push_back({s.lo, s.hi});
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    // Halve toward the (regular) left endpoint until off every root.
    while (p.eval(mid) == 0) mid = (s.lo + mid) / 2;
    int left = sturm_count(chain, s.lo, mid);
    if (left > 0) stack.push_back({s.lo, mid, left});
    if (s.count - left > 0) stack.push_back({mid, s.hi, s.count - left});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// Shrink an isolating interval by bisection until its width is below eps.
inline std::pair<Rat, Rat> refine_root(const Poly& p, Rat lo, Rat hi, const Rat& eps) {
  Rat flo = p.eval(lo);
  if (flo == 0) return {lo, lo};
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    Rat fm = p.eval(mid);
    if (fm == 0) return {mid, mid};
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

struct RealRoot {
  Rat lo, hi;        // isolating interval after refinement
  int multiplicity;  // in the original polynomial
  double approx;
};

// All real roots of p with multiplicities, refined to width <= eps.
inline std::vector<RealRoot> real_roots(const Poly& p, const Rat& eps = rat_parse("1/1000000000000")) {
  std::vector<RealRoot> roots;
  std::vector<Poly> sf = squarefree_decomposition(p);
  for (size_t m = 0; m < sf.size(); ++m) {
    if (sf[m].degree() <= 0) continue;
    for (auto& iv : isolate_real_roots(sf[m])) {
      auto r = refine_root(sf[m], iv.first, iv.second, eps);
      RealRoot root;
      root.lo = r.first;
      root.hi = r.second;
      root.multiplicity = static_cast<int>(m) + 1;
      root.approx = rat_double((r.first + r.second) / 2);
      roots.push_back(root);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
  return roots;
}

// Exact rational root recovery: refine, reconstruct by continued fractions,
// verify by evaluation.  Returns all rational roots with multiplicities.
inline Rat continued_fraction_approx(double x, long max_den) {
  // Best rational approximation with denominator bound, by the standard
  // continued fraction convergent recursion.
  bool neg = x < 0;
  if (neg) x = -x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 1e17) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r(p1, q1 == 0 ? 1 : q1);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

inline std::vector<std::pair<Rat, int>> rational_roots(const Poly& p) {
  std::vector<std::pair<Rat, int>> out;
  for (const RealRoot& r : real_roots(p)) {
    Rat cand = continued_fraction_approx(r.approx, 1000000000L);
    if (p.eval(cand) == 0 && cand >= r.lo && cand <= r.hi)
      out.push_back({cand, r.multiplicity});
  }
  return out;
}

// Least-degree monic annihilator, found by the first linear dependence among
// the powers I, A, A^2, ... viewed as vectors of length n^2.
inline Poly minimal_polynomial(const QMat& m) {
  if (m.rows != m.cols) throw ShapeError("minimal_polynomial: non-square matrix");
  int n = m.rows;
  std::vector<QMat> powers = {QMat::identity(n)};
  for (int k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * m);
    QMat sys(n * n, k);
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sys.at(i * n + j, c) = powers[c].at(i, j);
    QVec rhs(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs[i * n + j] = -powers[k].at(i, j);
    SolveResult<Rat> sol = solve(sys, QMat::column(rhs));
    if (sol.solvable) {
      std::vector<Rat> coeffs(k + 1);
      for (int c = 0; c < k; ++c) coeffs[c] = sol.particular.at(c, 0);
      coeffs[k] = Rat(1);
      return Poly(std::move(coeffs));
    }
  }
  throw DomainError("minimal_polynomial: no annihilator found");  // unreachable
}

struct EigenvaluePair {
  double re = 0, im = 0;
  int multiplicity = 1;
};

// Eigenvalues of a square rational matrix whose spectrum is expected to pair
// as {+w, -w} (rotational operators, skew maps).  Zero eigenvalues and the
// paired families are extracted exactly through the characteristic
// polynomial; tol only enters the generic numeric fallback.
inline std::vector<EigenvaluePair> skew_spectrum(const QMat& m, double tol = 1e-9) {
  if (m.rows != m.cols) throw ShapeError("skew_spectrum: non-square matrix");
  std::vector<EigenvaluePair> out;
  Poly p(char_poly(m));
  // Strip zero roots.
  int zeros = 0;
  while (!p.is_zero() && p.c[0] == 0) {
    p.c.erase(p.c.begin());
    ++zeros;
  }
  for (int i = 0; i < zeros; ++i) out.push_back({0.0, 0.0, 1});
  if (p.degree() <= 0) return out;
  bool even = true;
  for (size_t i = 1; i < p.c.size(); i += 2)
    if (!(p.c[i] == 0)) even = false;
  if (even) {
    // p(x) = q(y) with y = -x^2: roots y > 0 give pairs +/- i sqrt(y),
    // roots y < 0 give real pairs +/- sqrt(-y).
    std::vector<Rat> qc;
    for (size_t i = 0; i < p.c.size(); i += 2) {
      Rat v = p.c[i];
      if ((i / 2) % 2 == 1) v = -v;
      qc.push_back(v);
    }
    Poly q(std::move(qc));
    for (const RealRoot& r : real_roots(q)) {
      double y = r.approx;
      if (y > 0) {
        double w = std::sqrt(y);
        out.push_back({0.0, w, r.multiplicity});
        out.push_back({0.0, -w, r.multiplicity});
      } else if (y < 0) {
        double w = std::sqrt(-y);
        out.push_back({w, 0.0, r.multiplicity});
        out.push_back({-w, 0.0, r.multiplicity});
      } else {
        out.push_back({0.0, 0.0, r.multiplicity});
        out.push_back({0.0, 0.0, r.multiplicity});
      }
    }
    return out;
  }
  // Generic fallback: Durand-Kerner on double coefficients.
  int n = p.degree();
  std::vector<std::complex<double>> coeff(n + 1);
  for (int i = 0; i <= n; ++i) coeff[i] = rat_double(p.c[i] / p.lead());
  std::vector<std::complex<double>> z(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1, 0);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    z[i] = acc;
  }
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> num = coeff[n];
      for (int k = n - 1; k >= 0; --k) num = num * z[i] + coeff[k];
      std::complex<double> den(1, 0);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      std::complex<double> step = num / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  for (int i = 0; i < n; ++i) {
    double re = std::abs(z[i].real()) < tol ? 0.0 : z[i].real();
    double im = std::abs(z[i].imag()) < tol ? 0.0 : z[i].imag();
    out.push_back({re, im, 1});
  }
  return out;
}

}  // namespace homspace
