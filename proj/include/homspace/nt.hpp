// Integer arithmetic support for finding rational points on conics: primality,
// Pollard-Brent factorization, square roots modulo squarefree integers, and a
// Lagrange-descent solver for a x^2 + b y^2 + c z^2 = 0.  Everything exact.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace homspace {
namespace nt {

inline bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int mod_pow(Int base, Int exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// One nontrivial factor of an odd composite, Brent's cycle variant.  A step
// cap (0 = unlimited) bounds the search; 0 comes back when it runs out.
inline Int pollard_brent(const Int& n, std::uint64_t max_steps = 0) {
  if (n % 2 == 0) return Int(2);
  std::uint64_t steps = 0;
  for (unsigned long c = 1;; ++c) {
    Int x(2), d(1);
    Int saved_x = x;
    unsigned long power = 1, lam = 0;
    while (d == 1) {
      if (max_steps != 0 && ++steps > max_steps) return Int(0);
      if (lam == power) {
        saved_x = x;
        power *= 2;
        lam = 0;
      }
      x = (x * x + c) % n;
      ++lam;
      Int diff = x - saved_x;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;  // cycle without factor; retry with next c
      d = gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

// Complete factorization with a per-factor step cap (0 = unlimited); a false
// return means some cofactor resisted the budget and out is partial.
inline bool factor_into_capped(Int n, std::map<Int, int>& out, std::uint64_t max_steps) {
  if (n <= 1) return true;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    while (n % p == 0) {
      ++out[Int(p)];
      n /= p;
    }
  }
  if (n == 1) return true;
  if (is_probable_prime(n)) {
    ++out[n];
    return true;
  }
  Int d = pollard_brent(n, max_steps);
  if (d == 0) return false;
  return factor_into_capped(d, out, max_steps) && factor_into_capped(n / d, out, max_steps);
}

inline void factor_into(Int n, std::map<Int, int>& out) { factor_into_capped(std::move(n), out, 0); }

inline std::vector<std::pair<Int, int>> factorize(const Int& n) {
  std::map<Int, int> m;
  factor_into(n < 0 ? Int(-n) : n, m);
  return {m.begin(), m.end()};
}

// n = part * square^2 with part squarefree and the sign on part, under a
// factoring step budget (0 = unlimited); nullopt when the budget runs out.
inline std::optional<Int> squarefree_part_capped(const Int& n, Int* square, std::uint64_t cap) {
  if (square) *square = 1;
  if (n == 0) return Int(0);
  std::map<Int, int> f;
  if (!factor_into_capped(n < 0 ? Int(-n) : n, f, cap)) return std::nullopt;
  Int part(n < 0 ? -1 : 1);
  for (const auto& [p, e] : f) {
    if (e % 2 == 1) part *= p;
    if (square && e >= 2) {
      Int half;
      mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e / 2));
      *square *= half;
    }
  }
  return part;
}

// n = part * square^2 with part squarefree; the sign stays on part.
inline Int squarefree_part(const Int& n, Int* square = nullptr) {
  return *squarefree_part_capped(n, square, 0);
}

// Tonelli-Shanks; returns a root of x^2 = a (mod p) for prime p, if one exists.
inline std::optional<Int> sqrt_mod_prime(Int a, const Int& p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return Int(0);
  if (p == 2) return a;
  if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
  // write p-1 = q 2^s with q odd
  Int q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z(2);
  while (mod_pow(z, (p - 1) / 2, p) == 1) ++z;
  Int m(static_cast<long>(s)), c = mod_pow(z, q, p);
  Int t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    Int tt = t;
    long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
      if (Int(i) == m) return std::nullopt;  // a not a residue (defensive)
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// x with x^2 = a (mod n) for squarefree n > 0 with known prime factors; CRT.
inline std::optional<Int> sqrt_mod_squarefree(const Int& a, const std::vector<Int>& primes) {
  Int x(0), mod(1);
  for (const Int& p : primes) {
    auto r = sqrt_mod_prime(a, p);
    if (!r) return std::nullopt;
    // lift: x' = x (mod mod), x' = r (mod p)
    Int pinv;
    if (mpz_invert(pinv.get_mpz_t(), mod.get_mpz_t(), p.get_mpz_t()) == 0)
      throw DomainError("crt: moduli not coprime");
    Int t = ((*r - x) % p * pinv) % p;
    if (t < 0) t += p;
    x += mod * t;
    mod *= p;
  }
  return x % mod;
}

namespace detail {

struct Gauss {
  Int re, im;
};

inline Gauss gauss_mul(const Gauss& a, const Gauss& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Int gauss_norm(const Gauss& a) { return a.re * a.re + a.im * a.im; }

// nearest integer to n / d for d > 0
inline Int round_div(const Int& n, const Int& d) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (2 * r >= d) ++q;
  return q;
}

inline Gauss gauss_gcd(Gauss a, Gauss b) {
  while (gauss_norm(b) != 0) {
    Int nb = gauss_norm(b);
    Gauss num = gauss_mul(a, {b.re, -b.im});
    Gauss q{round_div(num.re, nb), round_div(num.im, nb)};
    Gauss r{a.re - (q.re * b.re - q.im * b.im), a.im - (q.re * b.im + q.im * b.re)};
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

// x^2 + y^2 = prod p^e from a factorization of a positive integer, built by
// splitting each prime in Z[i].  Fails iff some p = 3 (mod 4) has odd exponent.
inline std::optional<std::pair<Int, Int>> two_square_from_factors(const std::map<Int, int>& fac) {
  detail::Gauss acc{1, 0};
  Int carry(1);
  for (const auto& [p, e] : fac) {
    Int half;
    mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
    carry *= half;
    if (e % 2 == 0) continue;
    if (p == 2) {
      acc = detail::gauss_mul(acc, {1, 1});
    } else if (p % 4 == 1) {
      auto u = sqrt_mod_prime(Int(-1), p);
      if (!u) return std::nullopt;  // p prime, so this cannot happen
      acc = detail::gauss_mul(acc, detail::gauss_gcd({p, 0}, {*u, 1}));
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(abs(acc.re) * carry, abs(acc.im) * carry);
}

inline int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// Hilbert symbol (a, b)_p for a prime p (including p = 2); a, b nonzero.
inline int hilbert_symbol(Int a, Int b, const Int& p) {
  int va = 0, vb = 0;
  while (a % p == 0) {
    a /= p;
    ++va;
  }
  while (b % p == 0) {
    b /= p;
    ++vb;
  }
  if (p == 2) {
    auto eps = [](const Int& u) { return ((u % 4 + 4) % 4 == 3) ? 1 : 0; };
    auto omega = [](const Int& u) {
      Int r = (u % 8 + 8) % 8;
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(a) * eps(b) + va * omega(b) + vb * omega(a);
    return (e % 2 == 0) ? 1 : -1;
  }
  int s = 1;
  if (va % 2 == 1 && vb % 2 == 1 && p % 4 == 3) s = -s;
  if (vb % 2 == 1) s *= legendre(a, p);
  if (va % 2 == 1) s *= legendre(b, p);
  return s;
}

// Quadratic residue prescription for a prime search: demand (q | p) = sign.
struct ResidueCondition {
  Int p;
  int sign;
};

// Smallest prime q = mod8 (mod 8) meeting every residue condition and coprime
// to `avoid`, via CRT and a walk along the arithmetic progression.
inline std::optional<Int> prime_with_residues(int mod8, const std::vector<ResidueCondition>& conds,
                                              const Int& avoid) {
  Int m(8), r(mod8);
  for (const auto& c : conds) {
    Int u(1);
    if (c.sign == -1) {
      u = 2;
      while (legendre(u, c.p) != -1) ++u;
    }
    Int minv;
    if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), c.p.get_mpz_t()) == 0)
      throw DomainError("prime_with_residues: moduli not coprime");
    Int t = ((u - r) % c.p * minv) % c.p;
    if (t < 0) t += c.p;
    r += m * t;
    m *= c.p;
  }
  Int q = r;
  for (int step = 0; step < 200000; ++step, q += m) {
    if (q < 3) continue;
    if (gcd(q, avoid) != 1) continue;
    if (is_probable_prime(q)) return q;
  }
  return std::nullopt;
}

namespace detail {

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Exhaustive search within the Holzer bounds |y| <= sqrt|ac|, |z| <= sqrt|ab|;
// if a nontrivial solution exists, one lies inside these bounds.
inline std::optional<std::array<Int, 3>> conic_brute(const Int& a, const Int& b, const Int& c) {
  Int ybound = isqrt(abs(a * c)) + 1, zbound = isqrt(abs(a * b)) + 1;
  for (Int z = 0; z <= zbound; ++z)
    for (Int y = 0; y <= ybound; ++y) {
      if (y == 0 && z == 0) continue;
      Int rhs = -(b * y * y + c * z * z);
      if (rhs % a != 0) continue;
      Int x2 = rhs / a;
      if (x2 < 0) continue;
      Int x = isqrt(x2);
      if (x * x == x2) return std::array<Int, 3>{x, y, z};
    }
  return std::nullopt;
}

inline void divide_out_gcd(std::array<Int, 3>& v) {
  Int g = gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2]));
  if (g > 1)
    for (Int& x : v) x /= g;
}

// Thrown inside the descent when an intermediate will not factor within the
// step budget; the parent level then retries along a different branch.
struct ConicStuck {};

constexpr std::uint64_t kDescentFactorCap = 150000;

std::optional<std::array<Int, 3>> conic_descend(Int a, Int b, Int c, int depth);

// Reduce to squarefree pairwise-coprime coefficients, recurse, map back.
inline std::optional<std::array<Int, 3>> conic_normalize(Int a, Int b, Int c, int depth) {
  if (a == 0) return std::array<Int, 3>{1, 0, 0};
  if (b == 0) return std::array<Int, 3>{0, 1, 0};
  if (c == 0) return std::array<Int, 3>{0, 0, 1};
  Int g = gcd(gcd(abs(a), abs(b)), abs(c));
  a /= g;
  b /= g;
  c /= g;
  // inputs passed by the caller get unlimited factoring effort; descent
  // intermediates run under the budget so a stuck branch can be abandoned
  std::uint64_t cap = (depth == 0) ? 0 : kDescentFactorCap;
  Int sa, sb, sc;
  auto a1o = squarefree_part_capped(a, &sa, cap), b1o = squarefree_part_capped(b, &sb, cap),
       c1o = squarefree_part_capped(c, &sc, cap);
  if (!a1o || !b1o || !c1o) throw ConicStuck{};
  Int a1 = *a1o, b1 = *b1o, c1 = *c1o;
  if (!(sa == 1 && sb == 1 && sc == 1)) {
    auto sol = conic_normalize(a1, b1, c1, depth);
    if (!sol) return std::nullopt;
    std::array<Int, 3> v{(*sol)[0] * sb * sc, (*sol)[1] * sa * sc, (*sol)[2] * sa * sb};
    divide_out_gcd(v);
    return v;
  }
  // peel a common factor of a pair: h | a, b forces h | z since gcd(h, c) = 1,
  // so substituting z = h z' and dividing by h gives (a/h, b/h, c h)
  std::array<Int, 3> co{a, b, c};
  for (int zslot = 2; zslot >= 0; --zslot) {
    int i = (zslot + 1) % 3, j = (zslot + 2) % 3;
    Int h = gcd(abs(co[i]), abs(co[j]));
    if (h > 1) {
      std::array<Int, 3> peeled;
      peeled[i] = co[i] / h;
      peeled[j] = co[j] / h;
      peeled[zslot] = co[zslot] * h;
      auto sol = conic_normalize(peeled[0], peeled[1], peeled[2], depth);
      if (!sol) return std::nullopt;
      std::array<Int, 3> v = *sol;
      v[zslot] *= h;
      divide_out_gcd(v);
      return v;
    }
  }
  return conic_descend(a, b, c, depth);
}

// Lagrange descent on squarefree pairwise-coprime coefficients.
inline std::optional<std::array<Int, 3>> conic_descend(Int a, Int b, Int c, int depth) {
  if (depth > 200) throw DomainError("conic solver: descent did not converge");
  bool pos = a > 0 || b > 0 || c > 0;
  bool neg = a < 0 || b < 0 || c < 0;
  if (!pos || !neg) return std::nullopt;  // definite form
  // order so |c| is the largest; remember the permutation
  std::array<int, 3> perm{0, 1, 2};
  std::array<Int, 3> co{a, b, c};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (abs(co[perm[i]]) > abs(co[perm[j]])) std::swap(perm[i], perm[j]);
  Int pa = co[perm[0]], pb = co[perm[1]], pc = co[perm[2]];
  auto unpermute = [&](const std::array<Int, 3>& w) {
    std::array<Int, 3> v;
    v[perm[0]] = w[0];
    v[perm[1]] = w[1];
    v[perm[2]] = w[2];
    return v;
  };
  if (abs(pc) <= 256) {
    // also flip signs so that at most one coefficient is negative with the
    // brute force solving for the x slot
    auto sol = conic_brute(pa, pb, pc);
    if (sol) return unpermute(*sol);
    sol = conic_brute(pb, pa, pc);
    if (sol) return unpermute(std::array<Int, 3>{(*sol)[1], (*sol)[0], (*sol)[2]});
    sol = conic_brute(pc, pa, pb);
    if (sol) return unpermute(std::array<Int, 3>{(*sol)[1], (*sol)[2], (*sol)[0]});
    return std::nullopt;
  }
  // t^2 = -ab (mod c)
  Int ab = pa * pb;
  Int cc = abs(pc);
  std::map<Int, int> cf;
  if (!factor_into_capped(cc, cf, kDescentFactorCap)) throw ConicStuck{};
  std::vector<Int> primes;
  for (const auto& [p, e] : cf) primes.push_back(p);
  Int res = ((-ab) % cc + cc) % cc;
  std::vector<Int> roots(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    auto r = sqrt_mod_prime(res, primes[i]);
    if (!r) return std::nullopt;
    roots[i] = *r;
  }
  // Any t with t^2 = -ab (mod c) descends to an equivalent conic, so if one
  // branch hits an intermediate the factoring budget cannot crack, flipping
  // root signs (and sliding t by c) picks a different, equally valid branch.
  int nmask = 1 << std::min<std::size_t>(primes.size(), std::size_t(4));
  for (int variant = 0; variant < 2 * nmask; ++variant) {
    int mask = variant % nmask, slide = variant / nmask;
    Int t(0), mod(1);
    for (size_t i = 0; i < primes.size(); ++i) {
      const Int& p = primes[i];
      Int ri = (i < 4 && ((mask >> i) & 1)) ? Int((p - roots[i]) % p) : roots[i];
      Int pinv;
      if (mpz_invert(pinv.get_mpz_t(), mod.get_mpz_t(), p.get_mpz_t()) == 0)
        throw DomainError("conic solver: repeated prime in squarefree modulus");
      Int step = ((ri - t) % p * pinv) % p;
      if (step < 0) step += p;
      t += mod * step;
      mod *= p;
    }
    if (t > cc / 2) t -= cc;  // balanced representative
    if (slide == 1) t += (t >= 0) ? -cc : cc;
    Int m = (t * t + ab) / pc;
    if (m == 0) {
      // t^2 = -ab exactly: (t, a, 0) solves
      std::array<Int, 3> w{t, pa, Int(0)};
      divide_out_gcd(w);
      return unpermute(w);
    }
    std::optional<std::array<Int, 3>> child;
    try {
      child = conic_normalize(pa, pb, m, depth + 1);
    } catch (const ConicStuck&) {
      continue;
    }
    if (!child) return std::nullopt;
    const auto& [X, Y, W] = *child;
    std::array<Int, 3> w{t * X + pb * Y, t * Y - pa * X, m * W};
    divide_out_gcd(w);
    return unpermute(w);
  }
  throw ConicStuck{};
}

}  // namespace detail

// Primitive nontrivial integer solution of a x^2 + b y^2 + c z^2 = 0, if any.
inline std::optional<std::array<Int, 3>> solve_conic(const Int& a, const Int& b, const Int& c) {
  std::optional<std::array<Int, 3>> sol;
  try {
    sol = detail::conic_normalize(a, b, c, 0);
  } catch (const detail::ConicStuck&) {
    throw DomainError("conic solver: factoring budget exhausted on every branch");
  }
  if (sol) {
    const auto& [x, y, z] = *sol;
    if (a * x * x + b * y * y + c * z * z != 0 || (x == 0 && y == 0 && z == 0))
      throw DomainError("conic solver: internal verification failed");
  }
  return sol;
}

// Nonzero v with v^T gram v = 0 for an indefinite symmetric rational matrix,
// through congruence diagonalization and the ternary solver.
inline std::optional<QVec> isotropic_vector(const QMat& gram) {
  if (gram.rows != 3 || gram.cols != 3) throw ShapeError("isotropic_vector: need a 3x3 form");
  QMat p;
  QVec diag;
  Signature sig = congruence_signature(gram, &p, &diag);
  for (int i = 0; i < 3; ++i)
    if (diag[i] == 0) return p.col(i);
  if (sig.positive == 3 || sig.negative == 3) return std::nullopt;
  Int den(1);
  for (int i = 0; i < 3; ++i) den = lcm(den, Int(diag[i].get_den()));
  std::array<Int, 3> co;
  for (int i = 0; i < 3; ++i) {
    Rat scaled = diag[i] * Rat(den);
    co[i] = Int(scaled.get_num());
  }
  auto sol = solve_conic(co[0], co[1], co[2]);
  if (!sol) return std::nullopt;
  QVec v(3, Rat(0));
  for (int i = 0; i < 3; ++i) v = vec_add(v, vec_scale(Rat((*sol)[i]), p.col(i)));
  return v;
}

}  // namespace nt
}  // namespace homspace
