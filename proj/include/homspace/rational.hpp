// Exact rational scalars on top of GMP, plus the small helpers the rest of
// the library needs (parsing, formatting, square testing).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homspace {

using Int = mpz_class;
using Rat = mpq_class;

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& w) : std::runtime_error(w) {}
};
struct SingularError : std::runtime_error {
  explicit SingularError(const std::string& w) : std::runtime_error(w) {}
};
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& w) : std::runtime_error(w) {}
};
struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& w) : std::runtime_error(w) {}
};
struct JacobiError : std::runtime_error {
  explicit JacobiError(const std::string& w) : std::runtime_error(w) {}
};
struct SignatureError : std::runtime_error {
  explicit SignatureError(const std::string& w) : std::runtime_error(w) {}
};
struct InvarianceError : std::runtime_error {
  explicit InvarianceError(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateIsotropyError : std::runtime_error {
  explicit DegenerateIsotropyError(const std::string& w) : std::runtime_error(w) {}
};
struct NotHeisenbergError : std::runtime_error {
  explicit NotHeisenbergError(const std::string& w) : std::runtime_error(w) {}
};
struct NotTwistedHeisenbergError : std::runtime_error {
  explicit NotTwistedHeisenbergError(const std::string& w) : std::runtime_error(w) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  Rat q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// "p/q", or just "p" when the denominator is 1.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Nonnegative q is a square of a rational iff numerator and denominator are
// both integer squares (q canonical).  Returns the nonnegative root.
inline bool rat_is_square(const Rat& q, Rat* root = nullptr) {
  if (q < 0) return false;
  const Int& num = q.get_num();
  const Int& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  if (root) {
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    *root = Rat(rn, rd);
  }
  return true;
}

// FNV-1a over bytes; used for input digests in reports.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace homspace
