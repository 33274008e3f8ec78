// Exact arithmetic in a real quadratic extension Q(sqrt(m)): values a + b*sqrt(m)
// with a fixed positive non-square m.  Values with b = 0 interoperate freely,
// so rational matrices can be promoted entrywise.
#pragma once

#include <string>

#include "rational.hpp"

namespace homspace {

struct QuadExt {
  Rat a, b;  // a + b*sqrt(m)
  Rat m;     // 0 for plain rationals

  QuadExt() : a(0), b(0), m(0) {}
  QuadExt(int v) : a(v), b(0), m(0) {}
  QuadExt(const Rat& v) : a(v), b(0), m(0) {}
  QuadExt(const Rat& a_, const Rat& b_, const Rat& m_) : a(a_), b(b_), m(b_ == 0 ? Rat(0) : m_) {}

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }

  static Rat merge_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.m == 0) return y.m;
    if (y.m == 0 || x.m == y.m) return x.m;
    throw DomainError("mixed quadratic extensions");
  }

  QuadExt operator+(const QuadExt& o) const { return QuadExt(a + o.a, b + o.b, merge_radicand(*this, o)); }
  QuadExt operator-(const QuadExt& o) const { return QuadExt(a - o.a, b - o.b, merge_radicand(*this, o)); }
  QuadExt operator-() const { return QuadExt(-a, -b, m); }
  QuadExt operator*(const QuadExt& o) const {
    Rat rad = merge_radicand(*this, o);
    return QuadExt(a * o.a + b * o.b * rad, a * o.b + b * o.a, rad);
  }
  QuadExt operator/(const QuadExt& o) const {
    Rat rad = merge_radicand(*this, o);
    Rat n = o.a * o.a - o.b * o.b * rad;  // field norm of the conjugate trick
    if (n == 0) throw SingularError("division by zero in quadratic extension");
    QuadExt conj(o.a, -o.b, rad);
    QuadExt prod = *this * conj;
    return QuadExt(prod.a / n, prod.b / n, rad);
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  bool operator==(const QuadExt& o) const {
    if (a != o.a) return false;
    if (b == 0 && o.b == 0) return true;
    return b == o.b && merge_radicand(*this, o) != -1;
  }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  std::string str() const {
    if (b == 0) return rat_str(a);
    std::string s = rat_str(a);
    s += (b > 0 ? "+" : "-");
    s += rat_str(rat_abs(b)) + "*sqrt(" + rat_str(m) + ")";
    return s;
  }
};

// sqrt of a positive rational as a QuadExt: exact rational root when q is a
// square, a + b*sqrt(q) form otherwise.
inline QuadExt quad_sqrt(const Rat& q) {
  if (q < 0) throw DomainError("sqrt of negative rational");
  Rat root;
  if (rat_is_square(q, &root)) return QuadExt(root);
  return QuadExt(Rat(0), Rat(1), q);
}

}  // namespace homspace
