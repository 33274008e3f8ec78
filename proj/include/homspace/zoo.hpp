// Constructors for the small stable of algebras the tool works with, the
// lambda parameter bookkeeping for twisted Heisenberg algebras, and the
// name-based algebra parser used by the CLI ("sl2+heL(1,2,2)" and friends).
#pragma once

#include <cctype>
#include <numeric>
#include <string>
#include <vector>

#include "lie.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace homspace {

namespace detail {
inline std::vector<Rat> zero_tensor(int n) {
  return std::vector<Rat>(static_cast<size_t>(n) * n * n, Rat(0));
}
inline void set_bracket(std::vector<Rat>& t, int n, int i, int j, int k, const Rat& v) {
  t[(static_cast<size_t>(i) * n + j) * n + k] = v;
  t[(static_cast<size_t>(j) * n + i) * n + k] = -v;
}
}  // namespace detail

// [e,f] = h, [h,e] = 2e, [h,f] = -2f.
inline LieAlgebra make_sl2() {
  auto t = detail::zero_tensor(3);
  detail::set_bracket(t, 3, 0, 1, 2, Rat(1));
  detail::set_bracket(t, 3, 2, 0, 0, Rat(2));
  detail::set_bracket(t, 3, 2, 1, 1, Rat(-2));
  return LieAlgebra::make(3, {"e", "f", "h"}, std::move(t));
}

// [X,Y] = Y.
inline LieAlgebra make_aff() {
  auto t = detail::zero_tensor(2);
  detail::set_bracket(t, 2, 0, 1, 1, Rat(1));
  return LieAlgebra::make(2, {"X", "Y"}, std::move(t));
}

// Cyclic brackets [a,b]=c, [b,c]=a, [c,a]=b.
inline LieAlgebra make_so3() {
  auto t = detail::zero_tensor(3);
  detail::set_bracket(t, 3, 0, 1, 2, Rat(1));
  detail::set_bracket(t, 3, 1, 2, 0, Rat(1));
  detail::set_bracket(t, 3, 2, 0, 1, Rat(1));
  return LieAlgebra::make(3, {"a", "b", "c"}, std::move(t));
}

inline LieAlgebra make_abelian(int n) {
  if (n < 0) throw DomainError("abelian: negative dimension");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("A" + std::to_string(i + 1));
  return LieAlgebra::make(n, std::move(labels), detail::zero_tensor(n));
}

// Heisenberg algebra of dimension 2d+1, basis Z, X1, Y1, ..., Xd, Yd
// with [X_k, Y_k] = Z.
inline LieAlgebra make_heisenberg(int d) {
  if (d < 1) throw DomainError("heisenberg: need d >= 1");
  int n = 2 * d + 1;
  auto t = detail::zero_tensor(n);
  std::vector<std::string> labels = {"Z"};
  for (int k = 0; k < d; ++k) {
    int x = 1 + 2 * k, y = 2 + 2 * k;
    detail::set_bracket(t, n, x, y, 0, Rat(1));
    labels.push_back("X" + std::to_string(k + 1));
    labels.push_back("Y" + std::to_string(k + 1));
  }
  return LieAlgebra::make(n, std::move(labels), std::move(t));
}

// Twisted Heisenberg algebra: basis T, Z, X1, Y1, ..., Xd, Yd with
//   [X_k, Y_k] = lambda_k Z, [T, X_k] = lambda_k Y_k, [T, Y_k] = -lambda_k X_k.
inline LieAlgebra make_twisted_heisenberg(const std::vector<Rat>& lambda) {
  int d = static_cast<int>(lambda.size());
  if (d < 1) throw DomainError("twisted heisenberg: need at least one lambda");
  for (const Rat& l : lambda)
    if (!(l > 0)) throw DomainError("twisted heisenberg: lambdas must be positive");
  int n = 2 * d + 2;
  auto t = detail::zero_tensor(n);
  std::vector<std::string> labels = {"T", "Z"};
  for (int k = 0; k < d; ++k) {
    int x = 2 + 2 * k, y = 3 + 2 * k;
    detail::set_bracket(t, n, x, y, 1, lambda[k]);
    detail::set_bracket(t, n, 0, x, y, lambda[k]);
    detail::set_bracket(t, n, 0, y, x, -lambda[k]);
    labels.push_back("X" + std::to_string(k + 1));
    labels.push_back("Y" + std::to_string(k + 1));
  }
  return LieAlgebra::make(n, std::move(labels), std::move(t));
}

inline LieAlgebra make_twisted_heisenberg(const std::vector<Int>& lambda) {
  std::vector<Rat> l;
  for (const Int& x : lambda) l.push_back(Rat(x));
  return make_twisted_heisenberg(l);
}

// --- lambda tuples ----------------------------------------------------------
//
// Two positive tuples parametrize the same algebra up to isomorphism when one
// is a permutation of a positive multiple of the other.  The canonical
// representative is integral, sorted ascending, with gcd 1.

using Lambda = std::vector<Int>;

inline Lambda lambda_canonicalize(const std::vector<Rat>& raw) {
  if (raw.empty()) throw DomainError("lambda: empty tuple");
  Int den(1);
  for (const Rat& q : raw) {
    if (!(q > 0)) throw DomainError("lambda: entries must be positive");
    den = lcm(den, Int(q.get_den()));
  }
  Lambda out;
  Int g(0);
  for (const Rat& q : raw) {
    Rat scaled = q * Rat(den);
    out.push_back(Int(scaled.get_num()));
    g = gcd(g, out.back());
  }
  for (Int& x : out) x /= g;
  std::sort(out.begin(), out.end());
  return out;
}

inline Lambda lambda_canonicalize(const Lambda& raw) {
  std::vector<Rat> q;
  for (const Int& x : raw) q.push_back(Rat(x));
  return lambda_canonicalize(q);
}

inline bool lambda_equivalent(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) return false;
  return lambda_canonicalize(a) == lambda_canonicalize(b);
}

inline std::string lambda_str(const Lambda& l) {
  std::string s = "(";
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) s += ",";
    s += l[i].get_str();
  }
  return s + ")";
}

inline std::vector<Rat> parse_rat_list(const std::string& body) {
  std::vector<Rat> out;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      out.push_back(rat_parse(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(rat_parse(cur));
  if (out.empty()) throw ParseError("empty number list");
  return out;
}

// Standard Lorentz form on a twisted Heisenberg algebra in the basis above:
// X, Y orthonormal, T and Z null with <T,Z> = 1, and s(T,Z) orthogonal to
// the span of the X, Y.
inline QMat standard_lorentz_form(int d) {
  int n = 2 * d + 2;
  QMat m(n, n);
  m.at(0, 1) = Rat(1);
  m.at(1, 0) = Rat(1);
  for (int i = 2; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

// --- name parser ------------------------------------------------------------
//
// Grammar: name := term ('+' term)*
//          term := "sl2" | "aff" | "so3" | "abelian(n)" | "he(d)"
//                | "heL(q1,...,qd)"

inline LieAlgebra algebra_from_name(const std::string& name) {
  std::vector<LieAlgebra> parts;
  std::string s;
  for (char ch : name)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = pos;
    int depth = 0;
    while (next < s.size() && (s[next] != '+' || depth > 0)) {
      if (s[next] == '(') ++depth;
      if (s[next] == ')') --depth;
      ++next;
    }
    std::string term = s.substr(pos, next - pos);
    if (term.empty()) throw ParseError("empty term in algebra name '" + name + "'");
    if (term == "sl2") {
      parts.push_back(make_sl2());
    } else if (term == "aff") {
      parts.push_back(make_aff());
    } else if (term == "so3") {
      parts.push_back(make_so3());
    } else {
      size_t open = term.find('(');
      if (open == std::string::npos || term.back() != ')')
        throw ParseError("unrecognized algebra name '" + term + "'");
      std::string head = term.substr(0, open);
      std::string body = term.substr(open + 1, term.size() - open - 2);
      if (head == "abelian") {
        parts.push_back(make_abelian(std::stoi(body)));
      } else if (head == "he") {
        parts.push_back(make_heisenberg(std::stoi(body)));
      } else if (head == "heL") {
        parts.push_back(make_twisted_heisenberg(parse_rat_list(body)));
      } else {
        throw ParseError("unrecognized algebra name '" + term + "'");
      }
    }
    pos = next + (next < s.size() ? 1 : 0);
  }
  if (parts.empty()) throw ParseError("empty algebra name");
  if (parts.size() == 1) return parts[0];
  return direct_sum(parts);
}

}  // namespace homspace
