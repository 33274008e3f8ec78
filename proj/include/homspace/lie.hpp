// Lie algebras over the rationals given by dense structure-constant tensors,
// with the standard structural toolbox: brackets, adjoints, Killing form,
// center, derived and lower central series, direct sums, change of basis.
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace homspace {

struct JacobiReport {
  Rat residual;               // max norm over all basis triples
  std::array<int, 3> worst;   // triple attaining it
  bool antisymmetric = true;  // c[i][j][k] == -c[j][i][k] everywhere
  bool ok() const { return antisymmetric && residual == 0; }
};

class LieAlgebra {
 public:
  int n = 0;
  std::vector<std::string> labels;

  static LieAlgebra make(int dim, std::vector<std::string> labels, std::vector<Rat> tensor) {
    LieAlgebra g = make_unchecked(dim, std::move(labels), std::move(tensor));
    JacobiReport rep = g.verify_jacobi();
    if (!rep.antisymmetric) throw JacobiError("structure tensor not antisymmetric");
    if (!(rep.residual == 0))
      throw JacobiError("Jacobi identity fails at triple (" + g.labels[rep.worst[0]] + "," +
                        g.labels[rep.worst[1]] + "," + g.labels[rep.worst[2]] + ")");
    return g;
  }

  // For inspection of possibly invalid tensors (verification fixtures, raw
  // file input); every structural operation still works.
  static LieAlgebra make_unchecked(int dim, std::vector<std::string> labels, std::vector<Rat> tensor) {
    LieAlgebra g;
    g.n = dim;
    if (static_cast<int>(labels.size()) != dim) {
      labels.resize(dim);
      for (int i = 0; i < dim; ++i)
        if (labels[i].empty()) labels[i] = "b" + std::to_string(i + 1);
    }
    g.labels = std::move(labels);
    if (tensor.size() != static_cast<size_t>(dim) * dim * dim)
      throw ShapeError("structure tensor has wrong size");
    g.c = std::move(tensor);
    return g;
  }

  const Rat& sc(int i, int j, int k) const { return c[(static_cast<size_t>(i) * n + j) * n + k]; }
  Rat& sc(int i, int j, int k) { return c[(static_cast<size_t>(i) * n + j) * n + k]; }

  QVec bracket(const QVec& x, const QVec& y) const {
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
      throw ShapeError("bracket: vector dimension mismatch");
    QVec r(n, Rat(0));
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        Rat f = x[i] * y[j];
        for (int k = 0; k < n; ++k) {
          const Rat& s = sc(i, j, k);
          if (!(s == 0)) r[k] += f * s;
        }
      }
    }
    return r;
  }

  QVec bracket_basis(int i, int j) const {
    QVec r(n);
    for (int k = 0; k < n; ++k) r[k] = sc(i, j, k);
    return r;
  }

  QMat ad(const QVec& x) const {
    QMat m(n, n);
    for (int j = 0; j < n; ++j) {
      QVec col = bracket(x, unit_vec<Rat>(n, j));
      m.set_col(j, col);
    }
    return m;
  }
  QMat ad_basis(int i) const { return ad(unit_vec<Rat>(n, i)); }

  JacobiReport verify_jacobi() const {
    JacobiReport rep;
    rep.residual = Rat(0);
    rep.worst = {0, 0, 0};
    for (int i = 0; i < n && rep.antisymmetric; ++i)
      for (int j = 0; j < n && rep.antisymmetric; ++j)
        for (int k = 0; k < n; ++k)
          if (!(sc(i, j, k) == -sc(j, i, k))) {
            rep.antisymmetric = false;
            rep.worst = {i, j, k};
            break;
          }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          QVec s = bracket(bracket_basis(i, j), unit_vec<Rat>(n, k));
          QVec t = bracket(bracket_basis(j, k), unit_vec<Rat>(n, i));
          QVec u = bracket(bracket_basis(k, i), unit_vec<Rat>(n, j));
          for (int l = 0; l < n; ++l) {
            Rat v = rat_abs(s[l] + t[l] + u[l]);
            if (v > rep.residual) {
              rep.residual = v;
              rep.worst = {i, j, k};
            }
          }
        }
    return rep;
  }

  std::vector<Rat> c;  // structure tensor, c[i][j][k] flattened
};

inline QMat killing_form(const LieAlgebra& g) {
  std::vector<QMat> ads(g.n);
  for (int i = 0; i < g.n; ++i) ads[i] = g.ad_basis(i);
  QMat b(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j) {
      Rat t = (ads[i] * ads[j]).trace();
      b.at(i, j) = t;
      b.at(j, i) = t;
    }
  return b;
}

inline Subspace center(const LieAlgebra& g) {
  // x central iff sum_i x_i c[i][j][k] = 0 for all j, k.
  QMat a(g.n * g.n, g.n);
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k)
      for (int i = 0; i < g.n; ++i) a.at(j * g.n + k, i) = g.sc(i, j, k);
  QMat ns = nullspace(a);
  return span_cols(ns);
}

inline Subspace bracket_span(const LieAlgebra& g, const Subspace& x, const Subspace& y) {
  std::vector<QVec> gens;
  for (int i = 0; i < x.basis.cols; ++i)
    for (int j = 0; j < y.basis.cols; ++j) gens.push_back(g.bracket(x.basis.col(i), y.basis.col(j)));
  if (gens.empty()) return Subspace::zero(g.n);
  return span_vecs(g.n, gens);
}

inline Subspace derived(const LieAlgebra& g) {
  Subspace full = Subspace::full(g.n);
  return bracket_span(g, full, full);
}

inline std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  std::vector<Subspace> series;
  series.push_back(Subspace::full(g.n));
  while (true) {
    Subspace next = bracket_span(g, Subspace::full(g.n), series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(next);
    if (next.dim() == 0) break;
  }
  return series;
}

inline bool is_abelian(const LieAlgebra& g) { return derived(g).dim() == 0; }

inline bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }

inline Subspace centralizer(const LieAlgebra& g, const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(g.n);
  // x with [x, v] = 0 for every basis column v of s.
  QMat a(g.n * s.basis.cols, g.n);
  for (int v = 0; v < s.basis.cols; ++v) {
    QVec y = s.basis.col(v);
    for (int k = 0; k < g.n; ++k)
      for (int i = 0; i < g.n; ++i) {
        Rat acc(0);
        for (int j = 0; j < g.n; ++j)
          if (!(y[j] == 0)) acc += g.sc(i, j, k) * y[j];
        a.at(v * g.n + k, i) = acc;
      }
  }
  return span_cols(nullspace(a));
}

inline bool is_ideal(const LieAlgebra& g, const Subspace& s) {
  Subspace b = bracket_span(g, Subspace::full(g.n), s);
  return s.contains(b);
}

inline LieAlgebra direct_sum(const std::vector<LieAlgebra>& parts) {
  int n = 0;
  for (const LieAlgebra& p : parts) n += p.n;
  std::vector<std::string> labels;
  for (const LieAlgebra& p : parts)
    for (const std::string& l : p.labels) {
      std::string cand = l;
      int suffix = 2;
      while (std::find(labels.begin(), labels.end(), cand) != labels.end())
        cand = l + "_" + std::to_string(suffix++);
      labels.push_back(cand);
    }
  std::vector<Rat> tensor(static_cast<size_t>(n) * n * n, Rat(0));
  int off = 0;
  for (const LieAlgebra& p : parts) {
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j)
        for (int k = 0; k < p.n; ++k)
          tensor[(static_cast<size_t>(off + i) * n + off + j) * n + off + k] = p.sc(i, j, k);
    off += p.n;
  }
  return LieAlgebra::make(n, std::move(labels), std::move(tensor));
}

// New basis given by the columns of p (expressed in the old basis).
inline LieAlgebra change_basis(const LieAlgebra& g, const QMat& p,
                               std::vector<std::string> new_labels = {}) {
  if (p.rows != g.n || p.cols != g.n) throw ShapeError("change_basis: matrix shape mismatch");
  auto pinv = inverse(p);
  if (!pinv) throw SingularError("change_basis: singular matrix");
  std::vector<Rat> tensor(static_cast<size_t>(g.n) * g.n * g.n, Rat(0));
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      QVec w = g.bracket(p.col(i), p.col(j));
      QVec coords = (*pinv) * w;
      for (int k = 0; k < g.n; ++k) {
        tensor[(static_cast<size_t>(i) * g.n + j) * g.n + k] = coords[k];
        tensor[(static_cast<size_t>(j) * g.n + i) * g.n + k] = -coords[k];
      }
    }
  if (new_labels.empty()) {
    for (int i = 0; i < g.n; ++i) new_labels.push_back("v" + std::to_string(i + 1));
  }
  return LieAlgebra::make(g.n, std::move(new_labels), std::move(tensor));
}

// Subalgebra on the given subspace; requires bracket closure.
inline LieAlgebra restrict_to_subalgebra(const LieAlgebra& g, const Subspace& s,
                                         std::vector<std::string> labels = {}) {
  int k = s.dim();
  std::vector<Rat> tensor(static_cast<size_t>(k) * k * k, Rat(0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      QVec w = g.bracket(s.basis.col(i), s.basis.col(j));
      SolveResult<Rat> sol = solve(s.basis, QMat::column(w));
      if (!sol.solvable) throw DomainError("subspace is not a subalgebra");
      for (int l = 0; l < k; ++l) {
        tensor[(static_cast<size_t>(i) * k + j) * k + l] = sol.particular.at(l, 0);
        tensor[(static_cast<size_t>(j) * k + i) * k + l] = -sol.particular.at(l, 0);
      }
    }
  if (labels.empty())
    for (int i = 0; i < k; ++i) labels.push_back("u" + std::to_string(i + 1));
  return LieAlgebra::make(k, std::move(labels), std::move(tensor));
}

// Linear map between algebras; homomorphism quality is measured, not assumed.
struct LinearMap {
  QMat matrix;  // dst.n x src.n
};

inline Rat bracket_residual(const LieAlgebra& src, const LieAlgebra& dst, const QMat& m) {
  if (m.rows != dst.n || m.cols != src.n) throw ShapeError("bracket_residual: shape mismatch");
  Rat worst(0);
  for (int i = 0; i < src.n; ++i)
    for (int j = i + 1; j < src.n; ++j) {
      QVec lhs = m * src.bracket_basis(i, j);
      QVec rhs = dst.bracket(m.col(i), m.col(j));
      for (int k = 0; k < dst.n; ++k) worst = std::max(worst, rat_abs(lhs[k] - rhs[k]));
    }
  return worst;
}

}  // namespace homspace
