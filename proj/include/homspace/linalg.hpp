// Dense exact linear algebra over a field scalar K (rationals by default):
// elimination, solving, nullspaces, characteristic polynomials, subspaces,
// and congruence diagonalization for signatures.
#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace homspace {

template <class K>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, K(0)) {}

  static Mat zero(int r, int c) { return Mat(r, c); }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }
  static Mat from_rows(const std::vector<std::vector<K>>& rows_in) {
    Mat m(static_cast<int>(rows_in.size()),
          rows_in.empty() ? 0 : static_cast<int>(rows_in[0].size()));
    for (int i = 0; i < m.rows; ++i) {
      if (static_cast<int>(rows_in[i].size()) != m.cols) throw ShapeError("ragged rows");
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
  }
  static Mat column(const std::vector<K>& v) {
    Mat m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows; ++i) m.at(i, 0) = v[i];
    return m;
  }

  K& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const K& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  std::vector<K> col(int j) const {
    std::vector<K> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }
  std::vector<K> row(int i) const {
    std::vector<K> v(cols);
    for (int j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
  }
  void set_col(int j, const std::vector<K>& v) {
    for (int i = 0; i < rows; ++i) at(i, j) = v[i];
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = i + 1; j < cols; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  }

  bool is_zero() const {
    for (const K& x : a)
      if (!(x == K(0))) return false;
    return true;
  }

  K trace() const {
    if (rows != cols) throw ShapeError("trace of non-square matrix");
    K t(0);
    for (int i = 0; i < rows; ++i) t += at(i, i);
    return t;
  }

  Mat operator+(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw ShapeError("matrix add shape mismatch");
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw ShapeError("matrix sub shape mismatch");
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Mat operator-() const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = -a[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols != o.rows) throw ShapeError("matrix mul shape mismatch");
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const K& x = at(i, k);
        if (x == K(0)) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }
  Mat operator*(const K& s) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
    return r;
  }
  std::vector<K> operator*(const std::vector<K>& v) const {
    if (cols != static_cast<int>(v.size())) throw ShapeError("matrix-vector shape mismatch");
    std::vector<K> r(rows, K(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!(at(i, j) == K(0))) r[i] += at(i, j) * v[j];
    return r;
  }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using QMat = Mat<Rat>;
using QVec = std::vector<Rat>;

template <class K>
std::vector<K> vec_add(const std::vector<K>& x, const std::vector<K>& y) {
  std::vector<K> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}
template <class K>
std::vector<K> vec_sub(const std::vector<K>& x, const std::vector<K>& y) {
  std::vector<K> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}
// The scalar has its own template parameter so expression-template scalars
// (GMP intermediates) bind without materializing first.
template <class S, class K>
std::vector<K> vec_scale(const S& s, const std::vector<K>& x) {
  std::vector<K> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = K(s * x[i]);
  return r;
}
template <class K>
bool vec_is_zero(const std::vector<K>& x) {
  for (const K& v : x)
    if (!(v == K(0))) return false;
  return true;
}
template <class K>
std::vector<K> unit_vec(int n, int i) {
  std::vector<K> v(n, K(0));
  v[i] = K(1);
  return v;
}

// Row echelon reduction in place.  Returns pivot columns.  Fully reduced
// (Gauss-Jordan) so nullspace extraction is immediate.
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!(m.at(i, c) == K(0))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    K inv = K(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == K(0)) continue;
      K f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
int rank(Mat<K> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the kernel of m, as columns.
template <class K>
Mat<K> nullspace(Mat<K> m) {
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  int k = m.cols - static_cast<int>(piv.size());
  Mat<K> ns(m.cols, k);
  int out = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    ns.at(c, out) = K(1);
    for (size_t r = 0; r < piv.size(); ++r) ns.at(piv[r], out) = -m.at(static_cast<int>(r), c);
    ++out;
  }
  return ns;
}

template <class K>
struct SolveResult {
  bool solvable = false;
  Mat<K> particular;  // cols(a) x cols(b)
  Mat<K> kernel;      // cols(a) x nullity
};

// Exact solution of a x = b together with the kernel of a.
template <class K>
SolveResult<K> solve(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows != b.rows) throw ShapeError("solve: row mismatch");
  Mat<K> aug(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) aug.at(i, a.cols + j) = b.at(i, j);
  }
  std::vector<int> piv = rref(aug);
  SolveResult<K> res;
  for (int c : piv)
    if (c >= a.cols) return res;  // inconsistent
  res.solvable = true;
  res.particular = Mat<K>(a.cols, b.cols);
  for (size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < b.cols; ++j) res.particular.at(piv[r], j) = aug.at(static_cast<int>(r), a.cols + j);
  std::vector<bool> is_piv(a.cols, false);
  for (int c : piv) is_piv[c] = true;
  int nul = a.cols - static_cast<int>(piv.size());
  res.kernel = Mat<K>(a.cols, nul);
  int out = 0;
  for (int c = 0; c < a.cols; ++c) {
    if (is_piv[c]) continue;
    res.kernel.at(c, out) = K(1);
    for (size_t r = 0; r < piv.size(); ++r) res.kernel.at(piv[r], out) = -aug.at(static_cast<int>(r), c);
    ++out;
  }
  return res;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
  if (m.rows != m.cols) throw ShapeError("inverse of non-square matrix");
  SolveResult<K> s = solve(m, Mat<K>::identity(m.rows));
  if (!s.solvable || s.kernel.cols != 0) return std::nullopt;
  return s.particular;
}

template <class K>
K det(Mat<K> m) {
  if (m.rows != m.cols) throw ShapeError("det of non-square matrix");
  K d(1);
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (!(m.at(i, c) == K(0))) {
        p = i;
        break;
      }
    if (p < 0) return K(0);
    if (p != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d = d * m.at(c, c);
    K inv = K(1) / m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c) == K(0)) continue;
      K f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(c, j);
    }
  }
  return d;
}

// Characteristic polynomial det(xI - m) by the Faddeev-LeVerrier recursion;
// coefficient k of the result multiplies x^k.
template <class K>
std::vector<K> char_poly(const Mat<K>& m) {
  if (m.rows != m.cols) throw ShapeError("char_poly of non-square matrix");
  int n = m.rows;
  std::vector<K> c(static_cast<size_t>(n) + 1, K(0));
  c[n] = K(1);
  Mat<K> mk = Mat<K>::zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk;
    for (int i = 0; i < n; ++i) mk.at(i, i) += c[n - k + 1];
    K t = (m * mk).trace();
    c[n - k] = -t / K(k);
  }
  return c;
}

struct Signature {
  int positive = 0, negative = 0, zero = 0;
  int dim() const { return positive + negative + zero; }
  bool operator==(const Signature& o) const {
    return positive == o.positive && negative == o.negative && zero == o.zero;
  }
  bool is_lorentzian() const { return negative == 1 && zero == 0 && positive == dim() - 1; }
  bool is_positive_definite() const { return negative == 0 && zero == 0; }
  bool is_positive_semidefinite() const { return negative == 0; }
  bool is_negative_definite() const { return positive == 0 && zero == 0; }
  std::string str() const {
    std::ostringstream os;
    os << "(" << positive << "," << negative << "," << zero << ")";
    return os.str();
  }
};

// Sylvester inertia by exact symmetric congruence elimination.  If basis_out
// is given, it receives an invertible P with P^T m P diagonal, so column i of
// P is a vector of diagonal value (P^T m P)_{ii}.
inline Signature congruence_signature(QMat m, QMat* basis_out = nullptr, QVec* diag_out = nullptr) {
  if (m.rows != m.cols) throw ShapeError("congruence_signature: non-square matrix");
  if (!m.is_symmetric()) throw ShapeError("congruence_signature: non-symmetric matrix");
  int n = m.rows;
  QMat p = QMat::identity(n);
  auto add_col = [&](int dst, int src, const Rat& f) {
    // col_dst += f * col_src, and same on rows, keeping m symmetric.
    for (int i = 0; i < n; ++i) m.at(i, dst) += f * m.at(i, src);
    for (int j = 0; j < n; ++j) m.at(dst, j) += f * m.at(src, j);
    for (int i = 0; i < n; ++i) p.at(i, dst) += f * p.at(i, src);
  };
  auto swap_cols = [&](int x, int y) {
    for (int i = 0; i < n; ++i) std::swap(m.at(i, x), m.at(i, y));
    for (int j = 0; j < n; ++j) std::swap(m.at(x, j), m.at(y, j));
    for (int i = 0; i < n; ++i) std::swap(p.at(i, x), p.at(i, y));
  };
  for (int k = 0; k < n; ++k) {
    if (m.at(k, k) == 0) {
      int dpos = -1;
      for (int i = k + 1; i < n; ++i)
        if (!(m.at(i, i) == 0)) {
          dpos = i;
          break;
        }
      if (dpos >= 0) {
        swap_cols(k, dpos);
      } else {
        // All remaining diagonal entries vanish; pull in an off-diagonal one.
        int oi = -1, oj = -1;
        for (int i = k; i < n && oi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (!(m.at(i, j) == 0)) {
              oi = i;
              oj = j;
              break;
            }
        if (oi < 0) break;  // zero block, done
        if (oi != k) swap_cols(k, oi);
        // now m(k, oj) != 0 and m(k,k) = m(oj,oj) = 0: adding column oj
        // makes m(k,k) = 2 m(k,oj) != 0.
        add_col(k, oj, Rat(1));
      }
    }
    Rat piv = m.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (m.at(i, k) == 0) continue;
      add_col(i, k, -m.at(i, k) / piv);
    }
  }
  Signature sig;
  for (int i = 0; i < n; ++i) {
    if (m.at(i, i) > 0)
      ++sig.positive;
    else if (m.at(i, i) < 0)
      ++sig.negative;
    else
      ++sig.zero;
  }
  if (basis_out) *basis_out = p;
  if (diag_out) {
    diag_out->resize(n);
    for (int i = 0; i < n; ++i) (*diag_out)[i] = m.at(i, i);
  }
  return sig;
}

// Column span of a rational matrix inside a fixed ambient space.
struct Subspace {
  int ambient = 0;
  QMat basis;  // ambient x dim, full column rank

  Subspace() = default;
  explicit Subspace(int amb) : ambient(amb), basis(amb, 0) {}

  static Subspace zero(int amb) { return Subspace(amb); }
  static Subspace full(int amb) {
    Subspace s(amb);
    s.basis = QMat::identity(amb);
    return s;
  }

  int dim() const { return basis.cols; }
  bool is_zero() const { return basis.cols == 0; }

  bool contains(const QVec& v) const {
    if (static_cast<int>(v.size()) != ambient) throw ShapeError("subspace contains: dim mismatch");
    if (vec_is_zero(v)) return true;
    QMat aug(ambient, basis.cols + 1);
    for (int i = 0; i < ambient; ++i) {
      for (int j = 0; j < basis.cols; ++j) aug.at(i, j) = basis.at(i, j);
      aug.at(i, basis.cols) = v[i];
    }
    return rank(aug) == basis.cols;
  }
  bool contains(const Subspace& o) const {
    if (o.ambient != ambient) throw ShapeError("subspace contains: ambient mismatch");
    for (int j = 0; j < o.basis.cols; ++j)
      if (!contains(o.basis.col(j))) return false;
    return true;
  }
  bool operator==(const Subspace& o) const { return contains(o) && o.contains(*this); }
};

// Span of the given columns; keeps the first maximal independent subset.
// One elimination pass: the pivot columns of the rref are exactly that subset.
inline Subspace span_cols(const QMat& vectors) {
  Subspace s(vectors.rows);
  QMat work = vectors;
  std::vector<int> piv = rref(work);
  QMat acc(vectors.rows, static_cast<int>(piv.size()));
  for (size_t j = 0; j < piv.size(); ++j) acc.set_col(static_cast<int>(j), vectors.col(piv[j]));
  s.basis = acc;
  return s;
}

inline Subspace span_vecs(int ambient, const std::vector<QVec>& vs) {
  QMat m(ambient, static_cast<int>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j) m.set_col(static_cast<int>(j), vs[j]);
  return span_cols(m);
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw ShapeError("subspace sum: ambient mismatch");
  QMat m(a.ambient, a.basis.cols + b.basis.cols);
  for (int i = 0; i < a.ambient; ++i) {
    for (int j = 0; j < a.basis.cols; ++j) m.at(i, j) = a.basis.at(i, j);
    for (int j = 0; j < b.basis.cols; ++j) m.at(i, a.basis.cols + j) = b.basis.at(i, j);
  }
  return span_cols(m);
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw ShapeError("subspace intersect: ambient mismatch");
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient);
  // Null vectors of [A | -B] give x with A x1 = B x2.
  QMat m(a.ambient, a.basis.cols + b.basis.cols);
  for (int i = 0; i < a.ambient; ++i) {
    for (int j = 0; j < a.basis.cols; ++j) m.at(i, j) = a.basis.at(i, j);
    for (int j = 0; j < b.basis.cols; ++j) m.at(i, a.basis.cols + j) = -b.basis.at(i, j);
  }
  QMat ns = nullspace(m);
  QMat gens(a.ambient, ns.cols);
  for (int c = 0; c < ns.cols; ++c) {
    QVec x1(ns.rows, Rat(0));
    for (int r = 0; r < a.basis.cols; ++r) x1[r] = ns.at(r, c);
    QVec v(a.ambient, Rat(0));
    for (int i = 0; i < a.ambient; ++i)
      for (int j = 0; j < a.basis.cols; ++j) v[i] += a.basis.at(i, j) * x1[j];
    gens.set_col(c, v);
  }
  return span_cols(gens);
}

}  // namespace homspace
