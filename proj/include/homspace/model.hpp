// Reductive models of homogeneous Lorentz spaces and their curvature: the
// general Nomizu engine (the brute-force oracle) and the specialized Ricci
// formula for twisted-Heisenberg-shaped models, cross-validated exactly.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forms.hpp"
#include "lie.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "zoo.hpp"

namespace homspace {

// A Lie algebra g with isotropy subalgebra h, a complement m with
// [h, m] contained in m, and an invariant metric written in m's basis.
// Twisted-Heisenberg-shaped models carry the extra bookkeeping: m-basis
// columns ordered T, Z, X1, Y1, ..., Xd, Yd, W1, ..., Wp.
struct ReductiveModel {
  LieAlgebra g;
  Subspace h;
  Subspace m;
  QMat metric;  // dim(m) x dim(m), in m-basis coordinates

  bool he_shaped = false;
  int d = 0;      // number of lambda entries
  int p_dim = 0;  // dim of p
  std::vector<Rat> lambda;
  Rat zz_in_N = Rat(1);  // (Z,Z) in the metric of the nilpotent leaf
  int t_index = -1, z_index = -1;

  int s_dim() const { return 2 + 2 * d; }
};

// [p, p] structure for model building: i, j index the W basis of p; a term
// index k < p_dim hits W_{k+1}, k == p_dim hits Z.
struct PBracket {
  int i = 0, j = 0;
  std::vector<std::pair<int, Rat>> terms;
};

inline ReductiveModel make_reductive_model(LieAlgebra g, Subspace h, Subspace m, QMat metric) {
  if (h.ambient != g.n || m.ambient != g.n) throw ShapeError("model: subspace ambient mismatch");
  if (h.dim() + m.dim() != g.n || subspace_intersect(h, m).dim() != 0)
    throw ShapeError("model: g is not m + h");
  Subspace hm = bracket_span(g, h, m);
  if (!m.contains(hm)) throw DomainError("model: [h, m] leaves m");
  if (metric.rows != m.dim() || !metric.is_symmetric()) throw ShapeError("model: bad metric");
  if (congruence_signature(metric).zero != 0) throw SignatureError("model: degenerate metric");
  ReductiveModel mod;
  mod.g = std::move(g);
  mod.h = std::move(h);
  mod.m = std::move(m);
  mod.metric = std::move(metric);
  return mod;
}

inline ReductiveModel build_heisenberg_model(const std::vector<Rat>& lambda, int p_dim,
                                             const std::vector<PBracket>& p_brackets,
                                             const QMat& p_metric, const Rat& zz_in_N = Rat(1)) {
  int d = static_cast<int>(lambda.size());
  for (const Rat& l : lambda)
    if (!(l > 0)) throw DomainError("model: lambdas must be positive");
  if (p_dim < 0) throw DomainError("model: negative p dimension");
  if (p_metric.rows != p_dim || p_metric.cols != p_dim || !p_metric.is_symmetric())
    throw ShapeError("model: p metric shape mismatch");
  if (p_dim > 0 && !congruence_signature(p_metric).is_positive_definite())
    throw SignatureError("model: p metric must be positive definite");
  if (!(zz_in_N > 0)) throw SignatureError("model: leaf value (Z,Z) must be positive");

  int sd = 2 + 2 * d, n = sd + p_dim;
  std::vector<Rat> tensor(static_cast<size_t>(n) * n * n, Rat(0));
  std::vector<std::string> labels = {"T", "Z"};
  for (int k = 0; k < d; ++k) {
    int x = 2 + 2 * k, y = 3 + 2 * k;
    detail::set_bracket(tensor, n, x, y, 1, lambda[k]);
    detail::set_bracket(tensor, n, 0, x, y, lambda[k]);
    detail::set_bracket(tensor, n, 0, y, x, -lambda[k]);
    labels.push_back("X" + std::to_string(k + 1));
    labels.push_back("Y" + std::to_string(k + 1));
  }
  for (int j = 0; j < p_dim; ++j) labels.push_back("W" + std::to_string(j + 1));
  for (const PBracket& pb : p_brackets) {
    if (pb.i < 0 || pb.i >= p_dim || pb.j < 0 || pb.j >= p_dim || pb.i == pb.j)
      throw ShapeError("model: bad p bracket indices");
    for (const auto& [k, coeff] : pb.terms) {
      if (k < 0 || k > p_dim) throw ShapeError("model: p bracket target out of range");
      int target = (k == p_dim) ? 1 : sd + k;
      detail::set_bracket(tensor, n, sd + pb.i, sd + pb.j, target, coeff);
    }
  }
  LieAlgebra g = LieAlgebra::make(n, std::move(labels), std::move(tensor));

  QMat metric(n, n);
  QMat s_metric = standard_lorentz_form(d);
  for (int i = 0; i < sd; ++i)
    for (int j = 0; j < sd; ++j) metric.at(i, j) = s_metric.at(i, j);
  for (int i = 0; i < p_dim; ++i)
    for (int j = 0; j < p_dim; ++j) metric.at(sd + i, sd + j) = p_metric.at(i, j);

  ReductiveModel mod = make_reductive_model(std::move(g), Subspace::zero(n), Subspace::full(n),
                                            std::move(metric));
  mod.he_shaped = true;
  mod.d = d;
  mod.p_dim = p_dim;
  mod.lambda = lambda;
  mod.zz_in_N = zz_in_N;
  mod.t_index = 0;
  mod.z_index = 1;
  return mod;
}

// Metric-orthogonal complement of the isotropy algebra; needs kappa
// nondegenerate on h so that g = m + h.
inline Subspace reductive_complement(const LieAlgebra& g, const Subspace& h, const QMat& kappa) {
  if (h.dim() == 0) return Subspace::full(g.n);
  int k = h.dim();
  QMat gram(k, k);
  QMat kh = kappa * h.basis;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat acc(0);
      for (int r = 0; r < g.n; ++r) acc += h.basis.at(r, i) * kh.at(r, j);
      gram.at(i, j) = acc;
    }
  if (congruence_signature(gram).zero != 0)
    throw DegenerateIsotropyError("metric degenerate on the isotropy algebra");
  // x with kappa(x, h_i) = 0: nullspace of h^T kappa.
  QMat sys = h.basis.transpose() * kappa;
  Subspace m = span_cols(nullspace(sys));
  return m;
}

// The Nomizu engine on a reductive model.  All vectors are in m-basis
// coordinates unless noted; ambient decomposition is precomputed once.
class HomogeneousSpace {
 public:
  explicit HomogeneousSpace(ReductiveModel model) : mod_(std::move(model)) {
    int n = mod_.g.n;
    dm_ = mod_.m.dim();
    dh_ = mod_.h.dim();
    QMat basis(n, n);
    for (int j = 0; j < dm_; ++j) basis.set_col(j, mod_.m.basis.col(j));
    for (int j = 0; j < dh_; ++j) basis.set_col(dm_ + j, mod_.h.basis.col(j));
    auto inv = inverse(basis);
    if (!inv) throw ShapeError("model basis is singular");
    decomp_ = *inv;
    auto ginv = inverse(mod_.metric);
    if (!ginv) throw SignatureError("degenerate model metric");
    ginv_ = *ginv;
    // brackets of the m-basis, split into m- and h-parts
    bm_.assign(dm_, std::vector<QVec>(dm_));
    bh_.assign(dm_, std::vector<QVec>(dm_));
    for (int i = 0; i < dm_; ++i)
      for (int j = 0; j < dm_; ++j) {
        QVec w = decomp_ * mod_.g.bracket(mod_.m.basis.col(i), mod_.m.basis.col(j));
        bm_[i][j] = QVec(w.begin(), w.begin() + dm_);
        bh_[i][j] = QVec(w.begin() + dm_, w.end());
      }
    build_u_and_lambda();
  }

  const ReductiveModel& model() const { return mod_; }
  int dim() const { return dm_; }

  Rat inner(const QVec& x, const QVec& y) const {
    Rat acc(0);
    QVec gy = mod_.metric * y;
    for (int i = 0; i < dm_; ++i) acc += x[i] * gy[i];
    return acc;
  }

  QVec bracket_m(const QVec& x, const QVec& y) const {
    QVec r(dm_, Rat(0));
    for (int i = 0; i < dm_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dm_; ++j) {
        if (y[j] == 0) continue;
        Rat f = x[i] * y[j];
        for (int k = 0; k < dm_; ++k) r[k] += f * bm_[i][j][k];
      }
    }
    return r;
  }

  // 2<U(a,b), c> = <[c,a]_m, b> + <a, [c,b]_m>, solved through the Gram matrix.
  QVec u_map(const QVec& x, const QVec& y) const {
    QVec u(dm_, Rat(0));
    for (int i = 0; i < dm_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dm_; ++j) {
        if (y[j] == 0) continue;
        Rat f = x[i] * y[j];
        for (int k = 0; k < dm_; ++k) u[k] += f * u_[i][j][k];
      }
    }
    return u;
  }

  QMat lambda_op(const QVec& x) const {
    QMat l(dm_, dm_);
    for (int i = 0; i < dm_; ++i)
      if (!(x[i] == 0)) l = l + lam_[i] * x[i];
    return l;
  }

  // R(x,y)z = L(x)L(y)z - L(y)L(x)z - L([x,y]_m)z - [[x,y]_h, z]
  QVec curvature(const QVec& x, const QVec& y, const QVec& z) const {
    QMat lx = lambda_op(x), ly = lambda_op(y);
    QVec r = lx * (ly * z);
    r = vec_sub(r, ly * (lx * z));
    r = vec_sub(r, lambda_op(bracket_m(x, y)) * z);
    r = vec_sub(r, h_action(x, y, z));
    return r;
  }

  // Ric(x, y) = trace of v -> R(v, x) y; with the metric nondegenerate this
  // is the metric-dual trace and tolerates lightlike basis directions.
  QMat ricci() const {
    QMat ric(dm_, dm_);
    for (int i = 0; i < dm_; ++i)
      for (int j = 0; j < dm_; ++j) {
        QMat rij = curvature_matrix(i, j);
        for (int k = 0; k < dm_; ++k) ric.at(j, k) += rij.at(i, k);
      }
    return ric;
  }

 private:
  QMat curvature_matrix(int i, int j) const {
    // matrix of z -> R(e_i, e_j) z
    QMat r = lam_[i] * lam_[j] - lam_[j] * lam_[i] - lambda_op(bm_[i][j]);
    if (dh_ > 0) {
      QVec hpart = bh_[i][j];
      bool zero = true;
      for (const Rat& v : hpart)
        if (!(v == 0)) zero = false;
      if (!zero) {
        QVec amb(mod_.g.n, Rat(0));
        for (int c = 0; c < dh_; ++c)
          if (!(hpart[c] == 0)) amb = vec_add(amb, vec_scale(hpart[c], mod_.h.basis.col(c)));
        for (int k = 0; k < dm_; ++k) {
          QVec w = decomp_ * mod_.g.bracket(amb, mod_.m.basis.col(k));
          for (int row = 0; row < dm_; ++row) r.at(row, k) -= w[row];
        }
      }
    }
    return r;
  }

  QVec h_action(const QVec& x, const QVec& y, const QVec& z) const {
    QVec out(dm_, Rat(0));
    if (dh_ == 0) return out;
    QVec hpart(dh_, Rat(0));
    for (int i = 0; i < dm_; ++i)
      for (int j = 0; j < dm_; ++j)
        if (!(x[i] == 0) && !(y[j] == 0))
          for (int c = 0; c < dh_; ++c) hpart[c] += x[i] * y[j] * bh_[i][j][c];
    QVec amb(mod_.g.n, Rat(0));
    for (int c = 0; c < dh_; ++c)
      if (!(hpart[c] == 0)) amb = vec_add(amb, vec_scale(hpart[c], mod_.h.basis.col(c)));
    QVec zamb(mod_.g.n, Rat(0));
    for (int k = 0; k < dm_; ++k)
      if (!(z[k] == 0)) zamb = vec_add(zamb, vec_scale(z[k], mod_.m.basis.col(k)));
    QVec w = decomp_ * mod_.g.bracket(amb, zamb);
    for (int k = 0; k < dm_; ++k) out[k] = w[k];
    return out;
  }

  void build_u_and_lambda() {
    u_.assign(dm_, std::vector<QVec>(dm_));
    for (int i = 0; i < dm_; ++i)
      for (int j = i; j < dm_; ++j) {
        QVec rhs(dm_);
        for (int c = 0; c < dm_; ++c) {
          QVec gci = mod_.metric * bm_[c][i];
          QVec gcj = mod_.metric * bm_[c][j];
          rhs[c] = (gci[j] + gcj[i]) / 2;
        }
        QVec u = ginv_ * rhs;
        u_[i][j] = u;
        u_[j][i] = u;
      }
    lam_.clear();
    for (int i = 0; i < dm_; ++i) {
      QMat l(dm_, dm_);
      for (int j = 0; j < dm_; ++j) {
        QVec col = vec_scale(Rat(1, 2), bm_[i][j]);
        col = vec_add(col, u_[i][j]);
        l.set_col(j, col);
      }
      lam_.push_back(l);
    }
  }

  ReductiveModel mod_;
  int dm_ = 0, dh_ = 0;
  QMat decomp_;  // inverse of [m-basis | h-basis]
  QMat ginv_;
  std::vector<std::vector<QVec>> bm_, bh_;
  std::vector<std::vector<QVec>> u_;
  std::vector<QMat> lam_;
};

inline QMat nomizu_ricci(const ReductiveModel& model) { return HomogeneousSpace(model).ricci(); }

// 2<V(x,y), w> = <[w_p, x_p]_Z, y_T> + <x_T, [w_p, y_p]_Z>, V valued in p.
// With the standard normalization <T, Z> = 1 the pairings reduce to products
// of T-coefficients and Z-bracket-coefficients.
inline QVec v_map(const ReductiveModel& model, const QVec& x, const QVec& y) {
  if (!model.he_shaped) throw DomainError("v_map needs a twisted-Heisenberg-shaped model");
  int sd = model.s_dim(), p = model.p_dim, n = sd + p;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ShapeError("v_map: vector size mismatch");
  auto zc = [&](const QVec& v) { return v[model.z_index]; };
  QVec rhs(p);
  for (int w = 0; w < p; ++w) {
    QVec wp = unit_vec<Rat>(n, sd + w);
    QVec xp(n, Rat(0)), yp(n, Rat(0));
    for (int i = 0; i < p; ++i) {
      xp[sd + i] = x[sd + i];
      yp[sd + i] = y[sd + i];
    }
    Rat term = zc(model.g.bracket(wp, xp)) * y[model.t_index] +
               x[model.t_index] * zc(model.g.bracket(wp, yp));
    rhs[w] = term / 2;
  }
  QMat gp(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) gp.at(i, j) = model.metric.at(sd + i, sd + j);
  auto gpinv = inverse(gp);
  if (!gpinv) throw SignatureError("degenerate p metric");
  QVec vp = (*gpinv) * rhs;
  QVec out(n, Rat(0));
  for (int i = 0; i < p; ++i) out[sd + i] = vp[i];
  return out;
}

// [p, p]_Z = {0}, cross-checked against vanishing of the V map on a basis grid.
inline bool is_special(const ReductiveModel& model) {
  if (!model.he_shaped) throw DomainError("is_special needs a twisted-Heisenberg-shaped model");
  int sd = model.s_dim(), p = model.p_dim, n = sd + p;
  bool bracket_test = true;
  for (int i = 0; i < p && bracket_test; ++i)
    for (int j = i + 1; j < p; ++j)
      if (!(model.g.sc(sd + i, sd + j, model.z_index) == 0)) {
        bracket_test = false;
        break;
      }
  bool v_test = true;
  for (int i = 0; i < n && v_test; ++i)
    for (int j = i; j < n; ++j)
      if (!vec_is_zero(v_map(model, unit_vec<Rat>(n, i), unit_vec<Rat>(n, j)))) {
        v_test = false;
        break;
      }
  if (bracket_test != v_test) throw DomainError("internal: V-map and bracket tests disagree");
  return bracket_test;
}

struct PositivityCertificate {
  Rat lambda_term;   // (1/2) sum of lambda_k^2
  Rat bracket_term;  // (1/4) double sum of squared Z-coefficients
  bool positive = false;
  Rat ricci_tt() const { return lambda_term + bracket_term; }
};

struct CurvatureReport {
  QMat ricci;              // Nomizu oracle
  QMat ricci_specialized;  // term-by-term formula, polarized
  Rat max_discrepancy;
  bool special = false;
  PositivityCertificate positivity;
};

namespace detail {
// Unnormalized orthogonal basis of p (exact Gram-Schmidt) plus the squared
// norms; formula terms quadratic in each orthonormal W pick up 1/norm weights.
struct OrthoP {
  std::vector<QVec> v;  // vectors in p coordinates
  std::vector<Rat> g;   // positive squared norms
};

inline OrthoP orthogonalize_p(const QMat& gp) {
  int p = gp.rows;
  OrthoP o;
  for (int j = 0; j < p; ++j) {
    QVec w = unit_vec<Rat>(p, j);
    for (size_t i = 0; i < o.v.size(); ++i) {
      QVec gv = gp * o.v[i];
      Rat num(0);
      for (int r = 0; r < p; ++r) num += w[r] * gv[r];
      Rat coeff = num / o.g[i];
      w = vec_sub(w, vec_scale(coeff, o.v[i]));
    }
    QVec gw = gp * w;
    Rat norm(0);
    for (int r = 0; r < p; ++r) norm += w[r] * gw[r];
    if (!(norm > 0)) throw SignatureError("p metric not positive definite");
    o.v.push_back(w);
    o.g.push_back(norm);
  }
  return o;
}
}  // namespace detail

inline CurvatureReport ricci_specialized(const ReductiveModel& model) {
  if (!model.he_shaped) throw DomainError("specialized formula needs a twisted-Heisenberg-shaped model");
  if (model.h.dim() != 0) throw DomainError("specialized formula assumes trivial isotropy");
  int sd = model.s_dim(), p = model.p_dim, n = sd + p, d = model.d;
  const Rat beta = model.zz_in_N;

  // Pure-S sub-model: the twisted Heisenberg algebra with its standard form.
  ReductiveModel s_model;
  {
    LieAlgebra s = make_twisted_heisenberg(model.lambda);
    s_model = make_reductive_model(std::move(s), Subspace::zero(sd), Subspace::full(sd),
                                   standard_lorentz_form(d));
  }
  QMat ric_s = nomizu_ricci(s_model);

  // N sub-model on z(s) + p with the leaf metric: (Z,Z) = beta, p block kept.
  // Coordinates: index 0 = Z, then the W's.
  QMat gp(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) gp.at(i, j) = model.metric.at(sd + i, sd + j);
  int nn = 1 + p;
  std::vector<Rat> ntensor(static_cast<size_t>(nn) * nn * nn, Rat(0));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      for (int k = 0; k < p; ++k)
        ntensor[(static_cast<size_t>(1 + i) * nn + 1 + j) * nn + 1 + k] =
            model.g.sc(sd + i, sd + j, sd + k);
      ntensor[(static_cast<size_t>(1 + i) * nn + 1 + j) * nn + 0] =
          model.g.sc(sd + i, sd + j, model.z_index);
    }
  std::vector<std::string> nlabels = {"Z"};
  for (int j = 0; j < p; ++j) nlabels.push_back("W" + std::to_string(j + 1));
  LieAlgebra nalg = LieAlgebra::make(nn, std::move(nlabels), std::move(ntensor));
  QMat nmetric(nn, nn);
  nmetric.at(0, 0) = beta;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) nmetric.at(1 + i, 1 + j) = gp.at(i, j);
  HomogeneousSpace nspace(
      make_reductive_model(nalg, Subspace::zero(nn), Subspace::full(nn), nmetric));
  QMat ric_n = nspace.ricci();

  detail::OrthoP ortho = p > 0 ? detail::orthogonalize_p(gp) : detail::OrthoP{};

  auto to_n = [&](const QVec& x) {
    // p-part of an m-vector, in N coordinates (zero Z component)
    QVec v(nn, Rat(0));
    for (int i = 0; i < p; ++i) v[1 + i] = x[sd + i];
    return v;
  };
  auto n_of_p = [&](const QVec& pv) {
    QVec v(nn, Rat(0));
    for (int i = 0; i < p; ++i) v[1 + i] = pv[i];
    return v;
  };
  QVec z_n = unit_vec<Rat>(nn, 0);

  auto quad = [&](const QVec& x) -> Rat {
    Rat q(0);
    // Ric^S on the s-part
    QVec xs(sd);
    for (int i = 0; i < sd; ++i) xs[i] = x[i];
    QVec gs = ric_s * xs;
    for (int i = 0; i < sd; ++i) q += xs[i] * gs[i];
    if (p == 0) return q;

    QVec xp = to_n(x);
    // Ric^N on the p-part
    QVec gn = ric_n * xp;
    for (int i = 0; i < nn; ++i) q += xp[i] * gn[i];

    Rat xt = x[model.t_index];
    // -(1/(Z,Z)) |U^N(X_p, Z)|^2
    QVec uz = nspace.u_map(xp, z_n);
    q -= nspace.inner(uz, uz) / beta;

    for (int j = 0; j < p; ++j) {
      QVec wj = n_of_p(ortho.v[j]);
      const Rat& gj = ortho.g[j];
      // -(1/2) <X_T, [W_j, [W_j, X_p]]_Z>
      QVec inner_br = nalg.bracket(wj, xp);
      Rat zc1 = nalg.bracket(wj, inner_br)[0];
      q -= xt * zc1 / (2 * gj);
      // +(3/4) ([X_p, W_j]_Z, [X_p, W_j]_Z)
      Rat zc2 = nalg.bracket(xp, wj)[0];
      q += Rat(3, 4) * zc2 * zc2 * beta / gj;
      // +2 <X_T, [U^N(X_p, W_j), W_j]_Z>
      QVec uxw = nspace.u_map(xp, wj);
      Rat zc3 = nalg.bracket(uxw, wj)[0];
      q += 2 * xt * zc3 / gj;
      // -<X_T, [U^N(W_j, W_j), X_p]_Z>
      QVec uww = nspace.u_map(wj, wj);
      Rat zc4 = nalg.bracket(uww, xp)[0];
      q -= xt * zc4 / gj;
      // +(1/4) double sum of <X_T, [W_k, W_j]_Z>^2
      for (int k = 0; k < p; ++k) {
        QVec wk = n_of_p(ortho.v[k]);
        Rat zc5 = nalg.bracket(wk, wj)[0];
        Rat term = xt * zc5;
        q += term * term / (4 * gj * ortho.g[k]);
      }
    }
    return q;
  };

  CurvatureReport rep;
  rep.ricci = nomizu_ricci(model);
  rep.ricci_specialized = QMat(n, n);
  std::vector<Rat> qdiag(n);
  for (int i = 0; i < n; ++i) qdiag[i] = quad(unit_vec<Rat>(n, i));
  for (int i = 0; i < n; ++i) {
    rep.ricci_specialized.at(i, i) = qdiag[i];
    for (int j = i + 1; j < n; ++j) {
      QVec sum = vec_add(unit_vec<Rat>(n, i), unit_vec<Rat>(n, j));
      Rat v = (quad(sum) - qdiag[i] - qdiag[j]) / 2;
      rep.ricci_specialized.at(i, j) = v;
      rep.ricci_specialized.at(j, i) = v;
    }
  }
  rep.max_discrepancy = Rat(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat diff = rat_abs(rep.ricci.at(i, j) - rep.ricci_specialized.at(i, j));
      if (diff > rep.max_discrepancy) rep.max_discrepancy = diff;
    }
  rep.special = is_special(model);

  rep.positivity.lambda_term = Rat(0);
  for (const Rat& l : model.lambda) rep.positivity.lambda_term += l * l / 2;
  rep.positivity.bracket_term = Rat(0);
  if (p > 0) {
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p; ++k) {
        QVec wj = n_of_p(ortho.v[j]), wk = n_of_p(ortho.v[k]);
        Rat zc = nalg.bracket(wk, wj)[0];
        rep.positivity.bracket_term += zc * zc / (4 * ortho.g[j] * ortho.g[k]);
      }
  }
  rep.positivity.positive = rep.positivity.lambda_term > 0;
  return rep;
}

inline PositivityCertificate positivity_check(const ReductiveModel& model) {
  return ricci_specialized(model).positivity;
}

}  // namespace homspace
