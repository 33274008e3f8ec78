// Invariant-subspace analysis for families of operators acting on a vector
// space: seed closures, degeneracy against a reference form, and the
// weak-irreducibility classification.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lie.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace homspace {

struct OperatorFamily {
  int ambient = 0;
  std::vector<QMat> operators;

  static OperatorFamily make(int ambient, std::vector<QMat> ops) {
    for (const QMat& m : ops)
      if (m.rows != ambient || m.cols != ambient)
        throw ShapeError("operator family: shape mismatch");
    return OperatorFamily{ambient, std::move(ops)};
  }
};

// ad(u) for u running over the generator basis.
inline OperatorFamily ad_operator_family(const LieAlgebra& g, const Subspace& generators) {
  std::vector<QMat> ops;
  for (int c = 0; c < generators.basis.cols; ++c) ops.push_back(g.ad(generators.basis.col(c)));
  return OperatorFamily::make(g.n, std::move(ops));
}

// Smallest subspace containing the seeds and stable under every operator:
// iterated image-and-span until the dimension stops growing.
inline Subspace invariant_closure(const OperatorFamily& fam, const std::vector<QVec>& seeds) {
  Subspace cur = span_vecs(fam.ambient, seeds);
  while (true) {
    std::vector<QVec> gens;
    for (int j = 0; j < cur.basis.cols; ++j) {
      gens.push_back(cur.basis.col(j));
      for (const QMat& op : fam.operators) gens.push_back(op * cur.basis.col(j));
    }
    Subspace next = span_vecs(fam.ambient, gens);
    if (next.dim() == cur.dim()) return cur;
    cur = next;
  }
}

inline bool is_invariant(const OperatorFamily& fam, const Subspace& s) {
  for (const QMat& op : fam.operators)
    for (int j = 0; j < s.basis.cols; ++j)
      if (!s.contains(op * s.basis.col(j))) return false;
  return true;
}

inline bool is_degenerate(const Subspace& sub, const QMat& form) {
  int k = sub.dim();
  if (k == 0) return false;
  QMat gram(k, k);
  QMat fb = form * sub.basis;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat acc(0);
      for (int r = 0; r < sub.ambient; ++r) acc += sub.basis.at(r, i) * fb.at(r, j);
      gram.at(i, j) = acc;
    }
  return congruence_signature(gram).zero > 0;
}

enum class InvarianceVerdict {
  irreducible,              // no nontrivial proper invariant subspace found
  reducible_nondegenerate,  // a nondegenerate invariant subspace exists
  decomposable_degenerate,  // two complementary degenerate invariant subspaces
  weakly_irreducible,       // every found invariant subspace is degenerate
};

inline std::string verdict_str(InvarianceVerdict v) {
  switch (v) {
    case InvarianceVerdict::irreducible: return "irreducible";
    case InvarianceVerdict::reducible_nondegenerate: return "reducible_nondegenerate";
    case InvarianceVerdict::decomposable_degenerate: return "decomposable_degenerate";
    case InvarianceVerdict::weakly_irreducible: return "weakly_irreducible";
  }
  return "unknown";
}

struct InvarianceClassification {
  InvarianceVerdict verdict = InvarianceVerdict::irreducible;
  std::vector<Subspace> witnesses;  // nontrivial proper invariant subspaces
  int probes_used = 0;
};

// Random rational vector with small entries, never zero.
inline QVec random_probe(std::mt19937_64& rng, int ambient) {
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 7);
  while (true) {
    QVec v(ambient);
    bool nonzero = false;
    for (int i = 0; i < ambient; ++i) {
      v[i] = Rat(num(rng), den(rng));
      v[i].canonicalize();
      if (!(v[i] == 0)) nonzero = true;
    }
    if (nonzero) return v;
  }
}

// Enumerates invariant subspaces by closing basis seeds, random probes, and
// caller-supplied candidates; classifies the collection against the form.
inline InvarianceClassification classify_invariance(const OperatorFamily& fam, const QMat& form,
                                                    int probe_budget, std::uint64_t rng_seed = 1,
                                                    const std::vector<Subspace>& candidates = {}) {
  InvarianceClassification cls;
  int n = fam.ambient;
  auto note = [&](const Subspace& s) {
    if (s.dim() == 0 || s.dim() == n) return;
    for (const Subspace& w : cls.witnesses)
      if (w.dim() == s.dim() && w == s) return;
    cls.witnesses.push_back(s);
  };
  for (int i = 0; i < n; ++i) note(invariant_closure(fam, {unit_vec<Rat>(n, i)}));
  for (const Subspace& c : candidates) {
    std::vector<QVec> seeds;
    for (int j = 0; j < c.basis.cols; ++j) seeds.push_back(c.basis.col(j));
    note(invariant_closure(fam, seeds));
  }
  std::mt19937_64 rng(rng_seed);
  for (int p = 0; p < probe_budget; ++p) {
    ++cls.probes_used;
    note(invariant_closure(fam, {random_probe(rng, n)}));
  }

  if (cls.witnesses.empty()) {
    cls.verdict = InvarianceVerdict::irreducible;
    return cls;
  }
  for (const Subspace& w : cls.witnesses)
    if (!is_degenerate(w, form)) {
      cls.verdict = InvarianceVerdict::reducible_nondegenerate;
      return cls;
    }
  for (size_t i = 0; i < cls.witnesses.size(); ++i)
    for (size_t j = i; j < cls.witnesses.size(); ++j) {
      const Subspace& a = cls.witnesses[i];
      const Subspace& b = cls.witnesses[j];
      if (a.dim() + b.dim() == n && subspace_intersect(a, b).dim() == 0) {
        cls.verdict = InvarianceVerdict::decomposable_degenerate;
        return cls;
      }
    }
  cls.verdict = InvarianceVerdict::weakly_irreducible;
  return cls;
}

}  // namespace homspace
