// JSON serialization for every public result type, plus parsers for the
// algebra / form / model input schemas.  Rationals travel as "p/q" strings so
// nothing is lost to floating point; parse errors surface as ParseError.
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forms.hpp"
#include "isotropy.hpp"
#include "lie.hpp"
#include "model.hpp"
#include "recognize.hpp"
#include "zoo.hpp"

namespace homspace {

using nlohmann::json;

inline json rat_json(const Rat& r) {
  if (r.get_den() == 1) return json(r.get_num().get_str());
  return json(rat_str(r));
}

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw ParseError("expected a rational as integer or \"p/q\" string");
}

inline json vec_json(const QVec& v) {
  json a = json::array();
  for (const Rat& x : v) a.push_back(rat_json(x));
  return a;
}

inline json matrix_json(const QMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rat_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline QMat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a nonempty array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  QMat m = QMat::zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("matrix: ragged rows");
    for (int c = 0; c < cols; ++c) m.at(i, c) = rat_from_json(j[i][c]);
  }
  return m;
}

inline json algebra_to_json(const LieAlgebra& g) {
  json out;
  out["dim"] = g.n;
  out["basis"] = g.labels;
  json brackets = json::array();
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      json terms = json::array();
      for (int k = 0; k < g.n; ++k) {
        Rat c = g.sc(i, j, k);
        if (c != 0) terms.push_back(json{{"k", k}, {"c", rat_str(c)}});
      }
      if (!terms.empty()) brackets.push_back(json{{"i", i}, {"j", j}, {"terms", terms}});
    }
  out["brackets"] = brackets;
  return out;
}

// checked = true validates antisymmetry + Jacobi via LieAlgebra::make;
// false defers so a caller can report the defect instead of throwing.
inline LieAlgebra algebra_from_json(const json& j, bool checked = true) {
  if (!j.contains("dim")) throw ParseError("algebra: missing \"dim\"");
  int n = j.at("dim").get<int>();
  if (n < 0) throw ParseError("algebra: negative dimension");
  std::vector<std::string> labels;
  if (j.contains("basis")) labels = j.at("basis").get<std::vector<std::string>>();
  std::vector<Rat> c(static_cast<size_t>(n) * n * n, Rat(0));
  auto idx = [n](int a, int b, int k) { return (static_cast<size_t>(a) * n + b) * n + k; };
  if (j.contains("brackets")) {
    for (const json& br : j.at("brackets")) {
      int bi = br.at("i").get<int>(), bj = br.at("j").get<int>();
      if (bi < 0 || bj < 0 || bi >= n || bj >= n || bi >= bj)
        throw ParseError("algebra: bracket indices must satisfy 0 <= i < j < dim");
      for (const json& t : br.at("terms")) {
        int k = t.at("k").get<int>();
        if (k < 0 || k >= n) throw ParseError("algebra: bracket target out of range");
        Rat coef = rat_from_json(t.at("c"));
        c[idx(bi, bj, k)] = coef;
        c[idx(bj, bi, k)] = -coef;
      }
    }
  }
  return checked ? LieAlgebra::make(n, std::move(labels), std::move(c))
                 : LieAlgebra::make_unchecked(n, std::move(labels), std::move(c));
}

// Accepts either an embedded algebra object or a zoo expression string.
inline LieAlgebra algebra_from_json_or_name(const json& j) {
  if (j.is_string()) return algebra_from_name(j.get<std::string>());
  return algebra_from_json(j);
}

inline std::vector<PBracket> p_brackets_from_json(const json& j, int p_dim) {
  std::vector<PBracket> out;
  for (const json& br : j) {
    PBracket pb;
    pb.i = br.at("i").get<int>();
    pb.j = br.at("j").get<int>();
    if (pb.i < 0 || pb.j < 0 || pb.i >= p_dim || pb.j >= p_dim || pb.i >= pb.j)
      throw ParseError("model: p bracket indices must satisfy 0 <= i < j < p_dim");
    for (const json& t : br.at("terms")) {
      int k = t.at("k").get<int>();
      if (k < 0 || k > p_dim) throw ParseError("model: p bracket target out of range");
      pb.terms.push_back({k, rat_from_json(t.at("c"))});
    }
    out.push_back(std::move(pb));
  }
  return out;
}

inline ReductiveModel model_from_json(const json& j) {
  std::vector<Rat> lambda;
  for (const json& l : j.at("lambda")) lambda.push_back(rat_from_json(l));
  int p_dim = j.at("p_dim").get<int>();
  if (p_dim < 0) throw ParseError("model: negative p_dim");
  std::vector<PBracket> pb;
  if (j.contains("p_brackets")) pb = p_brackets_from_json(j.at("p_brackets"), p_dim);
  QMat pmetric = p_dim == 0 ? QMat::zero(0, 0) : matrix_from_json(j.at("p_metric"));
  Rat zz(1);
  if (j.contains("zz_in_N")) zz = rat_from_json(j.at("zz_in_N"));
  return build_heisenberg_model(lambda, p_dim, pb, pmetric, zz);
}

inline json jacobi_json(const JacobiReport& r) {
  return json{{"residual", rat_str(r.residual)},
              {"antisymmetric", r.antisymmetric},
              {"worst_triple", {r.worst[0], r.worst[1], r.worst[2]}},
              {"ok", r.ok()}};
}

inline json signature_json(const Signature& s) {
  return json{{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
}

inline json star_json(const StarReport& r) {
  json out{{"psd", r.psd}, {"kernel_dim", r.kernel_dim}, {"passes", r.passes()}};
  if (r.witness) {
    out["witness"] = vec_json(*r.witness);
    out["witness_norm"] = rat_str(r.witness_norm);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline json quadext_json(const QuadExt& q) {
  if (q.is_rational()) return rat_json(q.a);
  return json{{"a", rat_str(q.a)}, {"b", rat_str(q.b)}, {"radicand", rat_str(q.m)}};
}

inline json normal_form_json(const LorentzNormalForm& nf) {
  json rows = json::array();
  for (int i = 0; i < nf.automorphism.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < nf.automorphism.cols; ++j) row.push_back(quadext_json(nf.automorphism.at(i, j)));
    rows.push_back(row);
  }
  return json{{"mu", rat_str(nf.mu)},
              {"nu", rat_str(nf.nu)},
              {"c_squared", rat_str(nf.c_squared)},
              {"c_rational", nf.c_rational},
              {"automorphism", rows}};
}

inline json subspace_json(const Subspace& s) { return matrix_json(s.basis); }

inline json classification_json(const InvarianceClassification& c) {
  json w = json::array();
  for (const Subspace& s : c.witnesses) w.push_back(subspace_json(s));
  return json{{"verdict", verdict_str(c.verdict)}, {"witnesses", w}, {"probes_used", c.probes_used}};
}

inline json positivity_json(const PositivityCertificate& p) {
  return json{{"lambda_term", rat_str(p.lambda_term)},
              {"bracket_term", rat_str(p.bracket_term)},
              {"ricci_tt", rat_str(p.ricci_tt())},
              {"positive", p.positive}};
}

inline json curvature_json(const CurvatureReport& r) {
  return json{{"ricci", matrix_json(r.ricci)},
              {"ricci_specialized", matrix_json(r.ricci_specialized)},
              {"max_discrepancy", rat_str(r.max_discrepancy)},
              {"special", r.special},
              {"positivity", positivity_json(r.positivity)}};
}

inline json lambda_json(const Lambda& l) {
  json a = json::array();
  for (const Int& x : l) a.push_back(x.get_str());
  return a;
}

inline json recognition_json(const RecognitionResult& r) {
  json out;
  out["type_tag"] = r.type_tag();
  out["family"] = r.family;
  out["param"] = r.param;
  if (r.family == "twisted_heisenberg") {
    out["lambda"] = lambda_json(r.lambda);
    out["lambda_rationalized"] = r.lambda_rationalized;
  }
  out["spectral_residual"] = r.spectral_residual;
  out["canonical_map"] = r.canonical_map ? matrix_json(*r.canonical_map) : json(nullptr);
  out["canonical_basis"] = r.canonical_basis ? matrix_json(*r.canonical_basis) : json(nullptr);
  out["residual"] = r.residual ? json(rat_str(*r.residual)) : json(nullptr);
  if (!r.parts.empty()) {
    json parts = json::array();
    for (const RecognitionResult& p : r.parts) parts.push_back(recognition_json(p));
    out["parts"] = parts;
  }
  return out;
}

struct ReportCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  std::uint64_t inputs_digest = 0;
  std::vector<ReportCheck> checks;
  json artifacts = json::object();

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({name, pass, detail});
  }
  bool all_pass() const {
    for (const ReportCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }
  json to_json() const {
    char digest[32];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(inputs_digest));
    json cs = json::array();
    for (const ReportCheck& c : checks)
      cs.push_back(json{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    return json{{"command", command},
                {"inputs_digest", std::string(digest)},
                {"checks", cs},
                {"artifacts", artifacts}};
  }
};

}  // namespace homspace
