// Batch front door: parse algebra / form / model inputs, run the exact check
// suites, and emit one JSON report per invocation.  Exit codes: 0 all checks
// pass, 1 some check fails, 2 usage or input error.
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <homspace/jsonio.hpp>
#include <homspace/nt.hpp>

using namespace homspace;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON input");
  return j;
}

struct LoadedAlgebra {
  LieAlgebra g;
  std::string raw;  // digest source: file contents, or the name itself
};

LoadedAlgebra load_algebra(const std::string& spec, bool checked) {
  if (std::filesystem::exists(spec)) {
    std::string text = slurp(spec);
    return {algebra_from_json(parse_json_text(text), checked), text};
  }
  return {algebra_from_name(spec), spec};
}

std::uint64_t digest_of(std::initializer_list<std::string> parts) {
  std::uint64_t h = fnv1a("homspace");
  for (const std::string& p : parts) h = fnv1a(p, h);
  return h;
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("HOMSPACE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ParseError("HOMSPACE_SEED must be an unsigned integer");
    }
  }
  return flag_seed;
}

// The lambda tuple when g is literally in the standard twisted basis
// T, Z, X1, Y1, ...; nullopt otherwise.
std::optional<std::vector<Rat>> standard_twisted_lambda(const LieAlgebra& g) {
  if (g.n < 4 || g.n % 2 != 0) return std::nullopt;
  int d = (g.n - 2) / 2;
  std::vector<Rat> lambda;
  for (int k = 0; k < d; ++k) {
    Rat l = g.sc(2 + 2 * k, 3 + 2 * k, 1);
    if (!(l > 0)) return std::nullopt;
    lambda.push_back(l);
  }
  LieAlgebra model = make_twisted_heisenberg(lambda);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k)
        if (!(g.sc(i, j, k) == model.sc(i, j, k))) return std::nullopt;
  return lambda;
}

// "T-Z", "3/2*X1+Y1": signed sum of optionally scaled basis labels.
QVec parse_vector_expr(const LieAlgebra& g, const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty vector expression");
  QVec v(g.n, Rat(0));
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
      num += s[i++];
    if (i < s.size() && s[i] == '*') ++i;
    std::string label;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      label += s[i++];
    if (label.empty())
      throw ParseError("expected a basis label in vector expression '" + raw + "'");
    int idx = -1;
    for (int k = 0; k < g.n; ++k)
      if (g.labels[k] == label) idx = k;
    if (idx < 0) {
      std::string known;
      for (int k = 0; k < g.n; ++k) known += (k ? "," : "") + g.labels[k];
      throw ParseError("unknown basis label '" + label + "' (basis: " + known + ")");
    }
    Rat coef = num.empty() ? Rat(1) : rat_parse(num);
    v[idx] += sign * coef;
  }
  return v;
}

// Comma-separated vector expressions spanning a subspace; "0" or "{}" or
// "{0}" is the zero subspace.
Subspace parse_subspace_expr(const LieAlgebra& g, const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  if (s.empty() || s == "0") return span_vecs(g.n, {});
  std::vector<QVec> gens;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? comma : comma - start);
    gens.push_back(parse_vector_expr(g, part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return span_vecs(g.n, gens);
}

bool map_expected(const RecognitionResult& r) {
  if (r.family == "direct_sum") {
    if (r.parts.empty()) return false;
    for (const RecognitionResult& p : r.parts)
      if (!map_expected(p)) return false;
    return true;
  }
  return r.family == "abelian" || r.family == "aff" || r.family == "heisenberg" ||
         r.family == "twisted_heisenberg" || r.family == "sl2";
}

int emit(Report& rep) {
  std::cout << rep.to_json().dump(2) << "\n";
  return rep.all_pass() ? 0 : 1;
}

int cmd_verify(const std::string& spec) {
  LoadedAlgebra in = load_algebra(spec, /*checked=*/false);
  Report rep;
  rep.command = "verify";
  rep.inputs_digest = digest_of({rep.command, in.raw});
  JacobiReport jr = in.g.verify_jacobi();
  rep.add("antisymmetric", jr.antisymmetric);
  std::string detail = "residual " + rat_str(jr.residual);
  if (!(jr.residual == 0))
    detail += " at (" + in.g.labels[jr.worst[0]] + "," + in.g.labels[jr.worst[1]] + "," +
              in.g.labels[jr.worst[2]] + ")";
  rep.add("jacobi", jr.residual == 0, detail);
  rep.artifacts["dim"] = in.g.n;
  rep.artifacts["center_dim"] = center(in.g).dim();
  rep.artifacts["derived_dim"] = derived(in.g).dim();
  if (jr.antisymmetric && jr.residual == 0)
    rep.artifacts["killing_signature"] = signature_json(congruence_signature(killing_form(in.g)));
  return emit(rep);
}

int cmd_recognize(const std::string& spec, double tol) {
  LoadedAlgebra in = load_algebra(spec, /*checked=*/true);
  Report rep;
  rep.command = "recognize";
  rep.inputs_digest = digest_of({rep.command, in.raw, std::to_string(tol)});
  RecognitionResult r = recognize(in.g, tol);
  rep.artifacts["recognition"] = recognition_json(r);
  rep.artifacts["tol"] = tol;
  rep.add("family_identified", r.family != "unknown", r.type_tag());
  if (r.canonical_map) {
    bool exact = r.residual && *r.residual == 0;
    rep.add("canonical_map", exact, exact ? "bracket residual 0" : "nonzero bracket residual");
  } else if (map_expected(r)) {
    rep.add("canonical_map", false, "expected a canonical basis but none was constructed");
  } else {
    rep.add("canonical_map", true, "no canonical form modeled for " + r.family);
  }
  return emit(rep);
}

int cmd_form(const std::string& spec, bool standard, const std::string& form_file,
             const std::vector<std::string>& stars) {
  LoadedAlgebra in = load_algebra(spec, /*checked=*/true);
  if (standard == !form_file.empty())
    throw ParseError("pass exactly one of --standard or --form <file>");
  std::optional<std::vector<Rat>> twist = standard_twisted_lambda(in.g);
  QMat b;
  std::string braw;
  if (standard) {
    if (!twist)
      throw ParseError("--standard needs an algebra in the standard twisted basis T,Z,X1,Y1,...");
    b = standard_lorentz_form((in.g.n - 2) / 2);
    braw = "standard";
  } else {
    braw = slurp(form_file);
    b = matrix_from_json(parse_json_text(braw));
    if (b.rows != in.g.n || b.cols != in.g.n) throw ParseError("form matrix has wrong shape");
  }
  Report rep;
  rep.command = "form";
  rep.inputs_digest = digest_of({rep.command, in.raw, braw});
  rep.artifacts["matrix"] = matrix_json(b);

  bool symmetric = b.is_symmetric();
  rep.add("symmetric", symmetric);
  bool invariant = false;
  if (symmetric) {
    Rat res = ad_invariance_residual(in.g, b);
    invariant = res == 0;
    rep.add("ad_invariant", invariant, "residual " + rat_str(res));
    Signature sig = congruence_signature(b);
    rep.artifacts["signature"] = signature_json(sig);
    if (twist) {
      InvarianceEquivalenceReport eq = verify_invariance_equivalence(in.g, b);
      rep.add("nilradical_invariance_equivalent", eq.equivalent,
              "nilradical residual " + rat_str(eq.nilradical_residual) + ", full residual " +
                  rat_str(eq.full_residual));
      if (invariant && sig.is_lorentzian()) {
        LorentzNormalForm nf = lorentz_normal_form(in.g, b);
        rep.add("normal_form", normal_form_verifies(in.g, b, nf),
                "mu " + rat_str(nf.mu) + ", nu " + rat_str(nf.nu) + ", c^2 " +
                    rat_str(nf.c_squared) + (nf.c_rational ? ", rational c" : ", quadratic c"));
        rep.artifacts["normal_form"] = normal_form_json(nf);
      } else {
        rep.artifacts["normal_form"] = nullptr;
      }
    }
    json star_reports = json::array();
    for (const std::string& expr : stars) {
      Subspace v = parse_subspace_expr(in.g, expr);
      StarReport sr = check_condition_star(b, v);
      std::string detail = "dim " + std::to_string(v.dim());
      if (!sr.passes() && sr.witness) detail += ", witness norm " + rat_str(sr.witness_norm);
      rep.add("star(" + expr + ")", sr.passes(), detail);
      json sj = star_json(sr);
      sj["subspace"] = expr;
      star_reports.push_back(sj);
    }
    rep.artifacts["star"] = star_reports;
  }
  return emit(rep);
}

int cmd_model(const std::string& spec, const std::string& lambda_list, const std::string& zz,
              bool zz_set) {
  json mj;
  std::string raw;
  if (spec == "pure-S") {
    if (lambda_list.empty()) throw ParseError("pure-S needs --lambda");
    json ll = json::array();
    for (const Rat& l : parse_rat_list(lambda_list)) ll.push_back(rat_str(l));
    mj = json{{"lambda", ll}, {"p_dim", 0}};
    raw = "pure-S:" + lambda_list;
  } else {
    if (!lambda_list.empty()) throw ParseError("--lambda only applies to pure-S");
    raw = slurp(spec);
    mj = parse_json_text(raw);
  }
  if (zz_set) mj["zz_in_N"] = zz;
  ReductiveModel model = model_from_json(mj);

  Report rep;
  rep.command = "model";
  rep.inputs_digest = digest_of({rep.command, raw, zz});
  CurvatureReport cr = ricci_specialized(model);
  rep.add("ricci_oracle_match", cr.max_discrepancy == 0,
          "max discrepancy " + rat_str(cr.max_discrepancy));
  rep.add("ricci_tt_positive", cr.positivity.positive,
          "Ric(T,T) = " + rat_str(cr.positivity.ricci_tt()));
  try {
    bool sp = is_special(model);
    rep.add("special_criterion_consistent", true,
            sp ? "special: [p,p] misses Z and V vanishes" : "not special");
    rep.artifacts["special"] = sp;
  } catch (const DomainError& e) {
    rep.add("special_criterion_consistent", false, e.what());
  }
  rep.artifacts["curvature"] = curvature_json(cr);
  json ll = json::array();
  for (const Rat& l : model.lambda) ll.push_back(rat_str(l));
  rep.artifacts["lambda"] = ll;
  rep.artifacts["p_dim"] = model.p_dim;
  rep.artifacts["zz_in_N"] = rat_str(model.zz_in_N);
  return emit(rep);
}

int cmd_isotropy(const std::string& spec, int probes, std::uint64_t seed,
                 const std::string& form_file, const std::string& expected) {
  LoadedAlgebra in = load_algebra(spec, /*checked=*/true);
  seed = effective_seed(seed);
  QMat b;
  std::string form_kind;
  if (!form_file.empty()) {
    std::string braw = slurp(form_file);
    b = matrix_from_json(parse_json_text(braw));
    if (b.rows != in.g.n || b.cols != in.g.n) throw ParseError("form matrix has wrong shape");
    form_kind = "file";
  } else if (standard_twisted_lambda(in.g)) {
    b = standard_lorentz_form((in.g.n - 2) / 2);
    form_kind = "standard";
  } else {
    b = killing_form(in.g);
    form_kind = "killing";
  }
  Report rep;
  rep.command = "isotropy";
  rep.inputs_digest =
      digest_of({rep.command, in.raw, form_kind, std::to_string(probes), std::to_string(seed)});
  OperatorFamily fam = ad_operator_family(in.g, span_cols(QMat::identity(in.g.n)));
  InvarianceClassification cls = classify_invariance(fam, b, probes, seed);
  rep.artifacts["classification"] = classification_json(cls);
  rep.artifacts["reference_form"] = form_kind;
  rep.artifacts["seed"] = seed;
  std::string verdict = verdict_str(cls.verdict);
  if (expected.empty())
    rep.add("classification_computed", true, verdict);
  else
    rep.add("verdict_matches", verdict == expected, "got " + verdict + ", expected " + expected);
  return emit(rep);
}

int cmd_lambda(const std::string& a, const std::string& b) {
  Report rep;
  rep.command = "lambda";
  rep.inputs_digest = digest_of({rep.command, a, b});
  std::vector<Rat> ra = parse_rat_list(a);
  bool rationalized = false;
  for (const Rat& x : ra) rationalized = rationalized || x.get_den() != 1;
  Lambda ca = lambda_canonicalize(ra);
  rep.artifacts["canonical"] = lambda_json(ca);
  rep.artifacts["rationalized"] = rationalized;
  if (b.empty()) {
    rep.add("canonicalized", true, lambda_str(ca));
  } else {
    std::vector<Rat> rb = parse_rat_list(b);
    for (const Rat& x : rb) rationalized = rationalized || x.get_den() != 1;
    rep.artifacts["canonical_b"] = lambda_json(lambda_canonicalize(rb));
    rep.artifacts["rationalized"] = rationalized;
    rep.add("equivalent", lambda_equivalent(ra, rb));
  }
  return emit(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for twisted Heisenberg Lie algebras, invariant Lorentz forms, and homogeneous models"};
  app.require_subcommand(1);

  std::string algebra_spec, form_file, model_spec, lambda_a, lambda_b, expected, zz = "1",
                                                                                 lambda_list;
  std::vector<std::string> stars;
  double tol = 1e-9;
  int probes = 64;
  std::uint64_t seed = 1;
  bool standard = false;

  auto* c_verify =
      app.add_subcommand("verify", "antisymmetry, Jacobi, center/derived, Killing signature");
  c_verify->add_option("algebra", algebra_spec, "zoo name (sl2, aff, so3, abelian(n), he(d), heL(l1,...)) or JSON file")
      ->required();

  auto* c_rec = app.add_subcommand("recognize", "identify the isomorphism type, build a canonical basis");
  c_rec->add_option("algebra", algebra_spec, "zoo name or JSON file")->required();
  c_rec->add_option("--tol", tol, "relative tolerance for the spectral path");

  auto* c_form = app.add_subcommand("form", "invariant form suite: ad-invariance, signature, condition star, normal form");
  c_form->add_option("algebra", algebra_spec, "zoo name or JSON file")->required();
  c_form->add_flag("--standard", standard, "use the standard Lorentz form");
  c_form->add_option("--form", form_file, "symmetric matrix JSON file");
  c_form->add_option("--star", stars, "subspace to test, e.g. \"Z,X1\" or \"T-Z\" or \"0\"");

  auto* c_model = app.add_subcommand("model", "curvature suite: Ricci oracle vs closed form, positivity, special test");
  c_model->add_option("model", model_spec, "model JSON file, or pure-S with --lambda")->required();
  c_model->add_option("--lambda", lambda_list, "lambda tuple for pure-S, e.g. 1,2");
  auto* zz_opt = c_model->add_option("--zz-in-N", zz, "(Z,Z) value of the leaf metric");

  auto* c_iso = app.add_subcommand("isotropy", "invariant subspace classification under the adjoint family");
  c_iso->add_option("algebra", algebra_spec, "zoo name or JSON file")->required();
  c_iso->add_option("--probes", probes, "random seed-vector budget");
  c_iso->add_option("--seed", seed, "probe RNG seed (HOMSPACE_SEED overrides)");
  c_iso->add_option("--form", form_file, "reference form matrix JSON file");
  c_iso->add_option("--expect", expected, "fail unless the verdict matches");

  auto* c_lambda = app.add_subcommand("lambda", "canonicalize lambda tuples, test equivalence");
  c_lambda->add_option("a", lambda_a, "comma-separated tuple")->required();
  c_lambda->add_option("b", lambda_b, "second tuple: test equivalence with the first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_verify->parsed()) return cmd_verify(algebra_spec);
    if (c_rec->parsed()) return cmd_recognize(algebra_spec, tol);
    if (c_form->parsed()) return cmd_form(algebra_spec, standard, form_file, stars);
    if (c_model->parsed())
      return cmd_model(model_spec, lambda_list, zz, zz_opt->count() > 0);
    if (c_iso->parsed()) return cmd_isotropy(algebra_spec, probes, seed, form_file, expected);
    if (c_lambda->parsed()) return cmd_lambda(lambda_a, lambda_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
