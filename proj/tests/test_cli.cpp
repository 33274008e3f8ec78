#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <homspace/jsonio.hpp>

using namespace homspace;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  json body;
};

RunResult run(const std::string& args, const std::string& env = "") {
  // single-quote each token so shell metacharacters in algebra names survive
  std::string quoted;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    quoted += " '" + tok + "'";
    tok.clear();
  };
  for (char c : args) {
    if (c == ' ') flush();
    else tok += c;
  }
  flush();
  std::string cmd = env + " " + std::string(HOMSPACE_CLI_BIN) + quoted + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  if (!r.out.empty()) {
    json j = json::parse(r.out, nullptr, false);
    if (!j.is_discarded()) r.body = j;
  }
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << contents;
  return path;
}

bool check_status(const json& body, const std::string& name, const std::string& status) {
  for (const json& c : body["checks"])
    if (c["name"] == name) return c["status"] == status;
  return false;
}

}  // namespace

TEST_CASE("verify accepts zoo names") {
  RunResult r = run("verify heL(1,2)");
  CHECK(r.code == 0);
  REQUIRE(r.body.is_object());
  CHECK(r.body["command"] == "verify");
  CHECK(check_status(r.body, "jacobi", "pass"));
  CHECK(check_status(r.body, "antisymmetric", "pass"));
  CHECK(r.body["artifacts"]["center_dim"] == 1);
  CHECK(r.body["artifacts"]["derived_dim"] == 5);

  RunResult s = run("verify sl2");
  CHECK(s.code == 0);
  CHECK(s.body["artifacts"]["killing_signature"]["positive"] == 2);
  CHECK(s.body["artifacts"]["killing_signature"]["negative"] == 1);
  CHECK(s.body["artifacts"]["killing_signature"]["zero"] == 0);
}

TEST_CASE("verify flags a tampered tensor with exit 1") {
  json broken = algebra_to_json(make_sl2());
  for (json& br : broken["brackets"])
    if (br["i"] == 0 && br["j"] == 2) br["terms"][0]["c"] = "-3";
  auto path = temp_file("tampered_sl2.json", broken.dump());
  RunResult r = run("verify " + path.string());
  CHECK(r.code == 1);
  CHECK(check_status(r.body, "jacobi", "fail"));
  std::filesystem::remove(path);
}

TEST_CASE("verify rejects malformed input with exit 2") {
  CHECK(run("verify nosuchalgebra").code == 2);
  CHECK(run("verify heL()").code == 2);
  auto path = temp_file("broken.json", "{ not json");
  CHECK(run("verify " + path.string()).code == 2);
  std::filesystem::remove(path);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate sl2").code == 2);
}

TEST_CASE("recognize reports the canonical lambda") {
  RunResult r = run("recognize heL(2,4)");
  CHECK(r.code == 0);
  const json& rec = r.body["artifacts"]["recognition"];
  CHECK(rec["family"] == "twisted_heisenberg");
  CHECK(rec["lambda"][0] == "1");
  CHECK(rec["lambda"][1] == "2");
  CHECK(rec["residual"] == "0");
  CHECK(check_status(r.body, "canonical_map", "pass"));

  // a JSON algebra file round trips through the same path
  auto path = temp_file("he1.json", algebra_to_json(make_heisenberg(1)).dump());
  RunResult h = run("recognize " + path.string());
  CHECK(h.code == 0);
  CHECK(h.body["artifacts"]["recognition"]["type_tag"] == "heisenberg(1)");
  std::filesystem::remove(path);

  RunResult k = run("recognize so3");
  CHECK(k.code == 0);  // no map is expected for the compact branch
  CHECK(k.body["artifacts"]["recognition"]["family"] == "compact_semisimple");
}

TEST_CASE("form suite with the standard Lorentz form") {
  RunResult r = run("form heL(1) --standard --star Z,X1 --star 0");
  CHECK(r.code == 0);
  CHECK(check_status(r.body, "ad_invariant", "pass"));
  CHECK(check_status(r.body, "star(Z,X1)", "pass"));
  CHECK(check_status(r.body, "star(0)", "pass"));
  CHECK(r.body["artifacts"]["signature"]["positive"] == 3);
  CHECK(r.body["artifacts"]["normal_form"]["mu"] == "1");

  RunResult bad = run("form heL(1) --standard --star T-Z");
  CHECK(bad.code == 1);
  CHECK(check_status(bad.body, "star(T-Z)", "fail"));
  const json& star = bad.body["artifacts"]["star"][0];
  CHECK(star["witness_norm"] == "-2");

  CHECK(run("form heL(1) --standard --star Q").code == 2);
  CHECK(run("form heL(1)").code == 2);
  CHECK(run("form sl2 --standard").code == 2);
}

TEST_CASE("form accepts a matrix file") {
  QMat b = standard_lorentz_form(1) * Rat(2);
  auto path = temp_file("doubled.json", matrix_json(b).dump());
  RunResult r = run("form heL(1) --form " + path.string());
  CHECK(r.code == 0);
  CHECK(r.body["artifacts"]["normal_form"]["c_rational"] == false);
  std::filesystem::remove(path);
}

TEST_CASE("model pure-S and model files") {
  RunResult r = run("model pure-S --lambda 1");
  CHECK(r.code == 0);
  CHECK(r.body["artifacts"]["curvature"]["positivity"]["ricci_tt"] == "1/2");
  CHECK(r.body["artifacts"]["curvature"]["max_discrepancy"] == "0");
  CHECK(r.body["artifacts"]["special"] == true);
  CHECK(check_status(r.body, "ricci_oracle_match", "pass"));
  CHECK(check_status(r.body, "ricci_tt_positive", "pass"));

  json mj = {{"lambda", {"1"}},
             {"p_dim", 2},
             {"p_brackets",
              json::array({json{{"i", 0}, {"j", 1},
                                {"terms", json::array({json{{"k", 2}, {"c", "1"}}})}}})},
             {"p_metric", {{1, 0}, {0, 1}}}};
  auto path = temp_file("model.json", mj.dump());
  RunResult m = run("model " + path.string() + " --zz-in-N 3/2");
  CHECK(m.code == 0);
  CHECK(m.body["artifacts"]["special"] == false);
  CHECK(m.body["artifacts"]["zz_in_N"] == "3/2");
  CHECK(m.body["artifacts"]["curvature"]["positivity"]["ricci_tt"] == "1");
  std::filesystem::remove(path);

  CHECK(run("model pure-S").code == 2);
  CHECK(run("model pure-S --lambda 0").code == 2);
}

TEST_CASE("isotropy classification") {
  RunResult r = run("isotropy heL(1) --probes 100");
  CHECK(r.code == 0);
  CHECK(r.body["artifacts"]["classification"]["verdict"] == "weakly_irreducible");
  CHECK(r.body["artifacts"]["classification"]["probes_used"] == 100);
  CHECK(r.body["artifacts"]["reference_form"] == "standard");

  CHECK(run("isotropy heL(1) --expect weakly_irreducible").code == 0);
  CHECK(run("isotropy heL(1) --expect irreducible").code == 1);
  CHECK(run("isotropy so3 --expect irreducible").code == 0);

  RunResult seeded = run("isotropy heL(1) --probes 5 --seed 3", "HOMSPACE_SEED=42");
  CHECK(seeded.body["artifacts"]["seed"] == 42);
}

TEST_CASE("lambda canonicalization and equivalence") {
  RunResult c = run("lambda 2,4");
  CHECK(c.code == 0);
  CHECK(c.body["artifacts"]["canonical"][0] == "1");
  CHECK(c.body["artifacts"]["canonical"][1] == "2");
  CHECK(c.body["artifacts"]["rationalized"] == false);

  RunResult frac = run("lambda 1/2,1/3");
  CHECK(frac.code == 0);
  CHECK(frac.body["artifacts"]["canonical"][0] == "2");
  CHECK(frac.body["artifacts"]["canonical"][1] == "3");
  CHECK(frac.body["artifacts"]["rationalized"] == true);

  CHECK(run("lambda 1,2 3,6").code == 0);
  CHECK(run("lambda 1,2 1,3").code == 1);
  CHECK(run("lambda x").code == 2);
}

TEST_CASE("reports are deterministic") {
  RunResult a = run("recognize heL(1,5)");
  RunResult b = run("recognize heL(1,5)");
  CHECK(a.out == b.out);
  RunResult i1 = run("isotropy heL(2) --probes 20 --seed 9");
  RunResult i2 = run("isotropy heL(2) --probes 20 --seed 9");
  CHECK(i1.out == i2.out);
}
