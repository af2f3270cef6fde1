#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ssdb/relation.hpp"
#include "ssdb/subspace.hpp"
#include "support/generators.hpp"

extern std::string g_ssdb_bin;

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ssdb;
using testing::vmake;

namespace {

struct CliRun {
  std::string out;
  int code = -1;
};

std::string shq(const std::string& s) { return "'" + s + "'"; }

CliRun run_cli(const std::string& args) {
  REQUIRE_FALSE(g_ssdb_bin.empty());
  const std::string cmd = shq(g_ssdb_bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliRun run;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) {
    run.out.append(buf, got);
  }
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

json report_of(const CliRun& run) {
  const json doc = json::parse(run.out, nullptr, false);
  REQUIRE_FALSE(doc.is_discarded());
  return doc;
}

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "ssdb-cli-suite";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_doc(const std::string& name, const std::string& body) {
  const fs::path path = scratch() / name;
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << body;
  return path;
}

Vec vec_of(const json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

const char* kLineDoc =
    R"({"space":{"builder":"paper_r3"},"generators":[[1,-1,2]]})";
const char* kMaximalDoc =
    R"({"space":{"builder":"paper_r3"},"generators":[[1,1,0],[0,0,1]]})";

}  // namespace

TEST_CASE("validate reports the space and its shape") {
  const fs::path doc = write_doc("hilbert3.json", R"({"builder":"hilbert","n":3})");
  const CliRun run = run_cli("validate " + shq(doc.string()));
  CHECK(run.code == 0);
  const json report = report_of(run);
  CHECK(report["command"] == "validate");
  CHECK(report["verdict"] == true);
  CHECK(report["dim"] == 3);
  CHECK(report["seed"] == 42);
  CHECK(report["tolerance"]["abs"] == 1e-9);
  CHECK(report["tolerance"]["rank"] == 1e-10);
  const std::string digest = report["inputs_digest"].get<std::string>();
  CHECK(digest.size() == 16);
  CHECK(digest.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("validate rejects a non-involutive pairing with exit 2") {
  const CliRun run = run_cli(R"(validate '{"pairing":[[2,0],[0,2]]}')");
  CHECK(run.code == 2);
  const json report = report_of(run);
  CHECK(report["error"]["code"] == "NotInvolutive");
  CHECK(report.contains("error"));
  CHECK_FALSE(report.contains("inputs_digest"));
}

TEST_CASE("text format flattens the report") {
  const CliRun run = run_cli(R"(--format text validate '{"builder":"hilbert","n":3}')");
  CHECK(run.code == 0);
  CHECK(run.out.find("verdict: true") != std::string::npos);
  CHECK(run.out.find("dim: 3") != std::string::npos);
  CHECK(run.out.find("command: validate") != std::string::npos);
}

TEST_CASE("missing files and bad usage exit with 2") {
  CHECK(run_cli("validate /no/such/file.json").code == 2);
  CHECK(run_cli("no-such-subcommand").code == 2);
  CHECK(run_cli("validate").code == 2);  // missing required argument
  CHECK(run_cli(std::string("check-maximal --method bogus ") + shq(kLineDoc)).code == 2);
}

TEST_CASE("check-positive on subspaces") {
  CHECK(run_cli(std::string("check-positive ") + shq(kLineDoc)).code == 0);
  const CliRun bad = run_cli(
      R"(check-positive '{"space":{"builder":"paper_r3"},"generators":[[1,-1,0]]}')");
  CHECK(bad.code == 1);
  CHECK(report_of(bad)["verdict"] == false);
}

TEST_CASE("check-positive on point sets reports the violating pair") {
  const CliRun ok = run_cli(
      R"(check-positive '{"space":{"builder":"product","n":1},"points":[[0,0],[1,1],[2,4]]}')");
  CHECK(ok.code == 0);
  CHECK(report_of(ok)["verdict"] == true);

  const CliRun bad = run_cli(
      R"(check-positive '{"space":{"builder":"product","n":1},"points":[[0,0],[1,-1]]}')");
  CHECK(bad.code == 1);
  const json report = report_of(bad);
  CHECK(report["verdict"] == false);
  REQUIRE(report.contains("witness_indices"));
  CHECK(report["witness_indices"][0] == 0);
  CHECK(report["witness_indices"][1] == 1);
  // Replay the reported pair through the library.
  const Vec b = vec_of(report["witnesses"][0]);
  const Vec c = vec_of(report["witnesses"][1]);
  const double value = report["residuals"]["worst_pair_value"].get<double>();
  CHECK(Space::product(1).q(b - c) == doctest::Approx(value));
  CHECK(value < 0.0);
}

TEST_CASE("complement emits a pairing-orthogonal basis") {
  const CliRun run = run_cli(std::string("complement ") + shq(kLineDoc));
  CHECK(run.code == 0);
  const json report = report_of(run);
  CHECK(report["dim"] == 2);
  REQUIRE(report["basis"].size() == 2);
  const Space r3 = Space::paper_r3();
  const Vec u = vmake({1, -1, 2});
  for (const json& col : report["basis"]) {
    CHECK(std::abs(r3.bracket(u, vec_of(col))) <= 1e-9);
  }
}

TEST_CASE("check-maximal separates the two verdicts") {
  const CliRun maximal = run_cli(std::string("check-maximal ") + shq(kMaximalDoc));
  CHECK(maximal.code == 0);
  CHECK(report_of(maximal)["verdict"] == true);

  const CliRun line = run_cli(std::string("check-maximal ") + shq(kLineDoc));
  CHECK(line.code == 1);
  const json report = report_of(line);
  CHECK(report["verdict"] == false);
  CHECK(report["method"] == "theorem");
  // The emitted witness must genuinely extend the subspace.
  const Space r3 = Space::paper_r3();
  const Subspace sub = Subspace::span(r3, {vmake({1, -1, 2})});
  const Vec w = vec_of(report["witnesses"][0]);
  CHECK_FALSE(sub.contains(w));
  CHECK(r3.q(w) == doctest::Approx(report["residuals"]["witness_q"].get<double>()));
  CHECK(r3.q(w) > 0.0);
  const ExtReal inf = sub.inf_q_over_translate(w);
  REQUIRE(inf.finite());
  CHECK(inf.value() >= -1e-8);

  const CliRun not_positive = run_cli(
      R"(check-maximal '{"space":{"builder":"paper_r3"},"generators":[[1,-1,0]]}')");
  CHECK(not_positive.code == 2);
  CHECK(report_of(not_positive)["error"]["code"] == "NotQPositive");
}

TEST_CASE("oracle runs are seeded and reproducible") {
  const std::string args =
      std::string("check-maximal --method oracle --trials 200 --seed 42 ") + shq(kLineDoc);
  const CliRun first = run_cli(args);
  const CliRun second = run_cli(args);
  CHECK(first.code == 1);
  CHECK(first.out == second.out);  // byte-identical reports
  const json report = report_of(first);
  CHECK(report["verdict"] == "non-maximal");
  CHECK(report["seed"] == 42);
  // Witness replay: outside the line, translate infimum still nonnegative.
  const Space r3 = Space::paper_r3();
  const Subspace sub = Subspace::span(r3, {vmake({1, -1, 2})});
  const Vec w = vec_of(report["witnesses"][0]);
  CHECK_FALSE(sub.contains(w));
  const ExtReal inf = sub.inf_q_over_translate(w);
  REQUIRE(inf.finite());
  CHECK(inf.value() >= -1e-9);

  const CliRun maximal =
      run_cli(std::string("check-maximal --method oracle --trials 64 --seed 7 ") +
              shq(kMaximalDoc));
  CHECK(maximal.code == 0);
  const json mreport = report_of(maximal);
  CHECK(mreport["verdict"] == "maximal-probable");
  CHECK(mreport["trials"] == 64);
  CHECK(mreport["seed"] == 7);
}

TEST_CASE("decompose splits the pinned product example") {
  const CliRun run = run_cli(
      R"(decompose '{"space":{"builder":"product","n":1},"generators":[[1,1]]}' --point '2,0')");
  CHECK(run.code == 0);
  const json report = report_of(run);
  CHECK(report["verdict"] == true);
  CHECK((vec_of(report["a"]) - vmake({1, 1})).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((vec_of(report["n"]) - vmake({-1, 1})).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((vec_of(report["d"]) - vmake({-1, 1})).cwiseAbs().maxCoeff() <= 1e-9);
  for (const char* key : {"domain", "recomposition", "nqg0", "eq9", "fenchel_equality"}) {
    CHECK(report["residuals"][key].get<double>() <= 1e-9);
  }
}

TEST_CASE("decompose guards its preconditions and honors --force") {
  const std::string line = shq(kLineDoc);
  const CliRun refused = run_cli("decompose " + line + " --point '1,0,0'");
  CHECK(refused.code == 2);
  CHECK(report_of(refused)["error"]["code"] == "ComplementNotQNegative");

  const CliRun forced = run_cli("decompose " + line + " --point '1,0,0' --force");
  CHECK(forced.code == 1);  // solve runs; the null-vector conclusion fails
  const json report = report_of(forced);
  CHECK(report["verdict"] == false);
  CHECK(vec_of(report["a"]).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(report["residuals"]["nqg0"].get<double>() == doctest::Approx(0.5));
  CHECK(report["residuals"]["domain"].get<double>() <= 1e-12);
  CHECK(report["residuals"]["recomposition"].get<double>() <= 1e-12);
  CHECK(report["residuals"]["eq9"].get<double>() <= 1e-12);
}

TEST_CASE("conjugate evaluates the restricted quadratic") {
  const CliRun run = run_cli(
      R"(conjugate '{"kind":"qA","subspace":{"space":{"builder":"paper_r3"},"generators":[[1,-1,2]]}}' --at '1,-1,2')");
  CHECK(run.code == 0);
  const json report = report_of(run);
  CHECK(report["value"].get<double>() == doctest::Approx(1.0));
  REQUIRE(report.contains("argmax"));
  const Vec argmax = vec_of(report["argmax"]);
  const Space r3 = Space::paper_r3();
  const Vec u = vmake({1, -1, 2});
  CHECK(r3.bracket(argmax, u) - r3.q(argmax) == doctest::Approx(1.0));

  const CliRun infinite = run_cli(
      R"(conjugate '{"kind":"qA","subspace":{"space":{"builder":"paper_r3"},"generators":[[1,-1,0]]}}' --at '0,0,0')");
  CHECK(infinite.code == 0);
  const json ireport = report_of(infinite);
  CHECK(ireport["value"] == "inf");
  CHECK_FALSE(ireport.contains("argmax"));
}

TEST_CASE("relation actions") {
  const CliRun rot = run_cli(R"(relation monotone '{"n":2,"graph":[[0,-1],[1,0]]}')");
  CHECK(rot.code == 0);
  const json rreport = report_of(rot);
  CHECK(rreport["verdict"] == true);
  CHECK(rreport["direct_check_agrees"] == true);

  CHECK(run_cli(R"(relation monotone '{"n":1,"graph":[[-1]]}')").code == 1);

  for (const char* method : {"complement", "adjoint-monotone", "adjoint-maximal"}) {
    const CliRun max = run_cli(std::string("relation maximal --method ") + method +
                               R"( '{"n":2,"graph":[[0,-1],[1,0]]}')");
    CHECK(max.code == 0);
    CHECK(report_of(max)["verdict"] == true);
  }

  const CliRun not_monotone = run_cli(R"(relation maximal '{"n":1,"pairs":[[1,-1]]}')");
  CHECK(not_monotone.code == 2);
  CHECK(report_of(not_monotone)["error"]["code"] == "NotMonotone");

  const CliRun adjoint = run_cli(R"(relation adjoint '{"n":2,"graph":[[0,-1],[1,0]]}')");
  CHECK(adjoint.code == 0);
  const json areport = report_of(adjoint);
  CHECK(areport["dim"] == 2);
  // The adjoint of graph(S) is graph(S'), replayed through the library.
  Mat s(2, 2);
  s << 0, -1, 1, 0;
  std::vector<Vec> cols;
  for (const json& col : areport["basis"]) cols.push_back(vec_of(col));
  const Subspace parsed = Subspace::span(Space::product(2), cols);
  const Subspace expected = LinearRelation::from_graph(Mat(s.transpose())).subspace();
  CHECK(projector_distance(parsed, expected) <= 1e-9);
}

TEST_CASE("demo runs its whole catalogue green") {
  const CliRun run = run_cli("demo");
  CHECK(run.code == 0);
  const json report = report_of(run);
  CHECK(report["verdict"] == true);
  REQUIRE(report["items"].size() == 7);
  const char* names[] = {"helix_points_q_positive", "scaled_helix_violating_pair",
                         "line_q_positive",         "line_not_maximal",
                         "line_translate_infimum",  "identity_graph_maximal",
                         "projected_line_not_monotone"};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(report["items"][i]["name"] == names[i]);
    CHECK(report["items"][i]["ok"] == true);
  }
  // The curve example pins its violating pair and value.
  const json& helix = report["items"][1];
  CHECK(helix["witness_indices"][0] == 0);
  CHECK(helix["witness_indices"][1] == 1);
  CHECK(std::abs(helix["value"].get<double>() -
                 helix["expected_value"].get<double>()) <= 1e-6);

  const CliRun again = run_cli("demo");
  CHECK(run.out == again.out);
}

TEST_CASE("documents can reference space files") {
  write_doc("refs/space_r3.json", R"({"builder":"paper_r3"})");
  const fs::path doc = write_doc("refs/line.json",
                                 R"({"space":"space_r3.json","generators":[[1,-1,2]]})");
  const CliRun run = run_cli("check-positive " + shq(doc.string()));
  CHECK(run.code == 0);
  CHECK(report_of(run)["verdict"] == true);
}

TEST_CASE("batch runs a directory in filename order") {
  const fs::path dir = scratch() / "jobs";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_doc("jobs/01_validate.json",
            R"({"command":"validate","doc":{"builder":"hilbert","n":2}})");
  write_doc("jobs/02_line.json",
            std::string(R"({"command":"check-maximal","doc":)") + kLineDoc + "}");
  write_doc("jobs/03_broken.json", R"({"command":"frobnicate"})");

  const CliRun run = run_cli("batch " + shq(dir.string()));
  CHECK(run.code == 2);  // worst of 0, 1, 2
  const json report = report_of(run);
  CHECK(report["verdict"] == false);
  REQUIRE(report["reports"].size() == 3);
  CHECK(report["reports"][0]["file"] == "01_validate.json");
  CHECK(report["reports"][0]["verdict"] == true);
  CHECK(report["reports"][1]["file"] == "02_line.json");
  CHECK(report["reports"][1]["verdict"] == false);
  CHECK(report["reports"][2]["file"] == "03_broken.json");
  CHECK(report["reports"][2]["error"]["code"] == "ParseError");

  // An all-green directory exits 0.
  const fs::path good = scratch() / "jobs-good";
  fs::remove_all(good);
  fs::create_directories(good);
  write_doc("jobs-good/only.json",
            R"({"command":"decompose","doc":{"space":{"builder":"product","n":1},"generators":[[1,1]]},"point":[2,0]})");
  const CliRun green = run_cli("batch " + shq(good.string()));
  CHECK(green.code == 0);
  const json greport = report_of(green);
  CHECK(greport["verdict"] == true);
  CHECK(greport["reports"][0]["command"] == "decompose");
}
