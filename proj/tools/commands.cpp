#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <vector>

#include "ssdb/decomposition.hpp"
#include "ssdb/errors.hpp"
#include "ssdb/extended_real.hpp"
#include "ssdb/functional.hpp"
#include "ssdb/json_io.hpp"
#include "ssdb/relation.hpp"
#include "ssdb/space.hpp"
#include "ssdb/subspace.hpp"

namespace fs = std::filesystem;

namespace ssdb::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const double x : xs) v(i++) = x;
  return v;
}

json parse_text(const std::string& text, const std::string& origin) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::ParseError, "invalid JSON in " + origin);
  }
  return doc;
}

json load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot read document file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path.string());
}

// Replaces string-valued "space" fields with the parsed contents of the
// referenced file so the io layer only ever sees fully inlined documents.
json resolve_refs(const json& node, const fs::path& base) {
  if (node.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : node.items()) {
      if (key == "space" && value.is_string()) {
        fs::path ref = value.get<std::string>();
        if (!fs::exists(ref) && ref.is_relative()) ref = base / ref;
        out[key] = resolve_refs(load_file(ref), ref.parent_path());
      } else {
        out[key] = resolve_refs(value, base);
      }
    }
    return out;
  }
  if (node.is_array()) {
    json out = json::array();
    for (const json& value : node) out.push_back(resolve_refs(value, base));
    return out;
  }
  return node;
}

json base_report(const std::string& command, const json& inputs, const GlobalOptions& opt,
                 std::uint64_t seed = kDefaultSeed) {
  json report;
  report["command"] = command;
  report["inputs_digest"] = io::digest_hex(inputs);
  report["seed"] = seed;
  report["tolerance"] = {{"abs", opt.tol_abs}, {"rank", opt.rank_tol}};
  return report;
}

json ext_to_json(const ExtReal& v) {
  if (v.pos_infinite()) return "inf";
  if (v.neg_infinite()) return "-inf";
  return v.value();
}

json basis_to_json(const Mat& basis) {
  json out = json::array();
  for (Eigen::Index i = 0; i < basis.cols(); ++i) out.push_back(io::to_json(Vec(basis.col(i))));
  return out;
}

void render_text(std::ostream& os, const json& node, const std::string& prefix) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      render_text(os, value, prefix.empty() ? key : prefix + "." + key);
    }
    return;
  }
  if (node.is_string()) {
    os << prefix << ": " << node.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << node.dump() << "\n";
  }
}

CommandResult dispatch_job(const json& job, const fs::path& base, const GlobalOptions& opt);

}  // namespace

json load_document(const std::string& arg, const fs::path& base) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return resolve_refs(parse_text(arg, "command-line document"), base);
  }
  fs::path path = arg;
  if (!fs::exists(path) && path.is_relative()) path = base / path;
  return resolve_refs(load_file(path), path.parent_path());
}

Vec parse_inline_vector(const std::string& text) {
  std::string body = text;
  for (char& ch : body) {
    if (ch == '[' || ch == ']' || ch == '(' || ch == ')') ch = ' ';
  }
  std::vector<double> values;
  std::stringstream stream(body);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "invalid vector component \"" + token + "\"");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) {
      throw Error(ErrorCode::ParseError, "invalid vector component \"" + token + "\"");
    }
    values.push_back(value);
  }
  if (values.empty()) throw Error(ErrorCode::ParseError, "empty vector literal");
  Vec v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

CommandResult run_validate(const json& space_doc, const GlobalOptions& opt) {
  const Space space = io::space_from_json(space_doc, opt.tolerance());
  json report = base_report("validate", json::array({space_doc}), opt);
  report["verdict"] = true;
  report["dim"] = space.dim();
  return {report, 0};
}

CommandResult run_check_positive(const json& doc, const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  json report = base_report("check-positive", json::array({doc}), opt);
  const bool has_generators = doc.is_object() && doc.contains("generators");
  const bool has_points = doc.is_object() && doc.contains("points");
  if (has_generators == has_points) {
    throw Error(ErrorCode::ParseError,
                "document needs exactly one of \"generators\" or \"points\"");
  }
  if (has_generators) {
    const Subspace a = io::subspace_from_json(doc, tol);
    const bool verdict = a.is_q_positive(tol);
    report["verdict"] = verdict;
    return {report, verdict ? 0 : 1};
  }
  const PointSet points = io::pointset_from_json(doc, tol);
  const PairwiseCheck check = is_q_positive(points, tol);
  report["verdict"] = check.positive;
  if (!check.positive) {
    report["witness_indices"] = {check.witness->first, check.witness->second};
    report["witnesses"] = json::array({io::to_json(points.points[check.witness->first]),
                                       io::to_json(points.points[check.witness->second])});
    report["residuals"] = {{"worst_pair_value", check.worst_value}};
  }
  return {report, check.positive ? 0 : 1};
}

CommandResult run_complement(const json& doc, const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  const Subspace a = io::subspace_from_json(doc, tol);
  const Subspace comp = a.q_complement(tol);
  json report = base_report("complement", json::array({doc}), opt);
  report["verdict"] = true;
  report["dim"] = comp.dim();
  report["basis"] = basis_to_json(comp.basis());
  return {report, 0};
}

CommandResult run_check_maximal(const json& doc, const std::string& method, int trials,
                                std::uint64_t seed, const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  const Subspace a = io::subspace_from_json(doc, tol);
  json report = base_report("check-maximal", json::array({doc}), opt, seed);
  report["method"] = method;
  if (method == "theorem") {
    const MaximalityCheck check = a.is_maximal_q_positive(tol);
    report["verdict"] = check.maximal;
    if (!check.maximal) {
      report["witnesses"] = json::array({io::to_json(*check.witness)});
      report["residuals"] = {{"witness_q", a.space().q(*check.witness)}};
    }
    return {report, check.maximal ? 0 : 1};
  }
  if (method == "oracle") {
    const OracleOutcome outcome = a.maximality_oracle(trials, seed, tol);
    report["verdict"] = outcome.non_maximal ? "non-maximal" : "maximal-probable";
    report["trials"] = outcome.trials;
    if (outcome.non_maximal) {
      report["witnesses"] = json::array({io::to_json(*outcome.witness)});
    }
    return {report, outcome.non_maximal ? 1 : 0};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown maximality method \"" + method + "\"");
}

CommandResult run_decompose(const json& doc, const Vec& point, bool force,
                            const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  const Subspace a = io::subspace_from_json(doc, tol);
  const Decomposition dec = decompose(a, point, tol, force);
  json report = base_report("decompose", json::array({doc, io::to_json(point)}), opt);
  report["a"] = io::to_json(dec.a);
  report["n"] = io::to_json(dec.nvec);
  report["d"] = io::to_json(dec.d);
  json residuals = json::object();
  double worst = 0.0;
  for (const auto& [name, value] : dec.residuals) {
    residuals[name] = value;
    worst = std::max(worst, value);
  }
  report["residuals"] = residuals;
  const bool verdict = worst <= tol.abs * (1.0 + point.squaredNorm());
  report["verdict"] = verdict;
  return {report, verdict ? 0 : 1};
}

CommandResult run_conjugate(const json& doc, const Vec& at, const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  const QuadraticFunctional f = io::functional_from_json(doc, tol);
  const ConjugateValue value = f.conjugate_with_argmax(at, tol);
  json report = base_report("conjugate", json::array({doc, io::to_json(at)}), opt);
  report["verdict"] = true;
  report["value"] = ext_to_json(value.value);
  if (value.argmax) report["argmax"] = io::to_json(*value.argmax);
  return {report, 0};
}

CommandResult run_relation(const std::string& action, const json& doc, const std::string& method,
                           const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  const LinearRelation relation = io::relation_from_json(doc, tol);
  json report = base_report("relation", json::array({doc}), opt);
  report["action"] = action;
  report["n"] = relation.operand_dim();
  if (action == "adjoint") {
    const LinearRelation adj = relation.adjoint(tol);
    report["verdict"] = true;
    report["dim"] = adj.subspace().dim();
    report["basis"] = basis_to_json(adj.subspace().basis());
    return {report, 0};
  }
  if (action == "monotone") {
    const bool verdict = relation.is_monotone(tol);
    report["verdict"] = verdict;
    report["direct_check_agrees"] = (relation.is_monotone_direct(tol) == verdict);
    return {report, verdict ? 0 : 1};
  }
  if (action == "maximal") {
    LinearRelation::MaximalityMethod m = LinearRelation::MaximalityMethod::ViaComplement;
    if (method == "adjoint-monotone") {
      m = LinearRelation::MaximalityMethod::ViaAdjointMonotone;
    } else if (method == "adjoint-maximal") {
      m = LinearRelation::MaximalityMethod::ViaAdjointMaximal;
    } else if (method != "complement") {
      throw Error(ErrorCode::InvalidArgument, "unknown relation method \"" + method + "\"");
    }
    report["method"] = method;
    const bool verdict = relation.is_maximal_monotone(m, tol);
    report["verdict"] = verdict;
    return {report, verdict ? 0 : 1};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown relation action \"" + action + "\"");
}

CommandResult run_demo(const GlobalOptions& opt) {
  const Tolerance tol = opt.tolerance();
  const Space r3 = Space::paper_r3();
  const json r3_doc = {{"builder", "paper_r3"}};
  json inputs = json::array();
  json items = json::array();
  bool all_ok = true;
  const auto push_item = [&](json item, bool ok) {
    item["ok"] = ok;
    all_ok = all_ok && ok;
    items.push_back(std::move(item));
  };

  {
    // Unit-pitch helix samples: every pairwise difference has q >= 0.
    std::vector<Vec> pts;
    json doc = {{"space", r3_doc}, {"points", json::array()}};
    for (int i = 0; i <= 12; ++i) {
      const double theta = 0.5 * i;
      pts.push_back(make_vec({std::cos(theta), std::sin(theta), theta}));
      doc["points"].push_back(io::to_json(pts.back()));
    }
    inputs.push_back(doc);
    const PairwiseCheck check = is_q_positive(PointSet(r3, pts), tol);
    push_item({{"name", "helix_points_q_positive"}, {"verdict", check.positive}}, check.positive);
  }

  {
    // Slowing the pitch to one half makes the quarter-turn pair violate.
    const std::vector<double> thetas = {0.0, M_PI / 2.0, M_PI, 2.0 * M_PI};
    std::vector<Vec> pts;
    json doc = {{"space", r3_doc}, {"points", json::array()}};
    for (const double theta : thetas) {
      pts.push_back(make_vec({std::cos(theta), std::sin(theta), 0.5 * theta}));
      doc["points"].push_back(io::to_json(pts.back()));
    }
    inputs.push_back(doc);
    const PairwiseCheck check = is_q_positive(PointSet(r3, pts), tol);
    const double expected = -1.0 + M_PI * M_PI / 32.0;
    const bool ok = !check.positive && check.witness && check.witness->first == 0 &&
                    check.witness->second == 1 && std::abs(check.worst_value - expected) <= 1e-6;
    json item = {{"name", "scaled_helix_violating_pair"},
                 {"verdict", check.positive},
                 {"expected_value", expected}};
    if (check.witness) {
      item["witness_indices"] = {check.witness->first, check.witness->second};
      item["witness_thetas"] = {thetas[check.witness->first], thetas[check.witness->second]};
      item["value"] = check.worst_value;
    }
    push_item(item, ok);
  }

  const json line_doc = {{"space", r3_doc},
                         {"generators", json::array({io::to_json(make_vec({1.0, -1.0, 2.0}))})}};
  const Subspace line = io::subspace_from_json(line_doc, tol);
  inputs.push_back(line_doc);

  {
    const bool verdict = line.is_q_positive(tol);
    push_item({{"name", "line_q_positive"}, {"verdict", verdict}}, verdict);
  }

  {
    const MaximalityCheck check = line.is_maximal_q_positive(tol);
    bool ok = !check.maximal && check.witness.has_value();
    json item = {{"name", "line_not_maximal"}, {"verdict", check.maximal}};
    if (check.witness) {
      const ExtReal inf = line.inf_q_over_translate(*check.witness, tol);
      ok = ok && !line.contains(*check.witness, tol) && inf.finite() && inf.value() >= -1e-8;
      item["witnesses"] = json::array({io::to_json(*check.witness)});
      item["witness_q"] = r3.q(*check.witness);
    }
    push_item(item, ok);
  }

  {
    const Vec point = make_vec({1.0, 1.0, 0.0});
    inputs.push_back(io::to_json(point));
    const ExtReal inf = line.inf_q_over_translate(point, tol);
    const bool ok = inf.finite() && std::abs(inf.value() - 1.0) <= 1e-9;
    push_item({{"name", "line_translate_infimum"},
               {"point", io::to_json(point)},
               {"value", ext_to_json(inf)},
               {"expected_value", 1.0}},
              ok);
  }

  {
    const json graph_doc = {{"n", 1}, {"graph", json::array({json::array({1.0})})}};
    inputs.push_back(graph_doc);
    const LinearRelation identity = io::relation_from_json(graph_doc, tol);
    const bool verdict =
        identity.is_maximal_monotone(LinearRelation::MaximalityMethod::ViaComplement, tol);
    push_item({{"name", "identity_graph_maximal"}, {"verdict", verdict}}, verdict);
  }

  {
    // First two coordinates of the q-positive line: not a monotone set.
    const Space product = Space::product(1);
    std::vector<Vec> pts;
    json doc = {{"space", {{"builder", "product"}, {"n", 1}}}, {"points", json::array()}};
    for (const double t : {0.0, 1.0, 2.0}) {
      pts.push_back(make_vec({t, -t}));
      doc["points"].push_back(io::to_json(pts.back()));
    }
    inputs.push_back(doc);
    const PairwiseCheck check = is_q_positive(PointSet(product, pts), tol);
    push_item({{"name", "projected_line_not_monotone"}, {"verdict", check.positive}},
              !check.positive);
  }

  json report = base_report("demo", inputs, opt);
  report["verdict"] = all_ok;
  report["items"] = items;
  return {report, all_ok ? 0 : 1};
}

namespace {

CommandResult dispatch_job(const json& job, const fs::path& base, const GlobalOptions& opt) {
  if (!job.is_object() || !job.contains("command") || !job.at("command").is_string()) {
    throw Error(ErrorCode::ParseError, "job document needs a string \"command\" field");
  }
  const std::string command = job.at("command").get<std::string>();
  const auto doc_field = [&](const char* key) -> json {
    if (!job.contains(key)) {
      throw Error(ErrorCode::ParseError, std::string("job needs a \"") + key + "\" field");
    }
    const json& value = job.at(key);
    if (value.is_string()) return load_document(value.get<std::string>(), base);
    return resolve_refs(value, base);
  };
  const auto vec_field = [&](const char* key) -> Vec {
    if (!job.contains(key)) {
      throw Error(ErrorCode::ParseError, std::string("job needs a \"") + key + "\" field");
    }
    const json& value = job.at(key);
    if (value.is_string()) return parse_inline_vector(value.get<std::string>());
    return io::vec_from_json(value);
  };

  if (command == "validate") return run_validate(doc_field("doc"), opt);
  if (command == "check-positive") return run_check_positive(doc_field("doc"), opt);
  if (command == "complement") return run_complement(doc_field("doc"), opt);
  if (command == "check-maximal") {
    return run_check_maximal(doc_field("doc"), job.value("method", std::string("theorem")),
                             job.value("trials", 2000), job.value("seed", kDefaultSeed), opt);
  }
  if (command == "decompose") {
    return run_decompose(doc_field("doc"), vec_field("point"), job.value("force", false), opt);
  }
  if (command == "conjugate") return run_conjugate(doc_field("doc"), vec_field("at"), opt);
  if (command == "relation") {
    return run_relation(job.value("action", std::string("monotone")), doc_field("doc"),
                        job.value("method", std::string("complement")), opt);
  }
  if (command == "demo") return run_demo(opt);
  throw Error(ErrorCode::ParseError, "unknown job command \"" + command + "\"");
}

}  // namespace

CommandResult run_batch(const std::string& directory, const GlobalOptions& opt) {
  const fs::path dir = directory;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::ParseError, "not a directory: " + directory);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  json inputs = json::array();
  json reports = json::array();
  int worst = 0;
  for (const fs::path& file : files) {
    const std::string name = file.filename().string();
    CommandResult result = run_guarded("batch-item", opt, [&]() {
      const json job = load_file(file);
      inputs.push_back(json{{"file", name}, {"job", job}});
      return dispatch_job(job, dir, opt);
    });
    result.report["file"] = name;
    reports.push_back(result.report);
    worst = std::max(worst, result.exit_code);
  }

  json report = base_report("batch", inputs, opt);
  report["directory"] = dir.string();
  report["verdict"] = (worst == 0);
  report["reports"] = reports;
  return {report, worst};
}

CommandResult run_guarded(const std::string& command, const GlobalOptions& opt,
                          const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const Error& err) {
    json report = base_report(command, json::array(), opt);
    report.erase("inputs_digest");  // inputs may not have parsed
    report["error"] = {{"code", to_string(err.code())}, {"message", err.what()}};
    return {report, 2};
  } catch (const std::exception& err) {
    json report = base_report(command, json::array(), opt);
    report.erase("inputs_digest");
    report["error"] = {{"code", "Unexpected"}, {"message", err.what()}};
    return {report, 2};
  }
}

int emit(const CommandResult& result, const GlobalOptions& opt) {
  if (opt.format == "text") {
    render_text(std::cout, result.report, "");
  } else {
    std::cout << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}

}  // namespace ssdb::cli
