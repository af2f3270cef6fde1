#include "ssdb/json_io.hpp"

#include <cstdio>

#include "ssdb/linalg.hpp"

namespace ssdb::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    parse_fail(std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

double number_from(const json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

int positive_int_from(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v <= 0 || v > 1 << 20) parse_fail(std::string(what) + " must be a positive integer");
  return static_cast<int>(v);
}

Space resolve_space(const json& doc, const char* key, const Tolerance& tol,
                    const std::optional<Space>& fallback) {
  if (doc.is_object() && doc.contains(key)) {
    const Space parsed = space_from_json(doc.at(key), tol);
    if (fallback && !parsed.same_as(*fallback, tol)) {
      parse_fail("embedded space disagrees with the provided one");
    }
    return parsed;
  }
  if (fallback) return *fallback;
  parse_fail(std::string("missing field \"") + key + "\"");
}

}  // namespace

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vec(m.row(r))));
  return out;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) parse_fail("vector must be a JSON array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const json& entry : j) v(i++) = number_from(entry, "vector entry");
  return v;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_fail("matrix must be a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Vec first = vec_from_json(j.at(0));
  Mat m(rows, first.size());
  m.row(0) = first;
  for (Eigen::Index r = 1; r < rows; ++r) {
    Vec row = vec_from_json(j.at(static_cast<std::size_t>(r)));
    if (row.size() != m.cols()) parse_fail("matrix rows have unequal lengths");
    m.row(r) = row;
  }
  return m;
}

Space space_from_json(const json& doc, const Tolerance& tol) {
  if (!doc.is_object()) parse_fail("space document must be a JSON object");
  if (doc.contains("builder")) {
    const json& b = doc.at("builder");
    if (!b.is_string()) parse_fail("\"builder\" must be a string");
    const std::string name = b.get<std::string>();
    if (name == "paper_r3") return Space::paper_r3();
    const int n = positive_int_from(field(doc, "n"), "\"n\"");
    if (name == "hilbert") return Space::hilbert(n);
    if (name == "anti_hilbert") return Space::anti_hilbert(n);
    if (name == "product") return Space::product(n);
    parse_fail("unknown builder \"" + name + "\"");
  }
  const Mat pairing = mat_from_json(field(doc, "pairing"));
  if (doc.contains("dim") &&
      positive_int_from(doc.at("dim"), "\"dim\"") != static_cast<int>(pairing.rows())) {
    parse_fail("\"dim\" disagrees with the pairing matrix size");
  }
  return Space::validated(pairing, tol);
}

Subspace subspace_from_json(const json& doc, const Tolerance& tol,
                            const std::optional<Space>& fallback_space) {
  if (!doc.is_object()) parse_fail("subspace document must be a JSON object");
  const Space space = resolve_space(doc, "space", tol, fallback_space);
  const json& gens = field(doc, "generators");
  if (!gens.is_array()) parse_fail("\"generators\" must be an array of vectors");
  std::vector<Vec> generators;
  generators.reserve(gens.size());
  for (const json& g : gens) generators.push_back(vec_from_json(g));
  return Subspace::span(space, generators, tol);
}

PointSet pointset_from_json(const json& doc, const Tolerance& tol,
                            const std::optional<Space>& fallback_space) {
  if (!doc.is_object()) parse_fail("point-set document must be a JSON object");
  const Space space = resolve_space(doc, "space", tol, fallback_space);
  const json& pts = field(doc, "points");
  if (!pts.is_array() || pts.empty()) parse_fail("\"points\" must be a nonempty array of vectors");
  std::vector<Vec> points;
  points.reserve(pts.size());
  for (const json& p : pts) points.push_back(vec_from_json(p));
  return PointSet(space, std::move(points));
}

QuadraticFunctional functional_from_json(const json& doc, const Tolerance& tol,
                                         const std::optional<Space>& fallback_space) {
  if (!doc.is_object()) parse_fail("functional document must be a JSON object");
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) parse_fail("\"kind\" must be a string");
  const std::string name = kind.get<std::string>();

  if (name == "qA") {
    std::optional<Space> space;
    if (doc.contains("space") || fallback_space) {
      space = resolve_space(doc, "space", tol, fallback_space);
    }
    return QuadraticFunctional::restriction_of_q(
        subspace_from_json(field(doc, "subspace"), tol, space));
  }
  if (name == "quadratic") {
    const Space space = resolve_space(doc, "space", tol, fallback_space);
    const Mat h = mat_from_json(field(doc, "H"));
    const Vec l = vec_from_json(field(doc, "l"));
    const double kappa = number_from(field(doc, "kappa"), "\"kappa\"");
    const json& dom = field(doc, "dom");
    if (!dom.is_object()) parse_fail("\"dom\" must be a JSON object");
    const json& gens = field(dom, "generators");
    if (!gens.is_array()) parse_fail("\"generators\" must be an array of vectors");
    std::vector<Vec> generators;
    generators.reserve(gens.size());
    for (const json& g : gens) generators.push_back(vec_from_json(g));
    Vec offset = Vec::Zero(space.dim());
    if (dom.contains("offset")) offset = vec_from_json(dom.at("offset"));
    const Subspace dom_span = Subspace::span(space, generators, tol);
    return QuadraticFunctional(space, h, l, kappa, dom_span.basis(), offset, tol);
  }
  parse_fail("unknown functional kind \"" + name + "\"");
}

LinearRelation relation_from_json(const json& doc, const Tolerance& tol) {
  if (!doc.is_object()) parse_fail("relation document must be a JSON object");
  const int n = positive_int_from(field(doc, "n"), "\"n\"");
  const bool has_graph = doc.contains("graph");
  const bool has_pairs = doc.contains("pairs");
  if (has_graph == has_pairs) {
    parse_fail("relation documents need exactly one of \"graph\" or \"pairs\"");
  }
  if (has_graph) {
    const Mat s = mat_from_json(doc.at("graph"));
    if (s.rows() != n || s.cols() != n) parse_fail("\"graph\" must be an n-by-n matrix");
    return LinearRelation::from_graph(s, tol);
  }
  const json& prs = doc.at("pairs");
  if (!prs.is_array()) parse_fail("\"pairs\" must be an array of 2n-vectors");
  std::vector<Vec> pairs;
  pairs.reserve(prs.size());
  for (const json& p : prs) pairs.push_back(vec_from_json(p));
  return LinearRelation::from_pairs(n, pairs, tol);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char ch : bytes) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string digest_hex(const json& doc) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(doc.dump())));
  return std::string(buf);
}

}  // namespace ssdb::io
