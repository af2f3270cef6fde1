#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include <json.hpp>

#include "ssdb/linalg.hpp"
#include "ssdb/tolerance.hpp"

namespace ssdb::cli {

using nlohmann::json;

struct GlobalOptions {
  std::string format = "json";  // "json" or "text"
  double tol_abs = 1e-9;
  double rank_tol = 1e-10;

  Tolerance tolerance() const { return Tolerance(tol_abs, rank_tol); }
};

/// A finished report plus the process exit code it implies
/// (0 success/true, 1 false verdict, 2 error).
struct CommandResult {
  json report;
  int exit_code = 0;
};

/// Inline JSON (first non-space character '{' or '[') or a file path.
/// String-valued "space" fields anywhere in the result are replaced by the
/// parsed contents of the referenced file, resolved against `base` when the
/// path is not directly readable.
json load_document(const std::string& arg, const std::filesystem::path& base = ".");

/// "1,-1,2" (optionally bracketed) -> vector. Throws ParseError.
Vec parse_inline_vector(const std::string& text);

CommandResult run_validate(const json& space_doc, const GlobalOptions& opt);
CommandResult run_check_positive(const json& doc, const GlobalOptions& opt);
CommandResult run_complement(const json& doc, const GlobalOptions& opt);
CommandResult run_check_maximal(const json& doc, const std::string& method, int trials,
                                std::uint64_t seed, const GlobalOptions& opt);
CommandResult run_decompose(const json& doc, const Vec& point, bool force,
                            const GlobalOptions& opt);
CommandResult run_conjugate(const json& doc, const Vec& at, const GlobalOptions& opt);
CommandResult run_relation(const std::string& action, const json& doc, const std::string& method,
                           const GlobalOptions& opt);
CommandResult run_demo(const GlobalOptions& opt);
CommandResult run_batch(const std::string& directory, const GlobalOptions& opt);

/// Runs `body`, turning any thrown error into an error report with exit
/// code 2 so the process never dies on an exception path.
CommandResult run_guarded(const std::string& command, const GlobalOptions& opt,
                          const std::function<CommandResult()>& body);

/// Prints the report in the selected format and returns the exit code.
int emit(const CommandResult& result, const GlobalOptions& opt);

}  // namespace ssdb::cli
