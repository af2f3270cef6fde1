#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace ssdb::cli;

  GlobalOptions opt;
  int exit_code = 0;

  CLI::App app{"Checks and solvers for quadratic pairings, subspace positivity, "
               "transversal decompositions, and monotone linear relations"};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--tol", opt.tol_abs, "Absolute comparison tolerance")->capture_default_str();
  app.add_option("--rank-tol", opt.rank_tol, "Relative singular-value cutoff")
      ->capture_default_str();

  const auto guard = [&](const std::string& name, const std::function<CommandResult()>& body) {
    exit_code = emit(run_guarded(name, opt, body), opt);
  };

  std::string validate_doc;
  CLI::App* validate = app.add_subcommand("validate", "Validate a space document");
  validate->fallthrough();
  validate->add_option("doc", validate_doc, "Space document (inline JSON or file path)")
      ->required();
  validate->callback([&]() {
    guard("validate", [&]() { return run_validate(load_document(validate_doc), opt); });
  });

  std::string positive_doc;
  CLI::App* positive =
      app.add_subcommand("check-positive", "Pairing positivity of a subspace or point set");
  positive->fallthrough();
  positive->add_option("doc", positive_doc, "Subspace or point-set document")->required();
  positive->callback([&]() {
    guard("check-positive", [&]() { return run_check_positive(load_document(positive_doc), opt); });
  });

  std::string complement_doc;
  CLI::App* complement =
      app.add_subcommand("complement", "Pairing-orthogonal complement of a subspace");
  complement->fallthrough();
  complement->add_option("doc", complement_doc, "Subspace document")->required();
  complement->callback([&]() {
    guard("complement", [&]() { return run_complement(load_document(complement_doc), opt); });
  });

  std::string maximal_doc;
  std::string maximal_method = "theorem";
  int maximal_trials = 2000;
  std::uint64_t maximal_seed = 42;
  CLI::App* maximal =
      app.add_subcommand("check-maximal", "Maximal positivity of a positive subspace");
  maximal->fallthrough();
  maximal->add_option("doc", maximal_doc, "Subspace document")->required();
  maximal->add_option("--method", maximal_method, "Decision procedure")
      ->check(CLI::IsMember({"theorem", "oracle"}))
      ->capture_default_str();
  maximal->add_option("--trials", maximal_trials, "Oracle sampling budget")->capture_default_str();
  maximal->add_option("--seed", maximal_seed, "Oracle seed")->capture_default_str();
  maximal->callback([&]() {
    guard("check-maximal", [&]() {
      return run_check_maximal(load_document(maximal_doc), maximal_method, maximal_trials,
                               maximal_seed, opt);
    });
  });

  std::string decompose_doc;
  std::string decompose_point;
  bool decompose_force = false;
  CLI::App* dec = app.add_subcommand(
      "decompose", "Split a point against a subspace as c = a - n with a in A, n null");
  dec->fallthrough();
  dec->add_option("doc", decompose_doc, "Subspace document")->required();
  dec->add_option("--point", decompose_point, "Point to decompose, e.g. \"1,-1,2\"")->required();
  dec->add_flag("--force", decompose_force, "Run even when preconditions fail");
  dec->callback([&]() {
    guard("decompose", [&]() {
      return run_decompose(load_document(decompose_doc), parse_inline_vector(decompose_point),
                           decompose_force, opt);
    });
  });

  std::string conjugate_doc;
  std::string conjugate_at;
  CLI::App* conj = app.add_subcommand("conjugate", "Pairing Fenchel conjugate of a functional");
  conj->fallthrough();
  conj->add_option("doc", conjugate_doc, "Functional document")->required();
  conj->add_option("--at", conjugate_at, "Evaluation point, e.g. \"1,-1,2\"")->required();
  conj->callback([&]() {
    guard("conjugate", [&]() {
      return run_conjugate(load_document(conjugate_doc), parse_inline_vector(conjugate_at), opt);
    });
  });

  std::string relation_action;
  std::string relation_doc;
  std::string relation_method = "complement";
  CLI::App* relation = app.add_subcommand("relation", "Adjoint and monotonicity of a relation");
  relation->fallthrough();
  relation->add_option("action", relation_action, "adjoint, monotone, or maximal")
      ->check(CLI::IsMember({"adjoint", "monotone", "maximal"}))
      ->required();
  relation->add_option("doc", relation_doc, "Relation document")->required();
  relation->add_option("--method", relation_method, "Maximality procedure")
      ->check(CLI::IsMember({"complement", "adjoint-monotone", "adjoint-maximal"}))
      ->capture_default_str();
  relation->callback([&]() {
    guard("relation", [&]() {
      return run_relation(relation_action, load_document(relation_doc), relation_method, opt);
    });
  });

  CLI::App* demo = app.add_subcommand("demo", "Run the built-in example suite");
  demo->fallthrough();
  demo->callback([&]() { guard("demo", [&]() { return run_demo(opt); }); });

  std::string batch_dir;
  CLI::App* batch = app.add_subcommand("batch", "Run every job document in a directory");
  batch->fallthrough();
  batch->add_option("dir", batch_dir, "Directory of job JSON files")->required();
  batch->callback([&]() { guard("batch", [&]() { return run_batch(batch_dir, opt); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}
