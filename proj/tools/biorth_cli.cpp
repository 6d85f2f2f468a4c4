// Command-line front end: curvature analysis of operators, classification of
// intersection forms and connected-sum words, and model export.
//
// Exit codes: 0 ok, 1 usage, 2 invalid input, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "biorth/errors.hpp"
#include "biorth/report.hpp"

namespace {

using biorth::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw biorth::InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json envelope(const std::string& command, Json input, const std::string& digest) {
  return {{"tool", "biorth"},
          {"version", std::string(biorth::kToolVersion)},
          {"command", command},
          {"input", std::move(input)},
          {"input_digest", digest}};
}

struct CurvatureArgs {
  std::string path;
  std::string model;
  std::optional<int> dim;
  biorth::CurvatureSettings settings;
};

Json run_curvature(const CurvatureArgs& args, const std::string& command) {
  if (args.path.empty() == args.model.empty())
    throw UsageError("give exactly one of an operator file or --model");

  Json input;
  std::optional<biorth::CurvatureOperator> op;
  if (!args.model.empty()) {
    const auto model = biorth::model_from_name(args.model);
    if (!model) throw UsageError("unknown model '" + args.model + "'");
    try {
      op = biorth::model_operator(*model, args.dim);
    } catch (const biorth::DimensionError& e) {
      throw UsageError(e.what());
    }
    input = {{"kind", "model"}, {"name", args.model}};
    if (args.dim) input["dim"] = *args.dim;
  } else {
    if (args.dim) throw UsageError("--dim applies to --model only");
    op = biorth::operator_from_json(biorth::parse_document(read_file(args.path)));
    input = {{"kind", "file"}, {"path", args.path}};
  }
  if (!(args.settings.tol > 0)) throw UsageError("--tol must be positive");
  if (args.settings.minimize.restarts < 1) throw UsageError("--restarts must be >= 1");

  Json report = envelope(command, std::move(input),
                         biorth::digest_hex(biorth::operator_to_json(*op).dump()));
  report["seed"] = args.settings.minimize.seed;
  report["settings"] = args.settings.to_json();
  report["results"] = biorth::curvature_results(*op, args.settings);
  return report;
}

struct ClassifyArgs {
  std::string form_path;
  std::string word;
  std::string word_file;
  bool assume_smoothable = false;
  double tol = biorth::kConeTolerance;
};

Json run_classify(const ClassifyArgs& args, const std::string& command) {
  const int sources = !args.form_path.empty() + !args.word.empty() + !args.word_file.empty();
  if (sources != 1) throw UsageError("give exactly one of a form file, --word or --word-file");

  Json input;
  Json results;
  std::string digest;
  if (!args.form_path.empty()) {
    const auto form = biorth::form_from_json(biorth::parse_document(read_file(args.form_path)));
    input = {{"kind", "form"}, {"path", args.form_path}};
    digest = biorth::digest_hex(biorth::form_to_json(form).dump());
    results = biorth::verdict_to_json(biorth::theorem_verdict(form, args.assume_smoothable, args.tol));
  } else {
    const std::string text = args.word.empty() ? read_file(args.word_file) : args.word;
    const biorth::SumWord w = biorth::parse_word(text);
    input = {{"kind", "word"}, {"word", biorth::to_string(w)}};
    if (!args.word_file.empty()) input["path"] = args.word_file;
    digest = biorth::digest_hex(biorth::to_string(w));
    results = biorth::verdict_to_json(biorth::classify_word(w, args.assume_smoothable, args.tol));
    results["word"] = biorth::to_string(w);
    results["normalized_word"] =
        w.has_e8() ? Json(nullptr) : Json(biorth::to_string(biorth::normalize(w)));
  }
  Json report = envelope(command, std::move(input), digest);
  report["settings"] = {{"tol", args.tol}, {"assume_smoothable", args.assume_smoothable}};
  report["results"] = std::move(results);
  return report;
}

Json run_models_list(const std::string& command) {
  Json models = Json::array();
  for (auto m : biorth::kAllModels)
    models.push_back({{"name", std::string(biorth::model_name(m))},
                      {"dim", biorth::model_takes_dimension(m) ? Json("n") : Json(4)}});
  Json report = envelope(command, {{"kind", "none"}}, biorth::digest_hex(""));
  report["results"] = {{"models", std::move(models)}};
  return report;
}

Json run_models_export(const std::string& name, const std::string& path, std::optional<int> dim,
                       const std::string& command) {
  const auto model = biorth::model_from_name(name);
  if (!model) throw UsageError("unknown model '" + name + "'");
  std::optional<biorth::CurvatureOperator> op;
  try {
    op = biorth::model_operator(*model, dim);
  } catch (const biorth::DimensionError& e) {
    throw UsageError(e.what());
  }
  const std::string text = biorth::dump_report(biorth::operator_to_json(*op));
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw biorth::InputError("cannot write '" + path + "'");
  Json input{{"kind", "model"}, {"name", name}};
  if (dim) input["dim"] = *dim;
  Json report = envelope(command, std::move(input), biorth::digest_hex(biorth::operator_to_json(*op).dump()));
  report["results"] = {{"exported", name}, {"path", path}, {"dim", op->dim()}};
  return report;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biorthogonal curvature and 4-manifold classification tool", "biorth"};
  app.require_subcommand(1);

  CurvatureArgs curv;
  auto* curvature = app.add_subcommand("curvature", "Curvature quantities of an operator");
  curvature->add_option("operator", curv.path, "Operator file (dim, lambda2_matrix)");
  curvature->add_option("--model", curv.model, "Model operator name (see 'models list')");
  curvature->add_option("--dim", curv.dim, "Dimension for dimension-parametric models");
  curvature->add_option("--tol", curv.settings.tol, "Cone boundary tolerance")->capture_default_str();
  curvature->add_option("--restarts", curv.settings.minimize.restarts, "Optimizer restarts")
      ->capture_default_str();
  curvature->add_option("--seed", curv.settings.minimize.seed, "Random seed")->capture_default_str();
  curvature->add_option("--gtol", curv.settings.minimize.gtol, "Projected-gradient tolerance")
      ->capture_default_str();
  curvature->add_option("--max-iterations", curv.settings.minimize.max_iterations,
                        "Iteration cap per restart")
      ->capture_default_str();
  curvature->add_option("--oracle-samples", curv.settings.oracle_samples,
                        "Random frames for the sampling oracle (0 disables)")
      ->capture_default_str();
  curvature->add_option("--threads", curv.settings.minimize.threads,
                        "Worker threads for restarts (0 = hardware); does not affect results");

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "Classify an intersection form or a connected sum");
  classify->add_option("form", cls.form_path, "Form file (rank, matrix)");
  classify->add_option("--word", cls.word, "Connected-sum word, e.g. \"3*CP2 # CP2bar\"");
  classify->add_option("--word-file", cls.word_file, "File containing a connected-sum word");
  classify->add_flag("--assume-smoothable", cls.assume_smoothable,
                     "Treat the manifold as smoothable");
  classify->add_option("--tol", cls.tol, "Cone tolerance for certificates")->capture_default_str();

  auto* models = app.add_subcommand("models", "List or export model operators");
  models->require_subcommand(1);
  auto* list = models->add_subcommand("list", "List model names");
  std::string export_name, export_path;
  std::optional<int> export_dim;
  auto* exp = models->add_subcommand("export", "Write a model operator file");
  exp->add_option("name", export_name, "Model name")->required();
  exp->add_option("path", export_path, "Output file")->required();
  exp->add_option("--dim", export_dim, "Dimension for dimension-parametric models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    Json report;
    if (curvature->parsed())
      report = run_curvature(curv, command);
    else if (classify->parsed())
      report = run_classify(cls, command);
    else if (list->parsed())
      report = run_models_list(command);
    else
      report = run_models_export(export_name, export_path, export_dim, command);
    std::cout << biorth::dump_report(report);
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const biorth::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const biorth::InvalidOperator& e) {
    std::cerr << "invalid operator: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const biorth::InvalidForm& e) {
    std::cerr << "invalid form: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const biorth::ParseError& e) {
    std::cerr << "invalid word: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const biorth::InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const biorth::FrameError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const biorth::InvariantViolation& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const biorth::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
