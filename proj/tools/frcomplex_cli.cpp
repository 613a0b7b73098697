// frcomplex: analyze French documents, train and inspect complexity classifiers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frcomplex/frcomplex.hpp"

#ifndef FRCOMPLEX_DATA_DIR
#define FRCOMPLEX_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace frcomplex;

namespace {

enum Exit { kOk = 0, kDataError = 1, kUsageError = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string data_dir = FRCOMPLEX_DATA_DIR;
  std::string lexicon, simple_words, seg_rules, biber_rules;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  std::string out;

  ResourcePaths resource_paths() const {
    auto p = ResourcePaths::in_directory(data_dir);
    if (!lexicon.empty()) p.lexicon = lexicon;
    if (!simple_words.empty()) p.simple_words = simple_words;
    if (!seg_rules.empty()) p.segmentation_rules = seg_rules;
    if (!biber_rules.empty()) p.biber_rules = biber_rules;
    return p;
  }

  // All four files are checked up front so no work starts with a bad path.
  Resources load() const {
    const auto p = resource_paths();
    for (const auto& f : {p.simple_words, p.lexicon, p.segmentation_rules, p.biber_rules})
      if (!fs::is_regular_file(f)) throw LoadError("resource file not found: " + f.string());
    return load_resources(p);
  }
};

// Writes to --out when given, else stdout.
void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw LoadError("cannot write '" + cfg.out + "'");
  f << text;
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

int cmd_analyze(const Config& cfg, const std::vector<std::string>& files) {
  const Resources res = cfg.load();
  std::ostringstream csv_out;
  Json rows = Json::array();
  write_feature_csv_header(csv_out);
  int failures = 0;
  for (const auto& f : files) {
    try {
      const auto fv = analyze_text(read_text_file(f), res, f);
      if (cfg.json) {
        Json vals = Json::object();
        for (std::size_t j = 0; j < fv.values.size(); ++j) vals[feature_schema()[j]] = fv.values[j];
        rows.push_back(Json{{"id", fv.document_id}, {"features", vals}});
      } else {
        write_feature_csv_row(csv_out, fv);
      }
    } catch (const std::exception& e) {
      ++failures;
      std::cerr << "error: " << f << ": " << e.what() << '\n';
    }
  }
  emit(cfg, cfg.json ? Json{{"schema_version", kFeatureSchemaVersion}, {"documents", rows}}.dump(2) + "\n"
                     : csv_out.str());
  if (failures) std::cerr << failures << " of " << files.size() << " file(s) failed\n";
  return failures ? kDataError : kOk;
}

struct TrainArgs {
  std::string manifest;
  std::string model = "lr";
  int folds = kDefaultFolds;
  std::string report;
  std::optional<double> alpha, l2;
  std::optional<int> depth, trees;
  std::optional<std::string> criterion;
};

Grid grid_for(ModelKind kind, const TrainArgs& a) {
  if (!a.alpha && !a.l2 && !a.depth && !a.trees && !a.criterion) return default_grid(kind);
  // Any explicit hyperparameter narrows the search to that one setting.
  Hyperparameters hp;
  if (a.alpha) hp.alpha = *a.alpha;
  if (a.l2) hp.l2_strength = *a.l2;
  if (a.depth && *a.depth > 0) hp.max_depth = *a.depth;
  if (a.trees) hp.n_trees = *a.trees;
  if (a.criterion) hp.criterion = parse_criterion(*a.criterion);
  return {hp};
}

int cmd_train(const Config& cfg, const TrainArgs& a) {
  ModelKind kind;
  try {
    kind = parse_model_kind(a.model);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  if (a.folds < 2) throw UsageError("--folds must be at least 2");
  if (cfg.out.empty()) throw UsageError("train needs --out for the model file");
  const Resources res = cfg.load();
  const auto corpus = load_corpus(a.manifest);
  const auto fm = featurize_corpus(corpus, res);
  const auto cv = grid_search_cv(kind, grid_for(kind, a), fm.data, a.folds, cfg.seed);
  for (const auto& w : cv.warnings) std::cerr << "warning: " << w << '\n';
  const auto model = train_model(kind, cv.best_hyperparameters(), fm.data, cfg.seed);
  save_model(model, cfg.out);

  Json rep = grid_search_to_json(cv);
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << corpus.content_hash;
  rep["corpus"] = Json{{"manifest", a.manifest}, {"documents", corpus.size()}, {"content_hash", hash.str()}};
  if (!a.report.empty()) {
    std::ofstream f(a.report, std::ios::binary);
    if (!f) throw LoadError("cannot write '" + a.report + "'");
    f << rep.dump(2) << '\n';
  }
  if (cfg.json) {
    std::cout << rep.dump(2) << '\n';
  } else {
    std::cout << "model " << model_kind_name(kind) << ", " << cv.folds << "-fold CV over " << cv.scores.size()
              << " setting(s), " << corpus.size() << " documents\n"
              << "best " << describe(kind, cv.best_hyperparameters()) << '\n'
              << "cv accuracy " << fixed(cv.best_report.accuracy) << ", rmse " << fixed(cv.best_report.rmse) << '\n'
              << "model written to " << cfg.out << '\n';
  }
  return kOk;
}

Dataset dataset_from(const LabeledCorpus& c, const Resources& res) { return featurize_corpus(c, res).data; }

int cmd_evaluate(const Config& cfg, const std::string& model_path, const std::string& manifest) {
  const auto model = load_model(model_path);
  const Resources res = cfg.load();
  const auto report = evaluate(model, dataset_from(load_corpus(manifest), res));
  if (cfg.json) {
    emit(cfg, report_to_json(report).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "accuracy " << fixed(report.accuracy) << "\nrmse " << fixed(report.rmse) << '\n';
    for (const auto& p : report.per_document)
      os << p.id << '\t' << p.true_label << '\t' << p.predicted_label << '\n';
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_explain(const Config& cfg, const std::string& model_path) {
  const auto e = explain(load_model(model_path));
  if (cfg.json) {
    emit(cfg, explanation_to_json(e).dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << "model " << model_kind_name(e.kind) << '\n';
  for (const auto& b : e.thresholds)
    os << "label " << b.label << "  KM " << (b.label == 7 ? std::string("< 0") : ">= " + fixed(b.lower, 0))
       << "  " << b.description << '\n';
  for (const auto& c : e.classes) {
    os << "class " << c.label << " (" << kClassNames[c.label] << ")\n";
    for (const auto& f : c.features)
      if (f.flag != Flag::none) os << "  " << flag_name(f.flag) << "  " << f.feature << "  " << fixed(f.value, 4) << '\n';
  }
  if (!e.importances.empty()) {
    os << "features used: " << e.nonzero_importances() << '\n';
    for (const auto& f : e.importances)
      if (f.value > 0) os << "  " << f.feature << "  " << fixed(f.value, 4) << '\n';
  }
  emit(cfg, os.str());
  return kOk;
}

int cmd_blind(const Config& cfg, const std::string& model_path, const std::string& manifest) {
  const auto model = load_model(model_path);
  const Resources res = cfg.load();
  const auto rep = blind_test(model, featurize_blind(load_blind_manifest(manifest), res));
  if (cfg.json) {
    emit(cfg, blind_report_to_json(rep).dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << "group\texpected\tmean_predicted\n";
  for (const auto& g : rep.groups)
    os << g.name << '\t' << fixed(g.expected_min, 0) << '-' << fixed(g.expected_max, 0) << '\t'
       << fixed(g.mean_prediction, 2) << '\n';
  os << "pearson " << fixed(rep.correlation.value) << (rep.correlation.degenerate ? " (degenerate)" : "") << '\n';
  emit(cfg, os.str());
  return kOk;
}

int cmd_distributions(const Config& cfg, const std::string& manifest, const std::string& metric) {
  feature_index(metric);  // fail before loading anything
  const Resources res = cfg.load();
  const auto rows = export_distributions(dataset_from(load_corpus(manifest), res), metric);
  if (cfg.json) {
    Json levels = Json::array();
    for (const auto& s : rows) {
      Json l{{"level", s.level}, {"name", kClassNames[s.level]}, {"count", s.count}};
      if (s.count)
        for (auto [k, v] : {std::pair{"min", s.min}, {"q1", s.q1}, {"median", s.median}, {"q3", s.q3},
                            {"max", s.max}, {"mean", s.mean}})
          l[k] = v;
      levels.push_back(l);
    }
    emit(cfg, Json{{"metric", metric}, {"levels", levels}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_distribution_csv(os, rows);
    emit(cfg, os.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"French text complexity metrics and classifiers"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--data-dir", cfg.data_dir, "directory holding the default resource files");
  app.add_option("--lexicon", cfg.lexicon, "frequency lexicon (TSV)");
  app.add_option("--simple-words", cfg.simple_words, "simple word list");
  app.add_option("--seg-rules", cfg.seg_rules, "segmentation rules file");
  app.add_option("--biber-rules", cfg.biber_rules, "Biber feature rules file");
  app.add_option("--seed", cfg.seed, "seed for every random choice")->capture_default_str();
  app.add_flag("--json", cfg.json, "machine-readable JSON output");
  app.add_option("--out", cfg.out, "output file (default stdout; model file for train)");
  app.fallthrough();

  std::vector<std::string> files;
  auto* analyze = app.add_subcommand("analyze", "compute feature vectors for text files");
  analyze->add_option("files", files, "UTF-8 text files");

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "grid-search, then fit a model on the whole corpus");
  train->add_option("--manifest", ta.manifest, "corpus manifest (path,label,id)")->required();
  train->add_option("--model", ta.model, "baseline | dt | rf | lr | nb")->capture_default_str();
  train->add_option("--folds", ta.folds, "cross-validation folds")->capture_default_str();
  train->add_option("--report", ta.report, "also write the CV report (JSON) here");
  train->add_option("--alpha", ta.alpha, "fixed NB smoothing instead of the grid");
  train->add_option("--l2", ta.l2, "fixed LR regularization strength instead of the grid");
  train->add_option("--depth", ta.depth, "fixed tree depth (0 = unlimited) instead of the grid");
  train->add_option("--trees", ta.trees, "fixed forest size instead of the grid");
  train->add_option("--criterion", ta.criterion, "fixed split criterion: gini | entropy");

  std::string model_path, manifest, metric;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a model on a labeled manifest");
  evaluate_cmd->add_option("--model", model_path, "model file")->required();
  evaluate_cmd->add_option("--manifest", manifest, "labeled manifest")->required();

  auto* explain_cmd = app.add_subcommand("explain", "list the features a model relies on");
  explain_cmd->add_option("--model", model_path, "model file")->required();

  auto* blind = app.add_subcommand("blind", "group-level predictions against expected ranges");
  blind->add_option("--model", model_path, "model file")->required();
  blind->add_option("--manifest", manifest, "blind manifest (path,group,expected_min,expected_max,id)")->required();

  auto* dist = app.add_subcommand("distributions", "per-level summary of one metric");
  dist->add_option("--manifest", manifest, "labeled manifest")->required();
  dist->add_option("--metric", metric, "metric name, e.g. KM_score")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, files);
    if (*train) return cmd_train(cfg, ta);
    if (*evaluate_cmd) return cmd_evaluate(cfg, model_path, manifest);
    if (*explain_cmd) return cmd_explain(cfg, model_path);
    if (*blind) return cmd_blind(cfg, model_path, manifest);
    if (*dist) return cmd_distributions(cfg, manifest, metric);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
