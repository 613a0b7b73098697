#ifndef FRCOMPLEX_MODEL_HPP
#define FRCOMPLEX_MODEL_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "frcomplex/baseline.hpp"
#include "frcomplex/dataset.hpp"
#include "frcomplex/decision_tree.hpp"
#include "frcomplex/errors.hpp"
#include "frcomplex/logistic_regression.hpp"
#include "frcomplex/naive_bayes.hpp"
#include "frcomplex/normalizer.hpp"
#include "frcomplex/random_forest.hpp"

namespace frcomplex {

using Json = nlohmann::ordered_json;

inline constexpr int kModelSchemaVersion = 1;

enum class ModelKind { baseline, decision_tree, random_forest, logistic_regression, naive_bayes };

inline std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::baseline: return "baseline";
    case ModelKind::decision_tree: return "decision_tree";
    case ModelKind::random_forest: return "random_forest";
    case ModelKind::logistic_regression: return "logistic_regression";
    case ModelKind::naive_bayes: return "naive_bayes";
  }
  return "baseline";
}

/// Accepts full names and the short forms baseline/dt/rf/lr/nb.
inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "baseline" || s == "km") return ModelKind::baseline;
  if (s == "dt" || s == "decision_tree") return ModelKind::decision_tree;
  if (s == "rf" || s == "random_forest") return ModelKind::random_forest;
  if (s == "lr" || s == "logistic_regression") return ModelKind::logistic_regression;
  if (s == "nb" || s == "naive_bayes") return ModelKind::naive_bayes;
  throw ValidationError("unknown model kind '" + std::string(s) + "'");
}

/// Union of all tunable settings; each kind reads only its own.
struct Hyperparameters {
  double alpha = 1.0;
  double l2_strength = 1.0;
  double learning_rate = 0.1;
  int epochs = 5000;
  Criterion criterion = Criterion::gini;
  std::optional<int> max_depth;
  int n_trees = 100;
  bool bootstrap = true;
  MaxFeatures max_features = MaxFeatures::sqrt;

  friend bool operator==(const Hyperparameters&, const Hyperparameters&) = default;
};

inline Json hyperparameters_to_json(ModelKind kind, const Hyperparameters& hp) {
  Json j = Json::object();
  auto depth = [&] { return hp.max_depth ? Json(*hp.max_depth) : Json(nullptr); };
  switch (kind) {
    case ModelKind::baseline: break;
    case ModelKind::naive_bayes: j["alpha"] = hp.alpha; break;
    case ModelKind::logistic_regression:
      j["l2_strength"] = hp.l2_strength;
      j["learning_rate"] = hp.learning_rate;
      j["epochs"] = hp.epochs;
      break;
    case ModelKind::decision_tree:
      j["criterion"] = criterion_name(hp.criterion);
      j["max_depth"] = depth();
      break;
    case ModelKind::random_forest:
      j["n_trees"] = hp.n_trees;
      j["criterion"] = criterion_name(hp.criterion);
      j["max_depth"] = depth();
      j["bootstrap"] = hp.bootstrap;
      j["max_features"] = max_features_name(hp.max_features);
      break;
  }
  return j;
}

inline Hyperparameters hyperparameters_from_json(const Json& j) {
  Hyperparameters hp;
  if (j.contains("alpha")) hp.alpha = j.at("alpha").get<double>();
  if (j.contains("l2_strength")) hp.l2_strength = j.at("l2_strength").get<double>();
  if (j.contains("learning_rate")) hp.learning_rate = j.at("learning_rate").get<double>();
  if (j.contains("epochs")) hp.epochs = j.at("epochs").get<int>();
  if (j.contains("criterion")) hp.criterion = parse_criterion(j.at("criterion").get<std::string>());
  if (j.contains("max_depth") && !j.at("max_depth").is_null()) hp.max_depth = j.at("max_depth").get<int>();
  if (j.contains("n_trees")) hp.n_trees = j.at("n_trees").get<int>();
  if (j.contains("bootstrap")) hp.bootstrap = j.at("bootstrap").get<bool>();
  if (j.contains("max_features")) hp.max_features = parse_max_features(j.at("max_features").get<std::string>());
  return hp;
}

inline std::string describe(ModelKind kind, const Hyperparameters& hp) {
  return hyperparameters_to_json(kind, hp).dump();
}

using ModelParameters = std::variant<BaselineClassifier, NaiveBayes, LogisticRegression, DecisionTree, RandomForest>;

struct TrainedModel {
  ModelKind kind = ModelKind::baseline;
  Hyperparameters hyperparameters;
  std::uint64_t seed = 42;
  std::vector<std::string> feature_names;
  Normalizer normalizer;
  ModelParameters parameters;

  /// Label 0..7 for one raw (unnormalized) feature row.
  int predict(const Row& raw) const {
    if (raw.size() != feature_names.size())
      throw ValidationError("model expects " + std::to_string(feature_names.size()) + " features, got " +
                            std::to_string(raw.size()));
    if (const auto* b = std::get_if<BaselineClassifier>(&parameters)) return b->predict(raw);
    const Row x = normalizer.transform(raw);
    return std::visit(
        [&](const auto& m) -> int {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, BaselineClassifier>) return m.predict(raw);
          else return m.predict(x);
        },
        parameters);
  }

  std::vector<int> predict_all(const Matrix& X) const {
    std::vector<int> out;
    out.reserve(X.size());
    for (const auto& r : X) out.push_back(predict(r));
    return out;
  }
};

inline std::size_t km_column(const std::vector<std::string>& names) {
  for (std::size_t j = 0; j < names.size(); ++j)
    if (names[j] == "KM_score") return j;
  throw ValidationError("feature set has no KM_score column");
}

/// Fits the normalizer on `train` and then the chosen classifier on the normalized rows.
inline TrainedModel train_model(ModelKind kind, const Hyperparameters& hp, const Dataset& train, std::uint64_t seed) {
  validate_dataset(train);
  if (train.feature_names.size() != train.width())
    throw ValidationError("feature names do not match the feature width");
  TrainedModel m;
  m.kind = kind;
  m.hyperparameters = hp;
  m.seed = seed;
  m.feature_names = train.feature_names;
  m.normalizer = Normalizer::fit(train.X);
  if (kind == ModelKind::baseline) {
    m.parameters = BaselineClassifier{km_column(train.feature_names)};
    return m;
  }
  const Matrix X = m.normalizer.transform(train.X);
  switch (kind) {
    case ModelKind::naive_bayes: m.parameters = train_naive_bayes(X, train.y, hp.alpha); break;
    case ModelKind::logistic_regression:
      m.parameters = train_logistic_regression(X, train.y, {hp.l2_strength, hp.learning_rate, hp.epochs, 1e-8, seed});
      break;
    case ModelKind::decision_tree:
      m.parameters = train_decision_tree(X, train.y, TreeOptions{hp.criterion, hp.max_depth, 0});
      break;
    case ModelKind::random_forest:
      m.parameters = train_random_forest(
          X, train.y, ForestOptions{hp.n_trees, hp.criterion, hp.max_depth, hp.bootstrap, hp.max_features, seed, 0});
      break;
    case ModelKind::baseline: break;
  }
  return m;
}

// ---- serialization ----

namespace model_json {

inline Json tree_to_json(const DecisionTree& t) {
  Json nodes = Json::array();
  for (const auto& n : t.nodes)
    nodes.push_back(Json::array({n.feature, n.threshold, n.left, n.right, n.label, n.samples, n.impurity}));
  return Json{{"nodes", nodes}, {"importances", t.importances}};
}

inline DecisionTree tree_from_json(const Json& j, const TreeOptions& opt) {
  DecisionTree t;
  t.options = opt;
  for (const auto& a : j.at("nodes")) {
    if (!a.is_array() || a.size() != 7) throw ConfigError("tree node must have 7 fields");
    TreeNode n;
    n.feature = a[0].get<int>();
    n.threshold = a[1].get<double>();
    n.left = a[2].get<int>();
    n.right = a[3].get<int>();
    n.label = a[4].get<int>();
    n.samples = a[5].get<std::size_t>();
    n.impurity = a[6].get<double>();
    t.nodes.push_back(n);
  }
  const int count = static_cast<int>(t.nodes.size());
  if (count == 0) throw ConfigError("tree has no nodes");
  for (const auto& n : t.nodes) {
    if (n.label < 0 || n.label >= kLabelCount) throw ConfigError("tree leaf label out of range");
    if (!n.is_leaf() && (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count))
      throw ConfigError("tree child index out of range");
  }
  t.importances = j.at("importances").get<std::vector<double>>();
  return t;
}

inline Json parameters_to_json(const ModelParameters& p) {
  return std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BaselineClassifier>) {
          Json bands = Json::array();
          for (const auto& b : kKmBands)
            bands.push_back(Json{{"lower", b.label == 7 ? Json(nullptr) : Json(b.lower)}, {"label", b.label}});
          return Json{{"km_index", m.km_index}, {"bands", bands}};
        } else if constexpr (std::is_same_v<T, NaiveBayes>) {
          return Json{{"log_prior", m.log_prior}, {"log_theta", m.log_theta}};
        } else if constexpr (std::is_same_v<T, LogisticRegression>) {
          Json models = Json::array();
          for (const auto& b : m.models)
            models.push_back(Json{{"weights", b.w}, {"bias", b.b}, {"epochs_run", b.epochs_run}, {"loss", b.final_loss}});
          return Json{{"models", models}};
        } else if constexpr (std::is_same_v<T, DecisionTree>) {
          return tree_to_json(m);
        } else {
          Json trees = Json::array();
          for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
          return Json{{"importances", m.importances}, {"trees", trees}};
        }
      },
      p);
}

}  // namespace model_json

inline Json model_to_json(const TrainedModel& m) {
  Json j;
  j["schema_version"] = kModelSchemaVersion;
  j["kind"] = model_kind_name(m.kind);
  j["label_count"] = kLabelCount;
  j["seed"] = m.seed;
  j["hyperparameters"] = hyperparameters_to_json(m.kind, m.hyperparameters);
  j["features"] = m.feature_names;
  j["normalizer"] = Json{{"min", m.normalizer.mins}, {"max", m.normalizer.maxs}};
  j["parameters"] = model_json::parameters_to_json(m.parameters);
  return j;
}

inline TrainedModel model_from_json(const Json& j) {
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion)
      throw ConfigError("unsupported model schema version " + std::to_string(version));
    TrainedModel m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.hyperparameters = hyperparameters_from_json(j.at("hyperparameters"));
    m.feature_names = j.at("features").get<std::vector<std::string>>();
    m.normalizer.mins = j.at("normalizer").at("min").get<std::vector<double>>();
    m.normalizer.maxs = j.at("normalizer").at("max").get<std::vector<double>>();
    const std::size_t d = m.feature_names.size();
    if (m.normalizer.mins.size() != d || m.normalizer.maxs.size() != d)
      throw ConfigError("normalizer width does not match the feature list");
    const Json& p = j.at("parameters");
    const auto& hp = m.hyperparameters;
    switch (m.kind) {
      case ModelKind::baseline: {
        const auto idx = p.at("km_index").get<std::size_t>();
        if (idx >= d) throw ConfigError("km_index out of range");
        m.parameters = BaselineClassifier{idx};
        break;
      }
      case ModelKind::naive_bayes: {
        NaiveBayes nb;
        nb.alpha = hp.alpha;
        nb.log_prior = p.at("log_prior").get<std::vector<double>>();
        nb.log_theta = p.at("log_theta").get<std::vector<std::vector<double>>>();
        if (nb.log_theta.size() != nb.log_prior.size() || nb.log_prior.empty() ||
            nb.log_prior.size() > static_cast<std::size_t>(kLabelCount))
          throw ConfigError("naive Bayes class tables are inconsistent");
        for (const auto& r : nb.log_theta)
          if (r.size() != d) throw ConfigError("naive Bayes feature table has wrong width");
        m.parameters = std::move(nb);
        break;
      }
      case ModelKind::logistic_regression: {
        LogisticRegression lr;
        lr.options = {hp.l2_strength, hp.learning_rate, hp.epochs, 1e-8, m.seed};
        for (const auto& mj : p.at("models")) {
          BinaryLogistic b;
          b.w = mj.at("weights").get<std::vector<double>>();
          b.b = mj.at("bias").get<double>();
          b.epochs_run = mj.at("epochs_run").get<int>();
          b.final_loss = mj.at("loss").get<double>();
          if (b.w.size() != d) throw ConfigError("logistic weights have wrong width");
          lr.models.push_back(std::move(b));
        }
        if (lr.models.empty() || lr.models.size() > static_cast<std::size_t>(kLabelCount))
          throw ConfigError("logistic regression needs 1..8 class models");
        m.parameters = std::move(lr);
        break;
      }
      case ModelKind::decision_tree:
        m.parameters = model_json::tree_from_json(p, TreeOptions{hp.criterion, hp.max_depth, 0});
        break;
      case ModelKind::random_forest: {
        RandomForest rf;
        rf.options = ForestOptions{hp.n_trees, hp.criterion, hp.max_depth, hp.bootstrap, hp.max_features, m.seed, 0};
        const TreeOptions topt{hp.criterion, hp.max_depth, features_per_split(hp.max_features, d)};
        for (const auto& tj : p.at("trees")) rf.trees.push_back(model_json::tree_from_json(tj, topt));
        if (static_cast<int>(rf.trees.size()) != hp.n_trees)
          throw ConfigError("forest has " + std::to_string(rf.trees.size()) + " trees, hyperparameters say " +
                            std::to_string(hp.n_trees));
        rf.importances = p.at("importances").get<std::vector<double>>();
        m.parameters = std::move(rf);
        break;
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("malformed model: ") + e.what());
  }
}

inline std::string model_to_string(const TrainedModel& m) { return model_to_json(m).dump(1) + "\n"; }

inline void save_model(const TrainedModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write model file '" + path + "'");
  out << model_to_string(m);
  if (!out) throw LoadError("failed writing model file '" + path + "'");
}

inline TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open model file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_MODEL_HPP
