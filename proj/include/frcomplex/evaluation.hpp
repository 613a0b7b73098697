#ifndef FRCOMPLEX_EVALUATION_HPP
#define FRCOMPLEX_EVALUATION_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"
#include "frcomplex/model.hpp"

namespace frcomplex {

struct DocumentPrediction {
  std::string id;
  int true_label = 0;
  int predicted_label = 0;
  friend bool operator==(const DocumentPrediction&, const DocumentPrediction&) = default;
};

struct EvaluationReport {
  double accuracy = 0.0;
  double rmse = 0.0;
  std::vector<DocumentPrediction> per_document;
  std::optional<double> correlation_to_expected;
};

inline EvaluationReport score_predictions(std::vector<DocumentPrediction> preds) {
  if (preds.empty()) throw ValidationError("cannot evaluate an empty test set");
  EvaluationReport r;
  std::size_t hits = 0;
  double sq = 0.0;
  for (const auto& p : preds) {
    hits += p.true_label == p.predicted_label;
    const double e = p.predicted_label - p.true_label;
    sq += e * e;
  }
  const double n = static_cast<double>(preds.size());
  r.accuracy = static_cast<double>(hits) / n;
  r.rmse = std::sqrt(sq / n);
  r.per_document = std::move(preds);
  return r;
}

inline EvaluationReport evaluate(const TrainedModel& model, const Dataset& test) {
  validate_dataset(test);
  std::vector<DocumentPrediction> preds;
  for (std::size_t i = 0; i < test.size(); ++i)
    preds.push_back({test.ids.empty() ? std::to_string(i) : test.ids[i], test.y[i], model.predict(test.X[i])});
  return score_predictions(std::move(preds));
}

struct Correlation {
  double value = 0.0;
  bool degenerate = false;  // one side had zero variance; value reported as 0
};

inline Correlation pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ValidationError("correlation needs two equal series of length >= 2");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return {0.0, true};
  return {sab / std::sqrt(saa * sbb), false};
}

struct BlindGroup {
  std::string name;
  double expected_min = 0.0;
  double expected_max = 0.0;
  std::vector<std::string> ids;
  Matrix X;  // raw feature rows

  double expected_midpoint() const { return (expected_min + expected_max) / 2.0; }
};

struct BlindGroupResult {
  std::string name;
  double expected_min = 0.0;
  double expected_max = 0.0;
  double mean_prediction = 0.0;
  std::vector<DocumentPrediction> predictions;  // true_label is unused (-1)
};

struct BlindReport {
  std::vector<BlindGroupResult> groups;
  Correlation correlation;
};

inline BlindReport blind_test(const TrainedModel& model, const std::vector<BlindGroup>& groups) {
  if (groups.size() < 2) throw ValidationError("a blind test needs at least two groups");
  BlindReport rep;
  std::vector<double> means, mids;
  for (const auto& g : groups) {
    if (g.X.empty()) throw ValidationError("blind group '" + g.name + "' has no documents");
    BlindGroupResult r{g.name, g.expected_min, g.expected_max, 0.0, {}};
    double sum = 0.0;
    for (std::size_t i = 0; i < g.X.size(); ++i) {
      const int p = model.predict(g.X[i]);
      sum += p;
      r.predictions.push_back({i < g.ids.size() ? g.ids[i] : std::to_string(i), -1, p});
    }
    r.mean_prediction = sum / static_cast<double>(g.X.size());
    means.push_back(r.mean_prediction);
    mids.push_back(g.expected_midpoint());
    rep.groups.push_back(std::move(r));
  }
  rep.correlation = pearson(means, mids);
  return rep;
}

inline Json report_to_json(const EvaluationReport& r) {
  Json docs = Json::array();
  for (const auto& p : r.per_document)
    docs.push_back(Json{{"id", p.id}, {"true", p.true_label}, {"predicted", p.predicted_label}});
  Json j{{"accuracy", r.accuracy}, {"rmse", r.rmse}};
  j["correlation_to_expected"] = r.correlation_to_expected ? Json(*r.correlation_to_expected) : Json(nullptr);
  j["per_document"] = docs;
  return j;
}

inline Json blind_report_to_json(const BlindReport& r) {
  Json groups = Json::array();
  for (const auto& g : r.groups) {
    Json preds = Json::array();
    for (const auto& p : g.predictions) preds.push_back(Json{{"id", p.id}, {"predicted", p.predicted_label}});
    groups.push_back(Json{{"group", g.name},
                          {"expected_min", g.expected_min},
                          {"expected_max", g.expected_max},
                          {"mean_prediction", g.mean_prediction},
                          {"predictions", preds}});
  }
  return Json{{"groups", groups}, {"pearson", r.correlation.value}, {"degenerate", r.correlation.degenerate}};
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_EVALUATION_HPP
