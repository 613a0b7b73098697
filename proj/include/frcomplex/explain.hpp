#ifndef FRCOMPLEX_EXPLAIN_HPP
#define FRCOMPLEX_EXPLAIN_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "frcomplex/model.hpp"

namespace frcomplex {

inline constexpr double kStrongCoefficient = 0.1;

enum class Flag { none, strong_positive, strong_negative, high, low };

inline std::string_view flag_name(Flag f) {
  switch (f) {
    case Flag::none: return "none";
    case Flag::strong_positive: return "strong_positive";
    case Flag::strong_negative: return "strong_negative";
    case Flag::high: return "high";
    case Flag::low: return "low";
  }
  return "none";
}

struct FeatureWeight {
  std::string feature;
  double value = 0.0;
  Flag flag = Flag::none;
};

struct ClassExplanation {
  int label = 0;
  double intercept = 0.0;  // LR bias or NB log prior
  std::vector<FeatureWeight> features;
};

struct Explanation {
  ModelKind kind = ModelKind::baseline;
  std::vector<ClassExplanation> classes;  // LR, NB
  std::vector<FeatureWeight> importances; // DT, RF
  std::vector<KmBand> thresholds;         // baseline only

  std::size_t nonzero_importances() const {
    return static_cast<std::size_t>(
        std::count_if(importances.begin(), importances.end(), [](const auto& w) { return w.value > 0.0; }));
  }
};

inline Flag coefficient_flag(double w) {
  if (w > kStrongCoefficient) return Flag::strong_positive;
  if (w < -kStrongCoefficient) return Flag::strong_negative;
  return Flag::none;
}

namespace explain_detail {

// Top and bottom tenth (at least one feature each) by value; ties keep feature order.
inline std::vector<Flag> decile_flags(const std::vector<double>& v) {
  const std::size_t d = v.size();
  std::vector<Flag> flags(d, Flag::none);
  if (d < 2) return flags;
  const std::size_t band = std::max<std::size_t>(1, d / 10);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] > v[b]; });
  for (std::size_t r = 0; r < band; ++r) flags[order[r]] = Flag::high;
  for (std::size_t r = 0; r < band; ++r) flags[order[d - 1 - r]] = Flag::low;
  return flags;
}

inline std::vector<FeatureWeight> importance_list(const std::vector<std::string>& names, const std::vector<double>& imp) {
  std::vector<FeatureWeight> out;
  for (std::size_t j = 0; j < imp.size(); ++j) out.push_back({names[j], imp[j], Flag::none});
  return out;
}

}  // namespace explain_detail

inline Explanation explain(const TrainedModel& m) {
  Explanation e;
  e.kind = m.kind;
  const auto& names = m.feature_names;
  if (std::holds_alternative<BaselineClassifier>(m.parameters)) {
    e.thresholds.assign(kKmBands.begin(), kKmBands.end());
  } else if (const auto* lr = std::get_if<LogisticRegression>(&m.parameters)) {
    for (std::size_t c = 0; c < lr->models.size(); ++c) {
      ClassExplanation ce{static_cast<int>(c), lr->models[c].b, {}};
      for (std::size_t j = 0; j < names.size(); ++j)
        ce.features.push_back({names[j], lr->models[c].w[j], coefficient_flag(lr->models[c].w[j])});
      e.classes.push_back(std::move(ce));
    }
  } else if (const auto* nb = std::get_if<NaiveBayes>(&m.parameters)) {
    for (std::size_t c = 0; c < nb->class_count(); ++c) {
      ClassExplanation ce{static_cast<int>(c), nb->log_prior[c], {}};
      const auto flags = explain_detail::decile_flags(nb->log_theta[c]);
      for (std::size_t j = 0; j < names.size(); ++j) ce.features.push_back({names[j], nb->log_theta[c][j], flags[j]});
      e.classes.push_back(std::move(ce));
    }
  } else if (const auto* dt = std::get_if<DecisionTree>(&m.parameters)) {
    e.importances = explain_detail::importance_list(names, dt->importances);
  } else if (const auto* rf = std::get_if<RandomForest>(&m.parameters)) {
    e.importances = explain_detail::importance_list(names, rf->importances);
  }
  return e;
}

inline Json explanation_to_json(const Explanation& e) {
  Json j{{"kind", model_kind_name(e.kind)}};
  if (!e.thresholds.empty()) {
    Json t = Json::array();
    for (const auto& b : e.thresholds)
      t.push_back(Json{{"label", b.label},
                       {"km_min", b.label == 7 ? Json(nullptr) : Json(b.lower)},
                       {"km_max", b.label == 0 ? Json(nullptr) : Json(b.upper)},
                       {"description", b.description}});
    j["thresholds"] = t;
  }
  if (!e.classes.empty()) {
    const bool lr = e.kind == ModelKind::logistic_regression;
    Json cls = Json::array();
    for (const auto& c : e.classes) {
      Json feats = Json::array();
      Json pos = Json::array(), neg = Json::array();
      for (const auto& f : c.features) {
        feats.push_back(Json{{"feature", f.feature}, {"value", f.value}, {"flag", flag_name(f.flag)}});
        if (f.flag == Flag::strong_positive || f.flag == Flag::high) pos.push_back(f.feature);
        if (f.flag == Flag::strong_negative || f.flag == Flag::low) neg.push_back(f.feature);
      }
      Json cj{{"label", c.label}, {lr ? "bias" : "log_prior", c.intercept}};
      cj[lr ? "strong_positive" : "high"] = pos;
      cj[lr ? "strong_negative" : "low"] = neg;
      cj["features"] = feats;
      cls.push_back(cj);
    }
    j["classes"] = cls;
  }
  if (!e.importances.empty()) {
    Json imp = Json::array();
    for (const auto& f : e.importances) imp.push_back(Json{{"feature", f.feature}, {"importance", f.value}});
    j["nonzero_importances"] = e.nonzero_importances();
    j["importances"] = imp;
  }
  return j;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_EXPLAIN_HPP
