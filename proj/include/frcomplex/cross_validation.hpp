#ifndef FRCOMPLEX_CROSS_VALIDATION_HPP
#define FRCOMPLEX_CROSS_VALIDATION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"
#include "frcomplex/evaluation.hpp"
#include "frcomplex/model.hpp"

namespace frcomplex {

inline constexpr int kDefaultFolds = 5;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct FoldPlan {
  int k = 0;
  std::vector<int> fold_of;  // per row
  std::vector<std::string> warnings;
};

/// Each class is shuffled with the seed and dealt round-robin; the deal
/// position carries over between classes so fold sizes stay balanced.
inline FoldPlan stratified_folds(const std::vector<int>& y, int k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("cross-validation needs at least 2 folds");
  if (y.empty()) throw ValidationError("cross-validation needs data");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  FoldPlan plan;
  std::size_t smallest = y.size();
  int smallest_label = 0;
  for (const auto& [c, idx] : by_class)
    if (idx.size() < smallest) smallest = idx.size(), smallest_label = c;
  plan.k = k;
  if (smallest < static_cast<std::size_t>(k)) {
    if (smallest < 2)
      throw ValidationError("class " + std::to_string(smallest_label) + " has " + std::to_string(smallest) +
                            " member(s); stratified folds need at least 2");
    plan.k = static_cast<int>(smallest);
    plan.warnings.push_back("class " + std::to_string(smallest_label) + " has only " + std::to_string(smallest) +
                            " members; using " + std::to_string(plan.k) + " folds instead of " + std::to_string(k));
  }
  std::mt19937_64 rng(seed);
  plan.fold_of.assign(y.size(), 0);
  std::size_t deal = 0;
  for (auto& [c, idx] : by_class) {
    shuffle_in_place(idx, rng);
    for (auto i : idx) plan.fold_of[i] = static_cast<int>(deal++ % static_cast<std::size_t>(plan.k));
  }
  return plan;
}

inline std::pair<Dataset, Dataset> fold_split(const Dataset& d, const FoldPlan& plan, int fold) {
  std::vector<std::size_t> tr, va;
  for (std::size_t i = 0; i < d.size(); ++i) (plan.fold_of[i] == fold ? va : tr).push_back(i);
  return {d.subset(tr), d.subset(va)};
}

using Grid = std::vector<Hyperparameters>;

inline Grid default_grid(ModelKind kind) {
  Grid g;
  auto tree_grid = [] {
    std::vector<std::pair<Criterion, std::optional<int>>> t;
    for (Criterion c : {Criterion::gini, Criterion::entropy}) {
      for (int d = 3; d <= 12; ++d) t.emplace_back(c, d);
      t.emplace_back(c, std::nullopt);
    }
    return t;
  };
  switch (kind) {
    case ModelKind::baseline: g.emplace_back(); break;
    case ModelKind::naive_bayes:
      for (double a : {0.01, 0.1, 0.5, 1.0, 2.0}) {
        Hyperparameters h;
        h.alpha = a;
        g.push_back(h);
      }
      break;
    case ModelKind::logistic_regression:
      for (double l : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        Hyperparameters h;
        h.l2_strength = l;
        g.push_back(h);
      }
      break;
    case ModelKind::decision_tree:
      for (const auto& [c, d] : tree_grid()) {
        Hyperparameters h;
        h.criterion = c;
        h.max_depth = d;
        g.push_back(h);
      }
      break;
    case ModelKind::random_forest:
      for (int n : {100, 300, 500, 1244})
        for (const auto& [c, d] : tree_grid()) {
          Hyperparameters h;
          h.n_trees = n;
          h.criterion = c;
          h.max_depth = d;
          g.push_back(h);
        }
      break;
  }
  return g;
}

struct ConfigScore {
  Hyperparameters hyperparameters;
  std::vector<double> fold_accuracy;
  std::vector<double> fold_rmse;
  double mean_accuracy = 0.0;
  double mean_rmse = 0.0;
};

struct GridSearchResult {
  ModelKind kind = ModelKind::baseline;
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
  std::vector<ConfigScore> scores;  // grid order
  std::size_t best = 0;
  EvaluationReport best_report;     // pooled out-of-fold predictions of the best configuration
  std::vector<Normalizer> fold_normalizers;

  const Hyperparameters& best_hyperparameters() const { return scores[best].hyperparameters; }
};

namespace cv_detail {

// Forests that differ only in tree count share a prefix, so one large
// forest per group scores every size in the group.
inline auto forest_key(const Hyperparameters& h) {
  return std::make_tuple(h.criterion, h.max_depth.value_or(-1), h.bootstrap, h.max_features, h.l2_strength,
                         h.alpha);
}

}  // namespace cv_detail

inline GridSearchResult grid_search_cv(ModelKind kind, const Grid& grid, const Dataset& data, int k_folds,
                                       std::uint64_t seed) {
  if (grid.empty()) throw ValidationError("grid search needs a non-empty grid");
  validate_dataset(data);
  const FoldPlan plan = stratified_folds(data.y, k_folds, seed);
  GridSearchResult res;
  res.kind = kind;
  res.folds = plan.k;
  res.seed = seed;
  res.warnings = plan.warnings;
  res.scores.resize(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) res.scores[g].hyperparameters = grid[g];
  // oof[g][i] = prediction for row i under config g
  std::vector<std::vector<int>> oof(grid.size(), std::vector<int>(data.size(), 0));

  for (int f = 0; f < plan.k; ++f) {
    auto [train, valid] = fold_split(data, plan, f);
    res.fold_normalizers.push_back(Normalizer::fit(train.X));
    std::vector<std::size_t> valid_rows;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (plan.fold_of[i] == f) valid_rows.push_back(i);

    std::vector<std::vector<int>> preds(grid.size());
    if (kind == ModelKind::random_forest) {
      std::map<decltype(cv_detail::forest_key(grid[0])), std::vector<std::size_t>> groups;
      for (std::size_t g = 0; g < grid.size(); ++g) groups[cv_detail::forest_key(grid[g])].push_back(g);
      for (const auto& [key, members] : groups) {
        Hyperparameters hp = grid[members.front()];
        for (auto g : members) hp.n_trees = std::max(hp.n_trees, grid[g].n_trees);
        const TrainedModel m = train_model(kind, hp, train, seed);
        const auto& forest = std::get<RandomForest>(m.parameters);
        for (const auto& row : valid.X) {
          const Row x = m.normalizer.transform(row);
          for (auto g : members)
            preds[g].push_back(forest.predict_prefix(x, static_cast<std::size_t>(grid[g].n_trees)));
        }
      }
    } else {
      for (std::size_t g = 0; g < grid.size(); ++g) preds[g] = train_model(kind, grid[g], train, seed).predict_all(valid.X);
    }

    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<DocumentPrediction> dp;
      for (std::size_t v = 0; v < valid_rows.size(); ++v) {
        dp.push_back({"", valid.y[v], preds[g][v]});
        oof[g][valid_rows[v]] = preds[g][v];
      }
      const auto r = score_predictions(std::move(dp));
      res.scores[g].fold_accuracy.push_back(r.accuracy);
      res.scores[g].fold_rmse.push_back(r.rmse);
    }
  }

  for (auto& s : res.scores) {
    for (double a : s.fold_accuracy) s.mean_accuracy += a;
    for (double e : s.fold_rmse) s.mean_rmse += e;
    s.mean_accuracy /= plan.k;
    s.mean_rmse /= plan.k;
  }
  for (std::size_t g = 1; g < res.scores.size(); ++g) {
    const auto& a = res.scores[g];
    const auto& b = res.scores[res.best];
    if (a.mean_accuracy > b.mean_accuracy || (a.mean_accuracy == b.mean_accuracy && a.mean_rmse < b.mean_rmse))
      res.best = g;
  }
  std::vector<DocumentPrediction> pooled;
  for (std::size_t i = 0; i < data.size(); ++i)
    pooled.push_back({data.ids.empty() ? std::to_string(i) : data.ids[i], data.y[i], oof[res.best][i]});
  res.best_report = score_predictions(std::move(pooled));
  return res;
}

inline Json grid_search_to_json(const GridSearchResult& r) {
  Json configs = Json::array();
  for (const auto& s : r.scores)
    configs.push_back(Json{{"hyperparameters", hyperparameters_to_json(r.kind, s.hyperparameters)},
                           {"mean_accuracy", s.mean_accuracy},
                           {"mean_rmse", s.mean_rmse},
                           {"fold_accuracy", s.fold_accuracy},
                           {"fold_rmse", s.fold_rmse}});
  return Json{{"kind", model_kind_name(r.kind)},
              {"folds", r.folds},
              {"seed", r.seed},
              {"warnings", r.warnings},
              {"best_index", r.best},
              {"best_hyperparameters", hyperparameters_to_json(r.kind, r.best_hyperparameters())},
              {"cv_report", report_to_json(r.best_report)},
              {"grid", configs}};
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_CROSS_VALIDATION_HPP
