#ifndef FRCOMPLEX_RANDOM_FOREST_HPP
#define FRCOMPLEX_RANDOM_FOREST_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/decision_tree.hpp"
#include "frcomplex/errors.hpp"

namespace frcomplex {

enum class MaxFeatures { sqrt, all };

inline std::string_view max_features_name(MaxFeatures m) { return m == MaxFeatures::sqrt ? "sqrt" : "all"; }

inline MaxFeatures parse_max_features(std::string_view s) {
  if (s == "sqrt") return MaxFeatures::sqrt;
  if (s == "all") return MaxFeatures::all;
  throw ValidationError("unknown max_features '" + std::string(s) + "'");
}

struct ForestOptions {
  int n_trees = 100;
  Criterion criterion = Criterion::gini;
  std::optional<int> max_depth;
  bool bootstrap = true;
  MaxFeatures max_features = MaxFeatures::sqrt;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects the result
};

struct RandomForest {
  ForestOptions options;
  std::vector<DecisionTree> trees;
  std::vector<double> importances;

  /// Majority vote of the first n trees. Tree i depends only on the seed and
  /// i, so a prefix is exactly the forest that would be trained with n trees.
  int predict_prefix(const Row& x, std::size_t n) const {
    std::vector<int> votes(kLabelCount, 0);
    n = std::min(n, trees.size());
    for (std::size_t t = 0; t < n; ++t) ++votes[trees[t].predict(x)];
    return argmax_lower(votes);
  }
  int predict(const Row& x) const { return predict_prefix(x, trees.size()); }
};

inline std::size_t features_per_split(MaxFeatures m, std::size_t d) {
  if (m == MaxFeatures::all) return d;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))));
}

inline RandomForest train_random_forest(const Matrix& X, const std::vector<int>& y, const ForestOptions& opt) {
  if (opt.n_trees < 1) throw ValidationError("a forest needs at least one tree");
  if (X.empty() || X.size() != y.size()) throw ValidationError("random forest needs matching non-empty rows");
  const std::size_t n = X.size();
  const std::size_t d = X.front().size();
  TreeOptions topt{opt.criterion, opt.max_depth, features_per_split(opt.max_features, d)};

  std::vector<std::uint64_t> seeds(opt.n_trees);
  std::mt19937_64 seeder(opt.seed);
  for (auto& s : seeds) s = seeder();

  RandomForest forest;
  forest.options = opt;
  forest.trees.resize(opt.n_trees);
  auto grow = [&](std::size_t t) {
    std::mt19937_64 rng(seeds[t]);
    std::vector<std::size_t> sample(n);
    if (opt.bootstrap) {
      for (auto& i : sample) i = uniform_index(rng, n);
    } else {
      std::iota(sample.begin(), sample.end(), std::size_t{0});
    }
    forest.trees[t] = train_decision_tree(X, y, topt, sample, &rng);
  };

  unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(opt.n_trees));
  if (workers <= 1) {
    for (std::size_t t = 0; t < seeds.size(); ++t) grow(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < seeds.size();) {
          try {
            grow(t);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  forest.importances.assign(d, 0.0);
  for (const auto& tr : forest.trees)
    for (std::size_t j = 0; j < d; ++j) forest.importances[j] += tr.importances[j];
  forest.importances = normalized(std::move(forest.importances));
  return forest;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_RANDOM_FOREST_HPP
