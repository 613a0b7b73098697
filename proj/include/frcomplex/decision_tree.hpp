#ifndef FRCOMPLEX_DECISION_TREE_HPP
#define FRCOMPLEX_DECISION_TREE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"

namespace frcomplex {

enum class Criterion { gini, entropy };

inline std::string_view criterion_name(Criterion c) { return c == Criterion::gini ? "gini" : "entropy"; }

inline Criterion parse_criterion(std::string_view s) {
  if (s == "gini") return Criterion::gini;
  if (s == "entropy") return Criterion::entropy;
  throw ValidationError("unknown split criterion '" + std::string(s) + "'");
}

struct TreeOptions {
  Criterion criterion = Criterion::gini;
  std::optional<int> max_depth;  // nullopt = grow until pure
  std::size_t max_features = 0;  // features examined per split; 0 = all
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;  // taken when x[feature] <= threshold
  int right = -1;
  int label = 0;
  std::size_t samples = 0;
  double impurity = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  TreeOptions options;
  std::vector<TreeNode> nodes;       // nodes[0] is the root
  std::vector<double> importances;   // normalized impurity decrease per feature

  int predict(const Row& x) const {
    int n = 0;
    while (!nodes[n].is_leaf()) n = x[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left : nodes[n].right;
    return nodes[n].label;
  }

  int depth() const { return depth_from(0); }

 private:
  int depth_from(int n) const {
    if (nodes[n].is_leaf()) return 0;
    return 1 + std::max(depth_from(nodes[n].left), depth_from(nodes[n].right));
  }
};

inline double impurity(const std::vector<std::size_t>& counts, std::size_t total, Criterion c) {
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  double acc = 0.0;
  for (auto k : counts) {
    if (k == 0) continue;
    const double p = static_cast<double>(k) / n;
    acc += c == Criterion::gini ? p * p : -p * std::log2(p);
  }
  return c == Criterion::gini ? 1.0 - acc : acc;
}

namespace tree_detail {

struct Builder {
  const Matrix& X;
  const std::vector<int>& y;
  int classes;
  const TreeOptions& opt;
  std::mt19937_64* rng;  // used only when max_features < width
  DecisionTree& tree;
  double total;
  std::vector<double> raw_importance;

  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double decrease = 0.0;
  };

  std::vector<std::size_t> counts_of(const std::vector<std::size_t>& idx) const {
    std::vector<std::size_t> c(classes, 0);
    for (auto i : idx) ++c[y[i]];
    return c;
  }

  // Returns false when the feature is constant on this node.
  bool scan_feature(std::size_t f, const std::vector<std::size_t>& idx, double parent_imp, Split& best) const {
    std::vector<std::pair<double, int>> v;
    v.reserve(idx.size());
    for (auto i : idx) v.emplace_back(X[i][f], y[i]);
    std::sort(v.begin(), v.end());
    if (v.front().first == v.back().first) return false;
    std::vector<std::size_t> left(classes, 0), right(classes, 0);
    for (const auto& p : v) ++right[p.second];
    const std::size_t m = v.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
      ++left[v[i].second];
      --right[v[i].second];
      if (!(v[i].first < v[i + 1].first)) continue;
      const std::size_t nl = i + 1, nr = m - nl;
      const double child = (static_cast<double>(nl) * impurity(left, nl, opt.criterion) +
                            static_cast<double>(nr) * impurity(right, nr, opt.criterion)) /
                           static_cast<double>(m);
      const double dec = parent_imp - child;
      if (best.feature < 0 || dec > best.decrease) {
        double mid = v[i].first + (v[i + 1].first - v[i].first) / 2.0;
        if (!(mid < v[i + 1].first)) mid = v[i].first;
        best = {static_cast<int>(f), mid, dec};
      }
    }
    return true;
  }

  Split find_split(const std::vector<std::size_t>& idx, double parent_imp) {
    const std::size_t d = X.front().size();
    Split best;
    if (opt.max_features == 0 || opt.max_features >= d) {
      for (std::size_t f = 0; f < d; ++f) scan_feature(f, idx, parent_imp, best);
      return best;
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_in_place(order, *rng);
    // Constant features do not use up the per-split budget.
    std::size_t visited = 0;
    for (std::size_t f : order) {
      if (scan_feature(f, idx, parent_imp, best)) ++visited;
      if (visited >= opt.max_features) break;
    }
    return best;
  }

  int build(const std::vector<std::size_t>& idx, int depth) {
    const auto counts = counts_of(idx);
    TreeNode node;
    node.samples = idx.size();
    node.impurity = impurity(counts, idx.size(), opt.criterion);
    node.label = argmax_lower(counts);
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);
    const bool pure = counts[node.label] == idx.size();
    const bool depth_hit = opt.max_depth && depth >= *opt.max_depth;
    if (pure || depth_hit || idx.size() < 2) return id;
    const Split s = find_split(idx, node.impurity);
    if (s.feature < 0) return id;
    std::vector<std::size_t> li, ri;
    for (auto i : idx) (X[i][s.feature] <= s.threshold ? li : ri).push_back(i);
    const double nl = static_cast<double>(li.size()), nr = static_cast<double>(ri.size());
    const double child_l = impurity(counts_of(li), li.size(), opt.criterion);
    const double child_r = impurity(counts_of(ri), ri.size(), opt.criterion);
    const double gain = static_cast<double>(idx.size()) * node.impurity - nl * child_l - nr * child_r;
    raw_importance[s.feature] += std::max(0.0, gain) / total;
    const int l = build(li, depth + 1);
    const int r = build(ri, depth + 1);
    auto& n = tree.nodes[id];
    n.feature = s.feature;
    n.threshold = s.threshold;
    n.left = l;
    n.right = r;
    return id;
  }
};

}  // namespace tree_detail

inline std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  if (s > 0.0)
    for (double& x : v) x /= s;
  return v;
}

/// CART on the rows listed in `sample` (duplicates allowed, as in a bootstrap).
inline DecisionTree train_decision_tree(const Matrix& X, const std::vector<int>& y, const TreeOptions& opt,
                                        const std::vector<std::size_t>& sample, std::mt19937_64* rng = nullptr) {
  if (X.empty() || X.size() != y.size()) throw ValidationError("decision tree needs matching non-empty rows");
  if (sample.empty()) throw ValidationError("decision tree needs at least one sample");
  if (opt.max_depth && *opt.max_depth < 0) throw ValidationError("max depth must be non-negative");
  std::mt19937_64 fallback(0);
  DecisionTree tree;
  tree.options = opt;
  tree_detail::Builder b{X, y, class_count_of(y), opt, rng ? rng : &fallback, tree,
                         static_cast<double>(sample.size()), std::vector<double>(X.front().size(), 0.0)};
  b.build(sample, 0);
  tree.importances = normalized(std::move(b.raw_importance));
  return tree;
}

inline DecisionTree train_decision_tree(const Matrix& X, const std::vector<int>& y, const TreeOptions& opt) {
  std::vector<std::size_t> all(X.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return train_decision_tree(X, y, opt, all);
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_DECISION_TREE_HPP
