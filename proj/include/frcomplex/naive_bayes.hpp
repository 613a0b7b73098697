#ifndef FRCOMPLEX_NAIVE_BAYES_HPP
#define FRCOMPLEX_NAIVE_BAYES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"

namespace frcomplex {

/// Multinomial NB over fractional (normalized) feature counts.
struct NaiveBayes {
  double alpha = 1.0;
  std::vector<double> log_prior;               // per class
  std::vector<std::vector<double>> log_theta;  // [class][feature]

  std::size_t class_count() const { return log_prior.size(); }

  /// Unnormalized log posterior per class.
  std::vector<double> joint_log_likelihood(const Row& x) const {
    std::vector<double> s(log_prior);
    for (std::size_t c = 0; c < s.size(); ++c)
      for (std::size_t j = 0; j < x.size(); ++j) s[c] += x[j] * log_theta[c][j];
    return s;
  }

  int predict(const Row& x) const { return argmax_lower(joint_log_likelihood(x)); }
};

inline NaiveBayes train_naive_bayes(const Matrix& X, const std::vector<int>& y, double alpha) {
  if (X.empty() || X.size() != y.size()) throw ValidationError("naive Bayes needs matching non-empty rows and labels");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("smoothing alpha must be positive and finite");
  const std::size_t d = X.front().size();
  const int k = class_count_of(y);
  std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (y[i] < 0) throw ValidationError("negative label");
    ++counts[y[i]];
    for (std::size_t j = 0; j < d; ++j) {
      if (X[i][j] < 0.0) throw ValidationError("naive Bayes needs non-negative features (row " + std::to_string(i) + ")");
      sums[y[i]][j] += X[i][j];
    }
  }
  NaiveBayes nb;
  nb.alpha = alpha;
  nb.log_prior.resize(k);
  nb.log_theta.assign(k, std::vector<double>(d));
  for (int c = 0; c < k; ++c) {
    if (counts[c] == 0) throw TrainingError("class " + std::to_string(c) + " has no training examples");
    nb.log_prior[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(X.size()));
    double total = 0.0;
    for (double s : sums[c]) total += s;
    const double denom = std::log(total + alpha * static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j) nb.log_theta[c][j] = std::log(sums[c][j] + alpha) - denom;
  }
  return nb;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_NAIVE_BAYES_HPP
