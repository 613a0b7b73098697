#ifndef FRCOMPLEX_LOGISTIC_REGRESSION_HPP
#define FRCOMPLEX_LOGISTIC_REGRESSION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"

namespace frcomplex {

struct LogisticOptions {
  double l2_strength = 1.0;
  double learning_rate = 0.1;
  int epochs = 5000;
  double tolerance = 1e-8;  // stop when |loss change| falls below this
  std::uint64_t seed = 42;
};

/// One binary model: weights plus an unregularized bias.
struct BinaryLogistic {
  std::vector<double> w;
  double b = 0.0;
  int epochs_run = 0;
  double final_loss = 0.0;

  double score(const Row& x) const {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[j];
    return z;
  }
};

namespace lr_detail {
// log(1 + e^z) without overflow
inline double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}
}  // namespace lr_detail

/// Mean log loss plus (lambda / 2n) |w|^2. targets are 0/1.
inline double logistic_loss(const BinaryLogistic& m, const Matrix& X, const std::vector<double>& t, double lambda) {
  const double n = static_cast<double>(X.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double z = m.score(X[i]);
    loss += lr_detail::softplus(z) - t[i] * z;
  }
  double ww = 0.0;
  for (double v : m.w) ww += v * v;
  return loss / n + lambda / (2.0 * n) * ww;
}

/// Gradient of logistic_loss; the last element is d/db.
inline std::vector<double> logistic_gradient(const BinaryLogistic& m, const Matrix& X, const std::vector<double>& t,
                                             double lambda) {
  const std::size_t d = m.w.size();
  const double n = static_cast<double>(X.size());
  std::vector<double> g(d + 1, 0.0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double r = lr_detail::sigmoid(m.score(X[i])) - t[i];
    for (std::size_t j = 0; j < d; ++j) g[j] += r * X[i][j];
    g[d] += r;
  }
  for (std::size_t j = 0; j < d; ++j) g[j] = g[j] / n + lambda / n * m.w[j];
  g[d] /= n;
  return g;
}

/// Step size capped by the inverse of a curvature bound so large inputs stay stable.
inline double safe_step(const Matrix& X, double lambda, double learning_rate) {
  double mean_sq = 0.0;
  for (const auto& r : X) {
    double s = 1.0;
    for (double v : r) s += v * v;
    mean_sq += s;
  }
  mean_sq /= static_cast<double>(X.size());
  const double L = 0.25 * mean_sq + lambda / static_cast<double>(X.size());
  return std::min(learning_rate, 1.0 / L);
}

inline BinaryLogistic train_binary_logistic(const Matrix& X, const std::vector<double>& t, const LogisticOptions& opt,
                                            std::uint64_t seed, int class_label) {
  const std::size_t d = X.front().size();
  BinaryLogistic m;
  m.w.resize(d);
  std::mt19937_64 rng(seed);
  for (auto& v : m.w) v = (uniform_unit(rng) - 0.5) * 0.02;
  const double step = safe_step(X, opt.l2_strength, opt.learning_rate);
  double prev = logistic_loss(m, X, t, opt.l2_strength);
  for (int e = 0; e < opt.epochs; ++e) {
    const auto g = logistic_gradient(m, X, t, opt.l2_strength);
    for (std::size_t j = 0; j < d; ++j) m.w[j] -= step * g[j];
    m.b -= step * g[d];
    const double cur = logistic_loss(m, X, t, opt.l2_strength);
    m.epochs_run = e + 1;
    if (!std::isfinite(cur)) {
      std::ostringstream os;
      os << "non-finite loss for class " << class_label << " at epoch " << e + 1 << " (step " << step
         << ", previous loss " << prev << ")";
      throw TrainingError(os.str());
    }
    const bool done = std::abs(prev - cur) < opt.tolerance;
    prev = cur;
    if (done) break;
  }
  m.final_loss = prev;
  return m;
}

/// One-vs-rest: one binary model per class, argmax of raw scores.
struct LogisticRegression {
  LogisticOptions options;
  std::vector<BinaryLogistic> models;

  std::vector<double> scores(const Row& x) const {
    std::vector<double> s(models.size());
    for (std::size_t c = 0; c < models.size(); ++c) s[c] = models[c].score(x);
    return s;
  }
  int predict(const Row& x) const { return argmax_lower(scores(x)); }
};

inline LogisticRegression train_logistic_regression(const Matrix& X, const std::vector<int>& y,
                                                    const LogisticOptions& opt) {
  if (X.empty() || X.size() != y.size()) throw ValidationError("logistic regression needs matching non-empty rows");
  if (!(opt.l2_strength >= 0.0) || !std::isfinite(opt.l2_strength))
    throw ValidationError("l2 strength must be finite and non-negative");
  if (!(opt.learning_rate > 0.0)) throw ValidationError("learning rate must be positive");
  if (opt.epochs < 0) throw ValidationError("epochs must be non-negative");
  LogisticRegression lr;
  lr.options = opt;
  const int k = class_count_of(y);
  std::mt19937_64 seeder(opt.seed);
  for (int c = 0; c < k; ++c) {
    std::vector<double> t(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] == c ? 1.0 : 0.0;
    lr.models.push_back(train_binary_logistic(X, t, opt, seeder(), c));
  }
  return lr;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_LOGISTIC_REGRESSION_HPP
