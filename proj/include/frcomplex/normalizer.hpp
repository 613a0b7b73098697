#ifndef FRCOMPLEX_NORMALIZER_HPP
#define FRCOMPLEX_NORMALIZER_HPP

#include <algorithm>
#include <vector>

#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"

namespace frcomplex {

/// Per-feature min-max scaling to [0,1], clamped. Constant features map to 0.
struct Normalizer {
  std::vector<double> mins;
  std::vector<double> maxs;

  static Normalizer fit(const Matrix& X) {
    if (X.empty()) throw ValidationError("cannot fit a normalizer on zero rows");
    Normalizer n;
    n.mins = X.front();
    n.maxs = X.front();
    for (const auto& r : X) {
      if (r.size() != n.mins.size()) throw ValidationError("ragged feature matrix");
      for (std::size_t j = 0; j < r.size(); ++j) {
        n.mins[j] = std::min(n.mins[j], r[j]);
        n.maxs[j] = std::max(n.maxs[j], r[j]);
      }
    }
    return n;
  }

  std::size_t width() const { return mins.size(); }

  double apply(std::size_t j, double v) const {
    const double span = maxs[j] - mins[j];
    if (!(span > 0.0)) return 0.0;
    return std::clamp((v - mins[j]) / span, 0.0, 1.0);
  }

  Row transform(const Row& r) const {
    if (r.size() != width())
      throw ValidationError("expected " + std::to_string(width()) + " features, got " + std::to_string(r.size()));
    Row out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = apply(j, r[j]);
    return out;
  }

  Matrix transform(const Matrix& X) const {
    Matrix out;
    out.reserve(X.size());
    for (const auto& r : X) out.push_back(transform(r));
    return out;
  }

  friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

}  // namespace frcomplex

#endif  // FRCOMPLEX_NORMALIZER_HPP
