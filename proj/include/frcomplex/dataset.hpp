#ifndef FRCOMPLEX_DATASET_HPP
#define FRCOMPLEX_DATASET_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "frcomplex/errors.hpp"

namespace frcomplex {

inline constexpr int kLabelCount = 8;

using Row = std::vector<double>;
using Matrix = std::vector<Row>;

/// Rows of features with integer labels. ids are optional (may be empty).
struct Dataset {
  std::vector<std::string> feature_names;
  Matrix X;
  std::vector<int> y;
  std::vector<std::string> ids;

  std::size_t size() const { return X.size(); }
  std::size_t width() const { return X.empty() ? feature_names.size() : X.front().size(); }

  Dataset subset(const std::vector<std::size_t>& idx) const {
    Dataset d;
    d.feature_names = feature_names;
    d.X.reserve(idx.size());
    d.y.reserve(idx.size());
    for (auto i : idx) {
      d.X.push_back(X[i]);
      d.y.push_back(y[i]);
      if (!ids.empty()) d.ids.push_back(ids[i]);
    }
    return d;
  }
};

/// Checks shape, finiteness and label range. `min_rows` = 1 for training.
inline void validate_dataset(const Dataset& d, std::size_t min_rows = 1) {
  if (d.X.size() < min_rows) throw ValidationError("dataset has " + std::to_string(d.X.size()) + " rows");
  if (d.X.size() != d.y.size()) throw ValidationError("feature rows and labels differ in count");
  if (!d.ids.empty() && d.ids.size() != d.X.size()) throw ValidationError("ids and rows differ in count");
  const std::size_t w = d.width();
  for (std::size_t i = 0; i < d.X.size(); ++i) {
    if (d.X[i].size() != w) throw ValidationError("row " + std::to_string(i) + " has wrong width");
    for (double v : d.X[i])
      if (!std::isfinite(v)) throw ValidationError("row " + std::to_string(i) + " has a non-finite value");
    if (d.y[i] < 0 || d.y[i] >= kLabelCount)
      throw ValidationError("label " + std::to_string(d.y[i]) + " outside 0.." + std::to_string(kLabelCount - 1));
  }
}

inline int class_count_of(const std::vector<int>& y) {
  int m = -1;
  for (int v : y) m = v > m ? v : m;
  return m + 1;
}

/// First maximum wins, so ties go to the lower label.
template <class Scores>
int argmax_lower(const Scores& s) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(s.size()); ++c)
    if (s[c] > s[best]) best = c;
  return best;
}

// Portable draws: std distributions differ across standard libraries.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_DATASET_HPP
