#ifndef FRCOMPLEX_BASELINE_HPP
#define FRCOMPLEX_BASELINE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "frcomplex/dataset.hpp"

namespace frcomplex {

struct KmBand {
  double lower;  // inclusive
  double upper;  // exclusive, except the top band which includes 100
  int label;
  std::string_view description;
};

inline constexpr std::array<KmBand, 8> kKmBands = {{
    {90, 100, 0, "very easy"},
    {80, 90, 1, "easy"},
    {70, 80, 2, "fairly easy"},
    {60, 70, 3, "standard"},
    {50, 60, 4, "fairly difficult"},
    {30, 50, 5, "difficult"},
    {0, 30, 6, "very difficult"},
    {-HUGE_VAL, 0, 7, "below scale"},
}};

inline int km_band(double km) {
  if (std::isnan(km)) return 7;
  if (km >= 90) return 0;  // includes scores above 100, clamped
  for (const auto& b : kKmBands)
    if (km >= b.lower) return b.label;
  return 7;
}

/// Readability-formula classifier. Reads the raw (unnormalized) KM column.
struct BaselineClassifier {
  std::size_t km_index = 0;

  int predict(const Row& raw) const { return km_band(raw.at(km_index)); }
};

}  // namespace frcomplex

#endif  // FRCOMPLEX_BASELINE_HPP
