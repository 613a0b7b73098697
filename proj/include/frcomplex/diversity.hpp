#ifndef FRCOMPLEX_DIVERSITY_HPP
#define FRCOMPLEX_DIVERSITY_HPP

// Lexical diversity over a stream of case-folded word forms.

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace frcomplex {

inline constexpr std::size_t kMsttrSegment = 50;
inline constexpr std::size_t kMattrWindow = 100;
inline constexpr double kMtldThreshold = 0.720;

/// Distinct forms over total forms; 0 for an empty stream.
inline double ttr(std::span<const std::string> tokens) {
  if (tokens.empty()) return 0.0;
  std::unordered_set<std::string> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

/// Mean TTR of consecutive non-overlapping segments; the trailing partial
/// segment is dropped. Streams shorter than one segment fall back to TTR.
inline double msttr(std::span<const std::string> tokens, std::size_t segment = kMsttrSegment) {
  if (tokens.size() < segment) return ttr(tokens);
  const std::size_t count = tokens.size() / segment;
  double sum = 0.0;
  for (std::size_t s = 0; s < count; ++s) sum += ttr(tokens.subspan(s * segment, segment));
  return sum / static_cast<double>(count);
}

/// Mean TTR over every window of `window` consecutive forms (stride 1).
/// Streams shorter than the window fall back to TTR.
inline double mattr(std::span<const std::string> tokens, std::size_t window = kMattrWindow) {
  if (tokens.size() < window) return ttr(tokens);
  std::unordered_map<std::string_view, std::size_t> counts;
  std::size_t types = 0;
  auto add = [&](const std::string& w) {
    if (counts[w]++ == 0) ++types;
  };
  auto remove = [&](const std::string& w) {
    if (--counts[w] == 0) --types;
  };
  for (std::size_t i = 0; i < window; ++i) add(tokens[i]);
  double sum = static_cast<double>(types) / static_cast<double>(window);
  for (std::size_t i = window; i < tokens.size(); ++i) {
    remove(tokens[i - window]);
    add(tokens[i]);
    sum += static_cast<double>(types) / static_cast<double>(window);
  }
  return sum / static_cast<double>(tokens.size() - window + 1);
}

namespace detail {

// Factor count of one MTLD pass, including the partial final factor.
template <typename It>
double mtld_factors(It begin, It end, double threshold) {
  double factors = 0.0;
  std::unordered_set<std::string_view> types;
  std::size_t count = 0;
  double current = 1.0;
  for (It it = begin; it != end; ++it) {
    ++count;
    types.insert(*it);
    current = static_cast<double>(types.size()) / static_cast<double>(count);
    if (current < threshold) {
      factors += 1.0;
      types.clear();
      count = 0;
      current = 1.0;
    }
  }
  if (count > 0) factors += (1.0 - current) / (1.0 - threshold);
  return factors;
}

}  // namespace detail

/// Measure of textual lexical diversity: word count over factor count, where
/// a factor closes each time the running TTR drops below the threshold.
/// Averaged over a forward and a backward pass. A pass with zero factors
/// contributes the word count.
inline double mtld(std::span<const std::string> tokens, double threshold = kMtldThreshold) {
  if (tokens.empty()) return 0.0;
  const double n = static_cast<double>(tokens.size());
  auto pass = [&](double factors) { return factors > 0.0 ? n / factors : n; };
  const double forward = pass(detail::mtld_factors(tokens.begin(), tokens.end(), threshold));
  const double backward = pass(detail::mtld_factors(tokens.rbegin(), tokens.rend(), threshold));
  return (forward + backward) / 2.0;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_DIVERSITY_HPP
