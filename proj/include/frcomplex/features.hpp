#ifndef FRCOMPLEX_FEATURES_HPP
#define FRCOMPLEX_FEATURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "frcomplex/biber.hpp"
#include "frcomplex/csv.hpp"
#include "frcomplex/diversity.hpp"
#include "frcomplex/errors.hpp"
#include "frcomplex/lexicon.hpp"
#include "frcomplex/metrics.hpp"
#include "frcomplex/segmentation.hpp"

namespace frcomplex {

inline constexpr int kFeatureSchemaVersion = 1;

inline constexpr std::array<std::string_view, 23> kCoreFeatureNames = {
    "TTR",  "MSTTR", "MATTR", "MTLD",  "PA",   "Unigram", "NLM",  "wordLength", "MLS",     "MLC",      "DC/C",  "MLT",
    "TU/S", "CTU/TU", "C/TU", "CP/C", "CP/TU", "C/S",     "NWS90", "PS30",      "FK_ease", "KM_score", "BINGUI"};

/// Canonical column order: core metrics, then the 40 Biber features.
inline const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> schema = [] {
    std::vector<std::string> s(kCoreFeatureNames.begin(), kCoreFeatureNames.end());
    s.insert(s.end(), kBiberFeatureNames.begin(), kBiberFeatureNames.end());
    return s;
  }();
  return schema;
}

inline std::size_t feature_index(std::string_view name) {
  const auto& s = feature_schema();
  const auto it = std::find(s.begin(), s.end(), name);
  if (it == s.end()) throw ValidationError("unknown metric '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - s.begin());
}

struct FeatureVector {
  std::string document_id;
  std::vector<double> values;  // aligned with feature_schema()

  double operator[](std::string_view name) const { return values.at(feature_index(name)); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline FeatureVector compute_feature_vector(const AnalyzedDocument& doc, const Lexicon& lexicon,
                                            const BiberRuleSet& rules) {
  FeatureVector fv;
  fv.document_id = doc.source_id;
  const auto forms = diversity_forms(doc);
  const auto voc = vocabulary_metrics(doc, lexicon);
  const auto syn = syntactic_metrics(doc);
  const auto read = readability_metrics(doc);
  fv.values = {ttr(forms),  msttr(forms), mattr(forms),   mtld(forms),    voc.pa,        voc.unigram,
               voc.nlm,     voc.word_length, syn.mls,     syn.mlc,        syn.dc_c,      syn.mlt,
               syn.tu_s,    syn.ctu_tu,   syn.c_tu,       syn.cp_c,       syn.cp_tu,     syn.c_s,
               syn.nws90,   syn.ps30,     read.fk_ease,   read.km_score,  read.bingui};
  const auto biber = biber_features(doc, rules);
  fv.values.insert(fv.values.end(), biber.begin(), biber.end());
  return fv;
}

inline void write_feature_csv_header(std::ostream& os) {
  os << "id";
  for (const auto& n : feature_schema()) os << ',' << n;
  os << '\n';
}

inline void write_feature_csv_row(std::ostream& os, const FeatureVector& fv) {
  os << csv::escape(fv.document_id);
  for (double v : fv.values) os << ',' << csv::format_double(v);
  os << '\n';
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_FEATURES_HPP
