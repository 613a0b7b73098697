#ifndef FRCOMPLEX_CORPUS_HPP
#define FRCOMPLEX_CORPUS_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "frcomplex/biber.hpp"
#include "frcomplex/csv.hpp"
#include "frcomplex/dataset.hpp"
#include "frcomplex/errors.hpp"
#include "frcomplex/evaluation.hpp"
#include "frcomplex/features.hpp"
#include "frcomplex/lexicon.hpp"
#include "frcomplex/metrics.hpp"
#include "frcomplex/rules.hpp"
#include "frcomplex/segmentation.hpp"
#include "frcomplex/text.hpp"

namespace frcomplex {

inline constexpr std::array<std::string_view, kLabelCount> kClassNames = {
    "story", "recipe", "news", "wikipedia", "novel", "dictation", "insurance", "legal"};

/// Everything the analyzer needs, loaded once.
struct Resources {
  Lexicon lexicon;
  SegmentationRules segmentation;
  BiberRuleSet biber;
};

struct ResourcePaths {
  std::filesystem::path simple_words;
  std::filesystem::path lexicon;
  std::filesystem::path segmentation_rules;
  std::filesystem::path biber_rules;

  /// Default file names inside a data directory.
  static ResourcePaths in_directory(const std::filesystem::path& dir) {
    return {dir / "fr_simple_words.txt", dir / "fr_lexicon.tsv", dir / "fr_segmentation.rules", dir / "fr_biber.rules"};
  }
};

inline Resources load_resources(const ResourcePaths& p) {
  return {load_lexicon(p.simple_words, p.lexicon), load_segmentation_rules(p.segmentation_rules),
          load_biber_rules(p.biber_rules)};
}

inline FeatureVector analyze_text(std::string_view text, const Resources& r, const std::string& id) {
  return compute_feature_vector(analyze_document(text, r.lexicon, r.segmentation, id), r.lexicon, r.biber);
}

/// Whole file as bytes, BOM removed.
inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw LoadError("failed reading '" + path.string() + "'");
  return std::string(text::strip_bom(ss.str()));
}

struct CorpusDocument {
  std::string id;
  std::filesystem::path path;
  std::string text;
  int label = 0;
};

struct LabeledCorpus {
  std::vector<CorpusDocument> documents;
  std::filesystem::path manifest;
  std::uint64_t content_hash = 0;  // FNV-1a over the manifest and every document

  std::size_t size() const { return documents.size(); }
};

namespace corpus_detail {

inline std::map<std::string, std::size_t> require_columns(const csv::Table& t, const std::string& source,
                                                          std::initializer_list<std::string_view> cols) {
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < t.header.size(); ++i) at[std::string(text::trim(t.header[i]))] = i;
  for (auto c : cols)
    if (!at.count(std::string(c))) throw ParseError(source, 1, "manifest header lacks column '" + std::string(c) + "'");
  return at;
}

inline int parse_int(std::string_view s, const std::string& source, std::size_t line, std::string_view what) {
  s = text::trim(s);
  int v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw ParseError(source, line, "invalid " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

inline int parse_label(std::string_view s, const std::string& source, std::size_t line) {
  const int v = parse_int(s, source, line, "label");
  if (v < 0 || v >= kLabelCount)
    throw ValidationError(source + ":" + std::to_string(line) + ": label " + std::to_string(v) + " outside 0.." +
                          std::to_string(kLabelCount - 1));
  return v;
}

inline csv::Table read_manifest(const std::filesystem::path& path, std::string& raw) {
  raw = read_text_file(path);
  std::istringstream in(raw);
  return csv::read(in, path.string());
}

inline std::string load_document(const std::filesystem::path& base, std::string_view rel, const std::string& source,
                                 std::size_t line, std::filesystem::path& resolved) {
  resolved = std::filesystem::path(std::string(text::trim(rel)));
  if (resolved.is_relative()) resolved = base / resolved;
  std::ifstream probe(resolved, std::ios::binary);
  if (!probe) throw LoadError(source + ":" + std::to_string(line) + ": cannot open document '" + resolved.string() + "'");
  std::string t = read_text_file(resolved);
  if (text::trim(t).empty()) throw ValidationError(source + ":" + std::to_string(line) + ": document is empty");
  return t;
}

}  // namespace corpus_detail

/// Manifest CSV with header path,label,id; paths relative to the manifest.
inline LabeledCorpus load_corpus(const std::filesystem::path& manifest_path) {
  const std::string source = manifest_path.string();
  std::string raw;
  const auto table = corpus_detail::read_manifest(manifest_path, raw);
  const auto col = corpus_detail::require_columns(table, source, {"path", "label", "id"});
  LabeledCorpus c;
  c.manifest = manifest_path;
  std::uint64_t h = text::fnv1a(raw);
  std::set<std::string> seen;
  const auto base = manifest_path.parent_path();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    if (row.size() != table.header.size())
      throw ParseError(source, line, "expected " + std::to_string(table.header.size()) + " fields");
    CorpusDocument d;
    d.id = std::string(text::trim(row[col.at("id")]));
    if (d.id.empty()) throw ParseError(source, line, "empty id");
    if (!seen.insert(d.id).second) throw ValidationError(source + ":" + std::to_string(line) + ": duplicate id '" + d.id + "'");
    d.label = corpus_detail::parse_label(row[col.at("label")], source, line);
    d.text = corpus_detail::load_document(base, row[col.at("path")], source, line, d.path);
    h = text::fnv1a(d.text, h);
    c.documents.push_back(std::move(d));
  }
  c.content_hash = h;
  return c;
}

struct BlindDocument {
  std::string id;
  std::filesystem::path path;
  std::string text;
};

struct BlindSet {
  std::string group;
  double expected_min = 0.0;
  double expected_max = 0.0;
  std::vector<BlindDocument> documents;
};

/// Blind manifest CSV: path,group,expected_min,expected_max,id. Groups keep
/// the order of their first row; every row of a group must agree on the range.
inline std::vector<BlindSet> load_blind_manifest(const std::filesystem::path& manifest_path) {
  const std::string source = manifest_path.string();
  std::string raw;
  const auto table = corpus_detail::read_manifest(manifest_path, raw);
  const auto col = corpus_detail::require_columns(table, source, {"path", "group", "expected_min", "expected_max", "id"});
  std::vector<BlindSet> sets;
  std::set<std::string> seen;
  const auto base = manifest_path.parent_path();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    if (row.size() != table.header.size())
      throw ParseError(source, line, "expected " + std::to_string(table.header.size()) + " fields");
    const std::string group(text::trim(row[col.at("group")]));
    const double lo = csv::parse_double(text::trim(row[col.at("expected_min")]), source, line);
    const double hi = csv::parse_double(text::trim(row[col.at("expected_max")]), source, line);
    if (lo > hi || lo < 0 || hi > kLabelCount - 1)
      throw ValidationError(source + ":" + std::to_string(line) + ": expected range must satisfy 0 <= min <= max <= 7");
    BlindDocument d;
    d.id = std::string(text::trim(row[col.at("id")]));
    if (d.id.empty()) throw ParseError(source, line, "empty id");
    if (!seen.insert(d.id).second) throw ValidationError(source + ":" + std::to_string(line) + ": duplicate id '" + d.id + "'");
    d.text = corpus_detail::load_document(base, row[col.at("path")], source, line, d.path);
    auto it = std::find_if(sets.begin(), sets.end(), [&](const auto& s) { return s.group == group; });
    if (it == sets.end()) {
      sets.push_back({group, lo, hi, {}});
      it = sets.end() - 1;
    } else if (it->expected_min != lo || it->expected_max != hi) {
      throw ValidationError(source + ":" + std::to_string(line) + ": group '" + group + "' has inconsistent ranges");
    }
    it->documents.push_back(std::move(d));
  }
  return sets;
}

struct FeatureMatrix {
  Dataset data;                  // rows in corpus order
  std::vector<double> seconds;   // analysis time per document
};

inline FeatureMatrix featurize_corpus(const LabeledCorpus& c, const Resources& r) {
  FeatureMatrix m;
  m.data.feature_names = feature_schema();
  for (const auto& d : c.documents) {
    const auto t0 = std::chrono::steady_clock::now();
    auto fv = analyze_text(d.text, r, d.id);
    m.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    m.data.X.push_back(std::move(fv.values));
    m.data.y.push_back(d.label);
    m.data.ids.push_back(d.id);
  }
  return m;
}

inline std::vector<BlindGroup> featurize_blind(const std::vector<BlindSet>& sets, const Resources& r) {
  std::vector<BlindGroup> out;
  for (const auto& s : sets) {
    BlindGroup g{s.group, s.expected_min, s.expected_max, {}, {}};
    for (const auto& d : s.documents) {
      g.ids.push_back(d.id);
      g.X.push_back(analyze_text(d.text, r, d.id).values);
    }
    out.push_back(std::move(g));
  }
  return out;
}

struct LevelSummary {
  int level = 0;
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

/// Per-level five-number summary plus mean of one metric; quartiles by nearest rank.
inline std::vector<LevelSummary> export_distributions(const Dataset& d, std::string_view metric) {
  const auto it = std::find(d.feature_names.begin(), d.feature_names.end(), metric);
  if (it == d.feature_names.end()) throw ValidationError("unknown metric '" + std::string(metric) + "'");
  const auto j = static_cast<std::size_t>(it - d.feature_names.begin());
  std::vector<std::vector<double>> per(kLabelCount);
  for (std::size_t i = 0; i < d.size(); ++i) per.at(d.y[i]).push_back(d.X[i][j]);
  std::vector<LevelSummary> out;
  for (int l = 0; l < kLabelCount; ++l) {
    auto& v = per[l];
    LevelSummary s;
    s.level = l;
    s.count = v.size();
    if (!v.empty()) {
      std::sort(v.begin(), v.end());
      s.min = v.front();
      s.max = v.back();
      s.q1 = nearest_rank(v, 0.25);
      s.median = nearest_rank(v, 0.5);
      s.q3 = nearest_rank(v, 0.75);
      double sum = 0.0;
      for (double x : v) sum += x;
      s.mean = sum / static_cast<double>(v.size());
    }
    out.push_back(s);
  }
  return out;
}

/// Levels without documents get empty fields.
inline void write_distribution_csv(std::ostream& os, const std::vector<LevelSummary>& rows) {
  os << "level,min,q1,median,q3,max,mean\n";
  for (const auto& s : rows) {
    os << s.level;
    for (double v : {s.min, s.q1, s.median, s.q3, s.max, s.mean}) os << ',' << (s.count ? csv::format_double(v) : "");
    os << '\n';
  }
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_CORPUS_HPP
