#pragma once

// Deterministic CSV / JSON / text renderings of analysis results. Reals are rounded to
// 12 significant digits before emission, so JSON read back renders byte-identically.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "phull/defect_graph.hpp"
#include "phull/ihs.hpp"
#include "phull/spec_file.hpp"
#include "phull/spectral.hpp"

namespace phull {

using Json = nlohmann::ordered_json;

/// "%.12g"-style text; "inf", "-inf", "nan" for non-finite values.
std::string format12(double v);
double round12(double v);

struct AnalysisReport {
  std::string name;
  std::vector<std::string> alphabet;
  std::vector<std::string> rules;  // images in alphabet order
  std::vector<std::vector<std::uint64_t>> matrix;
  unsigned primitivity_exponent = 0;
  double theta = 0;
  double c_hat = 0;
  double c_check = 0;
  unsigned horizon = 0;
  std::vector<std::string> legal_two_words;
  std::vector<std::string> illegal_two_words;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::vector<std::string>> cyclic_components;
  bool self_correcting = true;
  std::vector<std::string> cycle;  // closed path witnessing a failure of self-correction

  bool operator==(const AnalysisReport&) const = default;
};

/// Throws InvalidArgument for a non-primitive substitution before computing anything.
AnalysisReport analyze(const SubstitutionSpec& spec, unsigned horizon = kDefaultPerronHorizon,
                       double tol = kDefaultPerronTolerance);
std::string to_text(const AnalysisReport& report);
Json to_json(const AnalysisReport& report);
AnalysisReport analysis_from_json(const Json& j);

struct ClassificationReport {
  std::string name;
  Verdict verdict = Verdict::good;
  std::vector<std::string> legal_census;
  std::vector<std::string> illegal_census;
  std::vector<std::string> path;  // bad: path into a cycle
  std::size_t cycle_start = 0;
  std::size_t max_path_length = 0;  // good: longest defect path from the census
  bool path_length_agrees = true;   // the independent path-length test gives the same verdict

  bool operator==(const ClassificationReport&) const = default;
};

ClassificationReport classify_report(Language& language, const SeedCensus& census, const std::string& name);
std::string to_text(const ClassificationReport& report);
Json to_json(const ClassificationReport& report);
ClassificationReport classification_from_json(const Json& j);

/// n, period_length, agree_length, rho, upper_bound, illegal_2word_count
std::string ihs_csv(const IhsRun& run);
Json to_json(const IhsRun& run);
IhsRun ihs_from_json(const Json& j);

/// n, period, band_count, total_bandwidth, increment_to_next
std::string spectral_csv(const SpectralRun& run);
Json to_json(const SpectralRun& run);
SpectralRun spectral_from_json(const Json& j);
/// Band edges, increments and fit rounded to 12 digits; eigenvalue lists dropped.
SpectralRun normalized(const SpectralRun& run);

/// Dispatches on the "kind" field ("ihs" or "spectral").
std::string csv_from_json(const Json& j);

}  // namespace phull
