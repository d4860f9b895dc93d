#include "phull/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "phull/errors.hpp"

namespace phull {

std::string format12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", v);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format12(v));
}

namespace {

std::vector<std::string> render_all(const Alphabet& alpha, const auto& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(alpha.render(w));
  return out;
}

Json substitution_json(const Substitution& s) {
  return Json{{"alphabet", s.alphabet().symbols()}, {"rules", render_all(s.alphabet(), s.images())}};
}

Substitution substitution_from_json(const Json& j) {
  Alphabet alpha(j.at("alphabet").get<std::vector<std::string>>());
  std::vector<Word> images;
  for (const auto& r : j.at("rules")) images.push_back(alpha.parse(r.get<std::string>()));
  return Substitution(alpha, std::move(images));
}

// Reals go through round12 so the dumped text is the 12-digit value.
Json real(double v) {
  if (!std::isfinite(v)) return format12(v);
  return round12(v);
}

double real_from(const Json& j) {
  if (j.is_string()) return std::stod(j.get<std::string>());
  return j.get<double>();
}

Json fit_json(const std::optional<RateFit>& fit) {
  if (!fit) return nullptr;
  return Json{{"slope", real(fit->slope)}, {"intercept", real(fit->intercept)}, {"points", fit->points}};
}

std::optional<RateFit> fit_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return RateFit{real_from(j.at("slope")), real_from(j.at("intercept")), j.at("points").get<std::size_t>()};
}

void check_kind(const Json& j, const char* kind) {
  if (!j.contains("kind") || j.at("kind") != kind)
    throw InvalidArgument(fmt::format("expected a JSON report of kind '{}'", kind));
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

AnalysisReport analyze(const SubstitutionSpec& spec, unsigned horizon, double tol) {
  const auto& s = spec.substitution;
  const auto exponent = primitivity_exponent(s);
  if (!exponent) throw InvalidArgument("substitution '" + spec.name + "' is not primitive");
  const auto& alpha = s.alphabet();
  AnalysisReport r;
  r.name = spec.name;
  r.alphabet = alpha.symbols();
  r.rules = render_all(alpha, s.images());
  const auto m = matrix(s);
  r.matrix.assign(m.size(), std::vector<std::uint64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r.matrix[i][j] = m.at(i, j);
  r.primitivity_exponent = *exponent;
  const auto pf = perron(s, horizon, tol);
  r.theta = round12(pf.theta);
  r.c_hat = round12(pf.c_hat);
  r.c_check = round12(pf.c_check);
  r.horizon = pf.horizon;

  Language lang(s);
  const auto g = build_graph(lang);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    (g.legal(v) ? r.legal_two_words : r.illegal_two_words).push_back(alpha.render(g.word(v)));
  for (auto [u, w] : g.edges()) r.edges.emplace_back(alpha.render(g.word(u)), alpha.render(g.word(w)));
  for (const auto& comp : cyclic_components(g)) {
    std::vector<std::string> names;
    for (Vertex v : comp) names.push_back(alpha.render(g.word(v)));
    r.cyclic_components.push_back(std::move(names));
  }
  const auto sc = self_correcting(g);
  r.self_correcting = sc.self_correcting;
  for (Vertex v : sc.cycle) r.cycle.push_back(alpha.render(g.word(v)));
  return r;
}

std::string to_text(const AnalysisReport& r) {
  std::string out = "substitution: " + r.name + "\n";
  for (std::size_t i = 0; i < r.alphabet.size(); ++i) out += "  " + r.alphabet[i] + " -> " + r.rules[i] + "\n";
  out += "matrix:\n";
  for (const auto& row : r.matrix) {
    out += " ";
    for (auto x : row) out += fmt::format(" {}", x);
    out += "\n";
  }
  out += fmt::format("primitivity exponent: {}\n", r.primitivity_exponent);
  out += "PF eigenvalue: " + format12(r.theta) + "\n";
  out += fmt::format("growth constants (n <= {}): upper {}, lower {}\n", r.horizon, format12(r.c_hat),
                     format12(r.c_check));
  out += "legal 2-words: {" + join(r.legal_two_words, ", ") + "}\n";
  out += "illegal 2-words: {" + join(r.illegal_two_words, ", ") + "}\n";
  out += fmt::format("defect graph: {} edges\n", r.edges.size());
  for (const auto& [u, w] : r.edges) out += "  " + u + " -> " + w + "\n";
  out += fmt::format("cyclic components: {}\n", r.cyclic_components.size());
  for (const auto& c : r.cyclic_components) out += "  {" + join(c, ", ") + "}\n";
  out += std::string("self-correcting: ") + (r.self_correcting ? "true" : "false") + "\n";
  if (!r.cycle.empty()) out += "cycle: (" + join(r.cycle, ", ") + ")\n";
  return out;
}

Json to_json(const AnalysisReport& r) {
  Json edges = Json::array();
  for (const auto& [u, w] : r.edges) edges.push_back(Json::array({u, w}));
  return Json{{"kind", "analysis"},
              {"name", r.name},
              {"alphabet", r.alphabet},
              {"rules", r.rules},
              {"matrix", r.matrix},
              {"primitivity_exponent", r.primitivity_exponent},
              {"theta", real(r.theta)},
              {"c_hat", real(r.c_hat)},
              {"c_check", real(r.c_check)},
              {"horizon", r.horizon},
              {"legal_2words", r.legal_two_words},
              {"illegal_2words", r.illegal_two_words},
              {"edges", edges},
              {"cyclic_components", r.cyclic_components},
              {"self_correcting", r.self_correcting},
              {"cycle", r.cycle}};
}

AnalysisReport analysis_from_json(const Json& j) {
  check_kind(j, "analysis");
  AnalysisReport r;
  r.name = j.at("name").get<std::string>();
  r.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  r.rules = j.at("rules").get<std::vector<std::string>>();
  r.matrix = j.at("matrix").get<std::vector<std::vector<std::uint64_t>>>();
  r.primitivity_exponent = j.at("primitivity_exponent").get<unsigned>();
  r.theta = real_from(j.at("theta"));
  r.c_hat = real_from(j.at("c_hat"));
  r.c_check = real_from(j.at("c_check"));
  r.horizon = j.at("horizon").get<unsigned>();
  r.legal_two_words = j.at("legal_2words").get<std::vector<std::string>>();
  r.illegal_two_words = j.at("illegal_2words").get<std::vector<std::string>>();
  for (const auto& e : j.at("edges")) r.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  r.cyclic_components = j.at("cyclic_components").get<std::vector<std::vector<std::string>>>();
  r.self_correcting = j.at("self_correcting").get<bool>();
  r.cycle = j.at("cycle").get<std::vector<std::string>>();
  return r;
}

ClassificationReport classify_report(Language& language, const SeedCensus& census, const std::string& name) {
  const auto g = build_graph(language);
  const auto c = classify(g, census);
  const auto& alpha = language.alphabet();
  ClassificationReport r;
  r.name = name;
  r.verdict = c.verdict;
  r.legal_census = render_all(alpha, c.legal_census);
  r.illegal_census = render_all(alpha, c.illegal_census);
  for (Vertex v : c.path) r.path.push_back(alpha.render(g.word(v)));
  r.cycle_start = c.cycle_start;
  r.max_path_length = c.max_path_length;
  r.path_length_agrees = classify_by_path_length(g, census) == c.verdict;
  return r;
}

std::string to_text(const ClassificationReport& r) {
  std::string out = "substitution: " + r.name + "\n";
  out += std::string("verdict: ") + (r.verdict == Verdict::good ? "good" : "bad") + "\n";
  out += "legal census 2-words: {" + join(r.legal_census, ", ") + "}\n";
  out += "illegal census 2-words: {" + join(r.illegal_census, ", ") + "}\n";
  if (r.verdict == Verdict::bad) {
    std::vector<std::string> lead(r.path.begin(), r.path.begin() + static_cast<std::ptrdiff_t>(r.cycle_start));
    std::vector<std::string> cycle(r.path.begin() + static_cast<std::ptrdiff_t>(r.cycle_start), r.path.end());
    if (!lead.empty()) out += "path to cycle: " + join(lead, " -> ") + "\n";
    out += "cycle: " + join(cycle, " -> ") + "\n";
  } else {
    out += fmt::format("longest defect path: {}\n", r.max_path_length);
  }
  out += std::string("path-length test agrees: ") + (r.path_length_agrees ? "true" : "false") + "\n";
  return out;
}

Json to_json(const ClassificationReport& r) {
  return Json{{"kind", "classification"},
              {"name", r.name},
              {"verdict", r.verdict == Verdict::good ? "good" : "bad"},
              {"legal_census", r.legal_census},
              {"illegal_census", r.illegal_census},
              {"path", r.path},
              {"cycle_start", r.cycle_start},
              {"max_path_length", r.max_path_length},
              {"path_length_agrees", r.path_length_agrees}};
}

ClassificationReport classification_from_json(const Json& j) {
  check_kind(j, "classification");
  ClassificationReport r;
  r.name = j.at("name").get<std::string>();
  r.verdict = j.at("verdict") == "good" ? Verdict::good : Verdict::bad;
  r.legal_census = j.at("legal_census").get<std::vector<std::string>>();
  r.illegal_census = j.at("illegal_census").get<std::vector<std::string>>();
  r.path = j.at("path").get<std::vector<std::string>>();
  r.cycle_start = j.at("cycle_start").get<std::size_t>();
  r.max_path_length = j.at("max_path_length").get<std::size_t>();
  r.path_length_agrees = j.at("path_length_agrees").get<bool>();
  return r;
}

std::string ihs_csv(const IhsRun& run) {
  std::string out = "n,period_length,agree_length,rho,upper_bound,illegal_2word_count\n";
  for (const auto& s : run.steps)
    out += fmt::format("{},{},{},{},{},{}\n", s.n, s.period_length, s.distance.agree_length, s.distance.rho,
                       format12(s.distance.upper_bound), s.illegal_two_words);
  return out;
}

Json to_json(const IhsRun& run) {
  const auto& alpha = run.substitution.alphabet();
  Json steps = Json::array();
  for (const auto& s : run.steps) {
    const auto& d = s.distance;
    steps.push_back(Json{{"n", s.n},
                         {"period_length", s.period_length},
                         {"agree_length", d.agree_length},
                         {"rho", d.rho},
                         {"upper_bound", real(d.upper_bound)},
                         {"witness", d.witness ? Json(alpha.render(*d.witness)) : Json(nullptr)},
                         {"witness_side", d.witness_side == DistanceReport::Side::first ? "hull" : "substitution"},
                         {"truncated", d.truncated},
                         {"illegal_2word_count", s.illegal_two_words}});
  }
  return Json{{"kind", "ihs"},
              {"substitution", substitution_json(run.substitution)},
              {"seed", alpha.render(run.seed.period())},
              {"options",
               {{"max_steps", run.options.max_steps},
                {"max_length", run.options.max_length},
                {"period_budget", run.options.period_budget}}},
              {"truncated", run.truncated},
              {"steps", steps},
              {"rate_fit", fit_json(run.rate_fit)}};
}

IhsRun ihs_from_json(const Json& j) {
  check_kind(j, "ihs");
  auto s = substitution_from_json(j.at("substitution"));
  CyclicWord seed(s.alphabet().parse(j.at("seed").get<std::string>()));
  const auto& o = j.at("options");
  IhsOptions opts{o.at("max_steps").get<unsigned>(), o.at("max_length").get<std::size_t>(),
                  o.at("period_budget").get<std::size_t>()};
  IhsRun run{s, seed, opts, {}, fit_from(j.at("rate_fit")), j.at("truncated").get<bool>()};
  for (const auto& js : j.at("steps")) {
    IhsStep st;
    st.n = js.at("n").get<unsigned>();
    st.period_length = js.at("period_length").get<std::size_t>();
    st.illegal_two_words = js.at("illegal_2word_count").get<std::size_t>();
    auto& d = st.distance;
    d.agree_length = js.at("agree_length").get<std::size_t>();
    d.rho = js.at("rho").get<std::size_t>();
    d.upper_bound = real_from(js.at("upper_bound"));
    if (!js.at("witness").is_null()) d.witness = s.alphabet().parse(js.at("witness").get<std::string>());
    d.witness_side = js.at("witness_side") == "hull" ? DistanceReport::Side::first : DistanceReport::Side::second;
    d.max_length = opts.max_length;
    d.truncated = js.at("truncated").get<bool>();
    run.steps.push_back(std::move(st));
  }
  return run;
}

SpectralRun normalized(const SpectralRun& run) {
  SpectralRun out = run;
  for (auto& st : out.steps) {
    for (auto& i : st.bands.intervals) i = Interval{round12(i.lo), round12(i.hi)};
    st.bands.periodic.clear();
    st.bands.antiperiodic.clear();
    if (st.increment_to_next) st.increment_to_next = round12(*st.increment_to_next);
  }
  if (out.rate_fit) out.rate_fit = RateFit{round12(out.rate_fit->slope), round12(out.rate_fit->intercept),
                                           out.rate_fit->points};
  return out;
}

std::string spectral_csv(const SpectralRun& raw) {
  const auto run = normalized(raw);
  std::string out = "n,period,band_count,total_bandwidth,increment_to_next\n";
  for (const auto& s : run.steps)
    out += fmt::format("{},{},{},{},{}\n", s.n, s.bands.period, s.bands.intervals.size(),
                       format12(s.bands.total_bandwidth()),
                       s.increment_to_next ? format12(*s.increment_to_next) : std::string());
  return out;
}

Json to_json(const SpectralRun& raw) {
  const auto run = normalized(raw);
  const auto& alpha = run.substitution.alphabet();
  Json steps = Json::array();
  for (const auto& s : run.steps) {
    Json intervals = Json::array();
    for (const auto& i : s.bands.intervals) intervals.push_back(Json::array({i.lo, i.hi}));
    steps.push_back(Json{{"n", s.n},
                         {"period", s.bands.period},
                         {"band_count", s.bands.intervals.size()},
                         {"total_bandwidth", real(s.bands.total_bandwidth())},
                         {"increment_to_next", s.increment_to_next ? real(*s.increment_to_next) : Json(nullptr)},
                         {"intervals", intervals}});
  }
  Json potential = Json::array();
  for (double v : run.potential.values()) potential.push_back(v);
  return Json{{"kind", "spectral"},
              {"substitution", substitution_json(run.substitution)},
              {"seed", alpha.render(run.seed.period())},
              {"potential", potential},
              {"options",
               {{"max_steps", run.options.max_steps},
                {"tol", run.options.tol},
                {"period_cap", run.options.period_cap}}},
              {"truncated", run.truncated},
              {"steps", steps},
              {"rate_fit", fit_json(run.rate_fit)}};
}

SpectralRun spectral_from_json(const Json& j) {
  check_kind(j, "spectral");
  auto s = substitution_from_json(j.at("substitution"));
  CyclicWord seed(s.alphabet().parse(j.at("seed").get<std::string>()));
  PotentialMap potential(j.at("potential").get<std::vector<double>>());
  const auto& o = j.at("options");
  SpectralOptions opts{o.at("max_steps").get<unsigned>(), o.at("tol").get<double>(),
                       o.at("period_cap").get<std::size_t>()};
  SpectralRun run{s, seed, potential, opts, {}, fit_from(j.at("rate_fit")), j.at("truncated").get<bool>()};
  for (const auto& js : j.at("steps")) {
    SpectralStep st;
    st.n = js.at("n").get<unsigned>();
    st.bands.period = js.at("period").get<std::size_t>();
    for (const auto& i : js.at("intervals")) st.bands.intervals.push_back(Interval{i.at(0), i.at(1)});
    if (!js.at("increment_to_next").is_null()) st.increment_to_next = real_from(js.at("increment_to_next"));
    run.steps.push_back(std::move(st));
  }
  return run;
}

std::string csv_from_json(const Json& j) {
  if (j.contains("kind") && j.at("kind") == "ihs") return ihs_csv(ihs_from_json(j));
  if (j.contains("kind") && j.at("kind") == "spectral") return spectral_csv(spectral_from_json(j));
  throw InvalidArgument("JSON report has no CSV form (kind must be 'ihs' or 'spectral')");
}

}  // namespace phull
