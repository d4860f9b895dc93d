// phull: substitution subshifts, defect graphs, iterative hull sequences and
// periodic-approximant spectra from a spec file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "phull/errors.hpp"
#include "phull/report.hpp"
#include "phull/simd/kernels.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 2, kBad = 3, kResource = 4, kNumeric = 5 };

// "-" means stdout.
void emit(const std::string& target, const std::string& content) {
  if (target == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw phull::InvalidArgument("cannot write " + target);
  out << content;
}

std::string dump(const phull::Json& j) { return j.dump(2) + "\n"; }

phull::CyclicWord seed_for(const phull::SubstitutionSpec& spec, const std::string& seed_flag) {
  if (!seed_flag.empty()) {
    try {
      return phull::CyclicWord(spec.alphabet().parse(seed_flag));
    } catch (const phull::InvalidArgument& e) {
      throw phull::InvalidArgument(std::string("--seed: ") + e.what());
    }
  }
  if (!spec.seed) throw phull::InvalidArgument("no seed: pass --seed or add 'seed:' to the spec file");
  return *spec.seed;
}

phull::WordSet parse_census(const phull::Alphabet& alpha, const std::string& text) {
  phull::WordSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    const auto w = alpha.parse(item);
    if (w.size() != 2) throw phull::InvalidArgument("--census entries must be 2-words, got '" + item + "'");
    out.insert(w);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative hull sequences of substitution subshifts"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string simd;
  app.add_option("--simd", simd, "Kernel variant: scalar or avx2 (default: best available)")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  std::string spec_path, json_out, csv_out, dot_out, seed_flag, census_flag, potential_flag;
  unsigned steps = 10;
  std::size_t max_length = 41;
  std::size_t budget = 0;
  double tol = 0;

  auto* analyze = app.add_subcommand("analyze", "Matrix, PF data, legal 2-words, defect graph, self-correction");
  analyze->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--dot", dot_out, "Write the defect graph as Graphviz");
  analyze->add_option("--json", json_out, "Write the report as JSON ('-' for stdout)");
  analyze->add_option("--tol", tol, "PF eigenvalue tolerance")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "Good/bad verdict for a seed (exit 3 when bad)");
  classify->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  auto* seed_opt = classify->add_option("--seed", seed_flag, "Seed period word (default: spec seed)");
  classify->add_option("--census", census_flag, "Comma-separated 2-words instead of a seed")->excludes(seed_opt);
  classify->add_option("--json", json_out, "Write the report as JSON ('-' for stdout)");
  classify->add_option("--budget", budget, "Word budget")->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "IHS distance bounds per step");
  simulate->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--seed", seed_flag, "Seed period word (default: spec seed)");
  simulate->add_option("--n", steps, "Largest step")->capture_default_str();
  simulate->add_option("--L", max_length, "Odd dictionary scan limit")->capture_default_str();
  simulate->add_option("--budget", budget, "Word budget")->check(CLI::PositiveNumber);
  simulate->add_option("--csv", csv_out, "Write CSV ('-' for stdout, the default)");
  simulate->add_option("--json", json_out, "Write JSON ('-' for stdout)");

  auto* spectrum = app.add_subcommand("spectrum", "Band spectra and Cauchy increments per step");
  spectrum->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--seed", seed_flag, "Seed period word (default: spec seed)");
  spectrum->add_option("--n", steps, "Largest step")->capture_default_str();
  spectrum->add_option("--tol", tol, "Eigensolver tolerance")->check(CLI::PositiveNumber);
  spectrum->add_option("--budget", budget, "Period cap")->check(CLI::PositiveNumber);
  spectrum->add_option("--potential", potential_flag, "KEY=VAL,... (default: spec potential)");
  spectrum->add_option("--csv", csv_out, "Write CSV ('-' for stdout, the default)");
  spectrum->add_option("--json", json_out, "Write JSON ('-' for stdout)");

  std::string run_path;
  auto* render = app.add_subcommand("render", "Re-emit the CSV of a simulate/spectrum JSON file");
  render->add_option("run", run_path, "JSON file")->required()->check(CLI::ExistingFile);
  render->add_option("--csv", csv_out, "Write CSV ('-' for stdout, the default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!simd.empty()) phull::simd::set_active(simd == "avx2" ? phull::simd::Isa::avx2 : phull::simd::Isa::scalar);

    if (*render) {
      std::ifstream in(run_path, std::ios::binary);
      const auto j = phull::Json::parse(in);
      emit(csv_out.empty() ? "-" : csv_out, phull::csv_from_json(j));
      return kOk;
    }

    const auto spec = phull::load_spec(spec_path);
    const std::size_t word_budget = budget ? budget : phull::kDefaultWordBudget;

    if (*analyze) {
      const auto report = phull::analyze(spec, phull::kDefaultPerronHorizon, tol > 0 ? tol : phull::kDefaultPerronTolerance);
      std::cout << phull::to_text(report);
      if (!json_out.empty()) emit(json_out, dump(phull::to_json(report)));
      if (!dot_out.empty()) emit(dot_out, phull::to_dot(phull::build_graph(spec.substitution), spec.name));
      return kOk;
    }

    if (!phull::is_primitive(spec.substitution))
      throw phull::InvalidArgument("substitution '" + spec.name + "' is not primitive");

    if (*classify) {
      phull::Language lang(spec.substitution, word_budget);
      const auto census = census_flag.empty()
                              ? phull::SeedCensus::from_seed(seed_for(spec, seed_flag))
                              : phull::SeedCensus::from_words(parse_census(spec.alphabet(), census_flag));
      const auto report = phull::classify_report(lang, census, spec.name);
      std::cout << phull::to_text(report);
      if (!json_out.empty()) emit(json_out, dump(phull::to_json(report)));
      return report.verdict == phull::Verdict::good ? kOk : kBad;
    }

    if (*simulate) {
      phull::Language lang(spec.substitution, word_budget);
      phull::IhsOptions opts;
      opts.max_steps = steps;
      opts.max_length = max_length;
      const auto run = phull::run(lang, seed_for(spec, seed_flag), opts);
      if (!json_out.empty()) emit(json_out, dump(phull::to_json(run)));
      if (!csv_out.empty() || json_out.empty()) emit(csv_out.empty() ? "-" : csv_out, phull::ihs_csv(run));
      if (run.truncated) {
        std::cerr << "resource budget exceeded: the run stopped early\n";
        return kResource;
      }
      return kOk;
    }

    if (*spectrum) {
      std::optional<phull::PotentialMap> potential = spec.potential;
      if (!potential_flag.empty()) potential = phull::parse_potential_list(spec.alphabet(), potential_flag);
      if (!potential) throw phull::InvalidArgument("no potential: pass --potential or add a [potential] section");
      phull::SpectralOptions opts;
      opts.max_steps = steps;
      if (tol > 0) opts.tol = tol;
      if (budget) opts.period_cap = budget;
      const auto run = phull::spectral_run(spec.substitution, seed_for(spec, seed_flag), *potential, opts);
      if (!json_out.empty()) emit(json_out, dump(phull::to_json(run)));
      if (!csv_out.empty() || json_out.empty()) emit(csv_out.empty() ? "-" : csv_out, phull::spectral_csv(run));
      if (run.truncated) {
        std::cerr << "resource budget exceeded: the period cap stopped the run early\n";
        return kResource;
      }
      return kOk;
    }
  } catch (const phull::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const phull::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const phull::ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const phull::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const phull::Json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
