// normality_lab: command-line front end for the normality library.
//
//   expand        bracket-notation expansion of a source in a base
//   stats         digit / block counts and exact deviations for a prefix
//   battery       r^m * alpha in base r^n for all m < n <= N
//   verify-lemma  fourth-moment bound sweep plus operator identities
//   measure       exact M_b(n, eps) measures, bounds, tails
//   verify-paper  the full anchored checklist in one run
//
// Exit codes: 0 success, 1 a requested check failed, 2 input or source
// error; argument errors use CLI11's codes (nonzero).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "normality/normality.hpp"

namespace {

using namespace normality;
using json = nlohmann::ordered_json;

enum class Format { text, json, csv };

struct RunConfig {
  std::string format_name;
  std::string output_path;
  std::string source;
  std::optional<std::uint64_t> base;
  std::size_t digits = 0;
  std::size_t n = 0;
  std::optional<Digit> digit;
  std::string word;
  unsigned max_power = 1;
  std::uint64_t n_max = 200;
  std::string epsilon;
  bool oracle = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::optional<std::uint64_t> tail;
  std::string target = "1/100";
  std::optional<std::uint64_t> sweep;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = kDefaultMonteCarloSeed;
  std::string pi_file = "pi_base10.digits";
  std::string perturb_closed_form = "0";
};

/// A check ran and did not hold.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SourceOptions source_options() {
  SourceOptions opts;
#ifdef NORMALITY_LAB_DEFAULT_ASSETS
  opts.assets_dir = std::filesystem::path(NORMALITY_LAB_DEFAULT_ASSETS);
#endif
  return opts;
}

Format resolve_format(const RunConfig& cfg, Format fallback) {
  if (cfg.format_name.empty()) return fallback;
  if (cfg.format_name == "json") return Format::json;
  if (cfg.format_name == "csv") return Format::csv;
  return Format::text;
}

/// Base requested on the command line, or the natural base of the source
/// (header base for digit files, 10 otherwise).
Base resolve_base(const RunConfig& cfg, const SourceSpec& spec) {
  if (cfg.base) return Base(*cfg.base);
  if (const auto* f = std::get_if<FileSpec>(&spec)) return open_digit_file(resolve_digit_file(f->path, source_options())).base;
  return Base(10);
}

void cmd_expand(const RunConfig& cfg, std::ostream& out) {
  const SourceSpec spec = parse_source_spec(cfg.source);
  const Base base = resolve_base(cfg, spec);
  const DigitExpansion e = open_expansion(spec, base, cfg.digits, source_options());
  const std::string text = format_bracket(e, cfg.digits);
  if (resolve_format(cfg, Format::text) != Format::json) {
    out << text << '\n';
    return;
  }
  json j;
  j["source"] = to_string(spec);
  j["base"] = base.radix();
  j["expansion"] = text;
  if (e.leading_index) j["d"] = *e.leading_index;
  if (e.period) j["period"] = {{"preperiod", e.period->preperiod}, {"length", e.period->length}};
  out << j.dump(2) << '\n';
}

void cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const SourceSpec spec = parse_source_spec(cfg.source);
  const Base base = resolve_base(cfg, spec);
  if (cfg.digit && !base.contains(*cfg.digit))
    throw std::invalid_argument("digit " + std::to_string(*cfg.digit) + " is not in base " + std::to_string(base.radix()));
  const DigitTee tee(open_stream(spec, base, source_options()));
  DigitStream prefix = tee.fork();
  const NormalityReport report = simple_normality_report(prefix, cfg.n);

  json j;
  j["source"] = to_string(spec);
  const json body = to_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  if (cfg.digit) j["digit"] = {{"digit", *cfg.digit}, {"count", report.counts[*cfg.digit]}};
  if (!cfg.word.empty()) {
    const Word w(base, parse_digit_literal(cfg.word, base));
    DigitStream s = tee.fork();
    j["word"] = {{"word", cfg.word}, {"count", count_block(s, w, cfg.n)}};
  }
  if (resolve_format(cfg, Format::json) == Format::text) {
    out << "base " << base.radix() << ", n = " << cfg.n << ", max deviation " << report.max_deviation << " (~"
        << report.max_deviation.to_decimal(12) << ")\n";
    for (std::size_t b = 0; b < report.counts.size(); ++b)
      out << "  digit " << b << ": " << report.counts[b] << "  deviation " << report.deviations[b] << '\n';
    if (cfg.digit) out << "count of digit " << *cfg.digit << ": " << report.counts[*cfg.digit] << '\n';
    if (j.contains("word")) out << "count of word " << cfg.word << ": " << j["word"]["count"] << '\n';
    return;
  }
  out << j.dump(2) << '\n';
}

void cmd_battery(const RunConfig& cfg, std::ostream& out) {
  const SourceSpec spec = parse_source_spec(cfg.source);
  const Base base = resolve_base(cfg, spec);
  const auto cells = normality_battery(DigitTee(open_stream(spec, base, source_options())), cfg.max_power, cfg.n);
  if (resolve_format(cfg, Format::csv) == Format::json) {
    json rows = json::array();
    for (const auto& cell : cells) {
      json row;
      row["m"] = cell.m;
      row["n"] = cell.n;
      row["report"] = to_json(cell.report);
      rows.push_back(std::move(row));
    }
    out << rows.dump(2) << '\n';
    return;
  }
  write_battery_csv(out, cells);
}

void cmd_verify_lemma(const RunConfig& cfg, std::ostream& out) {
  const Base r(*cfg.base);
  const LemmaConstants k = derive_constants(r);
  const std::vector<MainLemmaRow> rows = check_main_lemma(r, cfg.n_max);

  // operator identities for s = r - 1, k = 0..4, and the closed form
  std::vector<std::string> failures;
  std::size_t identity_checks = 0;
  for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
    for (unsigned power = 0; power <= 4; ++power, ++identity_checks)
      if (!verify_binom_identity(n, r.radix() - 1, power))
        failures.push_back("binom identity n=" + std::to_string(n) + " k=" + std::to_string(power));
    if (eval_f4_specialized(n, r) != closed_form_f4(n, r))
      failures.push_back("closed form n=" + std::to_string(n) + " k=4");
  }
  for (const auto& row : rows)
    if (!row.holds) failures.push_back("main lemma bound n=" + std::to_string(row.n));

  const Format format = resolve_format(cfg, Format::text);
  if (format == Format::json) {
    json j;
    j["r"] = r.radix();
    j["C"] = k.C.to_string();
    j["D"] = k.D.to_string();
    j["identity_checks"] = identity_checks;
    j["failures"] = failures;
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"n", row.n}, {"sum", row.sum.to_string()}, {"bound", row.bound.to_string()},
                     {"ratio_decimal", row.ratio.to_decimal(12)}, {"holds", row.holds}});
    j["rows"] = std::move(arr);
    out << j.dump(2) << '\n';
  } else {
    if (format == Format::text) {
      out << "C = " << k.C << "\nD = " << k.D << '\n';
      out << "operator identity checks: " << identity_checks << ", closed-form checks: " << cfg.n_max
          << ", failures: " << failures.size() << "\n\n";
    }
    write_lemma_csv(out, rows);
  }
  if (!failures.empty()) {
    std::string msg = "fourth-moment checks failed:";
    for (const auto& f : failures) msg += "\n  " + f;
    throw CheckFailed(msg);
  }
}

void cmd_measure(const RunConfig& cfg, std::ostream& out) {
  const Base r(*cfg.base);
  const Digit b = cfg.digit.value_or(0);
  if (!r.contains(b)) throw std::invalid_argument("digit " + std::to_string(b) + " is not in base " + std::to_string(r.radix()));
  const ExactRational eps = ExactRational::parse(cfg.epsilon);
  if (cfg.n == 0 && !cfg.sweep && !cfg.tail) throw std::invalid_argument("measure needs -n, --sweep or --tail");
  const Format format = resolve_format(cfg, cfg.sweep ? Format::csv : Format::json);
  bool ok = true;

  json j = json::object();
  if (cfg.n != 0) {
    const DeviationSetSpec spec(r, b, cfg.n, eps);
    const MeasureReport report = deviation_set_measure(spec);
    ok = ok && report.exact_measure <= report.bound;
    j = to_json(report);
    if (cfg.oracle) {
      const ExactRational oracle = deviation_set_measure_bruteforce(spec, cfg.budget);
      j["oracle_measure"] = oracle.to_string();
      j["oracle_agrees"] = oracle == report.exact_measure;
      ok = ok && oracle == report.exact_measure;
    }
    if (cfg.samples) {
      const ExactRational fraction = monte_carlo_deviation(spec, *cfg.samples, cfg.seed);
      j["monte_carlo_samples"] = *cfg.samples;
      j["monte_carlo_seed"] = cfg.seed;
      j["monte_carlo_fraction"] = fraction.to_string();
      j["monte_carlo_error_decimal"] = abs(fraction - report.exact_measure).to_decimal(12);
    }
  }
  if (cfg.tail) {
    const ExactRational target = ExactRational::parse(cfg.target);
    j["epsilon"] = eps.to_string();
    j["tail_m"] = *cfg.tail;
    j["tail_bound"] = tail_measure_bound(r, eps, *cfg.tail).to_string();
    j["target"] = target.to_string();
    j["null_witness_m"] = null_witness_m(r, eps, target).str();
  }

  if (cfg.sweep) {
    if (format == Format::json) {
      json rows = json::array();
      for (std::uint64_t n = 1; n <= *cfg.sweep; ++n) {
        const MeasureReport report = deviation_set_measure(DeviationSetSpec(r, b, n, eps));
        ok = ok && report.exact_measure <= report.bound;
        rows.push_back(to_json(report));
      }
      j["sweep"] = std::move(rows);
    } else {
      write_measure_csv_header(out);
      for (std::uint64_t n = 1; n <= *cfg.sweep; ++n) {
        const MeasureReport report = deviation_set_measure(DeviationSetSpec(r, b, n, eps));
        ok = ok && report.exact_measure <= report.bound;
        write_measure_csv_row(out, report);
      }
    }
  }

  if (format == Format::json) {
    if (!j.empty()) out << j.dump(2) << '\n';
  } else if (format == Format::text) {
    for (auto& [key, value] : j.items()) out << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  } else if (!cfg.sweep) {
    // csv without a sweep: single report as one row
    if (cfg.n != 0) {
      write_measure_csv_header(out);
      write_measure_csv_row(out, deviation_set_measure(DeviationSetSpec(r, b, cfg.n, eps)));
    }
    if (cfg.tail) out << "tail_m,tail_bound,target,null_witness_m\n" << *cfg.tail << ',' << j["tail_bound"].get<std::string>()
                      << ',' << j["target"].get<std::string>() << ',' << j["null_witness_m"].get<std::string>() << '\n';
  }
  if (!ok) throw CheckFailed("measure exceeded its bound or disagreed with the enumeration oracle");
}

void cmd_verify_paper(const RunConfig& cfg, std::ostream& out) {
  PaperCheckOptions options;
  const std::filesystem::path pi = resolve_digit_file(cfg.pi_file, source_options());
  if (std::filesystem::exists(pi)) {
    options.pi_file = pi;
  } else {
    std::cerr << "warning: pi digit file '" << cfg.pi_file << "' not found; pi checks skipped\n";
  }
  options.closed_form_offset = ExactRational::parse(cfg.perturb_closed_form);
  const std::vector<CheckResult> results = run_paper_checks(options);

  if (resolve_format(cfg, Format::text) == Format::json) {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back({{"anchor", r.anchor}, {"check", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : results)
      out << '[' << to_string(r.status) << "] " << r.anchor << ": " << r.name << " (" << r.detail << ")\n";
  }
  if (!all_passed(results)) {
    std::string msg = "failed checks:";
    for (const auto& r : results)
      if (r.status == CheckStatus::fail) msg += " [" + r.anchor + "] " + r.name + ";";
    throw CheckFailed(msg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact digit statistics, normality batteries and measure bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--format", cfg.format_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("-o,--output", cfg.output_path, "Write output to this file instead of stdout");

  const auto base_check = CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max());

  auto* expand = app.add_subcommand("expand", "Print the expansion of a source in bracket notation");
  expand->add_option("--source", cfg.source, "Source spec, e.g. rational:1/3")->required();
  expand->add_option("--base", cfg.base, "Base r >= 2")->check(base_check);
  expand->add_option("--digits", cfg.digits, "Fractional digits to print")->required()->check(CLI::PositiveNumber);

  auto* stats = app.add_subcommand("stats", "Digit counts and exact deviations over a prefix");
  stats->add_option("--source", cfg.source, "Source spec")->required();
  stats->add_option("--base", cfg.base, "Base r >= 2 (default: file header base, else 10)")->check(base_check);
  stats->add_option("-n", cfg.n, "Prefix length")->required()->check(CLI::PositiveNumber);
  stats->add_option("--digit", cfg.digit, "Report the count of this digit");
  stats->add_option("--word", cfg.word, "Also count occurrences of this word (overlapping)");

  auto* battery = app.add_subcommand("battery", "Simple-normality battery of r^m * alpha in base r^n, m < n <= N");
  battery->add_option("--source", cfg.source, "Source spec")->required();
  battery->add_option("--base", cfg.base, "Base r >= 2")->check(base_check);
  battery->add_option("-N,--max-power", cfg.max_power, "Largest power n")->check(CLI::PositiveNumber);
  battery->add_option("-n", cfg.n, "Digits of base r^n per cell")->required()->check(CLI::PositiveNumber);

  auto* lemma = app.add_subcommand("verify-lemma", "Check the fourth-moment bound and its identities");
  lemma->add_option("--base", cfg.base, "Base r >= 2")->required()->check(base_check);
  lemma->add_option("--n-max", cfg.n_max, "Largest n in the sweep")->check(CLI::PositiveNumber);

  auto* measure = app.add_subcommand("measure", "Exact measure of M_b(n, eps) and its bounds");
  measure->add_option("--base", cfg.base, "Base r >= 2")->required()->check(base_check);
  measure->add_option("--digit", cfg.digit, "Digit b (default 0)");
  measure->add_option("-n", cfg.n, "Prefix length")->check(CLI::PositiveNumber);
  measure->add_option("--epsilon", cfg.epsilon, "Threshold as a/b")->required();
  measure->add_flag("--oracle", cfg.oracle, "Compare with full enumeration");
  measure->add_option("--budget", cfg.budget, "Enumeration budget (digit strings)")->check(CLI::PositiveNumber);
  measure->add_option("--tail", cfg.tail, "Print the tail bound for S_b(m, eps) at this m")->check(CLI::PositiveNumber);
  measure->add_option("--target", cfg.target, "Target measure for the null-set witness");
  measure->add_option("--sweep", cfg.sweep, "CSV rows for n = 1..N")->check(CLI::PositiveNumber);
  measure->add_option("--samples", cfg.samples, "Also estimate the measure from this many random strings")
      ->check(CLI::PositiveNumber);
  measure->add_option("--seed", cfg.seed, "Seed for --samples");

  auto* paper = app.add_subcommand("verify-paper", "Run the full anchored checklist");
  paper->add_option("--pi-file", cfg.pi_file, "Base-10 digit file of pi");
  paper->add_option("--perturb-closed-form", cfg.perturb_closed_form, "Offset added to the closed form (failure-path testing)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  std::ofstream file;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) {
      std::cerr << "error: cannot open output file " << cfg.output_path << '\n';
      return 2;
    }
  }
  std::ostream& out = cfg.output_path.empty() ? std::cout : file;

  try {
    if (expand->parsed()) cmd_expand(cfg, out);
    if (stats->parsed()) cmd_stats(cfg, out);
    if (battery->parsed()) cmd_battery(cfg, out);
    if (lemma->parsed()) cmd_verify_lemma(cfg, out);
    if (measure->parsed()) cmd_measure(cfg, out);
    if (paper->parsed()) cmd_verify_paper(cfg, out);
  } catch (const CheckFailed& e) {
    out.flush();
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const InsufficientDigits& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const EnumerationBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
