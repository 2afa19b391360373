/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// pstforge command-line front end. Talks to the library only through the C
// API in pstforge.h.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "pstforge/pstforge.h"

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kIo = 1, kInadmissible = 2, kReconstruction = 3, kNotPst = 4, kSurgery = 5 };

struct Failure {
  int exit;
};

bool g_quiet = false;

void log_line(const std::string& s) {
  if (!g_quiet) std::cerr << s << '\n';
}

int exit_for(pst_status s) {
  switch (s) {
    case PST_E_NON_INCREASING:
    case PST_E_NOT_ADMISSIBLE:
    case PST_E_IRRATIONAL_SPACING:
    case PST_E_NON_POSITIVE_SCALE:
      return kInadmissible;
    case PST_E_INVALID_MEASURE:
    case PST_E_OVERFLOW:
    case PST_E_DEGENERATE_LEADING:
    case PST_E_RESIDUE_DEGREE:
    case PST_E_NON_POSITIVE_U:
    case PST_E_NON_POSITIVE_NORM:
    case PST_E_ALGORITHM_DISAGREEMENT:
    case PST_E_CONVERGENCE:
      return kReconstruction;
    case PST_E_INVALID_PLAN:
    case PST_E_INTERIOR_SINGLE_REMOVAL:
    case PST_E_EMPTY_RESULT:
    case PST_E_ZERO_DENOMINATOR:
    case PST_E_NON_ZERO_FIELD:
      return kSurgery;
    default:
      return kIo;
  }
}

// Prints the library's error payload to stderr and unwinds to main.
void check(pst_status s) {
  if (s == PST_OK) return;
  char* text = nullptr;
  if (pst_last_error_json(&text) == PST_OK) {
    std::cerr << text << '\n';
    pst_string_free(text);
  } else {
    std::cerr << json{{"error", pst_status_name(s)}, {"message", pst_last_error()}}.dump() << '\n';
  }
  throw Failure{exit_for(s)};
}

[[noreturn]] void fail(int exit, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  throw Failure{exit};
}

struct SpectrumDeleter {
  void operator()(pst_spectrum* s) const { pst_spectrum_free(s); }
};
struct ChainDeleter {
  void operator()(pst_chain* c) const { pst_chain_free(c); }
};
using SpectrumPtr = std::unique_ptr<pst_spectrum, SpectrumDeleter>;
using ChainPtr = std::unique_ptr<pst_chain, ChainDeleter>;

std::string take(char* s) {
  std::string out(s);
  pst_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kIo, "IoError", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kIo, "IoError", "cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) fail(kIo, "IoError", "write failed for " + path);
}

std::optional<pst_mode> parse_mode(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "exact") return PST_MODE_EXACT;
  if (text == "float") return PST_MODE_FLOAT;
  fail(kIo, "InvalidArgument", "unknown mode '" + text + "' (expected exact|float)");
}

// --mode beats PSTFORGE_MODE, which beats the fallback.
std::optional<pst_mode> resolve_mode(const std::string& flag) {
  if (auto m = parse_mode(flag)) return m;
  if (const char* env = std::getenv("PSTFORGE_MODE"); env && *env) return parse_mode(env);
  return std::nullopt;
}

pst_family parse_family(const std::string& text) {
  if (text == "uniform") return PST_FAMILY_UNIFORM;
  if (text == "hyperbolic") return PST_FAMILY_HYPERBOLIC;
  if (text == "gapped") return PST_FAMILY_GAPPED;
  fail(kIo, "BadParameters", "unknown family '" + text + "' (expected uniform|hyperbolic|gapped)");
}

pst_algorithm parse_algorithm(const std::string& text) {
  if (text.empty()) return PST_ALGO_DEFAULT;
  if (text == "euclid") return PST_ALGO_EUCLID;
  if (text == "stieltjes") return PST_ALGO_STIELTJES;
  if (text == "both") return PST_ALGO_BOTH;
  fail(kIo, "InvalidArgument", "unknown algorithm '" + text + "' (expected euclid|stieltjes|both)");
}

SpectrumPtr load_spectrum(const std::string& path) {
  pst_spectrum* raw = nullptr;
  check(pst_spectrum_from_json(read_text(path).c_str(), -1, &raw));
  return SpectrumPtr(raw);
}

ChainPtr load_chain(const std::string& path) {
  pst_chain* raw = nullptr;
  check(pst_chain_from_json(read_text(path).c_str(), &raw));
  return ChainPtr(raw);
}

pst_report verify_chain(const pst_chain* c) {
  pst_report r{};
  check(pst_chain_verify(c, &r));
  return r;
}

json report_json(const pst_report& r) {
  char* text = nullptr;
  check(pst_report_to_json(&r, &text));
  return json::parse(take(text));
}

std::string chain_text(const pst_chain* c, const std::string& format) {
  char* text = nullptr;
  if (format == "csv") {
    check(pst_chain_to_csv(c, &text));
  } else {
    check(pst_chain_to_json(c, &text));
  }
  return take(text);
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Options {
  std::string family = "uniform", mode, algorithm, format = "json";
  int n = 0, k = 0, l = 0;
  std::string in, out, spectrum, plan, curve;
  std::size_t samples = 512;
  unsigned long long seed = 1;
  int count = 200;
};

int spectrum_gen(const Options& o) {
  pst_spectrum* raw = nullptr;
  const pst_mode mode = resolve_mode(o.mode).value_or(PST_MODE_EXACT);
  check(pst_spectrum_generate(parse_family(o.family), o.n, o.k, o.l, mode, &raw));
  SpectrumPtr s(raw);
  char* text = nullptr;
  check(pst_spectrum_to_json(s.get(), &text));
  emit(o.out, take(text));
  return kOk;
}

int spectrum_check(const Options& o) {
  auto s = load_spectrum(o.in);
  char* text = nullptr;
  check(pst_spectrum_check(s.get(), &text));
  emit(o.out, take(text));
  return kOk;
}

int chain_build(const Options& o) {
  auto s = load_spectrum(o.spectrum);
  if (auto mode = resolve_mode(o.mode)) {
    pst_mode current{};
    check(pst_spectrum_mode(s.get(), &current));
    if (current != *mode) {
      pst_spectrum* converted = nullptr;
      check(pst_spectrum_convert(s.get(), *mode, &converted));
      s.reset(converted);
    }
  }
  const pst_algorithm algo = parse_algorithm(o.algorithm);
  pst_chain* raw = nullptr;
  double discrepancy = 0;
  check(pst_chain_build(s.get(), algo, &raw, &discrepancy));
  ChainPtr c(raw);
  double persym = 0;
  check(pst_chain_persymmetry(c.get(), &persym));
  log_line("persymmetry residual: " + format_number(persym));
  if (algo == PST_ALGO_BOTH) log_line("euclid/stieltjes discrepancy: " + format_number(discrepancy));
  emit(o.out, chain_text(c.get(), o.format));
  return kOk;
}

int chain_verify(const Options& o) {
  auto c = load_chain(o.in);
  const auto r = verify_chain(c.get());
  emit(o.out, report_json(r).dump(2));
  if (!o.curve.empty()) {
    char* text = nullptr;
    check(pst_chain_curve_csv(c.get(), o.samples, &text));
    emit(o.curve, take(text));
  }
  return r.is_pst ? kOk : kNotPst;
}

int chain_surgery(const Options& o) {
  auto c = load_chain(o.in);
  const std::string plan = read_text(o.plan);
  pst_chain* raw = nullptr;
  double discrepancy = 0;
  check(pst_chain_surgery(c.get(), plan.c_str(), &raw, &discrepancy));
  ChainPtr shortened(raw);
  const auto r = verify_chain(shortened.get());
  emit(o.out, chain_text(shortened.get(), o.format));
  log_line("closed form vs re-reconstruction discrepancy: " + format_number(discrepancy));
  log_line(json{{"discrepancy", discrepancy}, {"report", report_json(r)}}.dump());
  return r.is_pst ? kOk : kNotPst;
}

void print_criterion(const char* name, int passed, const char* detail, void*) {
  std::printf("%-4s %-32s %s\n", passed ? "PASS" : "FAIL", name, detail);
  std::fflush(stdout);
}

int selftest(const Options&) {
  int failures = 0;
  check(pst_selftest(print_criterion, nullptr, &failures));
  std::printf("%d failed\n", failures);
  return failures == 0 ? kOk : kNotPst;
}

// Random build -> verify runs over the generated families.
int fuzz(const Options& o) {
  std::mt19937_64 rng(o.seed);
  int failures = 0;
  json failed = json::array();
  for (int i = 0; i < o.count; ++i) {
    const int kind = static_cast<int>(rng() % 3);
    int n = static_cast<int>(rng() % 17), k = 0, l = 0;
    pst_family family = PST_FAMILY_UNIFORM;
    if (kind == 1) {
      family = PST_FAMILY_HYPERBOLIC;
      n = static_cast<int>(rng() % 11);
      k = n % 2 == 0 ? 4 + 2 * static_cast<int>(rng() % 3) : 6 + 4 * static_cast<int>(rng() % 2);
    } else if (kind == 2) {
      family = PST_FAMILY_GAPPED;
      n = 3 + 2 * static_cast<int>(rng() % 7);
      l = static_cast<int>(rng() % ((n - 1) / 2));
    }
    const pst_mode mode = rng() % 2 ? PST_MODE_FLOAT : PST_MODE_EXACT;
    const pst_algorithm algo = static_cast<pst_algorithm>(rng() % 4);
    json item{{"family", family}, {"n", n}, {"k", k}, {"l", l}, {"mode", mode}, {"algorithm", algo}};

    pst_spectrum* s = nullptr;
    pst_chain* c = nullptr;
    pst_report r{};
    pst_status st = pst_spectrum_generate(family, n, k, l, mode, &s);
    if (st == PST_OK) st = pst_chain_build(s, algo, &c, nullptr);
    if (st == PST_OK) st = pst_chain_verify(c, &r);
    if (st != PST_OK || !r.is_pst) {
      ++failures;
      item["status"] = pst_status_name(st);
      item["fidelity"] = r.fidelity;
      failed.push_back(item);
    }
    pst_chain_free(c);
    pst_spectrum_free(s);
  }
  std::cout << json{{"seed", o.seed}, {"count", o.count}, {"failures", failures}, {"failed", failed}}.dump(2)
            << '\n';
  return failures == 0 ? kOk : kNotPst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect state transfer chains from admissible spectra"};
  app.require_subcommand(1);
  app.add_flag("-q,--quiet", g_quiet, "Suppress log lines on stderr");
  Options o;
  int (*action)(const Options&) = nullptr;

  auto* spectrum = app.add_subcommand("spectrum", "Generate or check spectra");
  spectrum->require_subcommand(1);
  auto* gen = spectrum->add_subcommand("gen", "Generate a family spectrum");
  gen->add_option("--family", o.family, "uniform|hyperbolic|gapped")->required();
  gen->add_option("--n", o.n, "Chain length parameter N")->required();
  gen->add_option("--k", o.k, "Hyperbolic parameter K");
  gen->add_option("--l", o.l, "Gap parameter L");
  gen->add_option("--mode", o.mode, "exact|float");
  gen->add_option("--out", o.out, "Output file (stdout when omitted)");
  gen->callback([&] { action = spectrum_gen; });

  auto* chk = spectrum->add_subcommand("check", "Report the transfer time and spacing multiples");
  chk->add_option("--in", o.in, "Spectrum file")->required();
  chk->add_option("--out", o.out, "Output file");
  chk->callback([&] { action = spectrum_check; });

  auto* chain = app.add_subcommand("chain", "Build, verify or operate on chains");
  chain->require_subcommand(1);
  auto* build = chain->add_subcommand("build", "Reconstruct the chain for a spectrum");
  build->add_option("--spectrum", o.spectrum, "Spectrum file")->required();
  build->add_option("--mode", o.mode, "exact|float");
  build->add_option("--algorithm", o.algorithm, "euclid|stieltjes|both");
  build->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  build->add_option("--out", o.out, "Output file");
  build->callback([&] { action = chain_build; });

  auto* ver = chain->add_subcommand("verify", "Simulate the transfer and report residuals");
  ver->add_option("--in", o.in, "Chain file")->required();
  ver->add_option("--out", o.out, "Report file");
  ver->add_option("--curve", o.curve, "Write |f(t)| over [0, 2T] as CSV");
  ver->add_option("--samples", o.samples, "Curve samples")->check(CLI::PositiveNumber);
  ver->callback([&] { action = chain_verify; });

  auto* surg = chain->add_subcommand("surgery", "Remove levels by Christoffel transforms");
  surg->add_option("--in", o.in, "Chain file with spectral_data")->required();
  surg->add_option("--plan", o.plan, "Plan file")->required();
  surg->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  surg->add_option("--out", o.out, "Output chain file");
  surg->callback([&] { action = chain_surgery; });

  app.add_subcommand("selftest", "Run the acceptance suite")->callback([&] { action = selftest; });

  auto* fz = app.add_subcommand("fuzz", "Random build/verify runs over the families");
  fz->add_option("--seed", o.seed, "RNG seed");
  fz->add_option("--count", o.count, "Number of runs")->check(CLI::PositiveNumber);
  fz->callback([&] { action = fuzz; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }
  try {
    return action(o);
  } catch (const Failure& f) {
    return f.exit;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kIo;
  }
}
