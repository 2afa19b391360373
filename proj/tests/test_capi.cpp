/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "pstforge/pstforge.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  pst_string_free(s);
  return out;
}

pst_chain* build(pst_family family, int n, int k, int l, pst_mode mode) {
  pst_spectrum* s = nullptr;
  REQUIRE(pst_spectrum_generate(family, n, k, l, mode, &s) == PST_OK);
  pst_chain* c = nullptr;
  REQUIRE(pst_chain_build(s, PST_ALGO_DEFAULT, &c, nullptr) == PST_OK);
  pst_spectrum_free(s);
  return c;
}

struct Tally {
  int calls = 0;
  int passed = 0;
};

void count_criteria(const char*, int passed, const char*, void* user) {
  auto* t = static_cast<Tally*>(user);
  ++t->calls;
  t->passed += passed;
}

}  // namespace

TEST_CASE("spectrum handles") {
  pst_spectrum* s = nullptr;
  REQUIRE(pst_spectrum_generate(PST_FAMILY_UNIFORM, 2, 0, 0, PST_MODE_EXACT, &s) == PST_OK);
  char* text = nullptr;
  REQUIRE(pst_spectrum_to_json(s, &text) == PST_OK);
  const auto j = json::parse(take(text));
  CHECK(j.at("points") == json({"-1", "0", "1"}));
  CHECK(j.at("time") == "pi");

  size_t size = 0;
  CHECK(pst_spectrum_size(s, &size) == PST_OK);
  CHECK(size == 3);
  std::vector<double> pts(3);
  CHECK(pst_spectrum_points(s, pts.data(), pts.size()) == PST_OK);
  CHECK(pts == std::vector<double>{-1, 0, 1});
  CHECK(pst_spectrum_points(s, pts.data(), 2) == PST_E_INVALID_ARGUMENT);

  pst_spectrum* f = nullptr;
  REQUIRE(pst_spectrum_convert(s, PST_MODE_FLOAT, &f) == PST_OK);
  pst_mode mode{};
  CHECK(pst_spectrum_mode(f, &mode) == PST_OK);
  CHECK(mode == PST_MODE_FLOAT);
  REQUIRE(pst_spectrum_check(f, &text) == PST_OK);
  CHECK(json::parse(take(text)).at("m") == json({1, 1}));
  pst_spectrum_free(f);
  pst_spectrum_free(s);
  pst_spectrum_free(nullptr);
}

TEST_CASE("errors carry a status, message, index and JSON payload") {
  pst_spectrum* s = nullptr;
  REQUIRE(pst_spectrum_from_json(R"({"points":["0","1","3"]})", -1, &s) == PST_OK);
  char* text = nullptr;
  CHECK(pst_spectrum_check(s, &text) == PST_E_NOT_ADMISSIBLE);
  CHECK(std::string(pst_last_error()).find("even spacing multiple at index 1") != std::string::npos);
  CHECK(pst_last_error_index() == 1);
  REQUIRE(pst_last_error_json(&text) == PST_OK);
  const auto e = json::parse(take(text));
  CHECK(e.at("error") == "NotAdmissible");
  CHECK(e.at("index") == 1);
  pst_chain* c = nullptr;
  CHECK(pst_chain_build(s, PST_ALGO_DEFAULT, &c, nullptr) == PST_E_NOT_ADMISSIBLE);
  CHECK(c == nullptr);
  pst_spectrum_free(s);

  CHECK(pst_spectrum_from_json("{nope", -1, &s) == PST_E_PARSE);
  CHECK(pst_spectrum_from_json(nullptr, -1, &s) == PST_E_INVALID_ARGUMENT);
  CHECK(pst_spectrum_generate(PST_FAMILY_GAPPED, 4, 0, 0, PST_MODE_EXACT, &s) == PST_E_BAD_PARAMETERS);
  CHECK(std::string(pst_status_name(PST_E_INTERIOR_SINGLE_REMOVAL)) == "InteriorSingleRemoval");
  CHECK(std::string(pst_status_name(PST_OK)) == "Ok");

  // a successful call clears the previous error
  CHECK(pst_spectrum_generate(PST_FAMILY_UNIFORM, 1, 0, 0, PST_MODE_EXACT, &s) == PST_OK);
  CHECK(std::string(pst_last_error()).empty());
  pst_spectrum_free(s);
}

TEST_CASE("chain build, accessors and verification") {
  pst_chain* c = build(PST_FAMILY_UNIFORM, 4, 0, 0, PST_MODE_EXACT);
  size_t size = 0;
  CHECK(pst_chain_size(c, &size) == PST_OK);
  CHECK(size == 5);
  std::vector<double> j(4), b(5);
  CHECK(pst_chain_couplings(c, j.data(), j.size()) == PST_OK);
  CHECK(pst_chain_fields(c, b.data(), b.size()) == PST_OK);
  for (int n = 1; n <= 4; ++n) CHECK(j[n - 1] == doctest::Approx(std::sqrt(n * (5.0 - n) / 4.0)));
  double t = 0, persym = 1;
  CHECK(pst_chain_time(c, &t) == PST_OK);
  CHECK(t == doctest::Approx(M_PI));
  CHECK(pst_chain_persymmetry(c, &persym) == PST_OK);
  CHECK(persym == 0.0);
  pst_report r{};
  CHECK(pst_chain_verify(c, &r) == PST_OK);
  CHECK(r.is_pst == 1);
  CHECK(r.fidelity >= 1 - 1e-10);
  double re = 0, im = 0;
  CHECK(pst_chain_amplitude(c, M_PI, &re, &im) == PST_OK);
  CHECK(std::hypot(re, im) == doctest::Approx(1.0));
  char* text = nullptr;
  REQUIRE(pst_report_to_json(&r, &text) == PST_OK);
  CHECK(json::parse(take(text)).at("pst") == true);
  REQUIRE(pst_chain_curve_csv(c, 5, &text) == PST_OK);
  CHECK(take(text).rfind("t,re,im,abs", 0) == 0);
  REQUIRE(pst_chain_to_csv(c, &text) == PST_OK);
  CHECK(take(text).rfind("kind,index,value", 0) == 0);

  REQUIRE(pst_chain_to_json(c, &text) == PST_OK);
  const std::string doc = take(text);
  pst_chain* back = nullptr;
  REQUIRE(pst_chain_from_json(doc.c_str(), &back) == PST_OK);
  REQUIRE(pst_chain_to_json(back, &text) == PST_OK);
  CHECK(take(text) == doc);
  pst_chain_free(back);
  pst_chain_free(c);
}

TEST_CASE("algorithm selection") {
  pst_spectrum* s = nullptr;
  REQUIRE(pst_spectrum_generate(PST_FAMILY_HYPERBOLIC, 6, 4, 0, PST_MODE_FLOAT, &s) == PST_OK);
  double d = -1;
  pst_chain* c = nullptr;
  REQUIRE(pst_chain_build(s, PST_ALGO_BOTH, &c, &d) == PST_OK);
  CHECK(d >= 0);
  CHECK(d < 1e-8);
  pst_mode mode{};
  CHECK(pst_chain_mode(c, &mode) == PST_OK);
  CHECK(mode == PST_MODE_FLOAT);
  pst_chain_free(c);
  CHECK(pst_chain_build(s, static_cast<pst_algorithm>(42), &c, nullptr) == PST_E_INVALID_ARGUMENT);
  pst_spectrum_free(s);
}

TEST_CASE("surgery through the C API") {
  pst_chain* c = build(PST_FAMILY_UNIFORM, 3, 0, 0, PST_MODE_EXACT);
  pst_chain* out = nullptr;
  double d = -1;
  REQUIRE(pst_chain_surgery(c, R"({"kind":"remove_middle_pair"})", &out, &d) == PST_OK);
  CHECK(d == 0.0);
  std::vector<double> j(1);
  CHECK(pst_chain_couplings(out, j.data(), 1) == PST_OK);
  CHECK(j[0] == 1.5);
  pst_chain_free(out);

  CHECK(pst_chain_surgery(c, R"({"kind":"remove_level","j":1})", &out, nullptr) ==
        PST_E_INTERIOR_SINGLE_REMOVAL);
  CHECK(pst_last_error_index() == 1);
  CHECK(pst_chain_surgery(c, R"({"kind":"shuffle"})", &out, nullptr) == PST_E_INVALID_PLAN);
  pst_chain_free(c);

  // chains without spectral data cannot be operated on
  REQUIRE(pst_chain_from_json(R"({"mode":"exact","b":["0","0"],"u":["1/4"],"time":"pi"})", &c) == PST_OK);
  CHECK(pst_chain_surgery(c, R"({"kind":"remove_edge_low"})", &out, nullptr) == PST_E_INVALID_PLAN);
  pst_chain_free(c);
}

TEST_CASE("selftest callback sees every criterion") {
  Tally t;
  int failures = -1;
  CHECK(pst_selftest(count_criteria, &t, &failures) == PST_OK);
  CHECK(t.calls == 10);
  CHECK(t.passed == 10);
  CHECK(failures == 0);
}
