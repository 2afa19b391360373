/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "pstforge/io.hpp"

using namespace pstforge;
using namespace pstforge::io;
using oracle::q;
using oracle::qs;

TEST_CASE("scalar and time encodings") {
  CHECK(encode_scalar<Rational>(q(-3, 2)) == "-3/2");
  CHECK(encode_scalar<Rational>(q(4)) == "4");
  CHECK(decode_scalar<Rational>(json("6/4")) == q(3, 2));
  CHECK(decode_scalar<Rational>(json(7)) == q(7));
  CHECK_THROWS_AS(decode_scalar<Rational>(json("0.5")), Error);
  CHECK_THROWS_AS(decode_scalar<Rational>(json("1/0")), Error);
  CHECK_THROWS_AS(decode_scalar<Rational>(json::array()), Error);
  CHECK(decode_scalar<double>(json("1/4")) == 0.25);
  CHECK(decode_scalar<double>(json("2.5e-1")) == 0.25);
  CHECK_THROWS_AS(decode_scalar<double>(json("abc")), Error);

  CHECK(encode_time<Rational>(q(1)) == "pi");
  CHECK(encode_time<Rational>(q(1, 2)) == "pi/2");
  CHECK(encode_time<Rational>(q(3)) == "3*pi");
  CHECK(encode_time<Rational>(q(3, 2)) == "3/2*pi");
  for (const auto& t : {q(1), q(1, 2), q(3), q(3, 2), q(5, 7)}) {
    CHECK(decode_time<Rational>(encode_time<Rational>(t)) == t);
    CHECK(decode_time<double>(encode_time<Rational>(t)) == doctest::Approx(to_double(t)));
  }
  CHECK(decode_time<double>(encode_time<double>(0.5)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(decode_time<Rational>(json("tau")), Error);
}

TEST_CASE("spectrum documents") {
  const auto s = generate<Rational>({FamilyKind::Uniform, 2, 0, 0});
  const auto j = spectrum_to_json(s);
  CHECK(j.at("points") == json({"-1", "0", "1"}));
  CHECK(j.at("time") == "pi");
  CHECK(j.at("mode") == "exact");
  CHECK(std::get<Spectrum<Rational>>(spectrum_from_json(j)) == s);

  // mode inferred from the scalar type, time defaulting to pi
  const auto inferred = spectrum_from_json(json::parse(R"({"points":[-0.5,0.5]})"));
  REQUIRE(std::holds_alternative<Spectrum<double>>(inferred));
  CHECK(std::get<Spectrum<double>>(inferred).time_over_pi() == 1.0);
  const auto forced = spectrum_from_json(json::parse(R"({"points":["-1/2","1/2"]})"), Mode::Float);
  CHECK(std::holds_alternative<Spectrum<double>>(forced));
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"points":["1","0"]})")), Error);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"({"pts":[0]})")), Error);
  CHECK_THROWS_AS(spectrum_from_json(json::parse(R"([1,2])")), Error);
}

TEST_CASE("chain documents round trip") {
  const auto s = generate<Rational>({FamilyKind::Hyperbolic, 5, 6, 0});
  const auto b = build_chain(s, Algorithm::Euclid);
  const ChainFile<Rational> f{b.chain, b.measure};
  const auto j = chain_to_json(f);
  CHECK(j.at("mode") == "exact");
  CHECK(j.contains("j"));
  CHECK(j.contains("spectral_data"));
  const auto back = std::get<ChainFile<Rational>>(chain_from_json(json::parse(j.dump())));
  CHECK(back.chain == f.chain);
  REQUIRE(back.spectral_data);
  CHECK(*back.spectral_data == b.measure);

  const auto bf = build_chain(convert_spectrum<double>(s), Algorithm::Stieltjes);
  const ChainFile<double> ff{bf.chain, bf.measure};
  const auto backf = std::get<ChainFile<double>>(chain_from_json(json::parse(chain_to_json(ff).dump())));
  CHECK(recurrence_discrepancy(recurrence_of(backf.chain), recurrence_of(ff.chain)) < 1e-15);
  CHECK(backf.chain.time_over_pi == doctest::Approx(1.0));
}

TEST_CASE("float chain files take the couplings from j") {
  auto j = json::parse(R"({"mode":"float","b":[0,0],"j":[0.5],"u":[9.0],"time":3.141592653589793})");
  auto f = std::get<ChainFile<double>>(chain_from_json(j));
  CHECK(f.chain.u == std::vector<double>{0.25});
  j.erase("j");
  f = std::get<ChainFile<double>>(chain_from_json(j));
  CHECK(f.chain.u == std::vector<double>{9.0});
  CHECK_THROWS_AS(chain_from_json(json::parse(R"({"mode":"float","b":[0,0],"j":[0.5,1]})")), Error);
  CHECK_THROWS_AS(chain_from_json(json::parse(R"({"mode":"exact","b":["0","0"],"u":["0"]})")), Error);
}

TEST_CASE("plans") {
  const SurgeryPlan p{SurgeryKind::RemovePair, 3, 2};
  const auto back = plan_from_json(plan_to_json(p));
  CHECK(back.kind == p.kind);
  CHECK(back.j == 3);
  CHECK(back.repetitions == 2);
  CHECK(plan_from_json(json::parse(R"({"kind":"remove_middle_pair"})")).repetitions == 1);
  auto code = [](const char* text) {
    try {
      plan_from_json(json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code(R"({"kind":"remove_pair"})") == ErrorCode::InvalidPlan);
  CHECK(code(R"({"kind":"remove_pair","j":"1"})") == ErrorCode::InvalidPlan);
  CHECK(code(R"({"kind":"remove_edge_low","repetitions":0})") == ErrorCode::InvalidPlan);
  CHECK(code(R"({"j":1})") == ErrorCode::InvalidPlan);
}

TEST_CASE("csv and reports") {
  const auto c = build_chain(generate<Rational>({FamilyKind::Uniform, 2, 0, 0}), Algorithm::Euclid).chain;
  const auto csv = chain_to_csv(c);
  CHECK(csv.rfind("kind,index,value\n", 0) == 0);
  CHECK(csv.find("bond,2,0.7071067811865476") != std::string::npos);
  const auto curve = curve_to_csv(fidelity_curve(convert_chain<double>(c), 3));
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 4);
  const auto r = report_to_json(verify(convert_chain<double>(c)));
  CHECK(r.at("pst") == true);
  const auto e = error_to_json(ErrorCode::NotAdmissible, "even spacing", 1);
  CHECK(e.at("error") == "NotAdmissible");
  CHECK(e.at("index") == 1);
  CHECK_FALSE(error_to_json(ErrorCode::IoError, "x", std::nullopt).contains("index"));
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "pstforge_io_test.json").string();
  write_file(path, "{\"points\":[\"0\"]}");
  CHECK(read_file(path) == "{\"points\":[\"0\"]}");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file(path), Error);
}

TEST_CASE("property: exact documents round trip bit for bit") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::random_admissible(rng, 9);
    const Spectrum<Rational> s(x, check_admissible<Rational>(x).time_over_pi);
    const auto sj = spectrum_to_json(s);
    CHECK(std::get<Spectrum<Rational>>(spectrum_from_json(json::parse(sj.dump()))) == s);
    const auto b = build_chain(s, Algorithm::Euclid);
    const ChainFile<Rational> f{b.chain, b.measure};
    const auto text = chain_to_json(f).dump();
    CHECK(chain_to_json(std::get<ChainFile<Rational>>(chain_from_json(json::parse(text)))).dump() == text);
  }
}
