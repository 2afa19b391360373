/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// JSON / CSV encodings shared by the CLI and the C API.
//
// Exact mode writes scalars as "p/q" strings (integers without a
// denominator) and the time as "pi", "pi/q", "p*pi" or "p/q*pi". Float mode
// writes plain numbers and the time in radians. Every document carries a
// "mode" field; when it is missing the mode is inferred from whether scalars
// are strings.

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pstforge/analysis.hpp"
#include "pstforge/error.hpp"
#include "pstforge/measure.hpp"
#include "pstforge/reconstruct.hpp"
#include "pstforge/spectrum.hpp"
#include "pstforge/surgery.hpp"

namespace pstforge::io {

using json = nlohmann::json;

using AnySpectrum = std::variant<Spectrum<Rational>, Spectrum<double>>;
using AnyMeasure = std::variant<DiscreteMeasure<Rational>, DiscreteMeasure<double>>;

/// A chain as stored on disk: the chain plus the spectral data it was built
/// from, which surgery needs.
template <class T>
struct ChainFile {
  JacobiChain<T> chain;
  std::optional<DiscreteMeasure<T>> spectral_data;
};

using AnyChainFile = std::variant<ChainFile<Rational>, ChainFile<double>>;

template <class T>
json encode_scalar(const T& v);
template <class T>
T decode_scalar(const json& j);

template <class T>
json encode_time(const T& time_over_pi);
template <class T>
T decode_time(const json& j);

template <class T>
json spectrum_to_json(const Spectrum<T>& s);
/// Reads a spectrum; "time" may be omitted, in which case it defaults to pi
/// (callers normally run check_admissible anyway).
AnySpectrum spectrum_from_json(const json& j, std::optional<Mode> forced = std::nullopt);

template <class T>
json measure_to_json(const DiscreteMeasure<T>& m);
AnyMeasure measure_from_json(const json& j, std::optional<Mode> forced = std::nullopt);

template <class T>
json admissibility_to_json(const Admissibility<T>& a);

template <class T>
json chain_to_json(const ChainFile<T>& f);
/// Exact files take "u" as authoritative; float files take "j" (so a hand
/// edited coupling is honoured) and fall back to "u".
AnyChainFile chain_from_json(const json& j);

template <class T>
std::string chain_to_csv(const JacobiChain<T>& c);

json report_to_json(const TransferReport& r);

std::string curve_to_csv(const std::vector<CurveSample>& curve);

json plan_to_json(const SurgeryPlan& p);
SurgeryPlan plan_from_json(const json& j);

/// Machine-readable error payload {"error": code, "message": ..., "index": ...}.
json error_to_json(ErrorCode code, const std::string& message, std::optional<long> index);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace pstforge::io
