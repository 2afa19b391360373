/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pstforge::io {

template <> json encode_scalar<Rational>(const Rational& v);
template <> json encode_scalar<double>(const double& v);
template <> Rational decode_scalar<Rational>(const json& j);
template <> double decode_scalar<double>(const json& j);
template <> json encode_time<Rational>(const Rational& c);
template <> json encode_time<double>(const double& c);
template <> Rational decode_time<Rational>(const json& j);
template <> double decode_time<double>(const json& j);

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::string trimmed(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
}

// Splits "pi", "pi/q", "c*pi" and "c" into the rational coefficient of pi.
// Returns false when the text has no "pi".
bool split_pi(const std::string& text, Rational& coeff) {
  const std::string t = trimmed(text);
  const auto pos = t.find("pi");
  if (pos == std::string::npos) return false;
  if (t == "pi") {
    coeff = 1;
  } else if (pos == 0 && t.size() > 3 && t[2] == '/') {
    coeff = Rational(1) / parse_rational(t.substr(3));
  } else if (pos + 2 == t.size() && pos >= 2 && t[pos - 1] == '*') {
    coeff = parse_rational(t.substr(0, pos - 1));
  } else {
    parse_error("unrecognized time literal '" + t + "'");
  }
  return true;
}

Mode infer_mode(const json& j, const char* probe, std::optional<Mode> forced) {
  if (forced) return *forced;
  if (j.contains("mode")) return parse_mode(j.at("mode").get<std::string>());
  if (j.contains(probe) && j.at(probe).is_array() && !j.at(probe).empty() &&
      j.at(probe).front().is_string()) {
    return Mode::Exact;
  }
  return Mode::Float;
}

template <class T>
std::vector<T> decode_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) parse_error(std::string("missing array '") + key + "'");
  std::vector<T> out;
  for (const auto& v : j.at(key)) out.push_back(decode_scalar<T>(v));
  return out;
}

template <class T>
json encode_list(const std::vector<T>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(encode_scalar(x));
  return arr;
}

template <class T>
ChainFile<T> chain_file_from_json(const json& j) {
  ChainFile<T> f;
  f.chain.b = decode_list<T>(j, "b");
  if constexpr (!is_exact_v<T>) {
    if (j.contains("j")) {
      for (double c : decode_list<double>(j, "j")) f.chain.u.push_back(c * c);
    } else {
      f.chain.u = decode_list<T>(j, "u");
    }
  } else {
    f.chain.u = decode_list<T>(j, "u");
  }
  if (j.contains("n") && j.at("n").get<long>() + 1 != static_cast<long>(f.chain.b.size())) {
    parse_error("chain field 'n' does not match the length of 'b'");
  }
  f.chain.time_over_pi = j.contains("time") ? decode_time<T>(j.at("time")) : T(1);
  recurrence_of(f.chain).validate();
  if (!(f.chain.time_over_pi > 0)) parse_error("chain time must be positive");
  if (j.contains("spectral_data")) {
    const auto& sd = j.at("spectral_data");
    f.spectral_data.emplace(decode_list<T>(sd, "points"), decode_list<T>(sd, "weights"));
    if (f.spectral_data->size() != f.chain.b.size()) {
      parse_error("spectral_data size does not match the chain");
    }
  }
  return f;
}

}  // namespace

template <>
json encode_scalar<Rational>(const Rational& v) {
  return format_rational(v);
}

template <>
json encode_scalar<double>(const double& v) {
  return v;
}

template <>
Rational decode_scalar<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number()) return rational_from_double(j.get<double>());
  parse_error("expected a rational string or number, got " + j.dump());
}

template <>
double decode_scalar<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      return parse_rational(s).get_d();
    } catch (const Error&) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != s.size()) parse_error("not a number: '" + s + "'");
      return v;
    }
  }
  parse_error("expected a number, got " + j.dump());
}

template <>
json encode_time<Rational>(const Rational& c) {
  if (c == 1) return "pi";
  if (c.get_num() == 1) return "pi/" + c.get_den().get_str();
  return format_rational(c) + "*pi";
}

template <>
json encode_time<double>(const double& c) {
  return c * std::numbers::pi;
}

template <>
Rational decode_time<Rational>(const json& j) {
  Rational coeff;
  if (j.is_string()) {
    if (split_pi(j.get<std::string>(), coeff)) return coeff;
    parse_error("exact time must be written as a rational multiple of pi, e.g. \"pi/2\"");
  }
  if (j.is_number()) return rational_from_double(j.get<double>() / std::numbers::pi);
  parse_error("bad time value " + j.dump());
}

template <>
double decode_time<double>(const json& j) {
  Rational coeff;
  if (j.is_string() && split_pi(j.get<std::string>(), coeff)) return coeff.get_d();
  return decode_scalar<double>(j) / std::numbers::pi;
}

template <class T>
json spectrum_to_json(const Spectrum<T>& s) {
  return json{{"mode", to_string(mode_of_v<T>)},
              {"points", encode_list(s.points())},
              {"time", encode_time<T>(s.time_over_pi())}};
}

AnySpectrum spectrum_from_json(const json& j, std::optional<Mode> forced) {
  if (!j.is_object()) parse_error("spectrum document must be a JSON object");
  const Mode mode = infer_mode(j, "points", forced);
  if (mode == Mode::Exact) {
    Rational time = j.contains("time") ? decode_time<Rational>(j.at("time")) : Rational(1);
    return Spectrum<Rational>(decode_list<Rational>(j, "points"), time);
  }
  double time = j.contains("time") ? decode_time<double>(j.at("time")) : 1.0;
  return Spectrum<double>(decode_list<double>(j, "points"), time);
}

template <class T>
json measure_to_json(const DiscreteMeasure<T>& m) {
  return json{{"mode", to_string(mode_of_v<T>)},
              {"points", encode_list(m.points())},
              {"weights", encode_list(m.weights())}};
}

AnyMeasure measure_from_json(const json& j, std::optional<Mode> forced) {
  if (!j.is_object()) parse_error("measure document must be a JSON object");
  if (infer_mode(j, "points", forced) == Mode::Exact) {
    return DiscreteMeasure<Rational>(decode_list<Rational>(j, "points"),
                                     decode_list<Rational>(j, "weights"));
  }
  return DiscreteMeasure<double>(decode_list<double>(j, "points"), decode_list<double>(j, "weights"));
}

template <class T>
json admissibility_to_json(const Admissibility<T>& a) {
  return json{{"mode", to_string(mode_of_v<T>)},
              {"time", encode_time<T>(a.time_over_pi)},
              {"m", a.multiples}};
}

template <class T>
json chain_to_json(const ChainFile<T>& f) {
  const auto& c = f.chain;
  json out{{"mode", to_string(mode_of_v<T>)},
           {"n", c.n()},
           {"b", encode_list(c.b)},
           {"u", encode_list(c.u)},
           {"j", c.couplings()},
           {"time", encode_time<T>(c.time_over_pi)}};
  if (f.spectral_data) {
    out["spectral_data"] = json{{"points", encode_list(f.spectral_data->points())},
                                {"weights", encode_list(f.spectral_data->weights())}};
  }
  return out;
}

AnyChainFile chain_from_json(const json& j) {
  if (!j.is_object()) parse_error("chain document must be a JSON object");
  if (infer_mode(j, "b", std::nullopt) == Mode::Exact) return chain_file_from_json<Rational>(j);
  return chain_file_from_json<double>(j);
}

template <class T>
std::string chain_to_csv(const JacobiChain<T>& c) {
  std::ostringstream os;
  os << "kind,index,value\n";
  const auto b = c.fields();
  const auto j = c.couplings();
  for (std::size_t n = 0; n < b.size(); ++n) os << "site," << n << ',' << format_double(b[n]) << '\n';
  for (std::size_t n = 0; n < j.size(); ++n) os << "bond," << n + 1 << ',' << format_double(j[n]) << '\n';
  return os.str();
}

json report_to_json(const TransferReport& r) {
  return json{{"fidelity", r.fidelity},
              {"phase", r.phase},
              {"time_used", r.time_used},
              {"persymmetry_residual", r.persymmetry_residual},
              {"sign_condition_residual", r.sign_condition_residual},
              {"dual_weight_residual", r.dual_weight_residual},
              {"pst", is_pst(r)}};
}

std::string curve_to_csv(const std::vector<CurveSample>& curve) {
  std::ostringstream os;
  os << "t,re,im,abs\n";
  for (const auto& s : curve) {
    os << format_double(s.t) << ',' << format_double(s.amplitude.real()) << ','
       << format_double(s.amplitude.imag()) << ',' << format_double(std::abs(s.amplitude)) << '\n';
  }
  return os.str();
}

json plan_to_json(const SurgeryPlan& p) {
  json out{{"kind", to_string(p.kind)}, {"repetitions", p.repetitions}};
  if (p.kind == SurgeryKind::RemovePair || p.kind == SurgeryKind::RemoveLevel) out["j"] = p.j;
  return out;
}

SurgeryPlan plan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorCode::InvalidPlan, "plan needs a string field 'kind'");
  }
  SurgeryPlan p;
  p.kind = parse_surgery_kind(j.at("kind").get<std::string>());
  if (j.contains("j")) {
    if (!j.at("j").is_number_integer()) throw Error(ErrorCode::InvalidPlan, "plan field 'j' must be an integer");
    p.j = j.at("j").get<int>();
  } else if (p.kind == SurgeryKind::RemovePair || p.kind == SurgeryKind::RemoveLevel) {
    throw Error(ErrorCode::InvalidPlan, std::string(to_string(p.kind)) + " needs field 'j'");
  }
  if (j.contains("repetitions")) {
    if (!j.at("repetitions").is_number_integer()) {
      throw Error(ErrorCode::InvalidPlan, "plan field 'repetitions' must be an integer");
    }
    p.repetitions = j.at("repetitions").get<int>();
  }
  if (p.repetitions < 1) throw Error(ErrorCode::InvalidPlan, "repetitions must be positive");
  return p;
}

json error_to_json(ErrorCode code, const std::string& message, std::optional<long> index) {
  json out{{"error", to_string(code)}, {"message", message}};
  if (index) out["index"] = *index;
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

#define PSTFORGE_INSTANTIATE(T)                                           \
  template json spectrum_to_json<T>(const Spectrum<T>&);                  \
  template json measure_to_json<T>(const DiscreteMeasure<T>&);            \
  template json admissibility_to_json<T>(const Admissibility<T>&);        \
  template json chain_to_json<T>(const ChainFile<T>&);                    \
  template std::string chain_to_csv<T>(const JacobiChain<T>&);

PSTFORGE_INSTANTIATE(Rational)
PSTFORGE_INSTANTIATE(double)
#undef PSTFORGE_INSTANTIATE

}  // namespace pstforge::io
