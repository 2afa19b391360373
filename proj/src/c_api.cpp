/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "pstforge/pstforge.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <type_traits>
#include <variant>

#include "pstforge/analysis.hpp"
#include "pstforge/error.hpp"
#include "pstforge/io.hpp"
#include "pstforge/reconstruct.hpp"
#include "pstforge/selftest.hpp"
#include "pstforge/spectrum.hpp"
#include "pstforge/surgery.hpp"

using namespace pstforge;

struct pst_spectrum {
  io::AnySpectrum value;
};

struct pst_chain {
  io::AnyChainFile value;
};

namespace {

struct LastError {
  pst_status status = PST_OK;
  std::string message;
  long index = -1;
};

thread_local LastError g_last;

pst_status status_of(ErrorCode code) { return static_cast<pst_status>(static_cast<int>(code) + 1); }

ErrorCode code_of(pst_status s) { return static_cast<ErrorCode>(static_cast<int>(s) - 1); }

pst_status record(pst_status status, std::string message, long index = -1) {
  g_last = {status, std::move(message), index};
  return status;
}

template <class F>
pst_status guarded(F&& f) {
  g_last = {};
  try {
    f();
    return PST_OK;
  } catch (const Error& e) {
    return record(status_of(e.code()), e.what(), e.index().value_or(-1));
  } catch (const nlohmann::json::exception& e) {
    return record(PST_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return record(PST_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(PST_E_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Mode mode_from(pst_mode m) {
  switch (m) {
    case PST_MODE_EXACT: return Mode::Exact;
    case PST_MODE_FLOAT: return Mode::Float;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mode");
}

template <class T>
pst_mode mode_tag() {
  return is_exact_v<T> ? PST_MODE_EXACT : PST_MODE_FLOAT;
}

template <class T>
JacobiChain<double> as_double(const JacobiChain<T>& c) {
  if constexpr (std::is_same_v<T, double>) {
    return c;
  } else {
    return convert_chain<double>(c);
  }
}

JacobiChain<double> chain_double(const pst_chain* c) {
  return std::visit([](const auto& f) { return as_double(f.chain); }, c->value);
}

void copy_out(const std::vector<double>& v, double* out, size_t capacity) {
  require(out != nullptr || v.empty(), "null output buffer");
  require(capacity >= v.size(), "output buffer too small");
  std::copy(v.begin(), v.end(), out);
}

}  // namespace

extern "C" {

const char* pst_status_name(pst_status status) {
  switch (status) {
    case PST_OK: return "Ok";
    case PST_E_INTERNAL: return "Internal";
    default:
      if (status > PST_OK && status < PST_E_INTERNAL) return to_string(code_of(status));
      return "Unknown";
  }
}

const char* pst_last_error(void) { return g_last.message.c_str(); }

long pst_last_error_index(void) { return g_last.index; }

pst_status pst_last_error_json(char** out) {
  if (!out) return PST_E_INVALID_ARGUMENT;
  const LastError last = g_last;
  return guarded([&] {
    std::optional<long> index;
    if (last.index >= 0) index = last.index;
    nlohmann::json j;
    if (last.status == PST_OK || last.status == PST_E_INTERNAL) {
      j = {{"error", pst_status_name(last.status)}, {"message", last.message}};
      if (index) j["index"] = *index;
    } else {
      j = io::error_to_json(code_of(last.status), last.message, index);
    }
    *out = dup_string(j.dump());
  });
}

void pst_string_free(char* s) { std::free(s); }

pst_status pst_spectrum_generate(pst_family family, int n, int k, int l, pst_mode mode,
                                 pst_spectrum** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    SpectrumFamily f{};
    switch (family) {
      case PST_FAMILY_UNIFORM: f.kind = FamilyKind::Uniform; break;
      case PST_FAMILY_HYPERBOLIC: f.kind = FamilyKind::Hyperbolic; break;
      case PST_FAMILY_GAPPED: f.kind = FamilyKind::Gapped; break;
      default: throw Error(ErrorCode::BadParameters, "unknown family");
    }
    f.n = n;
    f.k = k;
    f.l = l;
    const auto exact = generate<Rational>(f);
    if (mode_from(mode) == Mode::Exact) {
      *out = new pst_spectrum{exact};
    } else {
      *out = new pst_spectrum{convert_spectrum<double>(exact)};
    }
  });
}

pst_status pst_spectrum_from_json(const char* text, int force_mode, pst_spectrum** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    std::optional<Mode> forced;
    if (force_mode >= 0) forced = mode_from(static_cast<pst_mode>(force_mode));
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    *out = new pst_spectrum{io::spectrum_from_json(j, forced)};
  });
}

pst_status pst_spectrum_to_json(const pst_spectrum* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = dup_string(std::visit([](const auto& v) { return io::spectrum_to_json(v); }, s->value).dump());
  });
}

pst_status pst_spectrum_convert(const pst_spectrum* s, pst_mode mode, pst_spectrum** out) {
  return guarded([&] {
    require(s && out, "null argument");
    const Mode target = mode_from(mode);
    *out = std::visit(
        [&](const auto& v) {
          if (target == Mode::Exact) return new pst_spectrum{convert_spectrum<Rational>(v)};
          return new pst_spectrum{convert_spectrum<double>(v)};
        },
        s->value);
  });
}

pst_status pst_spectrum_check(const pst_spectrum* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    const auto j = std::visit(
        [](const auto& v) {
          using T = std::decay_t<decltype(v.points()[0])>;
          return io::admissibility_to_json(check_admissible<T>(v.points()));
        },
        s->value);
    *out = dup_string(j.dump());
  });
}

pst_status pst_spectrum_mode(const pst_spectrum* s, pst_mode* out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = std::holds_alternative<Spectrum<Rational>>(s->value) ? PST_MODE_EXACT : PST_MODE_FLOAT;
  });
}

pst_status pst_spectrum_size(const pst_spectrum* s, size_t* out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = std::visit([](const auto& v) { return v.points().size(); }, s->value);
  });
}

pst_status pst_spectrum_points(const pst_spectrum* s, double* out, size_t capacity) {
  return guarded([&] {
    require(s != nullptr, "null argument");
    const auto pts = std::visit(
        [](const auto& v) {
          std::vector<double> d;
          for (const auto& x : v.points()) d.push_back(to_double(x));
          return d;
        },
        s->value);
    copy_out(pts, out, capacity);
  });
}

void pst_spectrum_free(pst_spectrum* s) { delete s; }

pst_status pst_chain_build(const pst_spectrum* s, pst_algorithm algorithm, pst_chain** out,
                           double* discrepancy) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v.points()[0])>;
          Algorithm algo = default_algorithm<T>();
          switch (algorithm) {
            case PST_ALGO_DEFAULT: break;
            case PST_ALGO_EUCLID: algo = Algorithm::Euclid; break;
            case PST_ALGO_STIELTJES: algo = Algorithm::Stieltjes; break;
            case PST_ALGO_BOTH: algo = Algorithm::Both; break;
            default: throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
          }
          auto built = build_chain(v, algo);
          if (discrepancy) *discrepancy = built.discrepancy.value_or(0.0);
          return new pst_chain{io::ChainFile<T>{std::move(built.chain), std::move(built.measure)}};
        },
        s->value);
  });
}

pst_status pst_chain_from_json(const char* text, pst_chain** out) {
  return guarded([&] {
    require(text && out, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    *out = new pst_chain{io::chain_from_json(j)};
  });
}

pst_status pst_chain_to_json(const pst_chain* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup_string(std::visit([](const auto& f) { return io::chain_to_json(f); }, c->value).dump());
  });
}

pst_status pst_chain_to_csv(const pst_chain* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup_string(std::visit([](const auto& f) { return io::chain_to_csv(f.chain); }, c->value));
  });
}

pst_status pst_chain_mode(const pst_chain* c, pst_mode* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = std::visit([](const auto& f) { return mode_tag<std::decay_t<decltype(f.chain.b[0])>>(); },
                      c->value);
  });
}

pst_status pst_chain_size(const pst_chain* c, size_t* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = std::visit([](const auto& f) { return f.chain.b.size(); }, c->value);
  });
}

pst_status pst_chain_fields(const pst_chain* c, double* out, size_t capacity) {
  return guarded([&] {
    require(c != nullptr, "null argument");
    copy_out(std::visit([](const auto& f) { return f.chain.fields(); }, c->value), out, capacity);
  });
}

pst_status pst_chain_couplings(const pst_chain* c, double* out, size_t capacity) {
  return guarded([&] {
    require(c != nullptr, "null argument");
    copy_out(std::visit([](const auto& f) { return f.chain.couplings(); }, c->value), out, capacity);
  });
}

pst_status pst_chain_time(const pst_chain* c, double* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = std::visit([](const auto& f) { return f.chain.time(); }, c->value);
  });
}

pst_status pst_chain_persymmetry(const pst_chain* c, double* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = persymmetry_residual(chain_double(c));
  });
}

pst_status pst_chain_verify(const pst_chain* c, pst_report* out) {
  return guarded([&] {
    require(c && out, "null argument");
    const auto r = verify(chain_double(c));
    *out = {r.fidelity,
            r.phase,
            r.time_used,
            r.persymmetry_residual,
            r.sign_condition_residual,
            r.dual_weight_residual,
            is_pst(r) ? 1 : 0};
  });
}

pst_status pst_report_to_json(const pst_report* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    const TransferReport rep{r->fidelity, r->phase, r->time_used, r->persymmetry_residual,
                             r->sign_condition_residual, r->dual_weight_residual};
    *out = dup_string(io::report_to_json(rep).dump());
  });
}

pst_status pst_chain_amplitude(const pst_chain* c, double t, double* re, double* im) {
  return guarded([&] {
    require(c && re && im, "null argument");
    const auto f = transfer_amplitude(chain_double(c), t);
    *re = f.real();
    *im = f.imag();
  });
}

pst_status pst_chain_curve_csv(const pst_chain* c, size_t samples, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup_string(io::curve_to_csv(fidelity_curve(chain_double(c), samples)));
  });
}

pst_status pst_chain_surgery(const pst_chain* c, const char* plan_json, pst_chain** out,
                             double* discrepancy) {
  return guarded([&] {
    require(c && plan_json && out, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(plan_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    const SurgeryPlan plan = io::plan_from_json(j);
    *out = std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f.chain.b[0])>;
          if (!f.spectral_data) {
            throw Error(ErrorCode::InvalidPlan, "chain file carries no spectral_data");
          }
          const SpectralPair<T> start{*f.spectral_data, recurrence_of(f.chain)};
          auto res = apply_surgery(start, plan);
          if (discrepancy) *discrepancy = res.discrepancy;
          return new pst_chain{io::ChainFile<T>{
              chain_from_recurrence(res.closed_form, res.admissibility.time_over_pi),
              std::move(res.measure)}};
        },
        c->value);
  });
}

void pst_chain_free(pst_chain* c) { delete c; }

pst_status pst_selftest(pst_selftest_callback callback, void* user, int* failures) {
  return guarded([&] {
    int failed = 0;
    run_acceptance([&](const CriterionResult& r) {
      if (!r.passed) ++failed;
      if (callback) {
        const std::string name = std::to_string(r.id) + ". " + r.title;
        callback(name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
      }
    });
    if (failures) *failures = failed;
  });
}

}  // extern "C"
