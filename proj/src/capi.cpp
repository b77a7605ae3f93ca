#include "ordena.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ordena/arith.hpp"
#include "ordena/base.hpp"
#include "ordena/coincidence.hpp"
#include "ordena/density.hpp"
#include "ordena/errors.hpp"
#include "ordena/mdensity.hpp"
#include "ordena/order.hpp"
#include "ordena/sieve.hpp"

struct ordena_base {
  ordena::Base base;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ordena_status map_errc(ordena::Errc code) {
  switch (code) {
    case ordena::Errc::invalid_argument: return ORDENA_ERR_INVALID_ARGUMENT;
    case ordena::Errc::parse: return ORDENA_ERR_PARSE;
    case ordena::Errc::domain: return ORDENA_ERR_DOMAIN;
    case ordena::Errc::not_in_s: return ORDENA_ERR_NOT_IN_S;
    case ordena::Errc::unsupported: return ORDENA_ERR_UNSUPPORTED;
    case ordena::Errc::resource: return ORDENA_ERR_RESOURCE;
  }
  return ORDENA_ERR_INTERNAL;
}

template <typename F>
ordena_status guarded(F&& f) {
  try {
    f();
    t_last_error.clear();
    return ORDENA_OK;
  } catch (const ordena::Error& e) {
    t_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ORDENA_ERR_INTERNAL;
  }
}

ordena::FactoredInteger parse_factored(const char* text, const char* what) {
  if (text == nullptr || *text == '\0')
    ordena::fail(ordena::Errc::parse, std::string(what) + ": empty integer");
  for (const char* p = text; *p; ++p)
    if (*p < '0' || *p > '9')
      ordena::fail(ordena::Errc::parse, std::string(what) + ": not a decimal integer");
  return ordena::factorize(ordena::BigInt(text));
}

std::string factor_string(const ordena::FactoredInteger& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (const auto& pp : f.factors) {
    if (!out.empty()) out += '*';
    out += std::to_string(pp.prime);
    if (pp.exponent != 1) {
      out += '^';
      out += std::to_string(pp.exponent);
    }
  }
  return out;
}

std::string quadruple_rows(const std::vector<ordena::CoincidenceQuadruple>& quads) {
  std::string out;
  for (const auto& q : quads) {
    out += std::to_string(q.p1) + "\t" + std::to_string(q.e1) + "\t" + std::to_string(q.p2) +
           "\t" + std::to_string(q.e2) + "\t" + ordena::to_string(q.value) + "\n";
  }
  return out;
}

std::string equation_string(std::uint64_t lhs, const std::vector<std::int64_t>& terms) {
  std::string out = std::to_string(lhs) + " =";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::int64_t t = terms[i];
    if (i == 0)
      out += (t < 0 ? " -" : " ") + std::to_string(t < 0 ? -t : t);
    else
      out += (t < 0 ? " - " : " + ") + std::to_string(t < 0 ? -t : t);
  }
  return out;
}

std::string identity_report_text(const ordena::IdentityReport& report) {
  std::string out;
  for (const auto& row : report.rows) {
    out += std::to_string(row.x) + "\t" + equation_string(row.lhs, row.terms) + "\t" +
           (row.ok ? "ok" : "MISMATCH") + "\n";
  }
  return out;
}

ordena::SieveOptions sieve_options(int threads) {
  ordena::SieveOptions opts;
  opts.threads = threads > 0 ? threads : 1;
  return opts;
}

}  // namespace

extern "C" {

const char* ordena_status_name(ordena_status status) {
  switch (status) {
    case ORDENA_OK: return "ok";
    case ORDENA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ORDENA_ERR_PARSE: return "parse error";
    case ORDENA_ERR_DOMAIN: return "domain error";
    case ORDENA_ERR_NOT_IN_S: return "u is not in S(g)";
    case ORDENA_ERR_UNSUPPORTED: return "unsupported";
    case ORDENA_ERR_RESOURCE: return "resource limit";
    case ORDENA_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* ordena_last_error(void) { return t_last_error.c_str(); }

void ordena_string_free(char* s) { std::free(s); }

ordena_status ordena_base_parse(const char* text, ordena_base** out) {
  return guarded([&] {
    if (text == nullptr || out == nullptr)
      ordena::fail(ordena::Errc::invalid_argument, "base_parse: null argument");
    auto* handle = new ordena_base{ordena::parse_base(text)};
    *out = handle;
  });
}

void ordena_base_free(ordena_base* base) { delete base; }

int ordena_base_sign(const ordena_base* base) { return base->base.sign; }

uint64_t ordena_base_h(const ordena_base* base) { return base->base.h; }

ordena_status ordena_base_discriminant(const ordena_base* base, char** out) {
  return guarded([&] { *out = dup_string(ordena::to_string(base->base.disc)); });
}

void ordena_base_tau(const ordena_base* base, int* tau1, int* tau2) {
  if (tau1) *tau1 = base->base.tau1;
  if (tau2) *tau2 = base->base.tau2;
}

int ordena_base_in_s(const ordena_base* base, uint64_t u) {
  return ordena::in_S(base->base, u) ? 1 : 0;
}

ordena_status ordena_factorize(const char* n, char** out) {
  return guarded([&] { *out = dup_string(factor_string(parse_factored(n, "factorize"))); });
}

ordena_status ordena_order(const ordena_base* base, uint64_t u, uint64_t* out) {
  return guarded([&] { *out = ordena::multiplicative_order(base->base, u); });
}

ordena_status ordena_cap_c(uint64_t q, uint64_t n, char** out) {
  return guarded([&] { *out = dup_string(ordena::to_string(ordena::cap_C(q, n))); });
}

ordena_status ordena_delta(const ordena_base* base, const char* d, char** out) {
  return guarded([&] {
    *out = dup_string(ordena::to_string(ordena::delta(base->base, parse_factored(d, "delta"))));
  });
}

ordena_status ordena_delta_prime(const ordena_base* base, const char* m, char** out) {
  return guarded([&] {
    *out = dup_string(
        ordena::to_string(ordena::delta_prime(base->base, parse_factored(m, "delta_prime"))));
  });
}

ordena_status ordena_gamma_min(const ordena_base* base, const char* m, char** out) {
  return guarded([&] {
    *out = dup_string(
        ordena::to_string(ordena::gamma_min(base->base, parse_factored(m, "gamma_min"))));
  });
}

ordena_status ordena_epsilon(const ordena_base* base, const char* d, char** out) {
  return guarded([&] {
    *out = dup_string(ordena::to_string(ordena::epsilon(base->base, parse_factored(d, "epsilon"))));
  });
}

ordena_status ordena_spectrum(const ordena_base* base, const char* m, char** out) {
  return guarded([&] {
    std::string text;
    for (const auto& v : ordena::exponent_spectrum(base->base, parse_factored(m, "spectrum")))
      text += ordena::to_string(v) + "\n";
    *out = dup_string(text);
  });
}

ordena_status ordena_coincidences(const ordena_base* base, uint64_t pmax, uint64_t emax,
                                  char** out) {
  return guarded([&] {
    *out = dup_string(quadruple_rows(
        ordena::coincidence_search(base->base, pmax, static_cast<unsigned>(emax))));
  });
}

ordena_status ordena_families(const ordena_base* base, char** out) {
  return guarded([&] { *out = dup_string(quadruple_rows(ordena::coincidence_families(base->base))); });
}

ordena_status ordena_solve_order_equation(uint64_t pmax, uint64_t emax, char** out) {
  return guarded([&] {
    std::string text;
    for (const auto& s : ordena::solve_order_equation(pmax, static_cast<unsigned>(emax))) {
      text += std::to_string(s.p) + "\t" + std::to_string(s.alpha) + "\t" + std::to_string(s.q) +
              "\t" + std::to_string(s.beta) + "\t" +
              ordena::to_string(ordena::cap_C(s.p, s.alpha)) + "\n";
    }
    *out = dup_string(text);
  });
}

ordena_status ordena_generator_set(int tau2, char** out) {
  return guarded([&] {
    std::string text;
    for (std::uint64_t m : ordena::derive_generator_sets(tau2).members)
      text += std::to_string(m) + "\n";
    *out = dup_string(text);
  });
}

ordena_status ordena_is_muller(const ordena_base* base, int* muller, uint64_t* witness) {
  return guarded([&] {
    auto result = ordena::is_muller(base->base);
    if (muller) *muller = result.muller ? 1 : 0;
    if (witness) *witness = result.witness.value_or(0);
  });
}

ordena_status ordena_unique_pattern_density(const ordena_base* base, char** out) {
  return guarded(
      [&] { *out = dup_string(ordena::to_string(ordena::unique_pattern_density(base->base))); });
}

ordena_status ordena_scan_bad(const ordena_base* base, uint64_t limit, int threads,
                              uint64_t* count) {
  return guarded([&] { *count = ordena::scan_bad(base->base, limit, threads > 0 ? threads : 1); });
}

ordena_status ordena_count_series(const ordena_base* base, const char* m, uint64_t x,
                                  const char* mode, unsigned checkpoints, int threads,
                                  char** out) {
  return guarded([&] {
    ordena::CountMode count_mode = ordena::parse_count_mode(mode ? mode : "N");
    ordena::CountTable table =
        ordena::count_series(base->base, parse_factored(m, "count"), x, count_mode, checkpoints,
                             sieve_options(threads));
    auto normalized = ordena::normalized_series(table);
    std::string text = "x\tcount\tpredicted_exponent\tnormalized\n";
    std::size_t ni = 0;
    for (const auto& [cx, ccount] : table.checkpoints) {
      double norm = 0.0;
      if (ni < normalized.size() && normalized[ni].first == cx) norm = normalized[ni++].second;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10g", norm);
      text += std::to_string(cx) + "\t" + std::to_string(ccount) + "\t" +
              ordena::to_string(table.predicted_exponent) + "\t" + buf + "\n";
    }
    *out = dup_string(text);
  });
}

ordena_status ordena_verify_lemma2(const ordena_base* base, const char* m, uint64_t x,
                                   unsigned checkpoints, int threads, char** report, int* passed) {
  return guarded([&] {
    auto result = ordena::verify_lemma2(base->base, parse_factored(m, "verify_lemma2"), x,
                                        checkpoints, sieve_options(threads));
    if (report) *report = dup_string(identity_report_text(result));
    if (passed) *passed = result.passed ? 1 : 0;
  });
}

ordena_status ordena_verify_prime_ie(const ordena_base* base, const char* d, uint64_t x,
                                     unsigned checkpoints, int threads, char** report,
                                     int* passed) {
  return guarded([&] {
    auto result = ordena::verify_prime_inclusion_exclusion(
        base->base, parse_factored(d, "verify_prime_ie"), x, checkpoints, sieve_options(threads));
    if (report) *report = dup_string(identity_report_text(result));
    if (passed) *passed = result.passed ? 1 : 0;
  });
}

ordena_status ordena_verify_multiplicative(const ordena_base* base, const char* m, uint64_t x,
                                           uint64_t trials, uint64_t seed, char** report,
                                           int* passed) {
  return guarded([&] {
    auto result = ordena::check_complete_multiplicativity(
        base->base, parse_factored(m, "verify_multiplicative"), x, trials, seed);
    std::string text = "trials\t" + std::to_string(result.trials) + "\tfailures\t" +
                       std::to_string(result.failures.size()) + "\n";
    for (const auto& f : result.failures) {
      text += "counterexample\tu=" + std::to_string(f.u) + "\tv=" + std::to_string(f.v) +
              "\tmember(u)=" + (f.member_u ? "true" : "false") +
              "\tmember(v)=" + (f.member_v ? "true" : "false") +
              "\tmember(uv)=" + (f.member_uv ? "true" : "false") + "\n";
    }
    if (report) *report = dup_string(text);
    if (passed) *passed = result.passed ? 1 : 0;
  });
}

ordena_status ordena_verify_congruence(const ordena_base* base, const char* d, uint64_t x,
                                       char** report, int* passed) {
  return guarded([&] {
    auto result = ordena::congruence_characterization(
        base->base, parse_factored(d, "verify_congruence"), x);
    std::string text = "primes_checked\t" + std::to_string(result.primes_checked) +
                       "\tmismatches\t" + std::to_string(result.mismatches.size()) + "\n";
    for (std::uint64_t p : result.mismatches) text += "mismatch\t" + std::to_string(p) + "\n";
    if (report) *report = dup_string(text);
    if (passed) *passed = result.passed ? 1 : 0;
  });
}

ordena_status ordena_li(double x, double* out) {
  return guarded([&] { *out = ordena::logarithmic_integral(x); });
}

}  // extern "C"
