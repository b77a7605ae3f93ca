// ordena command line front end. Talks to the shared library through the
// C API only; every subcommand prints TSV by default or JSON with --json.
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordena.h"

namespace {

using nlohmann::json;

struct CApiError {
  ordena_status status;
  std::string detail;
};

void check(ordena_status status) {
  if (status != ORDENA_OK) throw CApiError{status, ordena_last_error()};
}

using CStr = std::unique_ptr<char, decltype(&ordena_string_free)>;

CStr take(char* s) { return CStr(s, &ordena_string_free); }

using BasePtr = std::unique_ptr<ordena_base, decltype(&ordena_base_free)>;

BasePtr parse_base_arg(const std::string& text) {
  ordena_base* base = nullptr;
  check(ordena_base_parse(text.c_str(), &base));
  return BasePtr(base, &ordena_base_free);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& line : split(text, '\n'))
    if (!line.empty()) out.push_back(line);
  return out;
}

json quadruple_rows_json(const std::string& tsv, const char* k1, const char* k2, const char* k3,
                         const char* k4) {
  json rows = json::array();
  for (const auto& line : lines_of(tsv)) {
    auto cols = split(line, '\t');
    rows.push_back({{k1, std::stoull(cols[0])},
                    {k2, std::stoull(cols[1])},
                    {k3, std::stoull(cols[2])},
                    {k4, std::stoull(cols[3])},
                    {"value", cols[4]}});
  }
  return rows;
}

void emit(bool as_json, const json& j, const std::string& tsv) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << tsv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordena: exact densities, coincidence equations and order sieves"};
  app.require_subcommand(1);

  std::string base_text, m_text = "1", d_text = "1", mode = "N";
  std::uint64_t x = 1000, pmax = 1000, emax = 40, limit = 1'000'000, trials = 10'000,
                seed = 0x5eed, u_mod = 0;
  unsigned checkpoints = 1;
  int threads = 1, tau2 = -1;
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON instead of TSV");

  int exit_code = 0;

  auto add_base = [&](CLI::App* cmd) {
    cmd->add_option("--base", base_text, "base g, grammar: [-] INT [/ INT] [^ INT]")->required();
  };

  // ---- exact layer ----

  auto* factor = app.add_subcommand("factor", "prime factorization");
  factor->add_option("--m", m_text, "positive integer")->required();
  factor->callback([&] {
    char* out = nullptr;
    check(ordena_factorize(m_text.c_str(), &out));
    auto s = take(out);
    emit(as_json, json{{"value", m_text}, {"factorization", s.get()}},
         std::string(s.get()) + "\n");
  });

  auto* order = app.add_subcommand("order", "multiplicative order of g modulo m");
  add_base(order);
  order->add_option("--m", u_mod, "modulus in S(g)")->required();
  order->callback([&] {
    auto g = parse_base_arg(base_text);
    std::uint64_t ord = 0;
    check(ordena_order(g.get(), u_mod, &ord));
    emit(as_json, json{{"order", ord}}, std::to_string(ord) + "\n");
  });

  auto add_rational_cmd = [&](const char* name, const char* help, auto fn, std::string* arg,
                              const char* flag) {
    auto* cmd = app.add_subcommand(name, help);
    add_base(cmd);
    cmd->add_option(flag, *arg, "positive integer")->required();
    cmd->callback([&, fn, arg] {
      auto g = parse_base_arg(base_text);
      char* out = nullptr;
      check(fn(g.get(), arg->c_str(), &out));
      auto s = take(out);
      emit(as_json, json{{"value", s.get()}}, std::string(s.get()) + "\n");
    });
    return cmd;
  };

  add_rational_cmd("delta", "density of primes with d | ord_g(p)", &ordena_delta, &d_text, "--d");
  add_rational_cmd("delta-prime", "Mobius sum of delta over unitary divisors",
                   &ordena_delta_prime, &m_text, "--m");
  add_rational_cmd("gamma", "minimal component density gamma_g(m)", &ordena_gamma_min, &m_text,
                   "--m");
  add_rational_cmd("epsilon", "table factor epsilon_g(d), d even", &ordena_epsilon, &d_text,
                   "--d");

  auto* spectrum = app.add_subcommand("spectrum", "exponent spectrum over unitary divisors");
  add_base(spectrum);
  spectrum->add_option("--m", m_text, "positive integer >= 2")->required();
  spectrum->callback([&] {
    auto g = parse_base_arg(base_text);
    char* out = nullptr;
    check(ordena_spectrum(g.get(), m_text.c_str(), &out));
    auto s = take(out);
    emit(as_json, json{{"spectrum", lines_of(s.get())}}, s.get());
  });

  // ---- coincidence layer ----

  auto* coincidences = app.add_subcommand("coincidences", "exhaustive delta coincidence search");
  add_base(coincidences);
  coincidences->add_option("--pmax", pmax, "prime bound (>= 11)");
  coincidences->add_option("--emax", emax, "exponent bound (>= 6)");
  coincidences->callback([&] {
    auto g = parse_base_arg(base_text);
    char* out = nullptr;
    check(ordena_coincidences(g.get(), pmax, emax, &out));
    auto s = take(out);
    emit(as_json, json{{"coincidences", quadruple_rows_json(s.get(), "p1", "e1", "p2", "e2")}},
         s.get());
  });

  auto* families = app.add_subcommand("families", "the five parameterized coincidence families");
  add_base(families);
  families->callback([&] {
    auto g = parse_base_arg(base_text);
    char* out = nullptr;
    check(ordena_families(g.get(), &out));
    auto s = take(out);
    emit(as_json, json{{"families", quadruple_rows_json(s.get(), "p1", "e1", "p2", "e2")}},
         s.get());
  });

  auto* prop1 = app.add_subcommand("solve-prop1", "all solutions of the order equation");
  prop1->add_option("--pmax", pmax, "prime bound (>= 11)");
  prop1->add_option("--emax", emax, "exponent bound (>= 6)");
  prop1->callback([&] {
    char* out = nullptr;
    check(ordena_solve_order_equation(pmax, emax, &out));
    auto s = take(out);
    emit(as_json, json{{"solutions", quadruple_rows_json(s.get(), "p", "alpha", "q", "beta")}},
         s.get());
  });

  auto* generators = app.add_subcommand("generators", "Muller generator set for tau2");
  generators->add_option("--tau2", tau2, "0, 1 or 2");
  generators->add_option("--base", base_text, "derive tau2 from a base instead");
  generators->callback([&] {
    int t = tau2;
    if (t < 0) {
      if (base_text.empty()) throw CLI::ValidationError("generators", "need --tau2 or --base");
      auto g = parse_base_arg(base_text);
      int t1 = 0;
      ordena_base_tau(g.get(), &t1, &t);
    }
    char* out = nullptr;
    check(ordena_generator_set(t, &out));
    auto s = take(out);
    json members = json::array();
    for (const auto& line : lines_of(s.get())) members.push_back(std::stoull(line));
    emit(as_json, json{{"tau2", t}, {"members", members}}, s.get());
  });

  auto* muller = app.add_subcommand("muller", "Muller number classification");
  add_base(muller);
  muller->callback([&] {
    auto g = parse_base_arg(base_text);
    int is_m = 0;
    std::uint64_t witness = 0;
    check(ordena_is_muller(g.get(), &is_m, &witness));
    json j{{"muller", is_m != 0}};
    std::string tsv = is_m ? "true" : "false";
    if (is_m) {
      j["witness"] = witness;
      tsv += "\t" + std::to_string(witness);
    }
    emit(as_json, j, tsv + "\n");
  });

  // ---- m-density layer ----

  auto* mdensity = app.add_subcommand("mdensity", "density of coincidence-free m");
  add_base(mdensity);
  mdensity->callback([&] {
    auto g = parse_base_arg(base_text);
    char* out = nullptr;
    check(ordena_unique_pattern_density(g.get(), &out));
    auto s = take(out);
    emit(as_json, json{{"value", s.get()}}, std::string(s.get()) + "\n");
  });

  auto* scan = app.add_subcommand("scan-bad", "count m <= limit with an active pattern");
  add_base(scan);
  scan->add_option("--limit", limit, "scan bound (<= 10^9)")->required();
  scan->add_option("--threads", threads, "worker count");
  scan->callback([&] {
    auto g = parse_base_arg(base_text);
    std::uint64_t count = 0;
    check(ordena_scan_bad(g.get(), limit, threads, &count));
    emit(as_json, json{{"count", count}}, std::to_string(count) + "\n");
  });

  // ---- sieve layer ----

  auto* count = app.add_subcommand("count", "order-divisibility counting series");
  add_base(count);
  count->add_option("--m,--d", m_text, "modulus")->required();
  count->add_option("--x", x, "upper bound")->required();
  count->add_option("--mode", mode, "N | Nprime | Ndoubleprime | P | Pprime");
  count->add_option("--checkpoints", checkpoints, "geometric grid size");
  count->add_option("--threads", threads, "worker count");
  count->callback([&] {
    auto g = parse_base_arg(base_text);
    char* out = nullptr;
    check(ordena_count_series(g.get(), m_text.c_str(), x, mode.c_str(), checkpoints, threads,
                              &out));
    auto s = take(out);
    if (as_json) {
      json rows = json::array();
      auto all = lines_of(s.get());
      for (std::size_t i = 1; i < all.size(); ++i) {  // skip header
        auto cols = split(all[i], '\t');
        rows.push_back({{"x", std::stoull(cols[0])},
                        {"count", std::stoull(cols[1])},
                        {"predicted_exponent", cols[2]},
                        {"normalized", std::stod(cols[3])}});
      }
      std::cout << json{{"mode", mode}, {"rows", rows}}.dump(2) << "\n";
    } else {
      std::cout << s.get();
    }
  });

  auto verify_emit = [&](const char* report, int passed) {
    if (as_json)
      std::cout << json{{"passed", passed != 0}, {"report", lines_of(report)}}.dump(2) << "\n";
    else
      std::cout << report << (passed ? "pass\n" : "FAIL\n");
    if (!passed) exit_code = 1;
  };

  auto* vl2 = app.add_subcommand("verify-lemma2", "exact unitary-divisor counting identity");
  add_base(vl2);
  vl2->add_option("--m", m_text, "modulus >= 2")->required();
  vl2->add_option("--x", x, "upper bound")->required();
  vl2->add_option("--checkpoints", checkpoints, "geometric grid size");
  vl2->add_option("--threads", threads, "worker count");
  vl2->callback([&] {
    auto g = parse_base_arg(base_text);
    char* report = nullptr;
    int passed = 0;
    check(ordena_verify_lemma2(g.get(), m_text.c_str(), x, checkpoints, threads, &report,
                               &passed));
    auto s = take(report);
    verify_emit(s.get(), passed);
  });

  auto* vie = app.add_subcommand("verify-prime-ie", "prime inclusion-exclusion identity");
  add_base(vie);
  vie->add_option("--d", d_text, "modulus >= 2")->required();
  vie->add_option("--x", x, "upper bound")->required();
  vie->add_option("--checkpoints", checkpoints, "geometric grid size");
  vie->add_option("--threads", threads, "worker count");
  vie->callback([&] {
    auto g = parse_base_arg(base_text);
    char* report = nullptr;
    int passed = 0;
    check(ordena_verify_prime_ie(g.get(), d_text.c_str(), x, checkpoints, threads, &report,
                                 &passed));
    auto s = take(report);
    verify_emit(s.get(), passed);
  });

  auto* vmul = app.add_subcommand("verify-multiplicative", "complete multiplicativity check");
  add_base(vmul);
  vmul->add_option("--m", m_text, "modulus >= 2")->required();
  vmul->add_option("--x", x, "product bound")->required();
  vmul->add_option("--trials", trials, "random pair count");
  vmul->add_option("--seed", seed, "RNG seed");
  vmul->callback([&] {
    auto g = parse_base_arg(base_text);
    char* report = nullptr;
    int passed = 0;
    check(ordena_verify_multiplicative(g.get(), m_text.c_str(), x, trials, seed, &report,
                                       &passed));
    auto s = take(report);
    verify_emit(s.get(), passed);
  });

  auto* vcon = app.add_subcommand("verify-congruence", "congruence solvability characterization");
  add_base(vcon);
  vcon->add_option("--d", d_text, "squarefree modulus >= 2")->required();
  vcon->add_option("--x", x, "prime bound")->required();
  vcon->callback([&] {
    auto g = parse_base_arg(base_text);
    char* report = nullptr;
    int passed = 0;
    check(ordena_verify_congruence(g.get(), d_text.c_str(), x, &report, &passed));
    auto s = take(report);
    verify_emit(s.get(), passed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CApiError& e) {
    std::cerr << "error: " << ordena_status_name(e.status);
    if (!e.detail.empty()) std::cerr << ": " << e.detail;
    std::cerr << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
