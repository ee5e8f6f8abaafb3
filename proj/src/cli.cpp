#include "fflab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "fflab/counting.hpp"
#include "fflab/energy.hpp"
#include "fflab/parallel.hpp"
#include "fflab/report.hpp"
#include "fflab/rmf.hpp"
#include "fflab/shiu.hpp"

namespace fflab::cli {

namespace {

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
};

int threads_of(const RunConfig& cfg) {
  return cfg.threads <= 0 ? default_threads() : cfg.threads;
}

const Field& field_of(const RunConfig& cfg) { return Field::get_by_order(cfg.q); }

Poly parse_or(const std::string& text, const Field& f, const Poly& fallback) {
  if (text.empty()) return fallback;
  Poly p = Poly::parse(text);
  if (p.field() != f) throw std::invalid_argument("polynomial literal is over the wrong field");
  return p;
}

PolySet build_family_set(const RunConfig& cfg, const StatsCache& cache) {
  const Field& f = cache.field();
  Family fam = family_from_name(cfg.family);
  switch (fam) {
    case Family::kInterval: {
      if (cfg.h < 0) throw std::invalid_argument("interval family needs --h");
      Poly center = parse_or(cfg.center, f, Poly::t_power(f, cfg.N));
      if (center.degree() != cfg.N) throw std::invalid_argument("center degree must equal N");
      return build_interval_set(center, cfg.h, cfg.budget);
    }
    case Family::kKprimeP:
    case Family::kKprimeS:
    case Family::kKprimeD: {
      if (cfg.k < 0) throw std::invalid_argument("kprime family needs --k");
      char variant = fam == Family::kKprimeP ? 'P' : (fam == Family::kKprimeS ? 'S' : 'D');
      return build_kprime(cache, cfg.N, cfg.k, variant);
    }
    case Family::kShiftedPrime: {
      Poly shift = parse_or(cfg.shift, f, Poly::one(f));
      return build_shifted_primes(cache, cfg.N, shift);
    }
    case Family::kRough: {
      if (cfg.z < 0) throw std::invalid_argument("rough family needs --z");
      return build_rough(cache, cfg.N, cfg.z);
    }
    case Family::kCustom: break;
  }
  throw std::invalid_argument("family " + cfg.family + " cannot be built from CLI parameters");
}

// ---- verify ----------------------------------------------------------------

void verify_prime_counts(const StatsCache& cache, SuiteResult& out) {
  const Field& f = cache.field();
  for (int n = 1; n <= cache.max_degree(); ++n) {
    std::uint64_t formula = pi_q(f, n);
    ++out.checked;
    double qn = std::pow(static_cast<double>(f.q()), n);
    double qhalf = std::pow(static_cast<double>(f.q()), n / 2.0);
    bool ok = formula == cache.sieve().prime_count(n) &&
              static_cast<double>(formula) <= qn / n &&
              static_cast<double>(formula) >= qn / n - 2 * qhalf / n;
    if (!ok) ++out.failures;
  }
}

void verify_recurrence(const StatsCache& cache,
                       const SmoothRoughTable& table, SuiteResult& out) {
  const Field& f = cache.field();
  for (int n = 0; n <= cache.max_degree(); ++n) {
    for (int d = 1; d <= cache.max_degree() + 2; ++d) {
      ++out.checked;
      if (psi_recurrence(f, n, d) != table.psi(n, std::min(d, cache.max_degree()))) {
        ++out.failures;
      }
    }
  }
}

void verify_interval_divisors(const StatsCache& cache,
                              SuiteResult& out) {
  const Field& f = cache.field();
  int max_n = std::min(cache.max_degree(), 5);
  for (int n = 2; n <= max_n; ++n) {
    for (int h = 0; h <= n - 1; ++h) {
      std::uint64_t block = checked_pow(f.q(), h + 1);
      for (std::uint64_t base = 0; base < checked_pow(f.q(), n); base += block) {
        Interval iv(Poly::monic_from_rank(f, n, base), h);
        for (int dg = 0; dg <= n - 1; ++dg) {
          std::uint64_t gcount = checked_pow(f.q(), dg);
          for (std::uint64_t gr = 0; gr < gcount; ++gr) {
            Poly g = Poly::monic_from_rank(f, dg, gr);
            std::uint64_t brute = 0;
            iv.for_each_member([&](const Poly& m) {
              if (m.divisible_by(g)) ++brute;
            });
            ++out.checked;
            std::uint64_t counted = iv.divisor_count(g);
            bool ok = counted == brute;
            if (dg <= h + 1) ok = ok && counted == checked_pow(f.q(), h - dg + 1);
            if (!ok) ++out.failures;
          }
        }
      }
    }
  }
}

void verify_hildebrand(const StatsCache& cache, SuiteResult& out) {
  const Field& f = cache.field();
  int max_n = std::min(cache.max_degree(), 5);
  for (int n = 1; n <= max_n; ++n) {
    for (int h = 0; h <= n - 1; ++h) {
      std::uint64_t block = checked_pow(f.q(), h + 1);
      for (std::uint64_t base = 0; base < checked_pow(f.q(), n); base += block) {
        Poly center = Poly::monic_from_rank(f, n, base);
        for (int d = 0; d <= n + 1; ++d) {
          ++out.checked;
          if (!check_hildebrand(cache, h, d, center).holds) ++out.failures;
        }
      }
    }
  }
}

void verify_chebyshev(const StatsCache& cache, SuiteResult& out) {
  const Field& f = cache.field();
  int max_n = std::min(cache.max_degree(), 5);
  for (int n = 1; n <= max_n; ++n) {
    for (int h = 0; h <= n - 1; ++h) {
      std::uint64_t block = checked_pow(f.q(), h + 1);
      for (std::uint64_t base = 0; base < checked_pow(f.q(), n); base += block) {
        Poly center = Poly::monic_from_rank(f, n, base);
        for (int z = 1; 2 * z <= h + 1; ++z) {
          ++out.checked;
          if (!check_chebyshev(cache, h, z, center).holds) ++out.failures;
        }
      }
    }
  }
}

void verify_energy_formula(const RunConfig& cfg, const StatsCache& cache, SuiteResult& out,
                           int threads) {
  const Field& f = cache.field();
  for (int n = 1; n <= cache.max_degree(); ++n) {
    std::uint64_t size = checked_pow(f.q(), n);
    if (size * size / 2 > (std::uint64_t{1} << 22)) break;
    std::vector<Poly> members;
    for_each_monic(f, n, [&](const Poly& p) { members.push_back(p); });
    PolySet set = make_custom_set(f, std::move(members));
    EnergyReport rep = mult_energy(set, threads, cfg.budget);
    ++out.checked;
    if (rep.off_diagonal != offdiag_MN_formula(f, n)) ++out.failures;
    ++out.checked;
    if (gcd_parametrized_offdiag(set, threads, cfg.budget) != rep.off_diagonal) ++out.failures;
  }
}

void verify_interval_energy(const RunConfig& cfg, const StatsCache& cache, SuiteResult& out,
                            int threads) {
  const Field& f = cache.field();
  int max_n = std::min(cache.max_degree(), 6);
  for (int n = 2; n <= max_n; ++n) {
    for (int h = 1; h <= n - 1; ++h) {
      std::uint64_t block = checked_pow(f.q(), h + 1);
      if (block * block / 2 > (std::uint64_t{1} << 22)) continue;  // keep verify snappy
      for (std::uint64_t base = 0; base < checked_pow(f.q(), n); base += block) {
        Interval iv(Poly::monic_from_rank(f, n, base), h);
        ++out.checked;
        if (!check_short_interval_energy(iv, threads, cfg.budget).holds) ++out.failures;
      }
    }
  }
}

void verify_rough_window(const StatsCache& cache, SuiteResult& out) {
  for (int n = 2; n <= cache.max_degree(); ++n) {
    for (int z = 1; 2 * z <= n; ++z) {
      ++out.checked;
      if (!rough_bounds_check(cache, n, z).holds) ++out.failures;
    }
  }
}

void verify_rankin(const StatsCache& cache, SuiteResult& out) {
  for (int n = 1; n <= cache.max_degree(); ++n) {
    for (int d = 1; d <= n; ++d) {
      ++out.checked;
      if (!rankin_bound_check(cache, n, d).holds) ++out.failures;
    }
  }
}

int run_verify(const RunConfig& cfg) {
  const Field& f = field_of(cfg);
  const int threads = threads_of(cfg);
  StatsCache cache(f, cfg.N, cfg.budget);
  SmoothRoughTable table(cache, cfg.N);

  std::vector<SuiteResult> suites;
  auto run = [&](const std::string& name, auto&& fn) {
    SuiteResult r;
    r.name = name;
    fn(r);
    suites.push_back(r);
  };
  run("prime-counts", [&](SuiteResult& r) { verify_prime_counts(cache, r); });
  run("smooth-recurrence", [&](SuiteResult& r) { verify_recurrence(cache, table, r); });
  run("interval-divisors", [&](SuiteResult& r) { verify_interval_divisors(cache, r); });
  run("hildebrand", [&](SuiteResult& r) { verify_hildebrand(cache, r); });
  run("chebyshev", [&](SuiteResult& r) { verify_chebyshev(cache, r); });
  run("energy-closed-form",
      [&](SuiteResult& r) { verify_energy_formula(cfg, cache, r, threads); });
  run("interval-energy",
      [&](SuiteResult& r) { verify_interval_energy(cfg, cache, r, threads); });
  run("rough-window", [&](SuiteResult& r) { verify_rough_window(cache, r); });
  run("rankin", [&](SuiteResult& r) { verify_rankin(cache, r); });

  bool all_hold = true;
  nlohmann::json suites_json = nlohmann::json::array();
  for (const auto& s : suites) {
    all_hold = all_hold && s.failures == 0;
    suites_json.push_back(
        {{"name", s.name}, {"checked", s.checked}, {"failures", s.failures},
         {"holds", s.failures == 0}});
    std::printf("%-20s checked=%8llu failures=%llu\n", s.name.c_str(),
                static_cast<unsigned long long>(s.checked),
                static_cast<unsigned long long>(s.failures));
  }
  nlohmann::json verdict{{"command", "verify"},
                         {"q", cfg.q},
                         {"N", cfg.N},
                         {"suites", suites_json},
                         {"allHold", all_hold}};
  std::string path = cfg.out.empty() ? "fflab-verify.json" : cfg.out;
  write_file(path, verdict.dump(2) + "\n");
  std::printf("verdict: %s (%s)\n", all_hold ? "all hold" : "FAILURES", path.c_str());
  return all_hold ? 0 : 1;
}

// ---- count -----------------------------------------------------------------

int run_count(const RunConfig& cfg) {
  const Field& f = field_of(cfg);
  StatsCache cache(f, cfg.N, cfg.budget);
  std::string csv;
  bool all_hold = true;
  char buf[256];

  Poly center = parse_or(cfg.center, f, Poly::t_power(f, cfg.N));
  if (center.degree() != cfg.N) throw std::invalid_argument("center degree must equal N");

  if (cfg.kind == "smooth") {
    csv = "q,N,h,d,lhs,rhs,holds\n";
    for (int h = 0; h <= cfg.N - 1; ++h) {
      for (int d = 0; d <= cfg.N; ++d) {
        HildebrandCheck c = check_hildebrand(cache, h, d, center);
        all_hold = all_hold && c.holds;
        std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%d,%llu,%llu,%d\n",
                      static_cast<unsigned long long>(cfg.q), cfg.N, h, d,
                      static_cast<unsigned long long>(c.lhs),
                      static_cast<unsigned long long>(c.rhs), c.holds ? 1 : 0);
        csv += buf;
      }
    }
  } else if (cfg.kind == "rough") {
    csv = "q,N,h,z,lhs,rhs,holds\n";
    for (int h = 0; h <= cfg.N - 1; ++h) {
      for (int z = 1; 2 * z <= h + 1; ++z) {
        ChebyshevCheck c = check_chebyshev(cache, h, z, center);
        all_hold = all_hold && c.holds;
        std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%d,%llu,%s,%d\n",
                      static_cast<unsigned long long>(cfg.q), cfg.N, h, z,
                      static_cast<unsigned long long>(c.count),
                      format_double(static_cast<double>(c.bound_num) / c.bound_den).c_str(),
                      c.holds ? 1 : 0);
        csv += buf;
      }
    }
  } else if (cfg.kind == "window") {
    csv = "q,N,z,count,lower,upper,holds\n";
    for (int z = 1; 2 * z <= cfg.N; ++z) {
      RoughBoundsCheck c = rough_bounds_check(cache, cfg.N, z);
      all_hold = all_hold && c.holds;
      std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%llu,%s,%s,%d\n",
                    static_cast<unsigned long long>(cfg.q), cfg.N, z,
                    static_cast<unsigned long long>(c.count),
                    format_double(static_cast<double>(c.lower_num) / c.lower_den).c_str(),
                    format_double(static_cast<double>(c.upper_num) / c.upper_den).c_str(),
                    c.holds ? 1 : 0);
      csv += buf;
    }
  } else if (cfg.kind == "rankin") {
    csv = "q,N,d,lhs,rhs,holds\n";
    for (int d = 1; d <= cfg.N; ++d) {
      RankinCheck c = rankin_bound_check(cache, cfg.N, d);
      all_hold = all_hold && c.holds;
      std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%llu,%s,%d\n",
                    static_cast<unsigned long long>(cfg.q), cfg.N, d,
                    static_cast<unsigned long long>(c.lhs), format_double(c.rhs).c_str(),
                    c.holds ? 1 : 0);
      csv += buf;
    }
  } else if (cfg.kind == "shiu") {
    MultiplicativeRule rule = rule_from_name(cfg.rule);
    csv = "q,N,h,rule,exactSum,bound,ratio\n";
    for (int h = 0; h <= cfg.N - 1; ++h) {
      Interval iv(center, h);
      double exact = interval_mult_sum(rule, iv, cache, threads_of(cfg), cfg.budget);
      ShiuBound bound = shiu_bound(rule, cache, cfg.N, h, cfg.beta);
      if (!bound.applicable) continue;
      std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%s,%s,%s,%s\n",
                    static_cast<unsigned long long>(cfg.q), cfg.N, h, rule.name.c_str(),
                    format_double(exact).c_str(), format_double(bound.value).c_str(),
                    format_double(exact / bound.value).c_str());
      csv += buf;
    }
  } else if (cfg.kind == "hardy") {
    csv = "q,N,h,epsilon,count,fraction,applicable\n";
    for (int h = 0; h <= cfg.N - 1; ++h) {
      Interval iv(center, h);
      HardyRamanujanCount c = hardy_ramanujan_count(iv, cfg.epsilon, cache);
      std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%s,%llu,%s,%d\n",
                    static_cast<unsigned long long>(cfg.q), cfg.N, h,
                    format_double(cfg.epsilon).c_str(),
                    static_cast<unsigned long long>(c.count),
                    format_double(c.fraction).c_str(), c.applicable ? 1 : 0);
      csv += buf;
    }
  } else {
    throw std::invalid_argument("unknown count kind: " + cfg.kind);
  }

  if (cfg.out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file(cfg.out, csv);
    std::printf("wrote %s\n", cfg.out.c_str());
  }
  return all_hold ? 0 : 1;
}

// ---- energy ----------------------------------------------------------------

int run_energy(const RunConfig& cfg) {
  const Field& f = field_of(cfg);
  StatsCache cache(f, cfg.N, cfg.budget);
  PolySet set = build_family_set(cfg, cache);
  EnergyReport rep = mult_energy(set, threads_of(cfg), cfg.budget);
  nlohmann::json doc = energy_report_json(set, rep);

  bool cross_ok = true;
  if (set.size() <= 5000) {
    std::uint64_t recount = gcd_parametrized_offdiag(set, threads_of(cfg), cfg.budget);
    doc["gcdOffDiagonal"] = recount;
    cross_ok = recount == rep.off_diagonal;
    doc["crossCheck"] = cross_ok;
  }

  std::string text;
  if (cfg.format == "csv") {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "tag,q,N,setSize,total,diagonal,offDiagonal,m4,sizeCondition,"
                  "regimeWarning\n%s,%llu,%d,%llu,%llu,%llu,%llu,%s,%d,%d\n",
                  family_name(set.tag).c_str(), static_cast<unsigned long long>(cfg.q),
                  set.N, static_cast<unsigned long long>(rep.set_size),
                  static_cast<unsigned long long>(rep.total),
                  static_cast<unsigned long long>(rep.diagonal),
                  static_cast<unsigned long long>(rep.off_diagonal),
                  format_double(rep.m4()).c_str(), size_condition_satisfied(set) ? 1 : 0,
                  set.regime_warning ? 1 : 0);
    text = buf;
  } else {
    text = doc.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(cfg.out, text);
    std::printf("wrote %s\n", cfg.out.c_str());
  }
  std::printf("family=%s |S|=%llu offDiagonal=%llu m4=%s%s\n", family_name(set.tag).c_str(),
              static_cast<unsigned long long>(set.size()),
              static_cast<unsigned long long>(rep.off_diagonal),
              format_double(rep.m4()).c_str(),
              set.regime_warning ? " [outside theorem regime]" : "");
  return cross_ok ? 0 : 1;
}

// ---- simulate ----------------------------------------------------------------

int run_simulate(const RunConfig& cfg) {
  if (!cfg.seed_set) throw std::invalid_argument("simulate requires an explicit --seed");
  const Field& f = field_of(cfg);
  StatsCache cache(f, cfg.N, cfg.budget);
  PolySet set = build_family_set(cfg, cache);
  EnergyReport energy = mult_energy(set, threads_of(cfg), cfg.budget);
  CltReport clt = monte_carlo(set, cfg.trials, cfg.seed, cache, threads_of(cfg), cfg.budget);
  ConditionReport conditions = theorem_conditions_report(set, set, cache, threads_of(cfg));

  nlohmann::json doc{{"schema", "simulate/1"},
                     {"energy", energy_report_json(set, energy)},
                     {"clt", clt_report_json(clt)},
                     {"conditions", condition_report_json(conditions)}};
  std::string text = doc.dump(2) + "\n";
  if (!cfg.out.empty()) {
    write_file(cfg.out, text);
    std::printf("wrote %s\n", cfg.out.c_str());
  } else {
    std::fputs(text.c_str(), stdout);
  }
  if (!cfg.trial_csv.empty()) {
    write_file(cfg.trial_csv, trial_csv(clt));
    std::printf("wrote %s\n", cfg.trial_csv.c_str());
  }
  std::printf("m2=%.6f (se %.6f)  m4=%.6f vs exact %.6f (se %.6f)  ks=(%.5f, %.5f)\n",
              clt.m2_hat, clt.se_m2, clt.m4_hat, clt.m4_exact, clt.se_m4, clt.ks_re,
              clt.ks_im);
  std::printf("gates: m2 %s, m4 %s, ks %s\n", clt.m2_gate ? "pass" : "FAIL",
              clt.m4_gate ? "pass" : "FAIL", clt.ks_gate ? "pass" : "fail(informational)");
  return (clt.m2_gate && clt.m4_gate) ? 0 : 1;
}

// ---- sweep -----------------------------------------------------------------

int run_sweep(const RunConfig& cfg) {
  if (!cfg.ladder.is_array() || cfg.ladder.empty()) {
    throw std::invalid_argument("sweep needs a non-empty ladder array in the config");
  }
  struct Row {
    RunConfig point;
    PolySet set;
    EnergyReport rep;
  };
  std::vector<Row> rows;
  for (const auto& entry : cfg.ladder) {
    RunConfig point = cfg;
    apply_json_config(point, entry);
    const Field& f = field_of(point);
    StatsCache cache(f, point.N, point.budget);
    PolySet set = build_family_set(point, cache);
    EnergyReport rep = mult_energy(set, threads_of(point), point.budget);
    rows.push_back({point, std::move(set), rep});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    auto key = [](const Row& r) {
      return std::make_tuple(r.point.q, r.point.N, r.point.family, r.point.h, r.point.k,
                             r.point.z);
    };
    return key(a) < key(b);
  });

  std::string csv =
      "family,q,N,h,k,z,setSize,total,offDiagonal,m4Exact,offRatio,sizeFloorMargin,"
      "sizeCondition,regimeWarning\n";
  char buf[512];
  for (const auto& row : rows) {
    double off_ratio = static_cast<double>(row.rep.off_diagonal) /
                       (static_cast<double>(row.set.size()) * row.set.size());
    double margin = static_cast<double>(row.set.size()) / size_floor(*row.set.field, row.set.N);
    std::snprintf(buf, sizeof(buf), "%s,%llu,%d,%d,%d,%d,%llu,%llu,%llu,%s,%s,%s,%d,%d\n",
                  row.point.family.c_str(), static_cast<unsigned long long>(row.point.q),
                  row.point.N, row.point.h, row.point.k, row.point.z,
                  static_cast<unsigned long long>(row.set.size()),
                  static_cast<unsigned long long>(row.rep.total),
                  static_cast<unsigned long long>(row.rep.off_diagonal),
                  format_double(row.rep.m4()).c_str(), format_double(off_ratio).c_str(),
                  format_double(margin).c_str(), size_condition_satisfied(row.set) ? 1 : 0,
                  row.set.regime_warning ? 1 : 0);
    csv += buf;
  }
  if (cfg.out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file(cfg.out, csv);
    std::printf("wrote %s (%zu rows)\n", cfg.out.c_str(), rows.size());
  }
  return 0;
}

}  // namespace

void apply_json_config(RunConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") cfg.command = value.get<std::string>();
    else if (key == "q") cfg.q = value.get<std::uint64_t>();
    else if (key == "N") cfg.N = value.get<int>();
    else if (key == "h") cfg.h = value.get<int>();
    else if (key == "k") cfg.k = value.get<int>();
    else if (key == "z") cfg.z = value.get<int>();
    else if (key == "family") cfg.family = value.get<std::string>();
    else if (key == "shift") cfg.shift = value.get<std::string>();
    else if (key == "center") cfg.center = value.get<std::string>();
    else if (key == "kind") cfg.kind = value.get<std::string>();
    else if (key == "rule") cfg.rule = value.get<std::string>();
    else if (key == "epsilon") cfg.epsilon = value.get<double>();
    else if (key == "beta") cfg.beta = value.get<double>();
    else if (key == "trials") cfg.trials = value.get<std::uint64_t>();
    else if (key == "seed") { cfg.seed = value.get<std::uint64_t>(); cfg.seed_set = true; }
    else if (key == "budget") cfg.budget = value.get<std::uint64_t>();
    else if (key == "threads") cfg.threads = value.get<int>();
    else if (key == "out") cfg.out = value.get<std::string>();
    else if (key == "trialCsv") cfg.trial_csv = value.get<std::string>();
    else if (key == "format") cfg.format = value.get<std::string>();
    else if (key == "ladder") cfg.ladder = value;
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

int run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "count") return run_count(cfg);
    if (cfg.command == "energy") return run_energy(cfg);
    if (cfg.command == "simulate") return run_simulate(cfg);
    if (cfg.command == "sweep") return run_sweep(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
  } catch (const budget_error& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }
}

}  // namespace fflab::cli
