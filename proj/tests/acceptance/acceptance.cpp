// One PASS/FAIL line per acceptance criterion. Every check uses seed 1.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "linematch/commands.hpp"
#include "linematch/experiment.hpp"
#include "linematch/generators.hpp"
#include "linematch/instance.hpp"
#include "linematch/reductions.hpp"
#include "linematch/verify.hpp"

using namespace linematch;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = Outcome{false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("AC%d %s  %s  (%.2fs, limit %.0fs)  %s%s\n", id, pass ? "PASS" : "FAIL", title, secs, limit_seconds,
              out.detail.c_str(), in_time ? "" : "  [over time limit]");
  std::fflush(stdout);
}

Outcome from_report(const CheckReport& r) {
  std::ostringstream os;
  os << r.name << ": " << r.trials << " comparisons, " << r.violations << " violations, worst margin "
     << r.worst_margin;
  for (std::size_t i = 0; i < std::min<std::size_t>(r.details.size(), 3); ++i) os << "; " << r.details[i];
  return Outcome{r.passed() && r.trials > 0, os.str()};
}

Instance colocated_instance(std::mt19937_64& g) {
  const std::size_t n = 4 + g() % 29;
  std::vector<double> s;
  while (s.size() < n) s.push_back(static_cast<double>(g() % (n / 2 + 1)) * 2.0);
  std::sort(s.begin(), s.end());
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(s[g() % n]);
  return Instance{s, r};
}

Instance off_server_instance(std::mt19937_64& g) {
  const std::size_t n = 3 + g() % 30;
  std::uniform_real_distribution<double> gap(1.0, 8.0);
  std::vector<double> s{0.0};
  while (s.size() < n) s.push_back(s.back() + gap(g));
  std::uniform_real_distribution<double> where(-5.0, s.back() + 5.0);
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(where(g));
  return Instance{s, r};
}

}  // namespace

int main() {
  criterion(1, "Doubled Harmonic counterexample", 1.0, [] {
    const DhCounterexample c = dh_counterexample_numbers();
    std::ostringstream os;
    os.precision(17);
    os << "Pr[r3->s3|s1]=" << c.p_s3_given_s1 << " Pr[r3->s3|s2]=" << c.p_s3_given_s2
       << " adjustment Pr[r2->s3]=" << c.adjustment_p_right << " leaves=" << c.leaves;
    const bool ok = c.p_s3_given_s1 == 1.0 && c.p_s3_given_s2 < 1.0 && c.adjustment_p_right == 4.0 / 11.0 &&
                    c.adjustment_right_mass == 4.0 / 11.0;
    return Outcome{ok, os.str()};
  });

  criterion(2, "monotonicity over 500 reachable states, grid 1000, slack 1e-10", 120.0,
            [] { return from_report(check_monotonicity_states(500, kSeed, 1000, 32)); });

  criterion(3, "potential non-increasing over 10^4 runs, slack 1e-9", 300.0,
            [] { return from_report(check_potential_runs(10000, kSeed, 32)); });

  criterion(4, "matching oracles, 200 cases each, tolerance 1e-12", 30.0,
            [] { return from_report(check_matching_oracles(200, kSeed)); });

  criterion(5, "N facts, 10^5 triples per fact, slack 1e-12", 10.0,
            [] { return from_report(check_n_facts(100000, kSeed)); });

  criterion(6, "distribution consistency, 100 cases x 10^5 samples, 3 sigma", 120.0,
            [] { return from_report(check_distribution_consistency(100, 100000, kSeed, 3.0)); });

  criterion(7, "MDH scaling on geometric and adversary, n=16..256, 50 trials", 600.0, [] {
    ExperimentConfig cfg;
    cfg.generators = {GeneratorKind::GeometricGaps, GeneratorKind::HarmonicAdversary};
    cfg.sizes = {16, 32, 64, 128, 256};
    cfg.trials = 50;
    cfg.seed = kSeed;
    cfg.algorithms = {AlgorithmKind::ModifiedDoubledHarmonic};
    const Report r = run_experiment(cfg);
    std::map<std::string, std::map<std::size_t, double>> mean;
    bool ok = true;
    for (const Aggregate& a : r.aggregates) {
      mean[a.generator][a.n] = a.mean_ratio;
      ok = ok && std::isfinite(a.mean_ratio) && std::isfinite(a.max_ratio);
    }
    std::ostringstream os;
    os.precision(4);
    for (const auto& [gen, by_n] : mean) {
      const double growth = by_n.at(256) / by_n.at(16);
      ok = ok && growth <= 4.0;
      os << gen << ": ratio(16)=" << by_n.at(16) << " ratio(256)=" << by_n.at(256) << " growth=" << growth << "; ";
    }
    for (const SlopeFit& f : r.fits) os << f.generator << " slope=" << f.slope << " ";
    return Outcome{ok, os.str()};
  });

  criterion(8, "reduction inequalities on 200 instances each", 60.0, [] {
    std::mt19937_64 g(kSeed);
    std::size_t bad = 0, runs = 0;
    for (int i = 0; i < 200; ++i) {
      const Instance inst = colocated_instance(g);
      for (auto k : {AlgorithmKind::Greedy, AlgorithmKind::Harmonic, AlgorithmKind::ModifiedDoubledHarmonic}) {
        const PerturbationAccounting acc = account_perturbation(inst, k, kSeed + i);
        ++runs;
        if (!acc.online_holds() || !acc.opt_holds()) ++bad;
      }
    }
    for (int i = 0; i < 200; ++i) {
      const Instance inst = off_server_instance(g);
      for (auto k : {AlgorithmKind::Greedy, AlgorithmKind::Harmonic, AlgorithmKind::ModifiedDoubledHarmonic}) {
        const SnapAccounting acc = account_snap(inst, k, kSeed + i);
        ++runs;
        if (!acc.online_holds() || !acc.opt_holds()) ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(runs) + " runs, " + std::to_string(bad) + " violations"};
  });

  criterion(9, "run/sweep/verify byte-identical on repeat", 120.0, [] {
    const auto dir = std::filesystem::temp_directory_path() / "linematch_acceptance";
    std::filesystem::create_directories(dir);
    const auto inst = dir / "instance.json";
    const auto cfg = dir / "sweep.json";
    std::ofstream(inst, std::ios::binary) << instance_to_json(generate_instance(GeneratorKind::Uniform, 32, kSeed));
    std::ofstream(cfg, std::ios::binary)
        << "{\"generators\": [\"geometric\", \"adversary\"], \"sizes\": [16, 32], \"trials\": 5, \"seed\": 1,"
           " \"algorithms\": [\"dh\", \"mdh\"]}";
    bool ok = true;
    for (const char* algo : {"greedy", "harmonic", "dh", "mdh"}) {
      for (const char* format : {"json", "csv"}) {
        RunCommand rc;
        rc.instance_path = inst.string();
        rc.algorithm = parse_algorithm(algo);
        rc.seed = kSeed;
        rc.format = format;
        ok = ok && run_command(rc).text == run_command(rc).text && !run_command(rc).text.empty();
      }
    }
    SweepCommand sc;
    sc.config_path = cfg.string();
    const CommandOutput s = sweep_command(sc);
    ok = ok && s.exit_code == 0 && s.text == sweep_command(sc).text;
    VerifyConfig vc;
    vc.monotonicity_states = 10;
    vc.potential_runs = 50;
    vc.n_fact_samples = 2000;
    vc.distribution_cases = 3;
    vc.distribution_samples = 2000;
    const CommandOutput v = verify_command(vc, "json");
    ok = ok && v.text == verify_command(vc, "json").text;
    return Outcome{ok, "8 run variants, 1 sweep, 1 verify compared"};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
