// Command-line front end: run scenarios, print rate certificates, verify
// trajectories, and compute metastability bounds.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "altfix/iteration.hpp"
#include "altfix/rate_calculus.hpp"
#include "altfix/scenario.hpp"
#include "altfix/verification.hpp"

namespace fs = std::filesystem;
using namespace altfix;

namespace {

std::string scenario_dir() {
  if (const char* env = std::getenv("ALTFIX_SCENARIO_DIR")) return env;
  return ALTFIX_SCENARIO_FALLBACK;
}

// Accepts a path, a file name in the scenario directory, or a bare id.
std::string resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  const fs::path dir = scenario_dir();
  for (const fs::path cand : {dir / arg, dir / (arg + ".json")})
    if (fs::exists(cand)) return cand.string();
  throw std::runtime_error("scenario '" + arg + "' not found (searched " +
                           dir.string() + ")");
}

std::vector<std::string> bundled_scenarios() {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(scenario_dir()))
    if (entry.path().extension() == ".json")
      out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  if (out.empty())
    throw std::runtime_error("no scenarios in " + scenario_dir());
  return out;
}

SequenceSpec parse_sequence_arg(const std::string& text) {
  if (text == "zero") return zero_seq();
  std::stringstream ss(text);
  std::string kind;
  std::getline(ss, kind, ':');
  if (kind == "geom") {
    std::string c, q;
    if (!std::getline(ss, c, ':') || !std::getline(ss, q))
      throw CLI::ValidationError("sequence", "expected geom:c:q");
    return geometric_seq(parse_rational(c), parse_rational(q));
  }
  if (kind == "list") {
    std::string rest, item;
    std::getline(ss, rest);
    std::vector<Rational> values;
    std::stringstream items(rest);
    while (std::getline(items, item, ','))
      values.push_back(parse_rational(item));
    return finite_list_seq(std::move(values));
  }
  throw CLI::ValidationError("sequence",
                             "expected zero, geom:c:q or list:a,b,...");
}

Counterfunction parse_cf_arg(const std::string& text) {
  if (text == "identity") return identity_cf();
  std::stringstream ss(text);
  std::string kind;
  std::getline(ss, kind, ':');
  if (kind == "constant") {
    std::string c;
    std::getline(ss, c);
    return constant_cf(BigInt(c));
  }
  if (kind == "affine") {
    std::string a, b;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b))
      throw CLI::ValidationError("g", "expected affine:a:b");
    return affine_cf(BigInt(a), BigInt(b));
  }
  throw CLI::ValidationError("g",
                             "expected identity, constant:c or affine:a:b");
}

void print_bound(const std::string& label, const Bound& bound) {
  std::cout << label << bound.value.str();
  if (bound.form) std::cout << "  = " << pow_form_to_string(*bound.form);
  std::cout << "\n";
}

struct RatesArgs {
  std::string fn;
  std::string eps = "1", b = "1", B = "0", eps_prime = "1";
  std::string k = "0", n = "0", m = "0", r = "0", N = "0";
  std::string eps_seq = "zero", delta_seq = "zero";
  std::string g = "identity";
  std::string tb = "constant:1";
  std::string scenario;
  std::string strategy = "closed";
};

int cmd_rates(const RatesArgs& a) {
  ErrorSchedule schedule{parse_sequence_arg(a.eps_seq),
                         parse_sequence_arg(a.delta_seq)};
  const ScheduleModuli moduli = schedule_moduli(schedule);
  const Rational B = a.B == "0" ? moduli.B : parse_rational(a.B);

  Modulus tb = constant_modulus(1);
  std::optional<Scenario> sc;
  if (!a.scenario.empty()) {
    sc = load_scenario(resolve_scenario(a.scenario));
    if (sc->region) tb = region_cells_modulus(sc->space, *sc->region);
  } else if (a.tb.rfind("constant:", 0) == 0) {
    tb = constant_modulus(BigInt(a.tb.substr(9)));
  } else {
    throw CLI::ValidationError("tb", "expected constant:M or --scenario");
  }
  const Rational b = sc ? sc->b_distance() : parse_rational(a.b);

  if (a.fn == "phi") {
    print_bound("", phi(parse_rational(a.eps), parse_rational(a.b)));
  } else if (a.fn == "phi-prime") {
    print_bound("", phi_prime(parse_rational(a.eps), b, B, moduli.alpha));
  } else if (a.fn == "phi-double-prime") {
    print_bound("",
                phi_double_prime(parse_rational(a.eps), b, B, moduli.alpha));
  } else if (a.fn == "phi-beta") {
    print_bound("", phi_beta(parse_rational(a.eps), moduli.beta, b, B,
                             moduli.alpha));
  } else if (a.fn == "phi-hat") {
    const PhiBetaCurve curve{moduli.beta, b, B, moduli.alpha};
    print_bound("", phi_hat(BigInt(a.k), BigInt(a.N), curve));
  } else if (a.fn == "chi-fejer") {
    std::cout << chi_fejer(BigInt(a.n), BigInt(a.m), BigInt(a.r)).str()
              << "\n";
  } else if (a.fn == "chi-m") {
    std::cout << chi_M(parse_cf_arg(a.g), BigInt(a.n), BigInt(a.k)).str()
              << "\n";
  } else if (a.fn == "monotone-cauchy-bound") {
    std::cout << monotone_cauchy_bound(parse_rational(a.b),
                                       parse_rational(a.eps_prime),
                                       BigInt(a.k))
                     .str()
              << "\n";
  } else if (a.fn == "psi-hat") {
    const PsiHatStrategy strat = a.strategy == "literal"
                                     ? PsiHatStrategy::Literal
                                     : PsiHatStrategy::ClosedForm;
    const RateCertificate cert = psi_hat(BigInt(a.k), parse_cf_arg(a.g), tb,
                                         moduli.alpha, moduli.beta, b, B,
                                         strat);
    for (const auto& [key, value] : cert.inputs)
      std::cout << "# " << key << " = " << value << "\n";
    print_bound("", cert.bound);
  } else {
    throw CLI::ValidationError("function", "unknown rate '" + a.fn + "'");
  }
  return 0;
}

int cmd_run(const std::string& scenario_arg, const std::string& out_path,
            std::optional<std::size_t> horizon_override) {
  Scenario sc = load_scenario(resolve_scenario(scenario_arg));
  if (horizon_override) sc.horizon = *horizon_override;
  const Trajectory traj = run_scenario(sc);
  if (out_path.empty() || out_path == "-") {
    export_trajectory_csv(traj, sc.schedule, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    export_trajectory_csv(traj, sc.schedule, out);
    std::cerr << traj.scenario_id << ": wrote " << traj.horizon()
              << " steps to " << out_path << "\n";
  }
  return 0;
}

int cmd_verify(std::vector<std::string> args, bool all,
               const std::string& report_path, unsigned parallel) {
  if (all) args = bundled_scenarios();
  if (args.empty())
    throw CLI::ValidationError("scenario", "nothing to verify");

  std::vector<VerificationReport> reports(args.size());
  std::atomic<std::size_t> next{0};
  std::mutex io;
  std::atomic<bool> threw{false};

  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < args.size();
         i = next.fetch_add(1)) {
      try {
        const Scenario sc = load_scenario(resolve_scenario(args[i]));
        const Trajectory traj = run_scenario(sc);
        reports[i] = run_all_checks(sc, traj);
        std::lock_guard<std::mutex> lock(io);
        std::cout << report_to_text(reports[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io);
        std::cerr << args[i] << ": " << e.what() << "\n";
        threw = true;
      }
    }
  };

  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(parallel, args.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (threw) return 2;

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot open " + report_path);
    if (reports.size() == 1) {
      out << report_to_json(reports[0]) << "\n";
    } else {
      out << "[\n";
      for (std::size_t i = 0; i < reports.size(); ++i)
        out << report_to_json(reports[i]) << (i + 1 < reports.size() ? ",\n" : "\n");
      out << "]\n";
    }
  }
  const bool ok = std::all_of(reports.begin(), reports.end(),
                              [](const VerificationReport& r) {
                                return r.all_passed();
                              });
  return ok ? 0 : 1;
}

int cmd_metastability(const std::string& scenario_arg, const std::string& k,
                      const std::string& g, const std::string& strategy) {
  Scenario sc = load_scenario(resolve_scenario(scenario_arg));
  if (!g.empty())
    sc.metastability = {MetastabilityRequest{BigInt(k), parse_cf_arg(g)}};
  if (sc.metastability.empty())
    throw std::runtime_error(sc.id + " has no metastability requests");
  if (!sc.region)
    throw std::runtime_error(sc.id + " has no region for the tb modulus");

  const ScheduleModuli moduli = schedule_moduli(sc.schedule);
  const Modulus tb = region_cells_modulus(sc.space, *sc.region);
  const PsiHatStrategy strat = strategy == "literal"
                                   ? PsiHatStrategy::Literal
                                   : PsiHatStrategy::ClosedForm;
  for (const MetastabilityRequest& req : sc.metastability) {
    const RateCertificate cert =
        psi_hat(req.k, req.g, tb, moduli.alpha, moduli.beta, sc.b_distance(),
                moduli.B, strat);
    std::cout << "k=" << req.k.str() << " g=" << counterfunction_to_string(req.g)
              << "\n";
    print_bound("  psi_hat = ", cert.bound);
  }

  const Trajectory traj = run_scenario(sc);
  VerificationReport report;
  report.scenario_id = sc.id;
  report.checks =
      verify_metastability(sc, traj, moduli, &report.budget_notes);
  std::cout << report_to_text(report);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating compositions of firmly nonexpansive maps: "
               "trajectories, exact rate certificates, verification"};
  app.require_subcommand(1);

  // run
  std::string run_scenario_arg, run_out;
  std::optional<std::size_t> run_horizon;
  CLI::App* run = app.add_subcommand("run", "execute a scenario, export CSV");
  run->add_option("scenario", run_scenario_arg, "scenario path or bundled id")
      ->required();
  run->add_option("--out", run_out, "CSV output path (default stdout)");
  run->add_option("--horizon", run_horizon, "override the scenario horizon");

  // rates
  RatesArgs ra;
  CLI::App* rates = app.add_subcommand("rates", "print a rate certificate");
  rates
      ->add_option("function", ra.fn,
                   "phi | phi-prime | phi-double-prime | phi-beta | phi-hat |"
                   " chi-fejer | chi-m | psi-hat | monotone-cauchy-bound")
      ->required();
  rates->add_option("--eps", ra.eps, "target accuracy (rational)");
  rates->add_option("--b", ra.b, "distance bound (rational)");
  rates->add_option("--B", ra.B, "error-sum bound (default: from schedule)");
  rates->add_option("--eps-prime", ra.eps_prime, "drop target (rational)");
  rates->add_option("--k", ra.k, "index argument k");
  rates->add_option("--n", ra.n, "index argument n");
  rates->add_option("--m", ra.m, "index argument m");
  rates->add_option("--r", ra.r, "index argument r");
  rates->add_option("--N", ra.N, "floor argument of phi-hat");
  rates->add_option("--eps-seq", ra.eps_seq, "zero | geom:c:q | list:a,b,..");
  rates->add_option("--delta-seq", ra.delta_seq, "zero | geom:c:q | list:..");
  rates->add_option("--g", ra.g, "identity | constant:c | affine:a:b");
  rates->add_option("--tb", ra.tb, "constant:M (or take --scenario's region)");
  rates->add_option("--scenario", ra.scenario,
                    "pull b, schedule moduli and tb from a scenario");
  rates->add_option("--strategy", ra.strategy, "closed | literal (psi-hat)");

  // verify
  std::vector<std::string> verify_args;
  bool verify_all = false;
  std::string verify_report;
  unsigned verify_parallel = 1;
  CLI::App* verify = app.add_subcommand("verify", "run the check battery");
  verify->add_option("scenario", verify_args, "scenario paths or bundled ids");
  verify->add_flag("--all", verify_all, "verify every bundled scenario");
  verify->add_option("--report", verify_report, "write the JSON report here");
  verify->add_option("--parallel", verify_parallel,
                     "number of scenarios to verify concurrently");

  // metastability
  std::string meta_scenario, meta_k = "0", meta_g, meta_strategy = "closed";
  CLI::App* meta =
      app.add_subcommand("metastability", "psi-hat certificate + window scan");
  meta->add_option("scenario", meta_scenario, "scenario path or bundled id")
      ->required();
  meta->add_option("--k", meta_k, "accuracy index k");
  meta->add_option("--g", meta_g,
                   "counterfunction (overrides the scenario's requests)");
  meta->add_option("--strategy", meta_strategy, "closed | literal");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_scenario_arg, run_out, run_horizon);
    if (rates->parsed()) return cmd_rates(ra);
    if (verify->parsed())
      return cmd_verify(verify_args, verify_all, verify_report,
                        verify_parallel);
    if (meta->parsed())
      return cmd_metastability(meta_scenario, meta_k, meta_g, meta_strategy);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
