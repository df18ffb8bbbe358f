// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstddef>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "altfix/verification.hpp"
#include "helpers.hpp"

using namespace altfix;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int n, bool ok, const std::string& desc,
            const std::string& detail = "") {
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " — "
            << desc;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int n, const std::string& desc, Fn&& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(n, ok, desc, detail);
}

struct CatalogEntry {
  std::string name;
  Space space;
  OperatorSpec op;
};

std::vector<CatalogEntry> operator_catalog() {
  const Space e2 = euclidean_space(2);
  const Space sp = spider_space(3);
  return {
      {"proj box", e2, projection_op(BoxRegion{{0, -1}, {1, 1}})},
      {"proj ball", e2, projection_op(BallRegion{euclidean_point({1, 0}), 1.5})},
      {"prox sqdist", e2, prox_sqdist_op(euclidean_point({2, 1}), 0.7)},
      {"soft threshold", e2, soft_threshold_op(0.4)},
      {"proj leg interval", sp, projection_op(LegIntervalRegion{1, 0.5, 2.0})},
      {"proj spider ball", sp,
       projection_op(BallRegion{spider_point(0, 1.0), 0.8})},
      {"prox sqdist spider", sp, prox_sqdist_op(spider_point(2, 1.5), 1.3)},
  };
}

Point sample_point(const Space& space, Rng& rng) {
  if (const auto* e = std::get_if<EuclideanSpace>(&space)) {
    std::vector<double> c(static_cast<std::size_t>(e->dim));
    for (double& x : c) x = rng.uniform(-3.0, 3.0);
    return euclidean_point(std::move(c));
  }
  const auto& s = std::get<SpiderSpace>(space);
  return spider_point(rng.uniform_int(0, s.legs - 1), rng.uniform(0.0, 3.0));
}

std::vector<Scenario> load_all() {
  std::vector<Scenario> out;
  for (const char* id : altfix_test::kBundledIds)
    out.push_back(altfix_test::load_bundled(id));
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks, std::string& detail,
              const std::string& where) {
  for (const CheckResult& c : checks)
    if (c.status != CheckStatus::Pass) {
      std::ostringstream os;
      os << where << ": " << c.name << " "
         << (c.status == CheckStatus::Fail ? "failed" : "skipped");
      if (!c.note.empty()) os << ": " << c.note;
      detail = os.str();
      return false;
    }
  return true;
}

// The operator-property criteria share one sample set per catalog entry.
constexpr std::uint64_t kPairSeed = 1003;
constexpr int kPairs = 1000;

}  // namespace

int main() {
  const std::vector<Scenario> bundle = load_all();

  criterion(1,
            "rate evaluators reproduce their frozen values, symbolic "
            "certificate included, in under a second",
            [](std::string& detail) {
              const auto start = Clock::now();
              bool ok = phi(Rational(1), Rational(1)).value == 21 &&
                        phi(Rational(2), Rational(1)).value == 4 &&
                        phi(Rational(1, 2), Rational(1)).value == 273 &&
                        monotone_cauchy_bound(Rational(3), Rational(1), 40) ==
                            120 &&
                        chi_fejer(5, 3, 2) == 9;
              const Modulus tb = region_cells_modulus(euclidean_space(1),
                                                      BoxRegion{{0}, {1}});
              const Modulus zero = constant_modulus(0);
              const RateCertificate cert =
                  psi_hat(0, constant_cf(1), tb, zero, zero, Rational(1, 2),
                          Rational(0));
              ok = ok &&
                   cert.bound.value ==
                       BigInt("3785184409871889341198731824001461649") &&
                   cert.bound.form.has_value() &&
                   pow_form_to_string(*cert.bound.form) ==
                       "11664*(1+2^108)+1";
              const double el = seconds_since(start);
              std::ostringstream os;
              os << "elapsed " << el << " s";
              detail = os.str();
              return ok && el < 1.0;
            });

  criterion(2,
            "squared-distance and firm-nonexpansiveness slacks stay above "
            "-1e-9 over the whole operator catalog, in under ten seconds",
            [](std::string& detail) {
              const auto start = Clock::now();
              const std::vector<double> lambdas{0.0, 0.25, 0.5, 0.75, 1.0};
              double worst = 0.0;
              std::string worst_at = "none";
              for (const CatalogEntry& entry : operator_catalog()) {
                Rng rng(kPairSeed);
                for (int i = 0; i < kPairs; ++i) {
                  const Point p = sample_point(entry.space, rng);
                  const Point q = sample_point(entry.space, rng);
                  const double slack = std::min(
                      check_p2(entry.space, entry.op, p, q),
                      check_firmly_nonexpansive(entry.space, entry.op, p, q,
                                                lambdas));
                  if (slack < worst) {
                    worst = slack;
                    worst_at = entry.name;
                  }
                }
              }
              const double el = seconds_since(start);
              std::ostringstream os;
              os << "worst slack " << worst << " at " << worst_at
                 << ", elapsed " << el << " s";
              detail = os.str();
              return worst >= -1e-9 && el < 10.0;
            });

  criterion(3,
            "nonexpansiveness holds on the same sampled pairs",
            [](std::string& detail) {
              double worst = 0.0;
              std::string worst_at = "none";
              for (const CatalogEntry& entry : operator_catalog()) {
                Rng rng(kPairSeed);
                for (int i = 0; i < kPairs; ++i) {
                  const Point p = sample_point(entry.space, rng);
                  const Point q = sample_point(entry.space, rng);
                  const double slack =
                      distance(entry.space, p, q) -
                      distance(entry.space, apply(entry.space, entry.op, p),
                               apply(entry.space, entry.op, q));
                  if (slack < worst) {
                    worst = slack;
                    worst_at = entry.name;
                  }
                }
              }
              std::ostringstream os;
              os << "worst slack " << worst << " at " << worst_at;
              detail = os.str();
              return worst >= -1e-9;
            });

  criterion(4,
            "the four-point inequality holds on 10000 random quadruples "
            "across all space models",
            [](std::string& detail) {
              const std::vector<Space> spaces{
                  euclidean_space(1), euclidean_space(2), euclidean_space(3),
                  spider_space(3)};
              Rng rng(44);
              double worst = 0.0;
              for (const Space& space : spaces) {
                for (int i = 0; i < 2500; ++i) {
                  const Point x = sample_point(space, rng);
                  const Point y = sample_point(space, rng);
                  const Point u = sample_point(space, rng);
                  const Point v = sample_point(space, rng);
                  const double res =
                      cat0_quadruple_residual(space, x, y, u, v);
                  const double dxy = distance(space, x, y);
                  const double duv = distance(space, u, v);
                  const double scale =
                      std::max(1.0, dxy * dxy + duv * duv);
                  worst = std::min(worst, res / scale);
                }
              }
              std::ostringstream os;
              os << "worst scaled residual " << worst;
              detail = os.str();
              return worst >= -1e-9;
            });

  criterion(5,
            "residual interleaving and distance monotonicity hold on every "
            "exact bundled run",
            [&](std::string& detail) {
              int checked = 0;
              for (const Scenario& sc : bundle) {
                if (!sc.is_exact()) continue;
                const Trajectory traj = run_scenario(sc);
                if (!all_pass({verify_residual_chain(sc, traj),
                               verify_fejer_monotone(sc, traj)},
                              detail, sc.id))
                  return false;
                ++checked;
              }
              detail = std::to_string(checked) + " scenarios";
              return checked > 0;
            });

  criterion(6,
            "windowed pair-distance bounds hold for n <= 50, k <= 10 on "
            "every exact bundled run",
            [&](std::string& detail) {
              int checked = 0;
              for (const Scenario& sc : bundle) {
                if (!sc.is_exact()) continue;
                const Trajectory traj = run_scenario(sc);
                const std::size_t k_max = 10;
                const std::size_t n_max =
                    std::min<std::size_t>(50, traj.horizon() - k_max - 1);
                if (!all_pass(verify_eq1(sc, traj, n_max, k_max), detail,
                              sc.id))
                  return false;
                ++checked;
              }
              detail = std::to_string(checked) + " scenarios";
              return checked > 0;
            });

  criterion(7,
            "one-step error bounds hold on every inexact bundled run",
            [&](std::string& detail) {
              int checked = 0;
              for (const Scenario& sc : bundle) {
                if (sc.is_exact()) continue;
                const Trajectory traj = run_scenario(sc);
                if (!all_pass(verify_lemma_inexact(sc, traj), detail, sc.id))
                  return false;
                ++checked;
              }
              detail = std::to_string(checked) + " scenarios";
              return checked > 0;
            });

  criterion(8,
            "near-fixed-point monotonicity sweeps certify at least 20 "
            "eligible witnesses per scenario",
            [&](std::string& detail) {
              for (const Scenario& sc : bundle) {
                const Trajectory traj = run_scenario(sc);
                const auto checks = verify_quasi_fejer(sc, traj);
                if (!all_pass(checks, detail, sc.id)) return false;
                for (const CheckResult& c : checks) {
                  const auto pos = c.note.find("eligible points ");
                  std::size_t eligible = 0;
                  if (pos != std::string::npos)
                    eligible = std::strtoull(
                        c.note.c_str() + pos + 16, nullptr, 10);
                  if (eligible < 20) {
                    detail = sc.id + ": " + c.name + " had only " +
                             std::to_string(eligible) + " eligible witnesses";
                    return false;
                  }
                }
              }
              detail = std::to_string(bundle.size()) + " scenarios";
              return true;
            });

  criterion(9,
            "certified indices subsume the empirical ones, and residuals "
            "stay below threshold through certificate + 50",
            [&](std::string& detail) {
              int extended = 0, capped = 0;
              for (const Scenario& sc : bundle) {
                const ScheduleModuli moduli = schedule_moduli(sc.schedule);
                for (const Rational& eps : sc.eps_list) {
                  const Bound cert =
                      sc.is_exact()
                          ? phi(eps, sc.b_twice_distance())
                          : phi_prime(eps, sc.b_distance(), moduli.B,
                                      moduli.alpha);
                  if (cert.value > 1000000) {
                    ++capped;  // beyond any horizon this gate can afford
                    continue;
                  }
                  const std::size_t n_cert =
                      cert.value.convert_to<std::size_t>();
                  const std::size_t h = n_cert + 50;
                  const Trajectory traj =
                      sc.is_exact()
                          ? run_exact(sc.space, sc.t1, sc.t2, sc.x0, h)
                          : run_inexact(sc.space, sc.t1, sc.t2, sc.x0,
                                        sc.schedule, h, sc.seed);
                  const auto emp = first_index_below(traj.rx, eps);
                  if (!emp || *emp > n_cert) {
                    detail = sc.id + " eps=" + rational_to_string(eps) +
                             ": residual not below threshold by the "
                             "certified index";
                    return false;
                  }
                  for (std::size_t n = n_cert; n < h; ++n) {
                    if (rational_from_double(traj.rx[n]) > eps) {
                      detail = sc.id + " eps=" + rational_to_string(eps) +
                               ": residual rises above threshold at n=" +
                               std::to_string(n);
                      return false;
                    }
                  }
                  ++extended;
                }
              }
              detail = std::to_string(extended) + " certificates checked, " +
                       std::to_string(capped) + " beyond budget";
              return extended > 0;
            });

  criterion(10,
            "metastability certificates dominate the first good window, and "
            "both unfolding strategies agree",
            [&](std::string& detail) {
              int requests = 0;
              for (const Scenario& sc : bundle) {
                if (sc.metastability.empty()) continue;
                const ScheduleModuli moduli = schedule_moduli(sc.schedule);
                const Trajectory traj = run_scenario(sc);
                std::vector<std::string> notes;
                const auto checks =
                    verify_metastability(sc, traj, moduli, &notes);
                if (!all_pass(checks, detail, sc.id)) return false;
                const Modulus tb =
                    region_cells_modulus(sc.space, *sc.region);
                for (const MetastabilityRequest& req : sc.metastability) {
                  const RateCertificate closed = psi_hat(
                      req.k, req.g, tb, moduli.alpha, moduli.beta,
                      sc.b_distance(), moduli.B, PsiHatStrategy::ClosedForm);
                  const RateCertificate literal = psi_hat(
                      req.k, req.g, tb, moduli.alpha, moduli.beta,
                      sc.b_distance(), moduli.B, PsiHatStrategy::Literal);
                  if (closed.bound.value != literal.bound.value) {
                    detail = sc.id + " k=" + req.k.str() +
                             ": unfolding strategies disagree";
                    return false;
                  }
                  ++requests;
                }
              }
              detail = std::to_string(requests) + " requests";
              return requests > 0;
            });

  criterion(11,
            "the pigeonhole index bound finds a flat window in 500 random "
            "nonincreasing sequences",
            [](std::string& detail) {
              Rng rng(4711);
              for (int trial = 0; trial < 500; ++trial) {
                const Rational b(rng.uniform_int(1, 5), rng.uniform_int(1, 3));
                const BigInt k = rng.uniform_int(1, 6);
                const Rational eps_prime(1, rng.uniform_int(2, 9));
                const BigInt bound = monotone_cauchy_bound(b, eps_prime, k);
                const std::size_t ks = k.convert_to<std::size_t>();
                const std::size_t len =
                    bound.convert_to<std::size_t>() + ks + 1;
                std::vector<Rational> r(len);
                Rational cur = b;
                for (std::size_t i = 0; i < len; ++i) {
                  r[i] = cur;
                  cur -= cur * Rational(rng.uniform_int(0, 8), 64);
                }
                bool found = false;
                for (std::size_t n = 0; !found && BigInt(n) <= bound; ++n)
                  found = r[n] - r[n + ks] <= eps_prime;
                if (!found) {
                  detail = "trial " + std::to_string(trial) +
                           " found no flat window within the bound";
                  return false;
                }
              }
              detail = "500 trials";
              return true;
            });

  criterion(12,
            "the analytic fixed point minimizes the coupled objective, "
            "exactly at the optimum and against 10000 samples",
            [&](std::string& detail) {
              const auto it = std::find_if(
                  bundle.begin(), bundle.end(),
                  [](const Scenario& s) { return s.id == "two_intervals"; });
              const Scenario& sc = *it;
              const Point x_star = *sc.u;
              const Point y_star = apply(sc.space, sc.t1, x_star);
              const double at_fix =
                  objective_value(sc.space, *sc.objective, x_star, y_star);
              if (at_fix != 0.5) {
                detail = "optimum value mismatch";
                return false;
              }
              Rng rng(1212);
              double best = at_fix;
              for (int i = 0; i < 10000; ++i) {
                const Point x = euclidean_point({rng.uniform(0.0, 1.0)});
                const Point y = euclidean_point({rng.uniform(2.0, 3.0)});
                best = std::min(
                    best, objective_value(sc.space, *sc.objective, x, y));
              }
              std::ostringstream os;
              os << "optimum 0.5, sampled minimum " << best;
              detail = os.str();
              return best >= at_fix - 1e-9;
            });

  if (g_failures != 0)
    std::cout << g_failures << " criteria failed\n";
  return g_failures == 0 ? 0 : 1;
}
