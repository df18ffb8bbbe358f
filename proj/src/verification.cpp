#include "altfix/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace altfix {

namespace {

using nlohmann::json;

constexpr double kTol = 1e-9;
constexpr double kEq1ScaledTol = 1e-6;

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "unknown";
}

CheckStatus status_from_name(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "skip") return CheckStatus::Skip;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

// Certified bounds can be astronomically large; show the symbolic shape (or
// just the bit count) instead of megabytes of digits.
std::string bound_display(const Bound& b) {
  const bool huge = b.value > 0 && msb(b.value) > 4000;
  if (!huge) return bound_to_string(b);
  if (b.form) return pow_form_to_string(*b.form);
  return "~2^" + std::to_string(msb(b.value));
}

struct SlackTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::string witness;

  void observe(double slack, const std::string& where) {
    if (slack < worst) {
      worst = slack;
      witness = where;
    }
  }
  bool empty() const { return witness.empty(); }
};

CheckResult from_tracker(std::string name, std::string claim,
                         const SlackTracker& t, double tol) {
  CheckResult res;
  res.name = std::move(name);
  res.claim_id = std::move(claim);
  if (t.empty()) {
    res.status = CheckStatus::Skip;
    res.note = "no instances to check";
    return res;
  }
  res.worst_residual = t.worst;
  res.witness = "tightest at " + t.witness;
  res.status = t.worst >= -tol ? CheckStatus::Pass : CheckStatus::Fail;
  return res;
}

Point apply_s(const Scenario& sc, const Point& p) {
  return apply(sc.space, sc.t2, apply(sc.space, sc.t1, p));
}

Point apply_s_swapped(const Scenario& sc, const Point& p) {
  return apply(sc.space, sc.t1, apply(sc.space, sc.t2, p));
}

Rational gamma_sum(const ErrorSchedule& schedule, std::int64_t from,
                   std::int64_t count, bool primed) {
  Rational s = 0;
  for (std::int64_t i = from; i < from + count; ++i)
    s += primed ? schedule.gamma_prime_term(i) : schedule.gamma_term(i);
  return s;
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::Fail;
  });
}

CheckResult verify_residual_chain(const Scenario& sc, const Trajectory& traj) {
  SlackTracker t;
  for (std::size_t n = 0; n < traj.horizon(); ++n) {
    t.observe(traj.rx[n] - traj.ry[n], "ry<=rx at n=" + std::to_string(n));
    if (n >= 1)
      t.observe(traj.ry[n - 1] - traj.rx[n],
                "rx<=prev ry at n=" + std::to_string(n));
  }
  CheckResult res = from_tracker("residual-chain", "residual-chain", t, kTol);
  if (!sc.is_exact()) {
    res.status = CheckStatus::Skip;
    res.note = "interleaving is only claimed for exact runs";
  }
  return res;
}

CheckResult verify_fejer_monotone(const Scenario& sc, const Trajectory& traj) {
  CheckResult res;
  res.name = res.claim_id = "fejer-monotone";
  if (!sc.u || !sc.is_exact()) {
    res.status = CheckStatus::Skip;
    res.note = "needs an exact run with a known fixed point";
    return res;
  }
  SlackTracker t;
  double prev = distance(sc.space, traj.xs[0], *sc.u);
  for (std::size_t n = 1; n < traj.xs.size(); ++n) {
    const double cur = distance(sc.space, traj.xs[n], *sc.u);
    t.observe(prev - cur, "n=" + std::to_string(n));
    prev = cur;
  }
  return from_tracker("fejer-monotone", "fejer-monotone", t, kTol);
}

namespace {

// Shared shape of all certificate-vs-sequence checks: empirical first index
// below eps must not exceed the certificate, and once the certificate fits
// inside the recorded horizon the sequence must stay below eps from it on.
CheckResult check_rate_certificate(const std::string& name,
                                   const std::string& claim,
                                   const std::vector<double>& seq,
                                   const Rational& eps, const Bound& cert,
                                   std::vector<std::string>* budget_notes,
                                   const std::string& scenario_id) {
  CheckResult res;
  res.name = name;
  res.claim_id = claim;
  const auto empirical = first_index_below(seq, eps);
  std::ostringstream w;
  w << "certificate=" << bound_display(cert) << "; empirical=";
  if (empirical)
    w << *empirical;
  else
    w << "none within horizon";
  res.witness = w.str();

  if (empirical && BigInt(*empirical) > cert.value) {
    res.status = CheckStatus::Fail;
    res.note = "empirical first index exceeds the certified bound";
    return res;
  }

  if (cert.value < BigInt(seq.size())) {
    SlackTracker t;
    const double eps_d = to_double(eps);
    for (std::size_t n = cert.value.convert_to<std::size_t>(); n < seq.size();
         ++n)
      t.observe(eps_d - seq[n], "n=" + std::to_string(n));
    if (!t.empty()) {
      res.worst_residual = t.worst;
      if (t.worst < -kTol) {
        res.status = CheckStatus::Fail;
        res.note = "sequence exceeds eps beyond the certified index (" +
                   t.witness + ")";
        return res;
      }
    }
  } else {
    res.note = "bound beyond budget; monotonicity + empirical-index checks only";
    if (budget_notes)
      budget_notes->push_back(scenario_id + ": " + name +
                              " certificate exceeds horizon (" +
                              bound_display(cert) + ")");
  }
  res.status = CheckStatus::Pass;
  return res;
}

}  // namespace

std::vector<CheckResult> verify_asymptotic_regularity(
    const Scenario& sc, const Trajectory& traj, const ScheduleModuli& moduli,
    std::vector<std::string>* budget_notes) {
  std::vector<CheckResult> out;
  for (const Rational& eps : sc.eps_list) {
    if (sc.is_exact()) {
      const Bound cert = phi(eps, sc.b_twice_distance());
      out.push_back(check_rate_certificate(
          "exact-rate eps=" + rational_to_string(eps), "exact-rate", traj.rx,
          eps, cert, budget_notes, sc.id));
      // The same index bounds both residual sequences on exact runs.
      out.push_back(check_rate_certificate(
          "exact-rate-y eps=" + rational_to_string(eps), "exact-rate", traj.ry,
          eps, cert, budget_notes, sc.id));
    } else {
      const Bound cert =
          phi_prime(eps, sc.b_distance(), moduli.B, moduli.alpha);
      out.push_back(check_rate_certificate(
          "inexact-rate eps=" + rational_to_string(eps), "inexact-rate",
          traj.rx, eps, cert, budget_notes, sc.id));
    }
  }
  return out;
}

std::vector<CheckResult> verify_eq1(const Scenario& sc, const Trajectory& traj,
                                    std::size_t n_max, std::size_t k_max) {
  if (!sc.is_exact())
    throw std::invalid_argument("windowed bounds apply to exact runs only");
  if (traj.ys.size() < n_max + k_max + 2)
    throw std::invalid_argument("trajectory too short for requested window");

  const auto r = [&](std::size_t n, std::size_t k) {
    return distance(sc.space, traj.ys[n], traj.ys[n + k]);
  };

  SlackTracker lower, chain;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t k = 1; k <= k_max; ++k) {
      const double pow_k = std::ldexp(1.0, static_cast<int>(k));
      const double rhs =
          static_cast<double>(k) * r(n + k, 1) -
          static_cast<double>(k) * pow_k * (r(n, 1) - r(n + k, 1));
      // Scale out the 2^k amplification so one tolerance fits every k.
      lower.observe((r(n, k) - rhs) / pow_k,
                    "n=" + std::to_string(n) + " k=" + std::to_string(k));
      chain.observe(r(n, k + 1) - (2.0 * r(n + 1, k) -
                                   static_cast<double>(k - 1) * r(n, 1)),
                    "n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return {from_tracker("window-lower-bound", "window-lower-bound", lower,
                       kEq1ScaledTol),
          from_tracker("window-chain-step", "window-chain-step", chain, kTol)};
}

std::vector<CheckResult> verify_lemma_inexact(const Scenario& sc,
                                              const Trajectory& traj) {
  std::vector<CheckResult> out;
  if (sc.is_exact() || !sc.u) {
    CheckResult skip;
    skip.name = skip.claim_id = "inexact-step";
    skip.status = CheckStatus::Skip;
    skip.note = "needs an inexact run with a known fixed point";
    out.push_back(skip);
    return out;
  }
  SlackTracker step, anchor;
  double d_prev = distance(sc.space, traj.xs[0], *sc.u);
  for (std::size_t n = 0; n < traj.horizon(); ++n) {
    const double gamma =
        to_double(sc.schedule.gamma_term(static_cast<std::int64_t>(n)));
    const Point sx = apply_s(sc, traj.xs[n]);
    step.observe(gamma - distance(sc.space, traj.xs[n + 1], sx),
                 "n=" + std::to_string(n));
    const double d_next = distance(sc.space, traj.xs[n + 1], *sc.u);
    anchor.observe(gamma + d_prev - d_next, "n=" + std::to_string(n));
    d_prev = d_next;
  }
  out.push_back(from_tracker("inexact-step", "inexact-step", step, kTol));
  out.push_back(
      from_tracker("inexact-fejer-step", "inexact-fejer-step", anchor, kTol));
  return out;
}

namespace {

struct QuasiFejerOutcome {
  SlackTracker bound;
  std::size_t eligible_points = 0;
  std::size_t skipped_cells = 0;
  std::size_t checked_cells = 0;
};

// One sequence (plain or shifted) against one family of near-fixed points.
QuasiFejerOutcome quasi_fejer_sweep(const Scenario& sc,
                                    const std::vector<Point>& points,
                                    const std::vector<double>& s_residuals,
                                    const std::vector<Point>& seq,
                                    bool primed) {
  static const std::size_t kNs[] = {0, 3, 10};
  static const std::size_t kMs[] = {0, 1, 5, 20};
  static const std::size_t kRs[] = {0, 4, 10};
  QuasiFejerOutcome out;
  const std::size_t horizon = seq.size() - 1;

  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const Point& p = points[pi];
    const Rational s = rational_from_double(s_residuals[pi]);
    bool eligible_everywhere = true;
    for (std::size_t n : kNs) {
      for (std::size_t m : kMs) {
        for (std::size_t r : kRs) {
          const BigInt chi = chi_fejer(BigInt(n), BigInt(m), BigInt(r));
          if (s > Rational(BigInt(1), chi + 1)) {
            eligible_everywhere = false;
            ++out.skipped_cells;
            continue;
          }
          if (n + m > horizon) continue;
          ++out.checked_cells;
          const double base = distance(sc.space, seq[n], p);
          const double slack_const = 1.0 / (static_cast<double>(r) + 1.0);
          for (std::size_t l = 0; l <= m; ++l) {
            const double lhs = distance(sc.space, seq[n + l], p);
            const double err =
                to_double(gamma_sum(sc.schedule, static_cast<std::int64_t>(n),
                                    static_cast<std::int64_t>(l), primed));
            out.bound.observe(base + err + slack_const - lhs,
                              "p#" + std::to_string(pi) + " n=" +
                                  std::to_string(n) + " m=" +
                                  std::to_string(m) + " r=" +
                                  std::to_string(r) + " l=" +
                                  std::to_string(l));
          }
        }
      }
    }
    if (eligible_everywhere) ++out.eligible_points;
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_quasi_fejer(const Scenario& sc,
                                            const Trajectory& traj) {
  std::vector<CheckResult> out;
  if (!sc.u) {
    CheckResult skip;
    skip.name = skip.claim_id = "quasi-fejer";
    skip.status = CheckStatus::Skip;
    skip.note = "needs a known fixed point to perturb";
    out.push_back(skip);
    return out;
  }

  Rng rng(sc.seed ^ 0x9e3779b97f4a7c15ull);
  const auto build = [&](const Point& anchor,
                         const auto& s_of) -> std::pair<std::vector<Point>,
                                                        std::vector<double>> {
    std::vector<Point> points;
    std::vector<double> residuals;
    // 22 tight perturbations pass every chi threshold of the grid; 4 loose
    // ones exercise the skip path for the sharpest thresholds.
    for (int i = 0; i < 22; ++i) {
      points.push_back(random_displacement(sc.space, rng, anchor,
                                           1.0 / (600.0 + 13.0 * i)));
      residuals.push_back(s_of(points.back()));
    }
    for (int i = 0; i < 4; ++i) {
      points.push_back(random_displacement(sc.space, rng, anchor, 1.0 / 50.0));
      residuals.push_back(s_of(points.back()));
    }
    return {std::move(points), std::move(residuals)};
  };

  {
    auto [points, residuals] = build(*sc.u, [&](const Point& p) {
      return distance(sc.space, p, apply_s(sc, p));
    });
    const QuasiFejerOutcome sweep =
        quasi_fejer_sweep(sc, points, residuals, traj.xs, false);
    CheckResult res = from_tracker("quasi-fejer", "quasi-fejer", sweep.bound,
                                   0.0);  // strict bound with 1/(r+1) slack
    res.note = "eligible points " + std::to_string(sweep.eligible_points) +
               "/" + std::to_string(points.size()) + "; cells checked " +
               std::to_string(sweep.checked_cells) + ", skipped " +
               std::to_string(sweep.skipped_cells);
    out.push_back(std::move(res));
  }
  {
    const Point u_shift = apply(sc.space, sc.t1, *sc.u);
    auto [points, residuals] = build(u_shift, [&](const Point& p) {
      return distance(sc.space, p, apply_s_swapped(sc, p));
    });
    const QuasiFejerOutcome sweep =
        quasi_fejer_sweep(sc, points, residuals, traj.ys, true);
    CheckResult res =
        from_tracker("quasi-fejer-y", "quasi-fejer-y", sweep.bound, 0.0);
    res.note = "eligible points " + std::to_string(sweep.eligible_points) +
               "/" + std::to_string(points.size()) + "; cells checked " +
               std::to_string(sweep.checked_cells) + ", skipped " +
               std::to_string(sweep.skipped_cells);
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<CheckResult> verify_sx_regularity(
    const Scenario& sc, const Trajectory& traj, const ScheduleModuli& moduli,
    std::vector<std::string>* budget_notes) {
  std::vector<CheckResult> out;
  for (const Rational& eps : sc.eps_list) {
    const Bound cert = phi_beta(eps, moduli.beta, sc.b_distance(), moduli.B,
                                moduli.alpha);
    out.push_back(check_rate_certificate(
        "sx-rate eps=" + rational_to_string(eps), "sx-rate", traj.rs, eps,
        cert, budget_notes, sc.id));
    const Bound cert_y = phi_beta_primed(eps, moduli.beta_prime,
                                         sc.b_distance(), moduli.B,
                                         moduli.alpha);
    out.push_back(check_rate_certificate(
        "sy-rate eps=" + rational_to_string(eps), "sy-rate", traj.ry, eps,
        cert_y, budget_notes, sc.id));
  }
  return out;
}

std::vector<CheckResult> verify_metastability(
    const Scenario& sc, const Trajectory& traj, const ScheduleModuli& moduli,
    std::vector<std::string>* budget_notes) {
  std::vector<CheckResult> out;
  for (const MetastabilityRequest& req : sc.metastability) {
    CheckResult res;
    res.name = "metastability k=" + req.k.str() + " g=" +
               counterfunction_to_string(req.g);
    res.claim_id = "metastability";
    if (!sc.region) {
      res.status = CheckStatus::Skip;
      res.note = "no region, so no total-boundedness modulus";
      out.push_back(std::move(res));
      continue;
    }
    const Modulus tb = region_cells_modulus(sc.space, *sc.region);
    const RateCertificate cert =
        psi_hat(req.k, req.g, tb, moduli.alpha, moduli.beta, sc.b_distance(),
                moduli.B);
    const Rational threshold(BigInt(1), req.k + 1);
    const std::size_t last = traj.xs.size() - 1;

    std::optional<std::size_t> found;
    bool exhausted = false;
    for (std::size_t n = 0; n <= last; ++n) {
      const BigInt gn = counterfunction_at(req.g, BigInt(n));
      if (BigInt(n) + gn > BigInt(last)) {
        exhausted = true;  // window no longer fits in the horizon
        break;
      }
      const std::size_t hi = n + gn.convert_to<std::size_t>();
      bool ok = true;
      for (std::size_t i = n; i <= hi && ok; ++i)
        for (std::size_t j = i + 1; j <= hi && ok; ++j)
          ok = rational_from_double(distance(sc.space, traj.xs[i],
                                             traj.xs[j])) <= threshold;
      if (ok) {
        found = n;
        break;
      }
    }

    std::ostringstream w;
    w << "certificate=" << bound_display(cert.bound);
    if (found) {
      w << "; found n=" << *found;
      res.witness = w.str();
      res.status = BigInt(*found) <= cert.bound.value ? CheckStatus::Pass
                                                      : CheckStatus::Fail;
      if (res.status == CheckStatus::Fail)
        res.note = "first good window starts beyond the certified bound";
    } else {
      res.witness = w.str();
      res.status = CheckStatus::Skip;
      res.note = exhausted ? "budget exhausted before a full window fit"
                           : "no qualifying window within the horizon";
      if (budget_notes)
        budget_notes->push_back(sc.id + ": " + res.name + " " + res.note);
    }
    // Window diameters are compared with <=; the strict-inequality reading
    // differs only on exact boundary ties.
    out.push_back(std::move(res));
  }
  return out;
}

CheckResult verify_tb_region(const Scenario& sc, const Trajectory& traj) {
  CheckResult res;
  res.name = res.claim_id = "tb-region";
  if (!sc.region) {
    res.status = CheckStatus::Skip;
    res.note = "scenario declares no region";
    return res;
  }
  SlackTracker t;
  for (std::size_t n = 0; n < traj.xs.size(); ++n) {
    const Point px = project_to_region(sc.space, *sc.region, traj.xs[n]);
    t.observe(-distance(sc.space, traj.xs[n], px), "x index " + std::to_string(n));
    const Point py = project_to_region(sc.space, *sc.region, traj.ys[n]);
    t.observe(-distance(sc.space, traj.ys[n], py), "y index " + std::to_string(n));
  }
  return from_tracker("tb-region", "tb-region", t, kTol);
}

namespace {

Point sample_feasible(const Scenario& sc, const FunctionSpec& fn, Rng& rng,
                      const Point& center_hint) {
  if (const auto* ind = std::get_if<IndicatorFn>(&fn)) {
    const Region& region = ind->region;
    if (const auto* box = std::get_if<BoxRegion>(&region)) {
      std::vector<double> c(box->lo.size());
      for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = rng.uniform(box->lo[i], box->hi[i]);
      return euclidean_point(std::move(c));
    }
    if (const auto* ball = std::get_if<BallRegion>(&region))
      return random_displacement(sc.space, rng, ball->center,
                                 ball->radius * rng.uniform01());
    const auto& seg = std::get<LegIntervalRegion>(region);
    return spider_point(seg.leg, rng.uniform(seg.lo, seg.hi));
  }
  // Unconstrained terms: wander a few units around the candidate optimum.
  return random_displacement(sc.space, rng, center_hint,
                             4.0 * rng.uniform01());
}

}  // namespace

CheckResult verify_fix_solution_correspondence(const Scenario& sc,
                                               std::size_t sample_count) {
  CheckResult res;
  res.name = res.claim_id = "objective-optimality";
  if (!sc.objective || !sc.u) {
    res.status = CheckStatus::Skip;
    res.note = "needs an objective and a fixed point";
    return res;
  }
  const Point& x_star = *sc.u;
  if (distance(sc.space, x_star, apply_s(sc, x_star)) > kTol) {
    res.status = CheckStatus::Skip;
    res.note = "misconfigured: the candidate is not fixed under T2 T1";
    return res;
  }
  const Point y_star = apply(sc.space, sc.t1, x_star);
  const double best = objective_value(sc.space, *sc.objective, x_star, y_star);

  Rng rng(sc.seed ^ 0x51ed270b7a049849ull);
  SlackTracker t;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const Point x = sample_feasible(sc, sc.objective->f, rng, x_star);
    const Point y = sample_feasible(sc, sc.objective->g, rng, y_star);
    const double v = objective_value(sc.space, *sc.objective, x, y);
    t.observe(v - best, "sample " + std::to_string(i));
  }
  res = from_tracker("objective-optimality", "objective-optimality", t, kTol);
  std::ostringstream note;
  note << "objective(x*,y*)=" << best << " over " << sample_count
       << " feasible samples";
  res.note = note.str();
  return res;
}

CheckResult verify_cat0_on_trajectory(const Scenario& sc,
                                      const Trajectory& traj) {
  std::vector<const Point*> pool;
  for (const Point& p : traj.xs) pool.push_back(&p);
  for (const Point& p : traj.ys) pool.push_back(&p);
  if (sc.u) pool.push_back(&*sc.u);

  Rng rng(sc.seed ^ 0xc2b2ae3d27d4eb4full);
  SlackTracker t;
  for (int i = 0; i < 250; ++i) {
    const Point& x = *pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(pool.size()) - 1))];
    const Point& y = *pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(pool.size()) - 1))];
    const Point& u = *pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(pool.size()) - 1))];
    const Point& v = *pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(pool.size()) - 1))];
    const double residual = cat0_quadruple_residual(sc.space, x, y, u, v);
    const double scale = 1.0 + std::max({distance(sc.space, x, u),
                                         distance(sc.space, y, v),
                                         distance(sc.space, x, v),
                                         distance(sc.space, y, u)});
    t.observe(residual / scale, "quadruple " + std::to_string(i));
  }
  return from_tracker("cat0-four-point", "cat0-four-point", t, kTol);
}

VerificationReport run_all_checks(const Scenario& sc, const Trajectory& traj) {
  VerificationReport report;
  report.scenario_id = sc.id;
  const ScheduleModuli moduli = schedule_moduli(sc.schedule);

  report.checks.push_back(verify_cat0_on_trajectory(sc, traj));
  if (sc.is_exact()) {
    report.checks.push_back(verify_residual_chain(sc, traj));
    report.checks.push_back(verify_fejer_monotone(sc, traj));
    const std::size_t k_max = 10;
    if (traj.horizon() >= k_max + 2) {
      const std::size_t n_max =
          std::min<std::size_t>(50, traj.horizon() - k_max - 1);
      for (auto& c : verify_eq1(sc, traj, n_max, k_max))
        report.checks.push_back(std::move(c));
    }
  } else {
    for (auto& c : verify_lemma_inexact(sc, traj))
      report.checks.push_back(std::move(c));
  }

  for (auto& c : verify_asymptotic_regularity(sc, traj, moduli,
                                              &report.budget_notes))
    report.checks.push_back(std::move(c));
  for (auto& c :
       verify_sx_regularity(sc, traj, moduli, &report.budget_notes))
    report.checks.push_back(std::move(c));
  if (sc.u)
    for (auto& c : verify_quasi_fejer(sc, traj))
      report.checks.push_back(std::move(c));
  report.checks.push_back(verify_tb_region(sc, traj));
  for (auto& c :
       verify_metastability(sc, traj, moduli, &report.budget_notes))
    report.checks.push_back(std::move(c));
  if (sc.objective && sc.u)
    report.checks.push_back(verify_fix_solution_correspondence(sc, 10000));
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  json j;
  j["scenario_id"] = report.scenario_id;
  j["checks"] = json::array();
  for (const CheckResult& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"claim", c.claim_id},
                           {"status", status_name(c.status)},
                           {"worst_residual", c.worst_residual},
                           {"witness", c.witness},
                           {"note", c.note}});
  }
  j["budget_notes"] = report.budget_notes;
  return j.dump(2);
}

VerificationReport report_from_json(const std::string& text) {
  VerificationReport report;
  try {
    const json j = json::parse(text);
    report.scenario_id = j.at("scenario_id").get<std::string>();
    for (const json& c : j.at("checks")) {
      CheckResult res;
      res.name = c.at("name").get<std::string>();
      res.claim_id = c.at("claim").get<std::string>();
      res.status = status_from_name(c.at("status").get<std::string>());
      res.worst_residual = c.at("worst_residual").get<double>();
      res.witness = c.at("witness").get<std::string>();
      res.note = c.at("note").get<std::string>();
      report.checks.push_back(std::move(res));
    }
    report.budget_notes =
        j.at("budget_notes").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report JSON: ") +
                                e.what());
  }
  return report;
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << "scenario " << report.scenario_id << "\n";
  for (const CheckResult& c : report.checks) {
    out << "  [" << status_name(c.status) << "] " << c.name;
    if (c.status != CheckStatus::Skip)
      out << "  (worst residual " << c.worst_residual << ")";
    if (!c.witness.empty()) out << "  " << c.witness;
    if (!c.note.empty()) out << "  -- " << c.note;
    out << "\n";
  }
  for (const std::string& n : report.budget_notes)
    out << "  note: " << n << "\n";
  return out.str();
}

}  // namespace altfix
