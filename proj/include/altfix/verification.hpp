#pragma once

#include <string>
#include <vector>

#include "altfix/iteration.hpp"
#include "altfix/rate_calculus.hpp"
#include "altfix/scenario.hpp"

namespace altfix {

// Desk-scale certificate checking: every claim the rate side makes about a
// trajectory is tested on the recorded data, and bounds that dwarf any
// feasible horizon are reported as such instead of silently skipped.

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
  std::string name;      // instance label, e.g. "exact-rate eps=1/2"
  std::string claim_id;  // stable claim anchor shared across scenarios
  CheckStatus status = CheckStatus::Pass;
  // Minimal signed slack over all tested instances (>= -tol means pass);
  // index-subsumption checks report 0 and put the indices in the witness.
  double worst_residual = 0.0;
  std::string witness;
  std::string note;
};

struct VerificationReport {
  std::string scenario_id;
  std::vector<CheckResult> checks;
  std::vector<std::string> budget_notes;

  bool all_passed() const;
};

// Exact runs: ry_n <= rx_n <= ry_{n-1} (tolerance 1e-9).
CheckResult verify_residual_chain(const Scenario& sc, const Trajectory& traj);

// Exact runs with known u: d(x_{n+1}, u) <= d(x_n, u) + 1e-9.
CheckResult verify_fejer_monotone(const Scenario& sc, const Trajectory& traj);

// Per eps of the scenario's list: the empirical first index with
// rx_n <= eps never exceeds the certificate (phi on exact runs with the
// twice-distance b, phi_prime on inexact runs with the distance b), and
// when the certificate lies inside the horizon, every later recorded
// residual stays below eps.
std::vector<CheckResult> verify_asymptotic_regularity(
    const Scenario& sc, const Trajectory& traj, const ScheduleModuli& moduli,
    std::vector<std::string>* budget_notes);

// Exact runs: the windowed lower bound
//   r_{n,k} >= k r_{n+k,1} - k 2^k (r_{n,1} - r_{n+k,1})
// (tolerance 1e-6 * 2^k) and the chain step
//   2 r_{n+1,k} - (k-1) r_{n,1} <= r_{n,k+1}
// over n <= n_max, 1 <= k <= k_max, where r_{n,k} = d(y_n, y_{n+k}).
std::vector<CheckResult> verify_eq1(const Scenario& sc, const Trajectory& traj,
                                    std::size_t n_max, std::size_t k_max);

// Inexact runs with known u: d(x_{n+1}, S x_n) <= gamma_n and
// d(x_{n+1}, u) <= gamma_n + d(x_n, u) (tolerance 1e-9).
std::vector<CheckResult> verify_lemma_inexact(const Scenario& sc,
                                              const Trajectory& traj);

// Near-fixed points p (built by geodesic perturbation of u, sized so
// d(p, Sp) passes the chi threshold): for every grid cell (n, m, r) and
// l <= m,  d(x_{n+l}, p) < d(x_n, p) + sum_{i=n}^{n+l-1} gamma_i + 1/(r+1).
// Also run on (y_n) against S' = T1 T2 with the shifted error sums.
std::vector<CheckResult> verify_quasi_fejer(const Scenario& sc,
                                            const Trajectory& traj);

// rs_n = d(x_n, S x_n) against phi_beta and ry_n against its shifted
// variant, with the same horizon/empirical-index discipline as
// verify_asymptotic_regularity.
std::vector<CheckResult> verify_sx_regularity(
    const Scenario& sc, const Trajectory& traj, const ScheduleModuli& moduli,
    std::vector<std::string>* budget_notes);

// Per metastability request (k, g): computes the psi_hat certificate from
// the scenario region's cell-count modulus and scans for the first n whose
// window [n, n+g(n)] has diameter <= 1/(k+1); that n must not exceed the
// certificate. Windows sticking out of the horizon end the scan with a
// budget note rather than a failure.
std::vector<CheckResult> verify_metastability(
    const Scenario& sc, const Trajectory& traj, const ScheduleModuli& moduli,
    std::vector<std::string>* budget_notes);

// All recorded points stay inside the scenario region (tolerance 1e-9), so
// the region's total-boundedness modulus actually governs the trajectory.
CheckResult verify_tb_region(const Scenario& sc, const Trajectory& traj);

// x* = u solves the coupled problem: the objective at (x*, T1 x*) is
// minimal against sampled feasible pairs (tolerance 1e-9).
CheckResult verify_fix_solution_correspondence(const Scenario& sc,
                                               std::size_t sample_count);

// Four-point inequality residual >= -1e-9 * scale on quadruples sampled
// from the recorded points.
CheckResult verify_cat0_on_trajectory(const Scenario& sc,
                                      const Trajectory& traj);

// The full battery appropriate to the scenario (exact vs inexact, with or
// without u/region/objective).
VerificationReport run_all_checks(const Scenario& sc, const Trajectory& traj);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);
std::string report_to_text(const VerificationReport& report);

}  // namespace altfix
