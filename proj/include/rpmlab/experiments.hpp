#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rpmlab {

/// Shared knobs for the Monte-Carlo verification harness.  Identical
/// config and seed reproduce identical reports bit for bit, whatever the
/// worker count: every trial derives its own seed and writes its own
/// slot, and the reduction is a fixed-order single-threaded pass.
struct TrialConfig {
  int n = 10000;  // word length per trial
  int trials = 10000;
  std::uint64_t seed = 1;
  std::vector<int> m_grid = {0,  2,  4,  8,  12, 16, 20, 24, 28,
                             32, 36, 40, 44, 48, 52, 56, 60, 64};
  std::vector<double> t_grid = {0, 1, 2, 3, 4, 6};
  std::vector<int> k_grid = {0, 1, 2};
  std::vector<int> n_grid = {100, 1000, 10000};

  void validate() const;  // throws std::invalid_argument
};

/// Deterministic per-trial seed: splitmix64 finalizer over master seed
/// and trial index.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Worker count for trial batches: RPM_LAB_THREADS when set (clamped to
/// >= 1), hardware concurrency otherwise.
int worker_count();

/// One draw from the unbiased rerooting measure: a word of length n with
/// letters i.i.d. uniform over {B, b, R, r} and an independent root step
/// index uniform on {1..n}.
std::pair<std::string, int> sample_unbiased(int n, std::uint64_t seed);

/// One verified row: an empirical probability against a closed-form
/// bound, with three binomial standard errors of slack.
struct BoundRow {
  double x = 0;  // grid value (m, t, or n)
  double empirical = 0;
  double bound = 0;
  double sigma = 0;   // sqrt(p(1-p)/trials) at the empirical p
  bool pass = false;  // empirical <= bound + 3 sigma
};

struct DegreeTailReport {
  std::vector<BoundRow> rows;  // x = m
  bool root_choice_consistent = false;
  bool passed = false;
};

/// P[deg(root vertex) >= m] for uniformly rerooted n-step growth maps
/// against the exponential tail 2 * (3/4)^(m/4).  Also re-draws the root
/// on the same words and checks the two empirical tails agree within
/// noise (the statistic must not depend on the root choice).
DegreeTailReport verify_degree_tail(const TrialConfig& cfg);

struct BoundaryTailReport {
  std::vector<BoundRow> rows;  // x = t
  long long domination_violations = 0;
  bool passed = false;
};

/// P[|boundary| >= t * sqrt(n)] against 2 * exp(-t^2 / 32).  Per trial
/// the walk-minimum bound a + b + |X_n + a| + |Y_n + b| + 2 must
/// dominate the measured boundary length, and the excursion maxima must
/// dominate a and b; violations are counted and fail the report.
BoundaryTailReport verify_boundary_tail(const TrialConfig& cfg);

struct RootDistanceRow {
  int n = 0;
  int k = 0;
  double empirical = 0;
};

struct RootDistanceReport {
  std::vector<RootDistanceRow> rows;      // grouped by k, n ascending
  std::vector<BoundRow> max_degree_rows;  // x = n, bound 2/n
  bool decay_strict = false;
  bool passed = false;
};

/// P[dist(root vertex, boundary) <= k] across the n grid, strictly
/// decreasing in n for every k in the grid.  Logs the maximum degree and
/// checks P[max degree >= C log n] <= 2/n for C = 8 / log(4/3).
RootDistanceReport verify_root_distance(const TrialConfig& cfg);

struct TvRow {
  int n = 0;
  double tv = 0;
};

struct LocalConvergenceReport {
  std::vector<TvRow> rows;
  double stabilization = -1;  // fraction of trials with B_r stable m -> 2m
  bool passed = false;
};

/// Total-variation distance between the law of the radius-r ball under
/// uniform rerooting at size n and the truncated two-sided limit law at
/// word length m, over canonical ball encodings; encodings seen fewer
/// than 5 times across the two samples are pooled into one bucket.
/// Stabilization rebuilds the limit at truncations stab_m and 2*stab_m
/// on coupled words (stab_m = 0 means m) and reports the fraction of
/// trials with identical balls; the ball truncation time has a ~1/sqrt(m)
/// tail, so stab_m normally comes from stabilization_by_doubling.
/// Passes when the tv column strictly decreases along the n grid (ties
/// allowed only at exactly 0) and stabilization >= 0.99; stab_trials = 0
/// skips the stabilization half (field stays -1, tv alone decides).
LocalConvergenceReport verify_local_convergence(int r,
                                                const std::vector<int>& n_grid,
                                                int m, int trials,
                                                std::uint64_t seed,
                                                int stab_trials = 1000,
                                                int stab_m = 0);

struct DoublingStep {
  int m = 0;
  double fraction = 0;  // coupled trials with B_r equal at m and 2m
};

struct StabilizationReport {
  std::vector<DoublingStep> steps;
  int m = 0;            // first ladder truncation meeting the target
  double fraction = 0;  // fraction at that truncation
  bool passed = false;  // fraction >= target before max_m ran out
};

/// Chooses the truncation by doubling: measures the coupled m-vs-2m ball
/// agreement along the ladder m0, 2*m0, ... <= max_m on one shared word
/// sample per trial, and stops at the first truncation whose agreement
/// fraction reaches target.  When no ladder point reaches it, the last
/// one is reported with passed = false.
StabilizationReport stabilization_by_doubling(int r, int m0, int max_m,
                                              double target, int trials,
                                              std::uint64_t seed);

struct GlueIdentityReport {
  long long pairs_checked = 0;
  long long mismatches = 0;
  bool passed = false;
};

/// The splice identity: rebuilding from the spliced word, rooted at step
/// |Y| + 1, is rooted-isomorphic to the two-sided glueing.  Exhaustive
/// over |X| in 1..max_len and |Y| in 0..max_len, then random_pairs random
/// pairs with |X| in 1..max_random_len and |Y| in 0..max_random_len.
GlueIdentityReport verify_glue_identity(int max_len, int random_pairs,
                                        int max_random_len,
                                        std::uint64_t seed);

/// CSV emitters, one file per experiment; headers name the columns.
void write_degree_tail_csv(std::ostream& out, const DegreeTailReport& r);
void write_boundary_tail_csv(std::ostream& out, const BoundaryTailReport& r);
void write_root_distance_csv(std::ostream& out, const RootDistanceReport& r);
void write_max_degree_csv(std::ostream& out, const RootDistanceReport& r);
void write_local_convergence_csv(std::ostream& out,
                                 const LocalConvergenceReport& r);

}  // namespace rpmlab
