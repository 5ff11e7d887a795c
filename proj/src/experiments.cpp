#include "rpmlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "rpmlab/necklace.hpp"
#include "rpmlab/triangulation.hpp"

namespace rpmlab {

namespace {

constexpr char kLetters[4] = {'B', 'b', 'R', 'r'};

/// Rejection-sampled uniform draw on {0..n-1}; avoids the
/// implementation-defined stream of std::uniform_int_distribution.
int uniform_below(std::mt19937_64& rng, int n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % std::uint64_t(n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return int(v % std::uint64_t(n));
}

std::string random_word(std::mt19937_64& rng, int n) {
  std::string w(n, '?');
  for (int i = 0; i < n; ++i) w[i] = kLetters[rng() & 3];
  return w;
}

/// Runs fn(trial) for every trial index.  Each trial writes only its own
/// output slot, so scheduling cannot change the result.
template <typename F>
void parallel_trials(int trials, F fn) {
  const int workers = std::min(worker_count(), std::max(trials, 1));
  if (workers <= 1) {
    for (int i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double binom_sigma(double p, int trials) {
  return std::sqrt(std::max(p * (1 - p), 0.0) / trials);
}

BoundRow make_row(double x, long long hits, int trials, double bound) {
  BoundRow row;
  row.x = x;
  row.empirical = double(hits) / trials;
  row.bound = bound;
  row.sigma = binom_sigma(row.empirical, trials);
  row.pass = row.empirical <= row.bound + 3 * row.sigma;
  return row;
}

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

int max_degree(const RootedTriangulation& t) {
  int m = 0;
  for (int v = 0; v < t.n_vertices(); ++v) m = std::max(m, t.degree(v));
  return m;
}

}  // namespace

void TrialConfig::validate() const {
  if (n < 1) throw std::invalid_argument("TrialConfig: n < 1");
  if (trials < 1) throw std::invalid_argument("TrialConfig: trials < 1");
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master ^ (trial * 0x9e3779b97f4a7c15ULL);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

int worker_count() {
  if (const char* env = std::getenv("RPM_LAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    return std::max(1, int(v));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::pair<std::string, int> sample_unbiased(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_unbiased: n < 1");
  std::mt19937_64 rng(seed);
  std::string word = random_word(rng, n);
  const int k = 1 + uniform_below(rng, n);
  return {std::move(word), k};
}

DegreeTailReport verify_degree_tail(const TrialConfig& cfg) {
  cfg.validate();
  std::vector<int> deg_at_root(cfg.trials), deg_at_redraw(cfg.trials);
  parallel_trials(cfg.trials, [&](int i) {
    const std::uint64_t s = trial_seed(cfg.seed, i);
    auto [word, k] = sample_unbiased(cfg.n, s);
    std::mt19937_64 redraw(trial_seed(s, 1));
    const int k2 = 1 + uniform_below(redraw, cfg.n);
    const RootedTriangulation t = build_plus(word);
    deg_at_root[i] = t.degree(t.face(k - 1)[0]);
    deg_at_redraw[i] = t.degree(t.face(k2 - 1)[0]);
  });

  DegreeTailReport report;
  report.root_choice_consistent = true;
  for (int m : cfg.m_grid) {
    long long hits = 0, redraw_hits = 0;
    for (int i = 0; i < cfg.trials; ++i) {
      hits += deg_at_root[i] >= m;
      redraw_hits += deg_at_redraw[i] >= m;
    }
    const double bound = 2 * std::pow(0.75, m / 4.0);
    report.rows.push_back(make_row(m, hits, cfg.trials, bound));
    const double p = double(hits) / cfg.trials;
    const double q = double(redraw_hits) / cfg.trials;
    const double gap_sigma =
        std::sqrt(std::max(p * (1 - p) + q * (1 - q), 0.0) / cfg.trials);
    if (std::abs(p - q) > 3 * gap_sigma + 1e-15)
      report.root_choice_consistent = false;
  }
  report.passed = report.root_choice_consistent;
  for (const auto& row : report.rows) report.passed = report.passed && row.pass;
  return report;
}

BoundaryTailReport verify_boundary_tail(const TrialConfig& cfg) {
  cfg.validate();
  std::vector<int> boundary_len(cfg.trials);
  std::vector<char> violated(cfg.trials, 0);
  parallel_trials(cfg.trials, [&](int i) {
    const std::uint64_t s = trial_seed(cfg.seed, i);
    auto [word, k] = sample_unbiased(cfg.n, s);
    (void)k;  // the boundary does not depend on the root
    const RootedTriangulation t = build_plus(word);
    boundary_len[i] = int(t.boundary_cycle().size());

    const WalkTrace w = walk(word);
    int min_x = 0, min_y = 0, max_abs_x = 0, max_abs_y = 0;
    for (size_t j = 0; j < w.x.size(); ++j) {
      min_x = std::min(min_x, w.x[j]);
      min_y = std::min(min_y, w.y[j]);
      max_abs_x = std::max(max_abs_x, std::abs(w.x[j]));
      max_abs_y = std::max(max_abs_y, std::abs(w.y[j]));
    }
    const int a = -min_x, b = -min_y;
    violated[i] = boundary_len[i] > boundary_size_bound(word) + 2 ||
                  a > max_abs_x || b > max_abs_y;
  });

  BoundaryTailReport report;
  const double sqrt_n = std::sqrt(double(cfg.n));
  for (double t : cfg.t_grid) {
    long long hits = 0;
    for (int i = 0; i < cfg.trials; ++i) hits += boundary_len[i] >= t * sqrt_n;
    report.rows.push_back(
        make_row(t, hits, cfg.trials, 2 * std::exp(-t * t / 32)));
  }
  for (char v : violated) report.domination_violations += v;
  report.passed = report.domination_violations == 0;
  for (const auto& row : report.rows) report.passed = report.passed && row.pass;
  return report;
}

RootDistanceReport verify_root_distance(const TrialConfig& cfg) {
  cfg.validate();
  RootDistanceReport report;
  std::vector<std::vector<int>> dist_by_n, maxdeg_by_n;
  for (int n : cfg.n_grid) {
    std::vector<int> dist(cfg.trials), maxdeg(cfg.trials);
    const std::uint64_t master = trial_seed(cfg.seed, 1000 + std::uint64_t(n));
    parallel_trials(cfg.trials, [&](int i) {
      auto [word, k] = sample_unbiased(n, trial_seed(master, i));
      const RootedTriangulation t = build_plus(word);
      const auto d = t.distances_to_boundary();
      dist[i] = (*d)[t.face(k - 1)[0]];
      maxdeg[i] = max_degree(t);
    });
    dist_by_n.push_back(std::move(dist));
    maxdeg_by_n.push_back(std::move(maxdeg));
  }

  for (int k : cfg.k_grid)
    for (size_t j = 0; j < cfg.n_grid.size(); ++j) {
      long long hits = 0;
      for (int d : dist_by_n[j]) hits += d <= k;
      report.rows.push_back(
          {cfg.n_grid[j], k, double(hits) / cfg.trials});
    }

  const double c = 8.0 / std::log(4.0 / 3.0);
  for (size_t j = 0; j < cfg.n_grid.size(); ++j) {
    const int n = cfg.n_grid[j];
    const double threshold = c * std::log(double(n));
    long long hits = 0;
    for (int m : maxdeg_by_n[j]) hits += m >= threshold;
    report.max_degree_rows.push_back(
        make_row(n, hits, cfg.trials, 2.0 / n));
  }

  report.decay_strict = true;
  for (size_t r = 0; r + 1 < report.rows.size(); ++r)
    if (report.rows[r].k == report.rows[r + 1].k &&
        report.rows[r + 1].empirical >= report.rows[r].empirical)
      report.decay_strict = false;
  report.passed = report.decay_strict;
  for (const auto& row : report.max_degree_rows)
    report.passed = report.passed && row.pass;
  return report;
}

LocalConvergenceReport verify_local_convergence(int r,
                                                const std::vector<int>& n_grid,
                                                int m, int trials,
                                                std::uint64_t seed,
                                                int stab_trials, int stab_m) {
  if (r < 0) throw std::invalid_argument("local convergence: r < 0");
  if (m < 1 || stab_m < 0)
    throw std::invalid_argument("local convergence: m < 1");
  if (trials < 1 || stab_trials < 0)
    throw std::invalid_argument("local convergence: trials < 1");
  if (n_grid.empty())
    throw std::invalid_argument("local convergence: empty n grid");
  if (stab_m == 0) stab_m = m;

  using Histogram = std::map<std::vector<int32_t>, long long>;
  auto histogram = [](const std::vector<std::vector<int32_t>>& encs) {
    Histogram h;
    for (const auto& e : encs) ++h[e];
    return h;
  };

  std::vector<std::vector<int32_t>> limit_encs(trials);
  const std::uint64_t limit_master = trial_seed(seed, 1);
  parallel_trials(trials, [&](int i) {
    std::mt19937_64 rng(trial_seed(limit_master, i));
    const std::string x = random_word(rng, m), y = random_word(rng, m);
    const RootedTriangulation t = build_glued(x, y);
    limit_encs[i] = ball_encoding(t, ball(t, r));
  });
  const Histogram limit_hist = histogram(limit_encs);
  limit_encs.clear();
  limit_encs.shrink_to_fit();

  LocalConvergenceReport report;
  for (int n : n_grid) {
    std::vector<std::vector<int32_t>> encs(trials);
    const std::uint64_t master = trial_seed(seed, 1000 + std::uint64_t(n));
    parallel_trials(trials, [&](int i) {
      auto [word, k] = sample_unbiased(n, trial_seed(master, i));
      const RootedTriangulation t = build_rooted(word, k);
      encs[i] = ball_encoding(t, ball(t, r));
    });
    const Histogram h = histogram(encs);

    // Pooled total variation: encodings rare across both samples share
    // one bucket.
    double sum = 0, rare_p = 0, rare_q = 0;
    auto add = [&](long long cp, long long cq) {
      const double p = double(cp) / trials, q = double(cq) / trials;
      if (cp + cq >= 5)
        sum += std::abs(p - q);
      else {
        rare_p += p;
        rare_q += q;
      }
    };
    auto it_p = h.begin();
    auto it_q = limit_hist.begin();
    while (it_p != h.end() || it_q != limit_hist.end()) {
      if (it_q == limit_hist.end() ||
          (it_p != h.end() && it_p->first < it_q->first)) {
        add(it_p->second, 0);
        ++it_p;
      } else if (it_p == h.end() || it_q->first < it_p->first) {
        add(0, it_q->second);
        ++it_q;
      } else {
        add(it_p->second, it_q->second);
        ++it_p;
        ++it_q;
      }
    }
    report.rows.push_back({n, (sum + std::abs(rare_p - rare_q)) / 2});
  }

  if (stab_trials > 0) {
    std::vector<char> stable(stab_trials, 0);
    const std::uint64_t stab_master = trial_seed(seed, 2);
    parallel_trials(stab_trials, [&](int i) {
      std::mt19937_64 rng(trial_seed(stab_master, i));
      const std::string x = random_word(rng, 2 * stab_m);
      const std::string y = random_word(rng, 2 * stab_m);
      const RootedTriangulation full = build_glued(x, y);
      const RootedTriangulation half =
          build_glued(x.substr(0, stab_m), y.substr(0, stab_m));
      stable[i] = ball_encoding(full, ball(full, r)) ==
                  ball_encoding(half, ball(half, r));
    });
    long long stable_count = 0;
    for (char s : stable) stable_count += s;
    report.stabilization = double(stable_count) / stab_trials;
  }

  bool decreasing = true;
  for (size_t j = 0; j + 1 < report.rows.size(); ++j) {
    const double prev = report.rows[j].tv, cur = report.rows[j + 1].tv;
    if (!(cur < prev || (cur == prev && cur == 0))) decreasing = false;
  }
  report.passed =
      decreasing && (stab_trials == 0 || report.stabilization >= 0.99);
  return report;
}

StabilizationReport stabilization_by_doubling(int r, int m0, int max_m,
                                              double target, int trials,
                                              std::uint64_t seed) {
  if (r < 0) throw std::invalid_argument("stabilization: r < 0");
  if (m0 < 1 || max_m < m0)
    throw std::invalid_argument("stabilization: bad ladder range");
  if (!(target > 0) || target > 1)
    throw std::invalid_argument("stabilization: target outside (0,1]");
  if (trials < 1) throw std::invalid_argument("stabilization: trials < 1");

  std::vector<int> ladder;
  for (long long m = m0; m <= max_m; m *= 2) ladder.push_back(int(m));
  const int steps = int(ladder.size());
  const int top = 2 * ladder.back();

  // One shared word sample per trial serves every ladder point: the
  // truncations are nested, so each adjacent pair is coupled.
  std::vector<std::vector<char>> stable(steps,
                                        std::vector<char>(trials, 0));
  const std::uint64_t master = trial_seed(seed, 5);
  parallel_trials(trials, [&](int i) {
    std::mt19937_64 rng(trial_seed(master, i));
    const std::string x = random_word(rng, top), y = random_word(rng, top);
    std::vector<std::vector<int32_t>> encs;
    for (int j = 0; j <= steps; ++j) {
      const int m = j < steps ? ladder[j] : top;
      const RootedTriangulation t =
          build_glued(x.substr(0, m), y.substr(0, m));
      encs.push_back(ball_encoding(t, ball(t, r)));
    }
    for (int j = 0; j < steps; ++j) stable[j][i] = encs[j] == encs[j + 1];
  });

  StabilizationReport report;
  for (int j = 0; j < steps; ++j) {
    long long count = 0;
    for (char s : stable[j]) count += s;
    report.steps.push_back({ladder[j], double(count) / trials});
  }
  for (const auto& step : report.steps) {
    report.m = step.m;
    report.fraction = step.fraction;
    if (step.fraction >= target) {
      report.passed = true;
      break;
    }
  }
  return report;
}

GlueIdentityReport verify_glue_identity(int max_len, int random_pairs,
                                        int max_random_len,
                                        std::uint64_t seed) {
  if (max_len < 1) throw std::invalid_argument("glue identity: max_len < 1");
  if (random_pairs < 0 || max_random_len < 1)
    throw std::invalid_argument("glue identity: bad random-pair config");

  auto word_from_index = [](long long index, int len) {
    std::string w(len, '?');
    for (int j = 0; j < len; ++j) {
      w[j] = kLetters[index & 3];
      index >>= 2;
    }
    return w;
  };
  auto identity_holds = [](const std::string& x, const std::string& y) {
    const RootedTriangulation glued = build_glued(x, y);
    const RootedTriangulation respliced =
        build_rooted(glue_word(x, y), int(y.size()) + 1);
    return rooted_isomorphic(respliced, glued);
  };

  GlueIdentityReport report;
  for (int lx = 1; lx <= max_len; ++lx)
    for (int ly = 0; ly <= max_len; ++ly) {
      const long long nx = 1LL << (2 * lx);
      const long long ny = 1LL << (2 * ly);
      std::vector<long long> mismatches(size_t(nx), 0);
      parallel_trials(int(nx), [&](int xi) {
        const std::string x = word_from_index(xi, lx);
        for (long long yi = 0; yi < ny; ++yi)
          if (!identity_holds(x, word_from_index(yi, ly))) ++mismatches[xi];
      });
      for (long long c : mismatches) report.mismatches += c;
      report.pairs_checked += nx * ny;
    }

  std::vector<char> bad(std::max(random_pairs, 1), 0);
  parallel_trials(random_pairs, [&](int i) {
    std::mt19937_64 rng(trial_seed(seed, 3000000 + std::uint64_t(i)));
    const int lx = 1 + uniform_below(rng, max_random_len);
    const int ly = uniform_below(rng, max_random_len + 1);
    const std::string x = random_word(rng, lx), y = random_word(rng, ly);
    bad[i] = !identity_holds(x, y);
  });
  for (int i = 0; i < random_pairs; ++i) report.mismatches += bad[i];
  report.pairs_checked += random_pairs;
  report.passed = report.mismatches == 0;
  return report;
}

void write_degree_tail_csv(std::ostream& out, const DegreeTailReport& r) {
  out << "m,empirical,bound\n";
  for (const auto& row : r.rows) {
    put(out, row.x);
    out << ',';
    put(out, row.empirical);
    out << ',';
    put(out, row.bound);
    out << '\n';
  }
}

void write_boundary_tail_csv(std::ostream& out, const BoundaryTailReport& r) {
  out << "t,empirical,bound\n";
  for (const auto& row : r.rows) {
    put(out, row.x);
    out << ',';
    put(out, row.empirical);
    out << ',';
    put(out, row.bound);
    out << '\n';
  }
}

void write_root_distance_csv(std::ostream& out, const RootDistanceReport& r) {
  out << "n,k,empirical\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.k << ',';
    put(out, row.empirical);
    out << '\n';
  }
}

void write_max_degree_csv(std::ostream& out, const RootDistanceReport& r) {
  out << "n,empirical,bound\n";
  for (const auto& row : r.max_degree_rows) {
    put(out, row.x);
    out << ',';
    put(out, row.empirical);
    out << ',';
    put(out, row.bound);
    out << '\n';
  }
}

void write_local_convergence_csv(std::ostream& out,
                                 const LocalConvergenceReport& r) {
  out << "n,tv\n";
  for (const auto& row : r.rows) {
    out << row.n << ',';
    put(out, row.tv);
    out << '\n';
  }
}

}  // namespace rpmlab
