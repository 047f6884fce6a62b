#include "fmgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <tuple>
#include <vector>

#include "fmgame/numeric.hpp"

namespace fmgame {

namespace {

constexpr double kDeployerTie = 1e-12;
constexpr double kProfitTie = 1e-9;

// Maximizer over [0, inf) of a concave f with f increasing at 0.
template <class F>
double maximize_concave(F&& f, double tol) {
  double hi = 1.0;
  for (int i = 0; i < 1100 && f(2.0 * hi) >= f(hi); ++i) hi *= 2.0;
  return numeric::golden_section_maximize(f, 0.0, 2.0 * hi, tol);
}

double effort_value(double margin, double scale, double denom, double q) {
  return margin * q - scale * q * q / denom;
}

int thread_count(const OracleConfig& config, std::size_t work) {
  int n = config.threads > 0 ? config.threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  const auto useful = static_cast<int>(std::max<std::size_t>(1, work / 64));
  return std::min(n, useful);
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Candidate {
  double w1 = 0.0;
  double eta1 = 0.0;
  double q1 = 0.0;
  bool win = false;
  double w2 = 0.0;
  double q2 = 0.0;
  bool high_fee_wins = false;
  double profit = 0.0;
  int fee_rank = 0;  // 0 for w_high, 1 for w_low
  std::size_t index = 0;
};

class GameSearch {
 public:
  GameSearch(const ModelParams& p, const OracleConfig& config) : p_(p), tol_(config.effort_search) {}

  Candidate evaluate(double w1, double eta1) const {
    Candidate out;
    out.w1 = w1;
    out.eta1 = eta1;
    out.q1 = effort(p_.theta - w1 + p_.s, 1.0 + eta1);

    const double entrant_margin = p_.theta - p_.w_low + p_.s;
    const double entrant_denom = (1.0 + eta1) * (1.0 + p_.eta_cap);
    const double entrant_q = effort(entrant_margin, entrant_denom);
    const double entrant_value = effort_value(entrant_margin, p_.c, entrant_denom, entrant_q);

    const double flywheel_denom = (1.0 + p_.k * out.q1) * (1.0 + p_.eta_cap);
    double best_revenue = -1.0;
    for (double w2 : {p_.w_high, p_.w_low}) {
      const double margin = p_.theta - w2 + p_.s;
      const double q = effort(margin, flywheel_denom);
      const double value = effort_value(margin, p_.c, flywheel_denom, q);
      const bool keeps = value >= entrant_value - kDeployerTie * std::max(1.0, std::abs(entrant_value));
      if (!keeps) continue;
      if (w2 == p_.w_high) out.high_fee_wins = true;
      const double revenue = w2 * q;
      if (revenue > best_revenue) {
        best_revenue = revenue;
        out.win = true;
        out.w2 = w2;
        out.q2 = q;
      }
    }
    if (!out.win) {
      out.w2 = p_.w_low;
      out.q2 = entrant_q;
    }
    out.profit = w1 * out.q1 + (out.win ? out.w2 * out.q2 : 0.0);
    return out;
  }

 private:
  double effort(double margin, double denom) const {
    return oracle_best_effort(margin, p_.c, denom, tol_);
  }

  ModelParams p_;
  double tol_;
};

// True when a should replace b as the incumbent's choice. Near-ties follow the
// scenario order: losing period 2 first, then the high fee, then grid order.
bool preferred(const Candidate& a, const Candidate& b) {
  const double scale = std::max({1.0, std::abs(a.profit), std::abs(b.profit)});
  if (a.profit > b.profit + kProfitTie * scale) return true;
  if (b.profit > a.profit + kProfitTie * scale) return false;
  return std::make_tuple(a.win, a.fee_rank, a.index) < std::make_tuple(b.win, b.fee_rank, b.index);
}

}  // namespace

void validate(const OracleConfig& config) {
  if (config.eta_grid_points < 3) throw ConfigError("oracle: eta_grid_points must be at least 3");
  if (config.integrated_grid_points < 3) {
    throw ConfigError("oracle: integrated_grid_points must be at least 3");
  }
  if (config.k_grid_points < 3) throw ConfigError("oracle: k_grid_points must be at least 3");
  if (!(config.effort_search > 0.0)) throw ConfigError("oracle: effort_search must be positive");
  if (config.threads < 0) throw ConfigError("oracle: threads must be non-negative");
}

double oracle_best_effort(double margin, double cost_scale, double cost_denominator, double tol) {
  if (!(cost_denominator > 0.0) || !(cost_scale > 0.0)) {
    throw DomainError("oracle_best_effort: cost scale and denominator must be positive");
  }
  if (!(margin > 0.0)) return 0.0;
  return maximize_concave(
      [&](double q) { return effort_value(margin, cost_scale, cost_denominator, q); }, tol);
}

OracleEquilibrium oracle_solve_game(const ModelParams& p, const OracleConfig& config) {
  validate(config);
  require_valid(p);

  const GameSearch search(p, config);
  const std::size_t n = static_cast<std::size_t>(config.eta_grid_points);
  const double step = p.eta_cap / static_cast<double>(n - 1);
  const double fees[2] = {p.w_high, p.w_low};

  std::vector<Candidate> grid(2 * n);
  parallel_for(grid.size(), thread_count(config, grid.size()), [&](std::size_t i) {
    const int fee = static_cast<int>(i / n);
    const std::size_t j = i % n;
    const double eta1 = j + 1 == n ? p.eta_cap : step * static_cast<double>(j);
    grid[i] = search.evaluate(fees[fee], eta1);
    grid[i].fee_rank = fee;
    grid[i].index = j;
  });

  OracleEquilibrium out;
  out.eta_step = step;
  std::vector<Candidate> candidates = grid;
  for (const auto& g : grid) out.high_fee_period2_wins += g.high_fee_wins ? 1 : 0;

  // Locate each win/lose flip between neighbouring grid points to adjacent
  // doubles so the boundary strategy is not lost between samples.
  for (int fee = 0; fee < 2; ++fee) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const Candidate& a = grid[fee * n + j];
      const Candidate& b = grid[fee * n + j + 1];
      if (a.win == b.win) continue;
      const bool win_low = a.win;
      const double lo = numeric::bisect_predicate(
          [&](double eta) { return search.evaluate(fees[fee], eta).win == win_low; }, a.eta1,
          b.eta1);
      for (double eta : {lo, std::nextafter(lo, b.eta1)}) {
        Candidate c = search.evaluate(fees[fee], eta);
        c.fee_rank = fee;
        c.index = j;
        candidates.push_back(c);
      }
    }
  }

  const Candidate* best = &candidates.front();
  for (const auto& c : candidates) {
    if (preferred(c, *best)) best = &c;
  }

  Equilibrium& eq = out.eq;
  eq.strategy = {best->w1, best->eta1};
  eq.period1 = {best->q1, best->q1, best->w1 - p.s, best->eta1};
  eq.w2_tilde = p.w_low;
  eq.eta2 = p.eta_cap;
  eq.eta2_tilde = p.eta_cap;
  eq.w2 = best->w2;
  if (best->win) {
    eq.winner2 = Developer::Incumbent;
    eq.regime = best->fee_rank == 0 ? Regime::Defend : Regime::Dominate;
    eq.period2 = {best->q2, best->q2, best->w2 - p.s, p.eta_cap};
  } else {
    eq.winner2 = Developer::Entrant;
    eq.regime = Regime::Harvest;
    eq.period2 = {best->q2, best->q2, p.w_low - p.s, p.eta_cap};
  }
  out.incumbent_profit = best->profit;
  return out;
}

IntegratedOutcome oracle_solve_integrated(const ModelParams& p, const OracleConfig& config) {
  validate(config);
  require_valid(p);

  const std::size_t n = static_cast<std::size_t>(config.integrated_grid_points);
  std::vector<double> etas(n);
  for (std::size_t j = 0; j < n; ++j) {
    etas[j] = j + 1 == n ? p.eta_cap : p.eta_cap * static_cast<double>(j) / (n - 1);
  }
  const double tol = config.effort_search;

  struct Stage2 {
    double value = 0.0;
    double eta = 0.0;
    double q = 0.0;
  };
  // Period 2 given period-1 engagement q1: best openness and effort.
  auto stage2 = [&](double q1) {
    Stage2 best{-1.0, 0.0, 0.0};
    for (double eta : etas) {
      const double denom = (1.0 + p.k * q1) * (1.0 + eta);
      const double q = oracle_best_effort(p.theta, p.c, denom, tol);
      const double value = effort_value(p.theta, p.c, denom, q);
      if (value > best.value) best = {value, eta, q};
    }
    return best;
  };

  struct Stage1 {
    double value = 0.0;
    double q1 = 0.0;
  };
  // Fine-tuning effort is chosen period by period, as the deployer does in
  // the decentralized game; openness is chosen for the two-period total.
  std::vector<Stage1> rows(n);
  parallel_for(n, thread_count(config, n * 64), [&](std::size_t j) {
    const double q1 = oracle_best_effort(p.theta, p.c, 1.0 + etas[j], tol);
    rows[j] = {effort_value(p.theta, p.c, 1.0 + etas[j], q1) + stage2(q1).value, q1};
  });

  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (rows[j].value > rows[best].value) best = j;
  }

  const auto second = stage2(rows[best].q1);
  IntegratedOutcome out;
  out.eta1v = etas[best];
  out.eta2v = second.eta;
  out.q1v = rows[best].q1;
  out.q2v = second.q;
  out.profit = rows[best].value;
  out.consumer = (out.q1v * out.q1v + out.q2v * out.q2v) / 2.0;
  out.social = out.profit + out.consumer;
  return out;
}

}  // namespace fmgame
