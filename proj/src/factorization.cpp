#include "posnorm/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "posnorm/norms.hpp"

namespace posnorm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExponentPair square_pair(const ExponentPair& pair) { return make_exponent_pair(pair.p, pair.p); }

// Objective as a function of log d on the nonzero rows. Keeps the last
// witness of ||B||_{p,p} as a warm start for the next evaluation.
class LogObjective {
 public:
  LogObjective(const PositiveMatrix& a, const ExponentPair& pair, std::vector<std::size_t> active,
               NormOptions inner)
      : a_(a), pair_(pair), inner_pair_(square_pair(pair)), active_(std::move(active)),
        inner_(std::move(inner)) {}

  std::vector<double> to_d(std::span<const double> u) const {
    std::vector<double> d(a_.rows(), 0.0);
    for (std::size_t i = 0; i < active_.size(); ++i) d[active_[i]] = std::exp(u[i]);
    return d;
  }

  double operator()(std::span<const double> u) {
    std::vector<double> d = to_d(u);
    PositiveMatrix b = divide_rows(a_, d);
    NormEstimate inner = operator_norm(b, inner_pair_, inner_);
    inner_.warm_start = inner.witness;
    return vector_norm(d, pair_.r) * inner.value;
  }

 private:
  const PositiveMatrix& a_;
  const ExponentPair& pair_;
  ExponentPair inner_pair_;
  std::vector<std::size_t> active_;
  NormOptions inner_;
};

struct DescentResult {
  std::vector<double> u;
  double value = 0;
  std::size_t sweeps = 0;
  bool converged = false;
  std::vector<double> history;
};

DescentResult coordinate_descent(LogObjective& f, std::vector<double> u, double tol,
                                 std::size_t max_sweeps) {
  DescentResult res;
  double current = f(u);
  res.history.push_back(current);
  std::vector<double> step(u.size(), 0.5);
  constexpr double kMaxStep = 4.0;

  auto try_point = [&](std::vector<double>& candidate) {
    double v = f(candidate);
    if (v < current) {
      current = v;
      u = candidate;
      res.history.push_back(v);
      return true;
    }
    return false;
  };

  std::size_t sweep = 0;
  while (sweep < max_sweeps) {
    ++sweep;
    const std::vector<double> sweep_start = u;
    for (std::size_t j = 0; j < u.size(); ++j) {
      bool accepted = false;
      for (double dir : {1.0, -1.0}) {
        std::vector<double> candidate = u;
        candidate[j] += dir * step[j];
        if (try_point(candidate)) {
          accepted = true;
          // Line search: keep doubling along the successful direction.
          double s = step[j];
          while (s < kMaxStep) {
            s *= 2;
            std::vector<double> further = u;
            further[j] += dir * s;
            if (!try_point(further)) break;
          }
          step[j] = std::min(s, kMaxStep);
          break;
        }
      }
      if (!accepted) step[j] *= 0.5;
    }
    // Pattern move along the displacement of the whole sweep.
    std::vector<double> pattern = u;
    bool moved = false;
    for (std::size_t j = 0; j < u.size(); ++j) {
      pattern[j] += u[j] - sweep_start[j];
      moved = moved || u[j] != sweep_start[j];
    }
    if (moved) try_point(pattern);

    if (*std::max_element(step.begin(), step.end()) < tol) {
      res.converged = true;
      break;
    }
  }
  res.u = std::move(u);
  res.value = current;
  res.sweeps = sweep;
  return res;
}

}  // namespace

PositiveMatrix divide_rows(const PositiveMatrix& a, std::span<const double> d) {
  if (d.size() != a.rows()) {
    throw std::invalid_argument("diagonal has length " + std::to_string(d.size()) + ", expected " +
                                std::to_string(a.rows()));
  }
  std::vector<double> entries(a.entries().begin(), a.entries().end());
  for (std::size_t j = 0; j < a.rows(); ++j) {
    if (!std::isfinite(d[j]) || d[j] < 0) {
      throw std::invalid_argument("d[" + std::to_string(j) + "] must be finite and >= 0");
    }
    if (a.is_zero_row(j)) continue;
    if (d[j] == 0) {
      throw std::invalid_argument("d[" + std::to_string(j) + "] = 0 on a nonzero row");
    }
    for (std::size_t k = 0; k < a.cols(); ++k) entries[j * a.cols() + k] /= d[j];
  }
  return PositiveMatrix(a.rows(), a.cols(), std::move(entries));
}

double objective(const PositiveMatrix& a, std::span<const double> d, const ExponentPair& pair,
                 const NormOptions& opts) {
  PositiveMatrix b = divide_rows(a, d);
  return vector_norm(d, pair.r) * operator_norm(b, square_pair(pair), opts).value;
}

std::vector<double> default_seed_d(const PositiveMatrix& a, const ExponentPair& pair) {
  const Exponent dual = pair.p_conj && pair.p.exact_inverse() < Rational(1) ? *pair.p_conj
                                                                              : Exponent::infinity();
  std::vector<double> d(a.rows());
  for (std::size_t j = 0; j < a.rows(); ++j) d[j] = vector_norm(a.row(j), dual);
  return d;
}

Factorization optimize(const PositiveMatrix& a, const ExponentPair& pair,
                       const FactorizationOptions& opts) {
  if (!pair.p_conj) throw std::invalid_argument("optimize requires p >= 1");
  if (a.is_zero()) throw std::invalid_argument("optimize: the zero matrix has no factorization to optimize");

  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < a.rows(); ++j) {
    if (!a.is_zero_row(j)) active.push_back(j);
  }

  NormOptions inner = opts.norm_opts;
  inner.multistarts = 1;
  inner.tol = std::min(inner.tol, 1e-12);
  inner.warm_start.clear();

  std::vector<double> best_d;
  DescentResult best;
  bool have_best = false;

  if (pair.r.is_infinite()) {
    // p = q: ||d||_inf ||B||_{p,p} >= ||A||_{p,p} with equality at d = 1.
    best_d.assign(a.rows(), 0.0);
    for (std::size_t j : active) best_d[j] = 1.0;
    best.value = objective(a, best_d, pair, opts.norm_opts);
    best.history.push_back(best.value);
    best.converged = true;
  } else {
    const std::vector<double> seed = default_seed_d(a, pair);
    std::vector<double> u0(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) u0[i] = std::log(seed[active[i]]);

    const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
    for (std::size_t r = 0; r < restarts; ++r) {
      std::vector<double> u = u0;
      if (r > 0) {
        std::mt19937_64 rng(opts.seed + r);
        std::normal_distribution<double> noise(0.0, 0.5);
        for (double& v : u) v += noise(rng);
      }
      LogObjective f(a, pair, active, inner);
      DescentResult run = coordinate_descent(f, std::move(u), opts.tol, opts.max_iter);
      if (!have_best || run.value < best.value) {
        best = std::move(run);
        have_best = true;
      }
    }
    LogObjective f(a, pair, active, inner);
    best_d = f.to_d(best.u);
  }

  // Balanced gauge: rescale so that ||d||_r = ||B||_{p,p}.
  PositiveMatrix b = divide_rows(a, best_d);
  const double d_norm = vector_norm(best_d, pair.r);
  const double b_norm = operator_norm(b, square_pair(pair), opts.norm_opts).value;
  if (d_norm > 0 && b_norm > 0) {
    const double c = std::sqrt(b_norm / d_norm);
    for (double& v : best_d) v *= c;
  }

  Factorization result{.d = best_d,
                       .b = divide_rows(a, best_d),
                       .objective = best.value,
                       .pair = pair,
                       .iterations = best.sweeps,
                       .converged = best.converged,
                       .certified = !(pair.q.exact_inverse() > Rational(1)),
                       .history = std::move(best.history)};
  try {
    result.norm = operator_norm(a, pair, opts.norm_opts).value;
    result.gap = (result.objective - result.norm) / result.norm;
  } catch (const std::domain_error&) {
    result.norm = kNaN;
    result.gap = kNaN;
    result.certified = false;
  }
  return result;
}

FactorizationCheck verify_factorization(const PositiveMatrix& a, const Factorization& f,
                                        const NormEstimate& norm_est) {
  FactorizationCheck check;
  auto& v = check.violations;
  check.gap = norm_est.value > 0 ? (f.objective - norm_est.value) / norm_est.value : 0.0;

  if (f.d.size() != a.rows() || f.b.rows() != a.rows() || f.b.cols() != a.cols()) {
    v.push_back("shape: factor dimensions do not match A");
    return check;
  }
  for (std::size_t j = 0; j < a.rows(); ++j) {
    const double dj = f.d[j];
    const std::string at = "row " + std::to_string(j + 1);
    if (!std::isfinite(dj)) {
      v.push_back("finite: d is not finite at " + at);
      continue;
    }
    if (dj < 0) v.push_back("nonnegative: d is negative at " + at);
    if (a.is_zero_row(j)) {
      if (dj != 0) v.push_back("zero-row: d must be 0 on zero " + at);
      if (!f.b.is_zero_row(j)) v.push_back("zero-row: B must vanish on zero " + at);
    } else if (dj == 0) {
      v.push_back("zero-row: d is 0 on nonzero " + at);
    }
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bjk = f.b(j, k);
      if (bjk < 0) v.push_back("nonnegative: B is negative at (" + std::to_string(j + 1) + "," +
                               std::to_string(k + 1) + ")");
      const double ajk = a(j, k);
      if (std::abs(ajk - dj * bjk) > 1e-12 * ajk || (ajk == 0 && dj * bjk != 0)) {
        v.push_back("reconstruction: a != d b at (" + std::to_string(j + 1) + "," +
                    std::to_string(k + 1) + ")");
      }
    }
  }
  if (f.objective < norm_est.lower - 1e-9) {
    v.push_back("upper-bound: objective " + std::to_string(f.objective) +
                " is below the certified norm " + std::to_string(norm_est.lower));
  }
  return check;
}

}  // namespace posnorm
