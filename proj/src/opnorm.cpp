#include "posnorm/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "posnorm/norms.hpp"

namespace posnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Floor for (A x)_j before raising it to the negative power q - 1.
constexpr double kPowerFloor = 1e-300;
constexpr double kMonotoneSlack = 1e-12;

bool is_one(const Exponent& p) { return p.exact_inverse() == Rational(1); }
bool below_one(const Exponent& p) { return p.exact_inverse() > Rational(1); }

// Smallest index among the maxima.
std::size_t argmax(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

void normalize(std::vector<double>& x, const Exponent& p) {
  double norm = vector_norm(x, p);
  if (norm > 0) {
    for (double& v : x) v /= norm;
  }
}

// A nonnegative unit vector x in l_p with <v, x> = ||v||_{p*}.
std::vector<double> holder_dual_vector(std::span<const double> v, const Exponent& p) {
  if (p.is_infinite()) return std::vector<double>(v.size(), 1.0);
  double largest = *std::max_element(v.begin(), v.end());
  if (is_one(p) || largest == 0) return basis_vector(v.size(), argmax(v));
  const double power = 1.0 / (p.value() - 1.0);  // p* - 1
  std::vector<double> x(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) x[k] = v[k] > 0 ? std::pow(v[k] / largest, power) : 0.0;
  normalize(x, p);
  return x;
}

NormEstimate make_exact(const PositiveMatrix& a, NormMethod method, double value,
                        std::vector<double> witness, const Exponent& p, const Exponent& q) {
  NormEstimate est;
  est.value = value;
  est.method = method;
  est.lower = std::min(norm_ratio(a, witness, p, q), value);
  est.upper = value;
  est.witness = std::move(witness);
  est.tol = 0;
  return est;
}

// Detects A = u v^T up to the rounding of forming the products.
// On success returns u (with u at the reference row equal to 1) and v.
std::optional<std::pair<std::vector<double>, std::vector<double>>> rank_one_factors(
    const PositiveMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t ref_row = 0;
  double ref_max = -1;
  for (std::size_t j = 0; j < m; ++j) {
    auto row = a.row(j);
    double mx = *std::max_element(row.begin(), row.end());
    if (mx > ref_max) {
      ref_max = mx;
      ref_row = j;
    }
  }
  if (ref_max <= 0) return std::nullopt;
  auto ref = a.row(ref_row);
  std::vector<double> v(ref.begin(), ref.end());
  const std::size_t pivot = argmax(v);
  std::vector<double> u(m);
  for (std::size_t j = 0; j < m; ++j) {
    double c = a(j, pivot) / v[pivot];
    for (std::size_t k = 0; k < n; ++k) {
      double expected = c * v[k];
      double actual = a(j, k);
      if (std::abs(actual - expected) > 16 * kEps * std::max(actual, expected)) return std::nullopt;
    }
    u[j] = c;
  }
  return std::make_pair(std::move(u), std::move(v));
}

bool is_diagonal(const PositiveMatrix& a) {
  for (std::size_t j = 0; j < a.rows(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (j != k && a(j, k) != 0) return false;
    }
  }
  return true;
}

double objective(const PositiveMatrix& a, std::span<const double> x, const Exponent& q) {
  return vector_norm(a.apply(x), q);
}

// Maximizer of <g, x> over the nonnegative part of the unit l_p ball.
std::vector<double> boyd_target(const PositiveMatrix& a, std::span<const double> x,
                                const ExponentPair& pair) {
  const double q = pair.q.value();
  std::vector<double> w = a.apply(x);
  if (q == 1.0) {
    std::fill(w.begin(), w.end(), 1.0);
  } else if (q != 2.0) {
    for (double& y : w) y = std::pow(q < 1 ? std::max(y, kPowerFloor) : y, q - 1.0);
  }
  double wmax = *std::max_element(w.begin(), w.end());
  if (wmax > 0) {
    for (double& y : w) y /= wmax;
  }
  std::vector<double> g = a.apply_transpose(w);
  double gmax = *std::max_element(g.begin(), g.end());
  if (gmax <= 0) return std::vector<double>(x.begin(), x.end());
  const double power = 1.0 / (pair.p.value() - 1.0);
  for (double& v : g) v = v > 0 ? std::pow(v / gmax, power) : 0.0;
  normalize(g, pair.p);
  return g;
}

}  // namespace

std::string_view to_string(NormMethod method) {
  switch (method) {
    case NormMethod::kExactP1: return "exact-p1";
    case NormMethod::kExactPInf: return "exact-pinf";
    case NormMethod::kExactQInf: return "exact-qinf";
    case NormMethod::kExactDiagonal: return "exact-diagonal";
    case NormMethod::kExactRankOne: return "exact-rank-one";
    case NormMethod::kPowerIteration: return "power-iteration";
    case NormMethod::kGridOracle: return "grid-oracle";
    case NormMethod::kDuality: return "duality";
  }
  return "unknown";
}

bool is_exact(NormMethod method) {
  switch (method) {
    case NormMethod::kExactP1:
    case NormMethod::kExactPInf:
    case NormMethod::kExactQInf:
    case NormMethod::kExactDiagonal:
    case NormMethod::kExactRankOne:
      return true;
    default:
      return false;
  }
}

double norm_ratio(const PositiveMatrix& a, std::span<const double> x, const Exponent& p,
                  const Exponent& q) {
  double xn = vector_norm(x, p);
  if (xn == 0) return 0;
  return vector_norm(a.apply(x), q) / xn;
}

std::optional<NormEstimate> exact_norm(const PositiveMatrix& a, const Exponent& p,
                                       const Exponent& q) {
  if (below_one(p)) return std::nullopt;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  if (a.is_zero()) {
    return make_exact(a, NormMethod::kExactDiagonal, 0.0, basis_vector(n, 0), p, q);
  }

  if (is_one(p) && !below_one(q)) {
    std::vector<double> col_norms(n);
    for (std::size_t k = 0; k < n; ++k) col_norms[k] = vector_norm(a.column(k), q);
    std::size_t best = argmax(col_norms);
    return make_exact(a, NormMethod::kExactP1, col_norms[best], basis_vector(n, best), p, q);
  }

  if (p.is_infinite()) {
    std::vector<double> ones(n, 1.0);
    double value = vector_norm(a.apply(ones), q);
    return make_exact(a, NormMethod::kExactPInf, value, std::move(ones), p, q);
  }

  if (q.is_infinite()) {
    const Exponent p_conj = conjugate(p);
    std::vector<double> row_norms(m);
    for (std::size_t j = 0; j < m; ++j) row_norms[j] = vector_norm(a.row(j), p_conj);
    std::size_t best = argmax(row_norms);
    return make_exact(a, NormMethod::kExactQInf, row_norms[best],
                      holder_dual_vector(a.row(best), p), p, q);
  }

  if (q <= p && is_diagonal(a)) {
    const ExponentPair pair = make_exponent_pair(p, q);
    const std::size_t len = std::min(m, n);
    std::vector<double> d(len);
    for (std::size_t j = 0; j < len; ++j) d[j] = a(j, j);
    double value = vector_norm(d, pair.r);
    std::vector<double> witness(n, 0.0);
    if (pair.r.is_infinite()) {
      witness[argmax(d)] = 1.0;
    } else {
      // Equality in Hoelder: x_k proportional to d_k^(r/p).
      const double power = pair.r.value() / p.value();
      double dmax = *std::max_element(d.begin(), d.end());
      for (std::size_t k = 0; k < len; ++k) {
        witness[k] = d[k] > 0 ? std::pow(d[k] / dmax, power) : 0.0;
      }
      normalize(witness, p);
    }
    return make_exact(a, NormMethod::kExactDiagonal, value, std::move(witness), p, q);
  }

  if (auto factors = rank_one_factors(a)) {
    const auto& [u, v] = *factors;
    double value = vector_norm(u, q) * vector_norm(v, conjugate(p));
    return make_exact(a, NormMethod::kExactRankOne, value, holder_dual_vector(v, p), p, q);
  }
  return std::nullopt;
}

std::optional<NormEstimate> exact_norm(const PositiveMatrix& a, const ExponentPair& pair) {
  return exact_norm(a, pair.p, pair.q);
}

NormEstimate power_iteration(const PositiveMatrix& a, const ExponentPair& pair,
                             std::span<const double> x0, double tol, std::size_t max_iter) {
  if (pair.p.is_infinite() || pair.p.exact_inverse() >= Rational(1)) {
    throw std::domain_error("power_iteration requires 1 < p < inf, got p=" + pair.p.to_string());
  }
  if (pair.q.is_infinite()) throw std::domain_error("power_iteration requires q < inf");
  if (!(tol > 0)) throw std::invalid_argument("power_iteration requires tol > 0");
  if (x0.size() != a.cols()) throw std::invalid_argument("power_iteration: start vector has wrong length");
  for (double v : x0) {
    if (!(v > 0) || !std::isfinite(v)) {
      throw std::invalid_argument("power_iteration: start vector must be strictly positive");
    }
  }

  NormEstimate est;
  est.method = NormMethod::kPowerIteration;
  est.tol = tol;
  est.upper = kInf;
  if (a.is_zero()) {
    est.witness = basis_vector(a.cols(), 0);
    return est;
  }

  const bool convex = !below_one(pair.q);
  std::vector<double> x(x0.begin(), x0.end());
  normalize(x, pair.p);
  double f = objective(a, x, pair.q);
  est.history.push_back(f);
  est.converged = false;

  std::size_t it = 0;
  while (it < max_iter) {
    ++it;
    std::vector<double> target = boyd_target(a, x, pair);
    double f_new = objective(a, target, pair.q);
    if (convex) {
      if (f_new < f * (1 - kMonotoneSlack)) {
        throw std::logic_error("power_iteration: objective decreased from " + std::to_string(f) +
                               " to " + std::to_string(f_new));
      }
    } else if (f_new < f) {
      // Concave objective: fall back to a damped step towards the target.
      bool moved = false;
      double t = 0.5;
      for (int k = 0; k < 50 && !moved; ++k, t *= 0.5) {
        std::vector<double> z(x.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = (1 - t) * x[i] + t * target[i];
        normalize(z, pair.p);
        double fz = objective(a, z, pair.q);
        if (fz >= f) {
          target = std::move(z);
          f_new = fz;
          moved = true;
        }
      }
      if (!moved) {
        est.converged = true;
        break;
      }
    }
    double change = std::abs(f_new - f) / f_new;
    if (f_new >= f) {
      x = std::move(target);
    }
    f = std::max(f, f_new);
    est.history.push_back(f_new);
    if (change < tol) {
      est.converged = true;
      break;
    }
  }
  est.iterations = it;
  est.value = f;
  est.lower = f;
  est.witness = std::move(x);
  return est;
}

double grid_oracle_upper_factor(std::size_t n, std::size_t resolution, const Exponent& p,
                                const Exponent& q) {
  // Let x* be a maximizer and z* = (x*)^p on the simplex. Rounding R z* down
  // and handing the leftover units out gives a grid point z with
  // sum_k (z*_k - z_k)_+ <= (n - 1) / R. For p >= 1, t -> t^(1/p) is
  // subadditive, so ||(x* - x)_+||_p <= delta = ((n - 1) / R)^(1/p).
  // A >= 0 makes f monotone, and x* <= x + (x* - x)_+ gives
  //   f(x*) <= C (f(x) + delta f(x*)),
  // with C = 1 for q >= 1 and C = 2^(1/q - 1) for the q < 1 quasinorm.
  // Hence ||A|| <= f(x) * C / (1 - C delta).
  double delta = std::pow(static_cast<double>(n - 1) / static_cast<double>(resolution), p.inverse());
  double c = below_one(q) ? std::pow(2.0, q.inverse() - 1.0) : 1.0;
  if (c * delta >= 1) return kInf;
  return c / (1 - c * delta);
}

NormEstimate grid_oracle(const PositiveMatrix& a, const ExponentPair& pair, std::size_t resolution) {
  const std::size_t n = a.cols();
  if (n > 4) throw std::invalid_argument("grid_oracle supports at most 4 columns");
  if (resolution < 8) throw std::invalid_argument("grid_oracle requires resolution >= 8");
  if (pair.p.is_infinite() || below_one(pair.p)) {
    throw std::domain_error("grid_oracle requires 1 <= p < inf");
  }

  std::vector<double> level(resolution + 1);
  for (std::size_t c = 0; c <= resolution; ++c) {
    level[c] = std::pow(static_cast<double>(c) / static_cast<double>(resolution), pair.p.inverse());
  }

  NormEstimate est;
  est.method = NormMethod::kGridOracle;
  est.value = -1;
  std::vector<std::size_t> parts(n, 0);
  std::vector<double> x(n);
  std::size_t points = 0;
  // Enumerate compositions of `resolution` into n parts in lexicographic order.
  parts[n - 1] = resolution;
  while (true) {
    for (std::size_t k = 0; k < n; ++k) x[k] = level[parts[k]];
    double f = objective(a, x, pair.q);
    ++points;
    if (f > est.value) {
      est.value = f;
      est.witness = x;
    }
    // Next composition: find the rightmost non-last slot that can grow.
    if (n == 1) break;
    std::size_t tail = parts[n - 1];
    if (tail > 0) {
      ++parts[n - 2];
      parts[n - 1] = tail - 1;
      continue;
    }
    std::size_t i = n - 2;
    while (i > 0 && parts[i] == 0) --i;
    if (i == 0) break;  // parts = (R, 0, ..., 0)
    // Move everything after i-1 back into the last slot and bump slot i-1.
    std::size_t carry = parts[i];
    parts[i] = 0;
    ++parts[i - 1];
    parts[n - 1] = carry - 1;
  }
  est.iterations = points;
  est.lower = est.value;
  est.upper = est.value * grid_oracle_upper_factor(n, resolution, pair.p, pair.q);
  if (est.value == 0) est.upper = 0;
  return est;
}

NormEstimate operator_norm(const PositiveMatrix& a, const ExponentPair& pair, const NormOptions& opts) {
  if (below_one(pair.p)) throw std::domain_error("operator_norm requires p >= 1");
  if (auto exact = exact_norm(a, pair)) return *exact;
  if (is_one(pair.p)) {
    throw std::domain_error("operator_norm: no closed form for p = 1, q = " + pair.q.to_string() +
                            " and the power iteration needs p > 1");
  }

  const std::size_t n = a.cols();
  const std::size_t starts = std::max<std::size_t>(1, opts.multistarts);
  NormEstimate best;
  bool have_best = false;
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> x0(n, 1.0);
    if (s == 0 && opts.warm_start.size() == n) {
      double mx = *std::max_element(opts.warm_start.begin(), opts.warm_start.end());
      if (mx > 0 && std::isfinite(mx)) {
        for (std::size_t k = 0; k < n; ++k) x0[k] = std::max(opts.warm_start[k], 1e-6 * mx);
      }
    } else if (s > 0) {
      std::mt19937_64 rng(opts.seed + s);
      std::uniform_real_distribution<double> dist(0.05, 1.0);
      for (double& v : x0) v = dist(rng);
    }
    NormEstimate run = power_iteration(a, pair, x0, opts.tol, opts.max_iter);
    if (!have_best || run.value > best.value) {
      best = std::move(run);
      have_best = true;
    }
  }
  return best;
}

NormEstimate operator_norm(const PositiveMatrix& a, const Exponent& p, const Exponent& q,
                           const NormOptions& opts) {
  if (q <= p) return operator_norm(a, make_exponent_pair(p, q), opts);
  if (auto exact = exact_norm(a, p, q)) return *exact;
  throw std::domain_error("operator_norm: q > p is only supported by closed forms (p=" +
                          p.to_string() + ", q=" + q.to_string() + ")");
}

NormEstimate norm_via_duality(const PositiveMatrix& a, const ExponentPair& pair, const NormOptions& opts) {
  if (!pair.p_conj || !pair.q_conj) throw std::invalid_argument("norm_via_duality requires p, q >= 1");
  const ExponentPair dual = make_exponent_pair(*pair.q_conj, *pair.p_conj);
  NormEstimate dual_est = operator_norm(transpose(a), dual, opts);

  // Map the dual witness y back: x attains <A^T y, x> = ||A^T y||_{p*}.
  std::vector<double> x = holder_dual_vector(a.apply_transpose(dual_est.witness), pair.p);
  double lower = norm_ratio(a, x, pair.p, pair.q);

  NormEstimate est;
  est.method = NormMethod::kDuality;
  est.value = std::max(dual_est.value, lower);
  est.lower = lower;
  est.upper = std::max(dual_est.upper, est.value);
  est.iterations = dual_est.iterations;
  est.converged = dual_est.converged;
  est.tol = dual_est.tol;
  est.witness = std::move(x);
  return est;
}

}  // namespace posnorm
