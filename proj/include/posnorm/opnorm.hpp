#ifndef POSNORM_OPNORM_HPP_
#define POSNORM_OPNORM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "posnorm/exponent.hpp"
#include "posnorm/matrix.hpp"

namespace posnorm {

enum class NormMethod {
  kExactP1,
  kExactPInf,
  kExactQInf,
  kExactDiagonal,
  kExactRankOne,
  kPowerIteration,
  kGridOracle,
  kDuality,
};

// "exact-p1", "power-iteration", ...
std::string_view to_string(NormMethod method);
bool is_exact(NormMethod method);

// An estimate of ||A||_{p,q} = sup { ||A x||_q : ||x||_p <= 1 }.
//
// `lower` is always ||A w||_q / ||w||_p for the stored witness w, so it is a
// certified lower bound. `upper` is +inf unless the method yields a bound.
struct NormEstimate {
  double value = 0;
  std::vector<double> witness;
  NormMethod method = NormMethod::kPowerIteration;
  std::size_t iterations = 0;
  double lower = 0;
  double upper = 0;
  double tol = 0;
  bool converged = true;
  // Objective after every accepted step (power iteration only).
  std::vector<double> history;
};

struct NormOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::size_t multistarts = 8;
  std::uint64_t seed = 0;
  // Replaces the deterministic first start when non-empty.
  std::vector<double> warm_start;
};

// Closed forms, tried in this order:
//   p = 1 (q >= 1)   max_k ||A e_k||_q
//   p = inf          ||A 1||_q
//   q = inf          max_j ||row_j||_{p*}
//   A diagonal       ||diag||_r            (q <= p only)
//   A = u v^T        ||u||_q ||v||_{p*}
// Returns nullopt when none applies. This overload accepts q > p, which the
// first three forms and the rank-one form handle; p < 1 yields nullopt.
std::optional<NormEstimate> exact_norm(const PositiveMatrix& a, const Exponent& p,
                                       const Exponent& q);
std::optional<NormEstimate> exact_norm(const PositiveMatrix& a, const ExponentPair& pair);

// Nonnegative Boyd iteration x <- normalize_p((A^T (A x)^(q-1))^(1/(p-1))).
// Requires 1 < p < inf, 0 < q < inf and a strictly positive x0 (normalized
// here). For q >= 1 every full step is nondecreasing in ||A x||_q and a
// decrease beyond 1e-12 relative throws std::logic_error. For q < 1 a step
// that would decrease the objective is backtracked along the segment towards
// the Boyd target, which keeps the recorded objective nondecreasing.
// Stops once the relative objective change drops below `tol`.
NormEstimate power_iteration(const PositiveMatrix& a, const ExponentPair& pair,
                             std::span<const double> x0, double tol, std::size_t max_iter);

// Exhaustive search over the grid x_k = (c_k / R)^(1/p), sum c_k = R.
// Requires n <= 4, R >= 8, 1 <= p < inf. See grid_oracle_upper_factor for the
// bracket.
NormEstimate grid_oracle(const PositiveMatrix& a, const ExponentPair& pair, std::size_t resolution);

// Factor F with ||A||_{p,q} <= F * max_grid ||A x||_q; +inf if no bound.
double grid_oracle_upper_factor(std::size_t n, std::size_t resolution, const Exponent& p,
                                const Exponent& q);

// ||A||_{p,q} for q <= p, 1 <= p: closed form when one applies, otherwise
// the best of opts.multistarts power iterations. Throws std::domain_error for
// p < 1 and for p = 1, q < 1 without a closed form.
NormEstimate operator_norm(const PositiveMatrix& a, const ExponentPair& pair,
                           const NormOptions& opts = {});

// As above but without the q <= p requirement; q > p is only answered by a
// closed form (std::domain_error otherwise).
NormEstimate operator_norm(const PositiveMatrix& a, const Exponent& p, const Exponent& q,
                           const NormOptions& opts = {});

// ||A^T||_{q*,p*}, which equals ||A||_{p,q}. The witness is mapped back to the
// primal side so `lower` stays a bound for A itself. Requires q >= 1.
NormEstimate norm_via_duality(const PositiveMatrix& a, const ExponentPair& pair,
                              const NormOptions& opts = {});

// ||A x||_q / ||x||_p.
double norm_ratio(const PositiveMatrix& a, std::span<const double> x, const Exponent& p,
                  const Exponent& q);

}  // namespace posnorm

#endif  // POSNORM_OPNORM_HPP_
