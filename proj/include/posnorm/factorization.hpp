#ifndef POSNORM_FACTORIZATION_HPP_
#define POSNORM_FACTORIZATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "posnorm/exponent.hpp"
#include "posnorm/matrix.hpp"
#include "posnorm/opnorm.hpp"

namespace posnorm {

// A = diag(d) B with d >= 0 and B >= 0. The objective ||d||_r ||B||_{p,p}
// is an upper bound for ||A||_{p,q}; the infimum over all such d equals it.
struct Factorization {
  std::vector<double> d;
  PositiveMatrix b;
  double objective = 0;
  ExponentPair pair;
  // ||A||_{p,q} as estimated by operator_norm, and the relative gap to it.
  double norm = 0;
  double gap = 0;
  std::size_t iterations = 0;
  bool converged = true;
  // False for q < 1, where no tightness tolerance is promised.
  bool certified = true;
  // Objective after every accepted step of the winning restart.
  std::vector<double> history;
};

struct FactorizationOptions {
  // Coordinate steps in log d shrink until all are below `tol`.
  double tol = 1e-7;
  // Coordinate sweeps per restart.
  std::size_t max_iter = 5000;
  std::size_t restarts = 4;
  std::uint64_t seed = 0;
  // Used for the reference norm of A and for ||B||_{p,p} evaluations.
  NormOptions norm_opts{};
};

// B with b_{jk} = a_{jk} / d_j; zero rows of A stay zero. Throws
// std::invalid_argument when d has the wrong length, a negative entry, or
// d_j = 0 on a nonzero row.
PositiveMatrix divide_rows(const PositiveMatrix& a, std::span<const double> d);

// ||d||_r * ||B||_{p,p} for B = diag(d)^-1 A. Requires p >= 1.
double objective(const PositiveMatrix& a, std::span<const double> d, const ExponentPair& pair,
                 const NormOptions& opts = {});

// d_j = ||row_j||_{p*} (p > 1) or ||row_j||_inf (p = 1); zero rows get 0.
std::vector<double> default_seed_d(const PositiveMatrix& a, const ExponentPair& pair);

// Minimizes the objective over d by coordinate descent in log d with
// expanding/shrinking steps, from default_seed_d and `restarts - 1`
// randomized perturbations of it. The result uses the balanced gauge
// ||d||_r = ||B||_{p,p}. Throws std::invalid_argument for the zero matrix or
// p < 1.
Factorization optimize(const PositiveMatrix& a, const ExponentPair& pair,
                       const FactorizationOptions& opts = {});

struct FactorizationCheck {
  std::vector<std::string> violations;
  double gap = 0;
  bool ok() const { return violations.empty(); }
};

// Checks reconstruction a = d b (1e-12 relative per entry), nonnegativity,
// the zero-row convention, finiteness, and objective >= norm_est.lower - 1e-9.
FactorizationCheck verify_factorization(const PositiveMatrix& a, const Factorization& f,
                                        const NormEstimate& norm_est);

}  // namespace posnorm

#endif  // POSNORM_FACTORIZATION_HPP_
