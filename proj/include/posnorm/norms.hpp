#ifndef POSNORM_NORMS_HPP_
#define POSNORM_NORMS_HPP_

#include <span>

#include "posnorm/exponent.hpp"
#include "posnorm/matrix.hpp"

namespace posnorm {

// ||x||_p = (sum_k |x_k|^p)^(1/p), or max_k |x_k| for p = inf. For p < 1 the
// same formula gives the l_p quasinorm. Evaluated on x / max|x| to stay clear
// of overflow. Throws std::invalid_argument on a non-finite entry.
double vector_norm(std::span<const double> x, const Exponent& p);

// l_outer norm of the vector of l_inner row norms.
double mixed_norm_rows(const PositiveMatrix& a, const Exponent& outer, const Exponent& inner);

// l_outer norm of the vector of l_inner column norms.
double mixed_norm_cols(const PositiveMatrix& a, const Exponent& outer, const Exponent& inner);

// l_p norm of all entries taken as one vector.
double entrywise_norm(const PositiveMatrix& a, const Exponent& p);

}  // namespace posnorm

#endif  // POSNORM_NORMS_HPP_
