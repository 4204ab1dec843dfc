#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "posnorm/factorization.hpp"
#include "posnorm/norms.hpp"
#include "posnorm/verify.hpp"

using namespace posnorm;

namespace {

Exponent ex(int num, int den = 1) { return Exponent::ratio(num, den); }

}  // namespace

TEST_CASE("divide_rows") {
  auto a = PositiveMatrix::from_rows({{2, 4}, {0, 0}, {3, 6}});
  auto b = divide_rows(a, std::vector<double>{2, 0, 3});
  CHECK(b == PositiveMatrix::from_rows({{1, 2}, {0, 0}, {1, 2}}));
  CHECK_THROWS_AS(divide_rows(a, std::vector<double>{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(divide_rows(a, std::vector<double>{0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(divide_rows(a, std::vector<double>{1, -1, 1}), std::invalid_argument);
}

TEST_CASE("default seed uses dual row norms") {
  auto a = PositiveMatrix::from_rows({{3, 4}, {0, 0}});
  auto d = default_seed_d(a, make_exponent_pair(ex(2), ex(1)));
  CHECK(d[0] == doctest::Approx(5));
  CHECK(d[1] == 0);
  auto d1 = default_seed_d(a, make_exponent_pair(ex(1), ex(1)));
  CHECK(d1[0] == 4);
}

TEST_CASE("diagonal matrix factorizes exactly") {
  auto a = PositiveMatrix::diagonal(std::vector<double>{1, 2});
  auto pair = make_exponent_pair(ex(4), ex(2));
  auto f = optimize(a, pair);
  // r = 4.
  const double expected = std::pow(1 + 16.0, 0.25);
  CHECK(f.norm == doctest::Approx(expected).epsilon(1e-14));
  CHECK(f.objective == doctest::Approx(expected).epsilon(1e-6));
  CHECK(f.gap <= 1e-6);
  CHECK(verify_factorization(a, f, operator_norm(a, pair)).ok());
}

TEST_CASE("p = q needs no rescaling") {
  auto a = random_positive_matrix(4, 3, parse_distribution("uniform"), 3);
  auto pair = make_exponent_pair(ex(3), ex(3));
  auto f = optimize(a, pair);
  CHECK(f.gap == doctest::Approx(0).epsilon(1e-12));
  for (std::size_t j = 1; j < f.d.size(); ++j) CHECK(f.d[j] == doctest::Approx(f.d[0]));
}

TEST_CASE("random 5x5 reaches the norm") {
  auto a = random_positive_matrix(5, 5, parse_distribution("uniform"), 7);
  auto pair = make_exponent_pair(ex(2), ex(1));
  auto est = operator_norm(a, pair);
  auto f = optimize(a, pair);
  CHECK(f.gap <= 1e-2);
  CHECK(f.gap >= -1e-9);
  CHECK(f.objective >= est.lower - 1e-9);
  auto check = verify_factorization(a, f, est);
  CHECK(check.ok());
  for (std::size_t i = 1; i < f.history.size(); ++i) CHECK(f.history[i] <= f.history[i - 1]);
  // Balanced gauge.
  CHECK(vector_norm(f.d, pair.r) ==
        doctest::Approx(operator_norm(f.b, make_exponent_pair(ex(2), ex(2))).value).epsilon(1e-8));
}

TEST_CASE("every positive d gives an upper bound") {
  auto a = random_positive_matrix(4, 4, parse_distribution("exponential"), 12);
  for (auto [p, q] : {std::pair{ex(2), ex(1)}, std::pair{ex(3), ex(3, 2)}, std::pair{ex(4), ex(2)}}) {
    auto pair = make_exponent_pair(p, q);
    const double norm = operator_norm(a, pair).value;
    std::mt19937_64 rng(5);
    std::lognormal_distribution<double> draw(0.0, 1.0);
    for (int t = 0; t < 25; ++t) {
      std::vector<double> d(a.rows());
      for (double& v : d) v = draw(rng);
      CHECK(objective(a, d, pair) >= norm * (1 - 1e-9));
    }
  }
}

TEST_CASE("zero rows get d = 0") {
  auto a = PositiveMatrix::from_rows({{1, 2, 0}, {0, 0, 0}, {3, 1, 1}});
  auto pair = make_exponent_pair(ex(3), ex(3, 2));
  auto f = optimize(a, pair);
  CHECK(f.d[1] == 0);
  CHECK(f.b.is_zero_row(1));
  CHECK(verify_factorization(a, f, operator_norm(a, pair)).ok());
}

TEST_CASE("verify_factorization flags broken factors") {
  auto a = PositiveMatrix::from_rows({{1, 2}, {3, 4}});
  auto pair = make_exponent_pair(ex(2), ex(1));
  auto est = operator_norm(a, pair);
  auto f = optimize(a, pair);

  auto bad = f;
  bad.d[0] *= 2;
  auto check = verify_factorization(a, bad, est);
  REQUIRE_FALSE(check.ok());
  CHECK(check.violations.front().rfind("reconstruction:", 0) == 0);

  auto low = f;
  low.objective = est.lower * 0.5;
  auto check2 = verify_factorization(a, low, est);
  REQUIRE_FALSE(check2.ok());
  CHECK(check2.violations.back().rfind("upper-bound:", 0) == 0);
}

TEST_CASE("quasinorm targets are not certified") {
  auto a = random_positive_matrix(3, 3, parse_distribution("uniform"), 1);
  auto f = optimize(a, make_exponent_pair(ex(1), ex(1, 2)));
  CHECK_FALSE(f.certified);
  CHECK(std::isnan(f.gap));
  CHECK(std::isfinite(f.objective));
}

TEST_CASE("optimize rejects bad input") {
  auto pair = make_exponent_pair(ex(2), ex(1));
  CHECK_THROWS_AS(optimize(PositiveMatrix::zeros(2, 2), pair), std::invalid_argument);
  CHECK_THROWS_AS(optimize(PositiveMatrix::identity(2), make_exponent_pair(ex(1, 2), ex(1, 3))),
                  std::invalid_argument);
}
