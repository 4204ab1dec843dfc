#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "posnorm/norms.hpp"
#include "posnorm/opnorm.hpp"
#include "posnorm/verify.hpp"

using namespace posnorm;

namespace {

const Exponent kInf = Exponent::infinity();
Exponent ex(int num, int den = 1) { return Exponent::ratio(num, den); }
ExponentPair pair_of(const Exponent& p, const Exponent& q) { return make_exponent_pair(p, q); }

double pw(double x, double e) { return x <= 0 ? 0.0 : std::pow(x, e); }

// ||A x||_q / ||x||_p evaluated with plain loops.
double plain_ratio(const std::vector<std::vector<double>>& a, const std::vector<double>& x, double p,
                   double q) {
  double num = 0;
  for (const auto& row : a) {
    double y = 0;
    for (std::size_t k = 0; k < x.size(); ++k) y += row[k] * x[k];
    num += pw(y, q);
  }
  double den = 0;
  for (double v : x) den += pw(v, p);
  return pw(num, 1 / q) / pw(den, 1 / p);
}

// Sup over the positive quadrant of the p-sphere for a two-column matrix:
// dense scan on x = (t, (1 - t^p)^(1/p)) followed by golden refinement.
double two_column_oracle(const std::vector<std::vector<double>>& a, double p, double q) {
  auto f = [&](double t) { return plain_ratio(a, {t, pw(1 - pw(t, p), 1 / p)}, p, q); };
  constexpr int kScan = 20000;
  int best = 0;
  double best_v = f(0);
  for (int i = 1; i <= kScan; ++i) {
    double v = f(static_cast<double>(i) / kScan);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = std::max(0, best - 1) / double(kScan), hi = std::min(kScan, best + 1) / double(kScan);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (f(m1) < f(m2)) lo = m1; else hi = m2;
  }
  return std::max(best_v, f((lo + hi) / 2));
}

std::vector<std::vector<double>> to_rows(const PositiveMatrix& a) {
  std::vector<std::vector<double>> rows(a.rows());
  for (std::size_t j = 0; j < a.rows(); ++j) rows[j].assign(a.row(j).begin(), a.row(j).end());
  return rows;
}

}  // namespace

TEST_CASE("spectral norm of [[1,2],[3,4]]") {
  auto a = PositiveMatrix::from_rows({{1, 2}, {3, 4}});
  // Largest eigenvalue of A^T A = [[10,14],[14,20]] is 15 + sqrt(221).
  const double expected = std::sqrt(15 + std::sqrt(221.0));
  auto est = operator_norm(a, pair_of(ex(2), ex(2)));
  CHECK(est.method == NormMethod::kPowerIteration);
  CHECK(est.value == doctest::Approx(expected).epsilon(1e-9));
  CHECK(est.lower <= expected * (1 + 1e-15));
}

TEST_CASE("closed forms") {
  auto a = PositiveMatrix::from_rows({{1, 2, 0}, {3, 0, 5}});

  SUBCASE("p = 1 picks the largest column") {
    auto est = operator_norm(a, pair_of(ex(1), ex(1)));
    CHECK(est.method == NormMethod::kExactP1);
    CHECK(est.value == 5);
    CHECK(est.witness == basis_vector(3, 2));
  }
  SUBCASE("p = inf uses the all-ones vector") {
    auto est = operator_norm(a, pair_of(kInf, ex(2)));
    CHECK(est.method == NormMethod::kExactPInf);
    CHECK(est.value == doctest::Approx(std::sqrt(9.0 + 64.0)));
  }
  SUBCASE("q = inf picks the largest dual row norm") {
    auto est = operator_norm(a, kInf, kInf);
    CHECK(est.value == 8);
    auto est2 = operator_norm(a, ex(2), kInf);
    CHECK(est2.method == NormMethod::kExactQInf);
    CHECK(est2.value == doctest::Approx(std::sqrt(34.0)));
  }
  SUBCASE("diagonal") {
    auto d = PositiveMatrix::diagonal(std::vector<double>{1, 2});
    auto est = operator_norm(d, pair_of(ex(3), ex(2)));
    CHECK(est.method == NormMethod::kExactDiagonal);
    // r = 6.
    CHECK(est.value == doctest::Approx(std::pow(1 + 64.0, 1.0 / 6)).epsilon(1e-14));
  }
  SUBCASE("rank one") {
    auto r1 = PositiveMatrix::outer(std::vector<double>{1, 2, 3}, std::vector<double>{4, 0, 1});
    auto est = operator_norm(r1, pair_of(ex(3), ex(3, 2)));
    CHECK(est.method == NormMethod::kExactRankOne);
    double u = std::pow(1 + std::pow(2, 1.5) + std::pow(3, 1.5), 2.0 / 3);
    double v = std::pow(std::pow(4, 1.5) + 1, 2.0 / 3);
    CHECK(est.value == doctest::Approx(u * v).epsilon(1e-13));
  }
  SUBCASE("zero matrix") {
    auto est = operator_norm(PositiveMatrix::zeros(2, 3), pair_of(ex(3), ex(2)));
    CHECK(est.value == 0);
    CHECK(is_exact(est.method));
  }
  SUBCASE("no closed form") {
    CHECK_FALSE(exact_norm(PositiveMatrix::from_rows({{1, 2}, {3, 4}}), pair_of(ex(3), ex(2))));
  }
}

TEST_CASE("identity matrix") {
  const std::vector<Exponent> ps{ex(1), ex(3, 2), ex(2), ex(5, 2), ex(3), ex(4), kInf};
  const std::vector<Exponent> qs{ex(1, 2), ex(1), ex(4, 3), ex(3, 2), ex(2), ex(3), kInf};
  for (std::size_t n = 1; n <= 8; ++n) {
    auto id = PositiveMatrix::identity(n);
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        if (q > p) continue;
        if (p == ex(1) && q < ex(1)) continue;
        const double expected = std::pow(double(n), q.inverse() - p.inverse());
        CHECK(operator_norm(id, pair_of(p, q)).value == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("power iteration agrees with an independent two-column scan") {
  const std::vector<std::pair<int, int>> ps{{3, 2}, {2, 1}, {5, 2}, {4, 1}};
  const std::vector<std::pair<int, int>> qs{{1, 1}, {4, 3}, {3, 2}, {2, 1}};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto a = random_positive_matrix(2 + seed % 3, 2, parse_distribution("uniform"), seed);
    for (auto [pn, pd] : ps) {
      for (auto [qn, qd] : qs) {
        const Exponent p = ex(pn, pd), q = ex(qn, qd);
        if (q > p) continue;
        auto est = operator_norm(a, pair_of(p, q));
        const double oracle = two_column_oracle(to_rows(a), p.value(), q.value());
        CHECK(est.value == doctest::Approx(oracle).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("random 3x3 against the grid oracle") {
  auto a = random_positive_matrix(3, 3, parse_distribution("uniform"), 42);
  auto pair = pair_of(ex(5, 2), ex(3, 2));
  auto est = operator_norm(a, pair);
  auto grid = grid_oracle(a, pair, 400);
  CHECK(grid.method == NormMethod::kGridOracle);
  CHECK(grid.lower <= est.value * (1 + 1e-12));
  CHECK(est.value <= grid.upper * (1 + 1e-12));
  CHECK(est.value == doctest::Approx(grid.value).epsilon(1e-4));
}

TEST_CASE("grid oracle bracket factor") {
  // delta = ((n-1)/R)^(1/p)
  const double delta = std::pow(2.0 / 400, 1 / 2.5);
  CHECK(grid_oracle_upper_factor(3, 400, ex(5, 2), ex(3, 2)) == doctest::Approx(1 / (1 - delta)));
  const double c = std::pow(2.0, 1.0);  // q = 1/2
  CHECK(grid_oracle_upper_factor(3, 400, ex(5, 2), ex(1, 2)) == doctest::Approx(c / (1 - c * delta)));
  CHECK(std::isinf(grid_oracle_upper_factor(4, 8, ex(1, 1), ex(1, 4))));
  auto a = random_positive_matrix(2, 5, parse_distribution("uniform"), 1);
  CHECK_THROWS(grid_oracle(a, pair_of(ex(2), ex(2)), 100));
}

TEST_CASE("duality") {
  auto a = random_positive_matrix(3, 3, parse_distribution("uniform"), 11);
  auto pair = pair_of(ex(4), ex(4, 3));
  auto primal = operator_norm(a, pair);
  auto dual = norm_via_duality(a, pair);
  CHECK(dual.method == NormMethod::kDuality);
  CHECK(dual.value == doctest::Approx(primal.value).epsilon(1e-6));
  CHECK(dual.lower <= primal.value * (1 + 1e-9));
  CHECK(dual.lower == doctest::Approx(norm_ratio(a, dual.witness, pair.p, pair.q)));

  auto r = random_positive_matrix(4, 2, parse_distribution("exponential"), 2);
  CHECK(operator_norm(r, pair_of(ex(3), ex(2))).value ==
        doctest::Approx(operator_norm(transpose(r), pair_of(ex(2), ex(3, 2))).value).epsilon(1e-8));
}

TEST_CASE("multistart count does not change the answer") {
  auto a = random_positive_matrix(4, 4, parse_distribution("uniform"), 4);
  auto pair = pair_of(ex(3), ex(2));
  NormOptions one, eight;
  one.multistarts = 1;
  eight.multistarts = 8;
  CHECK(operator_norm(a, pair, one).value == doctest::Approx(operator_norm(a, pair, eight).value).epsilon(1e-9));
}

TEST_CASE("estimates are deterministic") {
  auto a = random_positive_matrix(5, 4, parse_distribution("exponential"), 8);
  auto pair = pair_of(ex(5, 2), ex(4, 3));
  auto x = operator_norm(a, pair);
  auto y = operator_norm(a, pair);
  CHECK(x.value == y.value);
  CHECK(x.witness == y.witness);
}

TEST_CASE("operator norm invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = random_positive_matrix(1 + seed % 4, 1 + (seed + 2) % 4, parse_distribution("sparse:0.5"), seed);
    auto pair = pair_of(ex(3), ex(3, 2));
    auto est = operator_norm(a, pair);
    CHECK(est.value >= est.lower);
    CHECK(est.lower == doctest::Approx(norm_ratio(a, est.witness, pair.p, pair.q)));
    CHECK(operator_norm(a.scaled(3), pair).value == doctest::Approx(3 * est.value).epsilon(1e-9));
    // Every column is a feasible direction.
    for (std::size_t k = 0; k < a.cols(); ++k) {
      CHECK(vector_norm(a.column(k), pair.q) <= est.value * (1 + 1e-12));
    }
    // ||A||_{p,q} >= max entry.
    double m = 0;
    for (double v : a.entries()) m = std::max(m, v);
    CHECK(m <= est.value * (1 + 1e-12));
  }
}

TEST_CASE("monotone histories") {
  const std::vector<std::pair<Exponent, Exponent>> pairs{
      {ex(2), ex(1)}, {ex(3), ex(3, 2)}, {ex(4), ex(2)}, {ex(3), ex(1, 2)}, {ex(3, 2), ex(3, 2)}};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto a = random_positive_matrix(5, 4, parse_distribution("exponential"), seed);
    for (const auto& [p, q] : pairs) {
      std::vector<double> x0(a.cols(), 1.0);
      auto est = power_iteration(a, pair_of(p, q), x0, 1e-12, 10000);
      REQUIRE_FALSE(est.history.empty());
      for (std::size_t i = 1; i < est.history.size(); ++i) {
        CHECK(est.history[i] >= est.history[i - 1] * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("domain errors") {
  auto a = PositiveMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK_THROWS_AS(operator_norm(a, pair_of(ex(1, 2), ex(1, 3))), std::domain_error);
  CHECK_THROWS_AS(operator_norm(a, pair_of(ex(1), ex(1, 2))), std::domain_error);
  CHECK_THROWS_AS(operator_norm(a, ex(2), ex(3)), std::domain_error);
  // q > p with a closed form.
  CHECK(operator_norm(a, ex(1), ex(2)).value == doctest::Approx(std::sqrt(20.0)));
  CHECK_THROWS_AS(norm_via_duality(a, pair_of(ex(2), ex(1, 2))), std::invalid_argument);
}
