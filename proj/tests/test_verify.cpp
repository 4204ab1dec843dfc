#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "posnorm/norms.hpp"
#include "posnorm/verify.hpp"

using namespace posnorm;

namespace {

Exponent ex(int num, int den = 1) { return Exponent::ratio(num, den); }

const InequalityRecord& find(const std::vector<InequalityRecord>& recs, CheckKind kind) {
  auto it = std::find_if(recs.begin(), recs.end(), [&](const auto& r) { return r.kind == kind; });
  REQUIRE(it != recs.end());
  return *it;
}

}  // namespace

TEST_CASE("check names round-trip") {
  for (CheckKind kind : kAllCheckKinds) CHECK(parse_check_kind(to_string(kind)) == kind);
  CHECK_FALSE(parse_check_kind("T3"));
}

TEST_CASE("identity is tight for the row and column bounds") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto id = PositiveMatrix::identity(n);
    for (const auto& p : {ex(2), ex(3), ex(4), Exponent::infinity()}) {
      for (const auto& q : {ex(1), ex(3, 2), ex(2)}) {
        auto pair = make_exponent_pair(p, q);
        auto recs = check_theorem1(id, pair, operator_norm(id, pair));
        REQUIRE(recs.size() == 2);
        for (const auto& r : recs) {
          CHECK(r.pass);
          CHECK(r.ratio == doctest::Approx(1).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("theorem checks emit the right records") {
  auto a = random_positive_matrix(3, 4, parse_distribution("uniform"), 2);

  auto pair = make_exponent_pair(ex(2), ex(1));  // r = 2
  auto recs = check_theorem2(a, pair, operator_norm(a, pair));
  std::set<CheckKind> kinds;
  for (const auto& r : recs) kinds.insert(r.kind);
  CHECK(kinds == std::set<CheckKind>{CheckKind::kT2I, CheckKind::kT2II, CheckKind::kT2Improved});

  auto pair2 = make_exponent_pair(ex(4), ex(2));  // r = 4
  auto recs2 = check_theorem2(a, pair2, operator_norm(a, pair2));
  CHECK(recs2.size() == 2);
  CHECK(find(recs2, CheckKind::kT2I).lhs == doctest::Approx(entrywise_norm(a, ex(4))));

  auto pair3 = make_exponent_pair(ex(3), ex(3, 2));  // r = 3
  CHECK_THROWS_AS(check_improvement_dominance(a, pair3), std::invalid_argument);
  CHECK_THROWS_AS(check_theorem1(a, make_exponent_pair(ex(3, 2), ex(1)), NormEstimate{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_theorem2(a, make_exponent_pair(ex(2), ex(1, 2)), NormEstimate{}),
                  std::invalid_argument);
}

TEST_CASE("dominance holds since s >= r") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = random_positive_matrix(2 + seed % 5, 1 + seed % 4, parse_distribution("exponential"), seed);
    for (auto [p, q] : {std::pair{ex(2), ex(1)}, std::pair{ex(4), ex(4, 3)}, std::pair{Exponent::infinity(), ex(1)}}) {
      auto rec = check_improvement_dominance(a, make_exponent_pair(p, q));
      CHECK(rec.pass);
      CHECK(rec.ratio <= 1 + 1e-12);
    }
  }
}

TEST_CASE("a violating estimate fails") {
  auto a = PositiveMatrix::identity(3);
  auto pair = make_exponent_pair(ex(2), ex(1));
  NormEstimate fake;
  fake.value = 1.0;  // true value is sqrt(3)
  auto recs = check_theorem1(a, pair, fake);
  CHECK_FALSE(recs[0].pass);
  CHECK(recs[0].ratio == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("duality identity check") {
  auto a = random_positive_matrix(3, 3, parse_distribution("uniform"), 21);
  auto rec = check_duality_identity(a, make_exponent_pair(ex(4), ex(4, 3)));
  CHECK(rec.kind == CheckKind::kDuality);
  CHECK(rec.pass);
  CHECK(std::abs(rec.lhs - rec.rhs) <= 1e-6 * rec.lhs);
}

TEST_CASE("distributions") {
  CHECK(to_string(parse_distribution("sparse:0.25")) == "sparse:0.25");
  CHECK(parse_distribution("uniform").kind == Distribution::kUniform);
  CHECK_THROWS_AS(parse_distribution("sparse:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution("gaussian"), std::invalid_argument);

  auto a = random_positive_matrix(6, 7, parse_distribution("uniform"), 99);
  CHECK(a == random_positive_matrix(6, 7, parse_distribution("uniform"), 99));
  CHECK_FALSE(a == random_positive_matrix(6, 7, parse_distribution("uniform"), 100));
  for (double v : a.entries()) CHECK((v >= 0 && v < 1));

  auto s = random_positive_matrix(40, 40, parse_distribution("sparse:0.5"), 1);
  auto zeros = std::count(s.entries().begin(), s.entries().end(), 0.0);
  CHECK(zeros > 600);
  CHECK(zeros < 1000);
}

TEST_CASE("small suite is clean and reproducible") {
  SuiteConfig cfg = SuiteConfig::defaults();
  cfg.instances = 30;
  cfg.identity_sizes = {1, 2, 3};
  auto report = run_suite(cfg);
  CHECK(report.violations() == 0);
  CHECK_FALSE(report.records.empty());
  for (const auto& [kind, s] : report.summary) {
    CHECK(s.failed == 0);
    if (kind != CheckKind::kDuality) CHECK(s.worst_ratio <= 1 + cfg.slack);
  }
  auto again = run_suite(cfg);
  REQUIRE(again.records.size() == report.records.size());
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    CHECK(again.records[i].lhs == report.records[i].lhs);
    CHECK(again.records[i].rhs == report.records[i].rhs);
  }
  // Identity rows come first and are tight.
  for (const auto& r : report.records) {
    if (r.matrix_id.rfind("identity", 0) == 0 &&
        (r.kind == CheckKind::kT1Rows || r.kind == CheckKind::kT1Cols)) {
      CHECK(r.ratio == doctest::Approx(1).epsilon(1e-14));
    }
  }
}

TEST_CASE("suite configuration errors") {
  SuiteConfig cfg = SuiteConfig::defaults();
  cfg.instances = 2;
  cfg.min_rows = 0;
  CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
  cfg = SuiteConfig::defaults();
  cfg.distributions.clear();
  CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}
