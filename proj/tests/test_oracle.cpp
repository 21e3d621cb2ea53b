// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "evc/error.hpp"
#include "evc/prng.hpp"
#include "evc/selftest.hpp"
#include "evc/transport_oracle.hpp"

using namespace evc;

namespace {

Instance running() { return selftest::running_instance(); }

// Every basic feasible solution of a transportation problem arises from the
// northwest-corner rule under some row/column ordering, so minimizing over
// all orderings enumerates the polytope's vertices. Test-side referee for
// the flow solver on tiny supports.
Rational enumerate_vertices_min_cost(const TransportProblem& problem) {
  const auto& mu = problem.mu;
  const auto& nu = problem.nu;
  std::vector<std::size_t> rows, cols;
  for (std::size_t p = 0; p < mu.space()->point_count(); ++p) {
    if (!mu.weight(p).is_zero()) rows.push_back(p);
    if (!nu.weight(p).is_zero()) cols.push_back(p);
  }
  REQUIRE(rows.size() <= 4);
  REQUIRE(cols.size() <= 4);

  Rational best(0);
  bool first = true;
  std::sort(rows.begin(), rows.end());
  do {
    std::vector<std::size_t> cols_perm = cols;
    std::sort(cols_perm.begin(), cols_perm.end());
    do {
      Rational total(0);
      std::size_t i = 0, j = 0;
      Rational ri = mu.weight(rows[0]), cj = nu.weight(cols_perm[0]);
      while (i < rows.size() && j < cols_perm.size()) {
        Rational w = Rational::min(ri, cj);
        total += w * problem.cost[rows[i]][cols_perm[j]];
        ri -= w;
        cj -= w;
        if (ri.is_zero()) {
          if (++i < rows.size()) ri = mu.weight(rows[i]);
        } else {
          if (++j < cols_perm.size()) cj = nu.weight(cols_perm[j]);
        }
      }
      if (first || total < best) {
        best = total;
        first = false;
      }
    } while (std::next_permutation(cols_perm.begin(), cols_perm.end()));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return best;
}

}  // namespace

TEST_CASE("equivalence_cost tabulates the relation") {
  Instance inst = running();
  auto cost = equivalence_cost(*inst.space);
  CHECK(cost[0][1] == Rational(0));  // a ~ b
  CHECK(cost[0][2] == Rational(1));  // a !~ c
  for (std::size_t p = 0; p < 4; ++p) CHECK(cost[p][p] == Rational(0));

  auto one_class = EquivalenceSpace::create({"a", "b"}, {{"a", "C"}, {"b", "C"}});
  for (const auto& row : equivalence_cost(*one_class)) {
    for (const auto& c : row) CHECK(c == Rational(0));
  }

  auto identity = EquivalenceSpace::create({"a", "b"}, {{"a", "a"}, {"b", "b"}});
  auto id_cost = equivalence_cost(*identity);
  CHECK(id_cost[0][0] == Rational(0));
  CHECK(id_cost[0][1] == Rational(1));
}

TEST_CASE("solve_transport on the running instance") {
  Instance inst = running();
  OracleResult result =
      solve_transport(TransportProblem{inst.mu, inst.nu, equivalence_cost(*inst.space)});
  CHECK(result.value == Rational(3, 10));
  CHECK(validate_coupling(result.argmin).all_zero());
  CHECK(coupling_cost(result.argmin) == Rational(3, 10));
  CHECK(result.iterations > 0);
}

TEST_CASE("solve_transport degenerate costs") {
  Instance inst = running();

  // identical marginals with any zero-diagonal cost
  SplitMix64 rng(5);
  std::vector<std::vector<Rational>> cost(4, std::vector<Rational>(4, Rational(0)));
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) {
      if (x != y) cost[x][y] = Rational(static_cast<std::int64_t>(1 + rng.below(9)), 3);
    }
  }
  CHECK(solve_transport(TransportProblem{inst.mu, inst.mu, cost}).value == Rational(0));

  // constant cost 1 forces value 1
  std::vector<std::vector<Rational>> ones(4, std::vector<Rational>(4, Rational(1)));
  CHECK(solve_transport(TransportProblem{inst.mu, inst.nu, ones}).value == Rational(1));

  // malformed cost tables are rejected
  std::vector<std::vector<Rational>> bad(3, std::vector<Rational>(4, Rational(0)));
  CHECK_THROWS_AS((void)solve_transport(TransportProblem{inst.mu, inst.nu, bad}), Error);
  std::vector<std::vector<Rational>> negative(4, std::vector<Rational>(4, Rational(-1)));
  CHECK_THROWS_AS((void)solve_transport(TransportProblem{inst.mu, inst.nu, negative}), Error);
}

TEST_CASE("solve_transport agrees with vertex enumeration on tiny instances") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.below(2));  // 2..3 points
    std::vector<std::string> points;
    std::map<std::string, std::string> labels;
    for (std::size_t p = 0; p < n; ++p) {
      points.push_back("p" + std::to_string(p));
      labels[points.back()] = "K" + std::to_string(rng.below(2));
    }
    auto space = EquivalenceSpace::create(points, labels);

    auto draw = [&] {
      std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(30));
      std::vector<std::int64_t> counts(n, 0);
      for (std::int64_t i = 0; i < den; ++i) ++counts[rng.below(n)];
      std::vector<Rational> w(n);
      for (std::size_t p = 0; p < n; ++p) w[p] = Rational(counts[p], den);
      return ProbMeasure::from_weights(space, std::move(w));
    };
    ProbMeasure mu = draw(), nu = draw();

    std::vector<std::vector<Rational>> cost(n, std::vector<Rational>(n));
    for (auto& row : cost) {
      for (auto& c : row) c = Rational(static_cast<std::int64_t>(rng.below(12)), 5);
    }
    TransportProblem problem{mu, nu, cost};
    CHECK(solve_transport(problem).value == enumerate_vertices_min_cost(problem));
  }
}

TEST_CASE("cost-table JSON drives general-cost solves") {
  Instance inst = running();
  const char* table = R"({
    "a": {"a": "0", "b": "1/2", "c": "1", "d": "1"},
    "b": {"a": "1/2", "b": "0", "c": "1", "d": "1"},
    "c": {"a": "1", "b": "1", "c": "0", "d": "1/2"},
    "d": {"a": "1", "b": "1", "c": "1/2", "d": "0"}
  })";
  TransportProblem problem = parse_cost_table_json(table, inst);
  OracleResult result = solve_transport(problem);
  // within-class moves cost 1/2 here: (a->b) 1/5, (c->d) 1/2, cross (a->d) 3/10
  CHECK(result.value == Rational(1, 5) * Rational(1, 2) + Rational(1, 2) * Rational(1, 2) +
                            Rational(3, 10));
  CHECK(validate_coupling(result.argmin).all_zero());

  CHECK_THROWS_WITH_AS(
      (void)parse_cost_table_json(R"({"a": {"a": "0"}})", inst),
      doctest::Contains("missing the pair"), Error);
  CHECK_THROWS_WITH_AS(
      (void)parse_cost_table_json(R"({"zz": {"a": "0"}})", inst),
      doctest::Contains("UnknownPoint"), Error);
}

TEST_CASE("duality_check has zero gap") {
  Instance inst = running();
  DualityReport report = duality_check(inst.mu, inst.nu);
  CHECK(report.oracle_value == Rational(3, 10));
  CHECK(report.invariant_value == Rational(3, 10));
  CHECK(report.gap == Rational(0));
  CHECK(report.ok);

  DualityReport same = duality_check(inst.mu, inst.mu);
  CHECK(same.oracle_value == Rational(0));
  CHECK(same.ok);

  for (int trial = 0; trial < 50; ++trial) {
    Instance random = selftest::random_instance(43, trial);
    CHECK(duality_check(random.mu, random.nu).ok);
  }
}

TEST_CASE("coarsening the relation never raises the optimal value") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = selftest::random_instance(53, trial);
    if (inst.space->class_count() < 2) continue;

    Rational fine =
        solve_transport(TransportProblem{inst.mu, inst.nu, equivalence_cost(*inst.space)}).value;

    // merge two random classes into one
    std::size_t k = inst.space->class_count();
    std::size_t c1 = rng.below(k);
    std::size_t c2 = rng.below(k);
    if (c1 == c2) c2 = (c2 + 1) % k;
    std::map<std::string, std::string> labels;
    for (std::size_t p = 0; p < inst.space->point_count(); ++p) {
      std::size_t c = inst.space->class_of(p);
      if (c == c2) c = c1;
      labels[inst.space->points()[p]] = inst.space->class_ids()[c];
    }
    auto coarse_space = EquivalenceSpace::create(inst.space->points(), labels);
    auto mu = ProbMeasure::from_weights(coarse_space, inst.mu.weights());
    auto nu = ProbMeasure::from_weights(coarse_space, inst.nu.weights());
    Rational coarse =
        solve_transport(TransportProblem{mu, nu, equivalence_cost(*coarse_space)}).value;
    CHECK(coarse <= fine);
  }
}

TEST_CASE("envelope of the witness indicator is dual-feasible and optimal") {
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = selftest::random_instance(67, trial);
    TvWitness w = tv_invariant(inst.mu, inst.nu);
    std::vector<Rational> indicator(inst.space->point_count(), Rational(0));
    for (std::size_t p = 0; p < indicator.size(); ++p) {
      if (w.witness.contains_point(p)) indicator[p] = Rational(1);
    }
    auto h = dual_envelope(inst.space, indicator);
    auto cost = equivalence_cost(*inst.space);
    for (std::size_t x = 0; x < h.size(); ++x) {
      for (std::size_t y = 0; y < h.size(); ++y) {
        CHECK(h[x] - h[y] <= cost[x][y]);  // the pair (h, -h) is dual-feasible
      }
    }
    Rational optimal = solve_transport(TransportProblem{inst.mu, inst.nu, cost}).value;
    CHECK(inst.mu.expectation(h) - inst.nu.expectation(h) == optimal);
  }
}
