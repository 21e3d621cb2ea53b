// SPDX-License-Identifier: Apache-2.0
#include "evc/transport_oracle.hpp"

#include <deque>
#include <optional>

#include "evc/error.hpp"

namespace evc {

std::vector<std::vector<Rational>> equivalence_cost(const EquivalenceSpace& space) {
  std::size_t n = space.point_count();
  std::vector<std::vector<Rational>> cost(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!space.same_class(x, y)) cost[x][y] = Rational(1);
    }
  }
  return cost;
}

namespace {

struct Edge {
  std::size_t to;
  Rational residual;
  Rational cost;
  std::size_t twin;  // index of the reverse edge in graph[to]
};

struct FlowGraph {
  std::vector<std::vector<Edge>> adj;

  void add_edge(std::size_t from, std::size_t to, const Rational& cap, const Rational& cost) {
    adj[from].push_back(Edge{to, cap, cost, adj[to].size()});
    adj[to].push_back(Edge{from, Rational(0), -cost, adj[from].size() - 1});
  }
};

}  // namespace

OracleResult solve_transport(const TransportProblem& problem) {
  require_same_space(problem.mu, problem.nu);
  const auto& space = problem.mu.space();
  const std::size_t n = space->point_count();
  if (problem.cost.size() != n) {
    fail(Errc::value_out_of_range, "cost table has wrong row count");
  }
  for (const auto& row : problem.cost) {
    if (row.size() != n) fail(Errc::value_out_of_range, "cost table has wrong column count");
    for (const auto& c : row) {
      if (c.sign() < 0) fail(Errc::value_out_of_range, "negative cost " + c.to_string());
    }
  }

  // Nodes: source, n rows, n cols, sink. Pair edges get capacity 2 > total
  // flow so only marginal edges ever saturate.
  const std::size_t source = 0, sink = 2 * n + 1;
  const auto row_node = [](std::size_t x) { return 1 + x; };
  const auto col_node = [n](std::size_t y) { return 1 + n + y; };

  FlowGraph g;
  g.adj.resize(2 * n + 2);
  for (std::size_t x = 0; x < n; ++x) g.add_edge(source, row_node(x), problem.mu.weight(x), Rational(0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      g.add_edge(row_node(x), col_node(y), Rational(2), problem.cost[x][y]);
    }
  }
  for (std::size_t y = 0; y < n; ++y) g.add_edge(col_node(y), sink, problem.nu.weight(y), Rational(0));

  Rational flow(0);
  std::size_t iterations = 0;
  while (true) {
    // Bellman-Ford (queue form) on the residual graph; residual costs can be
    // negative, distances stay exact rationals.
    std::vector<std::optional<Rational>> dist(g.adj.size());
    std::vector<std::pair<std::size_t, std::size_t>> parent(g.adj.size(), {SIZE_MAX, SIZE_MAX});
    std::vector<bool> queued(g.adj.size(), false);
    std::deque<std::size_t> queue;
    dist[source] = Rational(0);
    queue.push_back(source);
    queued[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      queued[u] = false;
      for (std::size_t e = 0; e < g.adj[u].size(); ++e) {
        const Edge& edge = g.adj[u][e];
        if (edge.residual.is_zero()) continue;
        Rational cand = *dist[u] + edge.cost;
        if (!dist[edge.to] || cand < *dist[edge.to]) {
          dist[edge.to] = std::move(cand);
          parent[edge.to] = {u, e};
          if (!queued[edge.to]) {
            queue.push_back(edge.to);
            queued[edge.to] = true;
          }
        }
      }
    }
    if (!dist[sink]) break;

    Rational bottleneck;
    bool first = true;
    for (std::size_t v = sink; v != source;) {
      auto [u, e] = parent[v];
      const Edge& edge = g.adj[u][e];
      bottleneck = first ? edge.residual : Rational::min(bottleneck, edge.residual);
      first = false;
      v = u;
    }
    for (std::size_t v = sink; v != source;) {
      auto [u, e] = parent[v];
      Edge& edge = g.adj[u][e];
      edge.residual -= bottleneck;
      g.adj[edge.to][edge.twin].residual += bottleneck;
      v = u;
    }
    flow += bottleneck;
    ++iterations;
  }

  if (!(flow == Rational(1))) {
    fail(Errc::infeasible_marginals, "max flow " + flow.to_string() + " is below 1/1");
  }

  Coupling argmin(problem.mu, problem.nu);
  Rational value(0);
  for (std::size_t x = 0; x < n; ++x) {
    for (const Edge& edge : g.adj[row_node(x)]) {
      if (edge.to <= n || edge.to > 2 * n) continue;  // only row -> col edges
      Rational carried = Rational(2) - edge.residual;
      if (carried.sign() > 0) {
        std::size_t y = edge.to - n - 1;
        argmin.add(x, y, carried);
        value += carried * problem.cost[x][y];
      }
    }
  }
  return OracleResult{std::move(value), std::move(argmin), iterations};
}

DualityReport duality_check(const ProbMeasure& mu, const ProbMeasure& nu) {
  require_same_space(mu, nu);
  OracleResult oracle = solve_transport(TransportProblem{mu, nu, equivalence_cost(*mu.space())});
  Rational invariant = tv_invariant(mu, nu).value;
  Rational gap = oracle.value - invariant;
  bool ok = gap.is_zero();
  return DualityReport{std::move(oracle.value), std::move(invariant), std::move(gap), ok};
}

}  // namespace evc
