#include <doctest.h>

#include <random>

#include "esc/graph.hpp"
#include "esc/model.hpp"
#include "esc/oracles.hpp"

using namespace esc;

namespace {

bool dominates(const Graph& g, const std::vector<int>& d) {
  for (int v = 1; v <= g.n(); ++v) {
    bool hit = false;
    for (int u : d) hit = hit || u == v || g.adjacent(u, v);
    if (!hit) return false;
  }
  return true;
}

bool satisfies(const CnfClauses& clauses, const std::map<int, bool>& a) {
  for (const auto& c : clauses) {
    bool sat = false;
    for (int l : c) sat = sat || a.at(l > 0 ? l : -l) == (l > 0);
    if (!sat) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("path on four vertices") {
    Graph p4 = Graph::path(4);
    auto yes = has_dominating_set(p4, 2);
    CHECK(yes.exists);
    CHECK(yes.witness.size() <= 2);
    CHECK(dominates(p4, yes.witness));
    CHECK_FALSE(has_dominating_set(p4, 1).exists);
    CHECK(min_dominating_set(p4).gamma == 2);
  }

  TEST_CASE("star centre dominates") {
    auto r = has_dominating_set(Graph::star(4), 1);
    CHECK(r.exists);
    CHECK(r.witness == std::vector<int>{1});
  }

  TEST_CASE("small gammas") {
    CHECK(min_dominating_set(Graph::path(1)).gamma == 1);
    CHECK(min_dominating_set(Graph::cycle(5)).gamma == 2);
    CHECK(min_dominating_set(Graph::complete(6)).gamma == 1);
    CHECK(min_dominating_set(Graph::empty(3)).gamma == 3);
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(has_dominating_set(Graph::path(3), 4), PreconditionError);
    CHECK_THROWS_AS(has_dominating_set(Graph::path(3), -1), PreconditionError);
    CHECK_THROWS_AS(min_dominating_set(Graph::path(kOracleSizeLimit + 1)), PreconditionError);
  }

  TEST_CASE("monotone in k and gamma is the least k") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      Graph g = Graph::random(1 + trial % 8, 0.5, rng);
      auto mds = min_dominating_set(g);
      CHECK(dominates(g, mds.witness));
      CHECK(static_cast<int>(mds.witness.size()) == *mds.gamma);
      for (int k = 0; k <= g.n(); ++k) {
        auto r = has_dominating_set(g, k);
        CHECK(r.exists == (k >= *mds.gamma));
        if (r.exists) CHECK(dominates(g, r.witness));
      }
    }
  }

  TEST_CASE("csat examples") {
    CHECK(csat_extendable({2, {{1, -2}}, {}}).extendable);
    CHECK_FALSE(csat_extendable({1, {{1}, {-1}}, {}}).extendable);
    CHECK_FALSE(csat_extendable({2, {{1, 2}}, {{1, false}, {2, false}}}).extendable);
  }

  TEST_CASE("csat witnesses extend the partial assignment and satisfy") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const int m = 1 + trial % 5;
      CnfInstance c{m, {}, {}};
      for (int i = 0; i < 3; ++i) {
        std::vector<int> cl;
        for (int l = 0; l < 2; ++l) {
          int v = 1 + static_cast<int>(rng() % m);
          cl.push_back(rng() % 2 ? v : -v);
        }
        c.clauses.push_back(cl);
      }
      if (rng() % 2) c.partial[1] = rng() % 2;
      auto r = csat_extendable(c);
      if (r.extendable) {
        CHECK(satisfies(c.clauses, r.witness));
        for (auto [v, b] : c.partial) CHECK(r.witness.at(v) == b);
      }
      bool any = false;
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::map<int, bool> a;
        bool fits = true;
        for (int v = 1; v <= m; ++v) {
          a[v] = (mask >> (v - 1)) & 1;
          if (c.partial.count(v) && c.partial.at(v) != a[v]) fits = false;
        }
        any = any || (fits && satisfies(c.clauses, a));
      }
      CHECK(r.extendable == any);
    }
  }

  TEST_CASE("direct cnf evaluation") {
    CnfClauses f{{1, -2}, {2}};
    CHECK(cnf_evaluate(f, {true, true}));
    CHECK_FALSE(cnf_evaluate(f, {false, true}));
    CHECK_FALSE(cnf_evaluate(f, {true, false}));
  }

  TEST_CASE("graph and cnf text formats") {
    Graph g = parse_graph("4 3\n1 2\n2 3\n3 4\n");
    CHECK(g == Graph::path(4));
    CHECK(parse_graph(print_graph(g)) == g);
    CHECK_THROWS_AS(parse_graph("2 1\n1 1\n"), PreconditionError);
    CHECK_THROWS_AS(parse_graph("2 2\n1 2\n2 1\n"), PreconditionError);
    CnfInstance c = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3 0\n");
    CHECK(c.m == 3);
    CHECK(c.clauses == CnfClauses{{1, -2}, {3}});
    CHECK(parse_dimacs(print_dimacs(c)) == c);
    auto p = parse_partial("1 T\n3 F\n");
    CHECK(p == std::map<int, bool>{{1, true}, {3, false}});
    CHECK(parse_partial(print_partial(p)) == p);
  }
}
