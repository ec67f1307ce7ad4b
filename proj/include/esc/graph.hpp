#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esc/ast.hpp"

namespace esc {

/// Simple undirected graph on vertices 1..n.
class Graph {
 public:
  Graph() = default;
  /// Throws PreconditionError on self-loops, duplicate edges or out-of-range endpoints.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  /// Edges with u < v, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const;
  /// N_C(v): v together with its neighbours, ascending.
  std::vector<int> closed_neighborhood(int v) const;
  bool is_dominating(const std::vector<int>& vertices) const;

  bool operator==(const Graph&) const = default;

  static Graph path(int n);
  static Graph cycle(int n);
  static Graph star(int leaves);  // centre is vertex 1
  static Graph complete(int n);
  static Graph empty(int n);
  /// Erdős–Rényi G(n, p) drawn from `rng`; pairs are visited in (u, v) lexicographic order.
  static Graph random(int n, double p, std::mt19937_64& rng);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<char>> adj_;
};

/// `n m` on the first line, then m lines `u v`.
Graph parse_graph(std::string_view text);
std::string print_graph(const Graph& g);

struct CnfInstance {
  int m = 0;  // variables 1..m
  CnfClauses clauses;
  std::map<int, bool> partial;  // the partial assignment p

  bool operator==(const CnfInstance&) const = default;
  /// Throws PreconditionError when indices leave 1..m.
  void check() const;
};

/// DIMACS `p cnf m c` with 0-terminated clauses; `c` lines are comments.
CnfInstance parse_dimacs(std::string_view text);
std::string print_dimacs(const CnfInstance& c);
/// Lines `var T|F`.
std::map<int, bool> parse_partial(std::string_view text);
std::string print_partial(const std::map<int, bool>& partial);

}  // namespace esc
