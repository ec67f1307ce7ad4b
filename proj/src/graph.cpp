#include "esc/graph.hpp"

#include <algorithm>
#include <sstream>

#include "esc/model.hpp"

namespace esc {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw PreconditionError("vertex count must be non-negative");
  adj_.assign(static_cast<std::size_t>(n) + 1, std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n) {
      throw PreconditionError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                              " has an endpoint outside 1.." + std::to_string(n));
    }
    if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (adj_[u][v]) {
      throw PreconditionError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    adj_[u][v] = adj_[v][u] = 1;
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::adjacent(int u, int v) const {
  if (u < 1 || v < 1 || u > n_ || v > n_) return false;
  return adj_[u][v] != 0;
}

std::vector<int> Graph::closed_neighborhood(int v) const {
  std::vector<int> out;
  for (int u = 1; u <= n_; ++u) {
    if (u == v || adjacent(u, v)) out.push_back(u);
  }
  return out;
}

bool Graph::is_dominating(const std::vector<int>& vertices) const {
  for (int v = 1; v <= n_; ++v) {
    bool covered = false;
    for (int d : vertices) {
      if (d == v || adjacent(d, v)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph Graph::cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  if (n >= 3) e.emplace_back(n, 1);
  return Graph(n, e);
}

Graph Graph::star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 2; i <= leaves + 1; ++i) e.emplace_back(1, i);
  return Graph(leaves + 1, e);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  }
  return Graph(n, e);
}

Graph Graph::empty(int n) { return Graph(n, {}); }

Graph Graph::random(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (coin(rng)) e.emplace_back(u, v);
    }
  }
  return Graph(n, e);
}

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = lines_of(text);
  std::size_t i = 0;
  auto next_line = [&]() -> std::string* {
    while (i < lines.size() && (blank(lines[i]) || lines[i][0] == '#')) ++i;
    return i < lines.size() ? &lines[i++] : nullptr;
  };
  std::string* head = next_line();
  if (!head) throw PreconditionError("graph file: missing 'n m' header");
  std::istringstream hs(*head);
  int n = 0, m = 0;
  if (!(hs >> n >> m) || n < 0 || m < 0) {
    throw PreconditionError("graph file line " + std::to_string(i) + ": expected 'n m'");
  }
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < m; ++e) {
    std::string* l = next_line();
    if (!l) throw PreconditionError("graph file: expected " + std::to_string(m) + " edges");
    std::istringstream ls(*l);
    int u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) {
      throw PreconditionError("graph file line " + std::to_string(i) + ": expected 'u v'");
    }
    edges.emplace_back(u, v);
  }
  if (next_line()) throw PreconditionError("graph file: more edge lines than declared");
  return Graph(n, edges);
}

std::string print_graph(const Graph& g) {
  std::string out = std::to_string(g.n()) + ' ' + std::to_string(g.edges().size()) + '\n';
  for (auto [u, v] : g.edges()) out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  return out;
}

void CnfInstance::check() const {
  if (m < 0) throw PreconditionError("variable count must be non-negative");
  for (const auto& c : clauses) {
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > m) {
        throw PreconditionError("literal " + std::to_string(lit) + " outside 1.." +
                                std::to_string(m));
      }
    }
  }
  for (const auto& [var, value] : partial) {
    (void)value;
    if (var < 1 || var > m) {
      throw PreconditionError("partial assignment names variable " + std::to_string(var) +
                              " outside 1.." + std::to_string(m));
    }
  }
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance c;
  bool header = false;
  int declared = 0;
  std::vector<int> current;
  int lineNo = 0;
  for (const auto& line : lines_of(text)) {
    ++lineNo;
    if (blank(line) || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (header || !(ls >> p >> fmt >> c.m >> declared) || fmt != "cnf") {
        throw PreconditionError("DIMACS line " + std::to_string(lineNo) + ": bad problem line");
      }
      header = true;
      continue;
    }
    if (!header) {
      throw PreconditionError("DIMACS line " + std::to_string(lineNo) + ": clause before header");
    }
    int lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        c.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
    if (!ls.eof()) {
      throw PreconditionError("DIMACS line " + std::to_string(lineNo) + ": expected integers");
    }
  }
  if (!header) throw PreconditionError("DIMACS: missing 'p cnf' line");
  if (!current.empty()) c.clauses.push_back(current);
  if (static_cast<int>(c.clauses.size()) != declared) {
    throw PreconditionError("DIMACS: header declares " + std::to_string(declared) +
                            " clauses, found " + std::to_string(c.clauses.size()));
  }
  c.check();
  return c;
}

std::string print_dimacs(const CnfInstance& c) {
  std::string out = "p cnf " + std::to_string(c.m) + ' ' + std::to_string(c.clauses.size()) + '\n';
  for (const auto& cl : c.clauses) {
    for (int lit : cl) out += std::to_string(lit) + ' ';
    out += "0\n";
  }
  return out;
}

std::map<int, bool> parse_partial(std::string_view text) {
  std::map<int, bool> out;
  int lineNo = 0;
  for (const auto& line : lines_of(text)) {
    ++lineNo;
    if (blank(line) || line[0] == '#') continue;
    std::istringstream ls(line);
    int var = 0;
    std::string value, extra;
    if (!(ls >> var >> value) || (ls >> extra) || (value != "T" && value != "F")) {
      throw PreconditionError("partial assignment line " + std::to_string(lineNo) +
                              ": expected 'var T|F'");
    }
    if (!out.emplace(var, value == "T").second) {
      throw PreconditionError("partial assignment assigns variable " + std::to_string(var) +
                              " twice");
    }
  }
  return out;
}

std::string print_partial(const std::map<int, bool>& partial) {
  std::string out;
  for (const auto& [var, value] : partial) {
    out += std::to_string(var) + (value ? " T\n" : " F\n");
  }
  return out;
}

}  // namespace esc
