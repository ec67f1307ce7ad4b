// Acceptance run: one line per criterion. With an argument, runs only that criterion and
// exits non-zero when it fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "esc/dsl.hpp"
#include "esc/enumeration.hpp"
#include "esc/fixtures.hpp"
#include "esc/harness.hpp"
#include "esc/interpreter.hpp"
#include "esc/metrics.hpp"
#include "esc/oracles.hpp"
#include "esc/reductions.hpp"
#include "esc/solvers.hpp"
#include "support/naive.hpp"

using namespace esc;

namespace {

constexpr int kSeeds = 20;
constexpr int kMaxN = 8;
constexpr int kLinearMaxN = 6;
constexpr int kLinearSeeds = 10;
constexpr std::uint64_t kStepsPerByte = kDefaultStepsPerInputByte;
constexpr double kFixtureSeconds = 1.0;

const char* kLeft =
    "Base(intSystem->System1(intProc1->Proc1(intProc->ProcA()),"
    "intProc2->Proc2(intProc->ProcC()),intProc3->Proc3(intProc->ProcC())))";
const char* kRight = "Base(intSystem->System2(intProc1->Proc1(intProc->ProcB())))";

struct Result {
  bool pass = true;
  std::string detail;
};

struct Tally {
  int cases = 0;
  int agree = 0;
  std::vector<std::string> failures;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) {
      ++agree;
    } else if (failures.size() < 3) {
      failures.push_back(what);
    }
  }
  std::string summary() const {
    std::string s = std::to_string(agree) + "/" + std::to_string(cases) + " agree";
    for (const auto& f : failures) s += "; " + f;
    return s;
  }
  bool ok() const { return cases > 0 && agree == cases; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

std::vector<Graph> graph_corpus(int minN, int maxN, int seeds = kSeeds) {
  std::vector<Graph> out;
  for (int s = 1; s <= seeds; ++s) out.push_back(random_graph(s, minN, maxN));
  return out;
}

std::string label(const Graph& g, int k) {
  return "n=" + std::to_string(g.n()) + " m=" + std::to_string(g.edges().size()) +
         " k=" + std::to_string(k);
}

bool oracle_yes(const Graph& g, int k) { return has_dominating_set(g, k).exists; }

bool given_works(const ReductionArtifact& a) {
  return a.given && validate_system(*a.given, a.lib, a.base).empty() &&
         verify(*a.given, a.lib, a.reqs, default_budget(a.lib, a.reqs)).working;
}

// 1 ----------------------------------------------------------------------------------------

Result fixture_counts() {
  auto t0 = std::chrono::steady_clock::now();
  auto inst = figures_instance();
  auto valid = collect_valid(inst.lib, "Base");
  auto working = collect_working(inst.lib, "Base", inst.reqs, default_budget(inst.lib, inst.reqs));
  bool allEight = true, allProcA = true;
  for (const auto& s : working) {
    allEight = allEight && reward(s, RewardKind::NumComp, inst.lib) == 8;
    const SystemInstance* sys = s.child("intSystem");
    const SystemInstance* p1 = sys ? sys->child("intProc1") : nullptr;
    const SystemInstance* leaf = p1 ? p1->child("intProc") : nullptr;
    allProcA = allProcA && leaf && leaf->component() == "ProcA";
  }
  double secs = seconds_since(t0);
  Result r;
  r.pass = valid.size() == 68 && working.size() == 8 && allEight && allProcA &&
           secs < kFixtureSeconds;
  r.detail = "valid " + std::to_string(valid.size()) + ", working " +
             std::to_string(working.size()) + ", all NumComp 8: " + (allEight ? "yes" : "no") +
             ", Proc1 slot ProcA: " + (allProcA ? "yes" : "no") + ", " + fmt(secs) + " s";
  return r;
}

// 2 ----------------------------------------------------------------------------------------

Result behaviour() {
  auto inst = figures_instance();
  auto budget = default_budget(inst.lib, inst.reqs);
  auto right = parse_system_id(kRight);
  const std::vector<std::int64_t> expected{3, 1, 1, 1, 2};
  std::vector<std::int64_t> got;
  bool ok = true;
  for (const auto& row : inst.reqs.rows()) {
    auto o = evaluate(right, inst.lib, row.input, budget);
    ok = ok && o.kind == RunOutcome::Kind::Output;
    got.push_back(o.value);
  }
  auto left = verify(parse_system_id(kLeft), inst.lib, inst.reqs, budget);
  std::string outs;
  for (auto v : got) outs += (outs.empty() ? "" : ",") + std::to_string(v);
  Result r;
  r.pass = ok && got == expected && left.working;
  r.detail = "right system outputs (" + outs + ") on r1..r5, left system working: " +
             (left.working ? "yes" : "no");
  return r;
}

// 3 ----------------------------------------------------------------------------------------

Result lemma1_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const Graph& g : graph_corpus(1, kMaxN)) {
    for (int k = 1; k <= g.n(); ++k) {
      auto d = cs_create(gen_ds_cscreate(g, k).create_instance());
      t.record((d.answer == Answer::Yes) == oracle_yes(g, k), label(g, k));
    }
  }
  return {t.ok(), t.summary() + ", " + fmt(seconds_since(t0), 2) + " s"};
}

// 4 ----------------------------------------------------------------------------------------

Result optimum_calibration() {
  Tally t;
  for (const Graph& g : graph_corpus(1, kMaxN)) {
    const int gamma = *min_dominating_set(g).gamma;
    auto num = es_create(gen_ds_cscreate_opt(g, RewardKind::NumComp).create_instance());
    t.record(num.tag == SearchOutcome::Tag::System && num.reward == gamma + 2,
             label(g, gamma) + " numcomp " + std::to_string(num.reward));
    auto code = es_create(gen_ds_cscreate_opt(g, RewardKind::CodeB).create_instance());
    t.record(code.tag == SearchOutcome::Tag::System && code.reward == 9 * gamma + 16,
             label(g, gamma) + " codeb " + std::to_string(code.reward));
  }
  return {t.ok(), t.summary() + " (gamma+2 and 9*gamma+16)"};
}

// 5 ----------------------------------------------------------------------------------------

Result adapt_equivalence() {
  Tally answers, givens;
  for (const Graph& g : graph_corpus(1, kMaxN)) {
    const int gamma = *min_dominating_set(g).gamma;
    for (int k = 1; k < g.n(); ++k) {
      for (auto rew : {RewardKind::NumComp, RewardKind::CodeB}) {
        auto a = gen_ds_csadapt(g, k, rew);
        givens.record(given_works(a), label(g, k));
        auto d = cs_adapt(a.adapt_instance());
        answers.record((d.answer == Answer::Yes) == (gamma <= k),
                       label(g, k) + " " + to_string(rew));
      }
    }
  }
  return {answers.ok() && givens.ok(),
          "answers " + answers.summary() + ", given working " + givens.summary()};
}

// 6 ----------------------------------------------------------------------------------------

Result appendix_constructions() {
  struct Expect {
    ReductionKind kind;
    std::map<std::string, std::int64_t> params;
  };
  const std::vector<Expect> expects{
      {ReductionKind::A9, {{"i_ci", 2}, {"c_pi", 1}, {"s_depth", 3}}},
      {ReductionKind::A10, {{"i_ci", 2}, {"c_pi", 1}, {"c_ri", 2}}},
      {ReductionKind::A11, {{"l_comp", 3}, {"i_ci", 2}, {"s_depth", 2}}},
  };
  bool pass = true;
  std::string detail;
  for (const auto& e : expects) {
    Tally answers, params;
    const int minN = e.kind == ReductionKind::A10 ? 2 : 1;
    for (const Graph& g : graph_corpus(minN, kMaxN)) {
      auto range = k_range(e.kind, g.n());
      for (int k = range->first; k <= range->second; ++k) {
        auto a = generate(e.kind, g, k, RewardKind::NumComp);
        auto d = cs_create(a.create_instance());
        answers.record((d.answer == Answer::Yes) == oracle_yes(g, k), label(g, k));
        auto p = system_params(a.lib, a.base);
        auto j = params_to_json(p);
        bool ok = true;
        std::string bad;
        for (const auto& [key, value] : e.params) {
          if (j[key].is_null() || j[key].get<std::int64_t>() != value) {
            ok = false;
            bad += " " + key + "=" + j[key].dump();
          }
        }
        params.record(ok, label(g, k) + bad);
      }
    }
    pass = pass && answers.ok() && params.ok();
    detail += (detail.empty() ? "" : "; ") + to_string(e.kind) + " answers " + answers.summary() +
              ", params " + params.summary();
  }
  return {pass, detail};
}

// 7 ----------------------------------------------------------------------------------------

Result twin_campaign(ReductionKind kind, RewardKind rew) {
  Tally answers, givens, excluded;
  const int minN = kind == ReductionKind::TwinA10 ? 2 : 1;
  for (const Graph& g : graph_corpus(minN, kMaxN)) {
    auto range = k_range(kind, g.n());
    for (int k = range->first; k <= range->second; ++k) {
      auto a = generate(kind, g, k, rew);
      givens.record(given_works(a), label(g, k));
      excluded.record(reward(*a.given, a.rew, a.lib) > *a.bound,
                      label(g, k) + " twin " + std::to_string(reward(*a.given, a.rew, a.lib)) +
                          " bound " + std::to_string(*a.bound));
      auto d = cs_adapt(a.adapt_instance());
      answers.record((d.answer == Answer::Yes) == oracle_yes(g, k), label(g, k));
    }
  }
  return {answers.ok() && givens.ok() && excluded.ok(),
          to_string(kind) + "/" + to_string(rew) + " answers " + answers.summary() +
              ", twin working " + givens.summary() + ", twin excluded " + excluded.summary()};
}

Result b11_numcomp() { return twin_campaign(ReductionKind::B11, RewardKind::NumComp); }
Result b11_codeb() { return twin_campaign(ReductionKind::B11, RewardKind::CodeB); }

Result twinning() {
  bool pass = true;
  std::string detail;
  for (auto kind : {ReductionKind::TwinA9, ReductionKind::TwinA10, ReductionKind::TwinA11}) {
    for (auto rew : {RewardKind::NumComp, RewardKind::CodeB}) {
      auto r = twin_campaign(kind, rew);
      pass = pass && r.pass;
      detail += (detail.empty() ? "" : "; ") + r.detail;
    }
  }
  return {pass, detail};
}

// 8 ----------------------------------------------------------------------------------------

Result csat() {
  Tally answers, givens, shape;
  for (int s = 1; s <= kSeeds; ++s) {
    CnfInstance c = random_cnf(s, 6);
    shape.record(c.m <= 6 && c.clauses.size() <= 8, "seed " + std::to_string(s));
    auto a = gen_csat_csadapt(c);
    givens.record(given_works(a), "seed " + std::to_string(s));
    auto d = cs_adapt(a.adapt_instance());
    answers.record((d.answer == Answer::Yes) == csat_extendable(c).extendable,
                   "seed " + std::to_string(s));
  }
  return {answers.ok() && givens.ok() && shape.ok(),
          "answers " + answers.summary() + ", given working " + givens.summary()};
}

// 9, 10 ------------------------------------------------------------------------------------

struct Instance {
  std::string name;
  Library lib;
  RequirementSet reqs;
  std::string base;
};

std::vector<Instance> instance_corpus(int seeds, int maxN, int maxM) {
  std::vector<Instance> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& name, const Library& lib, const RequirementSet& reqs,
                 const std::string& base, const std::string& key) {
    if (seen.insert(key).second) out.push_back({name, lib, reqs, base});
  };
  auto fx = figures_instance();
  add("fixture", fx.lib, fx.reqs, fx.base, "fixture");
  const std::vector<ReductionKind> kinds{
      ReductionKind::Lemma1, ReductionKind::Lemma2,  ReductionKind::Lemma4,
      ReductionKind::A9,     ReductionKind::A10,     ReductionKind::A11,
      ReductionKind::B11,    ReductionKind::TwinA9,  ReductionKind::TwinA10,
      ReductionKind::TwinA11};
  for (int s = 1; s <= seeds; ++s) {
    for (auto kind : kinds) {
      const int minN = kind == ReductionKind::A10 || kind == ReductionKind::TwinA10 ? 2 : 1;
      Graph g = random_graph(s, minN, maxN);
      auto range = k_range(kind, g.n());
      if (!range) continue;
      for (int k = range->first; k <= range->second; ++k) {
        for (auto rew : {RewardKind::NumComp, RewardKind::CodeB}) {
          auto a = generate(kind, g, k, rew);
          add(to_string(kind) + " seed " + std::to_string(s) + " " + label(g, k), a.lib, a.reqs,
              a.base, a.libraryText + "\n--\n" + a.reqsText);
        }
      }
    }
    CnfInstance c = random_cnf(s, maxM);
    auto a = gen_csat_csadapt(c);
    add("b22 seed " + std::to_string(s), a.lib, a.reqs, a.base,
        a.libraryText + "\n--\n" + a.reqsText);
  }
  return out;
}

// (I_ci+1) raised to the number of non-root vertices of the full tree with branching C_ri and
// S_depth levels. Differs from the stated bound only when C_ri = 1.
BigInt vertex_count_bound(std::int64_t iCi, std::int64_t cRi, std::int64_t sDepth) {
  BigInt vertices = 0, level = 1;
  for (std::int64_t d = 1; d < sDepth; ++d) {
    level *= cRi;
    vertices += level;
  }
  return boost::multiprecision::pow(BigInt(iCi + 1), static_cast<unsigned>(vertices));
}

Result enumeration_bound() {
  Tally t, corrected;
  int unmaterialized = 0;
  for (const auto& inst : instance_corpus(kSeeds, kMaxN, 6)) {
    auto sum = summarize_valid_space(inst.lib, inst.base);
    auto p = system_params(inst.lib, inst.base);
    try {
      BigInt bound = count_upper_bound(p.i_ci, p.c_ri, *p.s_depth);
      t.record(sum.count <= bound,
               inst.name + " count " + sum.count.str() + " > " + bound.str() + " (I_ci " +
                   std::to_string(p.i_ci) + ", C_ri " + std::to_string(p.c_ri) + ", S_depth " +
                   std::to_string(*p.s_depth) + ")");
      corrected.record(sum.count <= vertex_count_bound(p.i_ci, p.c_ri, *p.s_depth), inst.name);
    } catch (const std::overflow_error&) {
      ++unmaterialized;
    }
  }
  return {t.ok() && unmaterialized == 0,
          t.summary() + " instances within (I_ci+1)^(C_ri^S_depth), bound too large to compute: " +
              std::to_string(unmaterialized) + "; with the exponent counting non-root vertices " +
              corrected.summary()};
}

Result inequalities() {
  Tally t;
  for (const auto& inst : instance_corpus(kSeeds, kMaxN, 6)) {
    auto v = parameter_inequality_violations(system_params(inst.lib, inst.base));
    t.record(v.empty(), inst.name + (v.empty() ? "" : ": " + v.front()));
  }
  return {t.ok(), t.summary() + " instances satisfy all four inequalities"};
}

// 11 ---------------------------------------------------------------------------------------

Result linearity() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::uint64_t systems = 0, runs = 0;
  double maxRatio = 0;
  std::string worst;
  for (const auto& inst : instance_corpus(kLinearSeeds, kLinearMaxN, 4)) {
    const std::uint64_t size = instance_size_bytes(inst.lib, inst.reqs);
    const std::uint64_t budget = kStepsPerByte * size;
    ProgramIndex index(inst.lib);
    bool within = true;
    enumerate_valid(inst.lib, inst.base, {}, [&](const SystemInstance& s) {
      ++systems;
      WiredSystem ws(s, index);
      for (const auto& row : inst.reqs.rows()) {
        ++runs;
        auto o = ws.run(row.input, budget);
        if (o.kind == RunOutcome::Kind::BudgetExceeded) within = false;
        double ratio = static_cast<double>(o.steps) / static_cast<double>(size);
        if (ratio > maxRatio) {
          maxRatio = ratio;
          worst = inst.name;
        }
      }
      return true;
    });
    t.record(within, inst.name);
  }
  return {t.ok(), t.summary() + " instances within C*|instance| with C=" +
                      std::to_string(kStepsPerByte) + " steps/byte; " + std::to_string(systems) +
                      " systems, " + std::to_string(runs) + " runs, max steps/byte " +
                      fmt(maxRatio) + " (" + worst + "), " + fmt(seconds_since(t0), 2) + " s"};
}

// 12 ---------------------------------------------------------------------------------------

std::string formula_text(const CnfClauses& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < f[i].size(); ++j) {
      if (j) s += ", ";
      s += std::to_string(f[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

// Every non-tautological clause over variables 1..m.
std::vector<std::vector<int>> all_clauses(int m) {
  std::vector<std::vector<int>> out;
  int total = 1;
  for (int v = 0; v < m; ++v) total *= 3;
  for (int code = 1; code < total; ++code) {
    std::vector<int> clause;
    int c = code;
    for (int v = 1; v <= m; ++v, c /= 3) {
      if (c % 3 == 1) clause.push_back(v);
      if (c % 3 == 2) clause.push_back(-v);
    }
    out.push_back(clause);
  }
  return out;
}

// Runs batches of formulas through one interpreted program per batch: the program sets bit j
// of its output when formula j is satisfied by the input.
struct CnfBatch {
  int m = 1;
  std::vector<CnfClauses> formulas;
  std::uint64_t checked = 0;
  std::uint64_t disagreements = 0;
  std::string firstDisagreement;

  void flush() {
    if (formulas.empty()) return;
    std::string body = "        create Boolean array vA of length " + std::to_string(m) + "\n";
    for (int v = 1; v <= m; ++v) {
      body += "        vA[" + std::to_string(v) + "] = v_I(x" + std::to_string(v) + ")\n";
    }
    body += "        n = 0\n";
    for (std::size_t j = 0; j < formulas.size(); ++j) {
      body += "        if cnf_satisfied(" + formula_text(formulas[j]) + ", vA) then n = n + " +
              std::to_string(std::int64_t{1} << j) + "\n";
    }
    body += "        output n\n";
    Library lib = parse_library_or_throw("component Base {\n    void main(Input I) {\n" + body +
                                         "    }}\n");
    SystemInstance root("Base", std::nullopt, {});
    ProgramIndex index(lib);
    WiredSystem ws(root, index);
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<bool> a(m);
      for (int v = 0; v < m; ++v) a[v] = (mask >> v) & 1;
      auto o = ws.run(a, 1u << 30);
      for (std::size_t j = 0; j < formulas.size(); ++j) {
        ++checked;
        const bool got = o.kind == RunOutcome::Kind::Output && ((o.value >> j) & 1);
        if (got != cnf_evaluate(formulas[j], a)) {
          if (!disagreements++) firstDisagreement = formula_text(formulas[j]);
        }
      }
    }
    formulas.clear();
  }
  void add(CnfClauses f) {
    formulas.push_back(std::move(f));
    if (formulas.size() == 40) flush();
  }
};

Result independence() {
  auto t0 = std::chrono::steady_clock::now();
  Tally libs;
  std::uint64_t skipped = 0, systems = 0;
  std::mt19937_64 rng(12);
  auto compare = [&](const std::string& name, const Library& lib, const std::string& base) {
    auto naive = testing::naive_valid_systems(lib, base);
    if (naive.skipped) {
      ++skipped;
      return;
    }
    std::vector<std::string> ids;
    enumerate_valid(lib, base, {}, [&](const SystemInstance& s) {
      ids.push_back(canonical_id(s));
      return true;
    });
    systems += ids.size();
    libs.record(ids == naive.ids, name);
  };
  for (int i = 0; i < 300; ++i) {
    compare("random library " + std::to_string(i),
            parse_library_or_throw(testing::random_library_text(rng)), "Base");
  }
  for (const auto& inst : instance_corpus(kSeeds, 3, 2)) {
    if (inst.lib.components().size() <= 6) compare(inst.name, inst.lib, inst.base);
  }

  std::uint64_t checked = 0, disagreements = 0;
  std::string first;
  for (int m = 1; m <= 4; ++m) {
    CnfBatch batch;
    batch.m = m;
    auto clauses = all_clauses(m);
    const int c = static_cast<int>(clauses.size());
    for (int a = 0; a < c; ++a) {
      batch.add({clauses[a]});
      for (int b = a + 1; b < c; ++b) {
        batch.add({clauses[a], clauses[b]});
        for (int d = b + 1; d < c; ++d) {
          batch.add({clauses[a], clauses[b], clauses[d]});
          for (int e = d + 1; e < c; ++e) batch.add({clauses[a], clauses[b], clauses[d], clauses[e]});
        }
      }
    }
    batch.flush();
    checked += batch.checked;
    disagreements += batch.disagreements;
    if (first.empty()) first = batch.firstDisagreement;
  }
  const std::uint64_t formulas = checked;

  Result r;
  r.pass = libs.ok() && skipped == 0 && disagreements == 0;
  r.detail = "enumeration vs naive generator " + libs.summary() + " libraries (" +
             std::to_string(systems) + " systems, skipped " + std::to_string(skipped) +
             "); cnf_satisfied vs direct evaluation " + std::to_string(formulas - disagreements) +
             "/" + std::to_string(formulas) + " formula-assignment pairs agree" +
             (first.empty() ? "" : " (first mismatch " + first + ")") + ", " +
             fmt(seconds_since(t0), 2) + " s";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"1", fixture_counts},       {"2", behaviour},
      {"3", lemma1_equivalence},   {"4", optimum_calibration},
      {"5", adapt_equivalence},    {"6", appendix_constructions},
      {"7a", b11_numcomp},         {"7b", b11_codeb},
      {"7c", twinning},            {"8", csat},
      {"9", enumeration_bound},    {"10", inequalities},
      {"11", linearity},           {"12", independence},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool allPass = true, found = false;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && only != id) continue;
    found = true;
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    allPass = allPass && r.pass;
    std::cout << "criterion " << id << ' ' << (r.pass ? "PASS" : "FAIL") << ": " << r.detail
              << std::endl;
  }
  if (!found) {
    std::cerr << "unknown criterion " << only << "\n";
    return 2;
  }
  return allPass ? 0 : 1;
}
