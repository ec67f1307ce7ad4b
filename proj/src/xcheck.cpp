#include <algorithm>
#include <numeric>
#include <random>

#include "esc/harness.hpp"
#include "esc/oracles.hpp"

namespace esc {

using nlohmann::json;

std::size_t XCheckReport::agreeCount() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const XCheckCase& c) { return c.agree; }));
}

Graph random_graph(std::uint64_t seed, int minN, int maxN) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pickN(minN, maxN);
  int n = pickN(rng);
  return Graph::random(n, 0.5, rng);
}

CnfInstance random_cnf(std::uint64_t seed, int maxM) {
  std::mt19937_64 rng(seed);
  CnfInstance c;
  c.m = std::uniform_int_distribution<int>(1, maxM)(rng);
  int clauses = std::uniform_int_distribution<int>(1, 8)(rng);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> vars(static_cast<std::size_t>(c.m));
  std::iota(vars.begin(), vars.end(), 1);
  for (int i = 0; i < clauses; ++i) {
    int len = std::uniform_int_distribution<int>(1, std::min(3, c.m))(rng);
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<int> clause;
    for (int j = 0; j < len; ++j) clause.push_back(coin(rng) ? vars[j] : -vars[j]);
    std::sort(clause.begin(), clause.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
    c.clauses.push_back(clause);
  }
  std::bernoulli_distribution assigned(1.0 / 3.0);
  for (int v = 1; v <= c.m; ++v) {
    if (assigned(rng)) c.partial[v] = coin(rng);
  }
  return c;
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string where(const XCheckCase& c) {
  return "seed " + std::to_string(c.seed) + " n=" + std::to_string(c.n) +
         (c.k ? " k=" + std::to_string(c.k) : std::string());
}

void check_claims(const ReductionArtifact& a, const XCheckCase& c, XCheckReport& r) {
  ParamVector measured = system_params(a.lib, a.base);
  for (const auto& check : compare_claims(a.meta, measured)) {
    if (check.agree()) continue;
    std::string msg = where(c) + ": " + check.key + " claimed " + std::to_string(check.claimed) +
                      ", measured " +
                      (check.measured ? std::to_string(*check.measured) : std::string("n/a"));
    (check.whitelisted ? r.whitelisted : r.calibrationMismatches).push_back(msg);
  }
  for (const auto& note : a.meta.tableDiscrepancies) {
    r.whitelisted.push_back(where(c) + ": " + note);
  }
  for (const auto& note : a.meta.calibration) {
    r.calibrationMismatches.push_back(where(c) + ": " + note);
  }
}

void run_decision(const ReductionArtifact& a, bool expected, XCheckCase& c,
                  const SolveOptions& opts) {
  c.expected = yes_no(expected);
  Answer got = Answer::Unknown;
  try {
    got = a.given ? cs_adapt(a.adapt_instance(), opts).answer
                  : cs_create(a.create_instance(), opts).answer;
  } catch (const GivenSystemNotWorking& e) {
    c.notes.push_back(e.what());
  }
  c.got = to_string(got);
  c.agree = got != Answer::Unknown && (got == Answer::Yes) == expected && c.notes.empty();
  if (a.given && a.bound && a.meta.twinReward && *a.meta.twinReward <= *a.bound) {
    c.notes.push_back("given system is not excluded by the bound");
    c.agree = false;
  }
}

}  // namespace

XCheckReport run_xcheck(ReductionKind kind, int seedCount, int maxN, RewardKind rew,
                        const SolveOptions& opts) {
  if (seedCount < 1) throw PreconditionError("--seeds must be at least 1");
  if (maxN < 1 || maxN > kOracleSizeLimit) {
    throw PreconditionError("--max-n must be in 1.." + std::to_string(kOracleSizeLimit));
  }
  XCheckReport r;
  r.kind = kind;
  r.rew = rew;
  r.maxN = maxN;
  for (int s = 1; s <= seedCount; ++s) r.seeds.push_back(static_cast<std::uint64_t>(s));

  if (kind == ReductionKind::B22) {
    const int maxM = std::min(maxN, 6);
    for (auto seed : r.seeds) {
      CnfInstance cnf = random_cnf(seed, maxM);
      XCheckCase c;
      c.seed = seed;
      c.n = cnf.m;
      c.instance = print_dimacs(cnf) + print_partial(cnf.partial);
      ReductionArtifact a = gen_csat_csadapt(cnf);
      run_decision(a, csat_extendable(cnf).extendable, c, opts);
      check_claims(a, c, r);
      r.cases.push_back(std::move(c));
    }
    return r;
  }

  const int minN = k_range(kind, 1) ? 1 : 2;
  if (maxN < minN) throw PreconditionError(to_string(kind) + " needs --max-n >= " + std::to_string(minN));
  for (auto seed : r.seeds) {
    Graph g = random_graph(seed, minN, maxN);
    const int gamma = *min_dominating_set(g).gamma;
    if (kind == ReductionKind::Lemma2) {
      XCheckCase c;
      c.seed = seed;
      c.n = g.n();
      c.instance = print_graph(g);
      c.expected = "numcomp=" + std::to_string(gamma + 2) + " codeb=" + std::to_string(9 * gamma + 16);
      std::string got;
      bool agree = true;
      for (auto rk : {RewardKind::NumComp, RewardKind::CodeB}) {
        ReductionArtifact a = gen_ds_cscreate_opt(g, rk);
        CreateOutcome o = es_create(a.create_instance(), opts);
        std::int64_t want = rk == RewardKind::NumComp ? gamma + 2 : 9 * gamma + 16;
        std::string value = o.tag == CreateOutcome::Tag::System ? std::to_string(o.reward) : "none";
        got += (got.empty() ? "" : " ") + to_string(rk) + "=" + value;
        agree = agree && o.tag == CreateOutcome::Tag::System && o.reward == want;
        if (rk == RewardKind::NumComp) check_claims(a, c, r);
      }
      c.got = got;
      c.agree = agree;
      r.cases.push_back(std::move(c));
      continue;
    }
    auto range = k_range(kind, g.n());
    for (int k = range->first; k <= range->second; ++k) {
      XCheckCase c;
      c.seed = seed;
      c.n = g.n();
      c.k = k;
      c.instance = print_graph(g);
      ReductionArtifact a = generate(kind, g, k, rew);
      run_decision(a, gamma <= k, c, opts);
      check_claims(a, c, r);
      r.cases.push_back(std::move(c));
    }
  }
  return r;
}

json xcheck_to_json(const XCheckReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"seed", c.seed},
                     {"n", c.n},
                     {"k", c.k},
                     {"instance", c.instance},
                     {"expected", c.expected},
                     {"got", c.got},
                     {"agree", c.agree},
                     {"notes", c.notes}});
  }
  return {{"kind", to_string(r.kind)},
          {"reward", to_string(r.rew)},
          {"seeds", r.seeds},
          {"max_n", r.maxN},
          {"cases", cases},
          {"calibration_mismatches", r.calibrationMismatches},
          {"whitelisted", r.whitelisted},
          {"summary",
           {{"cases", r.cases.size()}, {"agree", r.agreeCount()}, {"passed", r.passed()}}}};
}

std::string xcheck_to_text(const XCheckReport& r) {
  std::string out = "xcheck " + to_string(r.kind) + " reward=" + to_string(r.rew) +
                    " seeds=1.." + std::to_string(r.seeds.size()) + " max-n=" + std::to_string(r.maxN) + "\n";
  for (const auto& c : r.cases) {
    out += where(c) + " expected=" + c.expected + " got=" + c.got + (c.agree ? " ok" : " MISMATCH");
    for (const auto& n : c.notes) out += " [" + n + "]";
    out += '\n';
  }
  for (const auto& m : r.calibrationMismatches) out += "calibration: " + m + '\n';
  out += "agree " + std::to_string(r.agreeCount()) + "/" + std::to_string(r.cases.size()) +
         ", calibration mismatches " + std::to_string(r.calibrationMismatches.size()) +
         ", whitelisted " + std::to_string(r.whitelisted.size()) + " -> " +
         (r.passed() ? "PASS" : "FAIL") + '\n';
  return out;
}

}  // namespace esc
