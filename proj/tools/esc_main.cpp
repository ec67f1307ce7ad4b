#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "esc/dsl.hpp"
#include "esc/enumeration.hpp"
#include "esc/fixtures.hpp"
#include "esc/graph.hpp"
#include "esc/harness.hpp"
#include "esc/interpreter.hpp"
#include "esc/metrics.hpp"
#include "esc/oracles.hpp"
#include "esc/reductions.hpp"
#include "esc/solvers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace esc;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

struct ExitWith {
  int code;
};

struct Globals {
  bool json = false;
  std::optional<std::uint64_t> budget;
  std::string config;
};

struct InstanceArgs {
  std::string lib, req, base, rew, given, bundle;
  std::optional<std::int64_t> bound;
  std::optional<std::size_t> maxDepth, maxComponents;
  std::optional<std::uint64_t> maxCount;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a, bool withRew, bool withGiven,
                          bool withBound) {
  cmd->add_option("--lib", a.lib, "library file or builtin:figures");
  cmd->add_option("--req", a.req, "requirements file or builtin:figures");
  cmd->add_option("--base", a.base, "base component");
  if (withRew) cmd->add_option("--rew", a.rew, "numcomp or codeb");
  if (withGiven) cmd->add_option("--given", a.given, "given system ID");
  if (withBound) cmd->add_option("--bound,-k", a.bound, "reward bound");
  cmd->add_option("--bundle", a.bundle, "instance bundle directory");
  cmd->add_option("--max-depth", a.maxDepth, "S_depth cap");
  cmd->add_option("--max-components", a.maxComponents, "S_comp cap");
  cmd->add_option("--max-count", a.maxCount, "stop after this many systems");
}

EnumCaps caps_of(const InstanceArgs& a) { return EnumCaps{a.maxDepth, a.maxComponents, a.maxCount}; }

bool builtin(const std::string& path) { return path == kBuiltinFigures; }

template <class T>
T parsed_or_exit(const ParseResult<T>& r) {
  for (const auto& d : r.diagnostics) std::cerr << format_diagnostic(d) << "\n";
  if (!r.ok()) throw ExitWith{kUsage};
  return *r.value;
}

std::string load_text(const std::string& path, bool library) {
  if (builtin(path)) {
    return std::string(library ? figures_library_text() : figures_requirements_text());
  }
  return read_text_file(path);
}

Library load_library(const std::string& path) {
  if (path.empty()) throw CLI::ValidationError("--lib", "a library is required");
  return parsed_or_exit(parse_library(load_text(path, true), path));
}

RequirementSet load_requirements(const std::string& path) {
  if (path.empty()) throw CLI::ValidationError("--req", "requirements are required");
  return parsed_or_exit(parse_requirements(load_text(path, false), path));
}

struct Loaded {
  Library lib;
  RequirementSet reqs;
  std::string base;
  Reward rew;
  std::optional<SystemInstance> given;
  std::optional<std::int64_t> bound;
};

Loaded load_instance(const InstanceArgs& a, bool needReqs) {
  Loaded l;
  if (!a.bundle.empty()) {
    Bundle b = read_bundle(a.bundle);
    l = Loaded{b.lib, b.reqs, b.base, b.rew, b.given, b.bound};
  } else {
    l.lib = load_library(a.lib);
    if (needReqs || !a.req.empty()) l.reqs = load_requirements(a.req);
    l.base = a.base.empty() && builtin(a.lib) ? "Base" : a.base;
    l.rew = Reward{parse_reward_kind(a.rew.empty() ? "numcomp" : a.rew), {}};
  }
  if (!a.bundle.empty() && !a.rew.empty()) {
    if (l.rew.kind == RewardKind::AssignmentDistance) {
      throw CLI::ValidationError("--rew", "this bundle carries its own reward");
    }
    l.rew = Reward{parse_reward_kind(a.rew), {}};
  }
  if (!a.base.empty()) l.base = a.base;
  if (!a.given.empty()) l.given = parse_system_id(a.given);
  if (a.bound) l.bound = a.bound;
  if (l.base.empty()) throw CLI::ValidationError("--base", "a base component is required");
  return l;
}

std::uint64_t budget_for(const Globals& g, const Library& lib, const RequirementSet& reqs) {
  if (g.budget) return *g.budget;
  std::uint64_t perByte = kDefaultStepsPerInputByte;
  if (!g.config.empty()) {
    try {
      json cfg = json::parse(read_text_file(g.config));
      perByte = cfg.value("step_budget_per_input_byte", perByte);
    } catch (const json::exception& e) {
      throw PreconditionError(g.config + ": " + e.what());
    }
  }
  return default_budget(lib, reqs, perByte);
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

json system_json(const std::optional<SystemInstance>& s) {
  return s ? json(canonical_id(*s)) : json(nullptr);
}

int outcome_exit(SearchOutcome::Tag t) {
  switch (t) {
    case SearchOutcome::Tag::System: return kOk;
    case SearchOutcome::Tag::Bot: return kNegative;
    case SearchOutcome::Tag::Unknown: return kInternal;
  }
  return kInternal;
}

int answer_exit(Answer a) {
  switch (a) {
    case Answer::Yes: return kOk;
    case Answer::No: return kNegative;
    case Answer::Unknown: return kInternal;
  }
  return kInternal;
}

std::string tag_name(SearchOutcome::Tag t) {
  switch (t) {
    case SearchOutcome::Tag::System: return "system";
    case SearchOutcome::Tag::Bot: return "bot";
    case SearchOutcome::Tag::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------

int cmd_parse(const Globals& g, const std::string& file, bool asRequirements) {
  const bool req = asRequirements || fs::path(file).extension() == ".req";
  std::string text = load_text(file, !req);
  if (req) {
    RequirementSet r = parsed_or_exit(parse_requirements(text, file));
    std::string canonical = print_requirements(r);
    emit(g, {{"ok", true}, {"kind", "requirements"}, {"rows", r.rows().size()}, {"canonical", canonical}},
         canonical);
  } else {
    Library lib = parsed_or_exit(parse_library(text, file));
    auto problems = validate_library(lib);
    for (const auto& p : problems) std::cerr << file << ": error: " << p << "\n";
    if (!problems.empty()) return kUsage;
    std::string canonical = pretty_print(lib);
    emit(g,
         {{"ok", true},
          {"kind", "library"},
          {"interfaces", lib.interfaces().size()},
          {"components", lib.components().size()},
          {"canonical", canonical}},
         canonical);
  }
  return kOk;
}

int cmd_enumerate(const Globals& g, const InstanceArgs& a, bool working) {
  Loaded l = load_instance(a, working);
  std::vector<std::string> ids;
  auto collect = [&](const SystemInstance& s) {
    ids.push_back(canonical_id(s));
    if (!g.json) std::cout << ids.back() << "\n";
    return true;
  };
  EnumResult r = working ? enumerate_working(l.lib, l.base, l.reqs, caps_of(a),
                                             budget_for(g, l.lib, l.reqs), collect)
                         : enumerate_valid(l.lib, l.base, caps_of(a), collect);
  if (g.json) {
    std::cout << json{{"count", ids.size()}, {"cap_exceeded", r.capExceeded}, {"systems", ids}}.dump(2)
              << "\n";
  } else {
    std::cerr << ids.size() << (working ? " working" : " valid") << " systems"
              << (r.capExceeded ? " (cap hit, incomplete)" : "") << "\n";
  }
  return r.capExceeded ? kInternal : kOk;
}

int cmd_verify(const Globals& g, const InstanceArgs& a, const std::string& id) {
  if (id.empty()) throw CLI::ValidationError("--system", "a system ID is required");
  SystemInstance s = parse_system_id(id);
  InstanceArgs b = a;
  if (b.base.empty() && b.bundle.empty()) b.base = s.component();
  Loaded l = load_instance(b, true);
  auto problems = validate_system(s, l.lib, l.base);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "invalid system: " << p << "\n";
    return kUsage;
  }
  const std::uint64_t budget = budget_for(g, l.lib, l.reqs);
  json rows = json::array();
  std::string text;
  bool working = true;
  for (std::size_t i = 0; i < l.reqs.rows().size(); ++i) {
    const auto& row = l.reqs.rows()[i];
    RunOutcome o = evaluate(s, l.lib, row.input, budget);
    bool ok = o.kind == RunOutcome::Kind::Output && o.value == row.output;
    working = working && ok;
    rows.push_back({{"row", i + 1}, {"expected", row.output}, {"outcome", describe(o)},
                    {"steps", o.steps}, {"ok", ok}});
    text += "r" + std::to_string(i + 1) + ": expected " + std::to_string(row.output) + ", got " +
            describe(o) + (ok ? "" : "  FAIL") + "\n";
  }
  text += working ? "working\n" : "not working\n";
  emit(g, {{"system", id}, {"working", working}, {"budget", budget}, {"rows", rows}}, text);
  return working ? kOk : kNegative;
}

int cmd_create(const Globals& g, const InstanceArgs& a) {
  Loaded l = load_instance(a, true);
  SolveOptions opts{caps_of(a), budget_for(g, l.lib, l.reqs)};
  CreateOutcome o = es_create(CreateInstance{l.reqs, l.lib, l.base, l.rew, {}}, opts);
  std::string text;
  if (o.tag == CreateOutcome::Tag::Bot) {
    text = "no working system\n";
  } else {
    if (o.tag == CreateOutcome::Tag::Unknown) text = "cap hit; best so far:\n";
    if (o.system) text += "system: " + canonical_id(*o.system) + "\nreward: " + std::to_string(o.reward) + "\n";
  }
  emit(g,
       {{"outcome", tag_name(o.tag)}, {"system", system_json(o.system)},
        {"reward", o.system ? json(o.reward) : json(nullptr)}, {"rew", to_string(l.rew.kind)},
        {"examined", o.examined}},
       text);
  return outcome_exit(o.tag);
}

AdaptInstance adapt_of(const Loaded& l) {
  if (!l.given) throw CLI::ValidationError("--given", "a given system is required");
  return AdaptInstance{l.reqs, l.lib, l.base, l.rew, {}, *l.given, l.bound};
}

int cmd_adapt(const Globals& g, const InstanceArgs& a) {
  Loaded l = load_instance(a, true);
  SolveOptions opts{caps_of(a), budget_for(g, l.lib, l.reqs)};
  AdaptOutcome o = es_adapt(adapt_of(l), opts);
  std::string text = (o.tag == AdaptOutcome::Tag::Unknown ? "cap hit; best so far:\n" : "") +
                     std::string("system: ") + canonical_id(*o.system) + "\nreward: " +
                     std::to_string(o.reward) + "\n";
  emit(g,
       {{"outcome", tag_name(o.tag)}, {"system", system_json(o.system)}, {"reward", o.reward},
        {"given_reward", reward(*l.given, l.rew, l.lib)}, {"examined", o.examined}},
       text);
  return outcome_exit(o.tag);
}

int report_decision(const Globals& g, const Decision& d) {
  std::string text = to_string(d.answer) + "\n";
  if (d.witness) text += "witness: " + canonical_id(*d.witness) + "\n";
  if (d.reward) text += "reward: " + std::to_string(*d.reward) + "\n";
  emit(g,
       {{"answer", to_string(d.answer)}, {"witness", system_json(d.witness)},
        {"reward", d.reward ? json(*d.reward) : json(nullptr)}, {"examined", d.examined}},
       text);
  return answer_exit(d.answer);
}

int cmd_decide_create(const Globals& g, const InstanceArgs& a) {
  Loaded l = load_instance(a, true);
  SolveOptions opts{caps_of(a), budget_for(g, l.lib, l.reqs)};
  return report_decision(g, cs_create(CreateInstance{l.reqs, l.lib, l.base, l.rew, {}}, opts));
}

int cmd_decide_adapt(const Globals& g, const InstanceArgs& a) {
  Loaded l = load_instance(a, true);
  if (!l.bound) throw CLI::ValidationError("--bound", "a bound is required");
  SolveOptions opts{caps_of(a), budget_for(g, l.lib, l.reqs)};
  return report_decision(g, cs_adapt(adapt_of(l), opts));
}

struct ReduceArgs {
  std::string kind, graph, cnf, partial, out, rew = "numcomp";
  int k = 0;
};

CnfInstance load_cnf(const std::string& cnf, const std::string& partial) {
  if (cnf.empty()) throw CLI::ValidationError("--cnf", "a DIMACS file is required");
  CnfInstance c = parse_dimacs(read_text_file(cnf));
  if (!partial.empty()) c.partial = parse_partial(read_text_file(partial));
  c.check();
  return c;
}

Graph load_graph(const std::string& path) {
  if (path.empty()) throw CLI::ValidationError("--graph", "a graph file is required");
  return parse_graph(read_text_file(path));
}

int cmd_reduce(const Globals& g, const ReduceArgs& r) {
  ReductionKind kind = parse_reduction_kind(r.kind);
  ReductionArtifact a = kind == ReductionKind::B22
                            ? gen_csat_csadapt(load_cnf(r.cnf, r.partial))
                            : generate(kind, load_graph(r.graph), r.k, parse_reward_kind(r.rew));
  if (r.out.empty()) throw CLI::ValidationError("--out", "an output directory is required");
  write_bundle(r.out, a);
  std::string text = "wrote " + r.out + ": " + std::to_string(a.lib.interfaces().size()) +
                     " interfaces, " + std::to_string(a.lib.components().size()) +
                     " components, base " + a.base + ", reward " + to_string(a.rew.kind);
  if (a.bound) text += ", bound " + std::to_string(*a.bound);
  text += "\n";
  for (const auto& c : a.meta.calibration) text += "calibration: " + c + "\n";
  emit(g, {{"out", r.out}, {"kind", to_string(kind)}, {"meta", meta_to_json(a.meta)}}, text);
  return kOk;
}

int cmd_oracle(const Globals& g, const std::string& which, const ReduceArgs& r) {
  auto set_text = [](const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "}";
  };
  if (which == "ds") {
    DomSetResult d = has_dominating_set(load_graph(r.graph), r.k);
    emit(g, {{"exists", d.exists}, {"witness", d.witness}},
         std::string(d.exists ? "yes\nwitness: " + set_text(d.witness) + "\n" : "no\n"));
    return d.exists ? kOk : kNegative;
  }
  if (which == "mds") {
    DomSetResult d = min_dominating_set(load_graph(r.graph));
    emit(g, {{"gamma", *d.gamma}, {"witness", d.witness}},
         "gamma: " + std::to_string(*d.gamma) + "\nwitness: " + set_text(d.witness) + "\n");
    return kOk;
  }
  if (which == "csat") {
    CsatResult c = csat_extendable(load_cnf(r.cnf, r.partial));
    emit(g, {{"extendable", c.extendable}, {"witness", c.witness}},
         c.extendable ? "yes\n" + print_partial(c.witness) : std::string("no\n"));
    return c.extendable ? kOk : kNegative;
  }
  throw CLI::ValidationError("oracle", "expected ds, mds or csat");
}

int cmd_metrics(const Globals& g, const InstanceArgs& a) {
  ParamVector p;
  if (!a.bundle.empty()) {
    Bundle b = read_bundle(a.bundle);
    p = system_params(b.lib, a.base.empty() ? b.base : a.base, caps_of(a));
    if (b.meta.contains("claimed")) {
      for (const auto& [key, value] : b.meta["claimed"].items()) {
        json measured = params_to_json(p)[key];
        if (measured != value) {
          p.flags.push_back("claimed " + key + "=" + value.dump() + " differs from measured " + measured.dump());
        }
      }
    }
  } else {
    Library lib = load_library(a.lib);
    std::string base = a.base.empty() && builtin(a.lib) ? "Base" : a.base;
    p = base.empty() ? library_params(lib) : system_params(lib, base, caps_of(a));
  }
  json j = params_to_json(p);
  std::string text;
  for (const char* key : {"l_int", "l_comp", "i_ci", "c_pi", "c_ri", "s_comp", "s_depth"}) {
    text += std::string(key) + " " + (j[key].is_null() ? "n/a" : j[key].dump()) + "\n";
  }
  for (const auto& f : p.flags) text += "flag: " + f + "\n";
  emit(g, j, text);
  return kOk;
}

int cmd_xcheck(const Globals& g, const std::string& kind, int seeds, int maxN, const std::string& rew) {
  SolveOptions opts;
  opts.budget = g.budget;
  XCheckReport r = run_xcheck(parse_reduction_kind(kind), seeds, maxN, parse_reward_kind(rew), opts);
  emit(g, xcheck_to_json(r), xcheck_to_text(r));
  return r.passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Component-based system creation and adaptation toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--budget", g.budget, "interpreter step budget per requirement row");
  app.add_option("--config", g.config, "JSON config (step_budget_per_input_byte)");

  std::string parseFile;
  bool asRequirements = false;
  auto* parse = app.add_subcommand("parse", "parse and pretty-print a library or requirements file");
  parse->add_option("file", parseFile)->required();
  parse->add_flag("--requirements", asRequirements, "treat the file as requirements");

  InstanceArgs enumArgs;
  bool working = false;
  auto* enumerate = app.add_subcommand("enumerate", "list valid (or working) systems");
  add_instance_options(enumerate, enumArgs, false, false, false);
  enumerate->add_flag("--working", working, "only systems satisfying --req");

  InstanceArgs verifyArgs;
  std::string systemId;
  auto* verifyCmd = app.add_subcommand("verify", "run a system against the requirements");
  add_instance_options(verifyCmd, verifyArgs, false, false, false);
  verifyCmd->add_option("--system", systemId, "canonical system ID");

  InstanceArgs createArgs, adaptArgs, dcArgs, daArgs;
  auto* create = app.add_subcommand("create", "reward-minimal working system");
  add_instance_options(create, createArgs, true, false, false);
  auto* adapt = app.add_subcommand("adapt", "reward-minimal working system given a working one");
  add_instance_options(adapt, adaptArgs, true, true, false);
  auto* decideCreate = app.add_subcommand("decide-create", "does a working system exist");
  add_instance_options(decideCreate, dcArgs, true, false, false);
  auto* decideAdapt = app.add_subcommand("decide-adapt", "is there a working system within the bound");
  add_instance_options(decideAdapt, daArgs, true, true, true);

  ReduceArgs reduceArgs;
  auto* reduce = app.add_subcommand("reduce", "build a reduction instance bundle");
  reduce->add_option("kind", reduceArgs.kind)->required();
  reduce->add_option("--graph", reduceArgs.graph, "graph file");
  reduce->add_option("-k", reduceArgs.k, "k");
  reduce->add_option("--cnf", reduceArgs.cnf, "DIMACS file (b22)");
  reduce->add_option("--partial", reduceArgs.partial, "partial assignment file (b22)");
  reduce->add_option("--rew", reduceArgs.rew, "numcomp or codeb");
  reduce->add_option("--out", reduceArgs.out, "bundle directory");

  ReduceArgs oracleArgs;
  std::string oracleKind;
  auto* oracle = app.add_subcommand("oracle", "brute-force ground truth (ds, mds, csat)");
  oracle->add_option("which", oracleKind)->required();
  oracle->add_option("--graph", oracleArgs.graph, "graph file");
  oracle->add_option("-k", oracleArgs.k, "k");
  oracle->add_option("--cnf", oracleArgs.cnf, "DIMACS file");
  oracle->add_option("--partial", oracleArgs.partial, "partial assignment file");

  InstanceArgs metricsArgs;
  auto* metrics = app.add_subcommand("metrics", "parameter vector of a library or bundle");
  add_instance_options(metrics, metricsArgs, false, false, false);

  std::string xKind, xRew = "numcomp";
  int xSeeds = 20, xMaxN = 8;
  auto* xcheck = app.add_subcommand("xcheck", "cross-check a reduction against the oracles");
  xcheck->add_option("kind", xKind)->required();
  xcheck->add_option("--seeds", xSeeds, "seeds 1..N");
  xcheck->add_option("--max-n", xMaxN, "largest vertex/variable count");
  xcheck->add_option("--rew", xRew, "numcomp or codeb");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(g, parseFile, asRequirements);
    if (*enumerate) return cmd_enumerate(g, enumArgs, working);
    if (*verifyCmd) return cmd_verify(g, verifyArgs, systemId);
    if (*create) return cmd_create(g, createArgs);
    if (*adapt) return cmd_adapt(g, adaptArgs);
    if (*decideCreate) return cmd_decide_create(g, dcArgs);
    if (*decideAdapt) return cmd_decide_adapt(g, daArgs);
    if (*reduce) return cmd_reduce(g, reduceArgs);
    if (*oracle) return cmd_oracle(g, oracleKind, oracleArgs);
    if (*metrics) return cmd_metrics(g, metricsArgs);
    if (*xcheck) return cmd_xcheck(g, xKind, xSeeds, xMaxN, xRew);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const CLI::Error& e) {
    std::cerr << "esc: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "esc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "esc: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
