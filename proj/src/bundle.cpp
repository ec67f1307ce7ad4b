#include <fstream>
#include <sstream>

#include "esc/dsl.hpp"
#include "esc/harness.hpp"

namespace esc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << text;
}

template <class T>
T parse_or_throw(const ParseResult<T>& r) {
  if (r.ok()) return *r.value;
  std::string msg;
  for (const auto& d : r.diagnostics) msg += format_diagnostic(d) + "\n";
  if (!msg.empty()) msg.pop_back();
  throw PreconditionError(msg);
}

}  // namespace

json reward_to_json(const Reward& r) {
  json j = {{"kind", to_string(r.kind)}};
  if (r.kind == RewardKind::AssignmentDistance) {
    json expected = json::array();
    for (const auto& [iface, value] : r.reference.expected) expected.push_back({iface, value});
    j["reference"] = {{"expected", expected},
                      {"true_component", r.reference.trueComponent},
                      {"false_component", r.reference.falseComponent}};
  }
  return j;
}

Reward reward_from_json(const json& j) {
  Reward r;
  r.kind = parse_reward_kind(j.at("kind").get<std::string>());
  if (r.kind == RewardKind::AssignmentDistance) {
    const json& ref = j.at("reference");
    for (const auto& e : ref.at("expected")) {
      r.reference.expected.emplace_back(e.at(0).get<std::string>(), e.at(1).get<bool>());
    }
    r.reference.trueComponent = ref.value("true_component", r.reference.trueComponent);
    r.reference.falseComponent = ref.value("false_component", r.reference.falseComponent);
  }
  return r;
}

json meta_to_json(const ReductionMeta& m) {
  json claimed = json::object();
  auto put = [&](const char* key, const std::optional<std::int64_t>& v) {
    if (v) claimed[key] = *v;
  };
  put("l_int", m.claimed.l_int);
  put("l_comp", m.claimed.l_comp);
  put("i_ci", m.claimed.i_ci);
  put("c_pi", m.claimed.c_pi);
  put("c_ri", m.claimed.c_ri);
  put("s_comp", m.claimed.s_comp);
  put("s_depth", m.claimed.s_depth);
  json j = {{"source", m.source},
            {"claimed", claimed},
            {"table_discrepancies", m.tableDiscrepancies},
            {"calibration", m.calibration}};
  if (m.k) j["k"] = *m.k;
  if (m.twinReward) j["given_reward"] = *m.twinReward;
  if (!m.vertexOf.empty()) j["vertex_of"] = m.vertexOf;
  return j;
}

json params_to_json(const ParamVector& p) {
  json j = {{"l_int", p.l_int}, {"l_comp", p.l_comp}, {"i_ci", p.i_ci},
            {"c_pi", p.c_pi},   {"c_ri", p.c_ri},     {"flags", p.flags}};
  j["s_comp"] = p.s_comp ? json(*p.s_comp) : json(nullptr);
  j["s_depth"] = p.s_depth ? json(*p.s_depth) : json(nullptr);
  return j;
}

void write_bundle(const fs::path& dir, const ReductionArtifact& a) {
  fs::create_directories(dir);
  write_text_file(dir / "library.esl", a.libraryText);
  write_text_file(dir / "reqs.req", a.reqsText);
  json inst = {{"kind", to_string(a.kind)},
               {"base", a.base},
               {"reward", reward_to_json(a.rew)},
               {"meta", meta_to_json(a.meta)}};
  inst["bound"] = a.bound ? json(*a.bound) : json(nullptr);
  inst["given"] = a.given ? json(canonical_id(*a.given)) : json(nullptr);
  write_text_file(dir / "instance.json", inst.dump(2) + "\n");
}

Bundle read_bundle(const fs::path& dir) {
  Bundle b;
  b.libraryText = read_text_file(dir / "library.esl");
  b.reqsText = read_text_file(dir / "reqs.req");
  b.lib = parse_or_throw(parse_library(b.libraryText, (dir / "library.esl").string()));
  b.reqs = parse_or_throw(parse_requirements(b.reqsText, (dir / "reqs.req").string()));
  json inst;
  try {
    inst = json::parse(read_text_file(dir / "instance.json"));
    b.base = inst.at("base").get<std::string>();
    b.rew = reward_from_json(inst.at("reward"));
    if (inst.contains("bound") && !inst["bound"].is_null()) b.bound = inst["bound"].get<std::int64_t>();
    if (inst.contains("given") && !inst["given"].is_null()) {
      b.given = parse_system_id(inst["given"].get<std::string>());
    }
    b.meta = inst.value("meta", json::object());
  } catch (const json::exception& e) {
    throw PreconditionError((dir / "instance.json").string() + ": " + e.what());
  }
  return b;
}

}  // namespace esc
