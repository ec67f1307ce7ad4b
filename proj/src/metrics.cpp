#include "esc/metrics.hpp"

#include <algorithm>

namespace esc {

ParamVector library_params(const Library& lib) {
  ParamVector p;
  p.l_int = static_cast<std::int64_t>(lib.interfaces().size());
  p.l_comp = static_cast<std::int64_t>(lib.components().size());
  for (const auto& i : lib.interfaces()) {
    p.i_ci = std::max<std::int64_t>(p.i_ci, static_cast<std::int64_t>(lib.providers(i.name).size()));
  }
  for (const auto& c : lib.components()) {
    p.c_pi = std::max<std::int64_t>(p.c_pi, static_cast<std::int64_t>(c.provides.size()));
    p.c_ri = std::max<std::int64_t>(p.c_ri, static_cast<std::int64_t>(c.requires_.size()));
  }
  return p;
}

ParamVector system_params(const Library& lib, std::string_view base, const EnumCaps& caps) {
  ParamVector p = library_params(lib);
  const bool capped = caps.maxDepth || caps.maxComponents || caps.maxCount;
  if (!capped) {
    ValidSpaceSummary s = summarize_valid_space(lib, base);
    if (s.count == 0) {
      p.flags.push_back("no valid system");
      return p;
    }
    p.s_comp = static_cast<std::int64_t>(s.maxComponents);
    p.s_depth = static_cast<std::int64_t>(s.maxDepth);
    return p;
  }
  std::int64_t comp = 0;
  std::int64_t depth = 0;
  EnumResult r = enumerate_valid(lib, base, caps, [&](const SystemInstance& s) {
    comp = std::max<std::int64_t>(comp, static_cast<std::int64_t>(s.node_count()));
    depth = std::max<std::int64_t>(depth, static_cast<std::int64_t>(s.depth()));
    return true;
  });
  if (r.yielded == 0 && !r.capExceeded) {
    p.flags.push_back("no valid system within caps");
    return p;
  }
  p.s_comp = comp;
  p.s_depth = depth;
  if (caps.maxDepth || caps.maxComponents) p.flags.push_back("s_comp/s_depth measured within depth/size caps");
  if (r.capExceeded) p.flags.push_back("enumeration cap hit: s_comp/s_depth are lower bounds");
  return p;
}

std::vector<ClaimCheck> compare_claims(const ReductionMeta& meta, const ParamVector& measured) {
  std::vector<ClaimCheck> out;
  auto add = [&](const char* key, const std::optional<std::int64_t>& claim,
                 std::optional<std::int64_t> value) {
    if (!claim) return;
    ClaimCheck c{key, *claim, value, false};
    for (const auto& note : meta.tableDiscrepancies) {
      if (note.rfind(std::string(key) + ":", 0) == 0) c.whitelisted = true;
    }
    out.push_back(std::move(c));
  };
  add("l_int", meta.claimed.l_int, measured.l_int);
  add("l_comp", meta.claimed.l_comp, measured.l_comp);
  add("i_ci", meta.claimed.i_ci, measured.i_ci);
  add("c_pi", meta.claimed.c_pi, measured.c_pi);
  add("c_ri", meta.claimed.c_ri, measured.c_ri);
  add("s_comp", meta.claimed.s_comp, measured.s_comp);
  add("s_depth", meta.claimed.s_depth, measured.s_depth);
  return out;
}

std::vector<std::string> parameter_inequality_violations(const ParamVector& p) {
  std::vector<std::string> out;
  if (p.c_ri > p.l_int) out.push_back("C_ri <= |L_int|");
  if (p.s_depth && *p.s_depth > p.l_comp) out.push_back("S_depth <= |L_comp|");
  if (p.s_comp && p.s_depth && *p.s_depth > *p.s_comp) out.push_back("S_depth <= S_comp");
  if (p.s_comp && p.c_ri > *p.s_comp - 1) out.push_back("C_ri <= S_comp - 1");
  return out;
}

}  // namespace esc
