#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esc/enumeration.hpp"
#include "esc/model.hpp"
#include "esc/reductions.hpp"

namespace esc {

struct ParamVector {
  std::int64_t l_int = 0;
  std::int64_t l_comp = 0;
  std::int64_t i_ci = 0;
  std::int64_t c_pi = 0;
  std::int64_t c_ri = 0;
  std::optional<std::int64_t> s_comp;
  std::optional<std::int64_t> s_depth;
  std::vector<std::string> flags;
  bool operator==(const ParamVector&) const = default;
};

/// |L_int|, |L_comp|, I_ci, C_pi and C_ri by direct counting.
ParamVector library_params(const Library& lib);

/// Library parameters plus S_comp and S_depth over all valid systems rooted at `base`.
/// Without caps the maxima come from the memoized tree count and are exact. With caps the
/// valid systems are enumerated; if the enumeration stops at maxCount the values are lower
/// bounds and a flag says so.
ParamVector system_params(const Library& lib, std::string_view base, const EnumCaps& caps = {});

struct ClaimCheck {
  std::string key;
  std::int64_t claimed = 0;
  std::optional<std::int64_t> measured;
  bool whitelisted = false;  // a known table discrepancy
  bool agree() const { return measured && *measured == claimed; }
};

/// One entry per claimed parameter.
std::vector<ClaimCheck> compare_claims(const ReductionMeta& meta, const ParamVector& measured);

/// The inequalities S_depth <= S_comp, C_ri <= S_comp - 1, S_depth <= |L_comp| and
/// C_ri <= |L_int|; returns the ones that fail (empty when S_comp/S_depth are unknown and the
/// rest hold).
std::vector<std::string> parameter_inequality_violations(const ParamVector& p);

}  // namespace esc
