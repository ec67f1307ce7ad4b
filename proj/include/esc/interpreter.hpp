#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "esc/model.hpp"

namespace esc {

struct RunOutcome {
  enum class Kind { Output, NoOutput, BudgetExceeded, RuntimeFault };

  Kind kind = Kind::NoOutput;
  std::int64_t value = 0;  // Output only
  std::string fault;       // RuntimeFault only
  std::uint64_t steps = 0;

  static RunOutcome output(std::int64_t v, std::uint64_t steps) {
    return {Kind::Output, v, {}, steps};
  }
  bool operator==(const RunOutcome&) const = default;
};

std::string describe(const RunOutcome& o);

struct RequirementFailure {
  std::size_t row = 0;  // 0-based index into R
  std::int64_t expected = 0;
  RunOutcome outcome;
};

struct Verdict {
  bool working = true;
  std::optional<RequirementFailure> firstFailure;
  std::uint64_t maxSteps = 0;  // most steps used by any evaluated row
};

/// Per-library call-resolution tables, built once and shared by every run over `lib`.
/// The library must outlive the index.
class ProgramIndex {
 public:
  explicit ProgramIndex(const Library& lib);
  ~ProgramIndex();
  ProgramIndex(const ProgramIndex&) = delete;
  ProgramIndex& operator=(const ProgramIndex&) = delete;

  const Library& library() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

/// A system flattened for execution. Holds a reference to the index.
class WiredSystem {
 public:
  WiredSystem(const SystemInstance& s, const ProgramIndex& index);
  ~WiredSystem();
  WiredSystem(WiredSystem&&) noexcept;

  RunOutcome run(const TruthVector& input, std::uint64_t budget) const;
  Verdict verify(const RequirementSet& reqs, std::uint64_t budget) const;

  struct Node;

 private:
  const ProgramIndex* index_;
  std::vector<Node> nodes_;
};

RunOutcome evaluate(const SystemInstance& s, const Library& lib, const TruthVector& input,
                    std::uint64_t budget);
Verdict verify(const SystemInstance& s, const Library& lib, const RequirementSet& reqs,
               std::uint64_t budget);

/// Steps allowed per byte of serialized instance (library text plus requirements text).
inline constexpr std::uint64_t kDefaultStepsPerInputByte = 64;

std::uint64_t instance_size_bytes(const Library& lib, const RequirementSet& reqs);

/// budget = stepsPerByte * instance size, unless ESC_STEP_BUDGET is set in the environment.
std::uint64_t default_budget(const Library& lib, const RequirementSet& reqs,
                             std::uint64_t stepsPerByte = kDefaultStepsPerInputByte);

}  // namespace esc
