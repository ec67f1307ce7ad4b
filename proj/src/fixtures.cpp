#include "esc/fixtures.hpp"

#include "esc/dsl.hpp"

namespace esc {

namespace detail {
extern const std::string_view kFiguresLibraryText;
extern const std::string_view kFiguresRequirementsText;
}  // namespace detail

std::string_view figures_library_text() { return detail::kFiguresLibraryText; }
std::string_view figures_requirements_text() { return detail::kFiguresRequirementsText; }

CreateInstance figures_instance() {
  CreateInstance inst;
  inst.lib = parse_library_or_throw(figures_library_text(), "builtin:figures.esl");
  inst.reqs = parse_requirements_or_throw(figures_requirements_text(), "builtin:figures.req");
  inst.base = "Base";
  inst.rew = Reward::num_comp();
  return inst;
}

}  // namespace esc
