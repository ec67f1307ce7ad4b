#pragma once

#include <string_view>

#include "esc/model.hpp"

namespace esc {

/// The five-interface, ten-component worked example and its five requirements.
std::string_view figures_library_text();
std::string_view figures_requirements_text();

/// Parsed worked example with base component `Base` and reward NumComp.
CreateInstance figures_instance();

/// Name accepted by the CLI in place of a library/requirements path.
inline constexpr std::string_view kBuiltinFigures = "builtin:figures";

}  // namespace esc
