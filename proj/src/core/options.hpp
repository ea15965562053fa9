#pragma once

#include "vega.hpp"

namespace gridplot {

/// JSON option-object decoding used by the C API and the CLI.
LayoutConfig layout_config_from_json(const json& j);
GraphConfig graph_config_from_json(const json& j);
PlotOptions plot_options_from_json(const json& j);

} // namespace gridplot
