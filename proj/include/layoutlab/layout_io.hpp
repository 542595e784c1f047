#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "layoutlab/graph.hpp"
#include "layoutlab/params.hpp"
#include "layoutlab/simulation.hpp"

namespace layoutlab {

enum class OutputFormat { csv, json };

std::optional<OutputFormat> output_format_from_string(std::string_view name);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// csv: `id,x,y` header then one row per node in graph order.
/// json: `{"layout":[{"id","x","y"}...],"params":{...}}`.
std::string write_layout(const LayoutState& state, const Graph& graph, OutputFormat format,
                         const SimParams& params = {});

}  // namespace layoutlab
