#include "layoutlab/layout_io.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "layoutlab/protocol.hpp"

namespace layoutlab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<OutputFormat> output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), ptr);
}

std::string write_layout(const LayoutState& state, const Graph& graph, OutputFormat format,
                         const SimParams& params) {
  if (state.size() != graph.node_count())
    throw std::invalid_argument("layout has " + std::to_string(state.size()) + " rows, graph has " +
                                std::to_string(graph.node_count()) + " nodes");

  if (format == OutputFormat::csv) {
    std::string out = "id,x,y\n";
    for (std::size_t i = 0; i < state.size(); ++i) {
      out += csv_field(graph.nodes()[i].id);
      out += ',';
      out += format_double(state.positions[i].x);
      out += ',';
      out += format_double(state.positions[i].y);
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json doc;
  auto& rows = doc["layout"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < state.size(); ++i)
    rows.push_back({{"id", graph.nodes()[i].id}, {"x", state.positions[i].x}, {"y", state.positions[i].y}});
  doc["params"] = params_to_json(params);
  return doc.dump(2) + "\n";
}

}  // namespace layoutlab
