#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "layoutlab/layout_io.hpp"
#include "layoutlab/params.hpp"

namespace layoutlab {

enum class InputFormat { edgelist, json };

struct CliOptions {
  std::string input;
  std::optional<InputFormat> format;  // unset: from extension
  Engine engine = Engine::annealed;
  std::optional<std::string> out;  // unset: stdout
  OutputFormat out_format = OutputFormat::csv;
  bool headless = false;
  long ticks = 300;
  std::uint64_t seed = 42;
  std::uint16_t port = 0;
  bool no_open = false;
  std::optional<double> pack_margin;
  std::vector<std::string> params;  // key=value
  std::optional<double> idle_timeout;  // seconds
  double tick_rate = 60.0;
  double snapshot_rate = 30.0;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 2;
inline constexpr int session_error = 3;
inline constexpr int write_error = 4;
}  // namespace exit_code

/// Parses argv (argv[0] is the program name) and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace layoutlab
