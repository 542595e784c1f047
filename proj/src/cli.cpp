#include "layoutlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "layoutlab/error.hpp"
#include "layoutlab/graph.hpp"
#include "layoutlab/session.hpp"
#include "layoutlab/simulation.hpp"

namespace layoutlab {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InputFormat detect_format(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  return ext == ".json" ? InputFormat::json : InputFormat::edgelist;
}

}  // namespace

int run(const CliOptions& options, std::ostream& out, std::ostream& err) {
  if (options.ticks < 1) {
    err << "error: --ticks must be at least 1\n";
    return exit_code::input_error;
  }

  SimParams params;
  params.engine = options.engine;
  try {
    for (const auto& assignment : options.params) {
      auto [key, value] = parse_param_assignment(assignment);
      if (auto warning = set_param(params, key, value)) err << "warning: " << *warning << "\n";
    }
  } catch (const ParamError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input_error;
  }

  Graph graph;
  try {
    const std::string text = read_file(options.input);
    const auto format = options.format.value_or(detect_format(options.input));
    graph = format == InputFormat::json ? parse_json_graph(text) : parse_edgelist(text);
  } catch (const ParseError& e) {
    err << "error: " << options.input << ": " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const ValidationError& e) {
    err << "error: " << options.input << ": " << e.what() << "\n";
    return exit_code::input_error;
  }
  if (auto violations = validate(graph); !violations.empty()) {
    for (const auto& v : violations) err << "error: " << options.input << ": " << v << "\n";
    return exit_code::input_error;
  }

  LayoutState state;
  try {
    if (options.headless) {
      auto result = run_headless(graph, params, options.seed, options.ticks);
      state = std::move(result.state);
      params = result.params;
    } else {
      SessionConfig config;
      config.port = options.port;
      config.open_browser = !options.no_open;
      config.tick_rate = options.tick_rate;
      config.snapshot_rate = options.snapshot_rate;
      if (options.idle_timeout) {
        config.idle_timeout = std::chrono::milliseconds(static_cast<long>(*options.idle_timeout * 1000.0));
        config.headless_ticks = options.ticks;
      }
      config.log = [&err](std::string_view line) { err << line << "\n"; };
      auto result = run_session(graph, params, options.seed, config,
                                [&err](const std::string& url) { err << "layout session at " << url << "\n"; });
      state = std::move(result.state);
      params = result.params;
    }
  } catch (const SessionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::session_error;
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::session_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input_error;
  }

  if (options.pack_margin) {
    if (*options.pack_margin < 0) {
      err << "error: --pack-components margin must be non-negative\n";
      return exit_code::input_error;
    }
    state = pack_components(graph, std::move(state), *options.pack_margin);
  }

  const std::string text = write_layout(state, graph, options.out_format, params);
  if (!options.out) {
    out << text;
    out.flush();
    return out ? exit_code::ok : exit_code::write_error;
  }
  std::ofstream file(*options.out, std::ios::binary);
  if (file) file << text;
  if (!file) {
    err << "error: cannot write '" << *options.out << "'\n";
    return exit_code::write_error;
  }
  return exit_code::ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions options;
  CLI::App app{"Force-directed graph layout with a live browser session", "layoutlab"};

  std::string format, engine = "annealed", out_format = "csv";
  app.add_option("input", options.input, "Graph file (edge list or JSON)")->required();
  app.add_option("--format", format, "Input format; default from extension")
      ->check(CLI::IsMember({"edgelist", "json"}));
  app.add_option("--engine", engine, "Simulation engine")->check(CLI::IsMember({"annealed", "continuous"}));
  app.add_option("--out", options.out, "Output path; default stdout");
  app.add_option("--out-format", out_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--headless", options.headless, "Run to convergence without a browser session");
  app.add_option("--ticks", options.ticks, "Maximum ticks (headless, or idle fallback)");
  app.add_option("--seed", options.seed, "Seed for the coincident-point jiggle");
  app.add_option("--port", options.port, "Port to listen on; 0 picks a free one");
  app.add_flag("--no-open", options.no_open, "Do not launch a browser");
  app.add_option("--pack-components", options.pack_margin, "Pack components with this margin");
  app.add_option("--param", options.params, "Override a parameter, key=value (repeatable)");
  app.add_option("--idle-timeout", options.idle_timeout,
                 "Seconds to wait for a client before finishing headless");
  app.add_option("--tick-rate", options.tick_rate, "Target ticks per second");
  app.add_option("--snapshot-rate", options.snapshot_rate, "Snapshots per second");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_code::ok : exit_code::input_error;
  }

  if (!format.empty()) options.format = format == "json" ? InputFormat::json : InputFormat::edgelist;
  options.engine = *engine_from_string(engine);
  options.out_format = *output_format_from_string(out_format);
  return run(options, out, err);
}

}  // namespace layoutlab
