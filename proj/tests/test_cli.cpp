#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "layoutlab/cli.hpp"
#include "layoutlab/session.hpp"
#include "support.hpp"

using namespace layoutlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "layoutlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string karate() { return std::string(LAYOUTLAB_TEST_DATA) + "/karate.edgelist"; }

fs::path scratch(const std::string& name, const std::string& contents = {}) {
  auto dir = fs::temp_directory_path() / "layoutlab_cli_test";
  fs::create_directories(dir);
  auto path = dir / name;
  if (!contents.empty()) std::ofstream(path) << contents;
  return path;
}

std::size_t count_lines(const std::string& s) { return std::size_t(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("karate headless is complete and repeatable") {
    auto a = cli({karate(), "--headless", "--ticks", "300", "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("id,x,y\n", 0) == 0);
    CHECK(count_lines(a.out) == 35);
    auto b = cli({karate(), "--headless", "--ticks", "300", "--seed", "7"});
    CHECK(a.out == b.out);
  }

  TEST_CASE("writes to a file") {
    auto path = scratch("karate.csv");
    fs::remove(path);
    auto r = cli({karate(), "--headless", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == cli({karate(), "--headless"}).out);
  }

  TEST_CASE("decay override converges in ten ticks") {
    auto json_graph = scratch("g.json", R"({"nodes":[{"id":"a"},{"id":"b"},{"id":"c"}],
      "edges":[{"source":"a","target":"b"},{"source":"b","target":"c"}]})");
    auto r = cli({json_graph.string(), "--headless", "--param", "alpha_decay=0.5", "--ticks", "1000",
                  "--out-format", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["layout"].size() == 3);
    CHECK(doc["params"]["alpha"].get<double>() == std::pow(0.5, 10));
  }

  TEST_CASE("format flag overrides the extension") {
    auto odd = scratch("edges.json", "a b\nb c\n");
    CHECK(cli({odd.string(), "--headless"}).code == exit_code::input_error);
    CHECK(cli({odd.string(), "--headless", "--format", "edgelist"}).code == 0);
  }

  TEST_CASE("input errors exit 2") {
    auto missing = cli({"/no/such/graph.edgelist", "--headless"});
    CHECK(missing.code == exit_code::input_error);
    CHECK(missing.err.find("/no/such/graph.edgelist") != std::string::npos);

    auto bad = scratch("bad.edgelist", "a b\nc\n");
    auto parse = cli({bad.string(), "--headless"});
    CHECK(parse.code == exit_code::input_error);
    CHECK(parse.err.find("line 2") != std::string::npos);

    auto invalid = scratch("bad.json", R"({"nodes":[{"id":"x","radius":0}],"edges":[]})");
    CHECK(cli({invalid.string(), "--headless"}).code == exit_code::input_error);

    CHECK(cli({karate(), "--headless", "--param", "warp=1"}).code == exit_code::input_error);
    CHECK(cli({karate(), "--headless", "--param", "alpha=3"}).code == exit_code::input_error);
    CHECK(cli({karate(), "--headless", "--engine", "turbo"}).code == exit_code::input_error);
    CHECK(cli({karate(), "--headless", "--ticks", "0"}).code == exit_code::input_error);
    CHECK(cli({karate(), "--headless", "--pack-components", "-1"}).code == exit_code::input_error);
    CHECK(cli({}).code == exit_code::input_error);
  }

  TEST_CASE("help exits cleanly") {
    auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--headless") != std::string::npos);
  }

  TEST_CASE("write failure exits 4") {
    CHECK(cli({karate(), "--headless", "--out", "/no/such/dir/out.csv"}).code == exit_code::write_error);
  }

  TEST_CASE("theta is clamped with a warning") {
    auto r = cli({karate(), "--headless", "--param", "theta=3"});
    CHECK(r.code == 0);
    CHECK(r.err.find("clamped") != std::string::npos);
  }

  TEST_CASE("continuous engine") {
    auto r = cli({karate(), "--headless", "--engine", "continuous", "--ticks", "500"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 35);
    CHECK(r.out.find("nan") == std::string::npos);
  }

  TEST_CASE("pack components") {
    auto two = scratch("two.edgelist", "a b\nb c\nc a\nx y\ny z\nz x\n");
    auto r = cli({two.string(), "--headless", "--pack-components", "20"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 7);
  }

  TEST_CASE("interactive mode falls back to headless when nobody connects") {
    auto r = cli({karate(), "--no-open", "--idle-timeout", "0.2", "--seed", "7"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("http://127.0.0.1:") != std::string::npos);
    CHECK(r.out == cli({karate(), "--headless", "--seed", "7"}).out);
  }

  TEST_CASE("busy port exits 3") {
    Graph g = support::cycle(3);
    SessionServer holder(g, SimParams{}, 1, SessionConfig{});
    auto r = cli({karate(), "--no-open", "--port", std::to_string(holder.port())});
    CHECK(r.code == exit_code::session_error);
    CHECK(r.err.find("cannot listen") != std::string::npos);
  }
}
