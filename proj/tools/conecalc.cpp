#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "conecalc/commands.hpp"
#include "conecalc/errors.hpp"

namespace fs = std::filesystem;
using namespace conecalc;

namespace {

// A path on disk, or the name of a built-in scenario.
Scenario resolve(const std::string& arg) {
  if (fs::exists(arg)) return load_scenario(arg);
  const auto& builtin = builtin_scenarios();
  auto it = builtin.find(fs::path(arg).stem().string());
  if (it == builtin.end()) throw InputError("no such scenario file: " + arg);
  return parse_scenario(Json::parse(it->second));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int write_examples(const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& [name, body] : builtin_scenarios()) {
    write_file((fs::path(dir) / (name + ".json")).string(), body);
    std::cout << (fs::path(dir) / (name + ".json")).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conecalc: exact Duistermaat-Heckman measures as signed cone sums"};
  std::string command, scenario_path, out;
  RunOptions opts;
  std::vector<std::string> choices = command_names();
  choices.push_back("examples");
  app.add_option("command", command, "heckman | bg | cc | moments | lattice-count | verify | plot | examples")
      ->required()
      ->check(CLI::IsMember(choices));
  app.add_option("scenario", scenario_path, "scenario JSON file or built-in scenario name");
  app.add_option("--d", opts.d, "dilation for lattice-count");
  app.add_option("--order", opts.order, "Laurent truncation order");
  app.add_option("--samples", opts.samples, "number of generic sample points");
  app.add_option("--seed", opts.seed, "sampler seed (CONECALC_SEED overrides)");
  app.add_option("--window", opts.window, "plot window a:b or a:b,c:d");
  app.add_option("--res", opts.res, "plot resolution");
  app.add_option("--out", out, "report path; SVG path for plot; directory for examples");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("CONECALC_SEED")) {
      try {
        opts.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw InputError(std::string("CONECALC_SEED is not an integer: ") + env);
      }
    }
    if (command == "examples") return write_examples(out.empty() ? "examples" : out);
    if (scenario_path.empty()) throw InputError(command + " needs a scenario file");

    Scenario scenario = resolve(scenario_path);
    std::string svg;
    Report report = run_command(command, scenario, opts, &svg);
    const std::string text = report.to_json().dump(2) + "\n";
    if (command == "plot") {
      write_file(out.empty() ? scenario.name + ".svg" : out, svg);
      std::cout << text;
    } else if (!out.empty()) {
      write_file(out, text);
    } else {
      std::cout << text;
    }
    return report.passed() ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
