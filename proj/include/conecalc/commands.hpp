#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conecalc/sampler.hpp"
#include "conecalc/scenario.hpp"

namespace conecalc {

struct RunOptions {
  std::optional<unsigned> d;
  std::optional<int> order;
  std::optional<std::size_t> samples;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> window;
  std::optional<unsigned> res;
};

struct Check {
  std::string name;
  bool passed = false;
  Json details = Json::object();
};

class Report {
 public:
  Report(std::string command, std::string scenario, std::string digest, std::uint64_t seed);

  void add(std::string name, bool passed, Json details = Json::object());
  void set(const std::string& key, Json value) { extra_[key] = std::move(value); }
  bool passed() const;
  const std::vector<Check>& checks() const { return checks_; }
  Json to_json() const;

 private:
  std::string command_, scenario_, digest_;
  std::uint64_t seed_;
  std::vector<Check> checks_;
  Json extra_ = Json::object();
};

const std::vector<std::string>& command_names();

// Runs one command. Math failures become failed checks; InputError
// propagates. `svg` receives the figure for `plot`.
Report run_command(const std::string& command, const Scenario& scenario, const RunOptions& options,
                   std::string* svg = nullptr);

}  // namespace conecalc
