#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "harmonica/interval.hpp"

namespace harmonica {

// Merged run configuration. Values come from a config file and/or command
// line flags; flags override file entries, and the HARMONICA_SEED
// environment variable supplies the seed when neither source sets one.
// Unset optionals fall back to per-command defaults at dispatch time.
struct RunConfig {
  std::string command;

  std::optional<std::string> f;
  std::optional<std::string> f1;
  std::optional<std::string> f2;
  std::optional<Interval> domain;
  std::optional<Interval> fn_domain;

  std::optional<double> m;
  std::optional<double> alpha;
  std::optional<double> tol;
  std::optional<int> samples;
  std::optional<int> grid_t;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;

  // ops command operands
  std::optional<std::string> op;
  std::optional<Interval> a;
  std::optional<Interval> b;
  std::optional<double> c;

  std::string output = "json";
  std::optional<std::string> out_path;
};

// Parses a flat key=value config file ('#' starts a comment, blank lines
// allowed, later duplicates win). Unknown keys, malformed values and
// unreadable files raise ConfigError carrying the 1-based line number.
RunConfig load_config(const std::string& path);

// Full CLI entry point: args excludes the program name. Writes the report
// to `out` (or the configured output file) and diagnostics to `err`.
// Returns the process exit code: 0 success/holds, 1 falsified/violated,
// 2 usage or config errors, 3 numeric errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace harmonica
