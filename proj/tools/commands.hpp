#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace posegraph::cli {

/// Effective configuration of one invocation after flags, config file and
/// defaults have been merged.
struct RunConfig {
  std::string command;
  std::string skeleton;
  std::string annotations;
  std::string lengths;
  std::string scheme = "local";
  std::size_t radius = 3;  ///< 0 selects the global scope.
  std::string mode = "raw";
  std::optional<double> fallback;
  std::string out;
  std::string layout;
  std::string table;
  std::string samples;
  bool render = false;

  /// Stored under "meta.config" of every output document.
  nlohmann::json to_json() const;
};

int cmd_ingest(const RunConfig& config, std::ostream& log);
int cmd_weights(const RunConfig& config, std::ostream& log);
int cmd_compare(const RunConfig& config, std::ostream& log);
int cmd_render(const RunConfig& config, std::ostream& log);
int cmd_loss_demo(const RunConfig& config, std::ostream& log);

/// Parses argv and dispatches. Diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace posegraph::cli
