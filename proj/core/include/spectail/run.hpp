#pragma once

#include <string>
#include <vector>

#include "spectail/config.hpp"

namespace spectail {

struct RunResult {
  std::vector<std::string> files;  // data file(s), then the manifest
  double wall_time_s = 0.0;
};

// Dispatches the config to its experiment and writes the output file plus a
// run manifest (<data>.manifest.json). Files are written to a temporary name
// and renamed into place, so failures leave no partial output. Identical
// configs produce byte-identical data files; only the manifest's wall time
// differs. Throws on solver or I/O failure.
RunResult run(const RunConfig& config);

}  // namespace spectail
