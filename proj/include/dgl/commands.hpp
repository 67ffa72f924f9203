#pragma once

#include "dgl/objectfile.hpp"
#include "dgl/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dgl {

/// Explicit flags; each overrides the same key in an operation, which overrides the command default.
struct RunOptions {
  std::optional<int> cap, weight, sym, levels, depth;
  std::uint64_t seed = 0;
  bool timing = false;
};

const std::vector<std::string>& command_names();

/// Runs one operation ({"op": name, ...}). Validation errors become a
/// ValidationFailure record; anything else propagates.
Record run_operation(const ObjectFile& f, const nlohmann::ordered_json& op, const RunOptions& o);

/// "run" executes every operation in the file; any other command runs the
/// file's operations of that name, or `fallback` when there are none.
Report run_command(const ObjectFile& f, const std::string& command, const nlohmann::ordered_json& fallback,
                   const RunOptions& o, const std::string& source = "");

}  // namespace dgl
