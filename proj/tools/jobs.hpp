#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace iosc::cli {

using json = nlohmann::ordered_json;

/// Resolves the "ideal" member of a config in place: reads files, parses
/// inline JSON, and rewrites generators in canonical form. After this the
/// config is self-contained and can be re-run as is.
void resolve_ideal(json& config);

/// Runs one job. The config carries "command" (e.g. "bounds sigma0"),
/// "ideal" when needed, and "params". Returns the numerical payload.
/// With fault injection on, oracle comparisons are perturbed so that the
/// disagreement path is exercised.
json run_job(const json& config, bool fault_inject = false);

/// "key,value" lines of the flattened payload.
std::string to_csv(const json& payload);

}  // namespace iosc::cli
