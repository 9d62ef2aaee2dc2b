#pragma once

#include <string>

#include <json.hpp>

#include "dnls/profiles.hpp"
#include "dnls/types.hpp"

namespace dnls::harness {

using json = nlohmann::json;

json load_config(const std::string& path);
// "a.b.c=VALUE"; VALUE is parsed as JSON when possible, else kept as a string.
void apply_override(json& cfg, const std::string& kv);

TrainSpec spec_from_config(const json& cfg);
GridPtr grid_from_config(const json& cfg);
// Full resolved config echoed into every report, including derived quantities.
json resolved_config(const json& cfg);

// Returns the process exit code (0 success; see README for the others).
int run_command(const std::string& command, const json& cfg, const std::string& outdir);

// Maps a thrown error to the documented exit code and prints the message.
int run_command_guarded(const std::string& command, const json& cfg, const std::string& outdir);

}  // namespace dnls::harness
