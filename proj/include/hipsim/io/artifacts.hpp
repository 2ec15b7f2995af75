#pragma once

#include <string>
#include <vector>

namespace hipsim {

class RunConfig;

// Shortest exact decimal form of x ("%.17g" trimmed via round-trip checks);
// used everywhere a real lands in an artifact so reruns are byte-identical.
std::string format_real(double x);

// Writes content to path via a temp file + rename, so readers never observe
// a partial artifact.
void write_text_atomic(const std::string& path, const std::string& content);

// CSV table with string cells (callers format reals with format_real).
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Manifest JSON for one command run: tool version, config hash and full
// config echo, seed, produced artifacts, wall time.  The wall time lives
// only here, keeping the data artifacts reproducible byte for byte.
std::string manifest_json(const std::string& command, const RunConfig& cfg,
                          const std::vector<std::string>& artifacts, double wall_ms);

}  // namespace hipsim
