#include "hipsim/io/artifacts.hpp"

#include "hipsim/error.hpp"
#include "hipsim/io/config.hpp"
#include "hipsim/version.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace hipsim {

std::string format_real(double x)
{
    // Try increasing precision until the decimal round-trips exactly.
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content)
{
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write artifact: " + tmp.string());
        out << content;
        if (!out.flush()) throw Error("failed writing artifact: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows)
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw Error("csv_table: row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string manifest_json(const std::string& command, const RunConfig& cfg,
                          const std::vector<std::string>& artifacts, double wall_ms)
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["version"] = kVersion;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash()));
    j["config_hash"] = hash;
    j["seed"] = cfg.get_u64("seed", 0);
    nlohmann::ordered_json jc = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.entries()) jc[k] = v;
    j["config"] = jc;
    j["artifacts"] = artifacts;
    j["wall_time_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

}  // namespace hipsim
