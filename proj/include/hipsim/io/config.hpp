#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/process/model.hpp"
#include "hipsim/reconstruct/params.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hipsim {

struct KeyDoc {
    const char* key;
    const char* doc;  // meaning and units
};

// Every accepted config key; parsing rejects anything else.
std::span<const KeyDoc> documented_keys();

// Plain-text run configuration: `key = value` lines, # comments, flag
// overrides merged on top.  Stored as raw strings so serialize/parse is a
// lossless round trip; typed accessors validate on use and name the
// offending key in errors.
class RunConfig {
public:
    static RunConfig parse_text(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_flag(const std::string& key, bool fallback) const;
    std::vector<double> get_reals(const std::string& key, std::vector<double> fallback) const;

    // Sorted `key = value` lines; parse_text(serialize()) reproduces the
    // entries exactly.
    std::string serialize() const;
    // FNV-1a over the serialized form.
    std::uint64_t hash() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

DirectionalModel model_from_config(const RunConfig& cfg);
ConvexBody body_from_config(const RunConfig& cfg);
ReconstructionParams recon_params_from_config(const RunConfig& cfg);

}  // namespace hipsim
