#include "hipsim/io/config.hpp"

#include "hipsim/error.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hipsim {

namespace {

constexpr std::array<KeyDoc, 31> kKeys{{
    {"dimension", "ambient dimension d (integer >= 2)"},
    {"gamma", "hyperplane intensity per unit offset (1/length)"},
    {"directions", "\"isotropic\" or atom list \"x,y[,z]:weight;...\" (unitless)"},
    {"seed", "base RNG seed (unsigned integer)"},
    {"output_dir", "artifact directory (path; default $HIPSIM_OUTPUT_DIR or .)"},
    {"jobs", "worker threads for replications (count; 0 = all cores)"},
    {"radius", "sampling ball radius for simulate/points (length)"},
    {"m", "intersection order m in [1, d] (integer; default d)"},
    {"body", "test body kind: ball or box"},
    {"body_centre", "ball centre coordinates \"x,y[,z]\" (length)"},
    {"body_radius", "ball radius (length)"},
    {"body_lo", "box lower corner \"x,y[,z]\" (length)"},
    {"body_hi", "box upper corner \"x,y[,z]\" (length)"},
    {"incident_tol", "point-on-hyperplane slack, relative to coordinate scale (ratio)"},
    {"gp_tol", "general-position degeneracy threshold (ratio)"},
    {"max_radius", "reconstruction search budget in d(.,K) units (length; 0 = 50x body size)"},
    {"polytope_count", "certified enclosures required to stop (count; 0 = 2d-1)"},
    {"early_exit", "stop on one point-free certified enclosure (0/1)"},
    {"radii", "window growth factors, comma separated (length)"},
    {"reps", "Monte Carlo replications (count)"},
    {"bins", "histogram bin count (count)"},
    {"window_radius", "pair-correlation analysis radius (length)"},
    {"max_distance", "largest pair distance binned (length)"},
    {"fit_lo", "decay-fit lower distance bound (length)"},
    {"fit_hi", "decay-fit upper distance bound (length)"},
    {"tail_lo", "flatness-check lower distance bound (length)"},
    {"tail_hi", "flatness-check upper distance bound (length)"},
    {"thin_p", "thinning retention probability in (0,1]"},
    {"control", "also run the homogeneous Poisson control (0/1)"},
    {"intensity", "control point intensity (points/volume; 0 = match the main run)"},
    {"clt_r", "window growth factor for the normality diagnostic (length)"},
}};

bool known_key(const std::string& key)
{
    return std::any_of(kKeys.begin(), kKeys.end(),
                       [&](const KeyDoc& k) { return key == k.key; });
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& raw)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigInvalid("config key '" + key + "': expected a real number, got '" + raw + "'");
    }
}

std::vector<double> split_reals(const std::string& key, const std::string& raw, char sep)
{
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (item.empty()) throw ConfigInvalid("config key '" + key + "': empty list entry");
        out.push_back(parse_real(key, item));
    }
    if (out.empty()) throw ConfigInvalid("config key '" + key + "': empty list");
    return out;
}

}  // namespace

std::span<const KeyDoc> documented_keys()
{
    return kKeys;
}

RunConfig RunConfig::parse_text(const std::string& text)
{
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigInvalid("config line " + std::to_string(lineno) + ": empty key");
        if (!known_key(key))
            throw ConfigInvalid("config line " + std::to_string(lineno) + ": unknown key '" + key +
                                "' (see --help for the accepted keys)");
        if (cfg.entries_.count(key))
            throw ConfigInvalid("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                                "'");
        cfg.entries_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

void RunConfig::set(const std::string& key, const std::string& value)
{
    if (!known_key(key))
        throw ConfigInvalid("unknown config key '" + key + "' (see --help for the accepted keys)");
    entries_[key] = trim(value);
}

bool RunConfig::has(const std::string& key) const
{
    return entries_.count(key) > 0;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const
{
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double RunConfig::get_real(const std::string& key, double fallback) const
{
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_real(key, it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) const
{
    const double v = get_real(key, static_cast<double>(fallback));
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigInvalid("config key '" + key + "': expected an integer");
    return i;
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t fallback) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ConfigInvalid("config key '" + key + "': expected an unsigned integer, got '" +
                            it->second + "'");
    }
}

bool RunConfig::get_flag(const std::string& key, bool fallback) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "1" || it->second == "true" || it->second == "on") return true;
    if (it->second == "0" || it->second == "false" || it->second == "off") return false;
    throw ConfigInvalid("config key '" + key + "': expected 0/1, got '" + it->second + "'");
}

std::vector<double> RunConfig::get_reals(const std::string& key, std::vector<double> fallback) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return split_reals(key, it->second, ',');
}

std::string RunConfig::serialize() const
{
    std::string out;
    for (const auto& [key, value] : entries_) {  // std::map iterates sorted
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

std::uint64_t RunConfig::hash() const
{
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : serialize()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

DirectionalModel model_from_config(const RunConfig& cfg)
{
    const int d = cfg.get_int("dimension", 2);
    if (d < 2) throw ConfigInvalid("config key 'dimension': must be at least 2");
    const double gamma = cfg.get_real("gamma", 1.0);
    const std::string dirs = cfg.get_string("directions", "isotropic");
    if (dirs == "isotropic") return DirectionalModel::isotropic(d, gamma);

    std::vector<DirectionalAtom> atoms;
    std::stringstream ss(dirs);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        const std::string coords = colon == std::string::npos ? item : item.substr(0, colon);
        const double weight =
            colon == std::string::npos ? 1.0 : parse_real("directions", trim(item.substr(colon + 1)));
        const auto vals = split_reals("directions", coords, ',');
        if (static_cast<int>(vals.size()) != d)
            throw ConfigInvalid("config key 'directions': atom needs " + std::to_string(d) +
                                " coordinates");
        Vec u(d);
        for (int i = 0; i < d; ++i) u[i] = vals[i];
        atoms.push_back(DirectionalAtom{u, weight});
    }
    auto model = DirectionalModel::atoms(d, gamma, atoms);
    if (!model.spans_space())
        throw ConfigInvalid("config key 'directions': atom directions must span R^d");
    return model;
}

ConvexBody body_from_config(const RunConfig& cfg)
{
    const int d = cfg.get_int("dimension", 2);
    const std::string kind = cfg.get_string("body", "ball");
    if (kind == "ball") {
        Vec c = Vec::Zero(d);
        if (cfg.has("body_centre")) {
            const auto vals = cfg.get_reals("body_centre", {});
            if (static_cast<int>(vals.size()) != d)
                throw ConfigInvalid("config key 'body_centre': needs " + std::to_string(d) +
                                    " coordinates");
            for (int i = 0; i < d; ++i) c[i] = vals[i];
        }
        const double r = cfg.get_real("body_radius", 1.0);
        if (!(r > 0.0)) throw ConfigInvalid("config key 'body_radius': must be positive");
        return ConvexBody::ball(c, r);
    }
    if (kind == "box") {
        Vec lo(d), hi(d);
        std::vector<double> dlo(d, -1.0), dhi(d, 1.0);
        const auto vlo = cfg.get_reals("body_lo", dlo);
        const auto vhi = cfg.get_reals("body_hi", dhi);
        if (static_cast<int>(vlo.size()) != d || static_cast<int>(vhi.size()) != d)
            throw ConfigInvalid("config keys 'body_lo'/'body_hi': need " + std::to_string(d) +
                                " coordinates");
        for (int i = 0; i < d; ++i) {
            lo[i] = vlo[i];
            hi[i] = vhi[i];
        }
        return ConvexBody::box(lo, hi);
    }
    throw ConfigInvalid("config key 'body': expected ball or box, got '" + kind + "'");
}

ReconstructionParams recon_params_from_config(const RunConfig& cfg)
{
    ReconstructionParams p;
    p.incident_tol = cfg.get_real("incident_tol", p.incident_tol);
    p.gp_tol = cfg.get_real("gp_tol", p.gp_tol);
    p.max_radius = cfg.get_real("max_radius", p.max_radius);
    p.polytope_count = cfg.get_int("polytope_count", p.polytope_count);
    p.early_exit = cfg.get_flag("early_exit", p.early_exit);
    if (!(p.incident_tol > 0.0) || !(p.gp_tol > 0.0))
        throw ConfigInvalid("config keys 'incident_tol'/'gp_tol': must be positive");
    if (p.max_radius < 0.0) throw ConfigInvalid("config key 'max_radius': must be nonnegative");
    if (p.polytope_count < 0) throw ConfigInvalid("config key 'polytope_count': must be nonnegative");
    return p;
}

}  // namespace hipsim
