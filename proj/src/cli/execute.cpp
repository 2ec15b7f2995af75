#include "hipsim/cli/execute.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/measures.hpp"
#include "hipsim/intersection/annulus.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/io/artifacts.hpp"
#include "hipsim/process/world.hpp"
#include "hipsim/reconstruct/run.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/clt.hpp"
#include "hipsim/stats/pair_correlation.hpp"
#include "hipsim/stats/randomize.hpp"
#include "hipsim/stats/scaling.hpp"
#include "hipsim/stats/tail.hpp"
#include "hipsim/version.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace hipsim {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommandContext {
    const RunConfig& cfg;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::vector<std::string> artifacts;

    std::string emit(const std::string& name, const std::string& content)
    {
        const std::string path = (out_dir / name).string();
        write_text_atomic(path, content);
        artifacts.push_back(path);
        return path;
    }
};

std::string resolve_out_dir(const RunConfig& cfg)
{
    if (cfg.has("output_dir")) return cfg.get_string("output_dir", ".");
    if (const char* env = std::getenv("HIPSIM_OUTPUT_DIR")) return env;
    return ".";
}

ordered_json json_hyperplane(const Hyperplane& h)
{
    ordered_json row = ordered_json::array();
    for (int i = 0; i < h.dim(); ++i) row.push_back(h.u[i]);
    row.push_back(h.s);
    return row;
}

ordered_json json_point(const Vec& x)
{
    ordered_json row = ordered_json::array();
    for (int i = 0; i < x.size(); ++i) row.push_back(x[i]);
    return row;
}

// --------------------------------------------------------------- simulate

ExecuteResult run_simulate(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const double radius = ctx.cfg.get_real("radius", 10.0);
    if (!(radius > 0.0)) throw ConfigInvalid("config key 'radius': must be positive");

    WorldOracle world = sample_hitting(model, radius, ctx.seed);
    const auto& hs = world.hyperplanes();
    const auto& birth = world.birth_annulus();

    std::vector<std::string> header;
    for (int i = 0; i < model.dim(); ++i) header.push_back("u" + std::to_string(i));
    header.push_back("s");
    header.push_back("annulus");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        std::vector<std::string> row;
        for (int c = 0; c < model.dim(); ++c) row.push_back(format_real(hs[i].u[c]));
        row.push_back(format_real(hs[i].s));
        row.push_back(std::to_string(birth[i]));
        rows.push_back(std::move(row));
    }
    ctx.emit("hyperplanes.csv", csv_table(header, rows));

    ExecuteResult res;
    res.message = std::to_string(hs.size()) + " hyperplanes hitting B(0, " + format_real(radius) + ")";
    return res;
}

// ------------------------------------------------------------------ points

ExecuteResult run_points(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const double radius = ctx.cfg.get_real("radius", 10.0);
    if (!(radius > 0.0)) throw ConfigInvalid("config key 'radius': must be positive");

    WorldOracle world = sample_hitting(model, radius, ctx.seed);
    const ConvexBody window = ConvexBody::ball(Vec::Zero(model.dim()), radius);
    const auto pts = intersection_points(world.hyperplanes(), window);

    std::vector<std::string> header;
    for (int i = 0; i < model.dim(); ++i) header.push_back("x" + std::to_string(i));
    header.push_back("parents");
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : pts.points) {
        std::vector<std::string> row;
        for (int c = 0; c < model.dim(); ++c) row.push_back(format_real(p.x[c]));
        std::string parents;
        for (std::size_t j = 0; j < p.parents.size(); ++j) {
            if (j) parents += ';';
            parents += std::to_string(p.parents[j]);
        }
        row.push_back(parents);
        rows.push_back(std::move(row));
    }
    ctx.emit("points.csv", csv_table(header, rows));

    ExecuteResult res;
    res.message = std::to_string(pts.points.size()) + " intersection points (" +
                  std::to_string(pts.near_singular_skipped) + " near-singular tuples skipped)";
    return res;
}

// ------------------------------------------------------------- reconstruct

ExecuteResult run_reconstruct(CommandContext& ctx, bool validate)
{
    const auto model = model_from_config(ctx.cfg);
    const ConvexBody body = body_from_config(ctx.cfg);
    if (body.dim() != model.dim())
        throw ConfigInvalid("body dimension does not match 'dimension'");
    const auto params = recon_params_from_config(ctx.cfg);

    WorldOracle world(model, ctx.seed);
    OraclePointSource src(world, body, params.gp_tol);
    const auto result = run_reconstruction(src, body, params);

    ordered_json j;
    j["terminated"] = result.terminated;
    if (result.terminated) {
        j["t"] = result.t;
        j["stopping_radius"] = result.stopping_radius;
    } else {
        j["t"] = nullptr;
        j["stopping_radius"] = nullptr;
    }
    j["stages"] = result.stages;
    j["points_consumed"] = result.points_consumed;
    j["empty_certificate"] = result.empty_certificate;
    ordered_json chi = ordered_json::array();
    for (const auto& h : result.chi) chi.push_back(json_hyperplane(h));
    j["chi"] = chi;
    ordered_json trace = ordered_json::array();
    for (const auto& st : result.trace) {
        trace.push_back(ordered_json{{"t", st.t}, {"observed", st.observed}, {"xi", st.xi_size}});
    }
    j["trace"] = trace;
    ordered_json cert = ordered_json::array();
    for (const auto& p : result.certificate) {
        ordered_json verts = ordered_json::array();
        for (const auto& v : p.vertices) verts.push_back(json_point(v));
        cert.push_back(verts);
    }
    j["certificate"] = cert;

    if (validate) {
        if (world.current_radius() < body.outradius()) world.extend_to(body.outradius());
        const auto truth = world.hitting_subset(body);
        ordered_json jt = ordered_json::array();
        for (const auto& h : truth) jt.push_back(json_hyperplane(h));
        bool match = result.terminated && truth.size() == result.chi.size();
        double max_dist = 0.0;
        if (match) {
            auto sorted = truth;
            std::sort(sorted.begin(), sorted.end(), [](const Hyperplane& a, const Hyperplane& b) {
                for (int i = 0; i < a.u.size(); ++i) {
                    if (a.u[i] != b.u[i]) return a.u[i] < b.u[i];
                }
                return a.s < b.s;
            });
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                const double dist = canonical_distance(sorted[i], result.chi[i]);
                max_dist = std::max(max_dist, dist);
                if (dist > 1e-6) match = false;
            }
        }
        j["validation"] =
            ordered_json{{"truth", jt}, {"match", match}, {"max_canonical_distance", max_dist}};
    }

    ctx.emit("reconstruct.json", j.dump(2) + "\n");

    ExecuteResult res;
    if (result.terminated) {
        res.message = "terminated at T = " + format_real(result.t) + " with " +
                      std::to_string(result.chi.size()) + " recovered hyperplanes";
    } else {
        res.exit_code = 3;
        res.message = "budget exhausted after " + std::to_string(result.points_consumed) +
                      " points (max_radius " +
                      format_real(params.resolved_max_radius(body.outradius())) + ")";
    }
    return res;
}

// ----------------------------------------------------------------- scaling

ordered_json json_scaling(const ScalingReport& rep)
{
    ordered_json j;
    j["m"] = rep.m;
    j["thin_p"] = rep.thin_p;
    j["slope"] = rep.slope;
    j["slope_ci"] = ordered_json::array({rep.slope_ci.lo, rep.slope_ci.hi});
    j["fit_r_squared"] = rep.fit_r_squared;
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.per_radius) {
        rows.push_back(ordered_json{{"radius", r.radius},
                                    {"reps", r.reps},
                                    {"mean", r.mean},
                                    {"variance", r.variance},
                                    {"se_mean", r.se_mean},
                                    {"se_variance", r.se_variance}});
    }
    j["per_radius"] = rows;
    return j;
}

void scaling_rows(const ScalingReport& rep, const std::string& source,
                  std::vector<std::vector<std::string>>& rows)
{
    for (const auto& r : rep.per_radius) {
        rows.push_back({source, format_real(r.radius), std::to_string(r.reps), format_real(r.mean),
                        format_real(r.variance), format_real(r.se_mean), format_real(r.se_variance)});
    }
}

ExecuteResult run_scaling(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const ConvexBody w = body_from_config(ctx.cfg);
    const int m = ctx.cfg.get_int("m", model.dim());
    const auto radii = ctx.cfg.get_reals("radii", {4.0, 8.0, 16.0, 32.0});
    if (radii.size() < 3)
        throw ConfigInvalid("config key 'radii': the growth fit needs at least 3 radii");
    const int reps = ctx.cfg.get_int("reps", 400);
    const double thin_p = ctx.cfg.get_real("thin_p", 1.0);

    const auto rep = variance_scaling(model, m, w, radii, reps, ctx.seed, ctx.jobs, thin_p);

    ordered_json j = json_scaling(rep);
    std::vector<std::vector<std::string>> rows;
    scaling_rows(rep, "process", rows);

    std::string note;
    if (ctx.cfg.get_flag("control", false)) {
        double intensity = ctx.cfg.get_real("intensity", 0.0);
        if (intensity <= 0.0) {
            const auto& top = rep.per_radius.back();
            intensity = top.mean / body_volume(scaled_body(w, top.radius));
        }
        const auto ctrl = poisson_control_scaling(intensity, w, radii, reps,
                                                  mix_keys(ctx.seed, 0xC011), ctx.jobs);
        ordered_json jc = json_scaling(ctrl);
        jc["intensity"] = intensity;
        j["control"] = jc;
        scaling_rows(ctrl, "control", rows);
        note = "; control slope " + format_real(ctrl.slope);
    }

    ctx.emit("scaling.csv",
             csv_table({"source", "radius", "reps", "mean", "variance", "se_mean", "se_variance"},
                       rows));
    ctx.emit("scaling.json", j.dump(2) + "\n");

    ExecuteResult res;
    res.message = "slope " + format_real(rep.slope) + " [" + format_real(rep.slope_ci.lo) + ", " +
                  format_real(rep.slope_ci.hi) + "]" + note;
    return res;
}

// ---------------------------------------------------------------- paircorr

ordered_json json_paircorr(const PairCorrelationReport& rep)
{
    ordered_json j;
    j["reps"] = rep.reps;
    j["analysis_radius"] = rep.analysis_radius;
    j["max_distance"] = rep.max_distance;
    j["gamma_hat"] = rep.gamma_hat;
    j["anisotropic_warning"] = rep.anisotropic_warning;
    j["decay_exponent"] = rep.decay_exponent;
    j["decay_ci"] = ordered_json::array({rep.decay_ci.lo, rep.decay_ci.hi});
    j["fit_range"] = ordered_json::array({rep.fit_lo, rep.fit_hi});
    j["fit_bins"] = rep.fit_bins;
    j["tail_range"] = ordered_json::array({rep.tail_lo, rep.tail_hi});
    j["tail_mean"] = rep.tail_mean;
    j["tail_ci"] = ordered_json::array({rep.tail_ci.lo, rep.tail_ci.hi});
    return j;
}

void paircorr_rows(const PairCorrelationReport& rep, const std::string& source,
                   std::vector<std::vector<std::string>>& rows)
{
    for (const auto& b : rep.bins) {
        rows.push_back({source, format_real(b.r_lo), format_real(b.r_hi), format_real(b.mid),
                        format_real(b.rho), format_real(b.ci_lo), format_real(b.ci_hi)});
    }
}

ExecuteResult run_paircorr(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const double analysis = ctx.cfg.get_real("window_radius", 20.0);
    const double max_dist = ctx.cfg.get_real("max_distance", 40.0);
    const int bins = ctx.cfg.get_int("bins", 80);
    const int reps = ctx.cfg.get_int("reps", 150);
    const double fit_lo = ctx.cfg.get_real("fit_lo", 5.0);
    const double fit_hi = ctx.cfg.get_real("fit_hi", 20.0);
    const double tail_lo = ctx.cfg.get_real("tail_lo", 30.0);
    const double tail_hi = ctx.cfg.get_real("tail_hi", 40.0);

    const auto rep = pair_correlation(model, analysis, bins, max_dist, reps, ctx.seed, fit_lo,
                                      fit_hi, tail_lo, tail_hi, ctx.jobs);

    ordered_json j = json_paircorr(rep);
    std::vector<std::vector<std::string>> rows;
    paircorr_rows(rep, "process", rows);

    if (ctx.cfg.get_flag("control", false)) {
        double intensity = ctx.cfg.get_real("intensity", 0.0);
        if (intensity <= 0.0) intensity = rep.gamma_hat;
        const auto ctrl =
            pair_correlation_poisson(intensity, model.dim(), analysis, bins, max_dist, reps,
                                     mix_keys(ctx.seed, 0xC011), fit_lo, fit_hi, tail_lo, tail_hi,
                                     ctx.jobs);
        ordered_json jc = json_paircorr(ctrl);
        jc["intensity"] = intensity;
        j["control"] = jc;
        paircorr_rows(ctrl, "control", rows);
    }

    ctx.emit("paircorr.csv",
             csv_table({"source", "r_lo", "r_hi", "mid", "rho", "ci_lo", "ci_hi"}, rows));
    ctx.emit("paircorr.json", j.dump(2) + "\n");

    ExecuteResult res;
    res.message = "decay exponent " + format_real(rep.decay_exponent) + " over [" +
                  format_real(fit_lo) + ", " + format_real(fit_hi) + "]";
    if (rep.anisotropic_warning)
        res.message += " (warning: anisotropic model, closed-form decay not applicable)";
    return res;
}

// -------------------------------------------------------------------- tail

ExecuteResult run_tail(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const ConvexBody body = body_from_config(ctx.cfg);
    const auto params = recon_params_from_config(ctx.cfg);
    const int reps = ctx.cfg.get_int("reps", 1000);

    const auto rep = stopping_tail(model, body, reps, params, ctx.seed, ctx.jobs);

    std::vector<std::vector<std::string>> rows;
    const std::size_t n = rep.radii.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double survival = 1.0 - static_cast<double>(i + 1) / static_cast<double>(n);
        rows.push_back({format_real(rep.radii[i]), format_real(survival)});
    }
    ctx.emit("tail.csv", csv_table({"stopping_radius", "survival"}, rows));

    ordered_json j;
    j["reps"] = rep.reps;
    j["truncated"] = rep.truncated;
    j["median"] = rep.median;
    j["c1_hat"] = rep.c1_hat;
    j["c2_hat"] = rep.c2_hat;
    j["log_fit_r_squared"] = rep.log_fit_r_squared;
    j["fit_points"] = rep.fit_points;
    ctx.emit("tail.json", j.dump(2) + "\n");

    ExecuteResult res;
    res.message = "rate " + format_real(rep.c2_hat) + ", log-survival R^2 " +
                  format_real(rep.log_fit_r_squared) + ", " + std::to_string(rep.truncated) +
                  " truncated";
    return res;
}

// --------------------------------------------------------------- randomize

ordered_json json_identity(const VarianceIdentity& id)
{
    return ordered_json{{"reps", id.reps},
                        {"mean_phi", id.mean_phi},
                        {"var_phi", id.var_phi},
                        {"var_randomized", id.var_randomized},
                        {"predicted", id.predicted},
                        {"rel_err", id.rel_err}};
}

ExecuteResult run_randomize(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const ConvexBody body = body_from_config(ctx.cfg);
    const int m = ctx.cfg.get_int("m", model.dim());
    const int reps = ctx.cfg.get_int("reps", 10000);
    const double p = ctx.cfg.get_real("thin_p", 0.5);

    const auto cox = cox_variance_identity(model, m, body, reps, ctx.seed, ctx.jobs);
    const auto thi =
        thinning_variance_identity(model, p, body, reps, mix_keys(ctx.seed, 1), ctx.jobs);

    ordered_json j;
    j["cox"] = json_identity(cox);
    ordered_json jt = json_identity(thi);
    jt["p"] = p;
    j["thinning"] = jt;
    ctx.emit("randomize.json", j.dump(2) + "\n");

    ExecuteResult res;
    res.message = "cox rel err " + format_real(cox.rel_err) + ", thinning rel err " +
                  format_real(thi.rel_err);
    return res;
}

// --------------------------------------------------------------------- clt

ExecuteResult run_clt(CommandContext& ctx)
{
    const auto model = model_from_config(ctx.cfg);
    const ConvexBody w = body_from_config(ctx.cfg);
    const int m = ctx.cfg.get_int("m", model.dim());
    const double r = ctx.cfg.get_real("clt_r", 32.0);
    const int reps = ctx.cfg.get_int("reps", 1000);

    const auto rep = clt_diagnostic(model, m, w, r, reps, ctx.seed, ctx.jobs);

    ordered_json j;
    j["reps"] = rep.reps;
    j["r"] = rep.r;
    j["mean"] = rep.mean;
    j["sd"] = rep.sd;
    j["sigma_hat"] = rep.sigma_hat;
    j["skewness"] = rep.skewness;
    j["excess_kurtosis"] = rep.excess_kurtosis;
    j["ad_statistic"] = rep.ad_statistic;
    j["reject_001"] = rep.reject_001;
    ctx.emit("clt.json", j.dump(2) + "\n");

    ExecuteResult res;
    res.message = "skew " + format_real(rep.skewness) + ", excess kurtosis " +
                  format_real(rep.excess_kurtosis) + (rep.reject_001 ? " (AD rejects)" : " (AD passes)");
    return res;
}

}  // namespace

std::vector<std::string> command_names()
{
    return {"simulate", "points", "reconstruct", "scaling", "paircorr", "tail", "randomize", "clt"};
}

ExecuteResult execute(const std::string& command, const RunConfig& cfg, bool validate)
{
    const auto t0 = std::chrono::steady_clock::now();
    CommandContext ctx{cfg, resolve_out_dir(cfg), cfg.get_u64("seed", 0),
                       cfg.get_int("jobs", 1), {}};
    std::filesystem::create_directories(ctx.out_dir);

    ExecuteResult res;
    if (command == "simulate")
        res = run_simulate(ctx);
    else if (command == "points")
        res = run_points(ctx);
    else if (command == "reconstruct")
        res = run_reconstruct(ctx, validate);
    else if (command == "scaling")
        res = run_scaling(ctx);
    else if (command == "paircorr")
        res = run_paircorr(ctx);
    else if (command == "tail")
        res = run_tail(ctx);
    else if (command == "randomize")
        res = run_randomize(ctx);
    else if (command == "clt")
        res = run_clt(ctx);
    else
        throw ConfigInvalid("unknown command '" + command + "'");

    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const std::string manifest = (ctx.out_dir / (command + "_manifest.json")).string();
    write_text_atomic(manifest, manifest_json(command, cfg, ctx.artifacts, wall_ms));
    ctx.artifacts.push_back(manifest);
    res.artifacts = std::move(ctx.artifacts);
    return res;
}

std::string help_text()
{
    std::ostringstream out;
    out << "hipsim " << kVersion
        << " - Poisson hyperplane process simulator and reconstruction harness\n\n"
        << "usage: hipsim <command> [--config FILE] [--set key=value ...] [--seed N]\n"
        << "              [--out DIR] [--jobs N] [--validate]\n\n"
        << "commands:\n"
        << "  simulate     sample the hyperplanes hitting a centred ball -> hyperplanes.csv\n"
        << "  points       intersection points of the sampled hyperplanes -> points.csv\n"
        << "  reconstruct  recover the hyperplanes hitting the test body -> reconstruct.json\n"
        << "  scaling      window-count variance growth and log-log slope -> scaling.{csv,json}\n"
        << "  paircorr     pair correlation histogram and decay fit -> paircorr.{csv,json}\n"
        << "  tail         stopping-radius survival and exponential fit -> tail.{csv,json}\n"
        << "  randomize    Cox and thinning variance identities -> randomize.json\n"
        << "  clt          normality diagnostic of window counts -> clt.json\n\n"
        << "config keys (key = value lines, # comments; --set overrides):\n";
    for (const auto& k : documented_keys()) {
        out << "  " << k.key;
        for (std::size_t pad = std::string(k.key).size(); pad < 16; ++pad) out << ' ';
        out << k.doc << "\n";
    }
    out << "\nexit codes: 0 success, 2 invalid config or arguments, 3 search budget exhausted\n"
        << "environment: HIPSIM_OUTPUT_DIR default artifact directory\n"
        << "every command writes <command>_manifest.json (config echo + hash, seed, version,\n"
        << "wall time); rerunning with the manifest's config and seed reproduces the data\n"
        << "artifacts byte for byte.\n";
    return out.str();
}

}  // namespace hipsim
