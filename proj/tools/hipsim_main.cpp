#include "hipsim/cli/execute.hpp"
#include "hipsim/error.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    CLI::App app{"hipsim"};
    app.set_help_flag();  // replaced by the key-reference help below

    bool help = false;
    std::string command, config_path, seed_str, out_dir;
    std::vector<std::string> overrides;
    int jobs = -1;
    bool validate = false;

    app.add_flag("--help,-h", help, "print the command and config key reference");
    app.add_option("command", command, "one of the run commands");
    app.add_option("--config", config_path, "config file (key = value lines)");
    app.add_option("--set", overrides, "config override key=value (repeatable)");
    app.add_option("--seed", seed_str, "override the seed key");
    app.add_option("--out", out_dir, "override the output_dir key");
    app.add_option("--jobs", jobs, "override the jobs key");
    app.add_flag("--validate", validate, "reconstruct: attach the ground-truth comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    }

    if (help) {
        std::cout << hipsim::help_text();
        return 0;
    }
    if (command.empty()) {
        std::cerr << hipsim::help_text();
        return 2;
    }

    try {
        hipsim::RunConfig cfg =
            config_path.empty() ? hipsim::RunConfig{} : hipsim::RunConfig::parse_file(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw hipsim::ConfigInvalid("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!seed_str.empty()) cfg.set("seed", seed_str);
        if (!out_dir.empty()) cfg.set("output_dir", out_dir);
        if (jobs >= 0) cfg.set("jobs", std::to_string(jobs));

        const auto res = hipsim::execute(command, cfg, validate);
        std::cout << command << ": " << res.message << "\n";
        for (const auto& a : res.artifacts) std::cout << "  wrote " << a << "\n";
        return res.exit_code;
    } catch (const hipsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
