#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "partitio/report.hpp"

namespace {

std::string flag_name(const std::string& key) {
    std::string out = key;
    for (auto& c : out)
        if (c == '_') c = '-';
    return "--" + out;
}

std::string env_name(const std::string& key) {
    std::string out = "PARTITIO_";
    for (char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

const std::map<std::string, std::string> descriptions{
    {"constants", "size-pruning table, headline constants and the k-parameter sweep"},
    {"thm14-table", "verify the admissible-exponent data table"},
    {"counts", "representation counts of x^2 + y_1^k + ... + y_s^k, or their zero set"},
    {"moments", "exact and quadrature moments of smooth Weyl sums"},
    {"weights", "sampled sup profile of a weight over dyadic slices and its decay fit"},
    {"singular", "singular series, singular integral and local solubility"},
    {"check", "exponent conditions and the bound catalog"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitio: circle-method workbench"};
    app.require_subcommand(0, 1);
    // -h stays free for the h parameter
    app.set_help_flag("--help", "print this help and exit");
    app.fallthrough();

    std::optional<std::string> format, config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    app.add_option("--format", format, "csv, json or pretty (default pretty)");
    app.add_option("--seed", seed, "seed for sampled procedures (default 20240601)");
    app.add_option("--workers", workers, "worker threads (default 1, 0 = hardware)");
    app.add_option("--config", config_path, "key = value file; '#' starts a comment");

    std::map<std::string, std::map<std::string, std::optional<std::string>>> flags;
    std::map<std::string, bool> zero_set_flag;
    for (const auto& [command, keys] : partitio::command_keys()) {
        auto* sub = app.add_subcommand(command, descriptions.at(command));
        sub->set_help_flag("--help", "print this help and exit");
        for (const auto& [key, def] : keys) {
            const std::string help = def.empty() ? "optional" : "default " + def;
            if (key == "zero_set") {
                sub->add_flag(flag_name(key), zero_set_flag[command], "list n with no representation");
                continue;
            }
            sub->add_option(flag_name(key), flags[command][key], help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : partitio::exit_usage;
    }

    CLI::App* chosen = nullptr;
    for (auto* sub : app.get_subcommands()) chosen = sub;
    if (!chosen) {
        std::cerr << app.help();
        return partitio::exit_usage;
    }

    partitio::RunConfig cfg;
    cfg.command = chosen->get_name();
    const auto& keys = partitio::command_keys().at(cfg.command);
    std::string format_text = "pretty", seed_text, workers_text;

    try {
        // config file, then environment, then flags
        if (config_path) {
            std::ifstream in(*config_path);
            if (!in) throw partitio::config_error("cannot open config file " + *config_path);
            for (const auto& e : partitio::parse_config_text(in)) {
                if (e.key == "format") format_text = e.value;
                else if (e.key == "seed") seed_text = e.value;
                else if (e.key == "workers") workers_text = e.value;
                else if (keys.count(e.key)) cfg.params[e.key] = e.value;
                else throw partitio::config_error("unknown key '" + e.key + "' for command " + cfg.command, e.line);
            }
        }
        auto env = [](const std::string& key) -> std::optional<std::string> {
            if (const char* v = std::getenv(env_name(key).c_str()); v && *v) return std::string(v);
            return std::nullopt;
        };
        if (auto v = env("format")) format_text = *v;
        if (auto v = env("seed")) seed_text = *v;
        if (auto v = env("workers")) workers_text = *v;
        for (const auto& [key, def] : keys)
            if (auto v = env(key)) cfg.params[key] = *v;

        if (format) format_text = *format;
        if (seed) seed_text = std::to_string(*seed);
        if (workers) workers_text = std::to_string(*workers);
        for (const auto& [key, value] : flags[cfg.command])
            if (value) cfg.params[key] = *value;
        if (zero_set_flag[cfg.command]) cfg.params["zero_set"] = "true";

        cfg.format = partitio::parse_format(format_text);
        if (!seed_text.empty()) cfg.seed = std::stoull(seed_text);
        if (!workers_text.empty()) cfg.workers = partitio::detail::resolve_workers(static_cast<unsigned>(std::stoul(workers_text)));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return partitio::exit_usage;
    }
    return partitio::run(cfg, std::cout, std::cerr);
}
