#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tamer/tamer.h"

namespace {

/// A path to an existing file is read; anything else is taken as inline JSON.
std::string load(const std::string& arg) {
    std::error_code ec;
    if (!arg.empty() && arg.front() != '{' && arg.front() != '[' && arg.front() != '"' &&
        std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

std::string usage_commands() {
    std::string out;
    for (std::size_t i = 0; const char* n = tamer_command_name(i); ++i) out += std::string(i ? ", " : "") + n;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with finite group schemes, Kummer covers and root stacks of curves"};
    app.set_version_flag("--version", std::string(tamer_version()));
    std::string command, model, group, format = "json";
    std::uint64_t seed = 0, count = 0, degree = 0, p = 0, family = 0, budget_torsion = 0, budget_dim = 0;
    unsigned threads = 0;
    app.add_option("command", command, "Subcommand: " + usage_commands())->required();
    auto* o_model = app.add_option("--model", model, "Model, parabolic or Kummer input: file path or inline JSON");
    auto* o_group = app.add_option("--group", group, "Group scheme: file path or inline JSON");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    auto* o_seed = app.add_option("--seed", seed, "64-bit seed recorded in the report");
    auto* o_count = app.add_option("--count", count, "Number of campaign models");
    auto* o_degree = app.add_option("--degree", degree, "Truncation degree B");
    auto* o_p = app.add_option("--p", p, "Characteristic");
    auto* o_family = app.add_option("--family", family, "Counterexample family (1 or 2)");
    app.add_option("--budget-torsion", budget_torsion, "Torsion enumeration budget");
    app.add_option("--budget-dim", budget_dim, "Hopf algebra dimension budget (at most 64)");
    app.add_option("--threads", threads, "Campaign worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return TAMER_INPUT_ERROR;
    }

    bool known = false;
    for (std::size_t i = 0; const char* n = tamer_command_name(i); ++i) known = known || command == n;
    if (!known) {
        std::cerr << "unknown subcommand \"" << command << "\"; expected one of " << usage_commands() << "\n";
        return TAMER_INPUT_ERROR;
    }

    nlohmann::ordered_json req = nlohmann::ordered_json::object();
    req["format"] = format;
    try {
        if (*o_model) req["model"] = load(model);
        if (*o_group) req["group"] = load(group);
    } catch (const std::exception& e) {
        std::cerr << "cannot read input: " << e.what() << "\n";
        return TAMER_INPUT_ERROR;
    }
    if (*o_seed) req["seed"] = seed;
    if (*o_count) req["count"] = count;
    if (*o_degree) req["degree"] = degree;
    if (*o_p) req["p"] = p;
    if (*o_family) req["family"] = family;

    tamer_context* ctx = tamer_context_new();
    if (!ctx) return TAMER_INTERNAL_ERROR;
    tamer_set_budget(ctx, budget_torsion, budget_dim);
    tamer_set_threads(ctx, threads);
    const tamer_status status = tamer_run(ctx, command.c_str(), req.dump().c_str());
    std::fputs(tamer_result(ctx), stdout);
    if (status != TAMER_OK && *tamer_last_error(ctx)) {
        std::fprintf(stderr, "%s\n", tamer_last_error(ctx));
        if (*tamer_last_budget(ctx)) std::fprintf(stderr, "budget: %s\n", tamer_last_budget(ctx));
    }
    tamer_context_free(ctx);
    return status;
}
