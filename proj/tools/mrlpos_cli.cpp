// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Command-line front end. Talks to the library only through its C API.

#include <mrlpos/mrlpos.h>

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace {

int report(mrlpos_status st, mrlpos_manifest* m, const std::string& out_dir)
{
    if (st != MRLPOS_OK) {
        std::fprintf(stderr, "mrlpos: error: %s\n", mrlpos_last_error());
        return 1;
    }
    for (size_t i = 0; i < mrlpos_manifest_file_count(m); ++i) {
        std::printf("%s/%s  %s\n", out_dir.c_str(), mrlpos_manifest_file_name(m, i), mrlpos_manifest_file_sha256(m, i));
    }
    mrlpos_manifest_free(m);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reputation-aware proof-of-stake simulator"};
    app.set_version_flag("--version", std::string(mrlpos_version()));
    app.require_subcommand(1);

    std::string path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;

    auto* run = app.add_subcommand("run", "Simulate a scenario and write rounds.csv, windows.csv, summary.json");
    auto* compare = app.add_subcommand("compare", "Run a scenario under mrlpos, pos and dpos; write comparison.csv");
    auto* trace = app.add_subcommand("trace", "Replay a single-node learning script; write trace.csv");
    for (auto* sub : {run, compare, trace}) {
        sub->add_option("path", path, sub == trace ? "Trace script (YAML)" : "Scenario file (YAML)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out,-o", out_dir, "Output directory")->capture_default_str();
    }
    run->add_option("--seed", seed, "Override the scenario seed");
    compare->add_option("--seed", seed, "Override the scenario seed");
    trace->add_option("--seed", seed, "Accepted for symmetry; a trace has no randomness");

    CLI11_PARSE(app, argc, argv);

    const uint64_t* seed_ptr = seed ? &*seed : nullptr;
    mrlpos_manifest* manifest = nullptr;
    mrlpos_status st = MRLPOS_OK;
    if (*run) {
        st = mrlpos_cmd_run(path.c_str(), seed_ptr, out_dir.c_str(), &manifest);
    } else if (*compare) {
        st = mrlpos_cmd_compare(path.c_str(), seed_ptr, out_dir.c_str(), &manifest);
    } else {
        st = mrlpos_cmd_trace(path.c_str(), out_dir.c_str(), &manifest);
    }
    return report(st, manifest, out_dir);
}
