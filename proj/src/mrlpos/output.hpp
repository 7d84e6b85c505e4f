// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_OUTPUT_HPP
#define MRLPOS_OUTPUT_HPP

#include "mrlpos/sim.hpp"
#include "mrlpos/trace.hpp"

#include <filesystem>

namespace mrlpos {

/** %.12g: every real in an output file goes through here. */
std::string format_real(double v);

struct WindowCount {
    std::uint32_t index{0};
    Round start_round{0};
    Round end_round{0}; // inclusive
    std::uint32_t malicious{0};
    std::uint32_t honest{0};
    std::uint32_t skipped{0};
    bool partial{false};

    friend bool operator==(const WindowCount&, const WindowCount&) = default;
};

/** Consecutive windows of window_size records; a short tail window is kept and flagged partial. */
std::vector<WindowCount> aggregate_windows(const std::vector<RoundRecord>& records, std::uint32_t window_size);

// rounds.csv: round,elected,elected_was_malicious,penalty_applied,reward_applied,detected,snapshots
//   elected    node id or "skipped"
//   detected   "id:bN" pairs joined by ';'
//   snapshots  "id:attack_probability:last_attack_age:restrictions:balance:is_active" joined by ';'
std::string rounds_csv(const std::vector<RoundRecord>& records);
std::vector<RoundRecord> parse_rounds_csv(const std::string& text);

std::string windows_csv(const std::vector<WindowCount>& windows);
std::string comparison_csv(const std::array<SimulationResult, 3>& results);
std::string trace_csv(const std::vector<NodeState>& steps);
std::string run_summary_json(const SimulationResult& result);
std::string compare_summary_json(const std::array<SimulationResult, 3>& results);

/** Lower-case hex SHA-256. */
std::string sha256_hex(const std::string& bytes);

struct ManifestEntry {
    std::string name;
    std::string sha256;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct RunManifest {
    std::string scenario_path;
    std::optional<std::uint64_t> seed_override;
    std::string out_dir;
    std::vector<ManifestEntry> files;
};

std::string manifest_json(const RunManifest& m);

/** Each command writes its files plus manifest.json into out_dir, creating it if needed. */
RunManifest cmd_run(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed,
                    const std::filesystem::path& out_dir);
RunManifest cmd_compare(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed,
                        const std::filesystem::path& out_dir);
RunManifest cmd_trace(const std::filesystem::path& script_path, const std::filesystem::path& out_dir);

} // namespace mrlpos

#endif // MRLPOS_OUTPUT_HPP
