// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/output.hpp"

#include "mrlpos/scenario.hpp"
#include "mrlpos/serialize.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mrlpos {

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

[[noreturn]] void bad_row(std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::Parse, "rounds.csv line " + std::to_string(line) + ": " + what);
}

double to_real(const std::string& s, std::size_t line)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) bad_row(line, "bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        bad_row(line, "bad number '" + s + "'");
    }
}

std::int64_t to_int(const std::string& s, std::size_t line)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) bad_row(line, "bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        bad_row(line, "bad integer '" + s + "'");
    }
}

bool to_flag(const std::string& s, std::size_t line)
{
    if (s == "1") return true;
    if (s == "0") return false;
    bad_row(line, "bad flag '" + s + "'");
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                RunManifest& manifest)
{
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    manifest.files.push_back(ManifestEntry{name, sha256_hex(content)});
}

void prepare_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::Io, "cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
}

void finish(const std::filesystem::path& dir, const RunManifest& manifest)
{
    RunManifest scratch; // manifest.json does not list itself
    write_file(dir, "manifest.json", manifest_json(manifest), scratch);
}

} // namespace

std::string format_real(double v)
{
    if (v == 0.0) v = 0.0; // fold -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<WindowCount> aggregate_windows(const std::vector<RoundRecord>& records, std::uint32_t window_size)
{
    if (window_size < 1) throw Error(ErrorCode::InvalidArgument, "window size must be >= 1");
    std::vector<WindowCount> out;
    for (std::size_t i = 0; i < records.size(); i += window_size) {
        WindowCount w;
        w.index = static_cast<std::uint32_t>(out.size());
        const std::size_t end = std::min(records.size(), i + window_size);
        w.start_round = records[i].round;
        w.end_round = records[end - 1].round;
        w.partial = end - i < window_size;
        for (std::size_t k = i; k < end; ++k) {
            const RoundRecord& r = records[k];
            if (!r.elected) {
                ++w.skipped;
            } else if (r.elected_was_malicious) {
                ++w.malicious;
            } else {
                ++w.honest;
            }
        }
        out.push_back(w);
    }
    return out;
}

std::string rounds_csv(const std::vector<RoundRecord>& records)
{
    std::string out = "round,elected,elected_was_malicious,penalty_applied,reward_applied,detected,snapshots\n";
    for (const auto& r : records) {
        out += std::to_string(r.round);
        out += ',';
        out += r.elected ? std::to_string(r.elected->value) : "skipped";
        out += r.elected_was_malicious ? ",1" : ",0";
        out += r.penalty_applied ? ",1" : ",0";
        out += r.reward_applied ? ",1," : ",0,";
        for (std::size_t i = 0; i < r.behaviors_detected.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(r.behaviors_detected[i].first.value) + ":" + to_string(r.behaviors_detected[i].second);
        }
        out += ',';
        for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
            const NodeSnapshot& s = r.snapshots[i];
            if (i) out += ';';
            out += std::to_string(s.id.value) + ":" + format_real(s.attack_probability) + ":" +
                   std::to_string(s.last_attack_age) + ":" + std::to_string(s.restriction_count) + ":" +
                   format_real(s.balance) + ":" + (s.is_active ? "1" : "0");
        }
        out += '\n';
    }
    return out;
}

std::vector<RoundRecord> parse_rounds_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line.rfind("round,elected,", 0) != 0) bad_row(1, "missing header");

    std::vector<RoundRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 7) bad_row(lineno, "expected 7 columns, got " + std::to_string(cols.size()));
        RoundRecord r;
        r.round = to_int(cols[0], lineno);
        if (cols[1] != "skipped") r.elected = NodeId{static_cast<std::uint32_t>(to_int(cols[1], lineno))};
        r.elected_was_malicious = to_flag(cols[2], lineno);
        r.penalty_applied = to_flag(cols[3], lineno);
        r.reward_applied = to_flag(cols[4], lineno);
        for (const auto& item : split(cols[5], ';')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2) bad_row(lineno, "bad detection '" + item + "'");
            const auto b = parse_behavior(parts[1]);
            if (!b) bad_row(lineno, "unknown behavior '" + parts[1] + "'");
            r.behaviors_detected.emplace_back(NodeId{static_cast<std::uint32_t>(to_int(parts[0], lineno))}, *b);
        }
        for (const auto& item : split(cols[6], ';')) {
            const auto parts = split(item, ':');
            if (parts.size() != 6) bad_row(lineno, "bad snapshot '" + item + "'");
            NodeSnapshot s;
            s.id = NodeId{static_cast<std::uint32_t>(to_int(parts[0], lineno))};
            s.attack_probability = to_real(parts[1], lineno);
            s.last_attack_age = static_cast<std::uint32_t>(to_int(parts[2], lineno));
            s.restriction_count = static_cast<std::uint32_t>(to_int(parts[3], lineno));
            s.balance = to_real(parts[4], lineno);
            s.is_active = to_flag(parts[5], lineno);
            r.snapshots.push_back(s);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string windows_csv(const std::vector<WindowCount>& windows)
{
    std::string out = "window,start_round,end_round,malicious,honest,skipped,partial\n";
    for (const auto& w : windows) {
        out += std::to_string(w.index) + "," + std::to_string(w.start_round) + "," + std::to_string(w.end_round) + "," +
               std::to_string(w.malicious) + "," + std::to_string(w.honest) + "," + std::to_string(w.skipped) + "," +
               (w.partial ? "1" : "0") + "\n";
    }
    return out;
}

std::string comparison_csv(const std::array<SimulationResult, 3>& results)
{
    std::string out = "round,active_malicious_mrlpos,active_malicious_pos,active_malicious_dpos\n";
    const std::uint32_t rounds = results[0].scenario.rounds;
    for (std::uint32_t r = 0; r < rounds; ++r) {
        out += std::to_string(r);
        for (const auto& res : results) {
            // A halted run has nobody left active; its remaining rows stay at the last count.
            std::uint32_t n = 0;
            if (!res.records.empty()) {
                const auto& rec = res.records[std::min<std::size_t>(r, res.records.size() - 1)];
                n = count_active(rec.snapshots, res.scenario, true);
            }
            out += "," + std::to_string(n);
        }
        out += '\n';
    }
    return out;
}

std::string trace_csv(const std::vector<NodeState>& steps)
{
    std::string out = "round,attack_probability,last_attack_age,restrictions,balance,is_active\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const NodeSnapshot s = snapshot_of(steps[i]);
        out += std::to_string(i) + "," + format_real(s.attack_probability) + "," + std::to_string(s.last_attack_age) +
               "," + std::to_string(s.restriction_count) + "," + format_real(s.balance) + "," +
               (s.is_active ? "1" : "0") + "\n";
    }
    return out;
}

std::string run_summary_json(const SimulationResult& result)
{
    Json j{{"scenario", result.scenario}, {"summary", result.summary}};
    return pretty(j);
}

std::string compare_summary_json(const std::array<SimulationResult, 3>& results)
{
    Json electors = Json::object();
    for (const auto& res : results) electors[std::string(to_string(res.scenario.elector))] = res.summary;
    Json scenario = results[0].scenario;
    scenario.erase("elector");
    Json j{{"scenario", scenario}, {"electors", electors}};
    return pretty(j);
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::Io, "SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string manifest_json(const RunManifest& m)
{
    Json files = Json::array();
    for (const auto& f : m.files) files.push_back(Json{{"name", f.name}, {"sha256", f.sha256}});
    Json j{{"scenario", m.scenario_path},
           {"seed_override", m.seed_override ? Json(*m.seed_override) : Json(nullptr)},
           {"out_dir", m.out_dir},
           {"files", files}};
    return pretty(j);
}

RunManifest cmd_run(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed,
                    const std::filesystem::path& out_dir)
{
    Scenario scenario = load_scenario(scenario_path);
    if (seed) scenario.seed = *seed;
    const SimulationResult result = run_simulation(scenario);

    prepare_dir(out_dir);
    RunManifest m{scenario_path.string(), seed, out_dir.string(), {}};
    write_file(out_dir, "rounds.csv", rounds_csv(result.records), m);
    write_file(out_dir, "windows.csv", windows_csv(aggregate_windows(result.records, 10)), m);
    write_file(out_dir, "summary.json", run_summary_json(result), m);
    finish(out_dir, m);
    return m;
}

RunManifest cmd_compare(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed,
                        const std::filesystem::path& out_dir)
{
    Scenario scenario = load_scenario(scenario_path);
    if (seed) scenario.seed = *seed;
    const auto results = run_comparison(scenario);

    prepare_dir(out_dir);
    RunManifest m{scenario_path.string(), seed, out_dir.string(), {}};
    write_file(out_dir, "comparison.csv", comparison_csv(results), m);
    write_file(out_dir, "summary.json", compare_summary_json(results), m);
    finish(out_dir, m);
    return m;
}

RunManifest cmd_trace(const std::filesystem::path& script_path, const std::filesystem::path& out_dir)
{
    const TraceScript script = load_trace_script(script_path);
    const auto steps = run_learning_trace(script);

    prepare_dir(out_dir);
    RunManifest m{script_path.string(), std::nullopt, out_dir.string(), {}};
    write_file(out_dir, "trace.csv", trace_csv(steps), m);
    finish(out_dir, m);
    return m;
}

} // namespace mrlpos
