// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "support.hpp"

#include "mrlpos/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

using namespace mrlpos;
namespace fs = std::filesystem;

namespace {

/** A fresh directory under the system temp dir, removed on destruction. */
struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag)
    {
        path = fs::temp_directory_path() / ("mrlpos_test_" + tag + "_" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    fs::path write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return path / name;
    }

    static int& counter()
    {
        static int n = 0;
        return n;
    }
};

ErrorCode code_of(const std::function<void()>& f, std::string& message)
{
    try {
        f();
    } catch (const Error& e) {
        message = e.what();
        return e.code();
    }
    return ErrorCode{};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream cl(line);
        for (std::string c; std::getline(cl, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

RoundRecord record(Round round, std::optional<NodeId> elected, bool malicious)
{
    RoundRecord r;
    r.round = round;
    r.elected = elected;
    r.elected_was_malicious = malicious;
    return r;
}

const char* const kSmall = "seed: 3\n"
                           "rounds: 10\n"
                           "nodes:\n"
                           "  - count: 8\n"
                           "  - count: 2\n"
                           "    strategy: ddos\n";

} // namespace

TEST_CASE("scenario defaults")
{
    const Scenario s = parse_scenario("seed: 4\nrounds: 12\nnodes:\n  - count: 6\n");
    Scenario expected;
    expected.seed = 4;
    expected.rounds = 12;
    expected.nodes.push_back(NodeGroup{6, 10.0, 100.0, StrategyDescriptor::honest()});
    CHECK(s == expected);
    CHECK(s.elector == Elector::MrlPos);
    CHECK(s.learning == LearningParams{});
    CHECK(s.detection == DetectionConfig{});
    CHECK(s.weights == Weights{});
}

TEST_CASE("scenario errors name the field and line")
{
    std::string msg;
    CHECK(code_of([] { parse_scenario("rounds: 3\nnodes:\n  - count: 2\nlearning:\n  alpha: 1.5\n"); }, msg) ==
          ErrorCode::Range);
    CHECK(msg.find("learning.alpha") != std::string::npos);
    CHECK(msg.find("line 5") != std::string::npos);

    CHECK(code_of([] { parse_scenario("rounds: 3\nbogus: 1\nnodes:\n  - count: 2\n"); }, msg) == ErrorCode::UnknownKey);
    CHECK(msg.find("bogus") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);

    CHECK(code_of([] { parse_scenario("rounds: lots\nnodes:\n  - count: 2\n"); }, msg) == ErrorCode::Parse);
    CHECK(msg.find("rounds") != std::string::npos);

    CHECK(code_of([] { parse_scenario("nodes:\n  - count: 2\n    strategy: phishing\n"); }, msg) != ErrorCode{});
    CHECK(code_of([] { parse_scenario("rounds: [1\n"); }, msg) == ErrorCode::Parse);
    CHECK(code_of([] { load_scenario("/nonexistent/scenario.yaml"); }, msg) == ErrorCode::Io);
}

TEST_CASE("shipped presets")
{
    const Scenario s = load_scenario(testing::source_path("scenarios/fig3_double_spend.yaml"));
    const auto strategies = strategies_of(s);
    const auto attackers = std::count_if(strategies.begin(), strategies.end(), [](const auto& st) {
        return st.is_malicious() && st.attack == AttackKind::DoubleSpend;
    });
    CHECK(strategies.size() == 100);
    CHECK(attackers == 40);
    CHECK(s.rounds == 100);

    for (const char* family : testing::kFamilies) {
        CHECK_NOTHROW(load_scenario(testing::source_path(std::string("scenarios/fig3_") + family + ".yaml")));
    }
    const Scenario mixed = load_scenario(testing::source_path("scenarios/fig5_comparison.yaml"));
    const auto mixed_strategies = strategies_of(mixed);
    CHECK(std::count_if(mixed_strategies.begin(), mixed_strategies.end(), [](const auto& st) { return st.is_malicious(); }) == 50);
    CHECK(mixed.node_count() == 100);
    CHECK(mixed.rounds == 50);

    const TraceScript t = load_trace_script(testing::source_path("scenarios/fig4_trace.yaml"));
    CHECK(t.steps.size() == 6);
}

TEST_CASE("aggregate_windows")
{
    std::vector<RoundRecord> hundred;
    for (Round r = 0; r < 100; ++r) hundred.push_back(record(r, NodeId{0}, false));
    const auto ten = aggregate_windows(hundred, 10);
    CHECK(ten.size() == 10);
    for (const auto& w : ten) CHECK_FALSE(w.partial);

    const auto short_run = aggregate_windows(std::vector<RoundRecord>(hundred.begin(), hundred.begin() + 25), 10);
    REQUIRE(short_run.size() == 3);
    CHECK(short_run[2].partial);
    CHECK(short_run[2].start_round == 20);
    CHECK(short_run[2].end_round == 24);
    CHECK(short_run[2].honest == 5);

    std::mt19937_64 g(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<RoundRecord> recs;
        const auto n = 1 + g() % 60;
        std::uint32_t bad = 0, good = 0, skipped = 0;
        for (Round r = 0; r < static_cast<Round>(n); ++r) {
            switch (g() % 3) {
            case 0: recs.push_back(record(r, NodeId{1}, true)); ++bad; break;
            case 1: recs.push_back(record(r, NodeId{2}, false)); ++good; break;
            default: recs.push_back(record(r, std::nullopt, false)); ++skipped; break;
            }
        }
        const auto size = static_cast<std::uint32_t>(1 + g() % 12);
        std::uint32_t b = 0, h = 0, s = 0;
        for (const auto& w : aggregate_windows(recs, size)) {
            b += w.malicious;
            h += w.honest;
            s += w.skipped;
            CHECK(w.malicious + w.honest + w.skipped == w.end_round - w.start_round + 1);
        }
        CHECK(b == bad);
        CHECK(h == good);
        CHECK(s == skipped);
    }

    std::vector<RoundRecord> mixed;
    for (Round r = 0; r < 10; ++r) mixed.push_back(record(r, NodeId{static_cast<std::uint32_t>(r)}, r % 3 == 0 && r < 9));
    const auto one = aggregate_windows(mixed, 10);
    CHECK(one[0].malicious == 3);
    CHECK(one[0].honest == 7);

    CHECK_THROWS_AS(aggregate_windows(hundred, 0), Error);
}

TEST_CASE("rounds.csv round-trips")
{
    for (std::uint64_t seed : testing::kSeeds) {
        Scenario s = load_scenario(testing::source_path("scenarios/fig5_comparison.yaml"));
        s.seed = seed;
        s.rounds = 20;
        const auto records = run_simulation(s).records;
        const auto back = parse_rounds_csv(rounds_csv(records));
        REQUIRE(back.size() == records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& a = records[i];
            const auto& b = back[i];
            CHECK(a.round == b.round);
            CHECK(a.elected == b.elected);
            CHECK(a.elected_was_malicious == b.elected_was_malicious);
            CHECK(a.penalty_applied == b.penalty_applied);
            CHECK(a.reward_applied == b.reward_applied);
            CHECK(a.behaviors_detected == b.behaviors_detected);
            REQUIRE(a.snapshots.size() == b.snapshots.size());
            for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
                const auto& x = a.snapshots[k];
                const auto& y = b.snapshots[k];
                CHECK(x.id == y.id);
                CHECK(std::fabs(x.attack_probability - y.attack_probability) <= 1e-12);
                CHECK(std::fabs(x.balance - y.balance) <= 1e-12 * std::max(1.0, std::fabs(x.balance)));
                CHECK(x.last_attack_age == y.last_attack_age);
                CHECK(x.restriction_count == y.restriction_count);
                CHECK(x.is_active == y.is_active);
            }
        }
    }
    std::string msg;
    CHECK(code_of([] { parse_rounds_csv("round,elected\n0,x\n"); }, msg) == ErrorCode::Parse);
}

TEST_CASE("format_real")
{
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(-0.0) == "0");
    CHECK(format_real(90.0) == "90");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("cmd_run")
{
    TempDir dir("run");
    const fs::path scenario = dir.write("small.yaml", kSmall);
    const RunManifest m = cmd_run(scenario, std::nullopt, dir.path / "a");
    std::vector<std::string> names;
    for (const auto& f : m.files) names.push_back(f.name);
    CHECK(names == std::vector<std::string>{"rounds.csv", "windows.csv", "summary.json"});
    for (const auto& f : m.files) CHECK(sha256_hex(read_file(dir.path / "a" / f.name)) == f.sha256);
    CHECK(fs::exists(dir.path / "a" / "manifest.json"));

    const auto windows = csv_rows(read_file(dir.path / "a" / "windows.csv"));
    CHECK(windows.size() == 2); // header plus one window

    const auto summary = nlohmann::json::parse(read_file(dir.path / "a" / "summary.json"));
    CHECK(summary["scenario"]["rounds"] == 10);
    CHECK(summary["summary"].contains("rounds_to_elimination"));

    const auto manifest = nlohmann::json::parse(read_file(dir.path / "a" / "manifest.json"));
    CHECK(manifest["files"].size() == 3);

    const RunManifest again = cmd_run(scenario, std::nullopt, dir.path / "b");
    const RunManifest other = cmd_run(scenario, 99, dir.path / "c");
    for (std::size_t i = 0; i < m.files.size(); ++i) CHECK(m.files[i] == again.files[i]);
    CHECK(m.files[0].sha256 != other.files[0].sha256);
    CHECK(other.seed_override == 99u);

    std::string msg;
    CHECK(code_of([&] { cmd_run(scenario, std::nullopt, scenario / "inside_a_file"); }, msg) == ErrorCode::Io);
}

TEST_CASE("cmd_compare")
{
    TempDir dir("compare");
    const fs::path scenario = dir.write("honest.yaml", "seed: 2\nrounds: 15\nnodes:\n  - count: 12\n");
    const RunManifest m = cmd_compare(scenario, std::nullopt, dir.path);
    REQUIRE(m.files.size() == 2);
    const auto rows = csv_rows(read_file(dir.path / "comparison.csv"));
    REQUIRE(rows.size() == 16);
    CHECK(rows[0] == std::vector<std::string>{"round", "active_malicious_mrlpos", "active_malicious_pos",
                                              "active_malicious_dpos"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][1] == "0");
        CHECK(rows[i][2] == "0");
        CHECK(rows[i][3] == "0");
    }
    const auto summary = nlohmann::json::parse(read_file(dir.path / "summary.json"));
    for (const char* e : {"mrlpos", "pos", "dpos"}) CHECK(summary["electors"][e]["rounds_to_elimination"] == 0);
}

TEST_CASE("cmd_trace")
{
    TempDir dir("trace");
    cmd_trace(testing::source_path("scenarios/fig4_trace.yaml"), dir.path);
    const auto rows = csv_rows(read_file(dir.path / "trace.csv"));
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] ==
          std::vector<std::string>{"round", "attack_probability", "last_attack_age", "restrictions", "balance", "is_active"});
    const char* ages[] = {"3", "2", "1", "0", "0", "0"};
    for (std::size_t i = 0; i < 6; ++i) CHECK(rows[i + 1][2] == ages[i]);

    const fs::path honest = dir.write("honest.yaml", "steps:\n  - elected: true\n  - elected: false\n  - elected: true\n");
    cmd_trace(honest, dir.path / "h");
    const auto h = csv_rows(read_file(dir.path / "h" / "trace.csv"));
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i][1] == "0");

    std::string msg;
    const fs::path bad = dir.write("bad.yaml", "steps:\n  - elected: true\n    behaviors: [b17]\n");
    CHECK(code_of([&] { cmd_trace(bad, dir.path / "x"); }, msg) != ErrorCode{});
}
