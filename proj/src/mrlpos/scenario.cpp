// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mrlpos {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

std::string at_line(const YAML::Node& n) { return " (line " + std::to_string(line_of(n)) + ")"; }

// Walks a YAML document, remembering the line of every field so that
// validation errors raised later can point back into the file.
class Reader
{
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    YAML::Node load(const std::string& text)
    {
        try {
            YAML::Node root = YAML::Load(text);
            if (root.IsNull()) return YAML::Node(YAML::NodeType::Map);
            if (!root.IsMap()) throw Error(ErrorCode::Parse, source_ + ": top level must be a mapping" + at_line(root));
            return root;
        } catch (const YAML::ParserException& e) {
            throw Error(ErrorCode::Parse, source_ + ": " + e.msg + " (line " + std::to_string(e.mark.line + 1) + ")");
        }
    }

    void expect_map(const YAML::Node& n, const std::string& path) const
    {
        if (!n.IsMap()) throw Error(ErrorCode::Parse, path + " must be a mapping" + at_line(n));
    }

    /** Records the line of every key under `prefix` and rejects keys outside `allowed`. */
    void check_keys(const YAML::Node& map, const std::string& prefix, const std::set<std::string>& allowed)
    {
        for (auto it = map.begin(); it != map.end(); ++it) {
            const auto key = it->first.as<std::string>();
            const std::string path = prefix.empty() ? key : prefix + "." + key;
            if (!allowed.count(key)) {
                throw Error(ErrorCode::UnknownKey, "unknown key '" + path + "'" + at_line(it->first));
            }
            lines_[path] = line_of(it->first);
        }
    }

    double real(const YAML::Node& n, const std::string& path) const
    {
        try {
            return n.as<double>();
        } catch (const YAML::Exception&) {
            throw Error(ErrorCode::Parse, path + ": expected a number" + at_line(n));
        }
    }

    std::uint64_t integer(const YAML::Node& n, const std::string& path,
                          std::uint64_t max = std::numeric_limits<std::uint32_t>::max()) const
    {
        long long v = 0;
        try {
            v = n.as<long long>();
        } catch (const YAML::Exception&) {
            throw Error(ErrorCode::Parse, path + ": expected an integer" + at_line(n));
        }
        if (v < 0 || static_cast<unsigned long long>(v) > max) {
            throw Error(ErrorCode::Range, path + " must be in [0, " + std::to_string(max) + "]" + at_line(n));
        }
        return static_cast<std::uint64_t>(v);
    }

    std::uint64_t seed(const YAML::Node& n, const std::string& path) const
    {
        try {
            return n.as<std::uint64_t>();
        } catch (const YAML::Exception&) {
            throw Error(ErrorCode::Parse, path + ": expected a non-negative integer" + at_line(n));
        }
    }

    bool boolean(const YAML::Node& n, const std::string& path) const
    {
        try {
            return n.as<bool>();
        } catch (const YAML::Exception&) {
            throw Error(ErrorCode::Parse, path + ": expected true or false" + at_line(n));
        }
    }

    std::string text(const YAML::Node& n, const std::string& path) const
    {
        if (!n.IsScalar()) throw Error(ErrorCode::Parse, path + ": expected a string" + at_line(n));
        return n.as<std::string>();
    }

    /** Runs a validate() call, appending the offending field's line to a range error. */
    template <typename F>
    void validated(F&& check) const
    {
        try {
            check();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Range) throw;
            const std::string msg = e.what();
            const std::string field = msg.substr(0, msg.find(' '));
            auto it = lines_.find(field);
            throw Error(ErrorCode::Range, it == lines_.end() ? msg : msg + " (line " + std::to_string(it->second) + ")");
        }
    }

private:
    std::string source_;
    std::map<std::string, int> lines_;
};

DetectionConfig read_detection(Reader& rd, const YAML::Node& n)
{
    static const std::set<std::string> keys{
        "block_share_threshold", "hash_rate_factor",        "fork_rate_threshold",
        "window",                "join_spike_threshold",    "spam_message_threshold",
        "fee_spike_factor",      "large_transfer_factor",   "contract_activity_threshold",
        "error_threshold",       "resource_threshold",      "address_prefix_octets",
    };
    rd.expect_map(n, "detection");
    rd.check_keys(n, "detection", keys);
    DetectionConfig c;
    auto real = [&](const char* k, double& out) {
        if (n[k]) out = rd.real(n[k], std::string("detection.") + k);
    };
    auto count = [&](const char* k, std::uint32_t& out) {
        if (n[k]) out = static_cast<std::uint32_t>(rd.integer(n[k], std::string("detection.") + k));
    };
    real("block_share_threshold", c.block_share_threshold);
    real("hash_rate_factor", c.hash_rate_factor);
    count("fork_rate_threshold", c.fork_rate_threshold);
    count("window", c.window);
    count("join_spike_threshold", c.join_spike_threshold);
    count("spam_message_threshold", c.spam_message_threshold);
    real("fee_spike_factor", c.fee_spike_factor);
    real("large_transfer_factor", c.large_transfer_factor);
    count("contract_activity_threshold", c.contract_activity_threshold);
    count("error_threshold", c.error_threshold);
    real("resource_threshold", c.resource_threshold);
    count("address_prefix_octets", c.address_prefix_octets);
    return c;
}

// Missing behaviors keep a raw weight of 1 before normalization.
Weights read_weights(Reader& rd, const YAML::Node& n)
{
    std::set<std::string> keys;
    for (BehaviorId b : kAllBehaviors) keys.insert(to_string(b));
    rd.expect_map(n, "weights");
    rd.check_keys(n, "weights", keys);
    BehaviorVector raw;
    raw.fill(1.0);
    for (BehaviorId b : kAllBehaviors) {
        const std::string k = to_string(b);
        if (n[k]) raw[index_of(b)] = rd.real(n[k], "weights." + k);
    }
    Weights w;
    rd.validated([&] { w = Weights(raw); });
    return w;
}

LearningParams read_learning(Reader& rd, const YAML::Node& n)
{
    static const std::set<std::string> keys{"alpha", "gamma", "honest_reward_signal", "attack_age_max",
                                            "deactivation_probability", "fee", "threshold"};
    rd.expect_map(n, "learning");
    rd.check_keys(n, "learning", keys);
    LearningParams p;
    auto real = [&](const char* k, double& out) {
        if (n[k]) out = rd.real(n[k], std::string("learning.") + k);
    };
    real("alpha", p.alpha);
    real("gamma", p.gamma);
    real("honest_reward_signal", p.honest_reward_signal);
    if (n["attack_age_max"]) p.attack_age_max = static_cast<std::uint32_t>(rd.integer(n["attack_age_max"], "learning.attack_age_max"));
    real("deactivation_probability", p.deactivation_probability);
    real("fee", p.fee);
    real("threshold", p.threshold);
    return p;
}

TrafficParams read_traffic(Reader& rd, const YAML::Node& n)
{
    static const std::set<std::string> keys{"txs_per_round",  "pending_txs", "mean_amount",
                                            "amount_spread",  "mean_fee",    "fee_spread",
                                            "contract_share", "contracts",   "max_rejoins"};
    rd.expect_map(n, "traffic");
    rd.check_keys(n, "traffic", keys);
    TrafficParams t;
    auto real = [&](const char* k, double& out) {
        if (n[k]) out = rd.real(n[k], std::string("traffic.") + k);
    };
    auto count = [&](const char* k, std::uint32_t& out) {
        if (n[k]) out = static_cast<std::uint32_t>(rd.integer(n[k], std::string("traffic.") + k));
    };
    count("txs_per_round", t.txs_per_round);
    count("pending_txs", t.pending_txs);
    real("mean_amount", t.mean_amount);
    real("amount_spread", t.amount_spread);
    real("mean_fee", t.mean_fee);
    real("fee_spread", t.fee_spread);
    real("contract_share", t.contract_share);
    count("contracts", t.contracts);
    count("max_rejoins", t.max_rejoins);
    return t;
}

StrategyDescriptor read_strategy(Reader& rd, const YAML::Node& n, const std::string& path, double persistence)
{
    const std::string name = rd.text(n, path);
    if (name == "honest") {
        StrategyDescriptor s = StrategyDescriptor::honest();
        s.persistence = persistence;
        return s;
    }
    const auto kind = parse_attack_kind(name);
    if (!kind) {
        throw Error(ErrorCode::Parse, path + ": unknown strategy '" + name +
                                          "' (expected honest, fifty_one_percent, double_spend, sybil, replay, "
                                          "contract_exploit or ddos)" + at_line(n));
    }
    return StrategyDescriptor::attacker(*kind, persistence);
}

std::vector<NodeGroup> read_nodes(Reader& rd, const YAML::Node& n)
{
    static const std::set<std::string> keys{"count", "stake", "initial_balance", "strategy", "persistence"};
    if (!n.IsSequence()) throw Error(ErrorCode::Parse, "nodes must be a list" + at_line(n));
    std::vector<NodeGroup> groups;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const YAML::Node g = n[i];
        const std::string path = "nodes[" + std::to_string(i) + "]";
        rd.expect_map(g, path);
        rd.check_keys(g, path, keys);
        NodeGroup group;
        if (g["count"]) group.count = static_cast<std::uint32_t>(rd.integer(g["count"], path + ".count"));
        if (g["stake"]) group.stake = rd.real(g["stake"], path + ".stake");
        if (g["initial_balance"]) group.initial_balance = rd.real(g["initial_balance"], path + ".initial_balance");
        const double persistence = g["persistence"] ? rd.real(g["persistence"], path + ".persistence") : 1.0;
        group.strategy = g["strategy"] ? read_strategy(rd, g["strategy"], path + ".strategy", persistence)
                                       : StrategyDescriptor::honest();
        group.strategy.persistence = persistence;
        groups.push_back(group);
    }
    return groups;
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario parse_scenario(const std::string& text, const std::string& source)
{
    static const std::set<std::string> keys{"seed",  "rounds",    "elector",  "delegate_count", "nodes",
                                            "detection", "weights", "learning", "traffic"};
    Reader rd(source);
    const YAML::Node root = rd.load(text);
    rd.check_keys(root, "", keys);

    Scenario s;
    if (root["seed"]) s.seed = rd.seed(root["seed"], "seed");
    if (root["rounds"]) s.rounds = static_cast<std::uint32_t>(rd.integer(root["rounds"], "rounds"));
    if (root["elector"]) {
        const std::string name = rd.text(root["elector"], "elector");
        const auto e = parse_elector(name);
        if (!e) {
            throw Error(ErrorCode::Parse, "elector: unknown value '" + name + "' (expected mrlpos, pos or dpos)" +
                                              at_line(root["elector"]));
        }
        s.elector = *e;
    }
    if (root["delegate_count"]) s.delegate_count = static_cast<std::uint32_t>(rd.integer(root["delegate_count"], "delegate_count"));
    if (root["nodes"]) s.nodes = read_nodes(rd, root["nodes"]);
    if (root["detection"]) s.detection = read_detection(rd, root["detection"]);
    if (root["weights"]) s.weights = read_weights(rd, root["weights"]);
    if (root["learning"]) s.learning = read_learning(rd, root["learning"]);
    if (root["traffic"]) s.traffic = read_traffic(rd, root["traffic"]);

    rd.validated([&] { s.validate(); });
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    return parse_scenario(read_file(path), path.string());
}

TraceScript parse_trace_script(const std::string& text, const std::string& source)
{
    static const std::set<std::string> keys{"stake", "initial_balance", "weights", "learning", "steps"};
    static const std::set<std::string> step_keys{"elected", "behaviors"};
    Reader rd(source);
    const YAML::Node root = rd.load(text);
    rd.check_keys(root, "", keys);

    TraceScript script;
    if (root["stake"]) script.stake = rd.real(root["stake"], "stake");
    if (root["initial_balance"]) script.initial_balance = rd.real(root["initial_balance"], "initial_balance");
    if (root["weights"]) script.weights = read_weights(rd, root["weights"]);
    if (root["learning"]) script.learning = read_learning(rd, root["learning"]);

    const YAML::Node steps = root["steps"];
    if (!steps || !steps.IsSequence() || steps.size() == 0) {
        throw Error(ErrorCode::Parse, "steps must be a non-empty list" + (steps ? at_line(steps) : std::string()));
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const YAML::Node st = steps[i];
        const std::string path = "steps[" + std::to_string(i) + "]";
        rd.expect_map(st, path);
        rd.check_keys(st, path, step_keys);
        TraceStep step;
        if (st["elected"]) step.elected = rd.boolean(st["elected"], path + ".elected");
        if (const YAML::Node bs = st["behaviors"]) {
            if (!bs.IsSequence()) throw Error(ErrorCode::Parse, path + ".behaviors must be a list" + at_line(bs));
            for (const auto& b : bs) {
                const std::string name = rd.text(b, path + ".behaviors");
                const auto id = parse_behavior(name);
                if (!id) throw Error(ErrorCode::Parse, path + ".behaviors: unknown behavior '" + name + "'" + at_line(b));
                step.behaviors.push_back(*id);
            }
        }
        script.steps.push_back(std::move(step));
    }

    rd.validated([&] {
        if (!(script.stake > 0.0)) throw Error(ErrorCode::Range, "stake must be > 0");
        script.learning.validate();
    });
    return script;
}

TraceScript load_trace_script(const std::filesystem::path& path)
{
    return parse_trace_script(read_file(path), path.string());
}

} // namespace mrlpos
