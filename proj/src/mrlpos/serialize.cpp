// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/serialize.hpp"

namespace mrlpos {

namespace {

template <typename T>
std::optional<T> opt(const Json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

Json behavior_map(const BehaviorVector& v)
{
    Json j = Json::object();
    for (BehaviorId b : kAllBehaviors) j[to_string(b)] = v[index_of(b)];
    return j;
}

BehaviorVector behavior_vector(const Json& j)
{
    BehaviorVector v{};
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto b = parse_behavior(it.key());
        if (!b) throw Error(ErrorCode::Parse, "unknown behavior '" + it.key() + "'");
        v[index_of(*b)] = it.value().get<double>();
    }
    return v;
}

} // namespace

void to_json(Json& j, const NodeId& v) { j = v.value; }
void from_json(const Json& j, NodeId& v) { v.value = j.get<std::uint32_t>(); }

void to_json(Json& j, const BehaviorId& v) { j = to_string(v); }
void from_json(const Json& j, BehaviorId& v)
{
    const auto s = j.get<std::string>();
    const auto b = parse_behavior(s);
    if (!b) throw Error(ErrorCode::Parse, "unknown behavior '" + s + "'");
    v = *b;
}

void to_json(Json& j, const AttackKind& v) { j = std::string(to_string(v)); }
void from_json(const Json& j, AttackKind& v)
{
    const auto s = j.get<std::string>();
    const auto k = parse_attack_kind(s);
    if (!k) throw Error(ErrorCode::Parse, "unknown attack kind '" + s + "'");
    v = *k;
}

void to_json(Json& j, const BehaviorScores& v) { j = behavior_map(v.values()); }
void from_json(const Json& j, BehaviorScores& v)
{
    const BehaviorVector raw = behavior_vector(j);
    v = BehaviorScores{};
    for (BehaviorId b : kAllBehaviors) v.set(b, raw[index_of(b)]);
}

void to_json(Json& j, const ReputationTable& v)
{
    j = Json{{"attack_probability", v.attack_probability},
             {"last_attack_age", v.last_attack_age},
             {"restrictions", v.restrictions},
             {"is_active", v.is_active},
             {"behavior_scores", v.behavior_scores}};
}
void from_json(const Json& j, ReputationTable& v)
{
    j.at("attack_probability").get_to(v.attack_probability);
    j.at("last_attack_age").get_to(v.last_attack_age);
    j.at("restrictions").get_to(v.restrictions);
    j.at("is_active").get_to(v.is_active);
    j.at("behavior_scores").get_to(v.behavior_scores);
}

void to_json(Json& j, const StrategyDescriptor& v)
{
    j = Json{{"kind", v.is_malicious() ? std::string(to_string(v.attack)) : std::string("honest")},
             {"persistence", v.persistence}};
}
void from_json(const Json& j, StrategyDescriptor& v)
{
    const auto kind = j.at("kind").get<std::string>();
    const double p = j.value("persistence", 1.0);
    if (kind == "honest") {
        v = StrategyDescriptor::honest();
        v.persistence = p;
        return;
    }
    const auto k = parse_attack_kind(kind);
    if (!k) throw Error(ErrorCode::Parse, "unknown strategy '" + kind + "'");
    v = StrategyDescriptor::attacker(*k, p);
}

void to_json(Json& j, const NodeState& v)
{
    j = Json{{"id", v.id}, {"stake", v.stake}, {"balance", v.balance}, {"reputation", v.reputation},
             {"strategy", v.strategy}};
}
void from_json(const Json& j, NodeState& v)
{
    j.at("id").get_to(v.id);
    j.at("stake").get_to(v.stake);
    j.at("balance").get_to(v.balance);
    j.at("reputation").get_to(v.reputation);
    j.at("strategy").get_to(v.strategy);
}

void to_json(Json& j, const Transaction& v)
{
    j = Json{{"tx_id", v.tx_id},   {"sender", v.sender},       {"receiver", v.receiver},
             {"amount", v.amount}, {"fee", v.fee},             {"timestamp", v.timestamp},
             {"contract_ref", v.contract_ref ? Json(*v.contract_ref) : Json(nullptr)}};
}
void from_json(const Json& j, Transaction& v)
{
    j.at("tx_id").get_to(v.tx_id);
    j.at("sender").get_to(v.sender);
    j.at("receiver").get_to(v.receiver);
    j.at("amount").get_to(v.amount);
    j.at("fee").get_to(v.fee);
    j.at("timestamp").get_to(v.timestamp);
    v.contract_ref = opt<std::string>(j, "contract_ref");
}

void to_json(Json& j, const Block& v)
{
    j = Json{{"height", v.height},
             {"proposer", v.proposer},
             {"transactions", v.transactions},
             {"parent", v.parent ? Json(*v.parent) : Json(nullptr)},
             {"confirmed", v.confirmed}};
}
void from_json(const Json& j, Block& v)
{
    j.at("height").get_to(v.height);
    j.at("proposer").get_to(v.proposer);
    j.at("transactions").get_to(v.transactions);
    v.parent = opt<std::uint64_t>(j, "parent");
    j.at("confirmed").get_to(v.confirmed);
}

void to_json(Json& j, const VoteClaim& v) { j = Json{{"claimed", v.claimed}, {"entitled", v.entitled}}; }
void from_json(const Json& j, VoteClaim& v)
{
    j.at("claimed").get_to(v.claimed);
    j.at("entitled").get_to(v.entitled);
}

void to_json(Json& j, const Join& v) { j = Json{{"node", v.node}, {"address", v.address}}; }
void from_json(const Json& j, Join& v)
{
    j.at("node").get_to(v.node);
    j.at("address").get_to(v.address);
}

void to_json(Json& j, const AccountView& v) { j = Json{{"opening", v.opening}, {"reported", v.reported}}; }
void from_json(const Json& j, AccountView& v)
{
    j.at("opening").get_to(v.opening);
    j.at("reported").get_to(v.reported);
}

void to_json(Json& j, const FeeSample& v) { j = Json{{"round", v.round}, {"mean_fee", v.mean_fee}}; }
void from_json(const Json& j, FeeSample& v)
{
    j.at("round").get_to(v.round);
    j.at("mean_fee").get_to(v.mean_fee);
}

namespace {

// Per-node maps serialize as arrays of {"node", "value"} so the keys stay integers.
template <typename V>
Json node_map(const std::map<NodeId, V>& m)
{
    Json out = Json::array();
    for (const auto& [id, value] : m) out.push_back(Json{{"node", id}, {"value", value}});
    return out;
}

template <typename V>
std::map<NodeId, V> read_node_map(const Json& j)
{
    std::map<NodeId, V> out;
    for (const auto& entry : j) out[entry.at("node").get<NodeId>()] = entry.at("value").get<V>();
    return out;
}

} // namespace

void to_json(Json& j, const RoundEvents& v)
{
    j = Json{{"round", v.round},
             {"proposed_blocks", v.proposed_blocks},
             {"unconfirmed_pool", v.unconfirmed_pool},
             {"confirmed_txs", v.confirmed_txs},
             {"votes", node_map(v.votes)},
             {"joins", v.joins},
             {"per_node_message_count", node_map(v.per_node_message_count)},
             {"per_node_error_count", node_map(v.per_node_error_count)},
             {"per_node_resource_use", node_map(v.per_node_resource_use)},
             {"per_node_hash_rate", node_map(v.per_node_hash_rate)},
             {"accounts", node_map(v.accounts)},
             {"fork_count", v.fork_count},
             {"fee_history", v.fee_history}};
}
void from_json(const Json& j, RoundEvents& v)
{
    j.at("round").get_to(v.round);
    j.at("proposed_blocks").get_to(v.proposed_blocks);
    j.at("unconfirmed_pool").get_to(v.unconfirmed_pool);
    j.at("confirmed_txs").get_to(v.confirmed_txs);
    v.votes = read_node_map<VoteClaim>(j.at("votes"));
    j.at("joins").get_to(v.joins);
    v.per_node_message_count = read_node_map<std::uint32_t>(j.at("per_node_message_count"));
    v.per_node_error_count = read_node_map<std::uint32_t>(j.at("per_node_error_count"));
    v.per_node_resource_use = read_node_map<double>(j.at("per_node_resource_use"));
    v.per_node_hash_rate = read_node_map<double>(j.at("per_node_hash_rate"));
    v.accounts = read_node_map<AccountView>(j.at("accounts"));
    j.at("fork_count").get_to(v.fork_count);
    j.at("fee_history").get_to(v.fee_history);
}

void to_json(Json& j, const DetectionReport& v)
{
    j = Json::array();
    for (const auto& [id, row] : v.rows()) j.push_back(Json{{"node", id}, {"signals", behavior_map(row)}});
}
void from_json(const Json& j, DetectionReport& v)
{
    v = DetectionReport{};
    for (const auto& entry : j) {
        const NodeId id = entry.at("node").get<NodeId>();
        const BehaviorVector row = behavior_vector(entry.at("signals"));
        for (BehaviorId b : kAllBehaviors) v.set(id, b, row[index_of(b)]);
    }
}

void to_json(Json& j, const DetectionConfig& v)
{
    j = Json{{"block_share_threshold", v.block_share_threshold},
             {"hash_rate_factor", v.hash_rate_factor},
             {"fork_rate_threshold", v.fork_rate_threshold},
             {"window", v.window},
             {"join_spike_threshold", v.join_spike_threshold},
             {"spam_message_threshold", v.spam_message_threshold},
             {"fee_spike_factor", v.fee_spike_factor},
             {"large_transfer_factor", v.large_transfer_factor},
             {"contract_activity_threshold", v.contract_activity_threshold},
             {"error_threshold", v.error_threshold},
             {"resource_threshold", v.resource_threshold},
             {"address_prefix_octets", v.address_prefix_octets}};
}
void from_json(const Json& j, DetectionConfig& v)
{
    j.at("block_share_threshold").get_to(v.block_share_threshold);
    j.at("hash_rate_factor").get_to(v.hash_rate_factor);
    j.at("fork_rate_threshold").get_to(v.fork_rate_threshold);
    j.at("window").get_to(v.window);
    j.at("join_spike_threshold").get_to(v.join_spike_threshold);
    j.at("spam_message_threshold").get_to(v.spam_message_threshold);
    j.at("fee_spike_factor").get_to(v.fee_spike_factor);
    j.at("large_transfer_factor").get_to(v.large_transfer_factor);
    j.at("contract_activity_threshold").get_to(v.contract_activity_threshold);
    j.at("error_threshold").get_to(v.error_threshold);
    j.at("resource_threshold").get_to(v.resource_threshold);
    j.at("address_prefix_octets").get_to(v.address_prefix_octets);
}

void to_json(Json& j, const Weights& v) { j = behavior_map(v.values()); }
void from_json(const Json& j, Weights& v) { v = Weights(behavior_vector(j)); }

void to_json(Json& j, const LearningParams& v)
{
    j = Json{{"alpha", v.alpha},
             {"gamma", v.gamma},
             {"honest_reward_signal", v.honest_reward_signal},
             {"attack_age_max", v.attack_age_max},
             {"deactivation_probability", v.deactivation_probability},
             {"fee", v.fee},
             {"threshold", v.threshold}};
}
void from_json(const Json& j, LearningParams& v)
{
    j.at("alpha").get_to(v.alpha);
    j.at("gamma").get_to(v.gamma);
    j.at("honest_reward_signal").get_to(v.honest_reward_signal);
    j.at("attack_age_max").get_to(v.attack_age_max);
    j.at("deactivation_probability").get_to(v.deactivation_probability);
    j.at("fee").get_to(v.fee);
    j.at("threshold").get_to(v.threshold);
}

void to_json(Json& j, const TrafficParams& v)
{
    j = Json{{"txs_per_round", v.txs_per_round},   {"pending_txs", v.pending_txs},
             {"mean_amount", v.mean_amount},       {"amount_spread", v.amount_spread},
             {"mean_fee", v.mean_fee},             {"fee_spread", v.fee_spread},
             {"contract_share", v.contract_share}, {"contracts", v.contracts},
             {"max_rejoins", v.max_rejoins}};
}
void from_json(const Json& j, TrafficParams& v)
{
    j.at("txs_per_round").get_to(v.txs_per_round);
    j.at("pending_txs").get_to(v.pending_txs);
    j.at("mean_amount").get_to(v.mean_amount);
    j.at("amount_spread").get_to(v.amount_spread);
    j.at("mean_fee").get_to(v.mean_fee);
    j.at("fee_spread").get_to(v.fee_spread);
    j.at("contract_share").get_to(v.contract_share);
    j.at("contracts").get_to(v.contracts);
    j.at("max_rejoins").get_to(v.max_rejoins);
}

void to_json(Json& j, const NodeGroup& v)
{
    const Json strategy = v.strategy;
    j = Json{{"count", v.count},
             {"stake", v.stake},
             {"initial_balance", v.initial_balance},
             {"strategy", strategy.at("kind")},
             {"persistence", v.strategy.persistence}};
}
void from_json(const Json& j, NodeGroup& v)
{
    j.at("count").get_to(v.count);
    j.at("stake").get_to(v.stake);
    j.at("initial_balance").get_to(v.initial_balance);
    Json strategy{{"kind", j.at("strategy")}, {"persistence", j.at("persistence")}};
    strategy.get_to(v.strategy);
}

void to_json(Json& j, const Scenario& v)
{
    j = Json{{"seed", v.seed},
             {"rounds", v.rounds},
             {"elector", std::string(to_string(v.elector))},
             {"delegate_count", v.delegate_count},
             {"nodes", v.nodes},
             {"detection", v.detection},
             {"weights", v.weights},
             {"learning", v.learning},
             {"traffic", v.traffic}};
}
void from_json(const Json& j, Scenario& v)
{
    j.at("seed").get_to(v.seed);
    j.at("rounds").get_to(v.rounds);
    const auto name = j.at("elector").get<std::string>();
    const auto e = parse_elector(name);
    if (!e) throw Error(ErrorCode::Parse, "unknown elector '" + name + "'");
    v.elector = *e;
    j.at("delegate_count").get_to(v.delegate_count);
    j.at("nodes").get_to(v.nodes);
    j.at("detection").get_to(v.detection);
    j.at("weights").get_to(v.weights);
    j.at("learning").get_to(v.learning);
    j.at("traffic").get_to(v.traffic);
}

void to_json(Json& j, const Summary& v)
{
    j = Json{{"rounds_run", v.rounds_run},
             {"halted_early", v.halted_early},
             {"rounds_to_elimination", v.rounds_to_elimination ? Json(*v.rounds_to_elimination) : Json(nullptr)},
             {"final_active_malicious", v.final_active_malicious},
             {"final_active_honest", v.final_active_honest},
             {"eliminated_malicious", v.eliminated_malicious},
             {"eliminated_honest", v.eliminated_honest}};
}

} // namespace mrlpos
