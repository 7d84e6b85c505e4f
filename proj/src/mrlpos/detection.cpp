// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace mrlpos {

namespace {

void require(bool ok, const char* field, const char* range)
{
    if (!ok) throw Error(ErrorCode::Range, std::string("detection.") + field + " must be " + range);
}

History window_of(History history, const DetectionConfig& cfg)
{
    if (history.size() > cfg.window) return history.subspan(history.size() - cfg.window);
    return history;
}

/** Every distinct (tx_id, timestamp) a node put on the wire this round: confirmed first, then the pool. */
std::vector<const Transaction*> submitted_txs(const RoundEvents& events)
{
    std::set<std::pair<std::uint64_t, Round>> seen;
    std::vector<const Transaction*> out;
    auto take = [&](const Transaction& tx) {
        if (seen.emplace(tx.tx_id, tx.timestamp).second) out.push_back(&tx);
    };
    for (const auto& tx : events.confirmed_txs) take(tx);
    for (const auto& block : events.unconfirmed_pool) {
        for (const auto& tx : block.transactions) take(tx);
    }
    return out;
}

bool differs(double a, double b)
{
    return std::fabs(a - b) > 1e-6 * std::max(1.0, std::fabs(a));
}

} // namespace

void DetectionConfig::validate() const
{
    require(block_share_threshold > 0.0 && block_share_threshold <= 1.0, "block_share_threshold", "in (0, 1]");
    require(hash_rate_factor > 1.0, "hash_rate_factor", "> 1");
    require(fork_rate_threshold > 0, "fork_rate_threshold", "> 0");
    require(window > 0, "window", "> 0");
    require(join_spike_threshold > 0, "join_spike_threshold", "> 0");
    require(spam_message_threshold > 0, "spam_message_threshold", "> 0");
    require(fee_spike_factor > 1.0, "fee_spike_factor", "> 1");
    require(large_transfer_factor > 1.0, "large_transfer_factor", "> 1");
    require(contract_activity_threshold > 0, "contract_activity_threshold", "> 0");
    require(error_threshold > 0, "error_threshold", "> 0");
    require(resource_threshold > 0.0 && resource_threshold <= 1.0, "resource_threshold", "in (0, 1]");
    require(address_prefix_octets >= 1 && address_prefix_octets <= 4, "address_prefix_octets", "in [1, 4]");
}

Weights::Weights()
{
    w_.fill(1.0 / static_cast<double>(kBehaviorCount));
}

Weights::Weights(const BehaviorVector& raw)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < kBehaviorCount; ++i) {
        if (!(raw[i] >= 0.0) || !std::isfinite(raw[i])) {
            throw Error(ErrorCode::Range, "weights.b" + std::to_string(i + 1) + " must be a finite value >= 0");
        }
        sum += raw[i];
    }
    if (!(sum > 0.0)) throw Error(ErrorCode::Range, "weights must not all be zero");
    // Already-normalized input is kept bit-for-bit so that normalizing is idempotent.
    if (std::fabs(sum - 1.0) <= 1e-12) {
        w_ = raw;
        return;
    }
    for (std::size_t i = 0; i < kBehaviorCount; ++i) w_[i] = raw[i] / sum;
}

std::string address_prefix(const std::string& address, std::uint32_t octets)
{
    std::size_t pos = 0;
    for (std::uint32_t i = 0; i < octets; ++i) {
        pos = address.find('.', pos);
        if (pos == std::string::npos) return address;
        if (i + 1 < octets) ++pos;
    }
    return address.substr(0, pos);
}

DetectionReport detect_fifty_one(const RoundEvents& events, History history, const DetectionConfig& cfg)
{
    DetectionReport report;
    if (history.empty()) return report;
    const History recent = window_of(history, cfg);

    // b1, b3: block production and forks over the window, current round included.
    std::map<NodeId, std::uint32_t> produced;
    std::map<NodeId, std::uint32_t> forks;
    std::uint32_t total_blocks = 0;
    auto tally = [&](const RoundEvents& ev) {
        for (const auto& block : ev.proposed_blocks) {
            ++produced[block.proposer];
            ++total_blocks;
            if (!block.confirmed) ++forks[block.proposer];
        }
    };
    for (const auto& ev : recent) tally(ev);
    tally(events);

    if (total_blocks > 0) {
        for (const auto& [node, count] : produced) {
            if (static_cast<double>(count) / total_blocks > cfg.block_share_threshold) {
                report.set(node, BehaviorId::B1, 1.0);
            }
        }
    }
    for (const auto& [node, count] : forks) {
        if (count >= cfg.fork_rate_threshold) report.set(node, BehaviorId::B3, 1.0);
    }

    // b2: hash rate against the network mean.
    if (!events.per_node_hash_rate.empty()) {
        double sum = 0.0;
        for (const auto& [node, rate] : events.per_node_hash_rate) sum += rate;
        const double mean = sum / static_cast<double>(events.per_node_hash_rate.size());
        if (mean > 0.0) {
            for (const auto& [node, rate] : events.per_node_hash_rate) {
                if (rate > cfg.hash_rate_factor * mean) report.set(node, BehaviorId::B2, 1.0);
            }
        }
    }
    return report;
}

DetectionReport detect_double_spend(const RoundEvents& events, const DetectionConfig&)
{
    DetectionReport report;

    // b4: one tx id carried by two or more unconfirmed blocks.
    std::map<std::uint64_t, std::set<std::size_t>> carriers;
    std::map<std::uint64_t, NodeId> sender_of;
    for (std::size_t i = 0; i < events.unconfirmed_pool.size(); ++i) {
        for (const auto& tx : events.unconfirmed_pool[i].transactions) {
            carriers[tx.tx_id].insert(i);
            sender_of.emplace(tx.tx_id, tx.sender);
        }
    }
    for (const auto& [id, blocks] : carriers) {
        if (blocks.size() >= 2) report.set(sender_of[id], BehaviorId::B4, 1.0);
    }

    // b5: replay each sender's distinct txs against its opening funds; a tx the
    // funds cannot cover, paying the same amount as an earlier one, spends the same coins twice.
    std::map<NodeId, std::vector<const Transaction*>> by_sender;
    {
        std::set<std::uint64_t> seen;
        auto take = [&](const Transaction& tx) {
            if (seen.insert(tx.tx_id).second) by_sender[tx.sender].push_back(&tx);
        };
        for (const auto& tx : events.confirmed_txs) take(tx);
        for (const auto& block : events.unconfirmed_pool) {
            for (const auto& tx : block.transactions) take(tx);
        }
    }
    for (auto& [node, txs] : by_sender) {
        auto acct = events.accounts.find(node);
        if (acct == events.accounts.end()) continue;
        std::stable_sort(txs.begin(), txs.end(),
                         [](const Transaction* a, const Transaction* b) { return a->timestamp < b->timestamp; });
        double funds = acct->second.opening;
        std::vector<double> spent_amounts;
        for (const Transaction* tx : txs) {
            const double cost = tx->amount + tx->fee;
            if (cost > funds + 1e-9) {
                const bool repeat = tx->amount > 0.0 &&
                    std::find(spent_amounts.begin(), spent_amounts.end(), tx->amount) != spent_amounts.end();
                if (repeat) {
                    report.set(node, BehaviorId::B5, 1.0);
                    break;
                }
            } else {
                funds -= cost;
            }
            spent_amounts.push_back(tx->amount);
        }
    }

    // b6: reported funds disagree with a replay of the confirmed txs.
    for (const auto& [node, acct] : events.accounts) {
        double implied = acct.opening;
        for (const auto& tx : events.confirmed_txs) {
            if (tx.sender == node) implied -= tx.amount + tx.fee;
            if (tx.receiver == node) implied += tx.amount;
        }
        if (differs(implied, acct.reported)) report.set(node, BehaviorId::B6, 1.0);
    }
    return report;
}

DetectionReport detect_sybil(const RoundEvents& events, const DetectionConfig& cfg)
{
    DetectionReport report;

    if (events.joins.size() >= cfg.join_spike_threshold) {
        std::map<std::string, std::size_t> group_size;
        for (const auto& j : events.joins) ++group_size[address_prefix(j.address, cfg.address_prefix_octets)];
        for (const auto& j : events.joins) {
            if (group_size[address_prefix(j.address, cfg.address_prefix_octets)] >= 2) {
                report.set(j.node, BehaviorId::B7, 1.0);
            }
        }
    }
    for (const auto& [node, vote] : events.votes) {
        if (vote.claimed > vote.entitled * (1.0 + 1e-9)) report.set(node, BehaviorId::B8, 1.0);
    }
    for (const auto& [node, count] : events.per_node_message_count) {
        if (count >= cfg.spam_message_threshold) report.set(node, BehaviorId::B9, 1.0);
    }
    return report;
}

DetectionReport detect_replay(const RoundEvents& events, History history, const DetectionConfig& cfg)
{
    DetectionReport report;
    const History recent = window_of(history, cfg);

    std::unordered_map<std::uint64_t, std::set<Round>> confirmed_at;
    for (const auto& ev : recent) {
        for (const auto& tx : ev.confirmed_txs) confirmed_at[tx.tx_id].insert(tx.timestamp);
    }
    const auto historic = confirmed_at;
    for (const auto& tx : events.confirmed_txs) confirmed_at[tx.tx_id].insert(tx.timestamp);

    const auto submitted = submitted_txs(events);

    // b10: a confirmed tx id shows up again under another timestamp.
    for (const Transaction* tx : submitted) {
        auto it = confirmed_at.find(tx->tx_id);
        if (it == confirmed_at.end()) continue;
        const auto& stamps = it->second;
        if (std::any_of(stamps.begin(), stamps.end(), [&](Round r) { return r != tx->timestamp; })) {
            report.set(tx->sender, BehaviorId::B10, 1.0);
        }
    }

    // b11: a confirming proposer re-confirms history.
    for (const auto& block : events.proposed_blocks) {
        if (!block.confirmed) continue;
        for (const auto& tx : block.transactions) {
            if (historic.count(tx.tx_id)) {
                report.set(block.proposer, BehaviorId::B11, 1.0);
                break;
            }
        }
    }

    // b12: a sender's mean fee spikes over the trailing network mean.
    std::span<const FeeSample> fees(events.fee_history);
    if (fees.size() > cfg.window) fees = fees.subspan(fees.size() - cfg.window);
    if (!fees.empty()) {
        double sum = 0.0;
        for (const auto& f : fees) sum += f.mean_fee;
        const double trailing = sum / static_cast<double>(fees.size());
        if (trailing > 0.0) {
            std::map<NodeId, std::pair<double, std::size_t>> per_sender;
            for (const Transaction* tx : submitted) {
                auto& acc = per_sender[tx->sender];
                acc.first += tx->fee;
                ++acc.second;
            }
            for (const auto& [node, acc] : per_sender) {
                if (acc.first / static_cast<double>(acc.second) > cfg.fee_spike_factor * trailing) {
                    report.set(node, BehaviorId::B12, 1.0);
                }
            }
        }
    }
    return report;
}

DetectionReport detect_contract(const RoundEvents& events, const DetectionConfig& cfg)
{
    DetectionReport report;
    const auto submitted = submitted_txs(events);

    if (!events.confirmed_txs.empty()) {
        double sum = 0.0;
        for (const auto& tx : events.confirmed_txs) sum += tx.amount;
        const double mean = sum / static_cast<double>(events.confirmed_txs.size());
        for (const Transaction* tx : submitted) {
            if (tx->amount > cfg.large_transfer_factor * mean) report.set(tx->sender, BehaviorId::B13, 1.0);
        }
    }

    std::map<std::pair<NodeId, std::string>, std::uint32_t> calls;
    for (const Transaction* tx : submitted) {
        if (tx->contract_ref) ++calls[{tx->sender, *tx->contract_ref}];
    }
    for (const auto& [key, count] : calls) {
        if (count >= cfg.contract_activity_threshold) report.set(key.first, BehaviorId::B14, 1.0);
    }
    return report;
}

DetectionReport detect_ddos(const RoundEvents& events, const DetectionConfig& cfg)
{
    DetectionReport report;
    for (const auto& [node, errors] : events.per_node_error_count) {
        if (errors >= cfg.error_threshold) report.set(node, BehaviorId::B15, 1.0);
    }
    for (const auto& [node, use] : events.per_node_resource_use) {
        if (use >= cfg.resource_threshold) report.set(node, BehaviorId::B16, 1.0);
    }
    return report;
}

DetectionReport compile_report(const RoundEvents& events, History history, const DetectionConfig& cfg)
{
    DetectionReport report;
    report.merge(detect_fifty_one(events, history, cfg));
    report.merge(detect_double_spend(events, cfg));
    report.merge(detect_sybil(events, cfg));
    report.merge(detect_replay(events, history, cfg));
    report.merge(detect_contract(events, cfg));
    report.merge(detect_ddos(events, cfg));
    return report;
}

double aggregate_attack_probability(const BehaviorScores& scores, const Weights& w) noexcept
{
    double sum = 0.0;
    for (BehaviorId b : kAllBehaviors) sum += w[b] * std::max(scores[b], 0.0);
    return std::clamp(sum, 0.0, 1.0);
}

} // namespace mrlpos
