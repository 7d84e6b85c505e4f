// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/sim.hpp"

#include <algorithm>
#include <cmath>

namespace mrlpos {

namespace {

// Attack signatures. Each sits well past its detector's default threshold.
constexpr std::uint32_t kForkBurst = 12;
constexpr double kHashRateMultiplier = 25.0;
constexpr std::uint32_t kSybilJoins = 6;
constexpr double kVoteInflation = 3.0;
constexpr double kFeeSpike = 20.0;
constexpr std::uint32_t kReplayedHistory = 3;
constexpr std::uint32_t kContractBurst = 25;
constexpr double kOversizedTransfer = 60.0;
constexpr double kDoubleSpendShare = 0.8;
constexpr double kDoubleSpendCap = 4.0; // in mean amounts, below the large-transfer detector

std::string home_address(NodeId id)
{
    return "10." + std::to_string((id.value >> 8) & 0xff) + "." + std::to_string(id.value & 0xff) + ".1";
}

std::string sybil_address(NodeId id, std::uint32_t k)
{
    return "172." + std::to_string(16 + ((id.value >> 8) & 0x0f)) + "." + std::to_string(id.value & 0xff) + "." +
           std::to_string(k + 2);
}

Block pending_block(std::uint64_t height, NodeId proposer)
{
    Block b;
    b.height = height;
    b.proposer = proposer;
    b.parent = height > 0 ? std::optional<std::uint64_t>(height - 1) : std::nullopt;
    b.confirmed = false;
    return b;
}

} // namespace

RoundEvents generate_events(const std::vector<NodeState>& world, LedgerState& ledger, Round round,
                            const std::deque<RoundEvents>& history, const Scenario& scenario, Rng& rng,
                            bool attacks_enabled)
{
    const TrafficParams& traffic = scenario.traffic;
    RoundEvents ev;
    ev.round = round;
    ev.fee_history.assign(ledger.fee_history.begin(), ledger.fee_history.end());

    std::vector<const NodeState*> active;
    for (const auto& node : world) {
        if (node.reputation.is_active) active.push_back(&node);
    }
    if (active.empty()) return ev;

    std::map<NodeId, bool> acting;
    for (const NodeState* node : active) {
        const bool attacks = attacks_enabled && node->strategy.is_malicious() && rng.chance(node->strategy.persistence);
        acting[node->id] = attacks;
    }
    auto is_acting = [&](NodeId id, AttackKind kind) {
        for (const NodeState* node : active) {
            if (node->id == id) return acting[id] && node->strategy.attack == kind;
        }
        return false;
    };

    // Per-node telemetry at honest levels.
    std::map<NodeId, Amount> funds;
    for (const NodeState* node : active) {
        const NodeId id = node->id;
        ev.votes[id] = VoteClaim{node->stake, node->stake};
        ev.per_node_message_count[id] = static_cast<std::uint32_t>(rng.between(5, 20));
        ev.per_node_error_count[id] = static_cast<std::uint32_t>(rng.between(0, 2));
        ev.per_node_resource_use[id] = rng.uniform(0.1, 0.6);
        ev.per_node_hash_rate[id] = rng.uniform(0.8, 1.2);
        const Amount opening = std::max(node->balance, 0.0);
        ev.accounts[id] = AccountView{opening, opening};
        funds[id] = opening;
    }

    // The previous validator's block confirms this round's background txs.
    const bool has_canonical = ledger.previous_validator.has_value();
    Block canonical;
    if (has_canonical) {
        canonical.height = ledger.chain_height;
        canonical.proposer = *ledger.previous_validator;
        canonical.parent = ledger.chain_height > 0 ? std::optional<std::uint64_t>(ledger.chain_height - 1)
                                                   : std::nullopt;
        canonical.confirmed = true;
    }
    const std::uint64_t next_height = has_canonical ? ledger.chain_height + 1 : ledger.chain_height;
    Block honest_pending = pending_block(next_height, canonical.proposer);

    const std::uint32_t attempts = traffic.txs_per_round + traffic.pending_txs;
    for (std::uint32_t k = 0; k < attempts; ++k) {
        const NodeState* sender = active[rng.below(active.size())];
        std::size_t r = rng.below(active.size());
        if (active[r] == sender && active.size() > 1) r = (r + 1) % active.size();
        const NodeState* receiver = active[r];
        const double amount = std::max(0.01, rng.uniform(traffic.mean_amount - traffic.amount_spread,
                                                         traffic.mean_amount + traffic.amount_spread));
        const double fee = std::max(0.0, rng.uniform(traffic.mean_fee - traffic.fee_spread,
                                                     traffic.mean_fee + traffic.fee_spread));
        std::optional<std::string> contract;
        if (rng.chance(traffic.contract_share) && traffic.contracts > 0) {
            contract = "c" + std::to_string(rng.below(traffic.contracts));
        }
        if (funds[sender->id] < amount + fee) continue;
        funds[sender->id] -= amount + fee;

        Transaction tx{ledger.next_tx_id++, sender->id, receiver->id, amount, fee, round, std::move(contract)};
        if (k < traffic.txs_per_round && has_canonical) {
            canonical.transactions.push_back(std::move(tx));
        } else {
            honest_pending.transactions.push_back(std::move(tx));
        }
    }

    // Occasional reconnects by distinct nodes from their home addresses, which never share a prefix.
    const auto rejoins = std::min<std::int64_t>(rng.between(0, traffic.max_rejoins),
                                                static_cast<std::int64_t>(active.size()));
    std::vector<const NodeState*> pool = active;
    for (std::int64_t k = 0; k < rejoins; ++k) {
        const std::size_t pick = static_cast<std::size_t>(k) +
                                 rng.below(pool.size() - static_cast<std::size_t>(k));
        std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
        ev.joins.push_back(Join{pool[static_cast<std::size_t>(k)]->id, home_address(pool[static_cast<std::size_t>(k)]->id)});
    }

    std::vector<Block> attack_pool;
    std::vector<Block> forks;
    const double normal_fee = traffic.mean_fee;

    for (const NodeState* node : active) {
        if (!acting[node->id]) continue;
        const NodeId id = node->id;
        switch (node->strategy.attack) {
        case AttackKind::FiftyOnePercent: {
            ev.per_node_hash_rate[id] = kHashRateMultiplier * rng.uniform(0.96, 1.04);
            if (has_canonical && canonical.proposer == id) {
                for (std::uint32_t k = 0; k < kForkBurst; ++k) {
                    Block fork = pending_block(canonical.height, id);
                    fork.parent = canonical.parent;
                    forks.push_back(std::move(fork));
                }
            }
            break;
        }
        case AttackKind::DoubleSpend: {
            const double available = std::max(funds[id], 1.0);
            const double amount = std::min(kDoubleSpendShare * available, kDoubleSpendCap * traffic.mean_amount);
            Transaction paid{ledger.next_tx_id++, id, id, amount, normal_fee, round, std::nullopt};
            const NodeId payee = active[rng.below(active.size())]->id;
            paid.receiver = payee;
            if (has_canonical) {
                canonical.transactions.push_back(paid);
            } else {
                Block b = pending_block(next_height, id);
                b.transactions.push_back(paid);
                attack_pool.push_back(std::move(b));
            }
            // Enough copies of the same payment to overrun the funds; the first travels in two blocks.
            const auto copies = static_cast<std::uint32_t>(std::ceil(available / amount));
            Block first = pending_block(next_height, id);
            Block second = pending_block(next_height, id);
            for (std::uint32_t k = 0; k < copies; ++k) {
                Transaction tx{ledger.next_tx_id++, id, payee, amount, normal_fee, round, std::nullopt};
                if (k == 0) second.transactions.push_back(tx);
                first.transactions.push_back(std::move(tx));
            }
            attack_pool.push_back(std::move(first));
            attack_pool.push_back(std::move(second));
            break;
        }
        case AttackKind::Sybil: {
            for (std::uint32_t k = 0; k < kSybilJoins; ++k) ev.joins.push_back(Join{id, sybil_address(id, k)});
            ev.votes[id].claimed = kVoteInflation * node->stake;
            ev.per_node_message_count[id] = static_cast<std::uint32_t>(rng.between(80, 120));
            break;
        }
        case AttackKind::Replay: {
            const NodeId payee = active[rng.below(active.size())]->id;
            const double amount = rng.uniform(traffic.mean_amount - traffic.amount_spread,
                                              traffic.mean_amount + traffic.amount_spread);
            Transaction original{ledger.next_tx_id++, id, payee, std::max(0.01, amount), normal_fee, round,
                                 std::nullopt};
            Block replays = pending_block(next_height, id);
            Transaction copy = original;
            copy.timestamp = round + 1;
            copy.fee = kFeeSpike * normal_fee;
            replays.transactions.push_back(copy);
            if (has_canonical) {
                canonical.transactions.push_back(original);
            } else {
                replays.transactions.push_back(original);
            }
            // Resubmit the node's own confirmed history, newest first.
            std::vector<Transaction> old;
            for (auto it = history.rbegin(); it != history.rend() && old.size() < kReplayedHistory; ++it) {
                for (const auto& tx : it->confirmed_txs) {
                    if (tx.sender == id && old.size() < kReplayedHistory) old.push_back(tx);
                }
            }
            for (auto tx : old) {
                tx.timestamp = round;
                tx.fee = kFeeSpike * normal_fee;
                replays.transactions.push_back(tx);
            }
            // As block producer it also confirms one of them again.
            if (has_canonical && canonical.proposer == id && !old.empty()) {
                Transaction again = old.front();
                again.timestamp = round;
                canonical.transactions.push_back(std::move(again));
            }
            attack_pool.push_back(std::move(replays));
            break;
        }
        case AttackKind::ContractExploit: {
            Block calls = pending_block(next_height, id);
            const std::string target = "x" + std::to_string(id.value);
            for (std::uint32_t k = 0; k < kContractBurst; ++k) {
                calls.transactions.push_back(
                    Transaction{ledger.next_tx_id++, id, id, 0.0, normal_fee, round, target});
            }
            const NodeId payee = active[rng.below(active.size())]->id;
            calls.transactions.push_back(Transaction{ledger.next_tx_id++, id, payee,
                                                     kOversizedTransfer * traffic.mean_amount, normal_fee, round,
                                                     target});
            attack_pool.push_back(std::move(calls));
            break;
        }
        case AttackKind::DDoS: {
            ev.per_node_error_count[id] = static_cast<std::uint32_t>(rng.between(15, 30));
            ev.per_node_resource_use[id] = rng.uniform(0.92, 1.0);
            break;
        }
        }
    }

    if (has_canonical) {
        ev.confirmed_txs = canonical.transactions;
        ev.proposed_blocks.push_back(canonical);
        ++ledger.chain_height;
    }
    for (auto& fork : forks) ev.proposed_blocks.push_back(std::move(fork));
    ev.fork_count = static_cast<std::uint32_t>(forks.size());
    if (!honest_pending.transactions.empty()) ev.unconfirmed_pool.push_back(std::move(honest_pending));
    for (auto& b : attack_pool) ev.unconfirmed_pool.push_back(std::move(b));

    // Honest nodes report what the confirmed txs imply; an acting double spender hides its own debits.
    for (auto& [id, acct] : ev.accounts) {
        const bool hides = is_acting(id, AttackKind::DoubleSpend);
        double reported = acct.opening;
        for (const auto& tx : ev.confirmed_txs) {
            if (tx.sender == id && !hides) reported -= tx.amount + tx.fee;
            if (tx.receiver == id) reported += tx.amount;
        }
        acct.reported = reported;
    }
    return ev;
}

} // namespace mrlpos
