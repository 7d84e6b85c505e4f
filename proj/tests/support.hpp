// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Shared fixtures and independent oracles for the unit and acceptance suites.

#ifndef MRLPOS_TESTS_SUPPORT_HPP
#define MRLPOS_TESTS_SUPPORT_HPP

#include "mrlpos/detection.hpp"
#include "mrlpos/output.hpp"
#include "mrlpos/reputation.hpp"
#include "mrlpos/sim.hpp"

#include <cmath>
#include <random>
#include <string>

namespace testing {

using namespace mrlpos;

inline std::string source_path(const std::string& rel) { return std::string(MRLPOS_SOURCE_DIR) + "/" + rel; }

inline const char* const kFamilies[] = {"fifty_one_percent", "double_spend", "sybil",
                                        "replay",            "contract_exploit", "ddos"};

inline constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

/** The Q-update written out term by term, without sharing code with the library. */
inline double direct_q(double q, double alpha, double r, double gamma, double max_next)
{
    const double keep = q - alpha * q;
    const double target = r + gamma * max_next;
    return keep + alpha * target;
}

inline Scenario honest_world(std::uint32_t n, std::uint32_t rounds, std::uint64_t seed)
{
    Scenario s;
    s.seed = seed;
    s.rounds = rounds;
    s.nodes.push_back(NodeGroup{n, 10.0, 100.0, StrategyDescriptor::honest()});
    return s;
}

/** Random RoundEvents touching every detector, with values on both sides of each default threshold. */
inline RoundEvents fuzz_events(std::mt19937_64& g, Round round)
{
    auto pick = [&](std::uint32_t n) { return static_cast<std::uint32_t>(g() % n); };
    auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); };
    const std::uint32_t nodes = 2 + pick(7);
    auto node = [&] { return NodeId{pick(nodes)}; };

    RoundEvents ev;
    ev.round = round;
    std::uint64_t next_id = 1 + pick(30);
    auto tx = [&] {
        Transaction t{next_id, node(), node(), pick(4) ? real(0.5, 4.0) : real(20.0, 80.0), real(0.05, 0.5),
                      round - static_cast<Round>(pick(3)), std::nullopt};
        next_id += 1 + pick(3) / 2; // occasional id reuse
        if (pick(3) == 0) t.contract_ref = "c" + std::to_string(pick(2));
        return t;
    };
    for (std::uint32_t b = 0, nb = pick(4); b < nb; ++b) {
        Block blk{pick(20), node(), {}, std::nullopt, pick(3) == 0};
        for (std::uint32_t k = 0, nt = pick(8); k < nt; ++k) blk.transactions.push_back(tx());
        ev.proposed_blocks.push_back(blk);
        if (blk.confirmed) ev.confirmed_txs.insert(ev.confirmed_txs.end(), blk.transactions.begin(), blk.transactions.end());
    }
    for (std::uint32_t b = 0, nb = pick(4); b < nb; ++b) {
        Block blk{pick(20), node(), {}, std::nullopt, false};
        for (std::uint32_t k = 0, nt = pick(30); k < nt; ++k) blk.transactions.push_back(tx());
        ev.unconfirmed_pool.push_back(blk);
    }
    for (std::uint32_t k = 0, nj = pick(9); k < nj; ++k) {
        ev.joins.push_back(Join{node(), "10." + std::to_string(pick(2)) + "." + std::to_string(pick(3)) + "." +
                                            std::to_string(pick(200))});
    }
    for (std::uint32_t i = 0; i < nodes; ++i) {
        const NodeId id{i};
        if (pick(4) == 0) continue;
        ev.votes[id] = VoteClaim{pick(5) ? 10.0 : 25.0, 10.0};
        ev.per_node_message_count[id] = pick(100);
        ev.per_node_error_count[id] = pick(20);
        ev.per_node_resource_use[id] = real(0.0, 1.0);
        ev.per_node_hash_rate[id] = pick(5) ? real(0.5, 1.5) : real(3.0, 30.0);
        const double opening = real(0.0, 40.0);
        ev.accounts[id] = AccountView{opening, pick(4) ? opening : opening + 1.0};
    }
    ev.fork_count = pick(5);
    for (std::uint32_t k = 0, nf = pick(12); k < nf; ++k) {
        ev.fee_history.push_back(FeeSample{round - static_cast<Round>(nf - k), real(0.05, 0.2)});
    }
    // Keep the reported balances honest where they should be: the implied balance.
    for (auto& [id, acct] : ev.accounts) {
        if (acct.reported != acct.opening) continue;
        double implied = acct.opening;
        for (const auto& t : ev.confirmed_txs) {
            if (t.sender == id) implied -= t.amount + t.fee;
            if (t.receiver == id) implied += t.amount;
        }
        acct.reported = implied;
    }
    return ev;
}

/**
 * Rebuilds every node snapshot of a run from the scenario and the rounds.csv
 * records alone, by calling the reputation and settlement operations directly.
 * Returns the first mismatch description, or an empty string.
 */
inline std::string replay_mismatch(const Scenario& scenario, const std::vector<RoundRecord>& records)
{
    std::vector<NodeState> world = scenario.build_world();
    for (const RoundRecord& rec : records) {
        std::map<NodeId, BehaviorVector> rows;
        for (const auto& [id, b] : rec.behaviors_detected) rows[id][index_of(b)] = 1.0;

        if (scenario.elector == Elector::MrlPos) {
            for (auto& n : world) {
                if (n.reputation.is_active) n = decay_attack_age(n);
            }
        }
        for (auto& n : world) {
            if (!n.reputation.is_active) continue;
            const auto it = rows.find(n.id);
            const bool flagged = it != rows.end();
            const bool elected = rec.elected && *rec.elected == n.id;
            if (scenario.elector == Elector::MrlPos) {
                if (elected) {
                    n = flagged ? apply_penalty(n, it->second, scenario.weights, scenario.learning)
                                : apply_reward(n, scenario.weights, scenario.learning);
                } else if (flagged) {
                    n = observe_misbehavior(n, it->second, scenario.weights, scenario.learning);
                }
            } else if (elected) {
                bool seized = false;
                if (flagged) {
                    for (BehaviorId b : kAllBehaviors) {
                        const AttackKind k = behavior_attack_kind(b);
                        if (it->second[index_of(b)] > 0.0 && (k == AttackKind::DoubleSpend || k == AttackKind::Replay)) seized = true;
                    }
                }
                if (seized != rec.penalty_applied) return "round " + std::to_string(rec.round) + ": seizure flag disagrees";
                n.balance += seized ? -n.stake : scenario.learning.fee;
            }
            if (n.balance < 0.0) n.reputation.is_active = false;
        }
        if (rec.snapshots.size() != world.size()) return "round " + std::to_string(rec.round) + ": snapshot count";
        for (std::size_t i = 0; i < world.size(); ++i) {
            const NodeSnapshot want = snapshot_of(world[i]);
            const NodeSnapshot& got = rec.snapshots[i];
            const bool same = want.id == got.id && format_real(want.attack_probability) == format_real(got.attack_probability) &&
                              want.last_attack_age == got.last_attack_age &&
                              want.restriction_count == got.restriction_count &&
                              format_real(want.balance) == format_real(got.balance) && want.is_active == got.is_active;
            if (!same) {
                return "round " + std::to_string(rec.round) + ", node " + std::to_string(i) + ": expected ap " +
                       format_real(want.attack_probability) + " age " + std::to_string(want.last_attack_age) +
                       " balance " + format_real(want.balance) + ", got ap " + format_real(got.attack_probability) +
                       " age " + std::to_string(got.last_attack_age) + " balance " + format_real(got.balance);
            }
        }
    }
    return {};
}

} // namespace testing

#endif // MRLPOS_TESTS_SUPPORT_HPP
