// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_SIM_HPP
#define MRLPOS_SIM_HPP

#include "mrlpos/core.hpp"
#include "mrlpos/detection.hpp"
#include "mrlpos/election.hpp"
#include "mrlpos/reputation.hpp"
#include "mrlpos/rng.hpp"

#include <array>
#include <deque>

namespace mrlpos {

enum class Elector { MrlPos, PoS, DPoS };

std::string_view to_string(Elector e) noexcept;
std::optional<Elector> parse_elector(std::string_view s);

struct NodeGroup {
    std::uint32_t count{1};
    Amount stake{10.0};
    Amount initial_balance{kDefaultInitialBalance};
    StrategyDescriptor strategy;

    friend bool operator==(const NodeGroup&, const NodeGroup&) = default;
};

/** Background traffic every active node takes part in, attack or not. */
struct TrafficParams {
    std::uint32_t txs_per_round{20};
    std::uint32_t pending_txs{5};
    double mean_amount{2.0};
    double amount_spread{1.0};
    double mean_fee{0.1};
    double fee_spread{0.05};
    double contract_share{0.2};
    std::uint32_t contracts{10};
    std::uint32_t max_rejoins{2};

    void validate() const;

    friend bool operator==(const TrafficParams&, const TrafficParams&) = default;
};

struct Scenario {
    std::uint64_t seed{1};
    std::uint32_t rounds{100};
    std::vector<NodeGroup> nodes;
    Elector elector{Elector::MrlPos};
    std::uint32_t delegate_count{5};
    DetectionConfig detection;
    Weights weights;
    LearningParams learning;
    TrafficParams traffic;

    /** Throws Error(Range) naming the offending field. */
    void validate() const;
    std::uint32_t node_count() const noexcept;
    /** Nodes get ids 0..n-1 in group order. */
    std::vector<NodeState> build_world() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct NodeSnapshot {
    NodeId id;
    double attack_probability{0.0};
    std::uint32_t last_attack_age{0};
    std::uint32_t restriction_count{0};
    Amount balance{0.0};
    bool is_active{true};

    friend bool operator==(const NodeSnapshot&, const NodeSnapshot&) = default;
};

NodeSnapshot snapshot_of(const NodeState& node) noexcept;

struct RoundRecord {
    Round round{0};
    std::optional<NodeId> elected; // empty: skipped round
    bool elected_was_malicious{false};
    std::vector<std::pair<NodeId, BehaviorId>> behaviors_detected;
    bool penalty_applied{false};
    bool reward_applied{false};
    std::vector<NodeSnapshot> snapshots;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct Summary {
    std::uint32_t rounds_run{0};
    bool halted_early{false};
    // Rounds needed until every malicious node was inactive; 0 when there were none.
    std::optional<std::uint32_t> rounds_to_elimination;
    std::uint32_t final_active_malicious{0};
    std::uint32_t final_active_honest{0};
    std::uint32_t eliminated_malicious{0};
    std::uint32_t eliminated_honest{0};

    friend bool operator==(const Summary&, const Summary&) = default;
};

struct SimulationResult {
    Scenario scenario;
    std::vector<RoundRecord> records;
    Summary summary;
};

/** Mutable ledger bookkeeping the event generator needs from one round to the next. */
struct LedgerState {
    std::optional<NodeId> previous_validator;
    std::uint64_t chain_height{0};
    std::uint64_t next_tx_id{1};
    std::deque<FeeSample> fee_history;
};

/**
 * Everything carried between rounds. The detector history is pre-filled with
 * DetectionConfig::window rounds of attack-free traffic so the window-based
 * detectors have a baseline from round 0.
 */
struct SimState {
    explicit SimState(const Scenario& scenario);

    std::vector<NodeState> world;
    std::deque<RoundEvents> history;
    LedgerState ledger;
    Rng rng;
};

/**
 * Events of one round: background traffic from every active node plus the
 * signature of every attacker whose persistence fires. Fork bursts need the
 * block producer's seat, so a 51% attacker only forks in the round after it
 * was elected. With attacks_enabled false every node behaves honestly.
 */
RoundEvents generate_events(const std::vector<NodeState>& world, LedgerState& ledger, Round round,
                            const std::deque<RoundEvents>& history, const Scenario& scenario, Rng& rng,
                            bool attacks_enabled = true);

/** Pushes a round's events into the detector history and fee trail, trimming both to the window. */
void commit_history(SimState& state, RoundEvents events, const Scenario& scenario);

/** Returns nullopt, leaving the state untouched, when no node is active. */
std::optional<RoundRecord> run_round(SimState& state, Round round, const Scenario& scenario);

SimulationResult run_simulation(const Scenario& scenario);

/** The same population and seed under each elector, in the order MrlPos, PoS, DPoS. */
std::array<SimulationResult, 3> run_comparison(const Scenario& scenario);

std::uint32_t count_active(const std::vector<NodeSnapshot>& snaps, const Scenario& scenario, bool malicious);

/** Node id to strategy, following the group layout of build_world(). */
std::vector<StrategyDescriptor> strategies_of(const Scenario& scenario);

} // namespace mrlpos

#endif // MRLPOS_SIM_HPP
