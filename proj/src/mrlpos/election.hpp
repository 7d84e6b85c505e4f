// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_ELECTION_HPP
#define MRLPOS_ELECTION_HPP

#include "mrlpos/core.hpp"
#include "mrlpos/reputation.hpp"
#include "mrlpos/rng.hpp"

namespace mrlpos {

enum class ExclusionReason { Inactive, Threshold };

std::string_view to_string(ExclusionReason r) noexcept;

struct ElectionOutcome {
    // Empty when every candidate was excluded; the round is skipped.
    std::optional<NodeId> elected;
    std::vector<NodeId> eligible;
    std::vector<std::pair<NodeId, ExclusionReason>> excluded;
    std::map<NodeId, double> scores;

    bool skipped() const noexcept { return !elected.has_value(); }
};

/** -attack_probability * last_attack_age * stake, never positive. */
double agent_score(const NodeState& node) noexcept;

struct MrlElection {
    ElectionOutcome outcome;
    std::vector<NodeState> candidates; // ages decayed
};

/**
 * Reputation-aware election. Inactive candidates and those whose
 * attack_probability * last_attack_age reaches the threshold are excluded;
 * every active participant's attack age decays by one. The eligible node with
 * the highest agent score wins, ties going to the larger stake and then to a
 * uniform draw. Throws Error(EmptyCandidates) for an empty list.
 */
MrlElection elect_validator(std::vector<NodeState> candidates, const LearningParams& params, Rng& rng);

/** Stake-proportional lottery over active candidates. Throws Error(EmptyCandidates) if none is active. */
ElectionOutcome pos_elect(const std::vector<NodeState>& candidates, Rng& rng);

/**
 * Delegates are the delegate_count largest active stakes (ties shuffled each
 * round); the producer is delegates[round mod |delegates|].
 */
ElectionOutcome dpos_elect(const std::vector<NodeState>& candidates, std::uint32_t delegate_count, Round round,
                           Rng& rng);

/**
 * Baseline settlement without reputation: a validator whose block failed
 * validation forfeits its stake, any other validator earns the fee.
 */
NodeState baseline_settle(NodeState elected, bool caused_failure, const LearningParams& params);

/** Only double-spend and replay behaviors make a block invalid for the baselines. */
bool causes_block_failure(const BehaviorVector& signals) noexcept;

} // namespace mrlpos

#endif // MRLPOS_ELECTION_HPP
