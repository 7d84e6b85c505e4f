// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/election.hpp"

#include <algorithm>
#include <limits>

namespace mrlpos {

std::string_view to_string(ExclusionReason r) noexcept
{
    return r == ExclusionReason::Inactive ? "inactive" : "threshold";
}

double agent_score(const NodeState& node) noexcept
{
    const auto& rep = node.reputation;
    const double score = -1.0 * rep.attack_probability * static_cast<double>(rep.last_attack_age) * node.stake;
    return score == 0.0 ? 0.0 : score; // no negative zero
}

MrlElection elect_validator(std::vector<NodeState> candidates, const LearningParams& params, Rng& rng)
{
    if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "election with no candidates");

    MrlElection result;
    ElectionOutcome& out = result.outcome;
    for (auto& node : candidates) {
        const auto& rep = node.reputation;
        if (!rep.is_active) {
            out.excluded.emplace_back(node.id, ExclusionReason::Inactive);
            continue;
        }
        const double exposure = rep.attack_probability * static_cast<double>(rep.last_attack_age);
        if (exposure < params.threshold) {
            out.scores[node.id] = agent_score(node);
            out.eligible.push_back(node.id);
        } else {
            out.excluded.emplace_back(node.id, ExclusionReason::Threshold);
        }
    }
    // Decay after scoring, as in the participation loop.
    for (auto& node : candidates) {
        if (node.reputation.is_active) node = decay_attack_age(std::move(node));
    }

    if (!out.eligible.empty()) {
        double best_score = -std::numeric_limits<double>::infinity();
        double best_stake = -std::numeric_limits<double>::infinity();
        std::vector<NodeId> tied;
        for (const auto& node : candidates) {
            auto it = out.scores.find(node.id);
            if (it == out.scores.end()) continue;
            const double s = it->second;
            if (s > best_score || (s == best_score && node.stake > best_stake)) {
                best_score = s;
                best_stake = node.stake;
                tied.assign(1, node.id);
            } else if (s == best_score && node.stake == best_stake) {
                tied.push_back(node.id);
            }
        }
        out.elected = tied.size() == 1 ? tied.front() : tied[rng.below(tied.size())];
    }
    result.candidates = std::move(candidates);
    return result;
}

ElectionOutcome pos_elect(const std::vector<NodeState>& candidates, Rng& rng)
{
    ElectionOutcome out;
    double total = 0.0;
    for (const auto& node : candidates) {
        if (!node.reputation.is_active) {
            out.excluded.emplace_back(node.id, ExclusionReason::Inactive);
            continue;
        }
        out.eligible.push_back(node.id);
        out.scores[node.id] = node.stake;
        total += node.stake;
    }
    if (out.eligible.empty()) throw Error(ErrorCode::EmptyCandidates, "PoS election with no active candidates");

    double ticket = rng.uniform01() * total;
    for (const auto& node : candidates) {
        if (!node.reputation.is_active) continue;
        out.elected = node.id;
        if (ticket < node.stake) break;
        ticket -= node.stake;
    }
    return out;
}

ElectionOutcome dpos_elect(const std::vector<NodeState>& candidates, std::uint32_t delegate_count, Round round,
                           Rng& rng)
{
    if (delegate_count < 1) throw Error(ErrorCode::InvalidArgument, "delegate_count must be >= 1");
    ElectionOutcome out;
    std::vector<const NodeState*> active;
    for (const auto& node : candidates) {
        if (!node.reputation.is_active) {
            out.excluded.emplace_back(node.id, ExclusionReason::Inactive);
            continue;
        }
        active.push_back(&node);
    }
    if (active.empty()) throw Error(ErrorCode::EmptyCandidates, "DPoS election with no active candidates");

    // Fisher-Yates, then a stable sort: equal stakes end up in random order.
    for (std::size_t i = active.size() - 1; i > 0; --i) {
        std::swap(active[i], active[rng.below(i + 1)]);
    }
    std::stable_sort(active.begin(), active.end(),
                     [](const NodeState* a, const NodeState* b) { return a->stake > b->stake; });
    const std::size_t size = std::min<std::size_t>(delegate_count, active.size());
    for (std::size_t i = 0; i < size; ++i) {
        out.eligible.push_back(active[i]->id);
        out.scores[active[i]->id] = active[i]->stake;
    }
    const auto slot = static_cast<std::size_t>(((round % static_cast<Round>(size)) + static_cast<Round>(size)) %
                                               static_cast<Round>(size));
    out.elected = out.eligible[slot];
    return out;
}

bool causes_block_failure(const BehaviorVector& signals) noexcept
{
    for (BehaviorId b : kAllBehaviors) {
        if (signals[index_of(b)] <= 0.0) continue;
        const AttackKind k = behavior_attack_kind(b);
        if (k == AttackKind::DoubleSpend || k == AttackKind::Replay) return true;
    }
    return false;
}

NodeState baseline_settle(NodeState elected, bool caused_failure, const LearningParams& params)
{
    if (caused_failure) {
        elected.balance -= elected.stake;
    } else {
        elected.balance += params.fee;
    }
    if (elected.balance < 0.0) elected.reputation.is_active = false;
    return elected;
}

} // namespace mrlpos
