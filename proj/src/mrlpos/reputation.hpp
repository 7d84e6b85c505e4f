// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_REPUTATION_HPP
#define MRLPOS_REPUTATION_HPP

#include "mrlpos/core.hpp"
#include "mrlpos/detection.hpp"

namespace mrlpos {

struct LearningParams {
    double alpha{0.3};
    double gamma{0.9};
    double honest_reward_signal{-1.0};
    std::uint32_t attack_age_max{3};
    double deactivation_probability{0.95};
    Amount fee{1.0};
    // Exclusion bound on attack_probability * last_attack_age.
    double threshold{1.0};

    /** Throws Error(Range) naming the offending "learning.<field>". */
    void validate() const;

    friend bool operator==(const LearningParams&, const LearningParams&) = default;
};

/** (1 - alpha) * q + alpha * (r + gamma * max_next). Throws Error(Range) on alpha/gamma outside their ranges. */
double q_update(double q, double alpha, double r, double gamma, double max_next);

enum class UpdateMode {
    Penalty,   // reward term is the detection signal
    Honest,    // reward term is honest_reward_signal
    Idle,      // no evidence either way; scores are left as they are
};

/**
 * One Q-learning step per behavior. The bootstrap term is the node's largest
 * current score, read before any entry is rewritten. Results are clamped to [-1, 1].
 */
BehaviorScores update_behavior_scores(const BehaviorScores& scores, const BehaviorVector& signals,
                                      const LearningParams& params, UpdateMode mode);

/** Penalty-mode score update plus attack_probability recomputation, without stake or restriction effects. */
NodeState observe_misbehavior(NodeState node, const BehaviorVector& signals, const Weights& w,
                              const LearningParams& params);

NodeState apply_penalty(NodeState node, const BehaviorVector& signals, const Weights& w,
                        const LearningParams& params);

/**
 * Pays the fee and updates scores in honest mode. A restriction (the oldest)
 * is lifted only once the update leaves attack_probability at zero, so a
 * node regains standing before it regains privileges.
 */
NodeState apply_reward(NodeState node, const Weights& w, const LearningParams& params);

/** Same as above, but rejects a non-zero detection row with Error(ContractViolation). */
NodeState apply_reward(NodeState node, const BehaviorVector& signals, const Weights& w,
                       const LearningParams& params);

NodeState decay_attack_age(NodeState node) noexcept;

} // namespace mrlpos

#endif // MRLPOS_REPUTATION_HPP
