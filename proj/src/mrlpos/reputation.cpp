// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/reputation.hpp"

#include <cmath>

namespace mrlpos {

namespace {

void require(bool ok, const char* field, const char* range)
{
    if (!ok) throw Error(ErrorCode::Range, std::string("learning.") + field + " must be " + range);
}

void check_alpha_gamma(double alpha, double gamma)
{
    require(alpha > 0.0 && alpha <= 1.0, "alpha", "in (0, 1]");
    require(gamma >= 0.0 && gamma < 1.0, "gamma", "in [0, 1)");
}

} // namespace

void LearningParams::validate() const
{
    check_alpha_gamma(alpha, gamma);
    require(honest_reward_signal < 0.0 && honest_reward_signal >= -1.0, "honest_reward_signal", "in [-1, 0)");
    require(deactivation_probability > 0.0 && deactivation_probability <= 1.0, "deactivation_probability", "in (0, 1]");
    require(fee >= 0.0 && std::isfinite(fee), "fee", ">= 0");
    require(threshold > 0.0 && std::isfinite(threshold), "threshold", "> 0");
}

double q_update(double q, double alpha, double r, double gamma, double max_next)
{
    check_alpha_gamma(alpha, gamma);
    return (1.0 - alpha) * q + alpha * (r + gamma * max_next);
}

BehaviorScores update_behavior_scores(const BehaviorScores& scores, const BehaviorVector& signals,
                                      const LearningParams& params, UpdateMode mode)
{
    if (mode == UpdateMode::Idle) return scores;
    const double max_next = scores.max();
    BehaviorScores out = scores;
    for (BehaviorId b : kAllBehaviors) {
        const double r = mode == UpdateMode::Penalty ? signals[index_of(b)] : params.honest_reward_signal;
        out.set(b, q_update(scores[b], params.alpha, r, params.gamma, max_next));
    }
    return out;
}

NodeState observe_misbehavior(NodeState node, const BehaviorVector& signals, const Weights& w,
                              const LearningParams& params)
{
    auto& rep = node.reputation;
    rep.behavior_scores = update_behavior_scores(rep.behavior_scores, signals, params, UpdateMode::Penalty);
    rep.attack_probability = aggregate_attack_probability(rep.behavior_scores, w);
    if (rep.attack_probability >= params.deactivation_probability) rep.is_active = false;
    return node;
}

NodeState apply_penalty(NodeState node, const BehaviorVector& signals, const Weights& w,
                        const LearningParams& params)
{
    if (!row_has_positive(signals)) {
        throw Error(ErrorCode::ContractViolation,
                    "apply_penalty on node " + std::to_string(node.id.value) + " with an all-zero detection row");
    }
    node.balance -= node.stake;
    node = observe_misbehavior(std::move(node), signals, w, params);

    auto& rep = node.reputation;
    rep.last_attack_age = params.attack_age_max;
    for (BehaviorId b : kAllBehaviors) {
        if (signals[index_of(b)] <= 0.0) continue;
        const AttackKind k = behavior_attack_kind(b);
        if (!rep.has_restriction(k)) rep.restrictions.push_back(k);
    }
    if (node.balance < 0.0) rep.is_active = false;
    return node;
}

NodeState apply_reward(NodeState node, const Weights& w, const LearningParams& params)
{
    node.balance += params.fee;
    auto& rep = node.reputation;
    rep.behavior_scores = update_behavior_scores(rep.behavior_scores, {}, params, UpdateMode::Honest);
    rep.attack_probability = aggregate_attack_probability(rep.behavior_scores, w);
    if (rep.attack_probability == 0.0 && !rep.restrictions.empty()) {
        rep.restrictions.erase(rep.restrictions.begin());
    }
    return node;
}

NodeState apply_reward(NodeState node, const BehaviorVector& signals, const Weights& w,
                       const LearningParams& params)
{
    if (row_has_positive(signals)) {
        throw Error(ErrorCode::ContractViolation,
                    "apply_reward on node " + std::to_string(node.id.value) + " with a positive detection signal");
    }
    return apply_reward(std::move(node), w, params);
}

NodeState decay_attack_age(NodeState node) noexcept
{
    if (node.reputation.last_attack_age > 0) --node.reputation.last_attack_age;
    return node;
}

} // namespace mrlpos
