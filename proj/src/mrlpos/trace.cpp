// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/trace.hpp"

#include "mrlpos/election.hpp"

namespace mrlpos {

std::vector<NodeState> run_learning_trace(const TraceScript& script)
{
    script.learning.validate();
    NodeState node = new_node(NodeId{0}, script.stake, StrategyDescriptor::honest(), script.initial_balance);
    Rng unused(0); // a lone candidate never reaches the tie-break draw

    std::vector<NodeState> out;
    out.reserve(script.steps.size());
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const TraceStep& step = script.steps[i];
        const std::string where = "trace step " + std::to_string(i);
        if (node.reputation.is_active) {
            MrlElection election = elect_validator({node}, script.learning, unused);
            if (step.elected && election.outcome.skipped()) {
                throw Error(ErrorCode::ContractViolation, where + ": node is excluded by the threshold but scripted as elected");
            }
            node = std::move(election.candidates.front());
        } else if (step.elected) {
            throw Error(ErrorCode::ContractViolation, where + ": inactive node scripted as elected");
        }

        BehaviorVector signals{};
        for (BehaviorId b : step.behaviors) signals[index_of(b)] = 1.0;
        if (node.reputation.is_active) {
            if (step.elected) {
                node = step.behaviors.empty() ? apply_reward(std::move(node), script.weights, script.learning)
                                              : apply_penalty(std::move(node), signals, script.weights, script.learning);
            } else if (!step.behaviors.empty()) {
                node = observe_misbehavior(std::move(node), signals, script.weights, script.learning);
            }
        }
        out.push_back(node);
    }
    return out;
}

} // namespace mrlpos
