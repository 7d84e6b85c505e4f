// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_TRACE_HPP
#define MRLPOS_TRACE_HPP

#include "mrlpos/core.hpp"
#include "mrlpos/detection.hpp"
#include "mrlpos/reputation.hpp"

namespace mrlpos {

/** One scripted round for the subject node: whether it validates and what the tracker sees it do. */
struct TraceStep {
    bool elected{false};
    std::vector<BehaviorId> behaviors;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct TraceScript {
    Amount stake{10.0};
    Amount initial_balance{kDefaultInitialBalance};
    Weights weights;
    LearningParams learning;
    std::vector<TraceStep> steps;
};

/**
 * Follows a single honest-by-construction node through the scripted rounds
 * and returns its state after each one. An elected round settles through the
 * penalty or reward path depending on whether behaviors were seen; a
 * non-elected round with behaviors only updates scores. Every round decays
 * the attack age first, as an election would.
 *
 * Throws Error(ContractViolation) when the script elects a node that the
 * election would have refused (inactive, or over the exclusion threshold).
 */
std::vector<NodeState> run_learning_trace(const TraceScript& script);

} // namespace mrlpos

#endif // MRLPOS_TRACE_HPP
