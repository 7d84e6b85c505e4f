// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_SERIALIZE_HPP
#define MRLPOS_SERIALIZE_HPP

#include "mrlpos/core.hpp"
#include "mrlpos/detection.hpp"
#include "mrlpos/reputation.hpp"
#include "mrlpos/sim.hpp"

#include <json.hpp>

// JSON shapes of the public value types. Enumerations serialize by name
// ("b4", "double_spend", "mrlpos"); node ids as bare integers. from_json
// throws Error(Parse) on an unknown name and lets nlohmann's exceptions
// through for missing or mistyped members.
namespace mrlpos {

using Json = nlohmann::json;

void to_json(Json& j, const NodeId& v);
void from_json(const Json& j, NodeId& v);
void to_json(Json& j, const BehaviorId& v);
void from_json(const Json& j, BehaviorId& v);
void to_json(Json& j, const AttackKind& v);
void from_json(const Json& j, AttackKind& v);
void to_json(Json& j, const BehaviorScores& v);
void from_json(const Json& j, BehaviorScores& v);
void to_json(Json& j, const ReputationTable& v);
void from_json(const Json& j, ReputationTable& v);
void to_json(Json& j, const StrategyDescriptor& v);
void from_json(const Json& j, StrategyDescriptor& v);
void to_json(Json& j, const NodeState& v);
void from_json(const Json& j, NodeState& v);
void to_json(Json& j, const Transaction& v);
void from_json(const Json& j, Transaction& v);
void to_json(Json& j, const Block& v);
void from_json(const Json& j, Block& v);
void to_json(Json& j, const VoteClaim& v);
void from_json(const Json& j, VoteClaim& v);
void to_json(Json& j, const Join& v);
void from_json(const Json& j, Join& v);
void to_json(Json& j, const AccountView& v);
void from_json(const Json& j, AccountView& v);
void to_json(Json& j, const FeeSample& v);
void from_json(const Json& j, FeeSample& v);
void to_json(Json& j, const RoundEvents& v);
void from_json(const Json& j, RoundEvents& v);
void to_json(Json& j, const DetectionReport& v);
void from_json(const Json& j, DetectionReport& v);

void to_json(Json& j, const DetectionConfig& v);
void from_json(const Json& j, DetectionConfig& v);
void to_json(Json& j, const Weights& v);
void from_json(const Json& j, Weights& v);
void to_json(Json& j, const LearningParams& v);
void from_json(const Json& j, LearningParams& v);
void to_json(Json& j, const TrafficParams& v);
void from_json(const Json& j, TrafficParams& v);
void to_json(Json& j, const NodeGroup& v);
void from_json(const Json& j, NodeGroup& v);
void to_json(Json& j, const Scenario& v);
void from_json(const Json& j, Scenario& v);
void to_json(Json& j, const Summary& v);

} // namespace mrlpos

#endif // MRLPOS_SERIALIZE_HPP
