// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/core.hpp"

#include <algorithm>
#include <charconv>

namespace mrlpos {

AttackKind behavior_attack_kind(BehaviorId b) noexcept
{
    switch (b) {
    case BehaviorId::B1:
    case BehaviorId::B2:
    case BehaviorId::B3:
        return AttackKind::FiftyOnePercent;
    case BehaviorId::B4:
    case BehaviorId::B5:
    case BehaviorId::B6:
        return AttackKind::DoubleSpend;
    case BehaviorId::B7:
    case BehaviorId::B8:
    case BehaviorId::B9:
        return AttackKind::Sybil;
    case BehaviorId::B10:
    case BehaviorId::B11:
    case BehaviorId::B12:
        return AttackKind::Replay;
    case BehaviorId::B13:
    case BehaviorId::B14:
        return AttackKind::ContractExploit;
    case BehaviorId::B15:
    case BehaviorId::B16:
        return AttackKind::DDoS;
    }
    return AttackKind::DDoS;
}

std::string to_string(BehaviorId b)
{
    return "b" + std::to_string(index_of(b) + 1);
}

std::optional<BehaviorId> parse_behavior(std::string_view s)
{
    if (s.size() < 2 || s.size() > 3 || s[0] != 'b') return std::nullopt;
    unsigned n = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), n);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    if (n < 1 || n > kBehaviorCount || (s.size() == 3 && s[1] == '0')) return std::nullopt;
    return static_cast<BehaviorId>(n - 1);
}

std::string_view to_string(AttackKind k) noexcept
{
    switch (k) {
    case AttackKind::FiftyOnePercent: return "fifty_one_percent";
    case AttackKind::DoubleSpend: return "double_spend";
    case AttackKind::Sybil: return "sybil";
    case AttackKind::Replay: return "replay";
    case AttackKind::ContractExploit: return "contract_exploit";
    case AttackKind::DDoS: return "ddos";
    }
    return "ddos";
}

std::optional<AttackKind> parse_attack_kind(std::string_view s)
{
    for (AttackKind k : kAllAttackKinds) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

void BehaviorScores::set(BehaviorId b, double v) noexcept
{
    values_[index_of(b)] = std::clamp(v, -1.0, 1.0);
}

double BehaviorScores::max() const noexcept
{
    return *std::max_element(values_.begin(), values_.end());
}

bool ReputationTable::has_restriction(AttackKind k) const noexcept
{
    return std::find(restrictions.begin(), restrictions.end(), k) != restrictions.end();
}

StrategyDescriptor StrategyDescriptor::attacker(AttackKind k, double persistence)
{
    StrategyDescriptor s;
    s.kind = StrategyKind::Attacker;
    s.attack = k;
    s.persistence = persistence;
    return s;
}

NodeState new_node(NodeId id, Amount stake, const StrategyDescriptor& strategy, Amount initial_balance)
{
    if (!(stake > 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "node " + std::to_string(id.value) + ": stake must be positive");
    }
    if (!(strategy.persistence >= 0.0 && strategy.persistence <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "node " + std::to_string(id.value) + ": persistence must be in [0, 1]");
    }
    NodeState n;
    n.id = id;
    n.stake = stake;
    n.balance = initial_balance;
    n.strategy = strategy;
    return n;
}

double DetectionReport::signal(NodeId n, BehaviorId b) const noexcept
{
    auto it = rows_.find(n);
    return it == rows_.end() ? 0.0 : it->second[index_of(b)];
}

BehaviorVector DetectionReport::row(NodeId n) const noexcept
{
    auto it = rows_.find(n);
    if (it != rows_.end()) return it->second;
    BehaviorVector zero;
    zero.fill(0.0);
    return zero;
}

void DetectionReport::set(NodeId n, BehaviorId b, double v)
{
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::Range, "detection signal out of [0, 1]");
    }
    auto [it, inserted] = rows_.try_emplace(n);
    if (inserted) it->second.fill(0.0);
    it->second[index_of(b)] = v;
}

void DetectionReport::merge(const DetectionReport& other)
{
    for (const auto& [node, row] : other.rows_) {
        auto [it, inserted] = rows_.try_emplace(node);
        if (inserted) it->second.fill(0.0);
        for (std::size_t i = 0; i < kBehaviorCount; ++i) {
            it->second[i] = std::max(it->second[i], row[i]);
        }
    }
}

bool row_has_positive(const BehaviorVector& row) noexcept
{
    return std::any_of(row.begin(), row.end(), [](double v) { return v > 0.0; });
}

bool DetectionReport::any_positive(NodeId n) const noexcept
{
    auto it = rows_.find(n);
    return it != rows_.end() && row_has_positive(it->second);
}

std::size_t DetectionReport::positive_count() const noexcept
{
    std::size_t count = 0;
    for (const auto& [node, row] : rows_) {
        count += static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](double v) { return v > 0.0; }));
    }
    return count;
}

bool operator==(const DetectionReport& a, const DetectionReport& b)
{
    // A missing row and an all-zero row are the same observation.
    for (const auto& [node, row] : a.rows_) {
        if (row != b.row(node)) return false;
    }
    for (const auto& [node, row] : b.rows_) {
        if (row != a.row(node)) return false;
    }
    return true;
}

} // namespace mrlpos
