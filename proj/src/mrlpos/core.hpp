// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_CORE_HPP
#define MRLPOS_CORE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mrlpos {

enum class ErrorCode {
    InvalidArgument = 1,
    Parse,
    Range,
    UnknownKey,
    Io,
    ContractViolation,
    EmptyCandidates,
};

/** Base of every exception thrown by the library. The C API maps code() to a status. */
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

using Round = std::int64_t;
using Amount = double;

struct NodeId {
    std::uint32_t value{0};

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline constexpr std::size_t kBehaviorCount = 16;
inline constexpr std::size_t kAttackKindCount = 6;

// b1..b16.
enum class BehaviorId : std::uint8_t {
    B1, B2, B3, B4, B5, B6, B7, B8, B9, B10, B11, B12, B13, B14, B15, B16,
};

enum class AttackKind : std::uint8_t {
    FiftyOnePercent,
    DoubleSpend,
    Sybil,
    Replay,
    ContractExploit,
    DDoS,
};

inline constexpr std::array<BehaviorId, kBehaviorCount> kAllBehaviors{
    BehaviorId::B1, BehaviorId::B2, BehaviorId::B3, BehaviorId::B4,
    BehaviorId::B5, BehaviorId::B6, BehaviorId::B7, BehaviorId::B8,
    BehaviorId::B9, BehaviorId::B10, BehaviorId::B11, BehaviorId::B12,
    BehaviorId::B13, BehaviorId::B14, BehaviorId::B15, BehaviorId::B16,
};

inline constexpr std::array<AttackKind, kAttackKindCount> kAllAttackKinds{
    AttackKind::FiftyOnePercent, AttackKind::DoubleSpend, AttackKind::Sybil,
    AttackKind::Replay, AttackKind::ContractExploit, AttackKind::DDoS,
};

constexpr std::size_t index_of(BehaviorId b) noexcept { return static_cast<std::size_t>(b); }
constexpr std::size_t index_of(AttackKind k) noexcept { return static_cast<std::size_t>(k); }

AttackKind behavior_attack_kind(BehaviorId b) noexcept;

/** "b1".."b16" */
std::string to_string(BehaviorId b);
std::optional<BehaviorId> parse_behavior(std::string_view s);

/** Snake-case names used in scenario files: fifty_one_percent, double_spend, ... */
std::string_view to_string(AttackKind k) noexcept;
std::optional<AttackKind> parse_attack_kind(std::string_view s);

/** Fixed-size per-behavior array of reals. Used for scores, signals and weights. */
using BehaviorVector = std::array<double, kBehaviorCount>;

/** Behavior scores, each clamped to [-1, 1] on every write. */
class BehaviorScores
{
public:
    BehaviorScores() { values_.fill(0.0); }

    double operator[](BehaviorId b) const noexcept { return values_[index_of(b)]; }
    void set(BehaviorId b, double v) noexcept;
    double max() const noexcept;
    const BehaviorVector& values() const noexcept { return values_; }

    friend bool operator==(const BehaviorScores&, const BehaviorScores&) = default;

private:
    BehaviorVector values_;
};

struct ReputationTable {
    double attack_probability{0.0};
    std::uint32_t last_attack_age{0};
    // Oldest first.
    std::vector<AttackKind> restrictions;
    bool is_active{true};
    BehaviorScores behavior_scores;

    bool has_restriction(AttackKind k) const noexcept;

    friend bool operator==(const ReputationTable&, const ReputationTable&) = default;
};

enum class StrategyKind : std::uint8_t { Honest, Attacker };

struct StrategyDescriptor {
    StrategyKind kind{StrategyKind::Honest};
    AttackKind attack{AttackKind::FiftyOnePercent}; // meaningful only for Attacker
    double persistence{1.0};

    static StrategyDescriptor honest() { return {}; }
    static StrategyDescriptor attacker(AttackKind k, double persistence = 1.0);

    bool is_malicious() const noexcept { return kind == StrategyKind::Attacker; }

    friend bool operator==(const StrategyDescriptor&, const StrategyDescriptor&) = default;
};

inline constexpr Amount kDefaultInitialBalance = 100.0;

struct NodeState {
    NodeId id;
    Amount stake{0.0};
    Amount balance{0.0};
    ReputationTable reputation;
    StrategyDescriptor strategy;

    friend bool operator==(const NodeState&, const NodeState&) = default;
};

/** Throws Error(InvalidArgument) unless stake > 0 and persistence is in [0,1]. */
NodeState new_node(NodeId id, Amount stake, const StrategyDescriptor& strategy,
                   Amount initial_balance = kDefaultInitialBalance);

struct Transaction {
    std::uint64_t tx_id{0};
    NodeId sender;
    NodeId receiver;
    Amount amount{0.0};
    Amount fee{0.0};
    Round timestamp{0};
    std::optional<std::string> contract_ref;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct Block {
    std::uint64_t height{0};
    NodeId proposer;
    std::vector<Transaction> transactions;
    std::optional<std::uint64_t> parent;
    bool confirmed{false};

    friend bool operator==(const Block&, const Block&) = default;
};

struct VoteClaim {
    double claimed{0.0};
    double entitled{0.0};

    friend bool operator==(const VoteClaim&, const VoteClaim&) = default;
};

struct Join {
    NodeId node;
    std::string address;

    friend bool operator==(const Join&, const Join&) = default;
};

/** What a node reports about its own ledger funds for the round. */
struct AccountView {
    Amount opening{0.0};
    Amount reported{0.0};

    friend bool operator==(const AccountView&, const AccountView&) = default;
};

struct FeeSample {
    Round round{0};
    double mean_fee{0.0};

    friend bool operator==(const FeeSample&, const FeeSample&) = default;
};

struct RoundEvents {
    Round round{0};
    std::vector<Block> proposed_blocks;
    std::vector<Block> unconfirmed_pool;
    std::vector<Transaction> confirmed_txs;
    std::map<NodeId, VoteClaim> votes;
    std::vector<Join> joins;
    std::map<NodeId, std::uint32_t> per_node_message_count;
    std::map<NodeId, std::uint32_t> per_node_error_count;
    std::map<NodeId, double> per_node_resource_use;
    std::map<NodeId, double> per_node_hash_rate;
    std::map<NodeId, AccountView> accounts;
    std::uint32_t fork_count{0};
    // Trailing per-round mean confirmed fee, oldest first.
    std::vector<FeeSample> fee_history;

    friend bool operator==(const RoundEvents&, const RoundEvents&) = default;
};

/** Per-node detection signals in [0,1]; absent nodes read as all-zero. */
class DetectionReport
{
public:
    double signal(NodeId n, BehaviorId b) const noexcept;
    BehaviorVector row(NodeId n) const noexcept;
    void set(NodeId n, BehaviorId b, double v);
    /** Max-merge another report into this one. */
    void merge(const DetectionReport& other);
    bool any_positive(NodeId n) const noexcept;
    const std::map<NodeId, BehaviorVector>& rows() const noexcept { return rows_; }
    /** Number of (node, behavior) pairs with a positive signal. */
    std::size_t positive_count() const noexcept;

    friend bool operator==(const DetectionReport& a, const DetectionReport& b);

private:
    std::map<NodeId, BehaviorVector> rows_;
};

bool row_has_positive(const BehaviorVector& row) noexcept;

} // namespace mrlpos

#endif // MRLPOS_CORE_HPP
