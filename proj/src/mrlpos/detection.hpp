// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_DETECTION_HPP
#define MRLPOS_DETECTION_HPP

#include "mrlpos/core.hpp"

#include <span>

namespace mrlpos {

/**
 * Thresholds of the activity tracker. Defaults are tuned so that background
 * traffic from honest nodes never trips a detector while every attacker
 * archetype trips at least one detector of its family within one window.
 */
struct DetectionConfig {
    double block_share_threshold{0.5};
    double hash_rate_factor{2.0};
    std::uint32_t fork_rate_threshold{3};
    std::uint32_t window{10};
    std::uint32_t join_spike_threshold{5};
    std::uint32_t spam_message_threshold{50};
    double fee_spike_factor{3.0};
    double large_transfer_factor{10.0};
    std::uint32_t contract_activity_threshold{20};
    std::uint32_t error_threshold{10};
    double resource_threshold{0.9};
    // Number of leading address octets two joiners must share to count as clustered.
    std::uint32_t address_prefix_octets{3};

    /** Throws Error(Range) naming the offending field. */
    void validate() const;

    friend bool operator==(const DetectionConfig&, const DetectionConfig&) = default;
};

/** Non-negative weight per behavior, normalized to sum to 1. */
class Weights
{
public:
    /** Uniform 1/16. */
    Weights();
    /** Normalizes; throws Error(Range) on a negative entry or an all-zero vector. */
    explicit Weights(const BehaviorVector& raw);

    double operator[](BehaviorId b) const noexcept { return w_[index_of(b)]; }
    const BehaviorVector& values() const noexcept { return w_; }

    friend bool operator==(const Weights&, const Weights&) = default;

private:
    BehaviorVector w_;
};

/** Recent rounds, oldest first; at most DetectionConfig::window entries are read. */
using History = std::span<const RoundEvents>;

DetectionReport detect_fifty_one(const RoundEvents& events, History history, const DetectionConfig& cfg);
DetectionReport detect_double_spend(const RoundEvents& events, const DetectionConfig& cfg);
DetectionReport detect_sybil(const RoundEvents& events, const DetectionConfig& cfg);
DetectionReport detect_replay(const RoundEvents& events, History history, const DetectionConfig& cfg);
DetectionReport detect_contract(const RoundEvents& events, const DetectionConfig& cfg);
DetectionReport detect_ddos(const RoundEvents& events, const DetectionConfig& cfg);

/** Union of the six family detectors; every node seen in the events has a row. */
DetectionReport compile_report(const RoundEvents& events, History history, const DetectionConfig& cfg);

/** clamp(sum_i w_i * max(score_i, 0), 0, 1) */
double aggregate_attack_probability(const BehaviorScores& scores, const Weights& w) noexcept;

/** "a.b.c" for address "a.b.c.d" with octets = 3. Returns the whole string if it has fewer dots. */
std::string address_prefix(const std::string& address, std::uint32_t octets);

} // namespace mrlpos

#endif // MRLPOS_DETECTION_HPP
