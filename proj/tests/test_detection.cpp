// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "support.hpp"

#include <doctest.h>

using namespace mrlpos;

namespace {

const DetectionConfig kCfg{};

Block block(NodeId proposer, bool confirmed, std::vector<Transaction> txs = {})
{
    return Block{0, proposer, std::move(txs), std::nullopt, confirmed};
}

Transaction tx(std::uint64_t id, std::uint32_t from, double amount, Round ts = 0, double fee = 0.1)
{
    return Transaction{id, NodeId{from}, NodeId{99}, amount, fee, ts, std::nullopt};
}

// Behaviors a family detector is allowed to emit.
bool in_family(BehaviorId b, AttackKind k) { return behavior_attack_kind(b) == k; }

void check_locality(const DetectionReport& r, AttackKind k)
{
    for (const auto& [id, row] : r.rows()) {
        for (BehaviorId b : kAllBehaviors) {
            if (row[index_of(b)] > 0.0) CHECK(in_family(b, k));
        }
    }
}

} // namespace

TEST_CASE("b1: majority of recent blocks")
{
    // 6 of the last 10 blocks (9 in history plus the current one) from node 1.
    std::vector<RoundEvents> history(9);
    for (int i = 0; i < 9; ++i) history[i].proposed_blocks.push_back(block(NodeId{i < 5 ? 1u : 2u + i}, true));
    RoundEvents now;
    now.proposed_blocks.push_back(block(NodeId{1}, true));
    const auto r = detect_fifty_one(now, history, kCfg);
    CHECK(r.signal(NodeId{1}, BehaviorId::B1) == 1.0);
    CHECK(r.positive_count() == 1);

    // Exactly half is not a majority.
    history[4].proposed_blocks[0].proposer = NodeId{50};
    CHECK(detect_fifty_one(now, history, kCfg).signal(NodeId{1}, BehaviorId::B1) == 0.0);
}

TEST_CASE("b2: hash rate against the network mean")
{
    RoundEvents ev;
    const double rates[] = {10.0, 2.0, 2.0, 2.0};
    for (std::uint32_t i = 0; i < 4; ++i) ev.per_node_hash_rate[NodeId{i}] = rates[i];
    double sum = 0.0;
    for (double r : rates) sum += r;
    const double mean = sum / 4.0;
    REQUIRE(mean == doctest::Approx(4.0));

    std::vector<RoundEvents> history(1);
    const auto r = detect_fifty_one(ev, history, kCfg);
    for (std::uint32_t i = 0; i < 4; ++i) {
        CHECK(r.signal(NodeId{i}, BehaviorId::B2) == (rates[i] > kCfg.hash_rate_factor * mean ? 1.0 : 0.0));
    }
    CHECK(r.signal(NodeId{0}, BehaviorId::B2) == 1.0);
}

TEST_CASE("b3: forks over the window")
{
    std::vector<RoundEvents> history(2);
    history[0].proposed_blocks = {block(NodeId{4}, false), block(NodeId{4}, false)};
    RoundEvents now;
    now.proposed_blocks = {block(NodeId{4}, false), block(NodeId{5}, false)};
    const auto r = detect_fifty_one(now, history, kCfg);
    CHECK(r.signal(NodeId{4}, BehaviorId::B3) == 1.0);
    CHECK(r.signal(NodeId{5}, BehaviorId::B3) == 0.0);
}

TEST_CASE("empty history gives no 51% evidence")
{
    RoundEvents ev;
    ev.proposed_blocks = {block(NodeId{1}, false), block(NodeId{1}, false), block(NodeId{1}, false)};
    ev.per_node_hash_rate = {{NodeId{1}, 50.0}, {NodeId{2}, 1.0}, {NodeId{3}, 1.0}};
    CHECK(detect_fifty_one(ev, {}, kCfg) == DetectionReport{});
}

TEST_CASE("double spend detectors")
{
    SUBCASE("same tx id in two unconfirmed blocks")
    {
        RoundEvents ev;
        ev.unconfirmed_pool = {block(NodeId{1}, false, {tx(5, 3, 1.0)}), block(NodeId{2}, false, {tx(5, 3, 1.0)})};
        const auto r = detect_double_spend(ev, kCfg);
        CHECK(r.signal(NodeId{3}, BehaviorId::B4) == 1.0);
        CHECK(r.positive_count() == 1);
    }
    SUBCASE("empty pool")
    {
        CHECK(detect_double_spend(RoundEvents{}, kCfg) == DetectionReport{});
    }
    SUBCASE("two payments of 8 from a balance of 10")
    {
        RoundEvents ev;
        ev.accounts[NodeId{3}] = AccountView{10.0, 10.0};
        ev.unconfirmed_pool = {block(NodeId{1}, false, {tx(1, 3, 8.0, 4, 0.0), tx(2, 3, 8.0, 4, 0.0)})};
        // Oracle: walk the payments against the balance.
        double funds = 10.0;
        int uncovered = 0;
        for (double amt : {8.0, 8.0}) {
            if (amt > funds) ++uncovered;
            else funds -= amt;
        }
        REQUIRE(uncovered == 1);
        CHECK(detect_double_spend(ev, kCfg).signal(NodeId{3}, BehaviorId::B5) == 1.0);

        // Different amounts are an overdraft, not a double spend.
        ev.unconfirmed_pool[0].transactions[1].amount = 9.0;
        CHECK(detect_double_spend(ev, kCfg).signal(NodeId{3}, BehaviorId::B5) == 0.0);
    }
    SUBCASE("reported balance disagrees with the ledger")
    {
        RoundEvents ev;
        ev.confirmed_txs = {tx(1, 3, 4.0, 0, 0.5)};
        ev.accounts[NodeId{3}] = AccountView{10.0, 5.5};
        CHECK(detect_double_spend(ev, kCfg).signal(NodeId{3}, BehaviorId::B6) == 0.0);
        ev.accounts[NodeId{3}].reported = 10.0;
        CHECK(detect_double_spend(ev, kCfg).signal(NodeId{3}, BehaviorId::B6) == 1.0);
    }
}

TEST_CASE("sybil detectors")
{
    RoundEvents ev;
    for (std::uint32_t i = 0; i < 5; ++i) ev.joins.push_back(Join{NodeId{i}, "10.0.0." + std::to_string(10 + i)});
    ev.joins.push_back(Join{NodeId{9}, "192.168.4.1"});

    // Oracle: group by prefix, flag groups of two or more once the spike threshold is met.
    std::map<std::string, std::vector<NodeId>> groups;
    for (const auto& j : ev.joins) groups[j.address.substr(0, j.address.rfind('.'))].push_back(j.node);
    REQUIRE(ev.joins.size() >= kCfg.join_spike_threshold);

    ev.votes[NodeId{0}] = VoteClaim{10.0, 10.0};
    ev.votes[NodeId{1}] = VoteClaim{30.0, 10.0};
    ev.per_node_message_count[NodeId{2}] = 80;
    ev.per_node_message_count[NodeId{3}] = 49;

    const auto r = detect_sybil(ev, kCfg);
    for (const auto& [prefix, members] : groups) {
        for (NodeId id : members) CHECK(r.signal(id, BehaviorId::B7) == (members.size() >= 2 ? 1.0 : 0.0));
    }
    CHECK(r.signal(NodeId{0}, BehaviorId::B8) == 0.0);
    CHECK(r.signal(NodeId{1}, BehaviorId::B8) == 1.0);
    CHECK(r.signal(NodeId{2}, BehaviorId::B9) == 1.0);
    CHECK(r.signal(NodeId{3}, BehaviorId::B9) == 0.0);

    ev.joins.resize(4); // below the spike threshold
    CHECK(detect_sybil(ev, kCfg).signal(NodeId{0}, BehaviorId::B7) == 0.0);
}

TEST_CASE("replay detectors")
{
    std::vector<RoundEvents> history(4);
    history[0].round = 4;
    history[0].confirmed_txs = {tx(77, 6, 1.0, 4)};

    SUBCASE("confirmed tx resubmitted later")
    {
        RoundEvents ev;
        ev.round = 7;
        ev.unconfirmed_pool = {block(NodeId{6}, false, {tx(77, 6, 1.0, 7)})};
        const auto r = detect_replay(ev, history, kCfg);
        CHECK(r.signal(NodeId{6}, BehaviorId::B10) == 1.0);
        CHECK(r.signal(NodeId{6}, BehaviorId::B11) == 0.0);
    }
    SUBCASE("producer confirms history again")
    {
        RoundEvents ev;
        ev.proposed_blocks = {block(NodeId{2}, true, {tx(77, 6, 1.0, 7)})};
        ev.confirmed_txs = ev.proposed_blocks[0].transactions;
        const auto r = detect_replay(ev, history, kCfg);
        CHECK(r.signal(NodeId{2}, BehaviorId::B11) == 1.0);
    }
    SUBCASE("fee spike")
    {
        RoundEvents ev;
        ev.fee_history = {FeeSample{1, 1.0}, FeeSample{2, 1.0}};
        ev.unconfirmed_pool = {block(NodeId{0}, false, {tx(1, 3, 1.0, 0, 4.0), tx(2, 4, 1.0, 0, 2.5)})};
        const auto r = detect_replay(ev, history, kCfg);
        CHECK(r.signal(NodeId{3}, BehaviorId::B12) == 1.0);
        CHECK(r.signal(NodeId{4}, BehaviorId::B12) == 0.0);

        ev.fee_history.clear();
        CHECK(detect_replay(ev, history, kCfg).signal(NodeId{3}, BehaviorId::B12) == 0.0);
    }
    SUBCASE("quiet round")
    {
        RoundEvents ev;
        ev.fee_history = {FeeSample{1, 0.1}};
        ev.confirmed_txs = {tx(100, 1, 1.0, 8)};
        ev.unconfirmed_pool = {block(NodeId{0}, false, {tx(101, 2, 1.0, 8)})};
        CHECK(detect_replay(ev, history, kCfg) == DetectionReport{});
    }
}

TEST_CASE("contract detectors")
{
    RoundEvents ev;
    ev.confirmed_txs = {tx(1, 1, 2.0), tx(2, 2, 2.0)};
    ev.unconfirmed_pool = {block(NodeId{0}, false, {tx(3, 5, 50.0)})};
    auto r = detect_contract(ev, kCfg);
    CHECK(r.signal(NodeId{5}, BehaviorId::B13) == 1.0); // 50 > 10 * 2

    Block calls = block(NodeId{0}, false);
    for (std::uint64_t k = 0; k < 25; ++k) {
        Transaction t = tx(10 + k, 8, 0.0);
        t.contract_ref = "vault";
        calls.transactions.push_back(t);
    }
    ev.unconfirmed_pool.push_back(calls);
    r = detect_contract(ev, kCfg);
    CHECK(r.signal(NodeId{8}, BehaviorId::B14) == 1.0);

    RoundEvents single;
    single.confirmed_txs = {tx(1, 1, 3.0)};
    CHECK(detect_contract(single, kCfg).signal(NodeId{1}, BehaviorId::B13) == 0.0);

    RoundEvents none;
    none.unconfirmed_pool = {block(NodeId{0}, false, {tx(3, 5, 5000.0)})};
    CHECK(detect_contract(none, kCfg).signal(NodeId{5}, BehaviorId::B13) == 0.0);
}

TEST_CASE("ddos detectors")
{
    RoundEvents ev;
    ev.per_node_error_count = {{NodeId{1}, 12}, {NodeId{2}, 0}};
    ev.per_node_resource_use = {{NodeId{1}, 0.95}, {NodeId{2}, 0.3}};
    const auto r = detect_ddos(ev, kCfg);
    CHECK(r.signal(NodeId{1}, BehaviorId::B15) == 1.0);
    CHECK(r.signal(NodeId{1}, BehaviorId::B16) == 1.0);
    CHECK_FALSE(r.any_positive(NodeId{2}));
}

TEST_CASE("compile_report examples")
{
    CHECK(compile_report(RoundEvents{}, {}, kCfg) == DetectionReport{});

    RoundEvents dup;
    dup.unconfirmed_pool = {block(NodeId{1}, false, {tx(5, 3, 1.0)}), block(NodeId{2}, false, {tx(5, 3, 1.0)})};
    CHECK(compile_report(dup, {}, kCfg).positive_count() == 1);

    std::vector<RoundEvents> history(9);
    for (auto& h : history) h.proposed_blocks.push_back(block(NodeId{4}, true));
    RoundEvents both;
    both.per_node_message_count[NodeId{4}] = 60;
    const auto r = compile_report(both, history, kCfg);
    CHECK(r.signal(NodeId{4}, BehaviorId::B1) == 1.0);
    CHECK(r.signal(NodeId{4}, BehaviorId::B9) == 1.0);
    CHECK(r.positive_count() == 2);
}

TEST_CASE("detectors stay inside their family and are pure")
{
    std::mt19937_64 g(7);
    for (int i = 0; i < 300; ++i) {
        std::vector<RoundEvents> history;
        for (int h = 0; h < 4; ++h) history.push_back(testing::fuzz_events(g, i - 4 + h));
        const RoundEvents ev = testing::fuzz_events(g, i);
        check_locality(detect_fifty_one(ev, history, kCfg), AttackKind::FiftyOnePercent);
        check_locality(detect_double_spend(ev, kCfg), AttackKind::DoubleSpend);
        check_locality(detect_sybil(ev, kCfg), AttackKind::Sybil);
        check_locality(detect_replay(ev, history, kCfg), AttackKind::Replay);
        check_locality(detect_contract(ev, kCfg), AttackKind::ContractExploit);
        check_locality(detect_ddos(ev, kCfg), AttackKind::DDoS);
        CHECK(compile_report(ev, history, kCfg) == compile_report(ev, history, kCfg));
    }
}

TEST_CASE("aggregate attack probability")
{
    const Weights uniform;
    BehaviorScores s;
    CHECK(aggregate_attack_probability(s, uniform) == 0.0);
    s.set(BehaviorId::B5, 1.0);
    CHECK(aggregate_attack_probability(s, uniform) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(aggregate_attack_probability(s, uniform) == 0.0625);

    BehaviorScores neg;
    for (BehaviorId b : kAllBehaviors) neg.set(b, -0.5);
    CHECK(aggregate_attack_probability(neg, uniform) == 0.0);

    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        BehaviorVector raw;
        for (auto& x : raw) x = std::fabs(u(g));
        const Weights w(raw);
        BehaviorScores sc;
        for (BehaviorId b : kAllBehaviors) sc.set(b, u(g));
        const double before = aggregate_attack_probability(sc, w);
        CHECK(before >= 0.0);
        CHECK(before <= 1.0);
        const BehaviorId b = kAllBehaviors[g() % 16];
        BehaviorScores raised = sc;
        raised.set(b, sc[b] + std::fabs(u(g)));
        CHECK(aggregate_attack_probability(raised, w) >= before);
    }
}

TEST_CASE("weights normalize")
{
    BehaviorVector raw;
    raw.fill(2.0);
    const Weights w(raw);
    for (BehaviorId b : kAllBehaviors) CHECK(w[b] == 1.0 / 16.0);
    CHECK(Weights(w.values()) == w);
    raw[3] = -1.0;
    CHECK_THROWS_AS(Weights{raw}, Error);
    raw.fill(0.0);
    CHECK_THROWS_AS(Weights{raw}, Error);
}

TEST_CASE("config validation names the field")
{
    DetectionConfig c;
    CHECK_NOTHROW(c.validate());
    c.hash_rate_factor = 1.0;
    try {
        c.validate();
        FAIL("expected a range error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Range);
        CHECK(std::string(e.what()).find("detection.hash_rate_factor") == 0);
    }
}

TEST_CASE("address prefix")
{
    CHECK(address_prefix("10.0.0.7", 3) == "10.0.0");
    CHECK(address_prefix("10.0.0.7", 1) == "10");
    CHECK(address_prefix("localhost", 3) == "localhost");
}
