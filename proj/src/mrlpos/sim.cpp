// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "mrlpos/sim.hpp"

#include <cmath>
#include <algorithm>

namespace mrlpos {

namespace {

void require(bool ok, const std::string& field, const char* range)
{
    if (!ok) throw Error(ErrorCode::Range, field + " must be " + range);
}

double mean_confirmed_fee(const RoundEvents& ev)
{
    if (ev.confirmed_txs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& tx : ev.confirmed_txs) sum += tx.fee;
    return sum / static_cast<double>(ev.confirmed_txs.size());
}

bool any_active(const std::vector<NodeState>& world)
{
    for (const auto& n : world) {
        if (n.reputation.is_active) return true;
    }
    return false;
}

} // namespace

std::string_view to_string(Elector e) noexcept
{
    switch (e) {
    case Elector::MrlPos: return "mrlpos";
    case Elector::PoS: return "pos";
    case Elector::DPoS: return "dpos";
    }
    return "mrlpos";
}

std::optional<Elector> parse_elector(std::string_view s)
{
    if (s == "mrlpos") return Elector::MrlPos;
    if (s == "pos") return Elector::PoS;
    if (s == "dpos") return Elector::DPoS;
    return std::nullopt;
}

void TrafficParams::validate() const
{
    require(mean_amount > 0.0, "traffic.mean_amount", "> 0");
    require(amount_spread >= 0.0 && amount_spread < mean_amount, "traffic.amount_spread", "in [0, mean_amount)");
    require(mean_fee >= 0.0, "traffic.mean_fee", ">= 0");
    require(fee_spread >= 0.0 && fee_spread <= mean_fee, "traffic.fee_spread", "in [0, mean_fee]");
    require(contract_share >= 0.0 && contract_share <= 1.0, "traffic.contract_share", "in [0, 1]");
}

void Scenario::validate() const
{
    require(rounds >= 1, "rounds", ">= 1");
    require(node_count() >= 1, "nodes", "a total count >= 1");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string at = "nodes[" + std::to_string(i) + "].";
        require(nodes[i].stake > 0.0 && std::isfinite(nodes[i].stake), at + "stake", "> 0");
        require(std::isfinite(nodes[i].initial_balance), at + "initial_balance", "finite");
        const double p = nodes[i].strategy.persistence;
        require(p >= 0.0 && p <= 1.0, at + "persistence", "in [0, 1]");
    }
    require(delegate_count >= 1, "delegate_count", ">= 1");
    detection.validate();
    learning.validate();
    traffic.validate();
}

std::uint32_t Scenario::node_count() const noexcept
{
    std::uint32_t n = 0;
    for (const auto& g : nodes) n += g.count;
    return n;
}

std::vector<NodeState> Scenario::build_world() const
{
    std::vector<NodeState> world;
    world.reserve(node_count());
    std::uint32_t id = 0;
    for (const auto& g : nodes) {
        for (std::uint32_t k = 0; k < g.count; ++k) world.push_back(new_node(NodeId{id++}, g.stake, g.strategy, g.initial_balance));
    }
    return world;
}

std::vector<StrategyDescriptor> strategies_of(const Scenario& scenario)
{
    std::vector<StrategyDescriptor> out;
    for (const auto& g : scenario.nodes) out.insert(out.end(), g.count, g.strategy);
    return out;
}

NodeSnapshot snapshot_of(const NodeState& node) noexcept
{
    const auto& rep = node.reputation;
    return NodeSnapshot{node.id,
                        rep.attack_probability,
                        rep.last_attack_age,
                        static_cast<std::uint32_t>(rep.restrictions.size()),
                        node.balance,
                        rep.is_active};
}

std::uint32_t count_active(const std::vector<NodeSnapshot>& snaps, const Scenario& scenario, bool malicious)
{
    const auto strategies = strategies_of(scenario);
    std::uint32_t n = 0;
    for (const auto& s : snaps) {
        if (s.is_active && s.id.value < strategies.size() && strategies[s.id.value].is_malicious() == malicious) ++n;
    }
    return n;
}

SimState::SimState(const Scenario& scenario) : world(scenario.build_world()), rng(scenario.seed)
{
    // Attack-free warm-up rounds at negative indices give the window detectors a baseline.
    const auto window = static_cast<Round>(scenario.detection.window);
    for (Round r = -window; r < 0; ++r) {
        ledger.previous_validator = world[rng.below(world.size())].id;
        RoundEvents ev = generate_events(world, ledger, r, history, scenario, rng, false);
        commit_history(*this, std::move(ev), scenario);
    }
}

void commit_history(SimState& state, RoundEvents events, const Scenario& scenario)
{
    const std::size_t window = scenario.detection.window;
    state.ledger.fee_history.push_back(FeeSample{events.round, mean_confirmed_fee(events)});
    while (state.ledger.fee_history.size() > window) state.ledger.fee_history.pop_front();
    state.history.push_back(std::move(events));
    while (state.history.size() > window) state.history.pop_front();
}

std::optional<RoundRecord> run_round(SimState& state, Round round, const Scenario& scenario)
{
    if (!any_active(state.world)) return std::nullopt;

    RoundEvents events = generate_events(state.world, state.ledger, round, state.history, scenario, state.rng);
    const std::vector<RoundEvents> past(state.history.begin(), state.history.end());
    const DetectionReport report = compile_report(events, History(past), scenario.detection);

    RoundRecord rec;
    rec.round = round;
    for (const auto& node : state.world) {
        if (!node.reputation.is_active) continue;
        const BehaviorVector row = report.row(node.id);
        for (BehaviorId b : kAllBehaviors) {
            if (row[index_of(b)] > 0.0) rec.behaviors_detected.emplace_back(node.id, b);
        }
    }

    switch (scenario.elector) {
    case Elector::MrlPos: {
        MrlElection election = elect_validator(std::move(state.world), scenario.learning, state.rng);
        state.world = std::move(election.candidates);
        rec.elected = election.outcome.elected;
        break;
    }
    case Elector::PoS:
        rec.elected = pos_elect(state.world, state.rng).elected;
        break;
    case Elector::DPoS:
        rec.elected = dpos_elect(state.world, scenario.delegate_count, round, state.rng).elected;
        break;
    }

    for (auto& node : state.world) {
        if (!node.reputation.is_active) continue;
        const BehaviorVector row = report.row(node.id);
        const bool flagged = row_has_positive(row);
        if (rec.elected && node.id == *rec.elected) {
            rec.elected_was_malicious = node.strategy.is_malicious();
            if (scenario.elector == Elector::MrlPos) {
                if (flagged) {
                    node = apply_penalty(std::move(node), row, scenario.weights, scenario.learning);
                    rec.penalty_applied = true;
                } else {
                    node = apply_reward(std::move(node), scenario.weights, scenario.learning);
                    rec.reward_applied = true;
                }
            } else {
                const bool failed = flagged && causes_block_failure(row);
                node = baseline_settle(std::move(node), failed, scenario.learning);
                rec.penalty_applied = failed;
                rec.reward_applied = !failed;
            }
        } else if (scenario.elector == Elector::MrlPos && flagged) {
            node = observe_misbehavior(std::move(node), row, scenario.weights, scenario.learning);
        }
    }
    for (auto& node : state.world) {
        if (node.balance < 0.0) node.reputation.is_active = false;
    }

    rec.snapshots.reserve(state.world.size());
    for (const auto& node : state.world) rec.snapshots.push_back(snapshot_of(node));

    state.ledger.previous_validator = rec.elected;
    commit_history(state, std::move(events), scenario);
    return rec;
}

SimulationResult run_simulation(const Scenario& scenario)
{
    scenario.validate();
    SimulationResult result;
    result.scenario = scenario;
    SimState state(scenario);

    for (std::uint32_t r = 0; r < scenario.rounds; ++r) {
        auto rec = run_round(state, r, scenario);
        if (!rec) {
            result.summary.halted_early = true;
            break;
        }
        result.records.push_back(std::move(*rec));
    }

    Summary& s = result.summary;
    s.rounds_run = static_cast<std::uint32_t>(result.records.size());
    const auto strategies = strategies_of(scenario);
    const bool has_attackers =
        std::any_of(strategies.begin(), strategies.end(), [](const auto& st) { return st.is_malicious(); });
    if (!has_attackers) s.rounds_to_elimination = 0;
    for (const auto& rec : result.records) {
        if (has_attackers && !s.rounds_to_elimination && count_active(rec.snapshots, scenario, true) == 0) {
            s.rounds_to_elimination = static_cast<std::uint32_t>(rec.round + 1);
        }
    }
    for (const auto& node : state.world) {
        const bool bad = node.strategy.is_malicious();
        const bool up = node.reputation.is_active;
        (bad ? (up ? s.final_active_malicious : s.eliminated_malicious)
             : (up ? s.final_active_honest : s.eliminated_honest))++;
    }
    return result;
}

std::array<SimulationResult, 3> run_comparison(const Scenario& scenario)
{
    std::array<SimulationResult, 3> out;
    const std::array<Elector, 3> order{Elector::MrlPos, Elector::PoS, Elector::DPoS};
    for (std::size_t i = 0; i < order.size(); ++i) {
        Scenario s = scenario;
        s.elector = order[i];
        out[i] = run_simulation(s);
    }
    return out;
}

} // namespace mrlpos
