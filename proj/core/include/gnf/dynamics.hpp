#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "gnf/equilibria.hpp"

namespace gnf {

struct ActivationSchedule {
    enum class Mode { round_robin, random, explicit_list };
    Mode mode = Mode::round_robin;
    std::uint64_t seed = 0;
    std::vector<int> order;  // explicit_list only

    static ActivationSchedule round_robin() { return {}; }
    static ActivationSchedule random(std::uint64_t seed) {
        return {Mode::random, seed, {}};
    }
    static ActivationSchedule explicit_order(std::vector<int> order) {
        return {Mode::explicit_list, 0, std::move(order)};
    }

    void validate(int n) const {
        for (int a : order)
            if (a < 0 || a >= n) throw std::invalid_argument("schedule agent out of range");
    }
};

enum class MoveSource { single_moves, full_strategies };

// For single-move dynamics: apply the first strictly improving move in
// canonical order (the default), or scan all moves and apply the best one.
enum class SingleMoveRule { first_improving, best_improving };

// Supplies a full deviation strategy for the activated agent, or nullopt for
// "no proposal". Only used with MoveSource::full_strategies.
using DeviationSupplier =
    std::function<std::optional<std::vector<int>>(int step, int agent, const StrategyProfile&)>;

template <class S>
struct DynamicsStepT {
    int agent;
    std::vector<int> strategy;        // strategy after the step
    std::optional<Move> move;         // set for single-move dynamics
    CostBreakdownT<S> before;
    CostBreakdownT<S> after;
};

enum class DynamicsStatus { converged, cycle_detected, step_limit };

template <class S>
struct DynamicsTraceT {
    std::vector<DynamicsStepT<S>> steps;
    DynamicsStatus status = DynamicsStatus::step_limit;
    int cycle_start = -1;   // index into visited profile sequence
    int cycle_length = 0;
    StrategyProfile final_profile;
};

namespace detail {

// Tracks visited profiles by 128-bit hash with exact confirmation on hits.
class CycleDetector {
public:
    // Returns the index of the first occurrence if `p` was seen before.
    std::optional<int> visit(const StrategyProfile& p) {
        ProfileHash h = hash_profile(p);
        auto key = std::make_pair(h.lo, h.hi);
        auto [it, inserted] = index_.try_emplace(key);
        if (!inserted) {
            for (int idx : it->second)
                if (seen_[idx] == p) return idx;
        }
        it->second.push_back(static_cast<int>(seen_.size()));
        seen_.push_back(p);
        return std::nullopt;
    }

    int count() const { return static_cast<int>(seen_.size()); }

private:
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<int>> index_;
    std::vector<StrategyProfile> seen_;
};

class ScheduleCursor {
public:
    ScheduleCursor(const ActivationSchedule& schedule, int n)
        : schedule_(schedule), n_(n), rng_(schedule.seed) {}

    // Returns the next agent to activate, or -1 when an explicit schedule is
    // exhausted.
    int next() {
        switch (schedule_.mode) {
            case ActivationSchedule::Mode::round_robin:
                return static_cast<int>(tick_++ % n_);
            case ActivationSchedule::Mode::random:
                return std::uniform_int_distribution<int>(0, n_ - 1)(rng_);
            case ActivationSchedule::Mode::explicit_list:
                if (tick_ >= schedule_.order.size()) return -1;
                return schedule_.order[tick_++];
        }
        return -1;
    }

private:
    const ActivationSchedule& schedule_;
    int n_;
    std::mt19937_64 rng_;
    std::size_t tick_ = 0;
};

}  // namespace detail

// Exact profile-equality cycle scan over a prefix of visited profiles.
inline std::optional<std::pair<int, int>> detect_cycle(const std::vector<StrategyProfile>& seq) {
    detail::CycleDetector det;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (auto first = det.visit(seq[i])) return std::make_pair(*first, static_cast<int>(i));
    }
    return std::nullopt;
}

// Sequential improving-response dynamics. Each activation applies the first
// strictly improving move (single edge change) or the supplied full-strategy
// deviation when it strictly improves. Stops at a fixpoint, a detected
// profile repeat, or the step limit. `step_limit` counts activations.
template <class S>
DynamicsTraceT<S> run_improving_dynamics(const MetricSpaceT<S>& m, const StrategyProfile& s0,
                                         const S& alpha, const ZPolicyT<S>& z,
                                         const ActivationSchedule& schedule,
                                         MoveSource move_source, int step_limit,
                                         const DeviationSupplier& supplier = {},
                                         SingleMoveRule rule = SingleMoveRule::first_improving) {
    if (step_limit <= 0) throw std::invalid_argument("step limit must be positive");
    s0.validate(m.size());
    schedule.validate(m.size());
    if (move_source == MoveSource::full_strategies && !supplier) {
        throw std::invalid_argument("full-strategy dynamics needs a deviation supplier");
    }

    const int n = m.size();
    StrategyProfile s = s0;
    DynamicsTraceT<S> trace;
    detail::CycleDetector cycles;
    cycles.visit(s);
    detail::ScheduleCursor cursor(schedule, n);

    auto no_single_move_improves = [&](int agent) {
        DeviationMatrixT<S> dm = deviation_matrix(m, s, agent);
        return !first_improving_move(dm, s, alpha, z).has_value();
    };
    auto fixpoint = [&]() {
        if (move_source != MoveSource::single_moves) return false;
        for (int u = 0; u < n; ++u)
            if (!no_single_move_improves(u)) return false;
        return true;
    };

    int idle = 0;
    for (int step = 0; step < step_limit; ++step) {
        int agent = cursor.next();
        if (agent < 0) {
            // explicit schedule exhausted
            trace.status = fixpoint() ? DynamicsStatus::converged : DynamicsStatus::step_limit;
            trace.final_profile = s;
            return trace;
        }

        DeviationMatrixT<S> dm = deviation_matrix(m, s, agent);
        auto before = dm.cost_of(s.strategies[agent], alpha);
        std::optional<DynamicsStepT<S>> applied;

        if (move_source == MoveSource::single_moves) {
            auto hit = (rule == SingleMoveRule::first_improving)
                           ? first_improving_move(dm, s, alpha, z)
                           : best_improving_move(dm, s, alpha, z);
            if (hit) {
                DynamicsStepT<S> st;
                st.agent = agent;
                st.move = hit->first;
                st.strategy = apply_move(s.strategies[agent], hit->first);
                st.before = before;
                st.after = hit->second;
                applied = std::move(st);
            }
        } else {
            if (auto proposal = supplier(step, agent, s)) {
                auto cost = dm.cost_of(*proposal, alpha);
                if (compare_costs(cost, before, z) < 0) {
                    DynamicsStepT<S> st;
                    st.agent = agent;
                    st.strategy = *proposal;
                    st.before = before;
                    st.after = cost;
                    applied = std::move(st);
                }
            }
        }

        if (!applied) {
            if (++idle >= n && fixpoint()) {
                trace.status = DynamicsStatus::converged;
                trace.final_profile = s;
                return trace;
            }
            continue;
        }
        idle = 0;
        s.set(agent, applied->strategy);
        trace.steps.push_back(std::move(*applied));
        if (auto first = cycles.visit(s)) {
            trace.status = DynamicsStatus::cycle_detected;
            trace.cycle_start = *first;
            trace.cycle_length = cycles.count() - *first;
            trace.final_profile = s;
            return trace;
        }
    }
    trace.status = DynamicsStatus::step_limit;
    trace.final_profile = s;
    return trace;
}

// Best-response dynamics: each activation replaces the agent's strategy by
// its exact best response when that strictly improves.
template <class S>
DynamicsTraceT<S> run_best_response_dynamics(const MetricSpaceT<S>& m, const StrategyProfile& s0,
                                             const S& alpha, const ZPolicyT<S>& z,
                                             const ActivationSchedule& schedule, int step_limit,
                                             int exact_limit = kDefaultExactLimit) {
    if (step_limit <= 0) throw std::invalid_argument("step limit must be positive");
    s0.validate(m.size());
    schedule.validate(m.size());

    const int n = m.size();
    StrategyProfile s = s0;
    DynamicsTraceT<S> trace;
    detail::CycleDetector cycles;
    cycles.visit(s);
    detail::ScheduleCursor cursor(schedule, n);

    auto improving_br = [&](int agent) -> std::optional<DynamicsStepT<S>> {
        auto br = best_response_exact(m, s, agent, alpha, z, exact_limit);
        DeviationMatrixT<S> dm = deviation_matrix(m, s, agent);
        auto before = dm.cost_of(s.strategies[agent], alpha);
        if (compare_costs(br.cost, before, z) >= 0) return std::nullopt;
        DynamicsStepT<S> st;
        st.agent = agent;
        st.strategy = br.strategy;
        st.before = before;
        st.after = br.cost;
        return st;
    };
    auto fixpoint = [&]() {
        for (int u = 0; u < n; ++u)
            if (improving_br(u)) return false;
        return true;
    };

    int idle = 0;
    for (int step = 0; step < step_limit; ++step) {
        int agent = cursor.next();
        if (agent < 0) {
            trace.status = fixpoint() ? DynamicsStatus::converged : DynamicsStatus::step_limit;
            trace.final_profile = s;
            return trace;
        }
        auto applied = improving_br(agent);
        if (!applied) {
            if (++idle >= n && fixpoint()) {
                trace.status = DynamicsStatus::converged;
                trace.final_profile = s;
                return trace;
            }
            continue;
        }
        idle = 0;
        s.set(agent, applied->strategy);
        trace.steps.push_back(std::move(*applied));
        if (auto first = cycles.visit(s)) {
            trace.status = DynamicsStatus::cycle_detected;
            trace.cycle_start = *first;
            trace.cycle_length = cycles.count() - *first;
            trace.final_profile = s;
            return trace;
        }
    }
    trace.status = DynamicsStatus::step_limit;
    trace.final_profile = s;
    return trace;
}

}  // namespace gnf
