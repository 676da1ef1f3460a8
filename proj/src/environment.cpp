#include "mavrp/environment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "mavrp/error.hpp"

namespace mavrp {

namespace {

constexpr std::uint64_t kPolicyStream = 0x706f6c;

} // namespace

EpisodeStats collect_stats(const EnvState& state, double factor) {
    const auto& inst = state.inst();
    EpisodeStats s;
    s.instance = inst.name;
    s.problem = inst.problem;
    s.seed = inst.seed;
    s.num_services = static_cast<int>(inst.num_services());
    s.steps = state.step_count;

    const auto totals = sparse_reward(state, factor);
    s.total_reward = totals.reward;
    s.total_penalty = totals.penalty;
    s.objective = minimizes(inst.problem) ? 0.0 - totals.reward : totals.reward;

    double collected = 0.0;
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
        const auto& a = state.agents[i];
        s.total_distance += a.distance;
        collected += a.profit;
        if (a.services > 0) {
            ++s.agents_used;
        }
        s.routes.push_back({static_cast<int>(i), a.trace});
    }

    double total_demand = 0.0;
    double served_demand = 0.0;
    double total_profit = 0.0;
    for (std::size_t i = 0; i < inst.num_nodes(); ++i) {
        if (inst.is_depot[i]) {
            continue;
        }
        if (state.visited[i]) {
            ++s.services_served;
        }
        total_profit += inst.profit[i];
        const double d = std::abs(inst.demand[i]);
        total_demand += d;
        served_demand += d - state.remaining_demand[i];
    }
    if (total_demand > 0.0) {
        s.demand_served_fraction = std::clamp(served_demand / total_demand, 0.0, 1.0);
    } else if (s.num_services > 0) {
        s.demand_served_fraction = static_cast<double>(s.services_served) / s.num_services;
    }
    if (total_profit > 0.0) {
        s.profit_collected_fraction = std::clamp(collected / total_profit, 0.0, 1.0);
    }
    return s;
}

int sample_from_mask(const Mask& mask, Rng& rng) {
    std::vector<int> options;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            options.push_back(static_cast<int>(i));
        }
    }
    if (options.empty()) {
        throw Error(ErrorCode::InputError, "cannot sample from an empty mask");
    }
    return options[rng.below(options.size())];
}

Environment::Environment(EnvConfig config) : config_(std::move(config)) {}

ObservationBundle Environment::reset(std::shared_ptr<const InstanceData> instance,
                                     std::uint64_t seed) {
    if (!instance) {
        throw Error(ErrorCode::InputError, "reset requires an instance");
    }
    const auto report = validate_instance(*instance);
    if (!report.ok()) {
        throw Error(ErrorCode::InvalidInstance, report.summary());
    }
    if (config_.compute_observations) {
        builder_.emplace(
            config_.observations.value_or(default_observation_config(instance->problem)));
        static_features_ = builder_->nodes_static(*instance);
    }
    state_ = make_initial_state(std::move(instance), seed);
    state_->active_agent = select_next_agent(config_.selector, *state_);
    return observe();
}

void Environment::require_running() const {
    if (!state_) {
        throw Error(ErrorCode::InputError, "environment has not been reset");
    }
    if (state_->done) {
        throw Error(ErrorCode::InputError, "episode is over; call reset");
    }
}

StepOutcome Environment::step(int action) {
    require_running();
    auto& state = *state_;
    const int agent = state.active_agent;
    if (action < 0 || static_cast<std::size_t>(action) >= state.inst().num_nodes() ||
        !is_feasible(state, agent, action, config_.rules)) {
        throw Error(ErrorCode::MaskViolation, "action " + std::to_string(action) +
                                                  " is infeasible for agent " +
                                                  std::to_string(agent));
    }
    const auto record = perform_move(state, agent, action, config_.rules);

    StepOutcome out;
    out.agent = agent;
    if (config_.reward_mode == RewardMode::Dense) {
        out.reward = record.reward;
        out.penalty = record.penalty;
    }
    if (state.num_active() == 0) {
        state.done = true;
        state.active_agent = -1;
        out.done = true;
        const double factor = config_.unserved_penalty_factor;
        if (config_.reward_mode == RewardMode::Dense) {
            const auto unserved = unserved_nodes(state);
            out.penalty += terminal_penalty(state.inst(), unserved, factor);
        } else {
            const auto totals = sparse_reward(state, factor);
            out.reward = totals.reward;
            out.penalty = totals.penalty;
        }
        out.stats = collect_stats(state, factor);
        return out;
    }
    state.active_agent = select_next_agent(config_.selector, state);
    out.next_agent = state.active_agent;
    return out;
}

Mask Environment::feasible_actions() const {
    require_running();
    return mask_feasible(*state_, state_->active_agent, config_.rules);
}

int Environment::sample_action() {
    require_running();
    return sample_from_mask(feasible_actions(), state_->rng);
}

int Environment::sample_action(Rng& rng) const {
    return sample_from_mask(feasible_actions(), rng);
}

ObservationBundle Environment::observe() const {
    if (!state_) {
        throw Error(ErrorCode::InputError, "environment has not been reset");
    }
    if (!builder_) {
        ObservationBundle bundle;
        bundle.agent = state_->active_agent;
        bundle.action_mask = state_->done ? Mask(state_->inst().num_nodes(), 0)
                                          : feasible_actions();
        for (const auto& a : state_->agents) {
            bundle.agents_mask.push_back(a.active ? 1 : 0);
        }
        return bundle;
    }
    return builder_->observe(*state_, static_features_, config_.rules);
}

EpisodeStats Environment::stats_report() const {
    return collect_stats(state(), config_.unserved_penalty_factor);
}

const EnvState& Environment::state() const {
    if (!state_) {
        throw Error(ErrorCode::InputError, "environment has not been reset");
    }
    return *state_;
}

EpisodeStats run_episode(std::shared_ptr<const InstanceData> instance, const Policy& policy,
                         const EnvConfig& config, std::uint64_t seed) {
    EnvConfig local = config;
    local.compute_observations = false;
    Environment env(local);
    env.reset(std::move(instance), seed);
    Rng rng(mix_seed(seed, kPolicyStream));
    while (true) {
        const auto mask = env.feasible_actions();
        const auto outcome = env.step(policy(env.state(), mask, rng));
        if (outcome.done) {
            return *outcome.stats;
        }
    }
}

std::vector<RolloutResult> batch_rollout(
    const std::vector<std::shared_ptr<const InstanceData>>& instances, const Policy& policy,
    const EnvConfig& config, const std::vector<std::uint64_t>& seeds,
    const BatchOptions& options) {
    if (!seeds.empty() && seeds.size() != instances.size()) {
        throw Error(ErrorCode::InputError, "seed count does not match instance count");
    }
    for (const auto& inst : instances) {
        if (!inst) {
            throw Error(ErrorCode::InputError, "batch contains a null instance");
        }
        if (inst->problem != instances.front()->problem) {
            throw Error(ErrorCode::ProblemMismatch,
                        "batch mixes " + std::string(to_string(instances.front()->problem)) +
                            " and " + std::string(to_string(inst->problem)));
        }
        if (!options.allow_mixed_sizes &&
            inst->num_services() != instances.front()->num_services()) {
            throw Error(ErrorCode::SizeMismatch,
                        "batch mixes " + std::to_string(instances.front()->num_services()) +
                            " and " + std::to_string(inst->num_services()) + " services");
        }
    }

    std::vector<RolloutResult> results(instances.size());
    auto run_one = [&](std::size_t i) {
        try {
            const std::uint64_t seed = seeds.empty() ? instances[i]->seed : seeds[i];
            results[i].stats = run_episode(instances[i], policy, config, seed);
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    };

    const std::size_t jobs =
        std::min<std::size_t>(std::max(options.jobs, 1), std::max<std::size_t>(instances.size(), 1));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            run_one(i);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < instances.size(); i = next++) {
                run_one(i);
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
    return results;
}

} // namespace mavrp
