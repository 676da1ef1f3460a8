#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mavrp/codec.hpp"
#include "mavrp/environment.hpp"
#include "mavrp/generation.hpp"
#include "mavrp/types.hpp"

namespace testing {

using namespace mavrp;

// Hand-built instances. Depots are added first; services after.
class Builder {
public:
    explicit Builder(Problem problem, double capacity = 10.0) {
        inst_.name = "built";
        inst_.problem = problem;
        inst_.capacity = capacity;
        if (has_soft_windows(problem)) {
            inst_.soft_params = SoftParams{1.0, 1.0, 1.0, 2.0};
        }
    }

    Builder& depot(Point p, double open = 0.0, double close = 3.0) {
        return node(p, true, 0.0, open, close, 0.0, 0.0);
    }

    Builder& service(Point p, double demand, double open, double close, double service = 0.0,
                     double profit = 0.0) {
        return node(p, false, demand, open, close, service, profit);
    }

    Builder& pair(int delivery, int pickup) {
        inst_.pickup_of[delivery] = pickup;
        return *this;
    }

    Builder& agents(std::vector<int> homes) {
        inst_.agent_home_depot = std::move(homes);
        return *this;
    }

    Builder& soft(SoftParams sp) {
        inst_.soft_params = sp;
        return *this;
    }

    InstanceData build() const {
        InstanceData out = inst_;
        refresh_travel_matrix(out);
        return out;
    }

    std::shared_ptr<const InstanceData> shared() const {
        return std::make_shared<const InstanceData>(build());
    }

private:
    Builder& node(Point p, bool depot, double demand, double open, double close, double service,
                  double profit) {
        inst_.coords.push_back(p);
        inst_.is_depot.push_back(depot ? 1 : 0);
        inst_.demand.push_back(demand);
        inst_.profit.push_back(profit);
        inst_.service_time.push_back(service);
        inst_.tw_open.push_back(open);
        inst_.tw_close.push_back(close);
        inst_.pickup_of.push_back(-1);
        return *this;
    }

    InstanceData inst_;
};

inline std::shared_ptr<const InstanceData> share(InstanceData inst) {
    return std::make_shared<const InstanceData>(std::move(inst));
}

inline std::string fixture(const std::string& name) {
    return read_text_file(std::string(MAVRP_FIXTURES) + "/" + name);
}

// Initial state with the first agent active.
inline EnvState start(std::shared_ptr<const InstanceData> inst, std::uint64_t seed = 0) {
    auto state = make_initial_state(std::move(inst), seed);
    state.active_agent = 0;
    return state;
}

} // namespace testing
