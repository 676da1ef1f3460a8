#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mavrp/types.hpp"

namespace mavrp {

enum class ProfitMode { None, Uniform, DemandProportional };

std::string_view to_string(ProfitMode mode);
ProfitMode profit_mode_from_string(std::string_view name);

/// Sample space of the random generator. Times are on the unit square scale.
struct GenerationSpec {
    Problem problem = Problem::CVRPTW;
    int num_services = 50;
    int num_agents = 25;
    int num_depots = 1;
    double capacity = 40.0;
    double horizon = 3.0;
    std::pair<double, double> tw_width_range{0.2, 0.6};
    double service_time = 0.02;
    std::pair<int, int> demand_range{1, 9};
    ProfitMode profit_mode = ProfitMode::None;
    std::pair<int, int> profit_range{1, 10};
    std::optional<SoftParams> soft_params;

    /// Throws Error(InputError) when the spec is self-contradictory.
    void validate() const;

    bool operator==(const GenerationSpec&) const = default;
};

/// Defaults used for the shipped instance sets: 25 vehicles for the CVRPTW
/// family (5 depots x 5 vehicles for MDVRPTW), 5 for TOPTW and PCVRPTW.
GenerationSpec default_generation_spec(Problem problem, int num_services);

enum class Split { Train, Validation, Test };

std::string_view to_string(Split split);
Split split_from_string(std::string_view name);

/// Half-open seed range reserved for a split; ranges never overlap.
std::pair<std::uint64_t, std::uint64_t> split_seed_range(Split split);

struct InstanceSet {
    Split split = Split::Validation;
    std::vector<std::uint64_t> seeds;
    GenerationSpec spec;

    /// Checks seed uniqueness and membership in the split's seed range.
    void validate() const;
};

/// `count` consecutive seeds from the start of the split's range, skipping
/// the first `offset`. The validation default is 2048 seeds at 100000.
InstanceSet make_instance_set(Split split, const GenerationSpec& spec, std::size_t count,
                              std::uint64_t offset = 0);

InstanceData generate_toy(Problem problem);

InstanceData generate_random(const GenerationSpec& spec, std::uint64_t seed);

/// Dihedral transforms of the unit square about (0.5, 0.5): id = r + 4*s is
/// a reflection x -> 1 - x (when s = 1) followed by r quarter turns
/// counter-clockwise.
inline constexpr int kNumTransforms = 8;

Point apply_transform(Point p, int transform_id);
/// Transform equal to applying `second` after `first`.
int compose_transforms(int second, int first);
int inverse_transform(int transform_id);

InstanceData augment_instance(const InstanceData& inst, int transform_id);

} // namespace mavrp
