#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mavrp/generation.hpp"
#include "mavrp/types.hpp"

namespace mavrp {

inline constexpr int kInstanceSchemaVersion = 1;
inline constexpr int kManifestSchemaVersion = 1;

/// JSON document carrying every InstanceData field. Reals are written in
/// shortest round-trip form so decode(encode(x)) == x bit for bit.
std::string encode_instance(const InstanceData& inst);
InstanceData decode_instance(std::string_view text);

std::string encode_generation_spec(const GenerationSpec& spec);
GenerationSpec decode_generation_spec(std::string_view text);

/// Instance sets on disk: one instance file per seed plus manifest.json.
struct Manifest {
    InstanceSet set;
    std::vector<std::string> files;
};

std::string encode_manifest(const Manifest& manifest);
Manifest decode_manifest(std::string_view text);

std::string instance_file_name(const GenerationSpec& spec, std::uint64_t seed);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

InstanceData load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const InstanceData& inst);

} // namespace mavrp
