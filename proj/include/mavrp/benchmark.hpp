#pragma once

#include <string>
#include <string_view>

#include "mavrp/types.hpp"

namespace mavrp {

enum class BenchmarkFormat { Solomon, LiLim, Cordeau };

std::string_view to_string(BenchmarkFormat format);
BenchmarkFormat benchmark_format_from_string(std::string_view name);

/// Parses a standard OR benchmark file. Coordinates and times keep their
/// native units and travel times are Euclidean.
///
/// - solomon: name line, VEHICLE section (NUMBER / CAPACITY header, then V Q),
///   CUSTOMER section (column header, then rows of id x y demand ready due
///   service). Row 0 is the depot.
/// - li_lim: the native "V Q speed" header followed by 9-column rows whose
///   last two fields are the pickup and delivery sibling indices. The
///   Solomon-sectioned layout with two extra columns is also accepted.
/// - cordeau: "type m n t" header, t depot limit lines ("D Q"), n customer
///   rows, then t depot rows. Depots are renumbered to the front; every depot
///   gets m vehicles.
///
/// Grammar failures throw Error(ParseError) with the 1-based line number;
/// negative demands or windows throw Error(ValidationError).
InstanceData parse_benchmark(BenchmarkFormat format, std::string_view text,
                             const std::string& name = {});

} // namespace mavrp
