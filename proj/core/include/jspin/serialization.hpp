#pragma once

#include <string>
#include <string_view>

#include "jspin/block_state.hpp"

namespace jspin {

/// Serializes a BlockState to its documented JSON text form:
///   {"n": .., "two_s": .., "blocks": [{"two_j": .., "populations": [..],
///     "coherences": [{"two_j_lower": .., "values": [..]}],
///     "matrix_re": [[..]], "matrix_im": [[..]]}]}
/// "coherences" appears only on blocks that are the upper partner of a band;
/// "matrix_re"/"matrix_im" only when the block carries m-coherences.
/// Output is deterministic (fixed key order, shortest round-trip numbers).
std::string to_json_string(const BlockState& state);

/// Inverse of to_json_string. Throws std::invalid_argument on malformed or
/// inconsistent input.
BlockState block_state_from_json(std::string_view text);

}  // namespace jspin
