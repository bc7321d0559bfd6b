#pragma once

#include <string>

#include "acdedmd/edmd.hpp"

namespace acd {

/// Model file format version; readers reject anything else.
inline constexpr int kModelFormatVersion = 1;

/// Version tag of the dictionary entry ordering (Kronecker bit layout /
/// direct-sum grouping). Bumped if the ordering ever changes so stored
/// matrices can never be silently misinterpreted.
inline constexpr int kOrderingVersion = 1;

/// Serialize a model to a self-describing JSON file: K, B, dictionary
/// descriptors, sampling period, optional eigendecomposition, plus a payload
/// checksum. Matrices round-trip losslessly (shortest round-trip decimals).
void save_model(const KoopmanModel& model, const std::string& path);

/// Load a model saved by save_model. Throws IoError for unreadable files or
/// checksum mismatches and ValidationError for unknown format, ordering
/// version, or Hermite convention tags.
KoopmanModel load_model(const std::string& path);

}  // namespace acd
