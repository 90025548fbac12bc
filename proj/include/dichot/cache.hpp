#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"

#include "dichot/lattice.hpp"
#include "dichot/summary.hpp"

namespace dichot {

/// Bumped whenever the on-disk layout changes; files with another version
/// are recomputed.
inline constexpr int kCacheSchemaVersion = 1;

/// {schema_version, n, group_order, convention: "ascending",
///  classes: [{order, length, mu, orbit_sizes, in_k0}], marks: [[...]]}.
/// Every integer is a decimal string.
nlohmann::json summary_to_json(const LatticeSummary &summary);
/// Throws PreconditionError on a malformed document or a schema mismatch.
LatticeSummary summary_from_json(const nlohmann::json &doc);

/// Lattice summaries for Aff(Z/nZ), read from and written to
/// `<dir>/affine_lattice_n<N>.json`. Without a directory every call computes.
class LatticeCache {
public:
  explicit LatticeCache(std::optional<std::filesystem::path> dir = std::nullopt)
      : dir_(std::move(dir)) {}

  /// The cap in `options` is enforced on cached entries too, so results do not
  /// depend on the cache state.
  LatticeSummary get(std::uint32_t n, const LatticeOptions &options, bool *hit = nullptr) const;

  std::optional<std::filesystem::path> path_for(std::uint32_t n) const;

private:
  std::optional<LatticeSummary> load(std::uint32_t n) const;
  void store(const LatticeSummary &summary) const;

  std::optional<std::filesystem::path> dir_;
};

} // namespace dichot
