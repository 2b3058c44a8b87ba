#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "genvec/catalog.hpp"
#include "genvec/epimorph.hpp"

namespace genvec {

struct ClassifyOptions {
  std::uint64_t genus = 2;
  std::optional<std::uint64_t> max_order;
  /// Only groups with |G| > 4(g-1).
  bool large_only = false;
  /// Empty selects every catalog family.
  std::vector<Family> families;
  SearchOptions search;
};

struct ClassifyResult {
  std::vector<EpimorphismRecord> records;
  std::size_t groups_examined = 0;
  std::size_t signature_pairs = 0;
};

/**
 * Sweep the built-in catalog for one genus: every nontrivial catalog group of
 * order at most min(max_order, 84(g-1)) is paired with its admissible
 * signatures and searched for generating vectors. Covers the catalog only,
 * not every abstract group of each order.
 */
ClassifyResult classify(ClassifyOptions const &options);

} // namespace genvec
