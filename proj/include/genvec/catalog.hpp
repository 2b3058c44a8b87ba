#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "genvec/perm_group.hpp"

namespace genvec {

enum class Family { cyclic, abelian, dihedral, symmetric, alternating, psl2, explicit_ };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

/// Recipe for a catalog group.
struct GroupSpec {
  Family family = Family::cyclic;
  std::vector<std::uint64_t> params;

  // explicit family only
  std::size_t degree = 0;
  std::vector<std::vector<Point>> rows;
  std::string name; // fixture name, or empty for anonymous explicit groups

  static GroupSpec of(Family f, std::vector<std::uint64_t> params) {
    GroupSpec s;
    s.family = f;
    s.params = std::move(params);
    return s;
  }
  static GroupSpec cyclic(std::uint64_t n) { return of(Family::cyclic, {n}); }
  static GroupSpec abelian(std::vector<std::uint64_t> factors) {
    return of(Family::abelian, std::move(factors));
  }
  static GroupSpec dihedral(std::uint64_t n) { return of(Family::dihedral, {n}); }
  static GroupSpec symmetric(std::uint64_t n) { return of(Family::symmetric, {n}); }
  static GroupSpec alternating(std::uint64_t n) { return of(Family::alternating, {n}); }
  static GroupSpec psl2(std::uint64_t q) { return of(Family::psl2, {q}); }

  /// Closed-form order, where the family has one.
  std::optional<std::uint64_t> expected_order() const;
};

/// Legacy identifiers are (order, id) pairs into an external database and
/// are carried as opaque labels, never resolved.
struct LegacyId {
  std::uint64_t order = 0;
  std::uint64_t id = 0;

  friend auto operator<=>(LegacyId const &, LegacyId const &) = default;
};

struct GroupLabel {
  std::string text;
  std::optional<LegacyId> legacy_id;

  static GroupLabel legacy(std::uint64_t order, std::uint64_t id);

  friend bool operator==(GroupLabel const &, GroupLabel const &) = default;
};

/// A built group together with its label.
struct LabeledGroup {
  GroupLabel label;
  std::shared_ptr<const PermGroup> group;
};

/// Throws DomainError for invalid parameters and UnsupportedError for psl2
/// with a non-prime q.
PermGroup build_group(GroupSpec const &spec);

/// Catalog text for a spec, e.g. "cyclic:6", "abelian:2,4", "psl2:29",
/// "fixture:psl(2,8)-paper" or "explicit:<hash>".
std::string spec_label(GroupSpec const &spec);

LabeledGroup make_labeled(GroupSpec const &spec);

/**
 * Parse a group spec in `family:params` form: `cyclic:6`, `abelian:2,4`,
 * `dihedral:5`, `symmetric:4`, `alternating:5`, `psl2:29`,
 * `fixture:<name>` or `file:<path>`.
 */
GroupSpec parse_group_spec(std::string_view text);

/// Shipped explicit groups, e.g. "psl(2,8)-paper" (degree 9) and "q8".
std::vector<std::string> fixture_names();
GroupSpec fixture(std::string_view name);

/// Generator file: first line the degree, every other non-empty line an image
/// row; lines starting with '#' are ignored. Errors carry the line number.
GroupSpec read_generator_file(std::filesystem::path const &path);
GroupSpec parse_generator_text(std::string_view text);

LabeledGroup group_from_generator_file(std::filesystem::path const &path);

/**
 * Every catalog group of order at most `max_order`, in a fixed order:
 * cyclic, abelian (non-cyclic invariant factor lists), dihedral, symmetric,
 * alternating, psl2, then fixtures. An empty `families` list selects all.
 */
std::vector<GroupSpec> catalog(std::uint64_t max_order,
                               std::vector<Family> const &families = {});

} // namespace genvec
