#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "genvec/permutation.hpp"

namespace genvec {

/// Default cap on the number of group elements any enumeration may touch.
inline constexpr std::size_t default_element_budget = 50'000;

/**
 * Stabilizer chain built by the deterministic Schreier-Sims algorithm.
 *
 * Base points are chosen as the smallest point moved by the generator that
 * forces a new level, so the chain depends only on the generator list.
 */
class StabilizerChain {
public:
  StabilizerChain() = default;
  StabilizerChain(std::span<const Permutation> generators, std::size_t degree);

  std::size_t degree() const noexcept { return _degree; }
  std::size_t depth() const noexcept { return _levels.size(); }

  /// 1-based base points.
  std::vector<Point> base() const;

  std::uint64_t order() const noexcept;

  bool contains(Permutation const &p) const;

  /// Calls `f` once for every group element.
  void for_each_element(std::function<void(Permutation const &)> const &f) const;

private:
  struct Level {
    Point base = 0; // zero-based
    std::vector<Permutation> generators;
    std::vector<Point> orbit; // zero-based, BFS order
    std::vector<std::optional<Permutation>> transversal;         // base -> point
    std::vector<std::optional<Permutation>> inverse_transversal; // point -> base
  };

  struct SiftResult {
    Permutation residue;
    std::size_t level; // == depth() when sifted through every level
  };

  SiftResult sift(Permutation p, std::size_t from_level) const;
  void rebuild_orbit(Level &level) const;
  void schreier_sims();

  std::size_t _degree = 0;
  std::vector<Level> _levels;
};

/**
 * Permutation group given by generators. Order and stabilizer chain are
 * computed on construction; the object is immutable afterwards.
 */
class PermGroup {
public:
  /// Throws DomainError if `generators` is empty or has mixed degrees.
  explicit PermGroup(std::vector<Permutation> generators);

  /// Trivial group on `degree` points.
  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const noexcept { return _degree; }
  std::vector<Permutation> const &generators() const noexcept { return _generators; }
  std::uint64_t order() const noexcept { return _order; }
  StabilizerChain const &chain() const noexcept { return _chain; }

  bool contains(Permutation const &p) const;

private:
  std::size_t _degree;
  std::vector<Permutation> _generators;
  StabilizerChain _chain;
  std::uint64_t _order;
};

/// All elements of a group, sorted by image row, with index lookup.
class GroupElements {
public:
  /// Throws ResourceError if |G| exceeds `budget`.
  GroupElements(PermGroup const &group, std::size_t budget = default_element_budget);

  std::size_t size() const noexcept { return _elements.size(); }
  std::span<const Permutation> all() const noexcept { return _elements; }
  Permutation const &operator[](std::size_t i) const { return _elements[i]; }

  std::optional<std::size_t> index_of(Permutation const &p) const;

private:
  std::vector<Permutation> _elements;
  std::unordered_map<Permutation, std::size_t, PermutationHash> _index;
};

struct ConjClass {
  Permutation representative; // lexicographically least member
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
  std::size_t index = 0; // 1-based position in the canonical ordering
};

/**
 * Conjugacy classes by exhaustive conjugation-orbit partition.
 *
 * Classes are ordered by element order, then class size, then the image row
 * of the least member; `ConjClass::index` is the 1-based position.
 */
class ClassTable {
public:
  ClassTable(PermGroup const &group, std::size_t budget = default_element_budget);

  GroupElements const &elements() const noexcept { return _elements; }
  std::vector<ConjClass> const &classes() const noexcept { return _classes; }

  /// 1-based class index of a group element; throws DomainError if p is not
  /// in the group.
  std::size_t class_of(Permutation const &p) const;

  /// 1-based class index by element index.
  std::size_t class_of_index(std::size_t element) const { return _class_of[element]; }

  /// Element indices of the members of class `index` (1-based), sorted.
  std::vector<std::size_t> const &members(std::size_t index) const;

private:
  GroupElements _elements;
  std::vector<ConjClass> _classes;
  std::vector<std::size_t> _class_of;
  std::vector<std::vector<std::size_t>> _members;
};

std::vector<ConjClass> conjugacy_classes(PermGroup const &group,
                                         std::size_t budget = default_element_budget);

/// {g in G : g p = p g}. Throws DomainError unless p is in G.
PermGroup centralizer(PermGroup const &group, Permutation const &p,
                      std::size_t budget = default_element_budget);

/// Normal closure of the generator commutators.
PermGroup derived_subgroup(PermGroup const &group);

/// Invariant factors of G/G' in divisibility order (each divides the next);
/// empty when G is perfect.
std::vector<std::uint64_t> abelian_invariants(PermGroup const &group,
                                              std::size_t budget = default_element_budget);

/// True iff `elems` generate the whole of `group`.
bool generates(PermGroup const &group, std::span<const Permutation> elems);

/// Smallest subgroup containing every permutation in `elems`, which must share
/// `degree`. Redundant elements are dropped from the generator list.
PermGroup subgroup_from_elements(std::span<const Permutation> elems, std::size_t degree);

} // namespace genvec
