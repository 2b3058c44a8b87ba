#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "genvec/catalog.hpp"
#include "genvec/perm_group.hpp"
#include "genvec/permutation.hpp"
#include "genvec/signature.hpp"

namespace genvec {

/**
 * Images of the Fuchsian generators: a_1, b_1, ..., a_g0, b_g0 in
 * `hyperbolic`, c_1..c_r in `branch`, plus the class index of each c_j.
 */
struct GeneratingVector {
  std::vector<Permutation> hyperbolic;
  std::vector<Permutation> branch;
  std::vector<std::size_t> class_tuple;

  /// hyperbolic entries followed by branch entries
  std::vector<Permutation> entries() const;

  /// Every entry conjugated by h.
  GeneratingVector conjugate(Permutation const &h) const;

  friend auto operator<=>(GeneratingVector const &, GeneratingVector const &) = default;
};

struct EpimorphismRecord {
  Signature signature;
  std::vector<std::size_t> con;
  LabeledGroup group;
  GeneratingVector genimages;
};

struct SearchOptions {
  std::size_t element_budget = default_element_budget;
  /// Candidate tuples examined per class tuple before giving up.
  std::uint64_t candidate_budget = 10'000'000;
  /// Tuples enumerated by the brute-force oracle.
  std::uint64_t oracle_budget = 100'000'000;
  unsigned workers = 1;
  /// Skip the search when the abelianization test rules out a surjection.
  bool abelian_pretest = true;
};

/**
 * Smith normal form diagonal of an integer matrix (rows of equal length).
 * Returns the nonzero diagonal entries d_1 | d_2 | ... in order followed by
 * zeros for the remaining columns, so the cokernel Z^cols / rowspace is
 * sum Z/d_i with a zero standing for a free Z.
 */
std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> matrix);

/// Invariant factors (>= 2, or 0 for a free Z summand) of the abelianized
/// Fuchsian group of `sig`.
std::vector<std::int64_t> fuchsian_abelianization(Signature const &sig);

/// Necessary condition for an epimorphism: the abelianized Fuchsian group
/// surjects onto G/G'.
bool abelianized_surjection_exists(Signature const &sig, PermGroup const &group,
                                   std::size_t element_budget = default_element_budget);

/// Class-index tuples (j_1..j_r) with class j_k of element order m_k,
/// lexicographically ordered.
std::vector<std::vector<std::size_t>> class_tuples(ClassTable const &classes,
                                                   Signature const &sig);
std::vector<std::vector<std::size_t>> class_tuples(PermGroup const &group,
                                                   Signature const &sig,
                                                   std::size_t element_budget = default_element_budget);

/// Product relation, branch orders and generation of G.
bool is_generating_vector(PermGroup const &group, Signature const &sig,
                          GeneratingVector const &v);

/// Lexicographically least member of the simultaneous-conjugation orbit.
GeneratingVector canonical_representative(GroupElements const &elements,
                                          GeneratingVector const &v);

/// One canonical representative per simultaneous-conjugation orbit, sorted.
std::vector<GeneratingVector> orbit_representatives(PermGroup const &group,
                                                    std::vector<GeneratingVector> const &vectors,
                                                    std::size_t element_budget = default_element_budget);

/**
 * All generating vectors for (G, sig) up to simultaneous conjugation, one
 * record per orbit, ordered by class tuple and then canonical vector.
 *
 * Throws ResourceError when a class tuple needs more than
 * `candidate_budget` candidates; the message names the class tuple.
 */
std::vector<EpimorphismRecord> representatives_epimorphisms(LabeledGroup const &group,
                                                            Signature const &sig,
                                                            SearchOptions const &options = {});

/// Same, reusing a precomputed class table of `group.group`.
std::vector<EpimorphismRecord> representatives_epimorphisms(LabeledGroup const &group,
                                                            ClassTable const &classes,
                                                            Signature const &sig,
                                                            SearchOptions const &options = {});

/**
 * Independent oracle with the same contract: every element tuple is
 * enumerated, the last branch entry solved from the relation, and orbits
 * formed by conjugating with every element. Throws ResourceError when
 * |G|^(2*g0 + r - 1) exceeds `oracle_budget`.
 */
std::vector<EpimorphismRecord> brute_force_epimorphisms(LabeledGroup const &group,
                                                        Signature const &sig,
                                                        SearchOptions const &options = {});

} // namespace genvec
