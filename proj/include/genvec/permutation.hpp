#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace genvec {

/// Points are numbered 1..degree in every public interface.
using Point = std::uint32_t;

/**
 * A bijection of {1..degree}, stored as its image row.
 *
 * Products compose left to right: (p * q)(x) = q(p(x)), so `p * q` applies
 * `p` first. Conjugation follows the same convention, x^h = h^-1 x h.
 */
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(std::size_t degree);

  /// Build from a 1-based image row. Throws DomainError unless the row is a
  /// bijection of {1..row.size()}.
  static Permutation from_images(const std::vector<Point> &row);

  /// Build from disjoint cycles of 1-based points. Points not mentioned are
  /// fixed. Throws DomainError on repeated or out-of-range points.
  static Permutation from_cycles(const std::vector<std::vector<Point>> &cycles,
                                 std::size_t degree);

  std::size_t degree() const noexcept { return _images.size(); }

  /// Image of the 1-based point `x`.
  Point operator()(Point x) const { return _images[x - 1] + 1; }

  std::vector<Point> image_row() const;

  Permutation operator*(Permutation const &rhs) const;
  Permutation inverse() const;

  /// h^-1 * this * h
  Permutation conjugate(Permutation const &h) const;

  Permutation pow(std::int64_t exponent) const;

  bool is_identity() const noexcept;

  /// Smallest 1-based point moved, or 0 for the identity.
  Point first_moved() const noexcept;

  /// Nontrivial cycles, each starting at its smallest point, ordered by it.
  std::vector<std::vector<Point>> cycles() const;

  /// "1 6 4 3 9 2 8 7 5"
  std::string image_row_string() const;

  /// Cycle notation, e.g. "(2,6)(3,4)" or "(2 6)(3 4)" with sep = " ".
  /// The identity prints as "()".
  std::string cycle_string(std::string_view sep = ",") const;

  std::size_t hash() const noexcept;

  /// Zero-based images, for tight inner loops.
  std::vector<Point> const &raw() const noexcept { return _images; }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend std::strong_ordering operator<=>(Permutation const &a,
                                          Permutation const &b) {
    return a._images <=> b._images;
  }

private:
  explicit Permutation(std::vector<Point> zero_based)
    : _images(std::move(zero_based)) {}

  std::vector<Point> _images;
};

/// Least k >= 1 with p^k = identity.
std::uint64_t element_order(Permutation const &p);

/// Parse a whitespace-separated 1-based image row of exactly `degree` points.
/// Throws FormatError on a wrong count, a non-integer token, or a
/// non-bijective row.
Permutation perm_from_image_row(std::string_view row, std::size_t degree);

/// Parse cycle notation such as "(2,3)(4,6)" or "(2 3)(4 6)"; "()" is the
/// identity. Throws FormatError on unbalanced parentheses or repeated points,
/// and DomainError if a point exceeds `degree`.
Permutation perm_from_cycle_string(std::string_view text, std::size_t degree);

/// Largest point mentioned in a cycle string (0 for "()").
Point max_point_in_cycle_string(std::string_view text);

struct PermutationHash {
  std::size_t operator()(Permutation const &p) const noexcept {
    return p.hash();
  }
};

} // namespace genvec

template <> struct std::hash<genvec::Permutation> {
  std::size_t operator()(genvec::Permutation const &p) const noexcept {
    return p.hash();
  }
};
