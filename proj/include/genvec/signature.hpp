#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace genvec {

using Rational = boost::rational<std::int64_t>;

/**
 * Fuchsian signature (g0; m_1, ..., m_r): orbit genus plus a nondecreasing
 * list of periods, each at least 2.
 */
class Signature {
public:
  Signature() = default;

  /// Throws DomainError if a period is < 2 or the list is not sorted.
  Signature(std::uint32_t orbit_genus, std::vector<std::uint64_t> periods);

  std::uint32_t orbit_genus() const noexcept { return _orbit_genus; }
  std::vector<std::uint64_t> const &periods() const noexcept { return _periods; }
  std::size_t branch_count() const noexcept { return _periods.size(); }

  /// 2*g0 + r, the length of a generating vector.
  std::size_t vector_length() const noexcept { return 2 * _orbit_genus + _periods.size(); }

  /// "[0; 2, 3, 7]"; no periods prints as "[2;]"
  std::string to_string() const;

  /// Legacy flat form "[0,2,3,7]", first entry the orbit genus.
  std::string to_flat_string() const;

  /// Flat form with inner spaces, "[ 0, 2, 3, 7 ]", as in block files.
  std::string to_spaced_flat_string() const;

  friend auto operator<=>(Signature const &, Signature const &) = default;

private:
  std::uint32_t _orbit_genus = 0;
  std::vector<std::uint64_t> _periods;
};

/**
 * Parse "[g0; m1, ..., mr]" or the flat legacy form "[g0,m1,...,mr]".
 * Parentheses may replace the brackets in the semicolon form. Throws
 * FormatError with a column on malformed text.
 */
Signature parse_signature(std::string_view text);

/// 2*g0 - 2 + sum(1 - 1/m_i); hyperbolic iff positive.
Rational mu_measure(Signature const &sig);

/// 1 + (n/2) * mu, the genus of a surface with an order-n group acting with
/// this signature. Integral iff the pair is arithmetically consistent.
Rational rh_genus(std::uint64_t order, Signature const &sig);

/// Hurwitz bound 84(g-1).
std::uint64_t hurwitz_bound(std::uint64_t genus);

/// n > 4(g-1)
bool is_large_group(std::uint64_t genus, std::uint64_t order);

/**
 * Every signature with mu > 0 and rh_genus(n, sig) == g whose periods all
 * divide n, sorted by (g0, r, periods). Empty when n > 84(g-1).
 * Throws DomainError unless g >= 2 and n >= 1.
 */
std::vector<Signature> admissible_signatures(std::uint64_t genus, std::uint64_t order);

} // namespace genvec
