#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "genvec/error.hpp"
#include "genvec/permutation.hpp"

namespace genvec {

Permutation Permutation::identity(std::size_t degree)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(const std::vector<Point> &row)
{
  std::vector<Point> images(row.size());
  std::vector<bool> seen(row.size(), false);

  for (std::size_t i = 0; i < row.size(); ++i) {
    Point x = row[i];
    if (x < 1 || x > row.size())
      throw DomainError("image " + std::to_string(x) + " out of range 1.." +
                        std::to_string(row.size()));
    if (seen[x - 1])
      throw DomainError("image " + std::to_string(x) +
                        " repeated, not a bijection");
    seen[x - 1] = true;
    images[i] = x - 1;
  }

  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(
  const std::vector<std::vector<Point>> &cycles, std::size_t degree)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  for (auto const &cycle : cycles) {
    for (Point x : cycle) {
      if (x < 1 || x > degree)
        throw DomainError("cycle point " + std::to_string(x) +
                          " out of range 1.." + std::to_string(degree));
      if (used[x - 1])
        throw DomainError("cycle point " + std::to_string(x) + " repeated");
      used[x - 1] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
  }

  return Permutation(std::move(images));
}

std::vector<Point> Permutation::image_row() const
{
  std::vector<Point> row(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    row[i] = _images[i] + 1;
  return row;
}

Permutation Permutation::operator*(Permutation const &rhs) const
{
  if (degree() != rhs.degree())
    throw DomainError("degree mismatch in product: " +
                      std::to_string(degree()) + " vs " +
                      std::to_string(rhs.degree()));

  std::vector<Point> images(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    images[i] = rhs._images[_images[i]];
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const
{
  std::vector<Point> images(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    images[_images[i]] = static_cast<Point>(i);
  return Permutation(std::move(images));
}

Permutation Permutation::conjugate(Permutation const &h) const
{
  if (degree() != h.degree())
    throw DomainError("degree mismatch in conjugation");

  // x^h maps h(i) to h(x(i))
  std::vector<Point> images(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    images[h._images[i]] = h._images[_images[i]];
  return Permutation(std::move(images));
}

Permutation Permutation::pow(std::int64_t exponent) const
{
  Permutation base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);

  Permutation result = identity(degree());
  while (e) {
    if (e & 1u)
      result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

bool Permutation::is_identity() const noexcept
{
  for (std::size_t i = 0; i < _images.size(); ++i) {
    if (_images[i] != i)
      return false;
  }
  return true;
}

Point Permutation::first_moved() const noexcept
{
  for (std::size_t i = 0; i < _images.size(); ++i) {
    if (_images[i] != i)
      return static_cast<Point>(i + 1);
  }
  return 0;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
  std::vector<std::vector<Point>> result;
  std::vector<bool> done(_images.size(), false);

  for (std::size_t start = 0; start < _images.size(); ++start) {
    if (done[start] || _images[start] == start)
      continue;

    std::vector<Point> cycle;
    for (Point x = static_cast<Point>(start); !done[x]; x = _images[x]) {
      done[x] = true;
      cycle.push_back(x + 1);
    }
    result.push_back(std::move(cycle));
  }

  return result;
}

std::string Permutation::image_row_string() const
{
  std::string out;
  for (std::size_t i = 0; i < _images.size(); ++i) {
    if (i)
      out += ' ';
    out += std::to_string(_images[i] + 1);
  }
  return out;
}

std::string Permutation::cycle_string(std::string_view sep) const
{
  auto cs = cycles();
  if (cs.empty())
    return "()";

  std::string out;
  for (auto const &cycle : cs) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i)
        out += sep;
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out;
}

std::size_t Permutation::hash() const noexcept
{
  // FNV-1a over the image row
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : _images) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t element_order(Permutation const &p)
{
  std::uint64_t order = 1;
  for (auto const &cycle : p.cycles())
    order = std::lcm(order, static_cast<std::uint64_t>(cycle.size()));
  return order;
}

Permutation perm_from_image_row(std::string_view row, std::size_t degree)
{
  std::vector<Point> images;
  images.reserve(degree);

  std::size_t pos = 0;
  while (pos < row.size()) {
    while (pos < row.size() && std::isspace(static_cast<unsigned char>(row[pos])))
      ++pos;
    if (pos == row.size())
      break;

    std::size_t end = pos;
    while (end < row.size() && !std::isspace(static_cast<unsigned char>(row[end])))
      ++end;

    Point value = 0;
    auto [ptr, ec] = std::from_chars(row.data() + pos, row.data() + end, value);
    if (ec != std::errc() || ptr != row.data() + end)
      throw FormatError("expected a point number, got '" +
                        std::string(row.substr(pos, end - pos)) + "'",
                        0, pos + 1);
    images.push_back(value);
    pos = end;
  }

  if (images.size() != degree)
    throw FormatError("image row has " + std::to_string(images.size()) +
                      " entries, expected " + std::to_string(degree));

  try {
    return Permutation::from_images(images);
  } catch (DomainError const &e) {
    throw FormatError(e.what());
  }
}

namespace {

// Calls `on_cycle` for each parenthesized group of points in `text`.
template <typename F>
void scan_cycles(std::string_view text, F &&on_cycle)
{
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };

  skip_space();
  if (pos == text.size())
    throw FormatError("empty cycle notation", 0, 1);

  while (pos < text.size()) {
    if (text[pos] != '(')
      throw FormatError("expected '('", 0, pos + 1);
    ++pos;

    std::vector<Point> cycle;
    for (;;) {
      while (pos < text.size() &&
             (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
      if (pos == text.size())
        throw FormatError("unbalanced parentheses: missing ')'", 0, pos + 1);
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == '(')
        throw FormatError("unbalanced parentheses: nested '('", 0, pos + 1);

      std::size_t start = pos;
      Point value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc() || value == 0)
        throw FormatError("expected a positive point number", 0, start + 1);
      pos = static_cast<std::size_t>(ptr - text.data());
      cycle.push_back(value);
    }

    on_cycle(std::move(cycle));
    skip_space();
  }
}

} // anonymous namespace

Permutation perm_from_cycle_string(std::string_view text, std::size_t degree)
{
  std::vector<std::vector<Point>> cycles;
  std::vector<bool> seen;
  scan_cycles(text, [&](std::vector<Point> cycle) {
    for (Point x : cycle) {
      if (x > degree)
        throw FormatError("cycle point " + std::to_string(x) +
                          " exceeds degree " + std::to_string(degree));
      if (seen.size() < x)
        seen.resize(x, false);
      if (seen[x - 1])
        throw FormatError("point " + std::to_string(x) +
                          " repeated in cycle notation");
      seen[x - 1] = true;
    }
    if (cycle.size() > 1)
      cycles.push_back(std::move(cycle));
  });

  return Permutation::from_cycles(cycles, degree);
}

Point max_point_in_cycle_string(std::string_view text)
{
  Point max = 0;
  scan_cycles(text, [&](std::vector<Point> cycle) {
    for (Point x : cycle)
      max = std::max(max, x);
  });
  return max;
}

} // namespace genvec
