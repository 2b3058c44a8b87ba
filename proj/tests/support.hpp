#pragma once

// Test-side oracles. These avoid the library's group machinery on purpose:
// closures are plain breadth-first searches over image vectors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "genvec/datafmt.hpp"
#include "genvec/permutation.hpp"
#include "genvec/signature.hpp"

namespace oracle {

using Row = std::vector<std::uint32_t>; // 1-based images

inline Row row_of(genvec::Permutation const &p) { return p.image_row(); }

// left-to-right: first a, then b
inline Row compose(Row const &a, Row const &b)
{
  Row out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = b[a[i] - 1];
  return out;
}

inline Row invert(Row const &a)
{
  Row out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[a[i] - 1] = static_cast<std::uint32_t>(i + 1);
  return out;
}

inline Row identity_row(std::size_t n)
{
  Row r(n);
  std::iota(r.begin(), r.end(), 1u);
  return r;
}

inline std::uint64_t order_of(Row const &a)
{
  Row id = identity_row(a.size()), x = a;
  std::uint64_t k = 1;
  while (x != id) {
    x = compose(x, a);
    ++k;
  }
  return k;
}

inline std::set<Row> closure(std::vector<Row> const &gens, std::size_t degree)
{
  std::set<Row> seen{identity_row(degree)};
  std::vector<Row> frontier{identity_row(degree)};
  while (!frontier.empty()) {
    std::vector<Row> next;
    for (auto const &x : frontier) {
      for (auto const &g : gens) {
        Row y = compose(x, g);
        if (seen.insert(y).second)
          next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

inline std::set<Row> closure(std::vector<genvec::Permutation> const &gens)
{
  std::vector<Row> rows;
  for (auto const &g : gens)
    rows.push_back(row_of(g));
  return closure(rows, gens.empty() ? 0 : gens.front().degree());
}

// Conjugacy classes as sets, via h^-1 x h for every h.
inline std::vector<std::set<Row>> classes(std::set<Row> const &elements)
{
  std::vector<std::set<Row>> out;
  std::set<Row> done;
  for (auto const &x : elements) {
    if (done.count(x))
      continue;
    std::set<Row> cls;
    for (auto const &h : elements)
      cls.insert(compose(compose(invert(h), x), h));
    done.insert(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

// 2g - 2 = n(2g0 - 2) + sum(n - n/m): admissibility in integers only.
inline bool rh_holds(std::uint64_t g, std::uint64_t n, std::uint32_t g0,
                     std::vector<std::uint64_t> const &periods)
{
  std::int64_t rhs = static_cast<std::int64_t>(n) * (2 * static_cast<std::int64_t>(g0) - 2);
  for (auto m : periods) {
    if (n % m != 0)
      return false;
    rhs += static_cast<std::int64_t>(n - n / m);
  }
  return rhs == 2 * static_cast<std::int64_t>(g) - 2;
}

inline Row random_row(std::mt19937_64 &rng, std::size_t n)
{
  Row r = identity_row(n);
  std::shuffle(r.begin(), r.end(), rng);
  return r;
}

inline genvec::Permutation random_perm(std::mt19937_64 &rng, std::size_t n)
{
  return genvec::Permutation::from_images(random_row(rng, n));
}

// A random entry whose largest point is moved, so that formats inferring the
// degree from the points mentioned recover it.
inline genvec::VectorBlock random_block(std::mt19937_64 &rng)
{
  genvec::VectorBlock b;
  if (rng() % 2) {
    b.group = genvec::GroupLabel::legacy(1 + rng() % 5000, 1 + rng() % 2000);
  } else {
    static char const *const names[] = {"cyclic:2", "psl2:29", "abelian:2,4",
                                        "fixture:psl(2,8)-paper", "explicit:00ff00ff00ff00ff"};
    b.group = genvec::GroupLabel{names[rng() % 5], std::nullopt};
  }

  std::uint32_t g0 = static_cast<std::uint32_t>(rng() % 3);
  std::size_t r = rng() % 5;
  if (g0 == 0 && r < 3)
    r = 3;
  std::vector<std::uint64_t> periods(r);
  for (auto &m : periods)
    m = 2 + rng() % 11;
  std::sort(periods.begin(), periods.end());
  b.signature = genvec::Signature(g0, periods);

  for (std::size_t i = 0; i < r; ++i)
    b.class_tuple.push_back(1 + rng() % 40);

  std::size_t degree = 2 + rng() % 14;
  for (std::size_t i = 0; i < b.signature.vector_length(); ++i)
    b.elements.push_back(random_perm(rng, degree));
  if (b.elements.front()(static_cast<genvec::Point>(degree)) == degree) {
    auto row = b.elements.front().image_row();
    std::swap(row[0], row[degree - 1]);
    b.elements.front() = genvec::Permutation::from_images(row);
  }
  b.unramified = r == 0;
  return b;
}

inline std::string slurp(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path fixture_path(std::string const &name)
{
  return std::filesystem::path(GENVEC_FIXTURE_DIR) / name;
}

} // namespace oracle
