#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "genvec/catalog.hpp"
#include "genvec/error.hpp"
#include "text_util.hpp"

namespace genvec {

namespace {

constexpr std::pair<Family, std::string_view> family_names[] = {
  {Family::cyclic, "cyclic"},       {Family::abelian, "abelian"},
  {Family::dihedral, "dihedral"},   {Family::symmetric, "symmetric"},
  {Family::alternating, "alternating"}, {Family::psl2, "psl2"},
  {Family::explicit_, "explicit"},
};

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0)
      return false;
  }
  return true;
}

std::uint64_t factorial(std::uint64_t n)
{
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod)
{
  std::uint64_t r = 1;
  base %= mod;
  while (exp) {
    if (exp & 1u)
      r = r * base % mod;
    base = base * base % mod;
    exp >>= 1u;
  }
  return r;
}

Permutation cycle_on(std::size_t first, std::size_t length, std::size_t degree)
{
  std::vector<Point> cycle;
  for (std::size_t i = 0; i < length; ++i)
    cycle.push_back(static_cast<Point>(first + i));
  return Permutation::from_cycles({cycle}, degree);
}

std::uint64_t single_param(GroupSpec const &spec)
{
  if (spec.params.size() != 1)
    throw DomainError(std::string(family_name(spec.family)) +
                      " takes exactly one parameter");
  return spec.params.front();
}

std::string hex64(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t content_hash(GroupSpec const &spec)
{
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(spec.degree);
  for (auto const &row : spec.rows) {
    mix(row.size());
    for (Point x : row)
      mix(x);
  }
  return h;
}

struct FixtureData {
  std::string_view name;
  std::size_t degree;
  std::vector<std::vector<Point>> rows;
};

std::vector<FixtureData> const &fixtures()
{
  static const std::vector<FixtureData> data = {
    // PSL(2,8) on 9 points, from the genus-7 Hurwitz vector
    {"psl(2,8)-paper", 9,
     {{1, 6, 4, 3, 9, 2, 8, 7, 5},
      {4, 5, 8, 9, 6, 2, 3, 7, 1},
      {5, 2, 8, 1, 6, 9, 7, 4, 3}}},
    // quaternion group, right regular action on {1,-1,i,-i,j,-j,k,-k}
    {"q8", 8,
     {{3, 4, 2, 1, 8, 7, 5, 6},
      {5, 6, 7, 8, 2, 1, 4, 3}}},
  };
  return data;
}

} // anonymous namespace

std::string_view family_name(Family f)
{
  for (auto [fam, name] : family_names) {
    if (fam == f)
      return name;
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name)
{
  for (auto [fam, fname] : family_names) {
    if (fname == name)
      return fam;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> GroupSpec::expected_order() const
{
  if (params.empty() && family != Family::explicit_)
    return std::nullopt;

  switch (family) {
  case Family::cyclic:
    return params[0];
  case Family::abelian: {
    std::uint64_t r = 1;
    for (auto d : params)
      r *= d;
    return r;
  }
  case Family::dihedral:
    return 2 * params[0];
  case Family::symmetric:
    return factorial(params[0]);
  case Family::alternating:
    return params[0] < 2 ? 1 : factorial(params[0]) / 2;
  case Family::psl2: {
    std::uint64_t q = params[0];
    return q * (q * q - 1) / 2;
  }
  case Family::explicit_:
    return std::nullopt;
  }
  return std::nullopt;
}

GroupLabel GroupLabel::legacy(std::uint64_t order, std::uint64_t id)
{
  return {std::to_string(order) + "," + std::to_string(id), LegacyId{order, id}};
}

PermGroup build_group(GroupSpec const &spec)
{
  switch (spec.family) {
  case Family::cyclic: {
    std::uint64_t n = single_param(spec);
    if (n < 1)
      throw DomainError("cyclic group needs n >= 1");
    if (n == 1)
      return PermGroup::trivial(1);
    return PermGroup({cycle_on(1, n, n)});
  }

  case Family::abelian: {
    if (spec.params.empty())
      throw DomainError("abelian group needs at least one invariant factor");
    std::size_t degree = 0;
    for (auto d : spec.params) {
      if (d < 2)
        throw DomainError("abelian invariant factors must be >= 2");
      degree += d;
    }
    std::vector<Permutation> gens;
    std::size_t first = 1;
    for (auto d : spec.params) {
      gens.push_back(cycle_on(first, d, degree));
      first += d;
    }
    return PermGroup(std::move(gens));
  }

  case Family::dihedral: {
    std::uint64_t n = single_param(spec);
    if (n < 3)
      throw DomainError("dihedral group needs n >= 3");
    std::vector<Point> reflection(n);
    for (std::uint64_t i = 0; i < n; ++i)
      reflection[i] = static_cast<Point>((n - i) % n + 1);
    return PermGroup({cycle_on(1, n, n), Permutation::from_images(reflection)});
  }

  case Family::symmetric: {
    std::uint64_t n = single_param(spec);
    if (n < 1 || n > 20)
      throw DomainError("symmetric group needs 1 <= n <= 20");
    if (n == 1)
      return PermGroup::trivial(1);
    if (n == 2)
      return PermGroup({cycle_on(1, 2, 2)});
    return PermGroup({cycle_on(1, n, n), cycle_on(1, 2, n)});
  }

  case Family::alternating: {
    std::uint64_t n = single_param(spec);
    if (n < 1 || n > 20)
      throw DomainError("alternating group needs 1 <= n <= 20");
    if (n < 3)
      return PermGroup::trivial(n);
    std::vector<Permutation> gens;
    for (Point i = 3; i <= n; ++i)
      gens.push_back(Permutation::from_cycles({{1, 2, i}}, n));
    return PermGroup(std::move(gens));
  }

  case Family::psl2: {
    std::uint64_t q = single_param(spec);
    if (!is_prime(q))
      throw UnsupportedError("psl2 is only provided for prime q (got " +
                             std::to_string(q) + ")");
    if (q < 5)
      throw DomainError("psl2 needs a prime q >= 5");

    // projective line: point 1 is infinity, point x+2 is x in 0..q-1
    std::size_t degree = q + 1;
    std::vector<Point> translate(degree), invert(degree);
    translate[0] = 1;
    invert[0] = 2;
    invert[1] = 1;
    for (std::uint64_t x = 0; x < q; ++x) {
      translate[x + 1] = static_cast<Point>((x + 1) % q + 2);
      if (x != 0) {
        std::uint64_t inv = mod_pow(x, q - 2, q);
        invert[x + 1] = static_cast<Point>((q - inv) % q + 2);
      }
    }
    return PermGroup({Permutation::from_images(translate),
                      Permutation::from_images(invert)});
  }

  case Family::explicit_: {
    if (spec.degree == 0)
      throw DomainError("explicit group needs a positive degree");
    if (spec.rows.empty())
      return PermGroup::trivial(spec.degree);
    std::vector<Permutation> gens;
    for (auto const &row : spec.rows) {
      if (row.size() != spec.degree)
        throw DomainError("explicit generator has " + std::to_string(row.size()) +
                          " images, expected " + std::to_string(spec.degree));
      gens.push_back(Permutation::from_images(row));
    }
    return PermGroup(std::move(gens));
  }
  }
  throw DomainError("unknown group family");
}

std::string spec_label(GroupSpec const &spec)
{
  if (spec.family == Family::explicit_) {
    if (!spec.name.empty())
      return "fixture:" + spec.name;
    return "explicit:" + hex64(content_hash(spec));
  }

  std::string out(family_name(spec.family));
  out += ':';
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(spec.params[i]);
  }
  return out;
}

LabeledGroup make_labeled(GroupSpec const &spec)
{
  return {GroupLabel{spec_label(spec), std::nullopt},
          std::make_shared<const PermGroup>(build_group(spec))};
}

std::vector<std::string> fixture_names()
{
  std::vector<std::string> names;
  for (auto const &f : fixtures())
    names.emplace_back(f.name);
  return names;
}

GroupSpec fixture(std::string_view name)
{
  for (auto const &f : fixtures()) {
    if (f.name == name) {
      GroupSpec spec;
      spec.family = Family::explicit_;
      spec.degree = f.degree;
      spec.rows = f.rows;
      spec.name = std::string(f.name);
      return spec;
    }
  }
  throw DomainError("unknown fixture '" + std::string(name) + "'");
}

GroupSpec parse_group_spec(std::string_view text)
{
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw DomainError("group spec '" + std::string(text) +
                      "' is not of the form family:params");

  std::string_view head = detail::trim(text.substr(0, colon));
  std::string_view rest = detail::trim(text.substr(colon + 1));

  if (head == "fixture")
    return fixture(rest);
  if (head == "file")
    return read_generator_file(std::filesystem::path(std::string(rest)));

  auto family = family_from_name(head);
  if (!family || *family == Family::explicit_)
    throw DomainError("unknown group family '" + std::string(head) + "'");

  GroupSpec spec;
  spec.family = *family;
  for (auto field : detail::split(rest, ',')) {
    auto value = detail::parse_uint(detail::trim(field));
    if (!value)
      throw DomainError("bad group parameter '" + std::string(field) + "'");
    spec.params.push_back(*value);
  }
  if (spec.params.empty())
    throw DomainError("group spec '" + std::string(text) + "' has no parameters");
  return spec;
}

GroupSpec parse_generator_text(std::string_view text)
{
  GroupSpec spec;
  spec.family = Family::explicit_;

  bool have_degree = false;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#')
      continue;

    if (!have_degree) {
      auto degree = detail::parse_uint(line);
      if (!degree || *degree == 0)
        throw FormatError("first line must be a positive degree", line_no, 1);
      spec.degree = *degree;
      have_degree = true;
      continue;
    }

    try {
      spec.rows.push_back(perm_from_image_row(line, spec.degree).image_row());
    } catch (FormatError const &e) {
      throw e.at_line(line_no);
    }
  }

  if (!have_degree)
    throw FormatError("generator file has no degree line", line_no);
  if (spec.rows.empty())
    throw FormatError("generator file has no generator rows", line_no);
  return spec;
}

GroupSpec read_generator_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open generator file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_generator_text(buffer.str());
}

LabeledGroup group_from_generator_file(std::filesystem::path const &path)
{
  return make_labeled(read_generator_file(path));
}

namespace {

// invariant factor lists d1 | d2 | ... | dk with k >= 2 and product <= bound
void abelian_lists(std::uint64_t bound, std::vector<std::uint64_t> &prefix,
                   std::uint64_t product, std::vector<std::vector<std::uint64_t>> &out)
{
  if (prefix.size() >= 2)
    out.push_back(prefix);

  std::uint64_t last = prefix.empty() ? 1 : prefix.back();
  for (std::uint64_t d = std::max<std::uint64_t>(2, last); product * d <= bound; d += last) {
    prefix.push_back(d);
    abelian_lists(bound, prefix, product * d, out);
    prefix.pop_back();
  }
}

} // anonymous namespace

std::vector<GroupSpec> catalog(std::uint64_t max_order, std::vector<Family> const &families)
{
  auto wanted = [&](Family f) {
    return families.empty() ||
           std::find(families.begin(), families.end(), f) != families.end();
  };

  std::vector<GroupSpec> result;

  if (wanted(Family::cyclic)) {
    for (std::uint64_t n = 1; n <= max_order; ++n)
      result.push_back(GroupSpec::cyclic(n));
  }

  if (wanted(Family::abelian)) {
    std::vector<std::vector<std::uint64_t>> lists;
    std::vector<std::uint64_t> prefix;
    abelian_lists(max_order, prefix, 1, lists);
    std::sort(lists.begin(), lists.end(), [](auto const &a, auto const &b) {
      auto prod = [](auto const &v) {
        std::uint64_t p = 1;
        for (auto d : v)
          p *= d;
        return p;
      };
      auto pa = prod(a), pb = prod(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (auto &l : lists)
      result.push_back(GroupSpec::abelian(std::move(l)));
  }

  if (wanted(Family::dihedral)) {
    for (std::uint64_t n = 3; 2 * n <= max_order; ++n)
      result.push_back(GroupSpec::dihedral(n));
  }

  if (wanted(Family::symmetric)) {
    // symmetric:3 is dihedral:3
    std::uint64_t start = wanted(Family::dihedral) ? 4 : 3;
    for (std::uint64_t n = start; n <= 20 && factorial(n) <= max_order; ++n)
      result.push_back(GroupSpec::symmetric(n));
  }

  if (wanted(Family::alternating)) {
    for (std::uint64_t n = 4; n <= 20 && factorial(n) / 2 <= max_order; ++n) {
      // alternating:5 is psl2:5
      if (n == 5 && wanted(Family::psl2))
        continue;
      result.push_back(GroupSpec::alternating(n));
    }
  }

  if (wanted(Family::psl2)) {
    for (std::uint64_t q = 5; q * (q * q - 1) / 2 <= max_order; ++q) {
      if (is_prime(q))
        result.push_back(GroupSpec::psl2(q));
    }
  }

  if (wanted(Family::explicit_)) {
    for (auto const &name : fixture_names()) {
      GroupSpec spec = fixture(name);
      if (build_group(spec).order() <= max_order)
        result.push_back(std::move(spec));
    }
  }

  return result;
}

} // namespace genvec
