#include <algorithm>

#include "genvec/error.hpp"
#include "genvec/signature.hpp"
#include "text_util.hpp"

namespace genvec {

Signature::Signature(std::uint32_t orbit_genus, std::vector<std::uint64_t> periods)
  : _orbit_genus(orbit_genus), _periods(std::move(periods))
{
  for (std::size_t i = 0; i < _periods.size(); ++i) {
    if (_periods[i] < 2)
      throw DomainError("signature periods must be >= 2");
    if (i > 0 && _periods[i] < _periods[i - 1])
      throw DomainError("signature periods must be nondecreasing");
  }
}

std::string Signature::to_string() const
{
  std::string out = "[" + std::to_string(_orbit_genus) + ";";
  for (std::size_t i = 0; i < _periods.size(); ++i) {
    out += i ? ", " : " ";
    out += std::to_string(_periods[i]);
  }
  return out + "]";
}

std::string Signature::to_flat_string() const
{
  std::string out = "[" + std::to_string(_orbit_genus);
  for (auto m : _periods)
    out += "," + std::to_string(m);
  return out + "]";
}

std::string Signature::to_spaced_flat_string() const
{
  std::string out = "[ " + std::to_string(_orbit_genus);
  for (auto m : _periods)
    out += ", " + std::to_string(m);
  return out + " ]";
}

namespace {

std::vector<std::uint64_t> parse_number_list(std::string_view body, std::size_t offset)
{
  std::vector<std::uint64_t> values;
  if (detail::trim(body).empty())
    return values;

  std::size_t pos = 0;
  for (auto field : detail::split(body, ',')) {
    auto value = detail::parse_uint(detail::trim(field));
    if (!value)
      throw FormatError("expected a nonnegative integer in signature", 0,
                        offset + pos + 1);
    values.push_back(*value);
    pos += field.size() + 1;
  }
  return values;
}

} // anonymous namespace

Signature parse_signature(std::string_view text)
{
  std::string_view trimmed = detail::trim(text);
  std::size_t lead = static_cast<std::size_t>(trimmed.data() - text.data());

  if (trimmed.empty())
    throw FormatError("empty signature", 0, 1);

  char open = trimmed.front();
  char close = open == '[' ? ']' : open == '(' ? ')' : '\0';
  if (!close)
    throw FormatError("signature must start with '[' or '('", 0, lead + 1);
  if (trimmed.back() != close)
    throw FormatError(std::string("signature must end with '") + close + "'", 0,
                      lead + trimmed.size());

  std::string_view body = trimmed.substr(1, trimmed.size() - 2);
  std::size_t body_offset = lead + 1;

  std::uint64_t g0 = 0;
  std::vector<std::uint64_t> periods;

  auto semi = body.find(';');
  if (semi != std::string_view::npos) {
    auto head = detail::parse_uint(detail::trim(body.substr(0, semi)));
    if (!head)
      throw FormatError("expected the orbit genus before ';'", 0, body_offset + 1);
    g0 = *head;
    periods = parse_number_list(body.substr(semi + 1), body_offset + semi + 1);
  } else {
    auto values = parse_number_list(body, body_offset);
    if (values.empty())
      throw FormatError("flat signature needs the orbit genus", 0, body_offset + 1);
    g0 = values.front();
    periods.assign(values.begin() + 1, values.end());
  }

  if (g0 > 1'000'000)
    throw FormatError("orbit genus out of range", 0, body_offset + 1);

  try {
    return Signature(static_cast<std::uint32_t>(g0), std::move(periods));
  } catch (DomainError const &e) {
    throw FormatError(e.what(), 0, lead + 1);
  }
}

Rational mu_measure(Signature const &sig)
{
  Rational mu(2 * static_cast<std::int64_t>(sig.orbit_genus()) - 2);
  for (auto m : sig.periods())
    mu += Rational(1) - Rational(1, static_cast<std::int64_t>(m));
  return mu;
}

Rational rh_genus(std::uint64_t order, Signature const &sig)
{
  return Rational(1) + Rational(static_cast<std::int64_t>(order), 2) * mu_measure(sig);
}

std::uint64_t hurwitz_bound(std::uint64_t genus)
{
  return genus == 0 ? 0 : 84 * (genus - 1);
}

bool is_large_group(std::uint64_t genus, std::uint64_t order)
{
  if (genus < 2)
    throw DomainError("is_large_group needs genus >= 2");
  return order > 4 * (genus - 1);
}

namespace {

// Nondecreasing period lists over `divs` whose terms (1 - 1/m) sum to `remaining`.
void period_lists(std::vector<std::uint64_t> const &divs, std::size_t from,
                  Rational remaining, std::vector<std::uint64_t> &prefix,
                  std::vector<std::vector<std::uint64_t>> &out)
{
  if (remaining == Rational(0)) {
    out.push_back(prefix);
    return;
  }
  // every term is at least 1/2
  if (remaining < Rational(1, 2))
    return;

  for (std::size_t i = from; i < divs.size(); ++i) {
    Rational term = Rational(1) - Rational(1, static_cast<std::int64_t>(divs[i]));
    if (term > remaining)
      break;
    prefix.push_back(divs[i]);
    period_lists(divs, i, remaining - term, prefix, out);
    prefix.pop_back();
  }
}

} // anonymous namespace

std::vector<Signature> admissible_signatures(std::uint64_t genus, std::uint64_t order)
{
  if (genus < 2)
    throw DomainError("admissible_signatures needs genus >= 2");
  if (order < 1)
    throw DomainError("admissible_signatures needs order >= 1");
  if (order > hurwitz_bound(genus))
    return {};

  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 2; d <= order; ++d) {
    if (order % d == 0)
      divs.push_back(d);
  }

  Rational mu(2 * static_cast<std::int64_t>(genus - 1), static_cast<std::int64_t>(order));

  std::vector<Signature> result;
  // mu >= 2*g0 - 2 bounds the orbit genus
  for (std::uint32_t g0 = 0; Rational(2 * static_cast<std::int64_t>(g0) - 2) <= mu; ++g0) {
    Rational remaining = mu - Rational(2 * static_cast<std::int64_t>(g0) - 2);
    std::vector<std::vector<std::uint64_t>> lists;
    std::vector<std::uint64_t> prefix;
    period_lists(divs, 0, remaining, prefix, lists);
    for (auto &periods : lists)
      result.emplace_back(g0, std::move(periods));
  }

  std::sort(result.begin(), result.end(), [](Signature const &a, Signature const &b) {
    if (a.orbit_genus() != b.orbit_genus())
      return a.orbit_genus() < b.orbit_genus();
    if (a.branch_count() != b.branch_count())
      return a.branch_count() < b.branch_count();
    return a.periods() < b.periods();
  });
  return result;
}

} // namespace genvec
