#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "genvec/error.hpp"
#include "genvec/perm_group.hpp"

namespace genvec {

StabilizerChain::StabilizerChain(std::span<const Permutation> generators,
                                 std::size_t degree)
  : _degree(degree)
{
  std::vector<Permutation> gens;
  for (auto const &g : generators) {
    if (g.degree() != degree)
      throw DomainError("generator of degree " + std::to_string(g.degree()) +
                        " in a chain of degree " + std::to_string(degree));
    if (!g.is_identity())
      gens.push_back(g);
  }

  // initial base: smallest point moved by a generator fixing the base so far
  for (;;) {
    Point next = 0;
    for (auto const &g : gens) {
      bool fixes_base = std::all_of(_levels.begin(), _levels.end(),
        [&](Level const &lv) { return g.raw()[lv.base] == lv.base; });
      if (fixes_base && (next == 0 || g.first_moved() < next))
        next = g.first_moved();
    }
    if (next == 0)
      break;
    Level lv;
    lv.base = next - 1;
    _levels.push_back(std::move(lv));
  }

  for (std::size_t l = 0; l < _levels.size(); ++l) {
    for (auto const &g : gens) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < l; ++j) {
        if (g.raw()[_levels[j].base] != _levels[j].base) {
          fixes_prefix = false;
          break;
        }
      }
      if (fixes_prefix)
        _levels[l].generators.push_back(g);
    }
    rebuild_orbit(_levels[l]);
  }

  schreier_sims();
}

void StabilizerChain::rebuild_orbit(Level &level) const
{
  level.orbit.clear();
  level.transversal.assign(_degree, std::nullopt);
  level.inverse_transversal.assign(_degree, std::nullopt);

  level.transversal[level.base] = Permutation::identity(_degree);
  level.orbit.push_back(level.base);

  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    Point x = level.orbit[i];
    for (auto const &s : level.generators) {
      Point y = s.raw()[x];
      if (!level.transversal[y]) {
        level.transversal[y] = *level.transversal[x] * s;
        level.orbit.push_back(y);
      }
    }
  }

  for (Point x : level.orbit)
    level.inverse_transversal[x] = level.transversal[x]->inverse();
}

StabilizerChain::SiftResult StabilizerChain::sift(Permutation p,
                                                  std::size_t from_level) const
{
  for (std::size_t l = from_level; l < _levels.size(); ++l) {
    Point beta = p.raw()[_levels[l].base];
    auto const &u_inv = _levels[l].inverse_transversal[beta];
    if (!u_inv)
      return {std::move(p), l};
    p = p * *u_inv;
  }
  return {std::move(p), _levels.size()};
}

void StabilizerChain::schreier_sims()
{
  std::size_t i = _levels.size();
  while (i > 0) {
    bool restarted = false;

    for (std::size_t oi = 0; !restarted && oi < _levels[i - 1].orbit.size(); ++oi) {
      Level const &lv = _levels[i - 1];
      Point beta = lv.orbit[oi];

      for (std::size_t si = 0; si < lv.generators.size(); ++si) {
        Permutation const &s = lv.generators[si];
        Point image = s.raw()[beta];
        Permutation schreier_gen =
          *lv.transversal[beta] * s * *lv.inverse_transversal[image];
        if (schreier_gen.is_identity())
          continue;

        auto [residue, stop] = sift(std::move(schreier_gen), i);
        if (residue.is_identity())
          continue;

        if (stop == _levels.size()) {
          Level fresh;
          fresh.base = residue.first_moved() - 1;
          _levels.push_back(std::move(fresh));
        }
        for (std::size_t l = i; l <= stop; ++l) {
          _levels[l].generators.push_back(residue);
          rebuild_orbit(_levels[l]);
        }
        i = stop + 1;
        restarted = true;
        break;
      }
    }

    if (!restarted)
      --i;
  }
}

std::vector<Point> StabilizerChain::base() const
{
  std::vector<Point> result;
  for (auto const &lv : _levels)
    result.push_back(lv.base + 1);
  return result;
}

std::uint64_t StabilizerChain::order() const noexcept
{
  std::uint64_t result = 1;
  for (auto const &lv : _levels)
    result *= lv.orbit.size();
  return result;
}

bool StabilizerChain::contains(Permutation const &p) const
{
  if (p.degree() != _degree)
    return false;
  return sift(p, 0).residue.is_identity();
}

void StabilizerChain::for_each_element(
  std::function<void(Permutation const &)> const &f) const
{
  // every element factors uniquely as u_{k-1} * ... * u_0 with u_l taken from
  // the transversal of level l
  std::function<void(std::size_t, Permutation const &)> descend =
    [&](std::size_t remaining, Permutation const &prefix) {
      if (remaining == 0) {
        f(prefix);
        return;
      }
      Level const &lv = _levels[remaining - 1];
      for (Point x : lv.orbit)
        descend(remaining - 1, prefix * *lv.transversal[x]);
    };

  descend(_levels.size(), Permutation::identity(_degree));
}

PermGroup::PermGroup(std::vector<Permutation> generators)
  : _generators(std::move(generators))
{
  if (_generators.empty())
    throw DomainError("a permutation group needs at least one generator");

  _degree = _generators.front().degree();
  if (_degree == 0)
    throw DomainError("permutation degree must be positive");
  for (auto const &g : _generators) {
    if (g.degree() != _degree)
      throw DomainError("generators have mixed degrees (" +
                        std::to_string(_degree) + " and " +
                        std::to_string(g.degree()) + ")");
  }

  _chain = StabilizerChain(_generators, _degree);
  _order = _chain.order();
}

PermGroup PermGroup::trivial(std::size_t degree)
{
  return PermGroup({Permutation::identity(degree)});
}

bool PermGroup::contains(Permutation const &p) const
{
  return _chain.contains(p);
}

GroupElements::GroupElements(PermGroup const &group, std::size_t budget)
{
  if (group.order() > budget)
    throw ResourceError("group of order " + std::to_string(group.order()) +
                        " exceeds the element budget of " + std::to_string(budget));

  _elements.reserve(group.order());
  group.chain().for_each_element(
    [&](Permutation const &p) { _elements.push_back(p); });
  std::sort(_elements.begin(), _elements.end());

  _index.reserve(_elements.size());
  for (std::size_t i = 0; i < _elements.size(); ++i)
    _index.emplace(_elements[i], i);
}

std::optional<std::size_t> GroupElements::index_of(Permutation const &p) const
{
  auto it = _index.find(p);
  if (it == _index.end())
    return std::nullopt;
  return it->second;
}

ClassTable::ClassTable(PermGroup const &group, std::size_t budget)
  : _elements(group, budget)
{
  constexpr std::size_t unassigned = 0;
  std::vector<std::size_t> provisional(_elements.size(), unassigned);
  std::vector<std::vector<std::size_t>> orbits;

  // Elements are visited in sorted order, so the first member of each orbit
  // is its least member.
  for (std::size_t start = 0; start < _elements.size(); ++start) {
    if (provisional[start] != unassigned)
      continue;

    std::vector<std::size_t> orbit{start};
    provisional[start] = orbits.size() + 1;

    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (auto const &g : group.generators()) {
        std::size_t j = *_elements.index_of(_elements[orbit[i]].conjugate(g));
        if (provisional[j] == unassigned) {
          provisional[j] = orbits.size() + 1;
          orbit.push_back(j);
        }
      }
    }

    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }

  std::vector<std::size_t> order(orbits.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::uint64_t> orders(orbits.size());
  for (std::size_t c = 0; c < orbits.size(); ++c)
    orders[c] = element_order(_elements[orbits[c].front()]);

  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (orders[a] != orders[b])
      return orders[a] < orders[b];
    if (orbits[a].size() != orbits[b].size())
      return orbits[a].size() < orbits[b].size();
    return _elements[orbits[a].front()] < _elements[orbits[b].front()];
  });

  std::vector<std::size_t> final_index(orbits.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    std::size_t c = order[pos];
    final_index[c] = pos + 1;

    ConjClass cls;
    cls.representative = _elements[orbits[c].front()];
    cls.size = orbits[c].size();
    cls.element_order = orders[c];
    cls.index = pos + 1;
    _classes.push_back(std::move(cls));
    _members.push_back(std::move(orbits[c]));
  }

  _class_of.resize(_elements.size());
  for (std::size_t e = 0; e < _elements.size(); ++e)
    _class_of[e] = final_index[provisional[e] - 1];
}

std::size_t ClassTable::class_of(Permutation const &p) const
{
  auto idx = _elements.index_of(p);
  if (!idx)
    throw DomainError("permutation " + p.cycle_string() + " is not in the group");
  return _class_of[*idx];
}

std::vector<std::size_t> const &ClassTable::members(std::size_t index) const
{
  if (index < 1 || index > _members.size())
    throw DomainError("class index " + std::to_string(index) + " out of range");
  return _members[index - 1];
}

std::vector<ConjClass> conjugacy_classes(PermGroup const &group, std::size_t budget)
{
  return ClassTable(group, budget).classes();
}

PermGroup subgroup_from_elements(std::span<const Permutation> elems,
                                 std::size_t degree)
{
  std::vector<Permutation> gens;
  std::optional<PermGroup> current;

  for (auto const &e : elems) {
    if (e.is_identity())
      continue;
    if (current && current->contains(e))
      continue;
    gens.push_back(e);
    current.emplace(gens);
  }

  if (!current)
    return PermGroup::trivial(degree);
  return *current;
}

PermGroup centralizer(PermGroup const &group, Permutation const &p,
                      std::size_t budget)
{
  if (!group.contains(p))
    throw DomainError("centralizer: " + p.cycle_string() + " is not in the group");

  GroupElements elements(group, budget);
  std::vector<Permutation> commuting;
  for (auto const &g : elements.all()) {
    if (g * p == p * g)
      commuting.push_back(g);
  }
  return subgroup_from_elements(commuting, group.degree());
}

PermGroup derived_subgroup(PermGroup const &group)
{
  auto const &gens = group.generators();
  std::vector<Permutation> commutators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      commutators.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
  }

  PermGroup closure = subgroup_from_elements(commutators, group.degree());

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto const &n : closure.generators()) {
      for (auto const &g : gens) {
        Permutation c = n.conjugate(g);
        if (!closure.contains(c)) {
          auto extended = closure.generators();
          extended.push_back(std::move(c));
          closure = PermGroup(std::move(extended));
          changed = true;
          break;
        }
      }
      if (changed)
        break;
    }
  }

  return closure;
}

namespace {

std::map<std::uint64_t, unsigned> factorize(std::uint64_t n)
{
  std::map<std::uint64_t, unsigned> result;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++result[p];
      n /= p;
    }
  }
  if (n > 1)
    ++result[n];
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> result;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      result.push_back(d);
      if (d * d != n)
        result.push_back(n / d);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

} // anonymous namespace

std::vector<std::uint64_t> abelian_invariants(PermGroup const &group,
                                              std::size_t budget)
{
  PermGroup derived = derived_subgroup(group);
  std::uint64_t quotient = group.order() / derived.order();
  if (quotient == 1)
    return {};

  GroupElements elements(group, budget);

  // order of each coset gD in G/D, tallied over all of G
  std::map<std::uint64_t, std::uint64_t> coset_order_count;
  for (auto const &g : elements.all()) {
    for (std::uint64_t d : divisors(element_order(g))) {
      if (derived.contains(g.pow(static_cast<std::int64_t>(d)))) {
        ++coset_order_count[d];
        break;
      }
    }
  }

  // For each prime p, |A[p^k]| = p^(sum_i min(k, e_i)) recovers the
  // exponents e_i of the p-primary part.
  std::vector<std::vector<unsigned>> exponents_by_prime;
  std::vector<std::uint64_t> primes;
  for (auto [p, multiplicity] : factorize(quotient)) {
    std::vector<unsigned> log_sizes{0};
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= multiplicity; ++k) {
      pk *= p;
      std::uint64_t count = 0;
      for (auto [ord, n] : coset_order_count) {
        if (pk % ord == 0)
          count += n;
      }
      count /= derived.order();

      unsigned log = 0;
      while (count > 1) {
        count /= p;
        ++log;
      }
      log_sizes.push_back(log);
    }

    // number of cyclic factors with exponent >= k
    std::vector<unsigned> exps;
    for (unsigned k = 1; k < log_sizes.size(); ++k) {
      unsigned at_least_k = log_sizes[k] - log_sizes[k - 1];
      if (exps.size() < at_least_k)
        exps.resize(at_least_k, 0);
      for (unsigned i = 0; i < at_least_k; ++i)
        exps[i] = k;
    }

    primes.push_back(p);
    exponents_by_prime.push_back(std::move(exps));
  }

  std::size_t length = 0;
  for (auto const &exps : exponents_by_prime)
    length = std::max(length, exps.size());

  // exps are in decreasing order; factor 0 is the largest invariant factor
  std::vector<std::uint64_t> factors(length, 1);
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    auto const &exps = exponents_by_prime[pi];
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (unsigned e = 0; e < exps[i]; ++e)
        factors[i] *= primes[pi];
    }
  }

  std::reverse(factors.begin(), factors.end());
  return factors;
}

bool generates(PermGroup const &group, std::span<const Permutation> elems)
{
  if (elems.empty())
    return group.order() == 1;
  return PermGroup(std::vector<Permutation>(elems.begin(), elems.end())).order() ==
         group.order();
}

} // namespace genvec
