#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "genvec/epimorph.hpp"
#include "genvec/error.hpp"

namespace genvec {

std::vector<Permutation> GeneratingVector::entries() const
{
  std::vector<Permutation> all = hyperbolic;
  all.insert(all.end(), branch.begin(), branch.end());
  return all;
}

GeneratingVector GeneratingVector::conjugate(Permutation const &h) const
{
  GeneratingVector out;
  out.class_tuple = class_tuple;
  out.hyperbolic.reserve(hyperbolic.size());
  out.branch.reserve(branch.size());
  for (auto const &x : hyperbolic)
    out.hyperbolic.push_back(x.conjugate(h));
  for (auto const &x : branch)
    out.branch.push_back(x.conjugate(h));
  return out;
}

namespace {

std::string tuple_string(std::vector<std::size_t> const &tuple)
{
  std::string out = "[";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i)
      out += ", ";
    out += std::to_string(tuple[i]);
  }
  return out + "]";
}

Permutation commutator(Permutation const &a, Permutation const &b)
{
  return a.inverse() * b.inverse() * a * b;
}

std::map<std::uint64_t, unsigned> factor_small(std::uint64_t n)
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

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Does a finitely generated abelian group with invariant factors `source`
// (0 = free Z) surject onto the finite abelian group with invariant factors
// `target`? Holds iff, prime by prime, the sorted p-exponents of the target
// are dominated entrywise by those of the source, free summands counting as
// unbounded.
bool abelian_surjects(std::vector<std::int64_t> const &source,
                      std::vector<std::uint64_t> const &target)
{
  std::uint64_t target_order = 1;
  for (auto d : target)
    target_order *= d;

  std::size_t free_rank = 0;
  for (auto d : source) {
    if (d == 0)
      ++free_rank;
  }

  for (auto [p, mult] : factor_small(target_order)) {
    std::vector<unsigned> want, have;
    for (auto d : target) {
      if (unsigned v = valuation(d, p))
        want.push_back(v);
    }
    for (auto d : source) {
      if (d != 0) {
        if (unsigned v = valuation(static_cast<std::uint64_t>(d), p))
          have.push_back(v);
      }
    }
    std::sort(want.rbegin(), want.rend());
    std::sort(have.rbegin(), have.rend());
    have.insert(have.begin(), free_rank, ~0u);

    if (want.size() > have.size())
      return false;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (want[i] > have[i])
        return false;
    }
  }
  return true;
}

struct VectorHash {
  std::size_t operator()(GeneratingVector const &v) const noexcept
  {
    std::size_t h = 0;
    for (auto const &x : v.hyperbolic)
      h = h * 1000003u ^ x.hash();
    for (auto const &x : v.branch)
      h = h * 1000003u ^ x.hash();
    return h;
  }
};

} // anonymous namespace

std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> a)
{
  std::size_t rows = a.size();
  std::size_t cols = rows ? a.front().size() : 0;
  for (auto const &row : a) {
    if (row.size() != cols)
      throw DomainError("smith_diagonal: ragged matrix");
  }

  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto &row : a)
      std::swap(row[i], row[j]);
  };

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // bring the smallest nonzero entry of the trailing block to (t, t)
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 &&
              (pi == rows || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows)
        goto done; // trailing block is zero

      std::swap(a[t], a[pi]);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j)
          a[i][j] -= q * a[t][j];
        if (a[i][t] != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        std::int64_t q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i)
          a[i][j] -= q * a[i][t];
        if (a[t][j] != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // the pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k)
              a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides)
        break;
    }
  }
done:
  std::vector<std::int64_t> diag;
  for (std::size_t i = 0; i < t; ++i)
    diag.push_back(std::llabs(a[i][i]));
  diag.resize(cols, 0);
  return diag;
}

std::vector<std::int64_t> fuchsian_abelianization(Signature const &sig)
{
  std::vector<std::int64_t> factors(2 * sig.orbit_genus(), 0);

  std::size_t r = sig.branch_count();
  if (r > 0) {
    // relations m_j c_j = 0 and c_1 + ... + c_r = 0
    std::vector<std::vector<std::int64_t>> rel(r + 1, std::vector<std::int64_t>(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      rel[j][j] = static_cast<std::int64_t>(sig.periods()[j]);
      rel[r][j] = 1;
    }
    for (auto d : smith_diagonal(std::move(rel))) {
      if (d != 1)
        factors.push_back(d);
    }
  }
  return factors;
}

bool abelianized_surjection_exists(Signature const &sig, PermGroup const &group,
                                   std::size_t element_budget)
{
  auto target = abelian_invariants(group, element_budget);
  if (target.empty())
    return true;
  return abelian_surjects(fuchsian_abelianization(sig), target);
}

std::vector<std::vector<std::size_t>> class_tuples(ClassTable const &classes,
                                                   Signature const &sig)
{
  std::vector<std::vector<std::size_t>> choices;
  for (auto m : sig.periods()) {
    std::vector<std::size_t> matching;
    for (auto const &c : classes.classes()) {
      if (c.element_order == m)
        matching.push_back(c.index);
    }
    if (matching.empty())
      return {};
    choices.push_back(std::move(matching));
  }

  std::vector<std::vector<std::size_t>> tuples{{}};
  for (auto const &options : choices) {
    std::vector<std::vector<std::size_t>> next;
    for (auto const &prefix : tuples) {
      for (auto idx : options) {
        next.push_back(prefix);
        next.back().push_back(idx);
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

std::vector<std::vector<std::size_t>> class_tuples(PermGroup const &group,
                                                   Signature const &sig,
                                                   std::size_t element_budget)
{
  return class_tuples(ClassTable(group, element_budget), sig);
}

bool is_generating_vector(PermGroup const &group, Signature const &sig,
                          GeneratingVector const &v)
{
  if (v.hyperbolic.size() != 2 * sig.orbit_genus() ||
      v.branch.size() != sig.branch_count())
    return false;

  auto entries = v.entries();
  for (auto const &x : entries) {
    if (x.degree() != group.degree() || !group.contains(x))
      return false;
  }

  for (std::size_t j = 0; j < v.branch.size(); ++j) {
    if (element_order(v.branch[j]) != sig.periods()[j])
      return false;
  }

  Permutation product = Permutation::identity(group.degree());
  for (std::size_t i = 0; i < sig.orbit_genus(); ++i)
    product = product * commutator(v.hyperbolic[2 * i], v.hyperbolic[2 * i + 1]);
  for (auto const &c : v.branch)
    product = product * c;
  if (!product.is_identity())
    return false;

  return generates(group, entries);
}

GeneratingVector canonical_representative(GroupElements const &elements,
                                          GeneratingVector const &v)
{
  GeneratingVector best = v;
  for (auto const &h : elements.all()) {
    GeneratingVector w = v.conjugate(h);
    if (w < best)
      best = std::move(w);
  }
  return best;
}

std::vector<GeneratingVector> orbit_representatives(PermGroup const &group,
                                                    std::vector<GeneratingVector> const &vectors,
                                                    std::size_t element_budget)
{
  GroupElements elements(group, element_budget);
  std::set<GeneratingVector> reps;
  for (auto const &v : vectors)
    reps.insert(canonical_representative(elements, v));
  return {reps.begin(), reps.end()};
}

namespace {

/**
 * Backtracking search for one class tuple. c_1 is pinned to its class
 * representative (every orbit meets that slice), c_2..c_{r-1} run over
 * their classes and c_r is solved from the relation. With no branch points
 * a_1 is pinned to class representatives instead.
 */
class TupleSearch {
public:
  TupleSearch(PermGroup const &group, ClassTable const &classes, Signature const &sig,
              std::vector<std::size_t> tuple, SearchOptions const &options)
    : _group(group), _classes(classes), _sig(sig), _tuple(std::move(tuple)),
      _options(options), _elements(classes.elements())
  {}

  std::vector<GeneratingVector> run()
  {
    check_estimate();

    std::size_t g0 = _sig.orbit_genus();
    _hyperbolic.assign(2 * g0, Permutation::identity(_group.degree()));
    _branch.assign(_sig.branch_count(), Permutation::identity(_group.degree()));

    if (_sig.branch_count() > 0)
      _branch[0] = _classes.classes()[_tuple[0] - 1].representative;

    hyperbolic_slot(0, Permutation::identity(_group.degree()));

    std::sort(_found.begin(), _found.end());
    return std::move(_found);
  }

private:
  void check_estimate() const
  {
    long double estimate = 1;
    std::size_t g0 = _sig.orbit_genus();
    std::size_t r = _sig.branch_count();
    long double n = static_cast<long double>(_elements.size());

    if (r == 0 && g0 > 0)
      estimate = _classes.classes().size() * std::pow(n, 2 * g0 - 1);
    else
      estimate = std::pow(n, 2 * g0);
    for (std::size_t k = 1; k + 1 < r; ++k)
      estimate *= _classes.classes()[_tuple[k] - 1].size;

    if (estimate > static_cast<long double>(_options.candidate_budget))
      throw ResourceError("search budget of " + std::to_string(_options.candidate_budget) +
                          " candidates exceeded at class tuple " + tuple_string(_tuple));
  }

  void count_candidate()
  {
    if (++_candidates > _options.candidate_budget)
      throw ResourceError("search budget of " + std::to_string(_options.candidate_budget) +
                          " candidates exceeded at class tuple " + tuple_string(_tuple));
  }

  void hyperbolic_slot(std::size_t slot, Permutation const &prefix)
  {
    if (slot == _hyperbolic.size()) {
      branch_start(prefix);
      return;
    }

    bool pinned = slot == 0 && _sig.branch_count() == 0;
    if (pinned) {
      for (auto const &c : _classes.classes()) {
        _hyperbolic[0] = c.representative;
        hyperbolic_slot(1, prefix);
      }
      return;
    }

    for (auto const &x : _elements.all()) {
      _hyperbolic[slot] = x;
      if (slot % 2 == 1)
        hyperbolic_slot(slot + 1, prefix * commutator(_hyperbolic[slot - 1], x));
      else
        hyperbolic_slot(slot + 1, prefix);
    }
  }

  void branch_start(Permutation const &prefix)
  {
    std::size_t r = _sig.branch_count();
    if (r == 0) {
      count_candidate();
      if (prefix.is_identity())
        accept();
      return;
    }

    Permutation with_first = prefix * _branch[0];
    if (r == 1) {
      count_candidate();
      if (with_first.is_identity())
        accept();
      return;
    }
    branch_slot(1, with_first);
  }

  void branch_slot(std::size_t slot, Permutation const &prefix)
  {
    std::size_t r = _sig.branch_count();
    if (slot == r - 1) {
      count_candidate();
      Permutation last = prefix.inverse();
      auto idx = _elements.index_of(last);
      if (idx && _classes.class_of_index(*idx) == _tuple[slot]) {
        _branch[slot] = std::move(last);
        accept();
      }
      return;
    }

    for (std::size_t e : _classes.members(_tuple[slot])) {
      _branch[slot] = _elements[e];
      branch_slot(slot + 1, prefix * _branch[slot]);
    }
  }

  void accept()
  {
    GeneratingVector v{_hyperbolic, _branch, _tuple};
    if (_seen.count(v))
      return;
    if (!generates(_group, v.entries()))
      return;

    // Walk the whole orbit once: track its least member and remember the
    // members that the pinned search slice can produce again.
    GeneratingVector best = v;
    bool pin_branch = _sig.branch_count() > 0;
    for (auto const &h : _elements.all()) {
      GeneratingVector w = v.conjugate(h);
      bool in_slice = pin_branch ? w.branch[0] == v.branch[0]
                                 : w.hyperbolic[0] == v.hyperbolic[0];
      if (w < best)
        best = w;
      if (in_slice)
        _seen.insert(std::move(w));
    }
    _found.push_back(std::move(best));
  }

  PermGroup const &_group;
  ClassTable const &_classes;
  Signature const &_sig;
  std::vector<std::size_t> _tuple;
  SearchOptions const &_options;
  GroupElements const &_elements;

  std::vector<Permutation> _hyperbolic;
  std::vector<Permutation> _branch;
  std::uint64_t _candidates = 0;
  std::unordered_set<GeneratingVector, VectorHash> _seen;
  std::vector<GeneratingVector> _found;
};

} // anonymous namespace

std::vector<EpimorphismRecord> representatives_epimorphisms(LabeledGroup const &group,
                                                            ClassTable const &classes,
                                                            Signature const &sig,
                                                            SearchOptions const &options)
{
  PermGroup const &g = *group.group;

  if (options.abelian_pretest &&
      !abelianized_surjection_exists(sig, g, options.element_budget))
    return {};

  auto tuples = class_tuples(classes, sig);
  if (tuples.empty())
    return {};

  std::vector<std::vector<GeneratingVector>> found(tuples.size());
  std::vector<std::exception_ptr> errors(tuples.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tuples.size())
        return;
      try {
        found[i] = TupleSearch(g, classes, sig, tuples[i], options).run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned workers = std::max(1u, std::min<unsigned>(options.workers,
                                                     static_cast<unsigned>(tuples.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  for (auto const &e : errors) {
    if (e)
      std::rethrow_exception(e);
  }

  std::vector<EpimorphismRecord> records;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (auto &v : found[i])
      records.push_back({sig, tuples[i], group, std::move(v)});
  }
  return records;
}

std::vector<EpimorphismRecord> representatives_epimorphisms(LabeledGroup const &group,
                                                            Signature const &sig,
                                                            SearchOptions const &options)
{
  ClassTable classes(*group.group, options.element_budget);
  return representatives_epimorphisms(group, classes, sig, options);
}

namespace {

// Order of the subgroup generated by `gens`, by closing under right
// multiplication.
std::size_t closure_size(std::vector<Permutation> const &gens, std::size_t degree)
{
  std::unordered_set<Permutation, PermutationHash> seen{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (auto const &x : frontier) {
      for (auto const &g : gens) {
        Permutation y = x * g;
        if (seen.insert(y).second)
          next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

} // anonymous namespace

std::vector<EpimorphismRecord> brute_force_epimorphisms(LabeledGroup const &group,
                                                        Signature const &sig,
                                                        SearchOptions const &options)
{
  PermGroup const &g = *group.group;
  ClassTable classes(g, options.element_budget);
  GroupElements const &elements = classes.elements();

  std::size_t g0 = sig.orbit_genus();
  std::size_t r = sig.branch_count();
  std::size_t free_slots = 2 * g0 + (r > 0 ? r - 1 : 0);

  long double total = std::pow(static_cast<long double>(elements.size()), free_slots);
  if (total > static_cast<long double>(options.oracle_budget))
    throw ResourceError("oracle budget of " + std::to_string(options.oracle_budget) +
                        " tuples exceeded");

  std::set<std::pair<std::vector<std::size_t>, GeneratingVector>> orbits;
  std::vector<std::size_t> odometer(free_slots, 0);
  Permutation id = Permutation::identity(g.degree());

  for (;;) {
    GeneratingVector v;
    for (std::size_t i = 0; i < 2 * g0; ++i)
      v.hyperbolic.push_back(elements[odometer[i]]);
    for (std::size_t i = 2 * g0; i < free_slots; ++i)
      v.branch.push_back(elements[odometer[i]]);

    Permutation product = id;
    for (std::size_t i = 0; i < g0; ++i) {
      Permutation const &a = v.hyperbolic[2 * i];
      Permutation const &b = v.hyperbolic[2 * i + 1];
      product = product * a.inverse() * b.inverse() * a * b;
    }
    for (auto const &c : v.branch)
      product = product * c;

    bool relation_ok = true;
    if (r > 0)
      v.branch.push_back(product.inverse());
    else
      relation_ok = product.is_identity();

    bool orders_ok = relation_ok;
    for (std::size_t j = 0; orders_ok && j < r; ++j)
      orders_ok = element_order(v.branch[j]) == sig.periods()[j];

    if (orders_ok && closure_size(v.entries(), g.degree()) == elements.size()) {
      for (auto const &c : v.branch)
        v.class_tuple.push_back(classes.class_of(c));

      GeneratingVector best = v;
      for (auto const &h : elements.all()) {
        GeneratingVector w = v.conjugate(h);
        if (w < best)
          best = std::move(w);
      }
      orbits.emplace(v.class_tuple, std::move(best));
    }

    std::size_t k = 0;
    while (k < free_slots && ++odometer[k] == elements.size())
      odometer[k++] = 0;
    if (k == free_slots)
      break;
  }

  std::vector<EpimorphismRecord> records;
  for (auto const &[tuple, v] : orbits)
    records.push_back({sig, tuple, group, v});
  return records;
}

} // namespace genvec
