#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "genvec/catalog.hpp"
#include "genvec/epimorph.hpp"
#include "genvec/error.hpp"
#include "support.hpp"

using namespace genvec;

namespace {

Signature sig(std::uint32_t g0, std::vector<std::uint64_t> periods)
{
  return Signature(g0, std::move(periods));
}

LabeledGroup labeled(std::string_view spec) { return make_labeled(parse_group_spec(spec)); }

std::vector<std::int64_t> sorted(std::vector<std::int64_t> v)
{
  std::sort(v.begin(), v.end());
  return v;
}

// Brute force in Z/d1 x ... x Z/dk: is there a tuple (a_1..a_2g0, c_1..c_r)
// with m_j c_j = 0, sum c_j = 0, generating the whole group?
bool abelian_vector_exists(std::vector<std::uint64_t> const &factors, Signature const &s)
{
  using Elt = std::vector<std::uint64_t>;
  std::uint64_t order = 1;
  for (auto d : factors)
    order *= d;

  auto decode = [&](std::uint64_t code) {
    Elt e(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      e[i] = code % factors[i];
      code /= factors[i];
    }
    return e;
  };
  auto add = [&](Elt a, Elt const &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = (a[i] + b[i]) % factors[i];
    return a;
  };
  auto scaled = [&](Elt const &a, std::uint64_t k) {
    Elt out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      out[i] = (a[i] * k) % factors[i];
    return out;
  };
  auto is_zero = [](Elt const &a) {
    return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
  };
  auto span_size = [&](std::vector<Elt> const &gens) {
    std::set<Elt> seen{Elt(factors.size(), 0)};
    std::vector<Elt> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Elt> next;
      for (auto const &x : frontier)
        for (auto const &g : gens) {
          auto y = add(x, g);
          if (seen.insert(y).second)
            next.push_back(y);
        }
      frontier = std::move(next);
    }
    return seen.size();
  };

  std::size_t len = s.vector_length();
  std::size_t hyp = 2 * s.orbit_genus();
  std::vector<std::uint64_t> idx(len, 0);
  for (;;) {
    std::vector<Elt> v;
    for (auto i : idx)
      v.push_back(decode(i));
    bool ok = true;
    Elt sum(factors.size(), 0);
    for (std::size_t j = hyp; j < len && ok; ++j) {
      ok = is_zero(scaled(v[j], s.periods()[j - hyp]));
      sum = add(sum, v[j]);
    }
    if (ok && is_zero(sum) && span_size(v) == order)
      return true;

    std::size_t k = 0;
    while (k < len && ++idx[k] == order)
      idx[k++] = 0;
    if (k == len)
      return false;
  }
}

std::set<std::pair<std::vector<std::size_t>, std::vector<Permutation>>>
record_set(std::vector<EpimorphismRecord> const &records)
{
  std::set<std::pair<std::vector<std::size_t>, std::vector<Permutation>>> out;
  for (auto const &r : records)
    out.insert({r.con, r.genimages.entries()});
  return out;
}

} // namespace

TEST_CASE("smith diagonal")
{
  CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(smith_diagonal({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) ==
        std::vector<std::int64_t>{2, 6, 12});
  CHECK(smith_diagonal({{0, 0}}) == std::vector<std::int64_t>{0, 0});
  CHECK(smith_diagonal({{4}}) == std::vector<std::int64_t>{4});
}

TEST_CASE("fuchsian abelianization")
{
  CHECK(fuchsian_abelianization(sig(0, {2, 3, 7})).empty());
  CHECK(sorted(fuchsian_abelianization(sig(0, {2, 2, 2, 2}))) ==
        std::vector<std::int64_t>{2, 2, 2});
  CHECK(sorted(fuchsian_abelianization(sig(1, {2, 2}))) == std::vector<std::int64_t>{0, 0, 2});
  CHECK(sorted(fuchsian_abelianization(sig(2, {}))) == std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK(sorted(fuchsian_abelianization(sig(0, {3, 3, 3}))) == std::vector<std::int64_t>{3, 3});
  CHECK(sorted(fuchsian_abelianization(sig(0, {2, 4, 4}))) == std::vector<std::int64_t>{2, 4});
}

TEST_CASE("abelianization pretest agrees with direct search on abelian groups")
{
  std::vector<std::vector<std::uint64_t>> groups{{2}, {3}, {4}, {6}, {2, 2}, {2, 4}, {3, 3},
                                                 {2, 2, 2}, {8}, {2, 6}};
  std::vector<Signature> sigs{sig(0, {2, 2, 2}), sig(0, {2, 2, 2, 2}), sig(0, {2, 3, 6}),
                              sig(0, {3, 3, 3}), sig(0, {2, 4, 4}), sig(1, {2}),
                              sig(1, {2, 2}), sig(0, {4, 4}), sig(0, {2, 2, 4, 4}),
                              sig(1, {}), sig(0, {6, 6, 6}), sig(0, {2, 8, 8})};
  for (auto const &factors : groups) {
    GroupSpec spec = factors.size() == 1 ? GroupSpec::cyclic(factors[0])
                                         : GroupSpec::abelian(factors);
    auto g = build_group(spec);
    for (auto const &s : sigs) {
      INFO(spec_label(spec) << " " << s.to_string());
      CHECK(abelianized_surjection_exists(s, g) == abelian_vector_exists(factors, s));
    }
  }
}

TEST_CASE("class tuples")
{
  auto g = labeled("fixture:psl(2,8)-paper");
  auto tuples = class_tuples(*g.group, sig(0, {2, 3, 7}));
  CHECK(tuples == std::vector<std::vector<std::size_t>>{{2, 3, 4}, {2, 3, 5}, {2, 3, 6}});
  CHECK(class_tuples(*g.group, sig(0, {2, 3, 8})).empty());
  CHECK(class_tuples(*g.group, sig(2, {})) == std::vector<std::vector<std::size_t>>{{}});
}

TEST_CASE("is_generating_vector")
{
  auto g = build_group(fixture("psl(2,8)-paper"));
  GeneratingVector hurwitz;
  hurwitz.branch = {perm_from_image_row("1 6 4 3 9 2 8 7 5", 9),
                  perm_from_image_row("4 5 8 9 6 2 3 7 1", 9),
                  perm_from_image_row("5 2 8 1 6 9 7 4 3", 9)};
  CHECK(is_generating_vector(g, sig(0, {2, 3, 7}), hurwitz));
  CHECK_FALSE(is_generating_vector(g, sig(0, {2, 3, 8}), hurwitz));
  CHECK_FALSE(is_generating_vector(g, sig(2, {}), hurwitz));

  auto swapped = hurwitz;
  std::swap(swapped.branch[1], swapped.branch[2]);
  CHECK_FALSE(is_generating_vector(g, sig(0, {2, 3, 7}), swapped));

  auto s4 = build_group(GroupSpec::symmetric(4));
  GeneratingVector klein;
  klein.branch = {perm_from_cycle_string("(1,2)(3,4)", 4), perm_from_cycle_string("(1,3)(2,4)", 4),
                  perm_from_cycle_string("(1,4)(2,3)", 4)};
  CHECK_FALSE(is_generating_vector(s4, sig(0, {2, 2, 2}), klein));
  CHECK(is_generating_vector(build_group(GroupSpec::abelian({2, 2})), sig(0, {2, 2, 2}),
                             GeneratingVector{{},
                                              {perm_from_cycle_string("(1,2)", 4),
                                               perm_from_cycle_string("(3,4)", 4),
                                               perm_from_cycle_string("(1,2)(3,4)", 4)},
                                              {}}));
}

TEST_CASE("PSL(2,8) with (0;2,3,7)")
{
  auto g = labeled("fixture:psl(2,8)-paper");
  auto records = representatives_epimorphisms(g, sig(0, {2, 3, 7}));
  REQUIRE(records.size() == 3);
  std::set<std::size_t> sevens;
  for (auto const &r : records) {
    CHECK(r.con == r.genimages.class_tuple);
    CHECK(r.con[0] == 2);
    CHECK(r.con[1] == 3);
    sevens.insert(r.con[2]);
    CHECK(is_generating_vector(*g.group, r.signature, r.genimages));
  }
  CHECK(sevens.size() == 3);
}

TEST_CASE("edge cases")
{
  auto trivial = labeled("cyclic:1");
  CHECK(representatives_epimorphisms(trivial, sig(0, {2, 3, 7})).empty());

  // (0;2,2,2,2) is Euclidean, the search still applies
  auto v4 = labeled("abelian:2,2");
  auto fast = representatives_epimorphisms(v4, sig(0, {2, 2, 2, 2}));
  CHECK(!fast.empty());
  CHECK(record_set(fast) == record_set(brute_force_epimorphisms(v4, sig(0, {2, 2, 2, 2}))));

  // unramified: C2 x C2 is a quotient of the genus-2 surface group
  auto unram = representatives_epimorphisms(v4, sig(2, {}));
  CHECK(record_set(unram) == record_set(brute_force_epimorphisms(v4, sig(2, {}))));
  CHECK(!unram.empty());
  for (auto const &r : unram) {
    CHECK(r.genimages.branch.empty());
    CHECK(r.genimages.hyperbolic.size() == 4);
  }
}

TEST_CASE("budgets")
{
  auto g = labeled("psl2:29");
  SearchOptions tight;
  tight.candidate_budget = 10;
  try {
    representatives_epimorphisms(g, sig(0, {2, 3, 7}), tight);
    FAIL("expected a budget error");
  } catch (ResourceError const &e) {
    CHECK(std::string(e.what()).find("[") != std::string::npos);
  }

  SearchOptions oracle_tight;
  oracle_tight.oracle_budget = 100;
  CHECK_THROWS_AS(brute_force_epimorphisms(labeled("symmetric:4"), sig(0, {2, 3, 4, 4}),
                                           oracle_tight),
                  ResourceError);
}

TEST_CASE("worker count does not change results")
{
  auto g = labeled("psl2:13");
  auto s = sig(0, {2, 3, 7});
  SearchOptions one, four;
  four.workers = 4;
  auto a = representatives_epimorphisms(g, s, one);
  auto b = representatives_epimorphisms(g, s, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].con == b[i].con);
    CHECK(a[i].genimages == b[i].genimages);
  }

  auto d = labeled("dihedral:6");
  auto sd = sig(0, {2, 2, 2, 3});
  CHECK(record_set(representatives_epimorphisms(d, sd, one)) ==
        record_set(representatives_epimorphisms(d, sd, four)));
}

TEST_CASE("property: oracle equivalence on small catalog groups")
{
  std::size_t compared = 0;
  for (auto const &spec : catalog(12)) {
    auto g = make_labeled(spec);
    if (g.group->order() < 2)
      continue;
    for (std::uint64_t genus : {2, 3}) {
      for (auto const &s : admissible_signatures(genus, g.group->order())) {
        if (s.orbit_genus() > 1 || s.branch_count() > 5)
          continue;
        INFO(g.label.text << " " << s.to_string());
        CHECK(record_set(representatives_epimorphisms(g, s)) ==
              record_set(brute_force_epimorphisms(g, s)));
        ++compared;
      }
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("property: soundness and conjugation closure")
{
  std::mt19937_64 rng(5);
  for (auto spec : {"dihedral:4", "fixture:q8", "symmetric:4", "alternating:5", "abelian:2,4"}) {
    auto g = labeled(spec);
    GroupElements elements(*g.group);
    for (std::uint64_t genus : {2, 3, 4}) {
      for (auto const &s : admissible_signatures(genus, g.group->order())) {
        auto records = representatives_epimorphisms(g, s);
        std::set<GeneratingVector> reps;
        for (auto const &r : records) {
          CHECK(is_generating_vector(*g.group, s, r.genimages));
          reps.insert(r.genimages);
        }
        for (auto const &r : records) {
          auto const &h = elements[rng() % elements.size()];
          auto moved = r.genimages.conjugate(h);
          INFO(spec << " " << s.to_string());
          CHECK(reps.count(canonical_representative(elements, moved)) == 1);
        }
      }
    }
  }
}

TEST_CASE("property: pretest soundness")
{
  SearchOptions no_pretest;
  no_pretest.abelian_pretest = false;
  std::size_t rejected = 0;
  for (auto const &spec : catalog(24)) {
    auto g = make_labeled(spec);
    if (g.group->order() < 2)
      continue;
    for (std::uint64_t genus : {2, 3}) {
      for (auto const &s : admissible_signatures(genus, g.group->order())) {
        if (abelianized_surjection_exists(s, *g.group))
          continue;
        ++rejected;
        INFO(g.label.text << " " << s.to_string());
        CHECK(representatives_epimorphisms(g, s, no_pretest).empty());
      }
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("orbit representatives")
{
  auto g = build_group(GroupSpec::symmetric(3));
  GroupElements elements(g);
  GeneratingVector v{{},
                     {perm_from_cycle_string("(1,2)", 3), perm_from_cycle_string("(1,2)", 3),
                      perm_from_cycle_string("(1,2,3)", 3),
                      perm_from_cycle_string("(1,3,2)", 3)},
                     {}};
  std::vector<GeneratingVector> orbit;
  for (auto const &h : elements.all())
    orbit.push_back(v.conjugate(h));
  auto reps = orbit_representatives(g, orbit);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0] == canonical_representative(elements, v));
  for (auto const &w : orbit)
    CHECK_FALSE(w < reps[0]);
}
