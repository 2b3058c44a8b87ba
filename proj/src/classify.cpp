#include <algorithm>

#include "genvec/classify.hpp"
#include "genvec/error.hpp"
#include "genvec/signature.hpp"

namespace genvec {

ClassifyResult classify(ClassifyOptions const &options)
{
  if (options.genus < 2)
    throw DomainError("classification needs genus >= 2");

  std::uint64_t bound = hurwitz_bound(options.genus);
  if (options.max_order)
    bound = std::min(bound, *options.max_order);

  ClassifyResult result;
  for (auto const &spec : catalog(bound, options.families)) {
    LabeledGroup group = make_labeled(spec);
    std::uint64_t n = group.group->order();
    if (n < 2)
      continue;
    if (options.large_only && !is_large_group(options.genus, n))
      continue;

    auto signatures = admissible_signatures(options.genus, n);
    ++result.groups_examined;
    if (signatures.empty())
      continue;

    ClassTable classes(*group.group, options.search.element_budget);
    for (auto const &sig : signatures) {
      ++result.signature_pairs;
      auto records = representatives_epimorphisms(group, classes, sig, options.search);
      std::move(records.begin(), records.end(), std::back_inserter(result.records));
    }
  }
  return result;
}

} // namespace genvec
