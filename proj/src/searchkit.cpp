#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

#include "genvec/error.hpp"
#include "genvec/searchkit.hpp"

namespace genvec {

std::size_t scan_data(std::filesystem::path const &path, Predicate const &pred,
                      std::function<void(Entry const &)> const &on_match,
                      ScanOptions const &options)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open data file '" + path.string() + "'");

  EntryReader reader(in, options.format);
  std::size_t scanned = 0;
  while (auto entry = reader.next()) {
    ++scanned;

    std::optional<PermGroup> group;
    if (options.build_groups && !entry->block.elements.empty())
      group = subgroup_from_elements(entry->block.elements, entry->block.degree());

    EntryView view{entry->block.group, entry->block.signature, entry->block.elements,
                   group ? &*group : nullptr};
    if (pred(view))
      on_match(*entry);
  }
  return scanned;
}

std::vector<Entry> read_data(std::filesystem::path const &path, Predicate const &pred,
                             ScanOptions const &options)
{
  std::vector<Entry> matches;
  scan_data(path, pred, [&](Entry const &e) { matches.push_back(e); }, options);
  return matches;
}

std::vector<Entry> find_group(std::filesystem::path const &path, std::uint64_t order,
                              std::uint64_t id)
{
  LegacyId wanted{order, id};
  return read_data(path, [&](EntryView const &e) {
    return e.label.legacy_id && *e.label.legacy_id == wanted;
  });
}

std::vector<Entry> find_signature(std::filesystem::path const &path, Signature const &sig)
{
  return read_data(path, [&](EntryView const &e) { return e.signature == sig; });
}

std::vector<Entry> load_all(std::filesystem::path const &path)
{
  return read_data(path, [](EntryView const &) { return true; });
}

std::map<std::filesystem::path, std::vector<Entry>>
read_data_many(std::vector<std::filesystem::path> const &paths, Predicate const &pred,
               unsigned workers, ScanOptions const &options)
{
  std::vector<std::vector<Entry>> results(paths.size());
  std::vector<std::exception_ptr> errors(paths.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= paths.size())
        return;
      try {
        results[i] = read_data(paths[i], pred, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(paths.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();

  for (auto const &e : errors) {
    if (e)
      std::rethrow_exception(e);
  }

  std::map<std::filesystem::path, std::vector<Entry>> keyed;
  for (std::size_t i = 0; i < paths.size(); ++i)
    keyed[paths[i]] = std::move(results[i]);
  return keyed;
}

} // namespace genvec
