#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "genvec/datafmt.hpp"

namespace genvec {

/// What a predicate sees for one data file entry.
struct EntryView {
  GroupLabel const &label;
  Signature const &signature;
  /// Hyperbolic images followed by branch images; empty for line-format data.
  std::vector<Permutation> const &vector;
  /// Group generated by the entry's own permutations; only set when the scan
  /// was asked to build groups.
  PermGroup const *group = nullptr;
};

/// Must not have side effects the scanner could observe.
using Predicate = std::function<bool(EntryView const &)>;

struct ScanOptions {
  /// Build a permutation group from each entry's rows before calling the
  /// predicate.
  bool build_groups = false;
  std::optional<DataFormat> format;
};

using Entry = EntryReader::Entry;

/// Matching entries in file order. Reads one entry at a time; parse errors
/// propagate as FormatError naming the entry and line.
std::vector<Entry> read_data(std::filesystem::path const &path, Predicate const &pred,
                             ScanOptions const &options = {});

/// Streaming form: `on_match` sees each matching entry, nothing is retained.
/// Returns the number of entries scanned.
std::size_t scan_data(std::filesystem::path const &path, Predicate const &pred,
                      std::function<void(Entry const &)> const &on_match,
                      ScanOptions const &options = {});

std::vector<Entry> find_group(std::filesystem::path const &path, std::uint64_t order,
                              std::uint64_t id);

/// Matches entries whose signature equals `sig` regardless of the text form
/// it was written in.
std::vector<Entry> find_signature(std::filesystem::path const &path, Signature const &sig);

std::vector<Entry> load_all(std::filesystem::path const &path);

/// Scan several files concurrently; results keyed by file name.
std::map<std::filesystem::path, std::vector<Entry>>
read_data_many(std::vector<std::filesystem::path> const &paths, Predicate const &pred,
               unsigned workers = 1, ScanOptions const &options = {});

} // namespace genvec
