#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genvec/catalog.hpp"
#include "genvec/epimorph.hpp"
#include "genvec/signature.hpp"

namespace genvec {

/// One line of a group/signature listing:
///   [*7, 504, [0,2,3,7], ( 504,156 ) *]
struct GroupSignatureLine {
  std::uint64_t genus = 0;
  std::uint64_t order = 0;
  Signature signature;
  GroupLabel group;
  std::string raw; // the line as read, for byte-exact round trips

  friend bool operator==(GroupSignatureLine const &, GroupSignatureLine const &) = default;
};

/**
 * One generating vector entry as stored in a data file. Used for both the
 * star-separated block format and the bracket-row format.
 *
 * `elements` holds the 2*g0 hyperbolic images followed by the branch images.
 * `unramified` marks an entry whose branch rows were replaced by "[ ]".
 * Class indices are kept exactly as written; they refer to whatever class
 * ordering produced the file.
 */
struct VectorBlock {
  GroupLabel group;
  Signature signature;
  std::vector<std::size_t> class_tuple;
  std::vector<Permutation> elements;
  bool unramified = false;

  friend bool operator==(VectorBlock const &, VectorBlock const &) = default;

  std::size_t degree() const { return elements.empty() ? 0 : elements.front().degree(); }

  /// Split `elements` into a generating vector for `signature`. Throws
  /// DomainError if the element count does not fit the signature.
  GeneratingVector to_vector() const;
};

enum class DataFormat { block, bracket_row, line };

/// Guess the format of a data file from its first significant line.
std::optional<DataFormat> detect_format(std::string_view text);

GroupSignatureLine parse_group_signature_line(std::string_view text);
std::string write_group_signature_line(GroupSignatureLine const &line);

/// Parse "( 504,156 )" contents: a legacy pair or a free-form label.
GroupLabel parse_group_label(std::string_view text);

std::vector<VectorBlock> parse_vector_blocks(std::string_view text);
std::string write_vector_blocks(std::span<const VectorBlock> blocks);
std::string write_vector_blocks(std::span<const EpimorphismRecord> records);

/// [ 504, 156 ][ 0, 2, 3, 7 ][ 5, 6, 2 ][ (2,3)(4,6)(5,8)(7,9), ... ]
VectorBlock parse_bracket_row(std::string_view line);
std::vector<VectorBlock> parse_bracket_rows(std::string_view text);
std::string write_bracket_row(VectorBlock const &block);
std::string write_bracket_rows(std::span<const VectorBlock> blocks);

std::vector<GroupSignatureLine> parse_group_signature_lines(std::string_view text);

VectorBlock to_block(EpimorphismRecord const &record);

/**
 * Streaming reader for data files: yields one entry at a time, holding only
 * the current entry in memory. Line-format entries come back with an empty
 * `elements` list and their line kept in `line`.
 */
class EntryReader {
public:
  struct Entry {
    std::size_t index = 0;      // 1-based position in the file
    std::size_t first_line = 0; // 1-based line where the entry starts
    VectorBlock block;
    std::optional<GroupSignatureLine> line;
  };

  /// `format` may be left empty to detect it from the first significant line.
  explicit EntryReader(std::istream &in, std::optional<DataFormat> format = std::nullopt);

  std::optional<Entry> next();

  std::optional<DataFormat> format() const noexcept { return _format; }

private:
  bool read_line(std::string &line);
  std::optional<Entry> next_block();

  std::istream &_in;
  std::optional<DataFormat> _format;
  std::optional<std::string> _pending;
  std::size_t _line_no = 0;
  std::size_t _pending_line_no = 0;
  std::size_t _count = 0;
};

} // namespace genvec
