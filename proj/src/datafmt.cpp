#include <algorithm>
#include <istream>
#include <sstream>

#include "genvec/datafmt.hpp"
#include "genvec/error.hpp"
#include "text_util.hpp"

namespace genvec {

namespace {

std::string index_list(std::vector<std::size_t> const &values)
{
  if (values.empty())
    return "[ ]";
  std::string out = "[ ";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += ", ";
    out += std::to_string(values[i]);
  }
  return out + " ]";
}

// Contents of "[ ... ]" as unsigned integers; `column` is the 1-based column
// of the opening bracket, for error messages.
std::vector<std::uint64_t> parse_bracket_numbers(std::string_view text, std::size_t column)
{
  std::string_view t = detail::trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw FormatError("expected a bracketed list", 0, column);

  std::vector<std::uint64_t> values;
  std::string_view body = detail::trim(t.substr(1, t.size() - 2));
  if (body.empty())
    return values;
  for (auto field : detail::split(body, ',')) {
    auto v = detail::parse_uint(detail::trim(field));
    if (!v)
      throw FormatError("expected an integer, got '" + std::string(detail::trim(field)) + "'",
                        0, column);
    values.push_back(*v);
  }
  return values;
}

bool is_marker(std::string_view line)
{
  line = detail::trim(line);
  if (line.size() < 2 || line.front() != '[' || line.back() != ']')
    return false;
  return detail::trim(line.substr(1, line.size() - 2)).empty();
}

Signature flat_signature(std::vector<std::uint64_t> const &values, std::size_t column)
{
  if (values.empty())
    throw FormatError("signature needs the orbit genus", 0, column);
  try {
    return Signature(static_cast<std::uint32_t>(values.front()),
                     std::vector<std::uint64_t>(values.begin() + 1, values.end()));
  } catch (DomainError const &e) {
    throw FormatError(e.what(), 0, column);
  }
}

void check_shape(VectorBlock const &block)
{
  auto const &sig = block.signature;
  if (block.class_tuple.size() != sig.branch_count())
    throw FormatError("class tuple has " + std::to_string(block.class_tuple.size()) +
                      " entries but the signature has " +
                      std::to_string(sig.branch_count()) + " periods");

  if (block.unramified) {
    if (sig.branch_count() != 0)
      throw FormatError("unramified marker on a signature with periods");
    if (!block.elements.empty() && block.elements.size() != 2 * sig.orbit_genus())
      throw FormatError("unramified entry has " + std::to_string(block.elements.size()) +
                        " rows, expected 0 or " + std::to_string(2 * sig.orbit_genus()));
  } else {
    if (sig.branch_count() == 0)
      throw FormatError("entry without periods needs the unramified marker \"[ ]\"");
    if (block.elements.size() != sig.vector_length())
      throw FormatError("entry has " + std::to_string(block.elements.size()) +
                        " permutations, signature " + sig.to_string() + " needs " +
                        std::to_string(sig.vector_length()));
  }
}

std::size_t token_count(std::string_view row)
{
  std::size_t n = 0;
  bool in_token = false;
  for (char c : row) {
    bool space = detail::is_space(c);
    if (!space && !in_token)
      ++n;
    in_token = !space;
  }
  return n;
}

} // anonymous namespace

GeneratingVector VectorBlock::to_vector() const
{
  std::size_t hyperbolic = 2 * signature.orbit_genus();
  if (unramified && elements.empty()) {
    if (hyperbolic != 0)
      throw DomainError("unramified entry carries no hyperbolic images");
  } else if (elements.size() != signature.vector_length()) {
    throw DomainError("entry does not fit signature " + signature.to_string());
  }

  GeneratingVector v;
  v.hyperbolic.assign(elements.begin(), elements.begin() + hyperbolic);
  v.branch.assign(elements.begin() + hyperbolic, elements.end());
  v.class_tuple = class_tuple;
  return v;
}

std::optional<DataFormat> detect_format(std::string_view text)
{
  for (auto line : detail::split(text, '\n')) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    if (line.starts_with("[*"))
      return DataFormat::line;
    if (line.front() == '(')
      return DataFormat::block;
    if (line.front() == '[')
      return DataFormat::bracket_row;
    return std::nullopt;
  }
  return std::nullopt;
}

GroupLabel parse_group_label(std::string_view text)
{
  text = detail::trim(text);
  auto parts = detail::split(text, ',');
  if (parts.size() == 2) {
    auto order = detail::parse_uint(detail::trim(parts[0]));
    auto id = detail::parse_uint(detail::trim(parts[1]));
    if (order && id)
      return GroupLabel::legacy(*order, *id);
  }
  if (text.empty())
    throw FormatError("empty group label");
  return GroupLabel{std::string(text), std::nullopt};
}

GroupSignatureLine parse_group_signature_line(std::string_view text)
{
  std::string_view line = text;
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.remove_suffix(1);

  std::size_t lead = 0;
  while (lead < line.size() && detail::is_space(line[lead]))
    ++lead;
  std::size_t tail = line.size();
  while (tail > lead && detail::is_space(line[tail - 1]))
    --tail;

  if (line.substr(lead, 2) != "[*")
    throw FormatError("expected '[*' at the start of the line", 0, lead + 1);
  if (tail < lead + 4 || line.substr(tail - 2, 2) != "*]")
    throw FormatError("unterminated entry: expected '*]' at the end of the line", 0,
                      tail + 1);

  GroupSignatureLine result;
  result.raw = std::string(line);

  std::size_t pos = lead + 2;
  std::size_t end = tail - 2;

  auto read_number = [&](char const *what) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos || comma >= end)
      throw FormatError(std::string("expected ',' after the ") + what, 0, pos + 1);
    auto v = detail::parse_uint(detail::trim(line.substr(pos, comma - pos)));
    if (!v)
      throw FormatError(std::string("bad ") + what, 0, pos + 1);
    pos = comma + 1;
    return *v;
  };

  result.genus = read_number("genus");
  result.order = read_number("group order");

  std::size_t open = line.find('[', pos);
  if (open == std::string_view::npos || open >= end)
    throw FormatError("expected '[' opening the signature", 0, pos + 1);
  std::size_t close = line.find(']', open);
  if (close == std::string_view::npos || close >= end)
    throw FormatError("unbalanced brackets in the signature", 0, open + 1);
  try {
    result.signature = parse_signature(line.substr(open, close - open + 1));
  } catch (FormatError const &e) {
    throw FormatError(e.what(), 0, open + 1);
  }
  pos = close + 1;

  std::size_t comma = line.find(',', pos);
  if (comma == std::string_view::npos || comma >= end)
    throw FormatError("expected ',' after the signature", 0, pos + 1);
  std::size_t paren = line.find('(', comma);
  if (paren == std::string_view::npos || paren >= end)
    throw FormatError("expected '(' opening the group identification", 0, comma + 1);
  std::size_t rparen = line.rfind(')', end);
  if (rparen == std::string_view::npos || rparen < paren)
    throw FormatError("unbalanced parentheses in the group identification", 0, paren + 1);
  if (!detail::trim(line.substr(rparen + 1, end - rparen - 1)).empty())
    throw FormatError("unexpected text after the group identification", 0, rparen + 2);

  result.group = parse_group_label(line.substr(paren + 1, rparen - paren - 1));
  return result;
}

std::string write_group_signature_line(GroupSignatureLine const &line)
{
  return "[*" + std::to_string(line.genus) + ", " + std::to_string(line.order) + ", " +
         line.signature.to_flat_string() + ", ( " + line.group.text + " ) *]";
}

std::vector<GroupSignatureLine> parse_group_signature_lines(std::string_view text)
{
  std::vector<GroupSignatureLine> result;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    try {
      result.push_back(parse_group_signature_line(line));
    } catch (FormatError const &e) {
      throw e.at_line(line_no);
    }
  }
  return result;
}

std::vector<VectorBlock> parse_vector_blocks(std::string_view text)
{
  std::istringstream in{std::string(text)};
  EntryReader reader(in, DataFormat::block);
  std::vector<VectorBlock> blocks;
  while (auto entry = reader.next())
    blocks.push_back(std::move(entry->block));
  return blocks;
}

std::string write_vector_blocks(std::span<const VectorBlock> blocks)
{
  std::string out;
  for (auto const &b : blocks) {
    out += "(" + b.group.text + ")\n";
    out += b.signature.to_spaced_flat_string() + "\n";
    out += index_list(b.class_tuple) + "\n";
    for (auto const &p : b.elements)
      out += p.image_row_string() + "\n";
    if (b.unramified)
      out += "[ ]\n";
    out += "*\n";
  }
  return out;
}

VectorBlock to_block(EpimorphismRecord const &record)
{
  VectorBlock b;
  b.group = record.group.label;
  b.signature = record.signature;
  b.class_tuple = record.con;
  b.elements = record.genimages.entries();
  b.unramified = record.signature.branch_count() == 0;
  return b;
}

std::string write_vector_blocks(std::span<const EpimorphismRecord> records)
{
  std::vector<VectorBlock> blocks;
  blocks.reserve(records.size());
  for (auto const &r : records)
    blocks.push_back(to_block(r));
  return write_vector_blocks(blocks);
}

VectorBlock parse_bracket_row(std::string_view line)
{
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.remove_suffix(1);

  // split into the four top-level [ ... ] fields
  std::vector<std::pair<std::size_t, std::string_view>> fields;
  int depth = 0, paren = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '(') {
      ++paren;
    } else if (c == ')') {
      if (--paren < 0)
        throw FormatError("unbalanced parentheses", 0, i + 1);
    } else if (c == '[') {
      if (depth++ == 0)
        start = i;
    } else if (c == ']') {
      if (depth == 0)
        throw FormatError("unbalanced brackets", 0, i + 1);
      if (--depth == 0)
        fields.emplace_back(start + 1, line.substr(start, i - start + 1));
    } else if (depth == 0 && !detail::is_space(c)) {
      throw FormatError(std::string("unexpected '") + c + "' between fields", 0, i + 1);
    }
  }
  if (paren != 0)
    throw FormatError("unbalanced parentheses", 0, line.size());
  if (depth != 0)
    throw FormatError("unbalanced brackets", 0, line.size());
  if (fields.size() != 4)
    throw FormatError("expected 4 bracketed fields, found " + std::to_string(fields.size()));

  VectorBlock block;

  auto inner = [](std::string_view f) { return detail::trim(f.substr(1, f.size() - 2)); };

  block.group = parse_group_label(inner(fields[0].second));
  block.signature = flat_signature(parse_bracket_numbers(fields[1].second, fields[1].first),
                                   fields[1].first);
  for (auto v : parse_bracket_numbers(fields[2].second, fields[2].first))
    block.class_tuple.push_back(static_cast<std::size_t>(v));

  // generating vector: cycle strings separated by commas outside parentheses
  std::string_view body = inner(fields[3].second);
  std::size_t body_col = fields[3].first + static_cast<std::size_t>(
                           body.data() - fields[3].second.data());
  std::vector<std::pair<std::size_t, std::string_view>> elems;
  if (!body.empty()) {
    int level = 0;
    std::size_t from = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || (body[i] == ',' && level == 0)) {
        elems.emplace_back(body_col + from, detail::trim(body.substr(from, i - from)));
        from = i + 1;
      } else if (body[i] == '(') {
        ++level;
      } else if (body[i] == ')') {
        --level;
      }
    }
  }

  Point degree = 1;
  for (auto const &[col, text] : elems) {
    try {
      degree = std::max(degree, max_point_in_cycle_string(text));
    } catch (FormatError const &e) {
      throw FormatError(e.what(), 0, col + e.column());
    }
  }
  for (auto const &[col, text] : elems) {
    try {
      block.elements.push_back(perm_from_cycle_string(text, degree));
    } catch (FormatError const &e) {
      throw FormatError(e.what(), 0, col + e.column());
    }
  }

  block.unramified = block.signature.branch_count() == 0;
  check_shape(block);
  return block;
}

std::vector<VectorBlock> parse_bracket_rows(std::string_view text)
{
  std::istringstream in{std::string(text)};
  EntryReader reader(in, DataFormat::bracket_row);
  std::vector<VectorBlock> blocks;
  while (auto entry = reader.next())
    blocks.push_back(std::move(entry->block));
  return blocks;
}

std::string write_bracket_row(VectorBlock const &block)
{
  std::string out = "[ ";
  if (block.group.legacy_id)
    out += std::to_string(block.group.legacy_id->order) + ", " +
           std::to_string(block.group.legacy_id->id);
  else
    out += block.group.text;
  out += " ]";

  std::vector<std::size_t> sig_values{block.signature.orbit_genus()};
  for (auto m : block.signature.periods())
    sig_values.push_back(m);
  out += index_list(sig_values);
  out += index_list(block.class_tuple);

  if (block.elements.empty()) {
    out += "[ ]";
  } else {
    out += "[ ";
    for (std::size_t i = 0; i < block.elements.size(); ++i) {
      if (i)
        out += ", ";
      out += block.elements[i].cycle_string(",");
    }
    out += " ]";
  }
  return out;
}

std::string write_bracket_rows(std::span<const VectorBlock> blocks)
{
  std::string out;
  for (auto const &b : blocks)
    out += write_bracket_row(b) + "\n";
  return out;
}

EntryReader::EntryReader(std::istream &in, std::optional<DataFormat> format)
  : _in(in), _format(format)
{}

bool EntryReader::read_line(std::string &line)
{
  if (_pending) {
    line = std::move(*_pending);
    _pending.reset();
    _line_no = _pending_line_no;
    return true;
  }
  if (!std::getline(_in, line))
    return false;
  ++_line_no;
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  return true;
}

std::optional<EntryReader::Entry> EntryReader::next()
{
  if (!_format || *_format == DataFormat::block) {
    // skip to the first significant line to settle the format
    std::string line;
    while (read_line(line)) {
      auto t = detail::trim(line);
      if (t.empty() || t.front() == '#' || t == "*")
        continue;
      if (!_format) {
        _format = detect_format(t);
        if (!_format)
          throw FormatError("unrecognized data file format", _line_no, 1);
      }
      _pending = std::move(line);
      _pending_line_no = _line_no;
      break;
    }
    if (!_pending)
      return std::nullopt;
    if (*_format == DataFormat::block)
      return next_block();
  }

  std::string line;
  while (read_line(line)) {
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#')
      continue;

    Entry entry;
    entry.index = ++_count;
    entry.first_line = _line_no;
    try {
      if (*_format == DataFormat::line) {
        auto parsed = parse_group_signature_line(line);
        entry.block.group = parsed.group;
        entry.block.signature = parsed.signature;
        entry.line = std::move(parsed);
      } else {
        entry.block = parse_bracket_row(line);
      }
    } catch (FormatError const &e) {
      throw FormatError("entry " + std::to_string(entry.index) + ": " + e.what(),
                        _line_no, e.column());
    }
    return entry;
  }
  return std::nullopt;
}

std::optional<EntryReader::Entry> EntryReader::next_block()
{
  Entry entry;
  entry.index = ++_count;

  auto fail = [&](std::string const &msg, std::size_t column = 0) -> FormatError {
    return FormatError("entry " + std::to_string(entry.index) + ": " + msg, _line_no, column);
  };

  std::string line;
  // header: label, signature, class tuple
  std::vector<std::string> header;
  while (header.size() < 3) {
    if (!read_line(line)) {
      if (header.empty())
        return std::nullopt;
      throw fail("truncated entry header");
    }
    auto t = detail::trim(line);
    if (t.empty() || (header.empty() && (t.front() == '#' || t == "*")))
      continue;
    if (header.empty())
      entry.first_line = _line_no;
    header.emplace_back(t);
  }

  auto const &label_line = header[0];
  if (label_line.front() != '(' || label_line.back() != ')')
    throw FormatError("entry " + std::to_string(entry.index) +
                        ": expected a parenthesized group identification",
                      entry.first_line, 1);
  try {
    entry.block.group = parse_group_label(
      std::string_view(label_line).substr(1, label_line.size() - 2));
    entry.block.signature = flat_signature(parse_bracket_numbers(header[1], 1), 1);
  } catch (FormatError const &e) {
    throw FormatError("entry " + std::to_string(entry.index) + ": " + e.what(),
                      entry.first_line + 1, e.column());
  }
  try {
    for (auto v : parse_bracket_numbers(header[2], 1))
      entry.block.class_tuple.push_back(static_cast<std::size_t>(v));
  } catch (FormatError const &e) {
    throw FormatError("entry " + std::to_string(entry.index) + ": " + e.what(),
                      entry.first_line + 2, e.column());
  }

  // rows up to a lone "*", the next entry, or end of input
  std::size_t degree = 0;
  while (read_line(line)) {
    auto t = detail::trim(line);
    if (t.empty())
      continue;
    if (t == "*")
      break;
    if (t.front() == '(' || t.front() == '#') {
      _pending = std::move(line);
      _pending_line_no = _line_no;
      break;
    }
    if (entry.block.unramified)
      throw fail("rows after the unramified marker");
    if (is_marker(t)) {
      entry.block.unramified = true;
      continue;
    }

    std::size_t n = token_count(t);
    if (degree == 0)
      degree = n;
    else if (n != degree)
      throw fail("row has " + std::to_string(n) + " points, earlier rows have " +
                 std::to_string(degree));
    try {
      entry.block.elements.push_back(perm_from_image_row(t, degree));
    } catch (FormatError const &e) {
      throw fail(e.what(), e.column());
    }
  }

  try {
    check_shape(entry.block);
  } catch (FormatError const &e) {
    throw FormatError("entry " + std::to_string(entry.index) + ": " + e.what(),
                      entry.first_line);
  }
  return entry;
}

} // namespace genvec
