#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "genvec/catalog.hpp"
#include "genvec/datafmt.hpp"
#include "genvec/epimorph.hpp"
#include "genvec/error.hpp"
#include "support.hpp"

using namespace genvec;

namespace {

std::string const genus7_line = "[*7, 504, [0,2,3,7], ( 504,156 ) *]";

Signature sig(std::uint32_t g0, std::vector<std::uint64_t> periods)
{
  return Signature(g0, std::move(periods));
}

} // namespace

TEST_CASE("group signature line")
{
  auto line = parse_group_signature_line(genus7_line);
  CHECK(line.genus == 7);
  CHECK(line.order == 504);
  CHECK(line.signature == sig(0, {2, 3, 7}));
  REQUIRE(line.group.legacy_id);
  CHECK(line.group.legacy_id->order == 504);
  CHECK(line.group.legacy_id->id == 156);
  CHECK(line.raw == genus7_line);
  CHECK(write_group_signature_line(line) == genus7_line);

  CHECK_THROWS_AS(parse_group_signature_line("[*7, 504, [0,2,3,7], ( 504,156 )"), FormatError);
  CHECK_THROWS_AS(parse_group_signature_line("[*x, 504, [0,2,3,7], ( 504,156 ) *]"), FormatError);
}

TEST_CASE("shipped line fixture")
{
  auto lines = parse_group_signature_lines(oracle::slurp(oracle::fixture_path(
    "genus7_groupsignaturedata.txt")));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].raw == genus7_line);
}

TEST_CASE("genus-7 block listing")
{
  auto text = oracle::slurp(oracle::fixture_path("genus7_blocks.txt"));
  auto blocks = parse_vector_blocks(text);
  REQUIRE(blocks.size() == 3);
  std::vector<std::vector<std::size_t>> tuples{{2, 3, 4}, {2, 3, 5}, {2, 3, 6}};
  for (std::size_t i = 0; i < 3; ++i) {
    auto const &b = blocks[i];
    CHECK(b.group == GroupLabel::legacy(504, 156));
    CHECK(b.signature == sig(0, {2, 3, 7}));
    CHECK(b.class_tuple == tuples[i]);
    CHECK(b.degree() == 9);
    CHECK_FALSE(b.unramified);
    auto g = subgroup_from_elements(b.elements, b.degree());
    CHECK(g.order() == 504);
    CHECK(is_generating_vector(g, b.signature, b.to_vector()));
  }
  CHECK(blocks[0].elements[0].cycle_string(" ") == "(2 6)(3 4)(5 9)(7 8)");
  CHECK(write_vector_blocks(blocks) == text);
}

TEST_CASE("bracket rows")
{
  auto text = oracle::slurp(oracle::fixture_path("genus7_bracket_rows.txt"));
  auto rows = parse_bracket_rows(text);
  REQUIRE(rows.size() == 3);
  for (auto const &b : rows) {
    CHECK(b.group == GroupLabel::legacy(504, 156));
    CHECK(b.signature == sig(0, {2, 3, 7}));
    REQUIRE(b.elements.size() == 3);
    CHECK(element_order(b.elements[0]) == 2);
    CHECK(element_order(b.elements[1]) == 3);
    CHECK(element_order(b.elements[2]) == 7);
    auto g = subgroup_from_elements(b.elements, b.degree());
    CHECK(g.order() == 504);
    CHECK(is_generating_vector(g, b.signature, b.to_vector()));
  }
  CHECK(rows[0].class_tuple == std::vector<std::size_t>{5, 6, 2});
  CHECK(write_bracket_rows(rows) == text);

  // the row's cycles agree with the shipped fixture group's image rows
  auto fixture_group = build_group(fixture("psl(2,8)-paper"));
  CHECK(fixture_group.contains(rows[0].elements[0]));
  CHECK(perm_from_image_row("1 3 2 6 8 4 9 5 7", 9) == rows[0].elements[0]);
}

TEST_CASE("block and bracket encodings describe the same group")
{
  auto blocks = parse_vector_blocks(oracle::slurp(oracle::fixture_path("genus7_blocks.txt")));
  auto rows = parse_bracket_rows(oracle::slurp(oracle::fixture_path("genus7_bracket_rows.txt")));
  // both encodings live in the same degree-9 action
  auto from_blocks = subgroup_from_elements(blocks[0].elements, 9);
  auto from_rows = subgroup_from_elements(rows[0].elements, 9);
  CHECK(from_blocks.order() == 504);
  CHECK(from_rows.order() == 504);

  // a block's vector written as a bracket row and read back is unchanged
  for (auto const &b : blocks) {
    auto again = parse_bracket_row(write_bracket_row(b));
    CHECK(again.elements == b.elements);
    CHECK(again == b);
  }
}

TEST_CASE("format detection")
{
  CHECK(detect_format(genus7_line) == DataFormat::line);
  CHECK(detect_format("(504,156)") == DataFormat::block);
  CHECK(detect_format("[ 504, 156 ][ 0, 2, 3, 7 ][ 5, 6, 2 ][ (2,3) ]") ==
        DataFormat::bracket_row);
  CHECK_FALSE(detect_format(""));
}

TEST_CASE("block format errors")
{
  CHECK_THROWS_AS(parse_vector_blocks("(2,1)\n[ 0, 2, 3, 7 ]\n[ 2, 3 ]\n1 2\n*\n"), FormatError);
  // row count does not match the signature
  CHECK_THROWS_AS(parse_vector_blocks("(2,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n*\n"), FormatError);
  // ragged rows
  CHECK_THROWS_AS(parse_vector_blocks("(2,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n2 1 3\n*\n"),
                  FormatError);
  try {
    parse_vector_blocks("(2,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n2 2\n*\n");
    FAIL("expected a format error");
  } catch (FormatError const &e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("trailing star is optional")
{
  auto with = parse_vector_blocks("(2,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n2 1\n*\n");
  auto without = parse_vector_blocks("(2,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n2 1\n");
  CHECK(with == without);
  CHECK(write_vector_blocks(without) == "(2,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n2 1\n*\n");
}

TEST_CASE("unramified marker")
{
  std::string text = "(cyclic:2)\n[ 2 ]\n[ ]\n2 1\n1 2\n2 1\n1 2\n[ ]\n*\n";
  auto blocks = parse_vector_blocks(text);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].unramified);
  CHECK(blocks[0].signature == sig(2, {}));
  CHECK(blocks[0].elements.size() == 4);
  CHECK(write_vector_blocks(blocks) == text);

  // missing marker for r = 0
  CHECK_THROWS_AS(parse_vector_blocks("(cyclic:2)\n[ 2 ]\n[ ]\n2 1\n1 2\n2 1\n1 2\n*\n"),
                  FormatError);
}

TEST_CASE("records written as blocks")
{
  auto g = make_labeled(fixture("psl(2,8)-paper"));
  auto records = representatives_epimorphisms(g, sig(0, {2, 3, 7}));
  auto text = write_vector_blocks(records);
  auto blocks = parse_vector_blocks(text);
  REQUIRE(blocks.size() == records.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    CHECK(blocks[i] == to_block(records[i]));
    CHECK(blocks[i].group.text == "fixture:psl(2,8)-paper");
  }
}

TEST_CASE("entry reader streams every format")
{
  std::istringstream blocks(oracle::slurp(oracle::fixture_path("genus7_blocks.txt")));
  EntryReader reader(blocks);
  std::size_t n = 0;
  while (auto e = reader.next()) {
    ++n;
    CHECK(e->index == n);
    CHECK(e->first_line == 1 + 7 * (n - 1));
  }
  CHECK(n == 3);
  CHECK(reader.format() == DataFormat::block);

  std::istringstream lines("# comment\n" + genus7_line + "\n" + genus7_line + "\n");
  EntryReader line_reader(lines);
  auto first = line_reader.next();
  REQUIRE(first);
  REQUIRE(first->line);
  CHECK(first->first_line == 2);
  CHECK(first->block.signature == sig(0, {2, 3, 7}));
  CHECK(line_reader.next());
  CHECK_FALSE(line_reader.next());

  std::istringstream empty("");
  CHECK_FALSE(EntryReader(empty).next());
}

TEST_CASE("entry reader names the failing entry")
{
  std::istringstream bad(oracle::slurp(oracle::fixture_path("genus7_blocks.txt")) +
                         "(1,1)\n[ 0, 2, 2 ]\n[ 2, 2 ]\n2 1\n2 2\n*\n");
  EntryReader reader(bad);
  for (int i = 0; i < 3; ++i)
    CHECK(reader.next());
  try {
    reader.next();
    FAIL("expected a format error");
  } catch (FormatError const &e) {
    CHECK(std::string(e.what()).find("entry 4") != std::string::npos);
    CHECK(e.line() == 26);
  }
}

TEST_CASE("property: round trips on random record sets")
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<VectorBlock> set;
    std::size_t count = 1 + rng() % 6;
    for (std::size_t i = 0; i < count; ++i)
      set.push_back(oracle::random_block(rng));

    auto blocks_text = write_vector_blocks(set);
    REQUIRE(parse_vector_blocks(blocks_text) == set);
    CHECK(write_vector_blocks(parse_vector_blocks(blocks_text)) == blocks_text);

    auto rows_text = write_bracket_rows(set);
    REQUIRE(parse_bracket_rows(rows_text) == set);

    for (auto const &b : set) {
      GroupSignatureLine line;
      line.genus = 2 + rng() % 100;
      line.order = 1 + rng() % 100000;
      line.signature = b.signature;
      line.group = b.group;
      line.raw = write_group_signature_line(line);
      REQUIRE(parse_group_signature_line(line.raw) == line);
    }
  }
}
