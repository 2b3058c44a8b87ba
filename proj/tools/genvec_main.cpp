#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genvec/catalog.hpp"
#include "genvec/classify.hpp"
#include "genvec/datafmt.hpp"
#include "genvec/epimorph.hpp"
#include "genvec/error.hpp"
#include "genvec/searchkit.hpp"
#include "genvec/signature.hpp"

namespace {

using namespace genvec;

enum ExitCode { ok = 0, invalid = 1, usage = 2, budget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "block";
  std::string out;
  std::uint64_t search_budget = SearchOptions{}.candidate_budget;
  std::size_t element_budget = default_element_budget;
  unsigned workers = 1;

  SearchOptions search() const
  {
    SearchOptions o;
    o.candidate_budget = search_budget;
    o.element_budget = element_budget;
    o.workers = workers;
    return o;
  }
};

void add_common(CLI::App *cmd, Common &c, bool with_format)
{
  if (with_format)
    cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"block", "bracket-row", "line"}));
  cmd->add_option("--out", c.out, "Write data here instead of standard output");
  cmd->add_option("--search-budget", c.search_budget,
                  "Candidate tuples per class tuple before giving up")
    ->check(CLI::PositiveNumber);
  cmd->add_option("--element-budget", c.element_budget,
                  "Largest group order that may be enumerated")
    ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Worker threads for the search")
    ->check(CLI::PositiveNumber);
}

// Writes to --out when given, standard output otherwise.
void emit(Common const &c, std::string const &text)
{
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f)
    throw Error("cannot write '" + c.out + "'");
  f << text;
}

std::string genus_line(std::uint64_t genus, std::uint64_t order, Signature const &sig,
                       GroupLabel const &label)
{
  GroupSignatureLine line;
  line.genus = genus;
  line.order = order;
  line.signature = sig;
  line.group = label;
  return write_group_signature_line(line) + "\n";
}

std::string render(std::vector<EpimorphismRecord> const &records, std::string const &format,
                   std::uint64_t genus)
{
  if (format == "block")
    return write_vector_blocks(std::span<const EpimorphismRecord>(records));

  if (format == "bracket-row") {
    std::string out;
    for (auto const &r : records)
      out += write_bracket_row(to_block(r)) + "\n";
    return out;
  }

  // one line per (group, signature) pair
  std::string out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto const &r = records[i];
    if (i > 0 && records[i - 1].group.label == r.group.label &&
        records[i - 1].signature == r.signature)
      continue;
    out += genus_line(genus, r.group.group->order(), r.signature, r.group.label);
  }
  return out;
}

Signature signature_arg(std::string const &text)
{
  try {
    return parse_signature(text);
  } catch (FormatError const &e) {
    throw UsageError("bad signature '" + text + "': " + e.what());
  }
}

int cmd_signatures(std::uint64_t genus, std::optional<std::uint64_t> order)
{
  if (genus < 2)
    throw UsageError("--genus must be at least 2");

  auto print = [](std::optional<std::uint64_t> n, Signature const &s) {
    if (n)
      std::cout << *n << '\t';
    std::cout << s.to_string() << '\t' << s.to_flat_string() << '\n';
  };

  if (order) {
    for (auto const &s : admissible_signatures(genus, *order))
      print(std::nullopt, s);
  } else {
    for (std::uint64_t n = 1; n <= hurwitz_bound(genus); ++n) {
      for (auto const &s : admissible_signatures(genus, n))
        print(n, s);
    }
  }
  return ok;
}

int cmd_genvec(std::string const &group_text, std::string const &sig_text, Common const &c)
{
  GroupSpec spec;
  try {
    spec = parse_group_spec(group_text);
  } catch (FormatError const &e) {
    throw UsageError(e.what());
  }
  LabeledGroup group = make_labeled(spec);
  Signature sig = signature_arg(sig_text);

  auto records = representatives_epimorphisms(group, sig, c.search());
  if (records.empty())
    std::cerr << "no epimorphisms from " << sig.to_string() << " onto " << group.label.text
              << '\n';

  Rational genus = rh_genus(group.group->order(), sig);
  if (c.format == "line" && genus.denominator() != 1)
    throw UsageError("signature " + sig.to_string() + " gives no integral genus for order " +
                     std::to_string(group.group->order()));

  emit(c, render(records, c.format, static_cast<std::uint64_t>(genus.numerator())));
  return ok;
}

int cmd_classify(std::uint64_t genus, std::optional<std::uint64_t> max_order, bool large_only,
                 std::vector<std::string> const &family_names, Common const &c)
{
  if (genus < 2)
    throw UsageError("--genus must be at least 2");

  ClassifyOptions options;
  options.genus = genus;
  options.max_order = max_order;
  options.large_only = large_only;
  options.search = c.search();
  for (auto const &name : family_names) {
    auto f = family_from_name(name);
    if (!f)
      throw UsageError("unknown family '" + name + "'");
    options.families.push_back(*f);
  }

  auto result = classify(options);

  std::ostringstream header;
  header << "# genus " << genus << ": sweep of the built-in group catalog (";
  if (family_names.empty()) {
    header << "all families";
  } else {
    for (std::size_t i = 0; i < family_names.size(); ++i)
      header << (i ? "," : "") << family_names[i];
  }
  header << "), not of every group of each order\n";
  header << "# " << result.groups_examined << " groups, " << result.signature_pairs
         << " group/signature pairs, " << result.records.size() << " records\n";

  emit(c, header.str() + render(result.records, c.format, genus));
  return ok;
}

std::string render_entry(Entry const &e, DataFormat format)
{
  switch (format) {
  case DataFormat::line:
    return e.line->raw + "\n";
  case DataFormat::bracket_row:
    return write_bracket_row(e.block) + "\n";
  case DataFormat::block:
    return write_vector_blocks(std::span<const VectorBlock>(&e.block, 1));
  }
  return {};
}

std::optional<DataFormat> file_format(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (auto f = detect_format(line))
      return f;
  }
  return std::nullopt;
}

void require_file(std::string const &path)
{
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error("I/O error: cannot read '" + path + "'");
}

int cmd_search(std::string const &path, std::optional<std::uint64_t> order,
               std::optional<std::uint64_t> id, std::optional<std::string> sig_text,
               bool build_groups, Common const &c)
{
  require_file(path);
  if (id && !order)
    throw UsageError("--id needs --order");

  std::optional<Signature> sig;
  if (sig_text)
    sig = signature_arg(*sig_text);

  Predicate pred = [&](EntryView const &e) {
    if (order) {
      if (!e.label.legacy_id || e.label.legacy_id->order != *order)
        return false;
      if (id && e.label.legacy_id->id != *id)
        return false;
    }
    if (sig && e.signature != *sig)
      return false;
    return true;
  };

  auto format = file_format(path);
  ScanOptions options;
  options.build_groups = build_groups;
  options.format = format;

  std::string out;
  std::size_t matched = 0;
  std::size_t scanned = scan_data(path, pred, [&](Entry const &e) {
    ++matched;
    out += render_entry(e, *format);
  }, options);

  emit(c, out);
  std::cerr << matched << " of " << scanned << " entries matched\n";
  return ok;
}

int cmd_verify(std::string const &path)
{
  require_file(path);

  std::ifstream in(path, std::ios::binary);
  EntryReader reader(in);
  std::size_t total = 0, valid = 0;

  try {
    while (auto entry = reader.next()) {
      ++total;
      bool good = false;
      std::string why;

      if (entry->line) {
        good = rh_genus(entry->line->order, entry->block.signature) ==
               Rational(static_cast<std::int64_t>(entry->line->genus));
        if (!good)
          why = "order and signature do not give the stated genus";
      } else if (entry->block.elements.empty()) {
        good = entry->block.unramified && entry->block.signature.orbit_genus() == 0;
        if (!good)
          why = "no permutations";
      } else {
        auto const &b = entry->block;
        PermGroup group = subgroup_from_elements(b.elements, b.degree());
        good = is_generating_vector(group, b.signature, b.to_vector());
        if (!good)
          why = "not a generating vector for " + b.signature.to_string();
      }

      if (good)
        ++valid;
      else
        std::cerr << "entry " << entry->index << " (line " << entry->first_line
                  << "): " << why << '\n';
    }
  } catch (FormatError const &e) {
    ++total;
    std::cerr << e.what() << '\n';
  }

  std::cout << valid << "/" << total << " valid\n";
  return valid == total ? ok : invalid;
}

} // anonymous namespace

int main(int argc, char **argv)
{
  CLI::App app{"Classify finite group actions on compact Riemann surfaces"};
  app.require_subcommand(1);

  std::uint64_t genus = 0;
  std::optional<std::uint64_t> order, max_order, id;
  std::string group_text, sig_text, file;
  std::optional<std::string> sig_filter;
  std::vector<std::string> families;
  bool large_only = false, build_groups = false;
  Common common;

  auto *sigs = app.add_subcommand("signatures", "List admissible signatures");
  sigs->add_option("--genus", genus, "Surface genus (>= 2)")->required();
  sigs->add_option("--order", order, "Group order; all orders up to 84(g-1) if omitted");

  auto *genvec_cmd = app.add_subcommand("genvec", "Generating vectors for a group and signature");
  genvec_cmd->add_option("--group", group_text,
                         "Group spec: cyclic:6, abelian:2,4, dihedral:5, symmetric:4, "
                         "alternating:5, psl2:29, fixture:<name>, file:<path>")
    ->required();
  genvec_cmd->add_option("--signature", sig_text, "\"[0; 2, 3, 7]\" or \"[0,2,3,7]\"")
    ->required();
  add_common(genvec_cmd, common, true);

  auto *classify_cmd = app.add_subcommand("classify", "Sweep the group catalog for one genus");
  classify_cmd->add_option("--genus", genus, "Surface genus (>= 2)")->required();
  classify_cmd->add_option("--max-order", max_order, "Largest group order to consider");
  classify_cmd->add_flag("--large-only", large_only, "Only groups of order > 4(g-1)");
  classify_cmd->add_option("--families", families, "Comma-separated catalog families")
    ->delimiter(',');
  add_common(classify_cmd, common, true);

  auto *search_cmd = app.add_subcommand("search", "Filter the entries of a data file");
  search_cmd->add_option("--file", file, "Data file")->required();
  search_cmd->add_option("--order", order, "Legacy group order");
  search_cmd->add_option("--id", id, "Legacy group id");
  search_cmd->add_option("--signature", sig_filter, "Signature in either text form");
  search_cmd->add_flag("--build-groups", build_groups,
                       "Build each entry's permutation group before filtering");
  search_cmd->add_option("--out", common.out, "Write matches here");

  auto *verify_cmd = app.add_subcommand("verify", "Check every vector in a data file");
  verify_cmd->add_option("file", file, "Data file")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*sigs)
      return cmd_signatures(genus, order);
    if (*genvec_cmd)
      return cmd_genvec(group_text, sig_text, common);
    if (*classify_cmd)
      return cmd_classify(genus, max_order, large_only, families, common);
    if (*search_cmd)
      return cmd_search(file, order, id, sig_filter, build_groups, common);
    if (*verify_cmd)
      return cmd_verify(file);
  } catch (UsageError const &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (ResourceError const &e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (DomainError const &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (UnsupportedError const &e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return usage;
  } catch (FormatError const &e) {
    std::cerr << "format error: " << e.what() << '\n';
    return usage;
  } catch (std::exception const &e) {
    std::cerr << e.what() << '\n';
    return usage;
  }
  return usage;
}
