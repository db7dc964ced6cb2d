#include "grpd/catalog.hpp"

#include <fstream>
#include <sstream>

#include "grpd/errors.hpp"
#include "grpd/nonabelian_h1.hpp"

namespace grpd {

// Mirrors data/poincare_catalog.txt so the library works without a file at
// hand; the acceptance suite keeps the two in sync.
const char* PoincareCatalog::builtin_text() {
  return
      "# Poincare series catalog: one entry per line,\n"
      "#   label | num: c0 c1 ... | den: c0 c1 ...\n"
      "# Coefficient tokens are integers or p/q fractions. The label must be\n"
      "# a group spec the CLI grammar accepts; matching is up to isomorphism.\n"
      "C1 | num: 1 | den: 1\n"
      "C2 | num: 1 | den: 1 -1\n"
      "C2xC2 | num: 1 | den: 1 -2 1\n"
      "D8 | num: 1 | den: 1 -2 1\n"
      "S4 | num: 1 0 1 | den: 1 -1 0 -1 1\n";
}

PoincareCatalog PoincareCatalog::builtin() { return parse(builtin_text()); }

namespace {

std::vector<Rat> parse_coeff_list(const std::string& text,
                                  const std::string& prefix, int line_no) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  if (head != prefix)
    throw ParseError("catalog line " + std::to_string(line_no) +
                     ": expected '" + prefix + "' section");
  std::vector<Rat> coeffs;
  std::string tok;
  while (in >> tok) coeffs.push_back(parse_rat(tok));
  if (coeffs.empty())
    throw ParseError("catalog line " + std::to_string(line_no) +
                     ": empty coefficient list");
  return coeffs;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PoincareCatalog PoincareCatalog::parse(const std::string& text) {
  PoincareCatalog cat;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
      if (c == '|') {
        parts.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(trim(cur));
    if (parts.size() != 3)
      throw ParseError("catalog line " + std::to_string(line_no) +
                       ": expected 'label | num: ... | den: ...'");
    Entry e;
    e.label = parts[0];
    Polynomial num(parse_coeff_list(parts[1], "num:", line_no));
    Polynomial den(parse_coeff_list(parts[2], "den:", line_no));
    if (den.is_zero())
      throw ParseError("catalog line " + std::to_string(line_no) +
                       ": zero denominator");
    e.series = RationalFunction(std::move(num), std::move(den));
    cat.entries_.push_back(std::move(e));
  }
  cat.key_groups_.resize(cat.entries_.size());
  return cat;
}

PoincareCatalog PoincareCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void PoincareCatalog::merge(const PoincareCatalog& other) {
  // Later entries shadow earlier ones with the same label.
  for (const auto& e : other.entries_) {
    bool replaced = false;
    for (auto& mine : entries_)
      if (mine.label == e.label) {
        mine.series = e.series;
        replaced = true;
        break;
      }
    if (!replaced) entries_.push_back(e);
  }
  key_groups_.clear();
  key_groups_.resize(entries_.size());
}

const RationalFunction& PoincareCatalog::lookup(const FiniteGroup& g) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!key_groups_[i])
      key_groups_[i] = std::make_unique<FiniteGroup>(
          make_group(entries_[i].label));
    if (key_groups_[i]->order() != g.order()) continue;
    if (is_isomorphic(g, *key_groups_[i])) return entries_[i].series;
  }
  throw NotInCatalogError("group '" + g.label() + "' of order " +
                          std::to_string(g.order()) + " is not in the catalog");
}

H1RatioSum sum_h1_ratios(const FiniteGroup& g, const GroupInvolution& s,
                         const PoincareCatalog& catalog) {
  const RationalFunction& pg = catalog.lookup(g);
  H1RatioSum out;
  for (int gamma : h1(g, s).representatives) {
    Subgroup sub = fixed_subgroup(g, s, gamma);
    const RationalFunction* ps = nullptr;
    try {
      ps = &catalog.lookup(sub.group);
    } catch (const NotInCatalogError&) {
      throw NotInCatalogError("fixed subgroup '" + sub.group.label() +
                              "' of order " +
                              std::to_string(sub.group.order()) +
                              " is not in the catalog");
    }
    H1RatioSum::Row row;
    row.representative = gamma;
    row.subgroup_label = sub.group.label();
    row.subgroup_order = sub.group.order();
    // A pole here would contradict the catalog data (subgroup series can
    // shrink the pole order, never exceed it); surface it loudly.
    row.ratio = evaluate_at_one(*ps / pg);
    out.total += row.ratio;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace grpd
