#include "piforge/catalog.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "piforge/errors.hpp"

namespace piforge {

namespace {

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
  std::size_t value_column;  // 1-based column of the first value character
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

// Re-anchors a parse error from a value to the catalog line.
template <typename F>
auto at_line(const Line& l, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(std::string("field '") + l.key + "': " + e.what(), l.number, l.value_column + e.column() - 1);
  } catch (const Error& e) {
    throw ParseError(std::string("field '") + l.key + "': " + e.what(), l.number, l.value_column);
  }
}

bool parse_bool(const Line& l) {
  if (l.value == "true") return true;
  if (l.value == "false") return false;
  throw ParseError("expected true or false", l.number, l.value_column);
}

BigInt parse_int(const Line& l) {
  return at_line(l, [&] {
    Rational r = Rational::parse(l.value);
    if (!r.is_integer()) throw ParseError("expected an integer", 1, 1);
    return r.numerator();
  });
}

using Group = std::vector<Line>;

const std::set<std::string> kTransforms = {"prop1", "prop4+", "prop4-", "prop5", "prop7", "hat"};
const std::set<std::string> kStatuses = {"ok", "typo", "suspect", "false"};

Formula build_formula(const Group& g) {
  Formula f;
  f.id = g.front().value;
  std::optional<Family> kind;
  std::optional<Rational> s;
  std::optional<BigInt> M;
  std::optional<bool> convergent;
  std::set<std::string> seen;
  bool has_arg = false, has_lin0 = false, has_lin1 = false;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Line& l = g[i];
    if (l.key.rfind("printed.", 0) != 0 && !seen.insert(l.key).second)
      throw ParseError("repeated field '" + l.key + "'", l.number, 1);
    if (l.key == "provenance") f.provenance = l.value;
    else if (l.key == "family") kind = at_line(l, [&] { return family_from_name(l.value); });
    else if (l.key == "s") s = at_line(l, [&] { return Rational::parse(l.value); });
    else if (l.key == "M") M = parse_int(l);
    else if (l.key == "arg") { f.arg = at_line(l, [&] { return SurdExpr::parse(l.value); }); has_arg = true; }
    else if (l.key == "lin0") { f.lin0 = at_line(l, [&] { return SurdExpr::parse(l.value); }); has_lin0 = true; }
    else if (l.key == "lin1") { f.lin1 = at_line(l, [&] { return SurdExpr::parse(l.value); }); has_lin1 = true; }
    else if (l.key == "rhs") f.rhs = at_line(l, [&] { return SurdExpr::parse(l.value); });
    else if (l.key == "tau0_im_sq") {
      f.tau0_im_sq = at_line(l, [&] { return Rational::parse(l.value); });
      if (f.tau0_im_sq->sign() <= 0) throw ParseError("tau0_im_sq must be positive", l.number, l.value_column);
    } else if (l.key == "convergent") convergent = parse_bool(l);
    else if (l.key == "status") {
      if (!kStatuses.count(l.value)) throw ParseError("unknown status '" + l.value + "'", l.number, l.value_column);
      f.status = l.value;
    } else if (l.key == "derived_from") f.derived_from = l.value;
    else if (l.key == "transform") {
      if (!kTransforms.count(l.value))
        throw ParseError("unknown transform '" + l.value + "'", l.number, l.value_column);
      f.transform = l.value;
    } else if (l.key.rfind("printed.", 0) == 0) {
      if (!f.printed.emplace(l.key.substr(8), l.value).second)
        throw ParseError("repeated field '" + l.key + "'", l.number, 1);
    } else if (l.key == "notes") f.notes = l.value;
    else throw ParseError("unknown formula field '" + l.key + "'", l.number, 1);
  }
  const std::size_t head = g.front().number;
  if (!kind || !s || !has_arg || !has_lin0 || !has_lin1 || !convergent)
    throw ParseError("formula '" + f.id + "' needs family, s, arg, lin0, lin1 and convergent", head, 1);
  if (f.derived_from.empty() != f.transform.empty())
    throw ParseError("derived_from and transform go together", head, 1);
  const bool has_m = *kind == Family::HYP || *kind == Family::PROP1;
  if (has_m != M.has_value())
    throw ParseError(std::string("M is ") + (has_m ? "required" : "not allowed") + " for " + family_name(*kind), head,
                     1);
  try {
    f.family = make_spec(*kind, *s, M.value_or(1));
  } catch (const Error& e) {
    throw ParseError(e.what(), head, 1);
  }
  if (f.rhs.is_zero()) throw ParseError("rhs must be nonzero", head, 1);
  f.convergent = is_convergent(f.family, f.arg);
  if (f.convergent != *convergent)
    throw ParseError("convergent flag disagrees with the computed value for '" + f.id + "'", head, 1);
  return f;
}

CongruenceClaim build_claim(const Group& g) {
  CongruenceClaim c;
  c.id = g.front().value;
  std::optional<Rational> s;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Line& l = g[i];
    if (!seen.insert(l.key).second) throw ParseError("repeated field '" + l.key + "'", l.number, 1);
    if (l.key == "s") s = at_line(l, [&] { return Rational::parse(l.value); });
    else if (l.key == "lin0") c.lin0 = parse_int(l);
    else if (l.key == "lin1") c.lin1 = parse_int(l);
    else if (l.key == "base") c.base = parse_int(l);
    else if (l.key == "rhs_mult") c.rhs_mult = parse_int(l);
    else if (l.key == "character_disc") c.character_disc = parse_int(l);
    else if (l.key == "linked") c.linked = l.value;
    else if (l.key == "notes") c.notes = l.value;
    else throw ParseError("unknown claim field '" + l.key + "'", l.number, 1);
  }
  for (const char* k : {"s", "lin0", "lin1", "base", "rhs_mult"})
    if (!seen.count(k)) throw ParseError("claim '" + c.id + "' lacks '" + k + "'", g.front().number, 1);
  try {
    c.family = make_spec(Family::HYP, *s, standard_M(*s));
  } catch (const Error& e) {
    throw ParseError(e.what(), g.front().number, 1);
  }
  if (c.base == 0) throw ParseError("base must be nonzero", g.front().number, 1);
  return c;
}

IdentityDescriptor build_identity(const Group& g) {
  IdentityDescriptor d;
  d.name = g.front().value;
  bool has_s = false, has_order = false;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Line& l = g[i];
    if (l.key == "s" && !has_s) {
      has_s = true;
      std::istringstream in(l.value);
      std::string tok;
      while (in >> tok) d.s.push_back(at_line(l, [&] { return Rational::parse(tok); }));
    } else if (l.key == "order" && !has_order) {
      has_order = true;
      const BigInt n = parse_int(l);
      if (n <= 0 || !n.fits_ulong_p()) throw ParseError("order must be positive", l.number, l.value_column);
      d.order = n.get_ui();
    } else {
      throw ParseError("unexpected identity field '" + l.key + "'", l.number, 1);
    }
  }
  if (!has_s || !has_order || d.s.empty())
    throw ParseError("identity '" + d.name + "' needs s and order", g.front().number, 1);
  return d;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

const Formula* Catalog::find(std::string_view id) const {
  for (const auto& f : formulas)
    if (f.id == id) return &f;
  return nullptr;
}

const Formula& Catalog::at(std::string_view id) const {
  if (const Formula* f = find(id)) return *f;
  throw Error(Errc::UnknownId, "no formula '" + std::string(id) + "'");
}

const CongruenceClaim& Catalog::claim(std::string_view id) const {
  for (const auto& c : claims)
    if (c.id == id) return c;
  throw Error(Errc::UnknownId, "no claim '" + std::string(id) + "'");
}

Catalog parse_catalog(std::string_view text) {
  Catalog cat;
  std::vector<std::pair<std::string, Group>> groups;
  bool have_version = false;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t colon = raw.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", number, 1);
    Line l;
    l.number = number;
    l.key = trim(raw.substr(0, colon));
    std::size_t vstart = colon + 1;
    while (vstart < raw.size() && raw[vstart] == ' ') ++vstart;
    l.value = trim(raw.substr(colon + 1));
    l.value_column = vstart + 1;
    if (l.key == "version") {
      if (have_version || !groups.empty()) throw ParseError("version must come first, once", number, 1);
      have_version = true;
      cat.version = l.value;
    } else if (l.key == "formula" || l.key == "claim" || l.key == "identity") {
      if (l.value.empty()) throw ParseError("empty " + l.key + " id", number, l.value_column);
      groups.push_back({l.key, Group{l}});
    } else {
      if (groups.empty()) throw ParseError("field '" + l.key + "' outside a record", number, 1);
      groups.back().second.push_back(l);
    }
    if (end == text.size()) break;
  }

  std::set<std::string> ids;
  for (const auto& [kind, g] : groups) {
    const std::string key = kind + ":" + g.front().value;
    if (!ids.insert(key).second)
      throw Error(Errc::DuplicateId, kind + " '" + g.front().value + "' at line " + std::to_string(g.front().number));
    if (kind == "formula") cat.formulas.push_back(build_formula(g));
    else if (kind == "claim") cat.claims.push_back(build_claim(g));
    else cat.identities.push_back(build_identity(g));
  }

  for (const auto& f : cat.formulas)
    if (!f.derived_from.empty() && !cat.find(f.derived_from))
      throw Error(Errc::UnknownId, f.id + " derives from unknown '" + f.derived_from + "'");
  for (const auto& c : cat.claims)
    if (!c.linked.empty() && !cat.find(c.linked))
      throw Error(Errc::UnknownId, "claim " + c.id + " links unknown '" + c.linked + "'");
  for (const auto& f : cat.formulas) {
    if (f.convergent || !f.notes.empty()) continue;
    bool linked = false;
    for (const auto& c : cat.claims) linked = linked || c.linked == f.id;
    if (!linked) throw Error(Errc::InvalidArgument, f.id + " is divergent but has no note and no linked claim");
  }
  return cat;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open catalog '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

const Catalog& embedded_catalog() {
  static const Catalog cat = parse_catalog(embedded_catalog_text());
  return cat;
}

std::string serialize(const Formula& f) {
  std::ostringstream os;
  os << "formula: " << f.id << '\n';
  if (!f.provenance.empty()) os << "provenance: " << f.provenance << '\n';
  os << "family: " << family_name(f.family.kind) << '\n';
  os << "s: " << f.family.s.to_string() << '\n';
  if (f.family.kind == Family::HYP || f.family.kind == Family::PROP1) os << "M: " << f.family.M.get_str() << '\n';
  os << "arg: " << f.arg.to_string() << '\n';
  os << "lin0: " << f.lin0.to_string() << '\n';
  os << "lin1: " << f.lin1.to_string() << '\n';
  os << "rhs: " << f.rhs.to_string() << '\n';
  if (f.tau0_im_sq) os << "tau0_im_sq: " << f.tau0_im_sq->to_string() << '\n';
  os << "convergent: " << bool_text(f.convergent) << '\n';
  os << "status: " << f.status << '\n';
  if (!f.derived_from.empty()) {
    os << "derived_from: " << f.derived_from << '\n';
    os << "transform: " << f.transform << '\n';
  }
  for (const auto& [k, v] : f.printed) os << "printed." << k << ": " << v << '\n';
  if (!f.notes.empty()) os << "notes: " << f.notes << '\n';
  return os.str();
}

std::string serialize(const Catalog& c) {
  std::ostringstream os;
  os << "version: " << c.version << "\n\n";
  for (const auto& f : c.formulas) os << serialize(f) << '\n';
  for (const auto& cl : c.claims) {
    os << "claim: " << cl.id << '\n'
       << "s: " << cl.family.s.to_string() << '\n'
       << "lin0: " << cl.lin0.get_str() << '\n'
       << "lin1: " << cl.lin1.get_str() << '\n'
       << "base: " << cl.base.get_str() << '\n'
       << "rhs_mult: " << cl.rhs_mult.get_str() << '\n'
       << "character_disc: " << cl.character_disc.get_str() << '\n';
    if (!cl.linked.empty()) os << "linked: " << cl.linked << '\n';
    if (!cl.notes.empty()) os << "notes: " << cl.notes << '\n';
    os << '\n';
  }
  for (const auto& d : c.identities) {
    os << "identity: " << d.name << "\ns:";
    for (const auto& s : d.s) os << ' ' << s.to_string();
    os << "\norder: " << d.order << "\n\n";
  }
  return os.str();
}

}  // namespace piforge
