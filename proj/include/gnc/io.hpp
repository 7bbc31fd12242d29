#pragma once

// Line-based text formats for groups, characterizations, CWL functions,
// network instances with table codes, and linear codes. '#' starts a comment.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gnc/cwl.hpp"
#include "gnc/error.hpp"
#include "gnc/group.hpp"
#include "gnc/group_char.hpp"
#include "gnc/linear.hpp"
#include "gnc/network.hpp"

namespace gnc {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;

  const std::string& head() const { return tokens.front(); }
};

inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    Line line{n, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || p != end) throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  return v;
}

inline double parse_real(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "expected a number, got '" + tok + "'");
}

inline void expect_arity(const Line& l, std::size_t min, std::size_t max, const std::string& usage) {
  if (l.tokens.size() < min || l.tokens.size() > max) throw ParseError(l.number, "expected '" + usage + "'");
}

inline std::vector<Elem> parse_elems(const Line& l, std::size_t from) {
  std::vector<Elem> out;
  for (std::size_t i = from; i < l.tokens.size(); ++i) out.push_back(static_cast<Elem>(parse_count(l.tokens[i], l.number)));
  return out;
}

/// `map a b ... -> y1 y2 ...`
struct MapLine {
  std::size_t line = 0;
  SymbolTuple in;
  SymbolTuple out;
};

inline MapLine parse_map_line(const Line& l) {
  MapLine m{l.number, {}, {}};
  bool after = false;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) {
    if (l.tokens[i] == "->") {
      if (after) throw ParseError(l.number, "repeated '->'");
      after = true;
      continue;
    }
    (after ? m.out : m.in).push_back(static_cast<Symbol>(parse_count(l.tokens[i], l.number)));
  }
  if (!after || m.out.empty()) throw ParseError(l.number, "expected 'map <in...> -> <out...>'");
  return m;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Syntax, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Groups

struct ParsedGroup {
  FiniteGroup group;
  /// In file order; elements already in normalized indexing.
  std::vector<std::pair<std::string, Subgroup>> subgroups;
};

namespace detail {

/// Relabels so the identity is index 0 by swapping it with 0.
inline std::pair<FiniteGroup, std::vector<Elem>> normalize_identity(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Elem> perm(n);
  for (Elem x = 0; x < n; ++x) perm[x] = x;
  std::swap(perm[0], perm[g.identity()]);
  if (g.identity() == 0) return {g, perm};
  std::vector<Elem> flat(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) flat[perm[a] * n + perm[b]] = perm[g.op(a, b)];
  }
  return {FiniteGroup::from_trusted_table(std::move(flat), n, g.label()), perm};
}

/// Parses group directives starting at lines[pos]; advances pos past the
/// group block (group, kind, table rows, subgroup lines).
inline ParsedGroup parse_group_block(const std::vector<Line>& lines, std::size_t& pos) {
  if (pos >= lines.size() || lines[pos].head() != "group") throw ParseError(pos < lines.size() ? lines[pos].number : 0, "expected 'group <label>'");
  expect_arity(lines[pos], 2, 2, "group <label>");
  const std::string label = lines[pos].tokens[1];
  ++pos;
  if (pos >= lines.size() || lines[pos].head() != "kind") throw ParseError(lines[pos - 1].number, "expected 'kind ...' after 'group'");
  const Line& k = lines[pos++];
  if (k.tokens.size() < 2) throw ParseError(k.number, "expected 'kind cyclic|table|sym ...'");
  FiniteGroup g;
  std::vector<Elem> perm;
  if (k.tokens[1] == "cyclic") {
    std::vector<std::size_t> mod;
    for (std::size_t i = 2; i < k.tokens.size(); ++i) {
      mod.push_back(parse_count(k.tokens[i], k.number));
      if (mod.back() == 0) throw ParseError(k.number, "cyclic factor must be positive");
    }
    if (mod.empty()) throw ParseError(k.number, "expected 'kind cyclic n1 ... nk'");
    check_order_cap(product_of(mod), "group file");
    g = cyclic_product(mod).relabeled(label);
  } else if (k.tokens[1] == "sym") {
    expect_arity(k, 3, 3, "kind sym n");
    const auto n = parse_count(k.tokens[2], k.number);
    if (n < 1 || n > 4) throw ParseError(k.number, "symmetric groups are supported for n <= 4");
    g = symmetric_group(n).relabeled(label);
  } else if (k.tokens[1] == "table") {
    expect_arity(k, 3, 3, "kind table n");
    const auto n = parse_count(k.tokens[2], k.number);
    if (n == 0) throw ParseError(k.number, "table order must be positive");
    check_order_cap(n, "group file");
    OpTable t;
    for (std::size_t r = 0; r < n; ++r) {
      if (pos >= lines.size()) throw ParseError(k.number, "table ends after " + std::to_string(r) + " rows");
      const Line& row = lines[pos++];
      std::vector<Elem> vals;
      for (const auto& tok : row.tokens) vals.push_back(static_cast<Elem>(parse_count(tok, row.number)));
      t.push_back(std::move(vals));
    }
    const auto [ng, p] = normalize_identity(verify_group_axioms(t, label));
    g = ng;
    perm = p;
  } else {
    throw ParseError(k.number, "unknown group kind '" + k.tokens[1] + "'");
  }
  ParsedGroup out{g, {}};
  while (pos < lines.size() && lines[pos].head() == "subgroup") {
    const Line& s = lines[pos++];
    if (s.tokens.size() < 3) throw ParseError(s.number, "expected 'subgroup <label> e1 e2 ...'");
    auto el = parse_elems(s, 2);
    for (auto& x : el) {
      if (x >= g.order()) throw ParseError(s.number, "element " + std::to_string(x) + " outside the group");
      if (!perm.empty()) x = perm[x];
    }
    out.subgroups.emplace_back(s.tokens[1], Subgroup::verified(g, el));
  }
  return out;
}

}  // namespace detail

inline ParsedGroup parse_group_text(const std::string& text) {
  const auto lines = tokenize(text);
  std::size_t pos = 0;
  auto g = detail::parse_group_block(lines, pos);
  if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected '" + lines[pos].head() + "'");
  return g;
}

/// Named groups: "1", "Z<n>", "Z<a>xZ<b>x...", "S<n>" (n ≤ 4), "GF(q)^d";
/// anything else is a path to a group file (relative to `base`).
inline FiniteGroup resolve_group_ref(const std::string& ref, const std::filesystem::path& base = {}) {
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (ref == "1") return FiniteGroup{};
  if (ref.size() >= 2 && ref[0] == 'S' && all_digits(ref.substr(1))) {
    const auto n = std::stoul(ref.substr(1));
    if (n >= 1 && n <= 4) return symmetric_group(n).relabeled(ref);
  }
  if (ref.rfind("GF", 0) == 0) {
    std::string s = ref;
    std::erase(s, '(');
    std::erase(s, ')');
    const auto caret = s.find('^');
    if (caret != std::string::npos && all_digits(s.substr(2, caret - 2)) && all_digits(s.substr(caret + 1))) {
      const auto q = static_cast<std::uint32_t>(std::stoul(s.substr(2, caret - 2)));
      require_prime(q);
      return vector_space_group(q, std::stoul(s.substr(caret + 1)));
    }
  }
  if (!ref.empty() && ref[0] == 'Z') {
    std::vector<std::size_t> mod;
    bool ok = true;
    std::size_t i = 0;
    while (ok && i < ref.size()) {
      if (ref[i] != 'Z') {
        ok = false;
        break;
      }
      const auto next = ref.find('x', i);
      const auto num = ref.substr(i + 1, next == std::string::npos ? std::string::npos : next - i - 1);
      if (!all_digits(num) || std::stoul(num) == 0) {
        ok = false;
        break;
      }
      mod.push_back(std::stoul(num));
      if (next == std::string::npos) break;
      i = next + 1;
      if (i == ref.size()) ok = false;
    }
    if (ok && !mod.empty()) {
      check_order_cap(product_of(mod), ref);
      return cyclic_product(mod).relabeled(ref);
    }
  }
  const auto path = base.empty() ? std::filesystem::path(ref) : base / ref;
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::Syntax, "unknown group '" + ref + "'");
  return parse_group_text(read_file(path)).group;
}

inline std::string write_group_text(const FiniteGroup& g, const std::vector<std::pair<std::string, Subgroup>>& subgroups = {}) {
  std::ostringstream os;
  os << "group " << g.label() << "\nkind table " << g.order() << "\n";
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) os << (b ? " " : "") << g.op(a, b);
    os << "\n";
  }
  for (const auto& [name, s] : subgroups) {
    os << "subgroup " << name;
    for (auto x : s.elements()) os << " " << x;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Characterizations

/// `group-file <ref>` or an inline group block, then `var <id> e1 e2 ...`
/// (the word `subgroup` after the id is optional).
inline GroupCharacterization parse_characterization_text(const std::string& text, const std::filesystem::path& base = {}) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty characterization file");
  std::size_t pos = 0;
  FiniteGroup g;
  if (lines[0].head() == "group-file") {
    expect_arity(lines[0], 2, 2, "group-file <ref>");
    g = resolve_group_ref(lines[0].tokens[1], base);
    pos = 1;
  } else {
    g = detail::parse_group_block(lines, pos).group;
  }
  std::map<std::string, std::vector<Elem>> vars;
  for (; pos < lines.size(); ++pos) {
    const Line& l = lines[pos];
    if (l.head() != "var") throw ParseError(l.number, "expected 'var <id> subgroup e1 e2 ...'");
    if (l.tokens.size() < 3) throw ParseError(l.number, "expected 'var <id> subgroup e1 e2 ...'");
    const std::size_t from = l.tokens[2] == "subgroup" ? 3 : 2;
    auto el = parse_elems(l, from);
    for (auto x : el) {
      if (x >= g.order()) throw ParseError(l.number, "element " + std::to_string(x) + " outside the group");
    }
    if (!vars.emplace(l.tokens[1], std::move(el)).second) throw ParseError(l.number, "duplicate var '" + l.tokens[1] + "'");
  }
  return GroupCharacterization::create(g, vars);
}

inline std::string write_characterization_text(const GroupCharacterization& ch) {
  std::ostringstream os;
  const auto grp = write_group_text(ch.group);
  os << grp;
  for (const auto& [name, s] : ch.assignment) {
    os << "var " << name << " subgroup";
    for (auto x : s.elements()) os << " " << x;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// CWL functions

/// One or more `cwl` blocks. Group refs are resolved with resolve_group_ref.
inline std::vector<CwlFunction> parse_cwl_text(const std::string& text, const std::filesystem::path& base = {}) {
  const auto lines = tokenize(text);
  struct Block {
    std::size_t line = 0;
    std::string name, output;
    std::vector<std::string> inputs;
    std::vector<FiniteGroup> groups;
    std::optional<FiniteGroup> out_group;
    std::vector<MapLine> maps;
  };
  std::vector<Block> blocks;
  for (const auto& l : lines) {
    if (l.head() == "cwl") {
      expect_arity(l, 2, 2, "cwl <name>");
      blocks.push_back(Block{l.number, l.tokens[1], {}, {}, {}, {}, {}});
      continue;
    }
    if (blocks.empty()) throw ParseError(l.number, "expected 'cwl <name>' first");
    auto& b = blocks.back();
    if (l.head() == "input") {
      expect_arity(l, 3, 3, "input <var> <group>");
      if (!b.maps.empty() || b.out_group) throw ParseError(l.number, "inputs must precede output and map lines");
      b.inputs.push_back(l.tokens[1]);
      b.groups.push_back(resolve_group_ref(l.tokens[2], base));
    } else if (l.head() == "output") {
      expect_arity(l, 3, 3, "output <var> <group>");
      if (b.out_group) throw ParseError(l.number, "duplicate output");
      b.output = l.tokens[1];
      b.out_group = resolve_group_ref(l.tokens[2], base);
    } else if (l.head() == "map") {
      b.maps.push_back(parse_map_line(l));
    } else {
      throw ParseError(l.number, "unknown directive '" + l.head() + "'");
    }
  }
  std::vector<CwlFunction> out;
  for (auto& b : blocks) {
    if (!b.out_group) throw ParseError(b.line, "cwl '" + b.name + "' has no output");
    std::vector<std::size_t> rad;
    for (const auto& g : b.groups) rad.push_back(g.order());
    std::vector<std::optional<Elem>> table(product_of(rad));
    for (const auto& m : b.maps) {
      if (m.in.size() != rad.size() || m.out.size() != 1) throw ParseError(m.line, "map arity does not match the inputs");
      for (std::size_t i = 0; i < rad.size(); ++i) {
        if (m.in[i] >= rad[i]) throw ParseError(m.line, "input symbol outside its group");
      }
      if (m.out[0] >= b.out_group->order()) throw ParseError(m.line, "output symbol outside the output group");
      auto& slot = table[rank_tuple(m.in, rad)];
      if (slot && *slot != m.out[0]) throw ParseError(m.line, "conflicting map entry");
      slot = m.out[0];
    }
    std::vector<Elem> map;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!table[i]) throw ParseError(b.line, "cwl '" + b.name + "' does not cover the full domain");
      map.push_back(*table[i]);
    }
    out.push_back(CwlFunction::create(b.name, b.inputs, b.groups, b.output, *b.out_group, std::move(map)));
  }
  if (out.empty()) throw ParseError(0, "no cwl blocks");
  return out;
}

/// Writes groups by their label, so labels must be resolvable group refs.
inline std::string write_cwl_text(std::span<const CwlFunction> fns) {
  std::ostringstream os;
  for (const auto& f : fns) {
    os << "cwl " << f.name << "\n";
    for (std::size_t i = 0; i < f.input_vars.size(); ++i) os << "input " << f.input_vars[i] << " " << f.input_groups[i].label() << "\n";
    os << "output " << f.output_var << " " << f.output_group.label() << "\n";
    const auto rad = f.radices();
    for (std::size_t x = 0; x < f.domain_size(); ++x) {
      os << "map";
      for (auto s : unrank(x, rad)) os << " " << s;
      os << " -> " << f.map[x] << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Network instances with table codes

struct ParsedInstance {
  NetworkInstance instance;
  NetworkCode code;  // globals derived when every edge has a local table
};

namespace detail {

struct TopologyLines {
  InstanceSpec spec;
  std::map<std::string, std::size_t> source_alphabet;
  std::map<std::string, std::size_t> edge_alphabet;
};

/// Handles node/edge/source/terminal/demand/alphabet; false if not topology.
inline bool parse_topology_line(const Line& l, TopologyLines& t) {
  const auto& h = l.head();
  if (h == "node") {
    expect_arity(l, 2, 2, "node <label>");
    t.spec.nodes.push_back(l.tokens[1]);
  } else if (h == "edge") {
    expect_arity(l, 4, 5, "edge <id> <tail> <head> [<capacity>]");
    const double cap = l.tokens.size() == 5 ? parse_real(l.tokens[4], l.number) : 1.0;
    t.spec.edges.push_back({l.tokens[1], l.tokens[2], l.tokens[3], cap});
  } else if (h == "source") {
    expect_arity(l, 2, 3, "source <label> [<alphabet-size>]");
    t.spec.sources.push_back(l.tokens[1]);
    if (l.tokens.size() == 3) t.source_alphabet[l.tokens[1]] = parse_count(l.tokens[2], l.number);
  } else if (h == "terminal") {
    expect_arity(l, 2, 2, "terminal <label>");
    t.spec.terminals.push_back(l.tokens[1]);
  } else if (h == "demand") {
    if (l.tokens.size() < 3) throw ParseError(l.number, "expected 'demand <terminal> <source> ...'");
    auto& d = t.spec.demands[l.tokens[1]];
    d.insert(d.end(), l.tokens.begin() + 2, l.tokens.end());
  } else if (h == "alphabet") {
    expect_arity(l, 3, 3, "alphabet <edge> <size>");
    t.edge_alphabet[l.tokens[1]] = parse_count(l.tokens[2], l.number);
  } else {
    return false;
  }
  return true;
}

}  // namespace detail

/// Instance file with optional `local <edge>` and `decoder <terminal>`
/// sections of map lines. Edge alphabets come from `alphabet` lines, else
/// 2^capacity when that is an integer, else one more than the largest symbol
/// the edge's local table emits.
inline ParsedInstance parse_instance_text(const std::string& text) {
  const auto lines = tokenize(text);
  detail::TopologyLines topo;
  struct Section {
    bool decoder = false;
    std::string target;
    std::size_t line = 0;
    std::vector<MapLine> maps;
  };
  std::vector<Section> sections;
  for (const auto& l : lines) {
    if (l.head() == "local" || l.head() == "decoder") {
      expect_arity(l, 2, 2, l.head() + " <id>");
      sections.push_back(Section{l.head() == "decoder", l.tokens[1], l.number, {}});
    } else if (l.head() == "map") {
      if (sections.empty()) throw ParseError(l.number, "'map' outside a local or decoder section");
      sections.back().maps.push_back(parse_map_line(l));
    } else if (!detail::parse_topology_line(l, topo)) {
      throw ParseError(l.number, "unknown directive '" + l.head() + "'");
    }
  }
  auto inst = NetworkInstance::create(topo.spec);
  NetworkCode code = NetworkCode::empty_for(inst);
  std::map<std::string, const Section*> local_of, decoder_of;
  for (const auto& s : sections) {
    auto& m = s.decoder ? decoder_of : local_of;
    if (!m.emplace(s.target, &s).second) throw ParseError(s.line, "duplicate section for '" + s.target + "'");
    if (!s.decoder && !inst.edge_index(s.target)) throw ParseError(s.line, "unknown edge '" + s.target + "'");
    if (s.decoder && !(inst.node_index(s.target) && inst.terminal_position(*inst.node_index(s.target)))) {
      throw ParseError(s.line, "unknown terminal '" + s.target + "'");
    }
  }
  for (std::size_t s = 0; s < inst.sources().size(); ++s) {
    const auto& name = inst.var_name(s);
    auto it = topo.source_alphabet.find(name);
    code.alphabet[s] = it == topo.source_alphabet.end() ? 2 : it->second;
    if (code.alphabet[s] == 0) throw Error(ErrorKind::InvalidInstance, "source '" + name + "' has an empty alphabet");
  }
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto& edge = inst.edges()[e];
    std::size_t a = 0;
    if (auto it = topo.edge_alphabet.find(edge.id); it != topo.edge_alphabet.end()) {
      a = it->second;
    } else if (edge.capacity == std::floor(edge.capacity) && edge.capacity >= 0 && edge.capacity < 31) {
      a = std::size_t{1} << static_cast<unsigned>(edge.capacity);
    } else if (auto lo = local_of.find(edge.id); lo != local_of.end()) {
      for (const auto& m : lo->second->maps) a = std::max<std::size_t>(a, m.out.empty() ? 0 : m.out[0] + 1);
    }
    if (a == 0) throw Error(ErrorKind::InvalidInstance, "cannot determine the alphabet of edge '" + edge.id + "'");
    code.alphabet[inst.edge_var(e)] = a;
  }
  check_order_cap(source_space_size(inst, code), "source space");
  for (const auto& [id, sec] : local_of) {
    const auto e = *inst.edge_index(id);
    const auto rad = code.radices(inst.edge_inputs(e));
    std::vector<std::optional<Symbol>> table(product_of(rad));
    for (const auto& m : sec->maps) {
      if (m.in.size() != rad.size() || m.out.size() != 1) throw ParseError(m.line, "map arity does not match the inputs of '" + id + "'");
      for (std::size_t i = 0; i < rad.size(); ++i) {
        if (m.in[i] >= rad[i]) throw ParseError(m.line, "input symbol outside its alphabet");
      }
      if (m.out[0] >= code.alphabet[inst.edge_var(e)]) throw ParseError(m.line, "output symbol outside the alphabet of '" + id + "'");
      auto& slot = table[rank_tuple(m.in, rad)];
      if (slot && *slot != m.out[0]) throw ParseError(m.line, "conflicting map entry");
      slot = m.out[0];
    }
    std::vector<Symbol> t;
    for (const auto& v : table) {
      if (!v) throw ParseError(sec->line, "local table of '" + id + "' does not cover every input tuple");
      t.push_back(*v);
    }
    code.local[e] = std::move(t);
  }
  for (const auto& [label, sec] : decoder_of) {
    const auto t = *inst.node_index(label);
    const auto rad = code.radices(inst.terminal_inputs(t));
    const auto want = inst.demanded_sources(*inst.terminal_position(t)).size();
    std::vector<std::optional<SymbolTuple>> table(product_of(rad));
    for (const auto& m : sec->maps) {
      if (m.in.size() != rad.size() || m.out.size() != want) throw ParseError(m.line, "decoder map arity mismatch for '" + label + "'");
      for (std::size_t i = 0; i < rad.size(); ++i) {
        if (m.in[i] >= rad[i]) throw ParseError(m.line, "input symbol outside its alphabet");
      }
      table[rank_tuple(m.in, rad)] = m.out;
    }
    std::vector<SymbolTuple> dec;
    for (auto& row : table) dec.push_back(row ? *row : SymbolTuple(want, 0));
    code.decoder[t] = std::move(dec);
  }
  bool complete = std::all_of(code.local.begin(), code.local.end(), [](const auto& l) { return l.has_value(); });
  if (complete) code = derive_globals(inst, code);
  return ParsedInstance{std::move(inst), std::move(code)};
}

inline std::string write_instance_text(const NetworkInstance& inst, const NetworkCode* code = nullptr) {
  std::ostringstream os;
  for (const auto& n : inst.nodes()) os << "node " << n << "\n";
  for (const auto& e : inst.edges()) {
    os << "edge " << e.id << " " << inst.nodes()[e.tail] << " " << inst.nodes()[e.head] << " " << e.capacity << "\n";
  }
  for (std::size_t s = 0; s < inst.sources().size(); ++s) {
    os << "source " << inst.var_name(s);
    if (code) os << " " << code->alphabet[s];
    os << "\n";
  }
  for (std::size_t t = 0; t < inst.terminals().size(); ++t) {
    os << "terminal " << inst.nodes()[inst.terminals()[t]] << "\n";
    const auto d = inst.demanded_sources(t);
    if (!d.empty()) {
      os << "demand " << inst.nodes()[inst.terminals()[t]];
      for (auto s : d) os << " " << inst.var_name(s);
      os << "\n";
    }
  }
  if (!code) return os.str();
  for (std::size_t e = 0; e < inst.edges().size(); ++e) os << "alphabet " << inst.edges()[e].id << " " << code->alphabet[inst.edge_var(e)] << "\n";
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (!code->local[e]) continue;
    os << "local " << inst.edges()[e].id << "\n";
    const auto rad = code->radices(inst.edge_inputs(e));
    for (std::size_t x = 0; x < code->local[e]->size(); ++x) {
      os << "map";
      for (auto s : unrank(x, rad)) os << " " << s;
      os << " -> " << (*code->local[e])[x] << "\n";
    }
  }
  for (const auto& [t, dec] : code->decoder) {
    os << "decoder " << inst.nodes()[t] << "\n";
    const auto rad = code->radices(inst.terminal_inputs(t));
    for (std::size_t x = 0; x < dec.size(); ++x) {
      os << "map";
      for (auto s : unrank(x, rad)) os << " " << s;
      os << " ->";
      for (auto s : dec[x]) os << " " << s;
      os << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Linear codes

struct ParsedLinear {
  NetworkInstance instance;
  LinearCode code;
};

/// Topology lines plus `field q`, `dim <var> d`, and matrix sections
/// `global <edge>` or `local <edge> <input-var>` followed by `row ...` lines.
inline ParsedLinear parse_linear_text(const std::string& text) {
  const auto lines = tokenize(text);
  detail::TopologyLines topo;
  std::optional<std::uint32_t> q;
  std::map<std::string, std::size_t> dims;
  struct Section {
    std::size_t line = 0;
    std::string edge, input;  // input empty for global
    std::vector<std::vector<std::uint32_t>> rows;
  };
  std::vector<Section> sections;
  for (const auto& l : lines) {
    if (l.head() == "field") {
      expect_arity(l, 2, 2, "field <q>");
      q = static_cast<std::uint32_t>(parse_count(l.tokens[1], l.number));
    } else if (l.head() == "dim") {
      expect_arity(l, 3, 3, "dim <var> <d>");
      dims[l.tokens[1]] = parse_count(l.tokens[2], l.number);
    } else if (l.head() == "global") {
      expect_arity(l, 2, 2, "global <edge>");
      sections.push_back({l.number, l.tokens[1], {}, {}});
    } else if (l.head() == "local") {
      expect_arity(l, 3, 3, "local <edge> <input>");
      sections.push_back({l.number, l.tokens[1], l.tokens[2], {}});
    } else if (l.head() == "row") {
      if (sections.empty()) throw ParseError(l.number, "'row' outside a matrix section");
      std::vector<std::uint32_t> r;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) r.push_back(static_cast<std::uint32_t>(parse_count(l.tokens[i], l.number)));
      sections.back().rows.push_back(std::move(r));
    } else if (!detail::parse_topology_line(l, topo)) {
      throw ParseError(l.number, "unknown directive '" + l.head() + "'");
    }
  }
  if (!q) throw ParseError(0, "missing 'field <q>'");
  require_prime(*q);
  auto inst = NetworkInstance::create(topo.spec);
  LinearCode code = LinearCode::empty_for(inst, *q);
  for (const auto& [name, d] : dims) code.dim[inst.require_var(name)] = d;
  std::vector<std::map<std::string, Matrix>> local_blocks(inst.edges().size());
  for (const auto& s : sections) {
    const auto e = inst.edge_index(s.edge);
    if (!e) throw ParseError(s.line, "unknown edge '" + s.edge + "'");
    Matrix m;
    try {
      m = Matrix::from_rows(s.rows);
    } catch (const Error& err) {
      throw ParseError(s.line, err.what());
    }
    for (auto& v : m.data) {
      if (v >= *q) throw ParseError(s.line, "matrix entry outside GF(" + std::to_string(*q) + ")");
    }
    if (s.input.empty()) {
      if (m.rows != code.source_dim(inst) || m.cols != code.dim[inst.edge_var(*e)]) {
        throw ParseError(s.line, "global matrix of '" + s.edge + "' must be " + std::to_string(code.source_dim(inst)) + "x" +
                                     std::to_string(code.dim[inst.edge_var(*e)]));
      }
      code.global[*e] = std::move(m);
    } else {
      local_blocks[*e][s.input] = std::move(m);
    }
  }
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (local_blocks[e].empty()) continue;
    std::vector<Matrix> blocks;
    for (auto v : inst.edge_inputs(e)) {
      auto it = local_blocks[e].find(inst.var_name(v));
      if (it == local_blocks[e].end()) {
        throw Error(ErrorKind::MissingLocal, "edge '" + inst.edges()[e].id + "' lacks a local block for '" + inst.var_name(v) + "'");
      }
      blocks.push_back(it->second);
    }
    if (blocks.size() != local_blocks[e].size()) {
      throw Error(ErrorKind::DimensionMismatch, "edge '" + inst.edges()[e].id + "' has local blocks for non-inputs");
    }
    code.local[e] = std::move(blocks);
  }
  return ParsedLinear{std::move(inst), std::move(code)};
}

inline std::string write_matrix_rows(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows; ++i) {
    os << "row";
    for (std::size_t j = 0; j < m.cols; ++j) os << " " << m(i, j);
    os << "\n";
  }
  return os.str();
}

inline std::string write_linear_text(const NetworkInstance& inst, const LinearCode& code) {
  std::ostringstream os;
  os << write_instance_text(inst);
  os << "field " << code.q << "\n";
  for (VarIndex v = 0; v < inst.num_vars(); ++v) os << "dim " << inst.var_name(v) << " " << code.dim[v] << "\n";
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (code.local[e]) {
      const auto inputs = inst.edge_inputs(e);
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        os << "local " << inst.edges()[e].id << " " << inst.var_name(inputs[k]) << "\n" << write_matrix_rows((*code.local[e])[k]);
      }
    }
    if (code.global[e]) os << "global " << inst.edges()[e].id << "\n" << write_matrix_rows(*code.global[e]);
  }
  return os.str();
}

}  // namespace gnc
