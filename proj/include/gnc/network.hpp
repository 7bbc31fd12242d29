#pragma once

// Acyclic network-coding instances and codes given as explicit tables.
//
// Variables are indexed 0..|S|+|E|-1: sources first (sorted by label), then
// edges in declaration order. A local table for edge e=(u,v) is indexed by
// the mixed-radix rank of its input tuple: the tail's incoming edges sorted
// by id, or the single source variable when u is a source. Global tables are
// indexed by the mixed-radix rank of the source tuple (first source most
// significant).

#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "gnc/distribution.hpp"
#include "gnc/error.hpp"
#include "gnc/group.hpp"

namespace gnc {

using VarIndex = std::size_t;
using NodeIndex = std::size_t;

struct Edge {
  std::string id;
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double capacity = 1.0;
};

struct InstanceSpec {
  std::vector<std::string> nodes;
  struct EdgeSpec {
    std::string id, tail, head;
    double capacity = 1.0;
  };
  std::vector<EdgeSpec> edges;
  std::vector<std::string> sources;
  std::vector<std::string> terminals;
  /// terminal label -> demanded source labels
  std::map<std::string, std::vector<std::string>> demands;
};

class NetworkInstance {
 public:
  /// Validates and builds an instance. Throws CyclicGraph, SourceHasInEdge,
  /// TerminalHasOutEdge or InvalidInstance.
  static NetworkInstance create(const InstanceSpec& spec) {
    NetworkInstance n;
    std::map<std::string, NodeIndex> node_ix;
    for (const auto& label : spec.nodes) {
      if (!node_ix.emplace(label, n.nodes_.size()).second) {
        throw Error(ErrorKind::InvalidInstance, "duplicate node '" + label + "'");
      }
      n.nodes_.push_back(label);
    }
    auto node = [&](const std::string& label) {
      auto it = node_ix.find(label);
      if (it == node_ix.end()) throw Error(ErrorKind::InvalidInstance, "unknown node '" + label + "'");
      return it->second;
    };
    std::set<std::string> edge_ids;
    for (const auto& e : spec.edges) {
      if (!edge_ids.insert(e.id).second) throw Error(ErrorKind::InvalidInstance, "duplicate edge '" + e.id + "'");
      if (!(e.capacity > 0)) throw Error(ErrorKind::InvalidInstance, "edge '" + e.id + "' needs positive capacity");
      n.edges_.push_back(Edge{e.id, node(e.tail), node(e.head), e.capacity});
    }
    std::vector<std::string> sources = spec.sources;
    std::sort(sources.begin(), sources.end());
    if (std::adjacent_find(sources.begin(), sources.end()) != sources.end()) {
      throw Error(ErrorKind::InvalidInstance, "duplicate source");
    }
    for (const auto& s : sources) {
      if (edge_ids.count(s)) throw Error(ErrorKind::InvalidInstance, "source label '" + s + "' clashes with an edge id");
      n.sources_.push_back(node(s));
    }
    std::vector<std::string> terminals = spec.terminals;
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    for (const auto& t : terminals) n.terminals_.push_back(node(t));

    n.in_.assign(n.nodes_.size(), {});
    n.out_.assign(n.nodes_.size(), {});
    for (std::size_t i = 0; i < n.edges_.size(); ++i) {
      n.in_[n.edges_[i].head].push_back(i);
      n.out_[n.edges_[i].tail].push_back(i);
    }
    for (auto& lst : n.in_) {
      std::sort(lst.begin(), lst.end(), [&](std::size_t a, std::size_t b) { return n.edges_[a].id < n.edges_[b].id; });
    }
    for (NodeIndex s : n.sources_) {
      if (!n.in_[s].empty()) {
        throw Error(ErrorKind::SourceHasInEdge, "source '" + n.nodes_[s] + "' has incoming edge '" +
                                                    n.edges_[n.in_[s].front()].id + "'");
      }
    }
    for (NodeIndex t : n.terminals_) {
      if (n.is_source(t)) throw Error(ErrorKind::InvalidInstance, "node '" + n.nodes_[t] + "' is both source and terminal");
      if (!n.out_[t].empty()) {
        throw Error(ErrorKind::TerminalHasOutEdge, "terminal '" + n.nodes_[t] + "' has outgoing edge '" +
                                                       n.edges_[n.out_[t].front()].id + "'");
      }
    }
    n.order_ = n.compute_topological_order();

    n.demand_.assign(n.sources_.size(), std::vector<bool>(n.terminals_.size(), false));
    for (const auto& [t, srcs] : spec.demands) {
      const NodeIndex tn = node(t);
      const auto ti = n.terminal_position(tn);
      if (!ti) throw Error(ErrorKind::InvalidInstance, "demand at non-terminal '" + t + "'");
      for (const auto& s : srcs) {
        const auto si = n.source_position(node(s));
        if (!si) throw Error(ErrorKind::InvalidInstance, "terminal '" + t + "' demands non-source '" + s + "'");
        n.demand_[*si][*ti] = true;
      }
    }
    for (std::size_t si = 0; si < n.sources_.size(); ++si) {
      const auto reach = n.reachable_from(n.sources_[si]);
      for (std::size_t ti = 0; ti < n.terminals_.size(); ++ti) {
        if (n.demand_[si][ti] && !reach[n.terminals_[ti]]) {
          throw Error(ErrorKind::InvalidInstance, "terminal '" + n.nodes_[n.terminals_[ti]] + "' cannot reach source '" +
                                                      n.nodes_[n.sources_[si]] + "'");
        }
      }
    }
    return n;
  }

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<NodeIndex>& sources() const noexcept { return sources_; }
  const std::vector<NodeIndex>& terminals() const noexcept { return terminals_; }
  const std::vector<std::size_t>& in_edges(NodeIndex v) const { return in_[v]; }
  const std::vector<std::size_t>& out_edges(NodeIndex v) const { return out_[v]; }
  /// demand()[source position][terminal position]
  const std::vector<std::vector<bool>>& demand() const noexcept { return demand_; }

  bool is_source(NodeIndex v) const { return source_position(v).has_value(); }
  std::optional<std::size_t> source_position(NodeIndex v) const {
    auto it = std::find(sources_.begin(), sources_.end(), v);
    if (it == sources_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - sources_.begin());
  }
  std::optional<std::size_t> terminal_position(NodeIndex v) const {
    auto it = std::find(terminals_.begin(), terminals_.end(), v);
    if (it == terminals_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - terminals_.begin());
  }
  std::optional<NodeIndex> node_index(const std::string& label) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), label);
    if (it == nodes_.end()) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
  }

  std::size_t num_vars() const noexcept { return sources_.size() + edges_.size(); }
  VarIndex source_var(std::size_t source_pos) const { return source_pos; }
  VarIndex edge_var(std::size_t edge) const { return sources_.size() + edge; }
  bool is_edge_var(VarIndex v) const { return v >= sources_.size(); }
  std::size_t edge_of(VarIndex v) const { return v - sources_.size(); }
  std::string var_name(VarIndex v) const {
    return v < sources_.size() ? nodes_[sources_[v]] : edges_[edge_of(v)].id;
  }
  std::optional<VarIndex> var_index(const std::string& name) const {
    for (VarIndex v = 0; v < num_vars(); ++v) {
      if (var_name(v) == name) return v;
    }
    return std::nullopt;
  }
  VarIndex require_var(const std::string& name) const {
    if (auto v = var_index(name)) return *v;
    throw Error(ErrorKind::InvalidInstance, "unknown variable '" + name + "'");
  }
  std::optional<std::size_t> edge_index(const std::string& id) const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].id == id) return i;
    }
    return std::nullopt;
  }

  /// Input variables of the local function on edge e (ordered as its table).
  std::vector<VarIndex> edge_inputs(std::size_t e) const {
    const NodeIndex u = edges_[e].tail;
    if (auto sp = source_position(u)) return {source_var(*sp)};
    std::vector<VarIndex> out;
    for (auto ie : in_[u]) out.push_back(edge_var(ie));
    return out;
  }

  /// Input variables of the decoder at terminal node t.
  std::vector<VarIndex> terminal_inputs(NodeIndex t) const {
    std::vector<VarIndex> out;
    for (auto ie : in_[t]) out.push_back(edge_var(ie));
    return out;
  }

  /// Source positions demanded by terminal position ti, in source order.
  std::vector<std::size_t> demanded_sources(std::size_t ti) const {
    std::vector<std::size_t> out;
    for (std::size_t si = 0; si < sources_.size(); ++si) {
      if (demand_[si][ti]) out.push_back(si);
    }
    return out;
  }

  /// Nodes ordered so every edge goes forward; ties broken by label.
  const std::vector<NodeIndex>& topological_order() const noexcept { return order_; }

  /// Edges ordered by the position of their tail in `node_order`, then by
  /// declaration order.
  std::vector<std::size_t> edge_order(const std::vector<NodeIndex>& node_order) const {
    std::vector<std::size_t> out;
    for (NodeIndex v : node_order) out.insert(out.end(), out_[v].begin(), out_[v].end());
    return out;
  }
  std::vector<std::size_t> edge_order() const { return edge_order(order_); }

  /// True iff `order` is a permutation of the nodes with every edge forward.
  bool respects_edges(const std::vector<NodeIndex>& order) const {
    if (order.size() != nodes_.size()) return false;
    std::vector<std::size_t> pos(nodes_.size(), nodes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] >= nodes_.size() || pos[order[i]] != nodes_.size()) return false;
      pos[order[i]] = i;
    }
    for (const auto& e : edges_) {
      if (pos[e.tail] >= pos[e.head]) return false;
    }
    return true;
  }

 private:
  std::vector<NodeIndex> compute_topological_order() const {
    std::vector<std::size_t> indeg(nodes_.size(), 0);
    for (const auto& e : edges_) ++indeg[e.head];
    auto by_label = [&](NodeIndex a, NodeIndex b) { return nodes_[a] > nodes_[b]; };
    std::priority_queue<NodeIndex, std::vector<NodeIndex>, decltype(by_label)> ready(by_label);
    for (NodeIndex v = 0; v < nodes_.size(); ++v) {
      if (indeg[v] == 0) ready.push(v);
    }
    std::vector<NodeIndex> order;
    while (!ready.empty()) {
      const NodeIndex v = ready.top();
      ready.pop();
      order.push_back(v);
      for (auto e : out_[v]) {
        if (--indeg[edges_[e].head] == 0) ready.push(edges_[e].head);
      }
    }
    if (order.size() != nodes_.size()) throw Error(ErrorKind::CyclicGraph, "network contains a directed cycle");
    return order;
  }

  std::vector<bool> reachable_from(NodeIndex s) const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<NodeIndex> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const NodeIndex v = stack.back();
      stack.pop_back();
      for (auto e : out_[v]) {
        if (!seen[edges_[e].head]) {
          seen[edges_[e].head] = true;
          stack.push_back(edges_[e].head);
        }
      }
    }
    return seen;
  }

  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeIndex> sources_;
  std::vector<NodeIndex> terminals_;
  std::vector<std::vector<std::size_t>> in_, out_;
  std::vector<std::vector<bool>> demand_;
  std::vector<NodeIndex> order_;
};

/// A block-length-1 network code: alphabet sizes per variable, local tables
/// per edge, decoders per terminal, and (once derived) global tables.
struct NetworkCode {
  std::vector<std::size_t> alphabet;                        // per variable
  std::vector<std::optional<std::vector<Symbol>>> local;    // per edge
  std::map<NodeIndex, std::vector<SymbolTuple>> decoder;    // terminal node -> table
  std::vector<std::optional<std::vector<Symbol>>> global;   // per edge

  static NetworkCode empty_for(const NetworkInstance& inst) {
    NetworkCode c;
    c.alphabet.assign(inst.num_vars(), 1);
    c.local.assign(inst.edges().size(), std::nullopt);
    c.global.assign(inst.edges().size(), std::nullopt);
    return c;
  }

  std::vector<std::size_t> radices(std::span<const VarIndex> vars) const {
    std::vector<std::size_t> r;
    r.reserve(vars.size());
    for (auto v : vars) r.push_back(alphabet[v]);
    return r;
  }

  bool has_globals() const {
    return std::all_of(global.begin(), global.end(), [](const auto& g) { return g.has_value(); });
  }
};

inline std::vector<VarIndex> source_vars(const NetworkInstance& inst) {
  std::vector<VarIndex> v(inst.sources().size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline std::size_t source_space_size(const NetworkInstance& inst, const NetworkCode& code) {
  std::size_t n = 1;
  for (std::size_t s = 0; s < inst.sources().size(); ++s) n *= code.alphabet[s];
  return n;
}

inline void check_local_shape(const NetworkInstance& inst, const NetworkCode& code, std::size_t e) {
  const auto& t = *code.local[e];
  const auto inputs = inst.edge_inputs(e);
  const auto rad = code.radices(inputs);
  if (t.size() != product_of(rad)) {
    throw Error(ErrorKind::InvalidInstance, "local table of '" + inst.edges()[e].id + "' has " + std::to_string(t.size()) +
                                                " entries, expected " + std::to_string(product_of(rad)));
  }
  const auto out_size = code.alphabet[inst.edge_var(e)];
  for (auto y : t) {
    if (y >= out_size) throw Error(ErrorKind::InvalidInstance, "local table of '" + inst.edges()[e].id + "' leaves its alphabet");
  }
}

/// Global tables obtained by composing locals along `node_order` (which must
/// respect the edges), exhaustively over all source tuples.
inline NetworkCode derive_globals(const NetworkInstance& inst, const NetworkCode& code,
                                  const std::vector<NodeIndex>& node_order) {
  if (!inst.respects_edges(node_order)) throw Error(ErrorKind::InvalidInstance, "order does not respect the edges");
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (!code.local[e]) throw Error(ErrorKind::MissingLocal, "no local function for edge '" + inst.edges()[e].id + "'");
    check_local_shape(inst, code, e);
  }
  NetworkCode out = code;
  const auto srcs = source_vars(inst);
  const auto src_rad = code.radices(srcs);
  const std::size_t space = product_of(src_rad);
  for (auto& g : out.global) g = std::vector<Symbol>(space, 0);
  std::vector<Symbol> value(inst.num_vars(), 0);
  const auto order = inst.edge_order(node_order);
  std::vector<std::vector<VarIndex>> inputs(inst.edges().size());
  for (std::size_t e = 0; e < inst.edges().size(); ++e) inputs[e] = inst.edge_inputs(e);
  for (std::size_t x = 0; x < space; ++x) {
    const auto tuple = unrank(x, src_rad);
    std::copy(tuple.begin(), tuple.end(), value.begin());
    for (auto e : order) {
      std::size_t idx = 0;
      for (auto v : inputs[e]) idx = idx * code.alphabet[v] + value[v];
      const Symbol y = (*code.local[e])[idx];
      value[inst.edge_var(e)] = y;
      (*out.global[e])[x] = y;
    }
  }
  return out;
}

inline NetworkCode derive_globals(const NetworkInstance& inst, const NetworkCode& code) {
  return derive_globals(inst, code, inst.topological_order());
}

/// Values of every variable for the source tuple of rank x (globals required).
inline std::vector<Symbol> evaluate(const NetworkInstance& inst, const NetworkCode& code, std::size_t x) {
  const auto srcs = source_vars(inst);
  auto out = unrank(x, code.radices(srcs));
  out.resize(inst.num_vars());
  for (std::size_t e = 0; e < inst.edges().size(); ++e) out[inst.edge_var(e)] = (*code.global[e])[x];
  return out;
}

struct DecodingFailure {
  std::string terminal;
  SymbolTuple source_tuple;
  std::string source;
  Symbol expected = 0;
  Symbol decoded = 0;
};

struct DecodingReport {
  bool ok = true;
  std::optional<DecodingFailure> failure;
};

/// Checks every terminal recovers every demanded source on every source tuple.
/// Terminals are visited in label order, source tuples in rank order.
inline DecodingReport verify_decoding(const NetworkInstance& inst, const NetworkCode& code) {
  if (!code.has_globals()) throw Error(ErrorKind::MissingLocal, "globals not derived");
  DecodingReport rep;
  const std::size_t space = source_space_size(inst, code);
  for (std::size_t ti = 0; ti < inst.terminals().size(); ++ti) {
    const auto demanded = inst.demanded_sources(ti);
    if (demanded.empty()) continue;
    const NodeIndex t = inst.terminals()[ti];
    auto it = code.decoder.find(t);
    if (it == code.decoder.end()) throw Error(ErrorKind::MissingDecoder, "no decoder for terminal '" + inst.nodes()[t] + "'");
    const auto inputs = inst.terminal_inputs(t);
    const auto rad = code.radices(inputs);
    if (it->second.size() != product_of(rad)) {
      throw Error(ErrorKind::InvalidInstance, "decoder of '" + inst.nodes()[t] + "' has the wrong number of entries");
    }
    for (std::size_t x = 0; x < space; ++x) {
      const auto val = evaluate(inst, code, x);
      std::size_t idx = 0;
      for (auto v : inputs) idx = idx * code.alphabet[v] + val[v];
      const auto& dec = it->second[idx];
      for (std::size_t k = 0; k < demanded.size(); ++k) {
        const Symbol want = val[inst.source_var(demanded[k])];
        const Symbol got = k < dec.size() ? dec[k] : static_cast<Symbol>(-1);
        if (got != want) {
          rep.ok = false;
          rep.failure = DecodingFailure{inst.nodes()[t], SymbolTuple(val.begin(), val.begin() + inst.sources().size()),
                                        inst.nodes()[inst.sources()[demanded[k]]], want, got};
          return rep;
        }
      }
    }
  }
  return rep;
}

/// Distribution of (X_f : f in vars) under independent uniform sources;
/// denominator |X_S|.
inline ExactDistribution joint_distribution(const NetworkInstance& inst, const NetworkCode& code,
                                            std::span<const VarIndex> vars) {
  if (!code.has_globals()) throw Error(ErrorKind::MissingLocal, "globals not derived");
  const std::size_t space = source_space_size(inst, code);
  std::map<SymbolTuple, std::uint64_t> tally;
  for (std::size_t x = 0; x < space; ++x) {
    const auto val = evaluate(inst, code, x);
    SymbolTuple t;
    t.reserve(vars.size());
    for (auto v : vars) t.push_back(val[v]);
    ++tally[t];
  }
  return ExactDistribution::from_tally(tally, space);
}

/// Builds decoders for every demanding terminal from the derived globals:
/// each observed input tuple maps to the demanded sources. Returns nothing if
/// some terminal's inputs do not determine its demands. Unobserved input
/// tuples decode to zeros.
inline std::optional<NetworkCode> synthesize_decoders(const NetworkInstance& inst, const NetworkCode& code) {
  NetworkCode out = code;
  const std::size_t space = source_space_size(inst, code);
  for (std::size_t ti = 0; ti < inst.terminals().size(); ++ti) {
    const auto demanded = inst.demanded_sources(ti);
    if (demanded.empty()) continue;
    const NodeIndex t = inst.terminals()[ti];
    const auto inputs = inst.terminal_inputs(t);
    const auto rad = code.radices(inputs);
    std::vector<std::optional<SymbolTuple>> table(product_of(rad));
    for (std::size_t x = 0; x < space; ++x) {
      const auto val = evaluate(inst, code, x);
      std::size_t idx = 0;
      for (auto v : inputs) idx = idx * code.alphabet[v] + val[v];
      SymbolTuple want;
      for (auto s : demanded) want.push_back(val[inst.source_var(s)]);
      if (table[idx] && *table[idx] != want) return std::nullopt;
      table[idx] = want;
    }
    std::vector<SymbolTuple> dec;
    for (auto& row : table) dec.push_back(row ? *row : SymbolTuple(demanded.size(), 0));
    out.decoder[t] = std::move(dec);
  }
  return out;
}

/// Edges whose alphabet exceeds what their capacity allows (|X_e| > 2^{R_e}).
inline std::vector<std::string> capacity_warnings(const NetworkInstance& inst, const NetworkCode& code) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const double allowed = std::pow(2.0, inst.edges()[e].capacity);
    const auto size = code.alphabet[inst.edge_var(e)];
    if (static_cast<double>(size) > allowed + 1e-9) {
      out.push_back("edge '" + inst.edges()[e].id + "' alphabet " + std::to_string(size) + " exceeds 2^" +
                    std::to_string(inst.edges()[e].capacity));
    }
  }
  return out;
}

}  // namespace gnc
