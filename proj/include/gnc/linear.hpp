#pragma once

// Linear network codes over GF(q), q prime. Messages are row vectors:
// x_e = x_S N_e globally and x_e = Σ_{e'∈In(u)} x_{e'} M_{e'} locally.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gnc/cwl.hpp"
#include "gnc/gf.hpp"
#include "gnc/network.hpp"

namespace gnc {

struct LinearCode {
  std::uint32_t q = 2;
  /// Dimension per variable (instance order: sources, then edges).
  std::vector<std::size_t> dim;
  /// Per edge: (Σ source dims) × dim(e).
  std::vector<std::optional<Matrix>> global;
  /// Per edge: one dim(input) × dim(e) block per entry of edge_inputs(e).
  std::vector<std::optional<std::vector<Matrix>>> local;

  static LinearCode empty_for(const NetworkInstance& inst, std::uint32_t q) {
    LinearCode c;
    c.q = q;
    c.dim.assign(inst.num_vars(), 1);
    c.global.assign(inst.edges().size(), std::nullopt);
    c.local.assign(inst.edges().size(), std::nullopt);
    return c;
  }

  std::size_t source_dim(const NetworkInstance& inst) const {
    std::size_t d = 0;
    for (std::size_t s = 0; s < inst.sources().size(); ++s) d += dim[s];
    return d;
  }
};

/// The (Σ source dims) × dim(s) block selecting source s out of x_S.
inline Matrix source_selector(const NetworkInstance& inst, const LinearCode& code, std::size_t source_pos) {
  Matrix m(code.source_dim(inst), code.dim[source_pos]);
  std::size_t off = 0;
  for (std::size_t s = 0; s < source_pos; ++s) off += code.dim[s];
  for (std::size_t i = 0; i < code.dim[source_pos]; ++i) m(off + i, i) = 1;
  return m;
}

/// Global matrix of any variable: a selector for sources, N_e for edges.
inline Matrix global_matrix(const NetworkInstance& inst, const LinearCode& code, VarIndex v) {
  if (!inst.is_edge_var(v)) return source_selector(inst, code, v);
  const auto& g = code.global[inst.edge_of(v)];
  if (!g) throw Error(ErrorKind::MissingLocal, "no global matrix for '" + inst.var_name(v) + "'");
  return *g;
}

/// N_α = [N_{f1} ... N_{fk}].
inline Matrix stacked_globals(const NetworkInstance& inst, const LinearCode& code, std::span<const VarIndex> vars) {
  std::vector<Matrix> blocks;
  for (auto v : vars) blocks.push_back(global_matrix(inst, code, v));
  return hconcat(blocks, code.source_dim(inst));
}

/// N_e = Σ_{e'} N_{e'} M_{e'} in topological order.
inline LinearCode linear_local_to_global(const NetworkInstance& inst, const LinearCode& code) {
  require_prime(code.q);
  LinearCode out = code;
  const std::size_t rows = code.source_dim(inst);
  for (auto& g : out.global) g.reset();
  for (auto e : inst.edge_order()) {
    const auto& id = inst.edges()[e].id;
    if (!code.local[e]) throw Error(ErrorKind::MissingLocal, "no local matrices for edge '" + id + "'");
    const auto inputs = inst.edge_inputs(e);
    const auto& blocks = *code.local[e];
    if (blocks.size() != inputs.size()) throw Error(ErrorKind::DimensionMismatch, "edge '" + id + "': wrong number of local blocks");
    const std::size_t de = code.dim[inst.edge_var(e)];
    Matrix n(rows, de);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const auto& m = blocks[k];
      if (m.rows != code.dim[inputs[k]] || m.cols != de) {
        throw Error(ErrorKind::DimensionMismatch, "edge '" + id + "': local block for '" + inst.var_name(inputs[k]) +
                                                      "' is " + std::to_string(m.rows) + "x" + std::to_string(m.cols));
      }
      n = add(n, multiply(global_matrix(inst, out, inputs[k]), m, code.q), code.q);
    }
    out.global[e] = std::move(n);
  }
  return out;
}

/// Solves N_In(u) M = N_e per edge. Throws RankConditionViolated where
/// rank([N_In(u) N_e]) > rank(N_In(u)).
inline LinearCode linear_global_to_local(const NetworkInstance& inst, const LinearCode& code) {
  require_prime(code.q);
  LinearCode out = code;
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto& id = inst.edges()[e].id;
    const auto inputs = inst.edge_inputs(e);
    const Matrix n_e = global_matrix(inst, code, inst.edge_var(e));
    if (n_e.rows != code.source_dim(inst) || n_e.cols != code.dim[inst.edge_var(e)]) {
      throw Error(ErrorKind::DimensionMismatch, "edge '" + id + "': global matrix has the wrong shape");
    }
    const Matrix n_in = stacked_globals(inst, code, inputs);
    const auto m = solve(n_in, n_e, code.q);
    if (!m) {
      const Matrix both[] = {n_in, n_e};
      const auto r_in = matrix_rank(n_in, code.q);
      const auto r_all = matrix_rank(hconcat(both, n_in.rows), code.q);
      throw Error(ErrorKind::RankConditionViolated, "edge '" + id + "': rank(N_In,e) = " + std::to_string(r_all) +
                                                        " != rank(N_In) = " + std::to_string(r_in));
    }
    std::vector<Matrix> blocks;
    std::size_t off = 0;
    for (auto v : inputs) {
      blocks.push_back(row_block(*m, off, code.dim[v]));
      off += code.dim[v];
    }
    out.local[e] = std::move(blocks);
  }
  return out;
}

/// Vector over GF(q) of length d <-> integer in [0, q^d), first entry most significant.
inline std::size_t encode_vector(std::span<const std::uint32_t> v, std::uint32_t q) {
  std::size_t x = 0;
  for (auto c : v) x = x * q + c;
  return x;
}

inline std::vector<std::uint32_t> decode_vector(std::size_t x, std::size_t d, std::uint32_t q) {
  std::vector<std::uint32_t> v(d);
  for (std::size_t i = d; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(x % q);
    x /= q;
  }
  return v;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Row vector times matrix over GF(q).
inline std::vector<std::uint32_t> apply(std::span<const std::uint32_t> x, const Matrix& m, std::uint32_t q) {
  std::vector<std::uint32_t> y(m.cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const std::uint64_t xi = x[i];
    if (!xi) continue;
    for (std::size_t j = 0; j < m.cols; ++j) y[j] = static_cast<std::uint32_t>((y[j] + xi * m(i, j)) % q);
  }
  return y;
}

/// Table form: alphabets q^dim, symbols encode vectors. Locals are included
/// when present; globals are tabulated when present.
inline NetworkCode to_table_code(const NetworkInstance& inst, const LinearCode& code) {
  NetworkCode t = NetworkCode::empty_for(inst);
  for (VarIndex v = 0; v < inst.num_vars(); ++v) t.alphabet[v] = ipow(code.q, code.dim[v]);
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const std::size_t de = code.dim[inst.edge_var(e)];
    if (code.local[e]) {
      const auto inputs = inst.edge_inputs(e);
      const auto rad = t.radices(inputs);
      std::vector<Symbol> table(product_of(rad));
      for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const auto parts = unrank(idx, rad);
        std::vector<std::uint32_t> y(de, 0);
        for (std::size_t k = 0; k < inputs.size(); ++k) {
          const auto xk = decode_vector(parts[k], code.dim[inputs[k]], code.q);
          const auto yk = apply(xk, (*code.local[e])[k], code.q);
          for (std::size_t j = 0; j < de; ++j) y[j] = (y[j] + yk[j]) % code.q;
        }
        table[idx] = static_cast<Symbol>(encode_vector(y, code.q));
      }
      t.local[e] = std::move(table);
    }
    if (code.global[e]) {
      const std::size_t space = source_space_size(inst, t);
      const auto rad = t.radices(source_vars(inst));
      std::vector<Symbol> table(space);
      for (std::size_t x = 0; x < space; ++x) {
        const auto parts = unrank(x, rad);
        std::vector<std::uint32_t> xs;
        for (std::size_t s = 0; s < parts.size(); ++s) {
          const auto v = decode_vector(parts[s], code.dim[s], code.q);
          xs.insert(xs.end(), v.begin(), v.end());
        }
        table[x] = static_cast<Symbol>(encode_vector(apply(xs, *code.global[e], code.q), code.q));
      }
      t.global[e] = std::move(table);
    }
  }
  return t;
}

/// rank(N_α) · log2(q): the entropy of X_α under uniform sources.
inline double linear_entropy_bits(const NetworkInstance& inst, const LinearCode& code, std::span<const VarIndex> vars) {
  if (vars.empty()) return 0.0;
  return static_cast<double>(matrix_rank(stacked_globals(inst, code, vars), code.q)) * std::log2(static_cast<double>(code.q));
}

/// Additive group of GF(q)^d, elements indexed like encode_vector.
inline FiniteGroup vector_space_group(std::uint32_t q, std::size_t d) {
  std::vector<std::size_t> moduli(d, q);
  auto g = cyclic_product(moduli);
  return g.relabeled("GF(" + std::to_string(q) + ")^" + std::to_string(d));
}

/// x ↦ x·T as a CWL function over the additive groups of the coordinate spaces.
/// `blocks[k]` is the dims[k] × out_dim block acting on input k.
inline CwlFunction linear_map_as_cwl(std::string name, std::vector<std::string> input_vars,
                                     std::span<const std::size_t> dims, const std::vector<Matrix>& blocks,
                                     std::string output_var, std::size_t out_dim, std::uint32_t q) {
  std::vector<FiniteGroup> groups;
  std::vector<std::size_t> rad;
  for (auto d : dims) {
    groups.push_back(vector_space_group(q, d));
    rad.push_back(ipow(q, d));
  }
  std::vector<Elem> map(product_of(rad));
  for (std::size_t idx = 0; idx < map.size(); ++idx) {
    const auto parts = unrank(idx, rad);
    std::vector<std::uint32_t> y(out_dim, 0);
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto yk = apply(decode_vector(parts[k], dims[k], q), blocks[k], q);
      for (std::size_t j = 0; j < out_dim; ++j) y[j] = (y[j] + yk[j]) % q;
    }
    map[idx] = static_cast<Elem>(encode_vector(y, q));
  }
  return CwlFunction::create(std::move(name), std::move(input_vars), std::move(groups), std::move(output_var),
                             vector_space_group(q, out_dim), std::move(map));
}

}  // namespace gnc
