#pragma once

// The `gnc` command line: parses inputs, runs verifications and conversions,
// and prints a deterministic text or JSON report.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnc/gnc.hpp"

namespace gnc::cli {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

inline int exit_code(Status s) { return s == Status::Pass ? 0 : s == Status::Fail ? 1 : 2; }

struct Stage {
  std::string name;
  bool ok = false;
  std::string detail;
  std::vector<std::string> lines;
  Json data = Json::object();
};

struct Report {
  std::string command;
  std::vector<Stage> stages;
  std::optional<std::string> error;

  Status status() const {
    if (error) return Status::Error;
    for (const auto& s : stages) {
      if (!s.ok) return Status::Fail;
    }
    return Status::Pass;
  }

  /// Runs `body(stage)`; a thrown gnc::Error other than a parse error fails
  /// the stage with its kind.
  template <class F>
  Stage& stage(std::string name, F&& body) {
    Stage s;
    s.name = std::move(name);
    try {
      s.ok = body(s);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      s.ok = false;
      s.detail = e.what();
      s.data["error"] = std::string(gnc::to_string(e.kind()));
    }
    stages.push_back(std::move(s));
    return stages.back();
  }
};

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class T>
std::string tuple_text(const std::vector<T>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.command << ": " << to_string(r.status()) << "\n";
  if (r.error) os << "  error: " << *r.error << "\n";
  for (const auto& s : r.stages) {
    os << "  [" << (s.ok ? "pass" : "FAIL") << "] " << s.name;
    if (!s.detail.empty()) os << ": " << s.detail;
    os << "\n";
    for (const auto& l : s.lines) os << "      " << l << "\n";
  }
  return os.str();
}

inline std::string render_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["status"] = std::string(to_string(r.status()));
  if (r.error) j["error"] = *r.error;
  j["stages"] = Json::array();
  for (const auto& s : r.stages) {
    Json st;
    st["stage"] = s.name;
    st["status"] = s.ok ? "pass" : "fail";
    st["detail"] = s.detail;
    if (!s.data.empty()) st["data"] = s.data;
    j["stages"].push_back(std::move(st));
  }
  return j.dump(2) + "\n";
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string subgroup_text(const Subgroup& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s.elements()[i]);
  return t + "}";
}

inline std::vector<std::string> matrix_lines(const Matrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::string row = "[";
    for (std::size_t j = 0; j < m.cols; ++j) row += (j ? " " : "") + std::to_string(m(i, j));
    out.push_back(row + "]");
  }
  return out;
}

inline std::vector<std::string> cwl_lines(const CwlFunction& f) {
  std::vector<std::string> out;
  std::string head = f.output_var + " = " + f.name + "(";
  for (std::size_t i = 0; i < f.input_vars.size(); ++i) head += (i ? ", " : "") + f.input_vars[i] + ":" + f.input_groups[i].label();
  out.push_back(head + ") in " + f.output_group.label());
  const auto rad = f.radices();
  for (std::size_t x = 0; x < f.domain_size(); ++x) out.push_back("  " + tuple_text(unrank(x, rad)) + " -> " + std::to_string(f.map[x]));
  return out;
}

inline std::string check_text(const CwlCheck& c) {
  std::string s = std::string("homomorphism=") + (c.homomorphism ? "yes" : "no") + " surjective=" + (c.surjective ? "yes" : "no") +
                  " abelian=" + (c.abelian ? "yes" : "no");
  if (c.witness) s += " witness=" + tuple_text(c.witness->first) + "," + tuple_text(c.witness->second);
  return s;
}

// ---------------------------------------------------------------------------
// Commands

inline void cmd_verify_group(Report& r, const std::string& path) {
  const auto text = read_file(path);
  std::optional<ParsedGroup> pg;
  r.stage("axioms", [&](Stage& s) {
    pg = parse_group_text(text);
    const auto& g = pg->group;
    s.detail = g.label() + " of order " + std::to_string(g.order()) + ", identity " + std::to_string(g.identity()) +
               (g.is_abelian() ? ", Abelian" : ", non-Abelian");
    s.data["order"] = g.order();
    s.data["abelian"] = g.is_abelian();
    return true;
  });
  if (!pg) return;
  for (const auto& [name, sub] : pg->subgroups) {
    r.stage("subgroup " + name, [&](Stage& s) {
      const bool normal = is_normal(pg->group, sub);
      s.detail = subgroup_text(sub) + " order " + std::to_string(sub.size()) + (normal ? ", normal" : ", not normal");
      s.data["normal"] = normal;
      return true;
    });
  }
}

inline void cmd_verify_cwl(Report& r, const std::string& path) {
  const auto fns = parse_cwl_text(read_file(path), std::filesystem::path(path).parent_path());
  for (const auto& f : fns) {
    r.stage("cwl " + f.name, [&](Stage& s) {
      const auto c = verify_cwl(f);
      s.detail = check_text(c);
      s.data["homomorphism"] = c.homomorphism;
      s.data["surjective"] = c.surjective;
      s.data["abelian"] = c.abelian;
      if (c.witness) s.data["witness"] = {c.witness->first, c.witness->second};
      return c.passes();
    });
  }
  if (fns.size() > 1) {
    r.stage("family", [&](Stage& s) {
      const auto fam = CwlFamily::from_functions(fns);
      bool shared = true;
      for (const auto& f : fam.functions) {
        for (std::size_t i = 0; i < f.input_vars.size(); ++i) shared = shared && fam.groups.at(f.input_vars[i]) == f.input_groups[i];
        shared = shared && fam.groups.at(f.output_var) == f.output_group;
      }
      const bool ok = check_consistent_cwl_family(fam);
      s.detail = !shared ? "inconsistent group assignment"
                 : ok    ? "consistent group assignment, every member CWL"
                         : "consistent group assignment, some member not CWL";
      return ok;
    });
  }
}

inline void cmd_verify_code(Report& r, const std::string& path) {
  const auto p = parse_instance_text(read_file(path));
  const auto& inst = p.instance;
  NetworkCode code = p.code;
  r.stage("instance", [&](Stage& s) {
    s.detail = std::to_string(inst.nodes().size()) + " nodes, " + std::to_string(inst.edges().size()) + " edges, " +
               std::to_string(inst.sources().size()) + " sources, " + std::to_string(inst.terminals().size()) + " terminals";
    std::vector<std::string> order;
    for (auto v : inst.topological_order()) order.push_back(inst.nodes()[v]);
    s.lines.push_back("topological order: " + join(order, " "));
    s.data["topological_order"] = order;
    return true;
  });
  r.stage("globals", [&](Stage& s) {
    if (!code.has_globals()) code = derive_globals(inst, code);
    s.detail = "derived for every edge over " + std::to_string(source_space_size(inst, code)) + " source tuples";
    for (const auto& w : capacity_warnings(inst, code)) s.lines.push_back("warning: " + w);
    return true;
  });
  if (!r.stages.back().ok) return;
  r.stage("decoding", [&](Stage& s) {
    const auto rep = verify_decoding(inst, code);
    if (rep.ok) {
      s.detail = "every terminal recovers its demands on every source tuple";
      return true;
    }
    const auto& f = *rep.failure;
    s.detail = "terminal " + f.terminal + " on source tuple " + tuple_text(f.source_tuple) + " decodes " + f.source + " as " +
               std::to_string(f.decoded) + ", expected " + std::to_string(f.expected);
    s.data["terminal"] = f.terminal;
    s.data["source_tuple"] = f.source_tuple;
    return false;
  });
}

enum class EntropyKind { Characterization, Code, Linear };

inline void cmd_entropy(Report& r, const std::string& path, const std::string& vars_arg, EntropyKind kind) {
  const auto text = read_file(path);
  auto subsets_for = [&](const std::vector<std::string>& all) {
    std::vector<std::vector<std::string>> out;
    if (!vars_arg.empty()) {
      out.push_back(split_list(vars_arg));
    } else {
      for (const auto& v : all) out.push_back({v});
      out.push_back(all);
    }
    return out;
  };
  auto record = [&](Stage& s, const std::vector<std::string>& vars, double formula, double brute, const std::string& how) {
    s.detail = "H(" + join(vars) + ") = " + fixed(formula) + " bits (" + how + "), brute force " + fixed(brute);
    s.data["formula_bits"] = formula;
    s.data["brute_force_bits"] = brute;
    return std::abs(formula - brute) <= 1e-9;
  };
  if (kind == EntropyKind::Characterization) {
    const auto ch = parse_characterization_text(text, std::filesystem::path(path).parent_path());
    std::vector<std::string> all;
    for (const auto& [v, _] : ch.assignment) all.push_back(v);
    for (const auto& vars : subsets_for(all)) {
      r.stage("entropy " + join(vars), [&](Stage& s) {
        const double formula = characterization_entropy(ch, vars);
        const auto d = induced_joint_distribution(ch, vars);
        s.data["quasi_uniform"] = is_quasi_uniform(d);
        return record(s, vars, formula, entropy_bits(d), "log2 |G|/|G_a|") && is_quasi_uniform(d);
      });
    }
  } else if (kind == EntropyKind::Code) {
    const auto p = parse_instance_text(text);
    if (!p.code.has_globals()) throw Error(ErrorKind::MissingLocal, "entropy needs a local table for every edge");
    std::vector<std::string> all;
    for (VarIndex v = 0; v < p.instance.num_vars(); ++v) all.push_back(p.instance.var_name(v));
    for (const auto& vars : subsets_for(all)) {
      r.stage("entropy " + join(vars), [&](Stage& s) {
        std::vector<VarIndex> ix;
        for (const auto& v : vars) ix.push_back(p.instance.require_var(v));
        const auto d = joint_distribution(p.instance, p.code, ix);
        const double h = entropy_bits(d);
        s.detail = "H(" + join(vars) + ") = " + fixed(h) + " bits over " + std::to_string(d.support.size()) + " outcomes";
        s.data["bits"] = h;
        return true;
      });
    }
  } else {
    auto p = parse_linear_text(text);
    auto code = p.code;
    const bool have_globals = std::all_of(code.global.begin(), code.global.end(), [](const auto& g) { return g.has_value(); });
    if (!have_globals) code = linear_local_to_global(p.instance, code);
    std::vector<std::string> all;
    for (VarIndex v = 0; v < p.instance.num_vars(); ++v) all.push_back(p.instance.var_name(v));
    auto table = to_table_code(p.instance, code);
    for (auto& l : table.local) l.reset();
    for (const auto& vars : subsets_for(all)) {
      r.stage("entropy " + join(vars), [&](Stage& s) {
        std::vector<VarIndex> ix;
        for (const auto& v : vars) ix.push_back(p.instance.require_var(v));
        const double formula = linear_entropy_bits(p.instance, code, ix);
        return record(s, vars, formula, entropy_bits(joint_distribution(p.instance, table, ix)), "rank of stacked globals");
      });
    }
  }
}

inline void cmd_linear(Report& r, const std::string& path, bool l2g) {
  const auto p = parse_linear_text(read_file(path));
  const auto& inst = p.instance;
  std::optional<LinearCode> out;
  r.stage(l2g ? "local to global" : "global to local", [&](Stage& s) {
    out = l2g ? linear_local_to_global(inst, p.code) : linear_global_to_local(inst, p.code);
    s.detail = "GF(" + std::to_string(p.code.q) + ") code on " + std::to_string(inst.edges().size()) + " edges";
    for (std::size_t e = 0; e < inst.edges().size(); ++e) {
      const auto& id = inst.edges()[e].id;
      if (l2g) {
        s.lines.push_back("N_" + id + " =");
        for (auto& l : matrix_lines(*out->global[e])) s.lines.push_back("  " + l);
      } else {
        const auto inputs = inst.edge_inputs(e);
        for (std::size_t k = 0; k < inputs.size(); ++k) {
          s.lines.push_back("M_" + inst.var_name(inputs[k]) + "->" + id + " =");
          for (auto& l : matrix_lines((*out->local[e])[k])) s.lines.push_back("  " + l);
        }
      }
    }
    return true;
  });
  if (!out) return;
  r.stage("cross-check", [&](Stage& s) {
    if (l2g) {
      auto derived = to_table_code(inst, *out);
      auto via_tables = derived;
      for (auto& g : via_tables.global) g.reset();
      via_tables = derive_globals(inst, via_tables);
      const bool ok = via_tables.global == derived.global;
      s.detail = ok ? "matrix globals equal table-derived globals on every source tuple" : "matrix and table globals differ";
      return ok;
    }
    const auto back = linear_local_to_global(inst, *out);
    bool ok = true;
    for (std::size_t e = 0; e < inst.edges().size(); ++e) ok &= back.global[e] == p.code.global[e];
    s.detail = ok ? "recovered locals recompose to the given globals" : "recovered locals do not recompose";
    return ok;
  });
}

inline std::vector<std::string> source_names(const NetworkInstance& inst) {
  std::vector<std::string> out;
  for (auto v : source_vars(inst)) out.push_back(inst.var_name(v));
  return out;
}

inline void cmd_char_to_cwl(Report& r, const std::string& inst_path, const std::string& char_path) {
  const auto inst = parse_instance_text(read_file(inst_path)).instance;
  const auto ch = parse_characterization_text(read_file(char_path), std::filesystem::path(char_path).parent_path());
  const auto srcs = source_names(inst);
  for (const auto& e : inst.edges()) {
    r.stage("edge " + e.id, [&](Stage& s) {
      const auto res = abelian_char_to_cwl(ch, srcs, e.id);
      const auto c = verify_cwl(res.function);
      s.detail = check_text(c);
      s.lines = cwl_lines(res.function);
      return c.passes() && res.singleton_intersections;
    });
  }
}

inline void cmd_cwl_to_char(Report& r, const std::string& path) {
  const auto fns = parse_cwl_text(read_file(path), std::filesystem::path(path).parent_path());
  for (const auto& f : fns) {
    r.stage("cwl " + f.name, [&](Stage& s) {
      const auto res = cwl_to_characterization(f);
      const bool same = characterization_reproduces(f, res);
      s.detail = "G = " + res.characterization.group.label() + " of order " + std::to_string(res.characterization.group.order()) +
                 (same ? ", joint distribution reproduced" : ", joint distribution differs");
      for (const auto& [v, sub] : res.characterization.assignment) s.lines.push_back("G_" + v + " = " + subgroup_text(sub));
      for (std::size_t i = 0; i < res.psi_sources.size(); ++i) {
        s.lines.push_back("psi_" + f.input_vars[i] + " = " + tuple_text(res.psi_sources[i].map()));
      }
      s.lines.push_back("psi_" + f.output_var + " = " + tuple_text(res.psi_edge.map()));
      return same;
    });
  }
}

inline void cmd_compose(Report& r, const std::string& inst_path, const std::string& cwl_path) {
  const auto inst = parse_instance_text(read_file(inst_path)).instance;
  const auto fam = CwlFamily::from_functions(parse_cwl_text(read_file(cwl_path), std::filesystem::path(cwl_path).parent_path()));
  std::optional<GlobalCwlResult> res;
  r.stage("compose", [&](Stage& s) {
    res = local_cwl_to_global_cwl(inst, fam);
    s.detail = std::to_string(res->family.functions.size()) + " global functions";
    return true;
  });
  if (!res) return;
  for (std::size_t e = 0; e < res->family.functions.size(); ++e) {
    r.stage("global " + inst.edges()[e].id, [&](Stage& s) {
      s.detail = check_text(res->checks[e]);
      s.lines = cwl_lines(res->family.functions[e]);
      return res->checks[e].passes();
    });
  }
}

inline void cmd_localize(Report& r, const std::string& inst_path, const std::string& cwl_path, bool parallel) {
  const auto inst = parse_instance_text(read_file(inst_path)).instance;
  const auto fam = CwlFamily::from_functions(parse_cwl_text(read_file(cwl_path), std::filesystem::path(cwl_path).parent_path()));
  std::optional<LocalCwlResult> res;
  r.stage("localize", [&](Stage& s) {
    res = global_cwl_to_local_cwl(inst, fam, parallel);
    s.detail = std::to_string(res->family.functions.size()) + " local functions recompose to the given globals";
    return true;
  });
  if (!res) return;
  for (std::size_t e = 0; e < res->family.functions.size(); ++e) {
    const auto& x = res->extensions[e];
    r.stage("local " + x.edge, [&](Stage& s) {
      s.detail = "image subgroup of order " + std::to_string(x.image_order) + " in " + std::to_string(x.input_order) +
                 ", extended by " + std::string(to_string(x.strategy));
      s.lines = cwl_lines(res->family.functions[e]);
      return true;
    });
  }
}

inline void append_roundtrip(Report& r, const RoundTripReport& rt) {
  for (const auto& st : rt.stages) {
    Stage s;
    s.name = st.stage;
    s.ok = st.ok;
    s.detail = st.detail;
    if (st.error) s.data["error"] = std::string(gnc::to_string(*st.error));
    r.stages.push_back(std::move(s));
  }
}

inline void cmd_roundtrip(Report& r, const std::string& inst_path, const std::string& char_path, bool parallel) {
  const auto inst = parse_instance_text(read_file(inst_path)).instance;
  const auto ch = parse_characterization_text(read_file(char_path), std::filesystem::path(char_path).parent_path());
  append_roundtrip(r, abelian_roundtrip(inst, ch, {parallel, ProbeMode::Default}));
}

inline void cmd_demo_butterfly(Report& r, bool parallel) {
  const auto inst = butterfly_instance();
  const auto code = butterfly_xor_code(inst);
  r.stage("instance", [&](Stage& s) {
    s.detail = std::to_string(inst.nodes().size()) + " nodes, " + std::to_string(inst.edges().size()) + " edges; e3 is the bottleneck";
    return true;
  });
  r.stage("decoding", [&](Stage& s) {
    const auto rep = verify_decoding(inst, code);
    s.detail = rep.ok ? "t1 and t2 recover (s1,s2) on all " + std::to_string(source_space_size(inst, code)) + " source tuples"
                      : "decoding fails at terminal " + rep.failure->terminal;
    return rep.ok;
  });
  auto h = [&](std::vector<std::string> vars, double want) {
    r.stage("entropy " + join(vars), [&](Stage& s) {
      std::vector<VarIndex> ix;
      for (const auto& v : vars) ix.push_back(inst.require_var(v));
      const double bits = entropy_bits(joint_distribution(inst, code, ix));
      s.detail = "H = " + fixed(bits) + " bits";
      s.data["bits"] = bits;
      return std::abs(bits - want) <= 1e-9;
    });
  };
  h({"s1"}, 1.0);
  h({"e3"}, 1.0);
  h({"s1", "s2"}, 2.0);
  const auto rt = abelian_roundtrip(inst, butterfly_characterization(), {parallel, ProbeMode::Powerset});
  append_roundtrip(r, rt);
}

inline void cmd_survey(Report& r, std::size_t max_order, const std::string& targets_arg) {
  std::vector<std::size_t> targets = default_survey_targets();
  if (!targets_arg.empty()) {
    targets.clear();
    for (const auto& t : split_list(targets_arg)) {
      std::string n = t;
      if (!n.empty() && n[0] == 'Z') n.erase(0, 1);
      targets.push_back(parse_count(n, 0));
    }
  }
  if (max_order > kSurveyMaxOrder) throw Error(ErrorKind::OrderCapExceeded, "max order above " + std::to_string(kSurveyMaxOrder));
  const auto sum = extension_survey(max_order, targets);
  r.stage("survey", [&](Stage& s) {
    std::vector<std::string> ts;
    for (auto t : targets) ts.push_back("Z" + std::to_string(t));
    s.detail = std::to_string(sum.groups) + " groups, " + std::to_string(sum.subgroups) + " subgroups, " + std::to_string(sum.triples) +
               " homomorphisms into {" + join(ts) + "}";
    s.lines.push_back("extended: " + std::to_string(sum.successes) + " (complement " + std::to_string(sum.by_complement) +
                      ", search " + std::to_string(sum.by_search) + ")");
    s.lines.push_back("no extension: " + std::to_string(sum.failures.size()));
    s.data["groups"] = sum.groups;
    s.data["subgroups"] = sum.subgroups;
    s.data["triples"] = sum.triples;
    s.data["successes"] = sum.successes;
    s.data["by_complement"] = sum.by_complement;
    s.data["by_search"] = sum.by_search;
    s.data["failures"] = Json::array();
    for (const auto& f : sum.failures) {
      s.lines.push_back("  " + f.describe());
      s.data["failures"].push_back(f.describe());
    }
    return true;
  });
  r.stage("complement construction", [&](Stage& s) {
    s.detail = sum.complement_construction_failures == 0
                   ? "every subgroup with a complement extended by the complement construction"
                   : std::to_string(sum.complement_construction_failures) + " complement constructions failed";
    return sum.complement_construction_failures == 0;
  });
}

// ---------------------------------------------------------------------------

/// Parses argv, runs one subcommand and prints its report to `out`.
/// Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group network codes: verification and conversion toolkit", "gnc"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  bool parallel = false;
  app.add_flag("--json", json, "Print the structured JSON report");
  app.add_flag("--parallel", parallel, "Run per-edge stages concurrently");

  std::string file, file2, vars, kind = "char", targets, which;
  std::size_t max_order = 16;

  auto* vg = app.add_subcommand("verify-group", "Check the group axioms of a group file");
  vg->add_option("file", file, "Group file")->required();
  auto* vc = app.add_subcommand("verify-cwl", "Check CWL functions exhaustively");
  vc->add_option("file", file, "CWL file")->required();
  auto* vcode = app.add_subcommand("verify-code", "Derive globals and check decoding of a network code");
  vcode->add_option("file", file, "Instance file with local tables and decoders")->required();
  auto* en = app.add_subcommand("entropy", "Entropies by formula and by brute force");
  en->add_option("file", file, "Characterization, instance or linear-code file")->required();
  en->add_option("--vars", vars, "Comma-separated variables (default: each variable and all of them)");
  en->add_option("--kind", kind, "Input kind")->check(CLI::IsMember({"char", "code", "linear"}));
  auto* cv = app.add_subcommand("convert", "Run one conversion");
  cv->add_option("conversion", which, "Conversion")
      ->required()
      ->check(CLI::IsMember({"thm1-l2g", "thm1-g2l", "thm4", "thm5", "thm6", "thm7", "cor1"}));
  cv->add_option("file", file, "Linear code, instance or CWL file")->required();
  cv->add_option("file2", file2, "Characterization or CWL family file");
  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  std::string demo_name;
  demo->add_option("name", demo_name, "Demo name")->required()->check(CLI::IsMember({"butterfly"}));
  auto* sv = app.add_subcommand("lemma2-survey", "Survey homomorphism extension over small Abelian groups");
  sv->add_option("--max-order", max_order, "Largest group order")->default_val(16);
  sv->add_option("--targets", targets, "Comma-separated target cyclic orders (default 2..8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report r;
  try {
    if (vg->parsed()) {
      r.command = "verify-group";
      cmd_verify_group(r, file);
    } else if (vc->parsed()) {
      r.command = "verify-cwl";
      cmd_verify_cwl(r, file);
    } else if (vcode->parsed()) {
      r.command = "verify-code";
      cmd_verify_code(r, file);
    } else if (en->parsed()) {
      r.command = "entropy";
      cmd_entropy(r, file, vars,
                  kind == "code" ? EntropyKind::Code : kind == "linear" ? EntropyKind::Linear : EntropyKind::Characterization);
    } else if (cv->parsed()) {
      r.command = "convert " + which;
      const bool needs_two = which == "thm4" || which == "thm6" || which == "thm7" || which == "cor1";
      if (needs_two && file2.empty()) throw CLI::ValidationError("convert " + which, "needs a second input file");
      if (which == "thm1-l2g" || which == "thm1-g2l") cmd_linear(r, file, which == "thm1-l2g");
      if (which == "thm4") cmd_char_to_cwl(r, file, file2);
      if (which == "thm5") cmd_cwl_to_char(r, file);
      if (which == "thm6") cmd_compose(r, file, file2);
      if (which == "thm7") cmd_localize(r, file, file2, parallel);
      if (which == "cor1") cmd_roundtrip(r, file, file2, parallel);
    } else if (demo->parsed()) {
      r.command = "demo " + demo_name;
      cmd_demo_butterfly(r, parallel);
    } else if (sv->parsed()) {
      r.command = "lemma2-survey";
      cmd_survey(r, max_order, targets);
    }
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  out << (json ? render_json(r) : render_text(r));
  return exit_code(r.status());
}

}  // namespace gnc::cli
