#include "support/generators.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace archmon::testsupport {

using ltl::Arena;
using ltl::Formula;
using ltl::Op;

std::vector<Formula> enumerate_formulas(Arena& arena, const std::vector<Formula>& leaves,
                                        size_t depth) {
  std::vector<Formula> current = leaves;
  std::set<const ltl::Node*> seen(leaves.begin(), leaves.end());
  std::vector<Formula> all = leaves;
  const Op unary[] = {Op::Not, Op::Next, Op::Globally, Op::Eventually};
  const Op binary[] = {Op::And, Op::Or, Op::Implies, Op::Until, Op::WeakUntil};
  for (size_t level = 1; level < depth; ++level) {
    std::vector<Formula> fresh;
    for (Op op : unary)
      for (Formula f : all) {
        Formula g = arena.mk(op, f);
        if (seen.insert(g).second) fresh.push_back(g);
      }
    for (Op op : binary)
      for (Formula a : all)
        for (Formula b : all) {
          Formula g = arena.mk(op, a, b);
          if (seen.insert(g).second) fresh.push_back(g);
        }
    all.insert(all.end(), fresh.begin(), fresh.end());
  }
  return all;
}

Formula random_formula(Arena& arena, TestRng& rng, const std::vector<Formula>& atoms,
                       size_t depth) {
  if (depth <= 1 || rng.flip(0.25)) {
    size_t n = atoms.size() + 2;
    size_t k = rng.pick(n);
    if (k < atoms.size()) return atoms[k];
    return k == atoms.size() ? arena.tt() : arena.ff();
  }
  const Op unary[] = {Op::Not, Op::Next, Op::Globally, Op::Eventually};
  const Op binary[] = {Op::And, Op::Or, Op::Implies, Op::Until, Op::WeakUntil};
  if (rng.flip(0.45)) {
    return arena.mk(unary[rng.pick(4)], random_formula(arena, rng, atoms, depth - 1));
  }
  return arena.mk(binary[rng.pick(5)], random_formula(arena, rng, atoms, depth - 1),
                  random_formula(arena, rng, atoms, depth - 1));
}

spec::SpecDocument random_spec(TestRng& rng, size_t assertions) {
  spec::SpecDocument doc;
  doc.sorts = {spec::DataSort{"String"}, spec::DataSort{"Integer"}};

  const std::string sorts[] = {"String", "Integer"};
  std::string shared_port = rng.flip(0.5) ? "push" : "fwd";
  std::string shared_sort = sorts[rng.pick(2)];

  // Source: a trigger input plus an output whose name recurs as an input on
  // Sink, so connection events exist.
  spec::ComponentType source;
  source.name = "Source";
  spec::PortDecl trig;
  trig.name = "start";
  trig.direction = spec::PortDirection::Input;
  trig.signature = {sorts[rng.pick(2)]};
  if (rng.flip(0.5)) trig.signature.push_back(sorts[rng.pick(2)]);
  source.ports.push_back(trig);
  source.ports.push_back(
      spec::PortDecl{shared_port, spec::PortDirection::Output, {shared_sort}});
  if (rng.flip(0.4))
    source.ports.push_back(
        spec::PortDecl{"emit", spec::PortDirection::Output, {sorts[rng.pick(2)]}});
  doc.component_types.push_back(source);

  spec::ComponentType sink;
  sink.name = "Sink";
  sink.ports.push_back(spec::PortDecl{shared_port, spec::PortDirection::Input, {shared_sort}});
  if (rng.flip(0.4))
    sink.ports.push_back(
        spec::PortDecl{"pull", spec::PortDirection::Input, {sorts[rng.pick(2)]}});
  doc.component_types.push_back(sink);

  if (rng.flip(0.3)) {
    spec::ComponentType extra;
    extra.name = "Relay";
    extra.ports.push_back(
        spec::PortDecl{shared_port, spec::PortDirection::Input, {shared_sort}});
    extra.ports.push_back(
        spec::PortDecl{"emit", spec::PortDirection::Output, {sorts[rng.pick(2)]}});
    doc.component_types.push_back(extra);
  }

  for (size_t ai = 0; ai < assertions; ++ai) {
    spec::AssertionDecl a;
    a.name = "A" + std::to_string(ai);
    a.variables.push_back(spec::VarDecl{"c", "Source"});
    spec::AstNode trigger;
    trigger.kind = spec::AstKind::PortValuation;
    trigger.comp_var = "c";
    trigger.port = "start";
    for (size_t i = 0; i < trig.signature.size(); ++i) {
      std::string var = "x" + std::to_string(i);
      a.variables.push_back(spec::VarDecl{var, trig.signature[i]});
      trigger.terms.push_back(spec::Term{spec::Term::Kind::Var, var});
    }

    std::vector<spec::AstNode> obligations;
    size_t count = 1 + rng.pick(3);
    bool used_sink_var = false;
    for (size_t oi = 0; oi < count; ++oi) {
      size_t delay = 1 + rng.pick(3);
      spec::AstNode atom;
      switch (rng.pick(4)) {
        case 0: {
          if (!used_sink_var) {
            a.variables.push_back(spec::VarDecl{"k", "Sink"});
            used_sink_var = true;
            atom.kind = spec::AstKind::ComponentActive;
            atom.comp_var = "k";
            break;
          }
          [[fallthrough]];
        }
        case 1: {
          atom.kind = spec::AstKind::PortValuation;
          atom.comp_var = "c";
          atom.port = shared_port;
          if (shared_sort == trig.signature[0] && rng.flip(0.6)) {
            atom.terms.push_back(spec::Term{spec::Term::Kind::Var, "x0"});
          } else if (shared_sort == "Integer") {
            atom.terms.push_back(
                spec::Term{spec::Term::Kind::IntLit, std::to_string(rng.pick(9) + 1)});
          } else {
            atom.terms.push_back(
                spec::Term{spec::Term::Kind::StrLit, "v" + std::to_string(rng.pick(5))});
          }
          break;
        }
        case 2: {
          if (used_sink_var) {
            atom.kind = spec::AstKind::Connected;
            atom.comp_var = "c";
            atom.port = shared_port;
            atom.dst_var = "k";
            atom.dst_port = shared_port;
            break;
          }
          [[fallthrough]];
        }
        default: {
          atom.kind = spec::AstKind::PortActive;
          atom.comp_var = "c";
          atom.port = shared_port;
          break;
        }
      }
      spec::AstNode wrapped = atom;
      for (size_t d = 0; d < delay; ++d) {
        spec::AstNode next;
        next.kind = spec::AstKind::Next;
        next.children.push_back(std::move(wrapped));
        wrapped = std::move(next);
      }
      // occasional unplayable variety
      if (rng.flip(0.2)) {
        spec::AstNode ev;
        ev.kind = rng.flip(0.5) ? spec::AstKind::Eventually : spec::AstKind::Not;
        ev.children.push_back(std::move(wrapped));
        wrapped = std::move(ev);
      }
      obligations.push_back(std::move(wrapped));
    }

    spec::AstNode body = std::move(obligations[0]);
    for (size_t i = 1; i < obligations.size(); ++i) {
      spec::AstNode conj;
      conj.kind = spec::AstKind::And;
      conj.children.push_back(std::move(body));
      conj.children.push_back(std::move(obligations[i]));
      body = std::move(conj);
    }

    spec::AstNode imp;
    imp.kind = spec::AstKind::Implies;
    imp.children.push_back(trigger);
    imp.children.push_back(std::move(body));
    spec::AstNode g;
    g.kind = spec::AstKind::Globally;
    g.children.push_back(std::move(imp));
    a.body = std::move(g);
    doc.assertions.push_back(std::move(a));
  }
  return doc;
}

RunResult run_command(const std::string& command, const std::string& stdin_text) {
  static int counter = 0;
  std::string base = "/tmp/archmon_t" + std::to_string(getpid()) + "_" +
                     std::to_string(counter++);
  std::string in_path = base + ".in";
  std::string out_path = base + ".out";
  {
    std::ofstream f(in_path, std::ios::binary);
    f << stdin_text;
  }
  std::string full = command + " < " + in_path + " > " + out_path + " 2> " + base + ".err";
  int rc = std::system(full.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream out(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << out.rdbuf();
  result.out = ss.str();
  std::remove(in_path.c_str());
  std::remove(out_path.c_str());
  std::remove((base + ".err").c_str());
  return result;
}

std::string data_path(const std::string& name) { return std::string(ARCHMON_DATA_DIR) + "/" + name; }

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace archmon::testsupport
