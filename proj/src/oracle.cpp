#include "archmon/oracle.hpp"

#include <algorithm>
#include <set>

namespace archmon::oracle {

using model::ArchSnapshot;
using model::ArchTrace;
using spec::AstKind;
using spec::AstNode;

namespace {

// Positions of the normalized lasso. A snapshot's history (needed for the
// becomes-active atom) can differ between the first pass through the loop
// and the replays, so the word is laid out as prefix + one explicit loop
// pass; from there on it is truly periodic.
struct Positions {
  std::vector<size_t> snap;        // position -> snapshot index
  std::vector<ptrdiff_t> prev;     // position -> previous snapshot index (-1 at 0)
  size_t loop = 0;                 // positions wrap back to this index

  size_t next(size_t i) const { return i + 1 < snap.size() ? i + 1 : loop; }
  size_t size() const { return snap.size(); }
};

Positions layout(const ArchTrace& trace) {
  if (!trace.loop_start || *trace.loop_start >= trace.steps.size())
    throw OracleError("OPEN_TRACE", "assertion evaluation needs a lasso-closed trace");
  size_t len = trace.steps.size();
  size_t start = *trace.loop_start;
  Positions p;
  for (size_t i = 0; i < len; ++i) {
    p.snap.push_back(i);
    p.prev.push_back(static_cast<ptrdiff_t>(i) - 1);
  }
  // second pass of the loop, with loop-back history
  for (size_t j = start; j < len; ++j) {
    p.snap.push_back(j);
    p.prev.push_back(j == start ? static_cast<ptrdiff_t>(len - 1)
                                : static_cast<ptrdiff_t>(j) - 1);
  }
  p.loop = len;
  return p;
}

struct Evaluator {
  const spec::AssertionDecl& assertion;
  const ArchTrace& trace;
  const Valuation& valuation;
  const spec::SpecDocument& doc;
  Positions pos;

  std::string value_of(const std::string& var) const {
    auto it = valuation.find(var);
    if (it == valuation.end())
      throw OracleError("UNBOUND_VAR", "valuation misses variable '" + var + "'");
    return it->second;
  }

  bool atom_at(const AstNode& atom, size_t position) const {
    const ArchSnapshot& snap = trace.steps[pos.snap[position]];
    switch (atom.kind) {
      case AstKind::ComponentActive: {
        std::string inst = value_of(atom.comp_var);
        if (!snap.is_active(inst)) return false;
        ptrdiff_t prev = pos.prev[position];
        return prev < 0 || !trace.steps[static_cast<size_t>(prev)].is_active(inst);
      }
      case AstKind::PortActive: {
        auto it = snap.valuations.find(model::PortRef{value_of(atom.comp_var), atom.port});
        return it != snap.valuations.end() && !it->second.empty();
      }
      case AstKind::PortValuation: {
        std::string inst = value_of(atom.comp_var);
        const model::ComponentId* comp = snap.find_instance(inst);
        if (!comp) return false;
        const spec::ComponentType* ct = doc.find_type(comp->type);
        if (!ct) return false;
        const spec::PortDecl* port = ct->find_port(atom.port);
        if (!port || port->signature.size() != atom.terms.size()) return false;
        model::MessageTuple tuple;
        for (size_t i = 0; i < atom.terms.size(); ++i) {
          const spec::Term& term = atom.terms[i];
          std::string literal = term.kind == spec::Term::Kind::Var
                                    ? value_of(term.text)
                                    : model::canonical_literal(term.text);
          tuple.push_back(model::MessageValue{port->signature[i], std::move(literal)});
        }
        auto it = snap.valuations.find(model::PortRef{inst, atom.port});
        if (it == snap.valuations.end()) return false;
        return std::find(it->second.begin(), it->second.end(), tuple) != it->second.end();
      }
      case AstKind::Connected: {
        model::PortRef input{value_of(atom.dst_var), atom.dst_port};
        model::PortRef output{value_of(atom.comp_var), atom.port};
        auto conn = snap.connections.find(input);
        if (conn == snap.connections.end() || !conn->second.count(output)) return false;
        auto val = snap.valuations.find(output);
        return val != snap.valuations.end() && !val->second.empty();
      }
      default: return false;
    }
  }

  // Truth vector of a subformula over all positions.
  std::vector<char> eval(const AstNode& node) const {
    size_t n = pos.size();
    std::vector<char> r(n, 0);
    switch (node.kind) {
      case AstKind::True: std::fill(r.begin(), r.end(), 1); return r;
      case AstKind::False: return r;
      case AstKind::Not: {
        std::vector<char> a = eval(node.children[0]);
        for (size_t i = 0; i < n; ++i) r[i] = !a[i];
        return r;
      }
      case AstKind::And:
      case AstKind::Or:
      case AstKind::Implies: {
        std::vector<char> a = eval(node.children[0]);
        std::vector<char> b = eval(node.children[1]);
        for (size_t i = 0; i < n; ++i)
          r[i] = node.kind == AstKind::And  ? (a[i] && b[i])
                 : node.kind == AstKind::Or ? (a[i] || b[i])
                                            : (!a[i] || b[i]);
        return r;
      }
      case AstKind::Next: {
        std::vector<char> a = eval(node.children[0]);
        for (size_t i = 0; i < n; ++i) r[i] = a[pos.next(i)];
        return r;
      }
      case AstKind::Globally:
      case AstKind::Eventually: {
        std::vector<char> a = eval(node.children[0]);
        bool exists = node.kind == AstKind::Eventually;
        // value over the cycle [loop, n)
        bool cycle = !exists;
        for (size_t i = pos.loop; i < n; ++i)
          cycle = exists ? (cycle || a[i]) : (cycle && a[i]);
        for (size_t k = n; k-- > 0;) {
          bool nxt = k + 1 < n ? r[k + 1] : cycle;
          if (k + 1 == n) nxt = cycle;
          r[k] = exists ? (a[k] || nxt) : (a[k] && nxt);
        }
        // positions in the cycle must fold the whole cycle, not just their
        // suffix
        for (size_t i = pos.loop; i < n; ++i) r[i] = exists ? (r[i] || cycle) : (r[i] && cycle);
        return r;
      }
      case AstKind::Until:
      case AstKind::WeakUntil: {
        std::vector<char> a = eval(node.children[0]);
        std::vector<char> b = eval(node.children[1]);
        bool weak = node.kind == AstKind::WeakUntil;
        for (size_t i = 0; i < n; ++i) {
          size_t j = i;
          char result = weak ? 1 : 0;  // full walk without !a or b
          for (size_t steps = 0; steps < n; ++steps) {
            if (b[j]) { result = 1; break; }
            if (!a[j]) { result = 0; break; }
            j = pos.next(j);
          }
          r[i] = result;
        }
        return r;
      }
      default: {
        for (size_t i = 0; i < n; ++i) r[i] = atom_at(node, i);
        return r;
      }
    }
  }
};

}  // namespace

bool eval_assertion(const spec::AssertionDecl& assertion, const ArchTrace& trace,
                    const Valuation& valuation, size_t at, const spec::SpecDocument& doc) {
  Evaluator ev{assertion, trace, valuation, doc, layout(trace)};
  std::vector<char> truth = ev.eval(assertion.body);
  if (at >= truth.size())
    at = ev.pos.loop + (at - ev.pos.loop) % (truth.size() - ev.pos.loop);
  return truth[at] != 0;
}

std::vector<Valuation> enumerate_bindings(const spec::AssertionDecl& assertion,
                                          const ArchTrace& trace,
                                          const spec::SpecDocument& doc,
                                          const EnumerateOptions& options) {
  // candidate pools
  std::vector<std::vector<std::string>> pools;
  for (const spec::VarDecl& var : assertion.variables) {
    std::set<std::string> pool;
    if (doc.find_type(var.type_name) != nullptr) {
      for (const ArchSnapshot& snap : trace.steps)
        for (const model::ComponentId& c : snap.active)
          if (c.type == var.type_name) pool.insert(c.instance);
    } else {
      for (const ArchSnapshot& snap : trace.steps)
        for (const auto& [ref, tuples] : snap.valuations)
          for (const model::MessageTuple& tuple : tuples)
            for (const model::MessageValue& v : tuple)
              if (v.sort == var.type_name) pool.insert(v.literal);
    }
    pools.emplace_back(pool.begin(), pool.end());
  }

  size_t total = 1;
  for (const auto& pool : pools) {
    if (pool.empty()) return {};
    total *= pool.size();
    if (total > options.budget)
      throw OracleError("BUDGET_EXCEEDED",
                        "binding enumeration exceeds the cap of " +
                            std::to_string(options.budget));
  }

  std::vector<Valuation> out;
  std::vector<size_t> odometer(pools.size(), 0);
  while (true) {
    Valuation v;
    for (size_t i = 0; i < pools.size(); ++i)
      v.emplace(assertion.variables[i].name, pools[i][odometer[i]]);
    out.push_back(std::move(v));
    size_t k = pools.size();
    while (k > 0) {
      --k;
      if (++odometer[k] < pools[k].size()) break;
      odometer[k] = 0;
      if (k == 0) return out;
    }
    if (pools.empty()) return out;
  }
}

}  // namespace archmon::oracle
