#include "archmon/monitor.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace archmon::monitor {

using ltl::Arena;
using ltl::Formula;
using ltl::Node;
using ltl::Op;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Top: return "TOP";
    case Verdict::Bottom: return "BOTTOM";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

uint32_t MonitorAutomaton::step(uint32_t state, Letter l) const {
  for (const Transition& t : states[state].transitions)
    if (t.matches(l)) return t.target;
  assert(false && "transition relation must be total");
  return state;
}

Verdict MonitorAutomaton::run(const std::vector<Letter>& word) const {
  uint32_t s = initial;
  for (Letter l : word) s = step(s, l);
  return verdict_of(s);
}

namespace {

// ---------------------------------------------------------------------------
// Tableau construction of a nondeterministic omega automaton.
//
// States are obligation sets (conjunctions of NNF formulas that must hold
// from the current step). Transition guards are literal cubes; acceptance is
// transition-based: for each until/eventually subformula, a fair run must
// infinitely often take a transition that does not postpone it.
// ---------------------------------------------------------------------------

using NodeSet = std::vector<const Node*>;  // sorted by arena id

void sorted_insert(NodeSet& set, const Node* n) {
  auto it = std::lower_bound(set.begin(), set.end(), n,
                             [](const Node* a, const Node* b) { return a->id < b->id; });
  if (it == set.end() || *it != n) set.insert(it, n);
}

struct Branch {
  Letter pos = 0;
  Letter neg = 0;
  NodeSet next;
  NodeSet postponed;  // until/eventually nodes delayed on this transition
  std::vector<const Node*> pending;
  NodeSet processed;
};

struct NbaTransition {
  Letter pos = 0;
  Letter neg = 0;
  uint32_t target = 0;
  NodeSet postponed;
};

struct Nba {
  std::vector<NodeSet> states;
  std::vector<std::vector<NbaTransition>> delta;
  std::vector<NodeSet> untils;  // placeholder; the until universe lives below
  uint32_t initial = 0;
};

std::vector<uint32_t> node_ids(const NodeSet& set) {
  std::vector<uint32_t> out;
  out.reserve(set.size());
  for (const Node* n : set) out.push_back(n->id);
  return out;
}

struct TableauBuilder {
  Arena& arena;
  const std::unordered_map<int32_t, int>& atom_bit;

  std::map<std::vector<uint32_t>, uint32_t> index;
  Nba nba;

  uint32_t intern(const NodeSet& set) {
    std::vector<uint32_t> key = node_ids(set);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(nba.states.size());
    index.emplace(std::move(key), id);
    nba.states.push_back(set);
    nba.delta.emplace_back();
    return id;
  }

  int bit_of(int32_t atom_id) const {
    auto it = atom_bit.find(atom_id);
    return it == atom_bit.end() ? -1 : it->second;
  }

  // Expands one obligation set into elementary branches.
  std::vector<Branch> expand(const NodeSet& obligations) {
    std::vector<Branch> done;
    std::vector<Branch> work;
    Branch seed;
    seed.pending.assign(obligations.begin(), obligations.end());
    work.push_back(std::move(seed));

    while (!work.empty()) {
      Branch b = std::move(work.back());
      work.pop_back();
      bool dead = false;
      while (!b.pending.empty() && !dead) {
        const Node* n = b.pending.back();
        b.pending.pop_back();
        if (std::binary_search(b.processed.begin(), b.processed.end(), n,
                               [](const Node* a, const Node* c) { return a->id < c->id; }))
          continue;
        sorted_insert(b.processed, n);
        switch (n->op) {
          case Op::True: break;
          case Op::False: dead = true; break;
          case Op::Atom: {
            int bit = bit_of(n->atom);
            if (bit < 0) { dead = true; break; }
            Letter m = Letter{1} << bit;
            if (b.neg & m) { dead = true; break; }
            b.pos |= m;
            break;
          }
          case Op::Not: {
            assert(n->lhs->op == Op::Atom && "tableau input must be in NNF");
            int bit = bit_of(n->lhs->atom);
            if (bit < 0) break;  // unknown atom is constantly false; !atom holds
            Letter m = Letter{1} << bit;
            if (b.pos & m) { dead = true; break; }
            b.neg |= m;
            break;
          }
          case Op::And:
            b.pending.push_back(n->lhs);
            b.pending.push_back(n->rhs);
            break;
          case Op::Or: {
            Branch alt = b;
            alt.pending.push_back(n->rhs);
            work.push_back(std::move(alt));
            b.pending.push_back(n->lhs);
            break;
          }
          case Op::Next: sorted_insert(b.next, n->lhs); break;
          case Op::Globally:
            b.pending.push_back(n->lhs);
            sorted_insert(b.next, n);
            break;
          case Op::Eventually: {
            Branch alt = b;
            sorted_insert(alt.next, n);
            sorted_insert(alt.postponed, n);
            work.push_back(std::move(alt));
            b.pending.push_back(n->lhs);
            break;
          }
          case Op::Until: {
            Branch alt = b;
            alt.pending.push_back(n->lhs);
            sorted_insert(alt.next, n);
            sorted_insert(alt.postponed, n);
            work.push_back(std::move(alt));
            b.pending.push_back(n->rhs);
            break;
          }
          case Op::WeakUntil: {
            Branch alt = b;
            alt.pending.push_back(n->lhs);
            sorted_insert(alt.next, n);
            work.push_back(std::move(alt));
            b.pending.push_back(n->rhs);
            break;
          }
          case Op::Implies: assert(false && "NNF has no implication"); dead = true; break;
        }
      }
      if (!dead) done.push_back(std::move(b));
    }
    return done;
  }

  void build(Formula root) {
    NodeSet init;
    sorted_insert(init, root);
    uint32_t init_id = intern(init);
    nba.initial = init_id;
    std::vector<uint32_t> queue{init_id};
    std::set<std::tuple<uint32_t, Letter, Letter, uint32_t, std::vector<uint32_t>>> seen;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      uint32_t sid = queue[qi];
      NodeSet obligations = nba.states[sid];
      for (Branch& b : expand(obligations)) {
        size_t before = nba.states.size();
        uint32_t target = intern(b.next);
        if (nba.states.size() != before) queue.push_back(target);
        auto key = std::make_tuple(sid, b.pos, b.neg, target, node_ids(b.postponed));
        if (!seen.insert(key).second) continue;
        nba.delta[sid].push_back(NbaTransition{b.pos, b.neg, target, std::move(b.postponed)});
      }
    }
  }
};

// Collects all Until/Eventually nodes in a formula (the fairness universe).
void collect_untils(Formula f, NodeSet& out) {
  if (f->op == Op::Until || f->op == Op::Eventually) sorted_insert(out, f);
  if (f->lhs) collect_untils(f->lhs, out);
  if (f->rhs) collect_untils(f->rhs, out);
}

// Per-state language nonemptiness: a state is alive iff it reaches a
// nontrivial SCC in which every until obligation has a non-postponing
// transition.
std::vector<bool> alive_states(const Nba& nba, const NodeSet& untils) {
  size_t n = nba.states.size();
  // Tarjan, iterative.
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<uint32_t> stack;
  int next_index = 0, comp_count = 0;

  struct Frame {
    uint32_t v;
    size_t edge = 0;
  };
  for (uint32_t root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root}};
    idx[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < nba.delta[f.v].size()) {
        uint32_t w = nba.delta[f.v][f.edge].target;
        ++f.edge;
        if (idx[w] == -1) {
          idx[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back(Frame{w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == idx[v]) {
          while (true) {
            uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == v) break;
          }
          ++comp_count;
        }
      }
    }
  }

  // Which SCCs are accepting?
  std::vector<bool> has_internal(static_cast<size_t>(comp_count), false);
  std::vector<std::set<const Node*>> fulfilled(static_cast<size_t>(comp_count));
  for (uint32_t v = 0; v < n; ++v) {
    for (const NbaTransition& t : nba.delta[v]) {
      if (comp[t.target] != comp[v]) continue;
      has_internal[comp[v]] = true;
      for (const Node* u : untils)
        if (!std::binary_search(t.postponed.begin(), t.postponed.end(), u,
                                [](const Node* a, const Node* b) { return a->id < b->id; }))
          fulfilled[comp[v]].insert(u);
    }
  }
  std::vector<bool> accepting(static_cast<size_t>(comp_count), false);
  for (int c = 0; c < comp_count; ++c)
    accepting[c] = has_internal[c] && fulfilled[c].size() == untils.size();

  // alive = reaches an accepting SCC. Tarjan numbers components in reverse
  // topological order, so iterating components ascending sees successors
  // first.
  std::vector<bool> comp_alive(static_cast<size_t>(comp_count), false);
  for (int c = 0; c < comp_count; ++c) comp_alive[c] = accepting[c];
  for (int c = 0; c < comp_count; ++c) {
    if (comp_alive[c]) continue;
    for (uint32_t v = 0; v < n && !comp_alive[c]; ++v) {
      if (comp[v] != c) continue;
      for (const NbaTransition& t : nba.delta[v]) {
        if (comp_alive[comp[t.target]]) {
          comp_alive[c] = true;
          break;
        }
      }
    }
  }
  std::vector<bool> alive(n, false);
  for (uint32_t v = 0; v < n; ++v) alive[v] = comp_alive[comp[v]];
  return alive;
}

// ---------------------------------------------------------------------------
// Guard cube simplification: merge assignment cubes pairwise (x & !y | x & y
// -> x) and drop absorbed cubes. Exact cover of the original assignment set.
// ---------------------------------------------------------------------------

std::vector<GuardCube> simplify_cubes(std::vector<GuardCube> cubes) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(cubes.begin(), cubes.end(), [](const GuardCube& a, const GuardCube& b) {
      return std::tie(a.pos, a.neg) < std::tie(b.pos, b.neg);
    });
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
    for (size_t i = 0; i < cubes.size() && !changed; ++i) {
      for (size_t j = i + 1; j < cubes.size() && !changed; ++j) {
        GuardCube a = cubes[i], b = cubes[j];
        Letter va = a.pos | a.neg, vb = b.pos | b.neg;
        if (va == vb) {
          Letter dp = a.pos ^ b.pos;
          Letter dn = a.neg ^ b.neg;
          if (dp == dn && dp != 0 && (dp & (dp - 1)) == 0) {
            cubes[i] = GuardCube{a.pos & ~dp, a.neg & ~dp};
            cubes.erase(cubes.begin() + static_cast<long>(j));
            changed = true;
          }
        }
        if (changed) break;
        // absorption
        if ((a.pos & ~b.pos) == 0 && (a.neg & ~b.neg) == 0 && !(a == b)) {
          cubes.erase(cubes.begin() + static_cast<long>(j));
          changed = true;
        } else if ((b.pos & ~a.pos) == 0 && (b.neg & ~a.neg) == 0 && !(a == b)) {
          cubes.erase(cubes.begin() + static_cast<long>(i));
          changed = true;
        }
      }
    }
  }
  return cubes;
}

struct SubsetKey {
  std::vector<uint32_t> p;
  std::vector<uint32_t> n;
  auto operator<=>(const SubsetKey&) const = default;
};

}  // namespace

MonitorAutomaton synthesize_monitor(Arena& arena, Formula f, const SynthesisOptions& options) {
  std::vector<int32_t> atom_ids = ltl::collect_atoms(f);
  size_t budget = std::min<size_t>(options.atom_budget, 63);
  if (atom_ids.size() > budget)
    throw SynthesisError("ATOM_BUDGET_EXCEEDED",
                         "formula mentions " + std::to_string(atom_ids.size()) +
                             " atoms; the configured bound is " + std::to_string(budget));

  std::unordered_map<int32_t, int> atom_bit;
  for (size_t i = 0; i < atom_ids.size(); ++i) atom_bit.emplace(atom_ids[i], static_cast<int>(i));

  Formula pos = ltl::nnf(arena, f);
  Formula neg = ltl::nnf(arena, arena.mk(Op::Not, f));

  TableauBuilder pos_builder{arena, atom_bit, {}, {}};
  pos_builder.build(pos);
  TableauBuilder neg_builder{arena, atom_bit, {}, {}};
  neg_builder.build(neg);

  NodeSet pos_untils, neg_untils;
  collect_untils(pos, pos_untils);
  collect_untils(neg, neg_untils);
  std::vector<bool> pos_alive = alive_states(pos_builder.nba, pos_untils);
  std::vector<bool> neg_alive = alive_states(neg_builder.nba, neg_untils);

  MonitorAutomaton out;
  for (int32_t id : atom_ids) out.atoms.push_back(arena.atom_info(id));

  std::map<SubsetKey, uint32_t> interned;
  std::optional<uint32_t> top_sink, bottom_sink;

  auto make_sink = [&](Verdict v) -> uint32_t {
    std::optional<uint32_t>& slot = v == Verdict::Top ? top_sink : bottom_sink;
    if (slot) return *slot;
    uint32_t id = static_cast<uint32_t>(out.states.size());
    out.states.push_back(State{v, {Transition{{GuardCube{}}, id}}});
    slot = id;
    return id;
  };

  std::vector<SubsetKey> queue_keys;
  auto intern_pair = [&](std::vector<uint32_t> p, std::vector<uint32_t> n) -> uint32_t {
    assert(!(p.empty() && n.empty()) && "some infinite extension always exists");
    if (n.empty()) return make_sink(Verdict::Top);
    if (p.empty()) return make_sink(Verdict::Bottom);
    SubsetKey key{std::move(p), std::move(n)};
    auto it = interned.find(key);
    if (it != interned.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(out.states.size());
    out.states.push_back(State{Verdict::Inconclusive, {}});
    interned.emplace(key, id);
    queue_keys.push_back(interned.find(key)->first);
    return id;
  };

  std::vector<uint32_t> p0, n0;
  if (pos_alive[pos_builder.nba.initial]) p0.push_back(pos_builder.nba.initial);
  if (neg_alive[neg_builder.nba.initial]) n0.push_back(neg_builder.nba.initial);
  out.initial = intern_pair(std::move(p0), std::move(n0));

  for (size_t qi = 0; qi < queue_keys.size(); ++qi) {
    SubsetKey key = queue_keys[qi];
    uint32_t sid = interned.at(key);

    Letter relevant = 0;
    for (uint32_t q : key.p)
      for (const NbaTransition& t : pos_builder.nba.delta[q]) relevant |= t.pos | t.neg;
    for (uint32_t q : key.n)
      for (const NbaTransition& t : neg_builder.nba.delta[q]) relevant |= t.pos | t.neg;

    std::vector<int> bits;
    for (int b = 0; b < 64; ++b)
      if (relevant & (Letter{1} << b)) bits.push_back(b);

    std::map<uint32_t, std::vector<GuardCube>> grouped;
    for (uint64_t v = 0; v < (uint64_t{1} << bits.size()); ++v) {
      Letter assignment = 0;
      for (size_t i = 0; i < bits.size(); ++i)
        if (v & (uint64_t{1} << i)) assignment |= Letter{1} << bits[i];

      auto successors = [&](const std::vector<uint32_t>& from, const Nba& nba,
                            const std::vector<bool>& alive) {
        std::set<uint32_t> next;
        for (uint32_t q : from)
          for (const NbaTransition& t : nba.delta[q])
            if ((assignment & t.pos) == t.pos && (assignment & t.neg) == 0 && alive[t.target])
              next.insert(t.target);
        return std::vector<uint32_t>(next.begin(), next.end());
      };
      std::vector<uint32_t> p_next = successors(key.p, pos_builder.nba, pos_alive);
      std::vector<uint32_t> n_next = successors(key.n, neg_builder.nba, neg_alive);
      uint32_t target = intern_pair(std::move(p_next), std::move(n_next));
      grouped[target].push_back(GuardCube{assignment & relevant, ~assignment & relevant});
    }

    for (auto& [target, cubes] : grouped)
      out.states[sid].transitions.push_back(Transition{simplify_cubes(std::move(cubes)), target});
  }

  return out;
}

namespace {

bool cubes_intersect(const GuardCube& a, const GuardCube& b) {
  return (a.pos & b.neg) == 0 && (b.pos & a.neg) == 0;
}

}  // namespace

MonitorAutomaton minimize(const MonitorAutomaton& m) {
  size_t n = m.states.size();
  std::vector<uint32_t> block(n, 0);
  // initial coloring by verdict
  {
    std::map<Verdict, uint32_t> verdict_block;
    uint32_t next = 0;
    for (size_t i = 0; i < n; ++i) {
      auto [it, fresh] = verdict_block.emplace(m.states[i].verdict, next);
      if (fresh) ++next;
      block[i] = it->second;
    }
  }

  auto compatible = [&](uint32_t a, uint32_t b) {
    for (const Transition& ta : m.states[a].transitions)
      for (const GuardCube& ca : ta.guard)
        for (const Transition& tb : m.states[b].transitions)
          for (const GuardCube& cb : tb.guard)
            if (cubes_intersect(ca, cb) && block[ta.target] != block[tb.target]) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<uint32_t, std::vector<uint32_t>> members;
    for (uint32_t i = 0; i < n; ++i) members[block[i]].push_back(i);
    std::vector<uint32_t> new_block(n, 0);
    uint32_t next = 0;
    for (auto& [b, states] : members) {
      std::vector<uint32_t> leaders;
      for (uint32_t s : states) {
        bool placed = false;
        for (size_t li = 0; li < leaders.size(); ++li) {
          if (compatible(s, leaders[li])) {
            new_block[s] = next + static_cast<uint32_t>(li);
            placed = true;
            break;
          }
        }
        if (!placed) {
          new_block[s] = next + static_cast<uint32_t>(leaders.size());
          leaders.push_back(s);
        }
      }
      if (leaders.size() > 1) changed = true;
      next += static_cast<uint32_t>(leaders.size());
    }
    block = std::move(new_block);
  }

  // Rebuild on blocks with breadth-first numbering from the initial block.
  std::map<uint32_t, uint32_t> renumber;
  std::vector<uint32_t> representative;
  std::vector<uint32_t> order;
  auto visit = [&](uint32_t b, uint32_t rep) {
    if (renumber.count(b)) return;
    renumber[b] = static_cast<uint32_t>(order.size());
    order.push_back(b);
    representative.push_back(rep);
  };
  visit(block[m.initial], m.initial);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    uint32_t rep = representative[qi];
    for (const Transition& t : m.states[rep].transitions) visit(block[t.target], t.target);
  }

  MonitorAutomaton out;
  out.atoms = m.atoms;
  out.initial = 0;
  out.states.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    uint32_t rep = representative[i];
    State state;
    state.verdict = m.states[rep].verdict;
    std::map<uint32_t, std::vector<GuardCube>> grouped;
    for (const Transition& t : m.states[rep].transitions) {
      uint32_t target = renumber.at(block[t.target]);
      auto& cubes = grouped[target];
      cubes.insert(cubes.end(), t.guard.begin(), t.guard.end());
    }
    for (auto& [target, cubes] : grouped)
      state.transitions.push_back(Transition{simplify_cubes(std::move(cubes)), target});
    out.states[i] = std::move(state);
  }
  return out;
}

ltl::Formula progress_formula(Arena& arena, Formula f, Letter letter,
                              const std::vector<int32_t>& atom_ids) {
  std::unordered_map<const Node*, Formula> memo;
  std::function<Formula(Formula)> prog = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula result = nullptr;
    switch (g->op) {
      case Op::True: result = arena.tt(); break;
      case Op::False: result = arena.ff(); break;
      case Op::Atom: {
        bool value = false;
        for (size_t i = 0; i < atom_ids.size(); ++i)
          if (atom_ids[i] == g->atom) {
            value = (letter >> i) & 1;
            break;
          }
        result = value ? arena.tt() : arena.ff();
        break;
      }
      case Op::Not: result = arena.not_f(prog(g->lhs)); break;
      case Op::And: result = arena.and_f(prog(g->lhs), prog(g->rhs)); break;
      case Op::Or: result = arena.or_f(prog(g->lhs), prog(g->rhs)); break;
      case Op::Implies: result = arena.or_f(arena.not_f(prog(g->lhs)), prog(g->rhs)); break;
      case Op::Next: result = g->lhs; break;
      case Op::Globally: result = arena.and_f(prog(g->lhs), g); break;
      case Op::Eventually: result = arena.or_f(prog(g->lhs), g); break;
      case Op::Until: result = arena.or_f(prog(g->rhs), arena.and_f(prog(g->lhs), g)); break;
      case Op::WeakUntil: result = arena.or_f(prog(g->rhs), arena.and_f(prog(g->lhs), g)); break;
    }
    memo.emplace(g, result);
    return result;
  };
  return prog(f);
}

// --- export / import ---

namespace {

std::string cube_text(const MonitorAutomaton& m, const GuardCube& cube) {
  if (cube.pos == 0 && cube.neg == 0) return "true";
  std::string out;
  for (size_t i = 0; i < m.atoms.size(); ++i) {
    Letter bit = Letter{1} << i;
    if (!(cube.pos & bit) && !(cube.neg & bit)) continue;
    if (!out.empty()) out += " & ";
    if (cube.neg & bit) out += '!';
    out += ltl::to_string(m.atoms[i]);
  }
  return out;
}

std::vector<int> mask_bits(Letter mask) {
  std::vector<int> out;
  for (int b = 0; b < 64; ++b)
    if (mask & (Letter{1} << b)) out.push_back(b);
  return out;
}

}  // namespace

std::string export_automaton(const MonitorAutomaton& m, ExportFormat format) {
  if (format == ExportFormat::Dot) {
    std::string out = "digraph monitor {\n  rankdir=LR;\n";
    for (size_t i = 0; i < m.states.size(); ++i) {
      const char* shape = m.states[i].verdict == Verdict::Inconclusive ? "circle" : "doublecircle";
      out += "  s" + std::to_string(i) + " [shape=" + shape + ", label=\"S" + std::to_string(i) +
             "\\n" + to_string(m.states[i].verdict) + "\"];\n";
    }
    out += "  init [shape=point];\n  init -> s" + std::to_string(m.initial) + ";\n";
    for (size_t i = 0; i < m.states.size(); ++i) {
      for (const Transition& t : m.states[i].transitions) {
        std::string label;
        for (size_t c = 0; c < t.guard.size(); ++c) {
          if (c > 0) label += " | ";
          label += cube_text(m, t.guard[c]);
        }
        std::string escaped;
        for (char ch : label) {
          if (ch == '"' || ch == '\\') escaped += '\\';
          escaped += ch;
        }
        out += "  s" + std::to_string(i) + " -> s" + std::to_string(t.target) + " [label=\"" +
               escaped + "\"];\n";
      }
    }
    out += "}\n";
    return out;
  }

  nlohmann::ordered_json doc;
  doc["atoms"] = nlohmann::ordered_json::array();
  for (const ltl::Atom& a : m.atoms) doc["atoms"].push_back(ltl::to_string(a));
  doc["initial"] = m.initial;
  doc["states"] = nlohmann::ordered_json::array();
  for (size_t i = 0; i < m.states.size(); ++i)
    doc["states"].push_back(nlohmann::ordered_json{{"id", i},
                                                   {"verdict", to_string(m.states[i].verdict)}});
  doc["transitions"] = nlohmann::ordered_json::array();
  for (size_t i = 0; i < m.states.size(); ++i) {
    for (const Transition& t : m.states[i].transitions) {
      nlohmann::ordered_json tr;
      tr["from"] = i;
      tr["to"] = t.target;
      tr["guard"] = nlohmann::ordered_json::array();
      for (const GuardCube& c : t.guard)
        tr["guard"].push_back(nlohmann::ordered_json{{"pos", mask_bits(c.pos)},
                                                     {"neg", mask_bits(c.neg)}});
      doc["transitions"].push_back(tr);
    }
  }
  return doc.dump(2) + "\n";
}

std::optional<MonitorAutomaton> import_automaton_json(const std::string& text,
                                                      std::string* error) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    if (error) *error = "invalid JSON";
    return std::nullopt;
  }
  MonitorAutomaton m;
  try {
    ltl::Arena scratch;
    for (const auto& a : doc.at("atoms")) {
      auto parsed = ltl::parse(scratch, a.get<std::string>());
      if (!parsed || (*parsed)->op != Op::Atom) {
        if (error) *error = "bad atom: " + a.get<std::string>();
        return std::nullopt;
      }
      m.atoms.push_back(scratch.atom_info((*parsed)->atom));
    }
    m.initial = doc.at("initial").get<uint32_t>();
    m.states.resize(doc.at("states").size());
    for (const auto& s : doc.at("states")) {
      uint32_t id = s.at("id").get<uint32_t>();
      std::string v = s.at("verdict").get<std::string>();
      m.states.at(id).verdict = v == "TOP"      ? Verdict::Top
                                : v == "BOTTOM" ? Verdict::Bottom
                                                : Verdict::Inconclusive;
    }
    for (const auto& t : doc.at("transitions")) {
      Transition tr;
      tr.target = t.at("to").get<uint32_t>();
      for (const auto& c : t.at("guard")) {
        GuardCube cube;
        for (int b : c.at("pos").get<std::vector<int>>()) cube.pos |= Letter{1} << b;
        for (int b : c.at("neg").get<std::vector<int>>()) cube.neg |= Letter{1} << b;
        tr.guard.push_back(cube);
      }
      m.states.at(t.at("from").get<uint32_t>()).transitions.push_back(std::move(tr));
    }
  } catch (const nlohmann::json::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
  return m;
}

}  // namespace archmon::monitor
