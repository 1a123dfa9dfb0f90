#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "archmon/ltl.hpp"

namespace archmon::monitor {

enum class Verdict : uint8_t { Top, Bottom, Inconclusive };

std::string to_string(Verdict v);

/// A letter is the set of atoms observed true at one step, as a bitmask over
/// the automaton's atom table (bit i = atom with index i).
using Letter = uint64_t;

/// Conjunction of atom constraints: atoms in `pos` must hold, atoms in `neg`
/// must not; all other atoms are unconstrained.
struct GuardCube {
  Letter pos = 0;
  Letter neg = 0;

  bool matches(Letter l) const { return (l & pos) == pos && (l & neg) == 0; }
  bool operator==(const GuardCube&) const = default;
};

struct Transition {
  std::vector<GuardCube> guard;  // union of cubes
  uint32_t target = 0;

  bool matches(Letter l) const {
    for (const GuardCube& c : guard)
      if (c.matches(l)) return true;
    return false;
  }
};

struct State {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Transition> transitions;  // exhaustive and pairwise disjoint
};

/// Deterministic three-valued monitor. Top/Bottom states are sinks. The
/// atom table fixes the meaning of letter bits; atoms are formulas' ground
/// event atoms in first-occurrence order.
struct MonitorAutomaton {
  std::vector<ltl::Atom> atoms;
  std::vector<State> states;
  uint32_t initial = 0;

  uint32_t step(uint32_t state, Letter l) const;
  Verdict verdict_of(uint32_t state) const { return states[state].verdict; }

  /// Runs the automaton over a word from the initial state.
  Verdict run(const std::vector<Letter>& word) const;
};

struct SynthesisError : std::runtime_error {
  std::string code;
  SynthesisError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

struct SynthesisOptions {
  size_t atom_budget = 16;
};

/// LTL3 monitor construction: tableau-expands nondeterministic omega
/// automata for f and for its negation, marks states with nonempty
/// language (reachability of a fair cycle), then determinizes the pair of
/// alive-state subsets. A pair with an empty negation side is a Top sink,
/// an empty f side a Bottom sink. Throws SynthesisError with code
/// ATOM_BUDGET_EXCEEDED when the formula mentions more atoms than allowed.
MonitorAutomaton synthesize_monitor(ltl::Arena& arena, ltl::Formula f,
                                    const SynthesisOptions& options = {});

/// Moore-style partition refinement with the verdict as initial coloring.
/// Language-equivalent, minimal state count, deterministic state order
/// (breadth-first from the initial state).
MonitorAutomaton minimize(const MonitorAutomaton& m);

/// One step of standard LTL progression over a concrete letter, simplified
/// by constant folding and idempotence only. `letter` is interpreted against
/// `atom_ids`, the formula's atom table (bit i = atom_ids[i]).
ltl::Formula progress_formula(ltl::Arena& arena, ltl::Formula f, Letter letter,
                              const std::vector<int32_t>& atom_ids);

enum class ExportFormat { Dot, Json };

std::string export_automaton(const MonitorAutomaton& m, ExportFormat format);

/// Inverse of the JSON export; used by tests and by structural checks on
/// generated monitors.
std::optional<MonitorAutomaton> import_automaton_json(const std::string& text,
                                                      std::string* error = nullptr);

}  // namespace archmon::monitor
