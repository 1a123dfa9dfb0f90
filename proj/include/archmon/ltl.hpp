#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace archmon::ltl {

enum class Op : uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  Globally,
  Eventually,
  Until,
  WeakUntil,
};

bool is_unary(Op op);
bool is_binary(Op op);

/// One argument of an event atom. Variables stay symbolic until the runtime
/// engine binds them; literals are stored in canonical text form.
struct AtomArg {
  enum class Kind : uint8_t { Var, StrLit, IntLit } kind = Kind::Var;
  std::string text;

  bool operator==(const AtomArg&) const = default;
};

/// A (possibly schematic) event atom: schema name plus argument list.
struct Atom {
  std::string name;
  std::vector<AtomArg> args;

  bool operator==(const Atom&) const = default;
};

std::string to_string(const Atom& atom);

struct Node {
  Op op;
  const Node* lhs = nullptr;
  const Node* rhs = nullptr;
  int32_t atom = -1;   // index into Arena::atoms() when op == Op::Atom
  uint32_t id = 0;     // creation-order id, stable within one arena
};

/// Hash-consing arena for LTL formulae. Node pointers are unique per
/// structure, so equality is pointer equality. Not thread-safe; one arena
/// per run.
class Arena {
 public:
  const Node* tt();
  const Node* ff();
  const Node* atom(Atom a);
  const Node* atom_by_id(int32_t id);
  const Node* mk(Op op, const Node* lhs, const Node* rhs = nullptr);

  int32_t intern_atom(Atom a);
  const Atom& atom_info(int32_t id) const { return atoms_[static_cast<size_t>(id)]; }
  size_t atom_count() const { return atoms_.size(); }

  // Constant-folding constructors used by progression and NNF. Fold rules:
  // boolean identities, idempotence, and temporal operators applied to
  // constants (e.g. X false = false, G true = true, a U true = true).
  const Node* not_f(const Node* a);
  const Node* and_f(const Node* a, const Node* b);
  const Node* or_f(const Node* a, const Node* b);
  const Node* implies_f(const Node* a, const Node* b);
  const Node* next_f(const Node* a);
  const Node* globally_f(const Node* a);
  const Node* eventually_f(const Node* a);
  const Node* until_f(const Node* a, const Node* b);
  const Node* weak_until_f(const Node* a, const Node* b);

 private:
  struct Key {
    Op op;
    const Node* lhs;
    const Node* rhs;
    int32_t atom;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };

  std::deque<Node> nodes_;
  std::unordered_map<Key, const Node*, KeyHash> interned_;
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, int32_t> atom_index_;
};

using Formula = const Node*;

/// Canonical text form: atoms as name(arg, ...), unary ops as `G (x)`,
/// binary ops fully parenthesized as `(a & b)`.
std::string to_string(const Arena& arena, Formula f);

struct ParseError {
  size_t pos = 0;
  std::string message;
};

/// Parses the canonical syntax produced by to_string. Front door of the
/// monitor module; also used in round-trip tests.
std::optional<Formula> parse(Arena& arena, const std::string& text, ParseError* err = nullptr);

/// Negation normal form: Implies eliminated, Not pushed onto atoms.
/// Constants may appear. Uses folding constructors, so X false etc. collapse.
Formula nnf(Arena& arena, Formula f);

/// Collects the distinct atom ids appearing in f, in first-occurrence order.
std::vector<int32_t> collect_atoms(Formula f);

}  // namespace archmon::ltl
