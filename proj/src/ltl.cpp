#include "archmon/ltl.hpp"

#include <cctype>
#include <cstring>
#include <functional>
#include <stdexcept>

namespace archmon::ltl {

bool is_unary(Op op) {
  return op == Op::Not || op == Op::Next || op == Op::Globally || op == Op::Eventually;
}

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until ||
         op == Op::WeakUntil;
}

std::string to_string(const Atom& atom) {
  std::string out = atom.name;
  out += '(';
  for (size_t i = 0; i < atom.args.size(); ++i) {
    if (i > 0) out += ", ";
    const AtomArg& a = atom.args[i];
    if (a.kind == AtomArg::Kind::StrLit) {
      out += '"';
      for (char c : a.text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    } else {
      out += a.text;
    }
  }
  out += ')';
  return out;
}

size_t Arena::KeyHash::operator()(const Key& k) const {
  size_t h = std::hash<int>()(static_cast<int>(k.op));
  h = h * 31 + std::hash<const void*>()(k.lhs);
  h = h * 31 + std::hash<const void*>()(k.rhs);
  h = h * 31 + std::hash<int32_t>()(k.atom);
  return h;
}

const Node* Arena::mk(Op op, const Node* lhs, const Node* rhs) {
  Key key{op, lhs, rhs, -1};
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;
  nodes_.push_back(Node{op, lhs, rhs, -1, static_cast<uint32_t>(nodes_.size())});
  const Node* n = &nodes_.back();
  interned_.emplace(key, n);
  return n;
}

const Node* Arena::tt() { return mk(Op::True, nullptr, nullptr); }
const Node* Arena::ff() { return mk(Op::False, nullptr, nullptr); }

int32_t Arena::intern_atom(Atom a) {
  std::string key = to_string(a);
  auto it = atom_index_.find(key);
  if (it != atom_index_.end()) return it->second;
  int32_t id = static_cast<int32_t>(atoms_.size());
  atoms_.push_back(std::move(a));
  atom_index_.emplace(std::move(key), id);
  return id;
}

const Node* Arena::atom_by_id(int32_t id) {
  Key key{Op::Atom, nullptr, nullptr, id};
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;
  nodes_.push_back(Node{Op::Atom, nullptr, nullptr, id, static_cast<uint32_t>(nodes_.size())});
  const Node* n = &nodes_.back();
  interned_.emplace(key, n);
  return n;
}

const Node* Arena::atom(Atom a) { return atom_by_id(intern_atom(std::move(a))); }

const Node* Arena::not_f(const Node* a) {
  if (a->op == Op::True) return ff();
  if (a->op == Op::False) return tt();
  if (a->op == Op::Not) return a->lhs;
  return mk(Op::Not, a);
}

const Node* Arena::and_f(const Node* a, const Node* b) {
  if (a->op == Op::False || b->op == Op::False) return ff();
  if (a->op == Op::True) return b;
  if (b->op == Op::True) return a;
  if (a == b) return a;
  return mk(Op::And, a, b);
}

const Node* Arena::or_f(const Node* a, const Node* b) {
  if (a->op == Op::True || b->op == Op::True) return tt();
  if (a->op == Op::False) return b;
  if (b->op == Op::False) return a;
  if (a == b) return a;
  return mk(Op::Or, a, b);
}

const Node* Arena::implies_f(const Node* a, const Node* b) { return or_f(not_f(a), b); }

const Node* Arena::next_f(const Node* a) {
  if (a->op == Op::True) return tt();
  if (a->op == Op::False) return ff();
  return mk(Op::Next, a);
}

const Node* Arena::globally_f(const Node* a) {
  if (a->op == Op::True) return tt();
  if (a->op == Op::False) return ff();
  if (a->op == Op::Globally) return a;
  return mk(Op::Globally, a);
}

const Node* Arena::eventually_f(const Node* a) {
  if (a->op == Op::True) return tt();
  if (a->op == Op::False) return ff();
  if (a->op == Op::Eventually) return a;
  return mk(Op::Eventually, a);
}

const Node* Arena::until_f(const Node* a, const Node* b) {
  if (b->op == Op::True) return tt();
  if (b->op == Op::False) return ff();
  if (a->op == Op::False) return b;
  if (a->op == Op::True) return eventually_f(b);
  if (a == b) return a;
  return mk(Op::Until, a, b);
}

const Node* Arena::weak_until_f(const Node* a, const Node* b) {
  if (b->op == Op::True) return tt();
  if (a->op == Op::True) return tt();
  if (a->op == Op::False) return b;
  if (b->op == Op::False) return globally_f(a);
  if (a == b) return a;
  return mk(Op::WeakUntil, a, b);
}

namespace {

void print_rec(const Arena& arena, Formula f, std::string& out) {
  switch (f->op) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += to_string(arena.atom_info(f->atom)); return;
    case Op::Not:
      out += "! (";
      print_rec(arena, f->lhs, out);
      out += ')';
      return;
    case Op::Next:
    case Op::Globally:
    case Op::Eventually: {
      out += f->op == Op::Next ? "X" : f->op == Op::Globally ? "G" : "F";
      out += " (";
      print_rec(arena, f->lhs, out);
      out += ')';
      return;
    }
    default: {
      const char* sym = nullptr;
      switch (f->op) {
        case Op::And: sym = " & "; break;
        case Op::Or: sym = " | "; break;
        case Op::Implies: sym = " -> "; break;
        case Op::Until: sym = " U "; break;
        case Op::WeakUntil: sym = " W "; break;
        default: throw std::logic_error("bad op");
      }
      out += '(';
      print_rec(arena, f->lhs, out);
      out += sym;
      print_rec(arena, f->rhs, out);
      out += ')';
      return;
    }
  }
}

struct Parser {
  Arena& arena;
  const std::string& text;
  size_t pos = 0;
  ParseError err{};
  bool failed = false;

  void fail(const std::string& msg) {
    if (!failed) {
      failed = true;
      err = ParseError{pos, msg};
    }
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_word(const char* w) {
    skip_ws();
    size_t len = std::strlen(w);
    if (text.compare(pos, len, w) != 0) return false;
    // must not continue as identifier
    char next = pos + len < text.size() ? text[pos + len] : '\0';
    if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    return true;
  }

  bool eat_word(const char* w) {
    if (!peek_word(w)) return false;
    pos += std::strlen(w);
    return true;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  Formula parse_formula() { return parse_implies(); }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (failed) return nullptr;
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      Formula rhs = parse_implies();
      if (failed) return nullptr;
      return arena.mk(Op::Implies, lhs, rhs);
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (!failed && eat('|')) {
      Formula rhs = parse_and();
      if (failed) return nullptr;
      lhs = arena.mk(Op::Or, lhs, rhs);
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_until();
    while (!failed && eat('&')) {
      Formula rhs = parse_until();
      if (failed) return nullptr;
      lhs = arena.mk(Op::And, lhs, rhs);
    }
    return lhs;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (failed) return nullptr;
    if (eat_word("U")) {
      Formula rhs = parse_until();
      if (failed) return nullptr;
      return arena.mk(Op::Until, lhs, rhs);
    }
    if (eat_word("W")) {
      Formula rhs = parse_until();
      if (failed) return nullptr;
      return arena.mk(Op::WeakUntil, lhs, rhs);
    }
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (eat_word("G")) return mk_unary(Op::Globally);
    if (eat_word("F")) return mk_unary(Op::Eventually);
    if (eat_word("X")) return mk_unary(Op::Next);
    if (eat('!')) return mk_unary(Op::Not);
    return parse_primary();
  }

  Formula mk_unary(Op op) {
    Formula sub = parse_unary();
    if (failed) return nullptr;
    return arena.mk(op, sub);
  }

  Formula parse_primary() {
    skip_ws();
    if (eat('(')) {
      Formula f = parse_formula();
      if (failed) return nullptr;
      if (!eat(')')) {
        fail("expected ')'");
        return nullptr;
      }
      return f;
    }
    if (eat_word("true")) return arena.tt();
    if (eat_word("false")) return arena.ff();
    std::string name = ident();
    if (name.empty()) {
      fail("expected formula");
      return nullptr;
    }
    Atom atom;
    atom.name = std::move(name);
    if (!eat('(')) {
      fail("expected '(' after atom name");
      return nullptr;
    }
    skip_ws();
    if (!eat(')')) {
      while (true) {
        AtomArg arg;
        if (!parse_arg(arg)) return nullptr;
        atom.args.push_back(std::move(arg));
        if (eat(',')) continue;
        if (eat(')')) break;
        fail("expected ',' or ')' in atom argument list");
        return nullptr;
      }
    }
    return arena.atom(std::move(atom));
  }

  bool parse_arg(AtomArg& out) {
    skip_ws();
    if (pos >= text.size()) {
      fail("unterminated atom");
      return false;
    }
    char c = text[pos];
    if (c == '"') {
      ++pos;
      std::string lit;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        lit += text[pos++];
      }
      if (pos >= text.size()) {
        fail("unterminated string literal");
        return false;
      }
      ++pos;
      out = AtomArg{AtomArg::Kind::StrLit, std::move(lit)};
      return true;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      if (c == '-') ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      out = AtomArg{AtomArg::Kind::IntLit, text.substr(start, pos - start)};
      return true;
    }
    std::string name = ident();
    if (name.empty()) {
      fail("expected atom argument");
      return false;
    }
    out = AtomArg{AtomArg::Kind::Var, std::move(name)};
    return true;
  }
};

Formula nnf_rec(Arena& arena, Formula f, bool neg) {
  switch (f->op) {
    case Op::True: return neg ? arena.ff() : arena.tt();
    case Op::False: return neg ? arena.tt() : arena.ff();
    case Op::Atom: return neg ? arena.mk(Op::Not, f) : f;
    case Op::Not: return nnf_rec(arena, f->lhs, !neg);
    case Op::And: {
      Formula a = nnf_rec(arena, f->lhs, neg);
      Formula b = nnf_rec(arena, f->rhs, neg);
      return neg ? arena.or_f(a, b) : arena.and_f(a, b);
    }
    case Op::Or: {
      Formula a = nnf_rec(arena, f->lhs, neg);
      Formula b = nnf_rec(arena, f->rhs, neg);
      return neg ? arena.and_f(a, b) : arena.or_f(a, b);
    }
    case Op::Implies: {
      // a -> b == !a | b; negated: a & !b
      Formula b = nnf_rec(arena, f->rhs, neg);
      if (neg) return arena.and_f(nnf_rec(arena, f->lhs, false), b);
      return arena.or_f(nnf_rec(arena, f->lhs, true), b);
    }
    case Op::Next: return arena.next_f(nnf_rec(arena, f->lhs, neg));
    case Op::Globally:
      return neg ? arena.eventually_f(nnf_rec(arena, f->lhs, true))
                 : arena.globally_f(nnf_rec(arena, f->lhs, false));
    case Op::Eventually:
      return neg ? arena.globally_f(nnf_rec(arena, f->lhs, true))
                 : arena.eventually_f(nnf_rec(arena, f->lhs, false));
    case Op::Until: {
      Formula a = nnf_rec(arena, f->lhs, neg);
      Formula b = nnf_rec(arena, f->rhs, neg);
      if (!neg) return arena.until_f(a, b);
      // !(a U b) = !b W (!a & !b)
      return arena.weak_until_f(b, arena.and_f(a, b));
    }
    case Op::WeakUntil: {
      Formula a = nnf_rec(arena, f->lhs, neg);
      Formula b = nnf_rec(arena, f->rhs, neg);
      if (!neg) return arena.weak_until_f(a, b);
      // !(a W b) = !b U (!a & !b)
      return arena.until_f(b, arena.and_f(a, b));
    }
  }
  throw std::logic_error("bad op");
}

void collect_atoms_rec(Formula f, std::vector<int32_t>& out) {
  if (f->op == Op::Atom) {
    for (int32_t id : out)
      if (id == f->atom) return;
    out.push_back(f->atom);
    return;
  }
  if (f->lhs) collect_atoms_rec(f->lhs, out);
  if (f->rhs) collect_atoms_rec(f->rhs, out);
}

}  // namespace

std::string to_string(const Arena& arena, Formula f) {
  std::string out;
  print_rec(arena, f, out);
  return out;
}

std::optional<Formula> parse(Arena& arena, const std::string& text, ParseError* err) {
  Parser p{arena, text};
  Formula f = p.parse_formula();
  if (!p.failed) {
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input after formula");
  }
  if (p.failed) {
    if (err) *err = p.err;
    return std::nullopt;
  }
  return f;
}

Formula nnf(Arena& arena, Formula f) { return nnf_rec(arena, f, false); }

std::vector<int32_t> collect_atoms(Formula f) {
  std::vector<int32_t> out;
  collect_atoms_rec(f, out);
  return out;
}

}  // namespace archmon::ltl
