#include "archmon/translate.hpp"

namespace archmon::translate {

using spec::AstKind;
using spec::AstNode;

namespace {

const spec::ComponentType* type_of_var(const std::string& var,
                                       const spec::AssertionDecl& assertion,
                                       const spec::SpecDocument& doc) {
  for (const spec::VarDecl& v : assertion.variables)
    if (v.name == var) return doc.find_type(v.type_name);
  return nullptr;
}

[[noreturn]] void unresolved(const AstNode& atom) {
  throw TranslationError("ATOM_UNRESOLVED",
                         "no event schema matches atom " + spec::print_atom(atom));
}

}  // namespace

ltl::Atom translate_atom(const AstNode& atom, const spec::AssertionDecl& assertion,
                         const spec::SpecDocument& doc, const events::EventGenResult& schemas) {
  ltl::Atom out;
  switch (atom.kind) {
    case AstKind::ComponentActive: {
      const spec::ComponentType* ct = type_of_var(atom.comp_var, assertion, doc);
      if (!ct) unresolved(atom);
      out.name = events::fold_type_name(ct->name) + "_activation";
      out.args = {ltl::AtomArg{ltl::AtomArg::Kind::Var, atom.comp_var}};
      if (!schemas.find(out.name, 1)) unresolved(atom);
      return out;
    }
    case AstKind::PortActive:
    case AstKind::PortValuation: {
      const spec::ComponentType* ct = type_of_var(atom.comp_var, assertion, doc);
      if (!ct) unresolved(atom);
      const spec::PortDecl* port = ct->find_port(atom.port);
      if (!port) unresolved(atom);
      std::string suffix =
          port->direction == spec::PortDirection::Input ? "_execution" : "_call";
      out.name = events::fold_type_name(ct->name) + "_" + atom.port + suffix;
      out.args = {ltl::AtomArg{ltl::AtomArg::Kind::Var, atom.comp_var}};
      if (atom.kind == AstKind::PortValuation) {
        for (const spec::Term& term : atom.terms) {
          ltl::AtomArg arg;
          arg.kind = term.kind == spec::Term::Kind::Var      ? ltl::AtomArg::Kind::Var
                     : term.kind == spec::Term::Kind::StrLit ? ltl::AtomArg::Kind::StrLit
                                                             : ltl::AtomArg::Kind::IntLit;
          arg.text = term.text;
          out.args.push_back(std::move(arg));
        }
      }
      if (!schemas.find(out.name, out.args.size())) unresolved(atom);
      return out;
    }
    case AstKind::Connected: {
      // conn(src.p -> dst.p): the callee (input side) names the event.
      const spec::ComponentType* src = type_of_var(atom.comp_var, assertion, doc);
      const spec::ComponentType* dst = type_of_var(atom.dst_var, assertion, doc);
      if (!src || !dst) unresolved(atom);
      out.name = events::fold_type_name(dst->name) + "_call_" +
                 events::fold_type_name(src->name) + "_" + atom.dst_port;
      out.args = {ltl::AtomArg{ltl::AtomArg::Kind::Var, atom.dst_var},
                  ltl::AtomArg{ltl::AtomArg::Kind::Var, atom.comp_var}};
      if (!schemas.find(out.name, 2)) unresolved(atom);
      return out;
    }
    default: unresolved(atom);
  }
}

namespace {

ltl::Formula translate_node(ltl::Arena& arena, const AstNode& node,
                            const spec::AssertionDecl& assertion, const spec::SpecDocument& doc,
                            const events::EventGenResult& schemas) {
  switch (node.kind) {
    case AstKind::True: return arena.tt();
    case AstKind::False: return arena.ff();
    case AstKind::Not:
      return arena.mk(ltl::Op::Not,
                      translate_node(arena, node.children[0], assertion, doc, schemas));
    case AstKind::Next:
    case AstKind::Globally:
    case AstKind::Eventually: {
      ltl::Op op = node.kind == AstKind::Next       ? ltl::Op::Next
                   : node.kind == AstKind::Globally ? ltl::Op::Globally
                                                    : ltl::Op::Eventually;
      return arena.mk(op, translate_node(arena, node.children[0], assertion, doc, schemas));
    }
    case AstKind::And:
    case AstKind::Or:
    case AstKind::Implies:
    case AstKind::Until:
    case AstKind::WeakUntil: {
      ltl::Op op = node.kind == AstKind::And       ? ltl::Op::And
                   : node.kind == AstKind::Or      ? ltl::Op::Or
                   : node.kind == AstKind::Implies ? ltl::Op::Implies
                   : node.kind == AstKind::Until   ? ltl::Op::Until
                                                   : ltl::Op::WeakUntil;
      return arena.mk(op, translate_node(arena, node.children[0], assertion, doc, schemas),
                      translate_node(arena, node.children[1], assertion, doc, schemas));
    }
    default:
      return arena.atom(translate_atom(node, assertion, doc, schemas));
  }
}

const AstNode* first_atom(const AstNode& node) {
  if (node.is_atom()) return &node;
  for (const AstNode& child : node.children)
    if (const AstNode* hit = first_atom(child)) return hit;
  return nullptr;
}

}  // namespace

ltl::Formula translate_assertion(ltl::Arena& arena, const spec::AssertionDecl& assertion,
                                 const spec::SpecDocument& doc,
                                 const events::EventGenResult& schemas) {
  return translate_node(arena, assertion.body, assertion, doc, schemas);
}

bool trigger_atom(const spec::AssertionDecl& assertion, AstNode* out) {
  if (assertion.trigger) {
    *out = *assertion.trigger;
    return true;
  }
  if (const AstNode* hit = first_atom(assertion.body)) {
    *out = *hit;
    return true;
  }
  return false;
}

}  // namespace archmon::translate
