#pragma once

#include <optional>
#include <string>
#include <vector>

namespace archmon::spec {

enum class PortDirection : uint8_t { Input, Output };

struct PortDecl {
  std::string name;
  PortDirection direction = PortDirection::Input;
  std::vector<std::string> signature;  // sort names, nonempty

  bool operator==(const PortDecl&) const = default;
};

struct ComponentType {
  std::string name;
  std::vector<PortDecl> ports;

  const PortDecl* find_port(const std::string& port) const;
  bool operator==(const ComponentType&) const = default;
};

struct DataSort {
  std::string name;
  bool operator==(const DataSort&) const = default;
};

/// Assertion formula tree. Temporal/boolean operators carry children;
/// the four architecture atoms carry their own payload fields.
enum class AstKind : uint8_t {
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Next,
  Globally,
  Eventually,
  Until,
  WeakUntil,
  PortActive,       // val(c.p)
  PortValuation,    // c.p = (t1, ...)
  ComponentActive,  // active(c)
  Connected,        // conn(c.o -> c'.i)
};

struct Term {
  enum class Kind : uint8_t { Var, StrLit, IntLit } kind = Kind::Var;
  std::string text;
  bool operator==(const Term&) const = default;
};

struct AstNode {
  AstKind kind = AstKind::True;
  std::vector<AstNode> children;

  // atom payload
  std::string comp_var;  // PortActive/PortValuation/ComponentActive; Connected source
  std::string port;      // PortActive/PortValuation; Connected source port
  std::string dst_var;   // Connected destination component variable
  std::string dst_port;  // Connected destination port
  std::vector<Term> terms;  // PortValuation tuple

  bool is_atom() const {
    return kind == AstKind::PortActive || kind == AstKind::PortValuation ||
           kind == AstKind::ComponentActive || kind == AstKind::Connected;
  }
  bool operator==(const AstNode&) const = default;
};

struct VarDecl {
  std::string name;
  std::string type_name;  // data sort or component type
  bool operator==(const VarDecl&) const = default;
};

struct AssertionDecl {
  std::string name;
  std::vector<VarDecl> variables;
  std::optional<AstNode> trigger;  // creation atom override; default: first atom of body
  AstNode body;
  bool operator==(const AssertionDecl&) const = default;
};

struct SpecDocument {
  std::vector<DataSort> sorts;
  std::vector<ComponentType> component_types;
  std::vector<AssertionDecl> assertions;

  const ComponentType* find_type(const std::string& name) const;
  bool operator==(const SpecDocument&) const = default;
};

struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string code;
  std::string message;
};

std::string format_diagnostic(const std::string& file, const Diagnostic& d);

struct ParseResult {
  std::optional<SpecDocument> document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return document.has_value() && diagnostics.empty(); }
};

/// Parses the textual architecture spec syntax:
///   sort Name;
///   component Name { in|out port(Sort, ...); ... }
///   assertion Name vars v: Sort, ... [trigger <atom>] { <formula> }
/// Sorts referenced in signatures or variable declarations are declared
/// implicitly on first use. Never throws; syntax problems come back as
/// diagnostics.
ParseResult parse_spec(const std::string& text);

/// Structural checks beyond syntax: duplicate names, port directions,
/// atom arity/sorts, variable resolution. Empty result means the document
/// is ready for event generation and translation.
std::vector<Diagnostic> typecheck_spec(const SpecDocument& doc);

/// Canonical pretty-print; parse_spec(print_spec(d)) == d for typechecked d.
std::string print_spec(const SpecDocument& doc);

/// Renders one assertion atom in source syntax (used in diagnostics and
/// canonical printing).
std::string print_atom(const AstNode& atom);

}  // namespace archmon::spec
