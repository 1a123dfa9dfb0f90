#include "archmon/spec.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace archmon::spec {

const PortDecl* ComponentType::find_port(const std::string& port) const {
  for (const PortDecl& p : ports)
    if (p.name == port) return &p;
  return nullptr;
}

const ComponentType* SpecDocument::find_type(const std::string& name) const {
  for (const ComponentType& ct : component_types)
    if (ct.name == name) return &ct;
  return nullptr;
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  std::ostringstream os;
  os << file << ':' << d.line << ':' << d.col << ": " << d.code << ": " << d.message;
  return os.str();
}

namespace {

struct Token {
  enum class Kind : uint8_t { Ident, Int, String, Punct, End } kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& current() const { return tok_; }

  void advance() {
    skip_trivia();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        bump();
      tok_.kind = Token::Kind::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      size_t start = pos_;
      if (c == '-') bump();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
      tok_.kind = Token::Kind::Int;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (c == '"') {
      bump();
      std::string lit;
      bool closed = false;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (d == '"') {
          bump();
          closed = true;
          break;
        }
        if (d == '\\' && pos_ + 1 < text_.size()) bump();
        lit += text_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::String;
      tok_.text = std::move(lit);
      if (!closed) unterminated_string_ = true;
      return;
    }
    // two-char puncts
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_.kind = Token::Kind::Punct;
      tok_.text = "->";
      bump();
      bump();
      return;
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, c);
    bump();
  }

  bool unterminated_string() const { return unterminated_string_; }

 private:
  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
        continue;
      }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
  bool unterminated_string_ = false;
};

bool is_past_operator(const std::string& w) {
  return w == "Y" || w == "S" || w == "H" || w == "O";
}

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : lex_(text) {}

  ParseResult run() {
    SpecDocument doc;
    while (!failed_ && lex_.current().kind != Token::Kind::End) {
      const Token& t = lex_.current();
      if (t.kind == Token::Kind::Ident && t.text == "sort") {
        lex_.advance();
        std::string name = expect_ident("sort name");
        declare_sort(doc, name);
        expect_punct(";");
      } else if (t.kind == Token::Kind::Ident && t.text == "component") {
        lex_.advance();
        parse_component(doc);
      } else if (t.kind == Token::Kind::Ident && t.text == "assertion") {
        lex_.advance();
        parse_assertion(doc);
      } else {
        error("SYNTAX", "expected 'sort', 'component' or 'assertion'");
      }
    }
    ParseResult out;
    out.diagnostics = std::move(diags_);
    if (!failed_) out.document = std::move(doc);
    return out;
  }

 private:
  void error(const std::string& code, const std::string& msg) {
    if (failed_) return;
    failed_ = true;
    diags_.push_back(Diagnostic{lex_.current().line, lex_.current().col, code, msg});
  }

  std::string expect_ident(const char* what) {
    const Token& t = lex_.current();
    if (t.kind != Token::Kind::Ident) {
      error("SYNTAX", std::string("expected ") + what);
      return {};
    }
    std::string out = t.text;
    lex_.advance();
    return out;
  }

  void expect_punct(const std::string& p) {
    const Token& t = lex_.current();
    if (t.kind != Token::Kind::Punct || t.text != p) {
      error("SYNTAX", "expected '" + p + "'");
      return;
    }
    lex_.advance();
  }

  bool eat_punct(const std::string& p) {
    const Token& t = lex_.current();
    if (t.kind == Token::Kind::Punct && t.text == p) {
      lex_.advance();
      return true;
    }
    return false;
  }

  bool eat_keyword(const char* w) {
    const Token& t = lex_.current();
    if (t.kind == Token::Kind::Ident && t.text == w) {
      lex_.advance();
      return true;
    }
    return false;
  }

  void declare_sort(SpecDocument& doc, const std::string& name) {
    if (name.empty()) return;
    for (const DataSort& s : doc.sorts)
      if (s.name == name) return;
    doc.sorts.push_back(DataSort{name});
  }

  // Sorts used in signatures or variable declarations are declared on
  // first use unless the name refers to a component type; component
  // references are typed by the component type itself.
  void reference_sort(const std::string& name) { pending_sort_refs_.push_back(name); }

  void parse_component(SpecDocument& doc) {
    ComponentType ct;
    ct.name = expect_ident("component type name");
    expect_punct("{");
    while (!failed_ && !eat_punct("}")) {
      PortDecl port;
      if (eat_keyword("in")) {
        port.direction = PortDirection::Input;
      } else if (eat_keyword("out")) {
        port.direction = PortDirection::Output;
      } else {
        error("SYNTAX", "expected 'in', 'out' or '}'");
        return;
      }
      port.name = expect_ident("port name");
      expect_punct("(");
      while (!failed_) {
        std::string sort = expect_ident("sort name");
        if (failed_) return;
        reference_sort(sort);
        port.signature.push_back(std::move(sort));
        if (eat_punct(",")) continue;
        expect_punct(")");
        break;
      }
      expect_punct(";");
      if (!failed_) ct.ports.push_back(std::move(port));
    }
    if (!failed_) doc.component_types.push_back(std::move(ct));
  }

  void parse_assertion(SpecDocument& doc) {
    AssertionDecl decl;
    decl.name = expect_ident("assertion name");
    if (eat_keyword("vars")) {
      while (!failed_) {
        VarDecl var;
        var.name = expect_ident("variable name");
        expect_punct(":");
        var.type_name = expect_ident("variable type");
        if (!failed_) {
          reference_sort(var.type_name);
          decl.variables.push_back(std::move(var));
        }
        if (!eat_punct(",")) break;
      }
    }
    if (eat_keyword("trigger")) {
      AstNode atom = parse_atom();
      if (failed_) return;
      decl.trigger = std::move(atom);
    }
    expect_punct("{");
    decl.body = parse_formula();
    expect_punct("}");
    if (!failed_) doc.assertions.push_back(std::move(decl));
  }

  AstNode parse_formula() { return parse_implies(); }

  AstNode parse_implies() {
    AstNode lhs = parse_or();
    if (failed_) return lhs;
    if (eat_punct("->")) {
      AstNode rhs = parse_implies();
      AstNode node;
      node.kind = AstKind::Implies;
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      return node;
    }
    return lhs;
  }

  AstNode parse_or() {
    AstNode lhs = parse_and();
    while (!failed_ && eat_punct("|")) {
      AstNode rhs = parse_and();
      AstNode node;
      node.kind = AstKind::Or;
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  AstNode parse_and() {
    AstNode lhs = parse_until();
    while (!failed_ && eat_punct("&")) {
      AstNode rhs = parse_until();
      AstNode node;
      node.kind = AstKind::And;
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  AstNode parse_until() {
    AstNode lhs = parse_unary();
    if (failed_) return lhs;
    const Token& t = lex_.current();
    if (t.kind == Token::Kind::Ident && (t.text == "U" || t.text == "W")) {
      AstKind kind = t.text == "U" ? AstKind::Until : AstKind::WeakUntil;
      lex_.advance();
      AstNode rhs = parse_until();
      AstNode node;
      node.kind = kind;
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      return node;
    }
    if (t.kind == Token::Kind::Ident && t.text == "S") {
      error("PAST_OPERATOR", "past operator 'S' is not supported; only future-fragment LTL");
    }
    return lhs;
  }

  AstNode parse_unary() {
    const Token& t = lex_.current();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "G" || t.text == "F" || t.text == "X") {
        AstKind kind = t.text == "G"   ? AstKind::Globally
                       : t.text == "F" ? AstKind::Eventually
                                       : AstKind::Next;
        lex_.advance();
        AstNode node;
        node.kind = kind;
        node.children.push_back(parse_unary());
        return node;
      }
      if (is_past_operator(t.text)) {
        error("PAST_OPERATOR",
              "past operator '" + t.text + "' is not supported; only future-fragment LTL");
        return AstNode{};
      }
    }
    if (eat_punct("!")) {
      AstNode node;
      node.kind = AstKind::Not;
      node.children.push_back(parse_unary());
      return node;
    }
    return parse_primary();
  }

  AstNode parse_primary() {
    if (eat_punct("(")) {
      AstNode inner = parse_formula();
      expect_punct(")");
      return inner;
    }
    const Token& t = lex_.current();
    if (t.kind == Token::Kind::Ident && t.text == "true") {
      lex_.advance();
      AstNode node;
      node.kind = AstKind::True;
      return node;
    }
    if (t.kind == Token::Kind::Ident && t.text == "false") {
      lex_.advance();
      AstNode node;
      node.kind = AstKind::False;
      return node;
    }
    return parse_atom();
  }

  AstNode parse_atom() {
    AstNode node;
    const Token& t = lex_.current();
    if (t.kind != Token::Kind::Ident) {
      error("SYNTAX", "expected assertion atom");
      return node;
    }
    if (t.text == "val") {
      lex_.advance();
      expect_punct("(");
      node.kind = AstKind::PortActive;
      node.comp_var = expect_ident("component variable");
      expect_punct(".");
      node.port = expect_ident("port name");
      expect_punct(")");
      return node;
    }
    if (t.text == "active") {
      lex_.advance();
      expect_punct("(");
      node.kind = AstKind::ComponentActive;
      node.comp_var = expect_ident("component variable");
      expect_punct(")");
      return node;
    }
    if (t.text == "conn") {
      lex_.advance();
      expect_punct("(");
      node.kind = AstKind::Connected;
      node.comp_var = expect_ident("source component variable");
      expect_punct(".");
      node.port = expect_ident("source port");
      expect_punct("->");
      node.dst_var = expect_ident("destination component variable");
      expect_punct(".");
      node.dst_port = expect_ident("destination port");
      expect_punct(")");
      return node;
    }
    // c.p = (t1, ...)
    node.kind = AstKind::PortValuation;
    node.comp_var = expect_ident("component variable");
    expect_punct(".");
    node.port = expect_ident("port name");
    expect_punct("=");
    expect_punct("(");
    while (!failed_) {
      Term term;
      const Token& a = lex_.current();
      if (a.kind == Token::Kind::String) {
        term.kind = Term::Kind::StrLit;
        term.text = a.text;
        lex_.advance();
      } else if (a.kind == Token::Kind::Int) {
        term.kind = Term::Kind::IntLit;
        term.text = a.text;
        lex_.advance();
      } else if (a.kind == Token::Kind::Ident) {
        term.kind = Term::Kind::Var;
        term.text = a.text;
        lex_.advance();
      } else {
        error("SYNTAX", "expected term in valuation tuple");
        break;
      }
      node.terms.push_back(std::move(term));
      if (eat_punct(",")) continue;
      expect_punct(")");
      break;
    }
    return node;
  }

 public:
  // Resolve deferred sort references after all component types are known.
  void finish(SpecDocument& doc) {
    for (const std::string& name : pending_sort_refs_) {
      if (doc.find_type(name) == nullptr) declare_sort(doc, name);
    }
  }
  std::vector<std::string> pending_sort_refs_;

 private:
  Lexer lex_;
  std::vector<Diagnostic> diags_;
  bool failed_ = false;
};

}  // namespace

ParseResult parse_spec(const std::string& text) {
  SpecParser parser(text);
  ParseResult result = parser.run();
  if (result.document) parser.finish(*result.document);
  return result;
}

namespace {

struct TypecheckContext {
  const SpecDocument& doc;
  std::vector<Diagnostic>& diags;

  void emit(const std::string& code, const std::string& msg) {
    diags.push_back(Diagnostic{0, 0, code, msg});
  }
};

struct VarInfo {
  const ComponentType* component = nullptr;  // set when the variable is a component reference
  std::string sort;                          // set for data variables
};

void check_atom(TypecheckContext& ctx, const AssertionDecl& a,
                const std::map<std::string, VarInfo>& vars, const AstNode& atom) {
  auto component_of = [&](const std::string& var) -> const ComponentType* {
    auto it = vars.find(var);
    if (it == vars.end()) {
      ctx.emit("UNDECLARED_VAR", "assertion '" + a.name + "': undeclared variable '" + var + "'");
      return nullptr;
    }
    if (it->second.component == nullptr) {
      ctx.emit("COMP_VAR_EXPECTED", "assertion '" + a.name + "': variable '" + var +
                                        "' has data sort '" + it->second.sort +
                                        "' but is used as a component");
      return nullptr;
    }
    return it->second.component;
  };

  switch (atom.kind) {
    case AstKind::ComponentActive: {
      component_of(atom.comp_var);
      return;
    }
    case AstKind::PortActive: {
      const ComponentType* ct = component_of(atom.comp_var);
      if (ct && ct->find_port(atom.port) == nullptr)
        ctx.emit("UNKNOWN_PORT", "assertion '" + a.name + "': component type '" + ct->name +
                                     "' has no port '" + atom.port + "'");
      return;
    }
    case AstKind::PortValuation: {
      const ComponentType* ct = component_of(atom.comp_var);
      if (!ct) return;
      const PortDecl* port = ct->find_port(atom.port);
      if (port == nullptr) {
        ctx.emit("UNKNOWN_PORT", "assertion '" + a.name + "': component type '" + ct->name +
                                     "' has no port '" + atom.port + "'");
        return;
      }
      if (atom.terms.size() != port->signature.size()) {
        ctx.emit("ARITY_MISMATCH",
                 "assertion '" + a.name + "': tuple arity " + std::to_string(atom.terms.size()) +
                     " does not match signature of port '" + port->name + "' (arity " +
                     std::to_string(port->signature.size()) + ")");
        return;
      }
      for (size_t i = 0; i < atom.terms.size(); ++i) {
        const Term& term = atom.terms[i];
        if (term.kind != Term::Kind::Var) continue;  // literals take the slot's sort
        auto it = vars.find(term.text);
        if (it == vars.end()) {
          ctx.emit("UNDECLARED_VAR",
                   "assertion '" + a.name + "': undeclared variable '" + term.text + "'");
          continue;
        }
        std::string have = it->second.component ? it->second.component->name : it->second.sort;
        if (have != port->signature[i])
          ctx.emit("SORT_MISMATCH", "assertion '" + a.name + "': variable '" + term.text +
                                        "' has sort '" + have + "' but position " +
                                        std::to_string(i) + " of port '" + port->name +
                                        "' expects '" + port->signature[i] + "'");
      }
      return;
    }
    case AstKind::Connected: {
      const ComponentType* src = component_of(atom.comp_var);
      const ComponentType* dst = component_of(atom.dst_var);
      if (src) {
        const PortDecl* p = src->find_port(atom.port);
        if (p == nullptr)
          ctx.emit("UNKNOWN_PORT", "assertion '" + a.name + "': component type '" + src->name +
                                       "' has no port '" + atom.port + "'");
        else if (p->direction != PortDirection::Output)
          ctx.emit("PORT_DIRECTION", "assertion '" + a.name + "': connection source port '" +
                                         atom.port + "' of '" + src->name +
                                         "' must be an output port");
      }
      if (dst) {
        const PortDecl* p = dst->find_port(atom.dst_port);
        if (p == nullptr)
          ctx.emit("UNKNOWN_PORT", "assertion '" + a.name + "': component type '" + dst->name +
                                       "' has no port '" + atom.dst_port + "'");
        else if (p->direction != PortDirection::Input)
          ctx.emit("PORT_DIRECTION", "assertion '" + a.name + "': connection destination port '" +
                                         atom.dst_port + "' of '" + dst->name +
                                         "' must be an input port");
      }
      // The event vocabulary names one shared port, so a connection atom
      // between differently-named ports has no monitorable counterpart.
      if (atom.port != atom.dst_port)
        ctx.emit("CONN_NAME_MISMATCH", "assertion '" + a.name + "': connection atom ports '" +
                                           atom.port + "' and '" + atom.dst_port +
                                           "' must share one name");
      return;
    }
    default: return;
  }
}

void walk_formula(TypecheckContext& ctx, const AssertionDecl& a,
                  const std::map<std::string, VarInfo>& vars, const AstNode& node) {
  if (node.is_atom()) {
    check_atom(ctx, a, vars, node);
    return;
  }
  for (const AstNode& child : node.children) walk_formula(ctx, a, vars, child);
}

}  // namespace

std::vector<Diagnostic> typecheck_spec(const SpecDocument& doc) {
  std::vector<Diagnostic> diags;
  TypecheckContext ctx{doc, diags};

  std::set<std::string> sort_names;
  for (const DataSort& s : doc.sorts) {
    if (!sort_names.insert(s.name).second)
      ctx.emit("DUP_SORT", "duplicate sort '" + s.name + "'");
  }

  std::set<std::string> type_names;
  for (const ComponentType& ct : doc.component_types) {
    if (!type_names.insert(ct.name).second)
      ctx.emit("DUP_TYPE", "duplicate component type '" + ct.name + "'");
    std::set<std::string> port_names;
    for (const PortDecl& p : ct.ports) {
      if (!port_names.insert(p.name).second)
        ctx.emit("DUP_PORT", "component type '" + ct.name + "': duplicate port '" + p.name + "'");
      if (p.signature.empty())
        ctx.emit("ARITY_MISMATCH",
                 "component type '" + ct.name + "': port '" + p.name + "' has empty signature");
      for (const std::string& sort : p.signature) {
        if (!sort_names.count(sort) && doc.find_type(sort) == nullptr)
          ctx.emit("UNKNOWN_SORT", "component type '" + ct.name + "': port '" + p.name +
                                       "' references unknown sort '" + sort + "'");
      }
    }
  }

  std::set<std::string> assertion_names;
  for (const AssertionDecl& a : doc.assertions) {
    if (!assertion_names.insert(a.name).second)
      ctx.emit("DUP_ASSERTION", "duplicate assertion '" + a.name + "'");
    std::map<std::string, VarInfo> vars;
    for (const VarDecl& v : a.variables) {
      if (vars.count(v.name)) {
        ctx.emit("DUP_VAR", "assertion '" + a.name + "': duplicate variable '" + v.name + "'");
        continue;
      }
      VarInfo info;
      info.component = doc.find_type(v.type_name);
      if (info.component == nullptr) {
        info.sort = v.type_name;
        if (!sort_names.count(v.type_name))
          ctx.emit("UNKNOWN_SORT", "assertion '" + a.name + "': variable '" + v.name +
                                       "' references unknown sort '" + v.type_name + "'");
      }
      vars.emplace(v.name, info);
    }
    walk_formula(ctx, a, vars, a.body);
    if (a.trigger) {
      if (!a.trigger->is_atom())
        ctx.emit("SYNTAX", "assertion '" + a.name + "': trigger must be a single atom");
      else
        check_atom(ctx, a, vars, *a.trigger);
    }
  }
  return diags;
}

namespace {

std::string print_term(const Term& t) {
  if (t.kind == Term::Kind::StrLit) {
    std::string out = "\"";
    for (char c : t.text) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
    return out;
  }
  return t.text;
}

void print_formula(const AstNode& node, std::string& out) {
  switch (node.kind) {
    case AstKind::True: out += "true"; return;
    case AstKind::False: out += "false"; return;
    case AstKind::Not:
      out += "! (";
      print_formula(node.children[0], out);
      out += ')';
      return;
    case AstKind::Next:
    case AstKind::Globally:
    case AstKind::Eventually: {
      out += node.kind == AstKind::Next ? "X" : node.kind == AstKind::Globally ? "G" : "F";
      out += " (";
      print_formula(node.children[0], out);
      out += ')';
      return;
    }
    case AstKind::And:
    case AstKind::Or:
    case AstKind::Implies:
    case AstKind::Until:
    case AstKind::WeakUntil: {
      const char* sym = node.kind == AstKind::And       ? " & "
                        : node.kind == AstKind::Or      ? " | "
                        : node.kind == AstKind::Implies ? " -> "
                        : node.kind == AstKind::Until   ? " U "
                                                        : " W ";
      out += '(';
      print_formula(node.children[0], out);
      out += sym;
      print_formula(node.children[1], out);
      out += ')';
      return;
    }
    default: out += print_atom(node); return;
  }
}

}  // namespace

std::string print_atom(const AstNode& atom) {
  switch (atom.kind) {
    case AstKind::PortActive: return "val(" + atom.comp_var + "." + atom.port + ")";
    case AstKind::ComponentActive: return "active(" + atom.comp_var + ")";
    case AstKind::Connected:
      return "conn(" + atom.comp_var + "." + atom.port + " -> " + atom.dst_var + "." +
             atom.dst_port + ")";
    case AstKind::PortValuation: {
      std::string out = atom.comp_var + "." + atom.port + " = (";
      for (size_t i = 0; i < atom.terms.size(); ++i) {
        if (i > 0) out += ", ";
        out += print_term(atom.terms[i]);
      }
      out += ')';
      return out;
    }
    default: return "<not an atom>";
  }
}

std::string print_spec(const SpecDocument& doc) {
  std::string out;
  for (const DataSort& s : doc.sorts) {
    out += "sort " + s.name + ";\n";
  }
  if (!doc.sorts.empty() && !doc.component_types.empty()) out += '\n';
  for (size_t i = 0; i < doc.component_types.size(); ++i) {
    const ComponentType& ct = doc.component_types[i];
    if (i > 0) out += '\n';
    out += "component " + ct.name + " {\n";
    for (const PortDecl& p : ct.ports) {
      out += "  ";
      out += p.direction == PortDirection::Input ? "in " : "out ";
      out += p.name + "(";
      for (size_t j = 0; j < p.signature.size(); ++j) {
        if (j > 0) out += ", ";
        out += p.signature[j];
      }
      out += ");\n";
    }
    out += "}\n";
  }
  if (!doc.component_types.empty() && !doc.assertions.empty()) out += '\n';
  for (size_t i = 0; i < doc.assertions.size(); ++i) {
    const AssertionDecl& a = doc.assertions[i];
    if (i > 0) out += '\n';
    out += "assertion " + a.name;
    if (!a.variables.empty()) {
      out += " vars ";
      for (size_t j = 0; j < a.variables.size(); ++j) {
        if (j > 0) out += ", ";
        out += a.variables[j].name + ": " + a.variables[j].type_name;
      }
    }
    if (a.trigger) out += " trigger " + print_atom(*a.trigger);
    out += " {\n  ";
    print_formula(a.body, out);
    out += "\n}\n";
  }
  return out;
}

}  // namespace archmon::spec
