#pragma once

#include <stdexcept>
#include <string>

#include "archmon/events.hpp"
#include "archmon/ltl.hpp"
#include "archmon/spec.hpp"

namespace archmon::translate {

struct TranslationError : std::runtime_error {
  std::string code;  // ATOM_UNRESOLVED
  TranslationError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

/// Rewrites one architecture atom into its event atom:
///   val(c.p)        -> ct_p_execution(c) / ct_p_call(c)   (input / output)
///   c.p = (t, ...)  -> ct_p_execution(c, t, ...) / ct_p_call(c, t, ...)
///   active(c)       -> ct_activation(c)
///   conn(c'.p -> c.p) -> ct_call_ct'_p(c, c')
/// Unreachable after typechecking, but throws TranslationError with code
/// ATOM_UNRESOLVED when no schema matches.
ltl::Atom translate_atom(const spec::AstNode& atom, const spec::AssertionDecl& assertion,
                         const spec::SpecDocument& doc, const events::EventGenResult& schemas);

/// Structure-preserving rewrite of a typechecked assertion: the temporal and
/// boolean skeleton is kept node for node, atoms are replaced per the case
/// table above.
ltl::Formula translate_assertion(ltl::Arena& arena, const spec::AssertionDecl& assertion,
                                 const spec::SpecDocument& doc,
                                 const events::EventGenResult& schemas);

/// Canonical text form of a ground formula (the monitor module's parser
/// accepts exactly this syntax).
inline std::string print_ltl(const ltl::Arena& arena, ltl::Formula f) {
  return ltl::to_string(arena, f);
}

/// The creation atom for runtime slicing: the assertion's explicit trigger
/// if declared, otherwise the syntactically first atom of the body. Returns
/// false if the assertion has no atoms at all.
bool trigger_atom(const spec::AssertionDecl& assertion, spec::AstNode* out);

}  // namespace archmon::translate
