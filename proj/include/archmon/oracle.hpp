#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "archmon/model.hpp"
#include "archmon/spec.hpp"

namespace archmon::oracle {

/// Total, rigid assignment of assertion variables: component variables map
/// to instance ids, data variables to canonical literals.
using Valuation = std::map<std::string, std::string>;

struct OracleError : std::runtime_error {
  std::string code;  // OPEN_TRACE, BUDGET_EXCEEDED
  OracleError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

/// Two-valued LTL truth of an assertion over a lasso trace, evaluated
/// denotationally on the snapshots:
///   active(c)   — c becomes active at the step (all components count as
///                 becoming active at step 0),
///   val(c.p)    — the port carries at least one message,
///   c.p = (t..) — the instantiated tuple is a member of the port valuation,
///   conn(a.o -> b.i) — the connection is present and the output carries
///                 messages.
/// Throws OracleError(OPEN_TRACE) when the trace has no loop.
bool eval_assertion(const spec::AssertionDecl& assertion, const model::ArchTrace& trace,
                    const Valuation& valuation, size_t at, const spec::SpecDocument& doc);

struct EnumerateOptions {
  size_t budget = 100000;
};

/// All sort-correct total valuations drawn from the trace: component
/// variables range over instances of their type appearing in any active set,
/// data variables over literals of their sort appearing in any valuation.
/// Deterministic order. Throws OracleError(BUDGET_EXCEEDED) above the cap.
std::vector<Valuation> enumerate_bindings(const spec::AssertionDecl& assertion,
                                          const model::ArchTrace& trace,
                                          const spec::SpecDocument& doc,
                                          const EnumerateOptions& options = {});

}  // namespace archmon::oracle
