#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "archmon/events.hpp"
#include "archmon/spec.hpp"

namespace archmon::model {

/// Canonical literal text: decimal integers are normalized (no leading
/// zeros, no plus sign, -0 -> 0); everything else is kept byte-for-byte.
std::string canonical_literal(const std::string& text);

struct MessageValue {
  std::string sort;
  std::string literal;  // canonical form
  auto operator<=>(const MessageValue&) const = default;
};

/// One message on a port: a tuple of values matching the port signature.
using MessageTuple = std::vector<MessageValue>;

struct ComponentId {
  std::string type;
  std::string instance;
  auto operator<=>(const ComponentId&) const = default;
};

struct PortRef {
  std::string instance;  // instance ids are unique across a trace
  std::string port;
  auto operator<=>(const PortRef&) const = default;
};

std::string to_string(const PortRef& ref);

struct ArchSnapshot {
  std::vector<ComponentId> active;
  // keyed by input component port; values are the connected output ports
  std::map<PortRef, std::set<PortRef>> connections;
  // every tuple list is kept sorted and deduplicated (set semantics)
  std::map<PortRef, std::vector<MessageTuple>> valuations;

  const ComponentId* find_instance(const std::string& instance) const;
  bool is_active(const std::string& instance) const;
  bool operator==(const ArchSnapshot&) const = default;
};

struct ArchTrace {
  std::vector<ArchSnapshot> steps;
  std::optional<size_t> loop_start;  // lasso when present

  bool operator==(const ArchTrace&) const = default;
};

struct ModelDiagnostic {
  std::string code;     // TYPE_MISMATCH, VALUATION_INCONSISTENT, INACTIVE_ENDPOINT,
                        // PORT_NOT_DECLARED, DUP_INSTANCE, LOOP_OUT_OF_RANGE
  std::optional<size_t> step;
  std::string where;    // offending port/component reference
  std::string message;
};

std::vector<ModelDiagnostic> validate_snapshot(const ArchSnapshot& snapshot,
                                               const spec::SpecDocument& spec);
std::vector<ModelDiagnostic> validate_trace(const ArchTrace& trace,
                                            const spec::SpecDocument& spec);

struct EventRecord {
  uint64_t step = 0;
  std::string name;
  std::vector<std::string> args;  // canonical literals
  auto operator<=>(const EventRecord&) const = default;
};

struct EventTrace {
  std::vector<std::vector<EventRecord>> steps;  // per-step record sets, sorted
  std::optional<size_t> loop_start;
};

struct AbstractionError {
  std::string code;  // SCHEMA_MISS
  std::string message;
};

/// Maps an architecture trace to its event trace: activation events where a
/// component becomes active (everything counts as newly active at step 0),
/// execution/call events (both arities) for ports carrying messages, and
/// connection-call events for same-named connected port pairs whose output
/// side carries messages. Every record instantiates exactly one schema.
EventTrace abstract_trace(const ArchTrace& trace, const events::EventGenResult& schemas,
                          std::vector<AbstractionError>* errors = nullptr);

/// Replaces the lasso by an explicit prefix of `prefix_len + k * loop_len`
/// snapshots (the loop repeated k more times); the result keeps loop_start
/// pointing at the last copy.
ArchTrace unroll(const ArchTrace& trace, size_t k);

// --- JSON (field names are part of the exchange format) ---

std::string trace_to_json(const ArchTrace& trace);

struct TraceParseResult {
  std::optional<ArchTrace> trace;
  std::string error;
};

/// The JSON stores each valuation as a flat list of [sort, literal] pairs;
/// the spec provides the port signature arity used to regroup the flat list
/// into message tuples. Unresolvable ports fall back to arity-1 grouping and
/// are left for validate_trace to flag.
TraceParseResult trace_from_json(const std::string& text, const spec::SpecDocument& doc);

std::string event_record_to_json(const EventRecord& record);
std::optional<EventRecord> event_record_from_json(const std::string& line, std::string* error);

}  // namespace archmon::model
