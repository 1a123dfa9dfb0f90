#pragma once

#include <optional>
#include <string>
#include <vector>

#include "archmon/spec.hpp"

namespace archmon::events {

enum class EventKind : uint8_t { Activation, Execution, Call, ConnectionCall };

std::string to_string(EventKind kind);

struct EventParam {
  enum class Role : uint8_t { Self, Payload, Peer } role = Role::Self;
  std::string sort;  // data sort or component type name
  bool operator==(const EventParam&) const = default;
};

/// One monitorable event declaration. Execution/call events come in two
/// arities sharing a name, so schema identity is (name, arity).
struct EventSchema {
  std::string name;
  EventKind kind = EventKind::Activation;
  std::vector<EventParam> params;

  // provenance, for decoding names back into their constituents
  std::string component_type;
  std::string port;        // empty for activation
  std::string peer_type;   // connection-call only (the calling type)

  size_t arity() const { return params.size(); }
  bool operator==(const EventSchema&) const = default;
};

struct EventGenResult {
  std::vector<EventSchema> schemas;  // sorted by (name, arity)
  std::vector<spec::Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }

  const EventSchema* find(const std::string& name, size_t arity) const;
};

/// Derives the full monitorable event vocabulary from the component types:
/// one activation event per type, execution events (both arities) per input
/// port, call events (both arities) per output port, and one connection-call
/// event per pair of distinct types sharing a port name that is an input on
/// the first. Event names fold the first character of the type name to
/// lower case. Emits NAME_COLLISION when folding makes two schemas collide.
EventGenResult generate_events(const std::vector<spec::ComponentType>& types);

/// Language-neutral instrumentation manifest (JSON text) describing, per
/// schema, where a probe has to be installed and what it captures.
std::string generate_instrumentation_manifest(const std::vector<EventSchema>& schemas);

/// Lower-cases the first character only (Basket -> basket).
std::string fold_type_name(const std::string& name);

/// Decodes a schema name back into its constituents, given the identifier
/// sets of the spec. Returns nullopt when the name is not decodable, and
/// reports ambiguity through `ambiguous`.
struct DecodedName {
  EventKind kind;
  std::string component_type;
  std::string port;
  std::string peer_type;
};
std::optional<DecodedName> decode_event_name(const std::string& name,
                                             const std::vector<spec::ComponentType>& types,
                                             bool* ambiguous = nullptr);

}  // namespace archmon::events
