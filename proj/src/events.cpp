#include "archmon/events.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "json.hpp"

namespace archmon::events {

using spec::ComponentType;
using spec::PortDecl;
using spec::PortDirection;

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Activation: return "activation";
    case EventKind::Execution: return "execution";
    case EventKind::Call: return "call";
    case EventKind::ConnectionCall: return "connection-call";
  }
  return "?";
}

std::string fold_type_name(const std::string& name) {
  std::string out = name;
  if (!out.empty()) out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  return out;
}

const EventSchema* EventGenResult::find(const std::string& name, size_t arity) const {
  for (const EventSchema& s : schemas)
    if (s.name == name && s.arity() == arity) return &s;
  return nullptr;
}

EventGenResult generate_events(const std::vector<ComponentType>& types) {
  EventGenResult result;
  std::map<std::pair<std::string, size_t>, std::string> origin;  // (name, arity) -> description

  auto add = [&](EventSchema schema, const std::string& from) {
    auto key = std::make_pair(schema.name, schema.arity());
    auto it = origin.find(key);
    if (it != origin.end()) {
      result.diagnostics.push_back(spec::Diagnostic{
          0, 0, "NAME_COLLISION",
          "event '" + schema.name + "' (arity " + std::to_string(schema.arity()) +
              ") generated from both " + it->second + " and " + from});
      return;
    }
    origin.emplace(key, from);
    result.schemas.push_back(std::move(schema));
  };

  for (const ComponentType& ct : types) {
    std::string lc = fold_type_name(ct.name);
    {
      EventSchema s;
      s.name = lc + "_activation";
      s.kind = EventKind::Activation;
      s.params = {EventParam{EventParam::Role::Self, ct.name}};
      s.component_type = ct.name;
      add(std::move(s), "type " + ct.name);
    }
    for (const PortDecl& p : ct.ports) {
      EventKind kind =
          p.direction == PortDirection::Input ? EventKind::Execution : EventKind::Call;
      std::string suffix = p.direction == PortDirection::Input ? "_execution" : "_call";
      EventSchema bare;
      bare.name = lc + "_" + p.name + suffix;
      bare.kind = kind;
      bare.params = {EventParam{EventParam::Role::Self, ct.name}};
      bare.component_type = ct.name;
      bare.port = p.name;
      add(bare, "port " + ct.name + "." + p.name);

      EventSchema full = bare;
      for (const std::string& sort : p.signature)
        full.params.push_back(EventParam{EventParam::Role::Payload, sort});
      add(std::move(full), "port " + ct.name + "." + p.name);

      // Connection events: p is an input of ct and some other type declares
      // a port with the same name.
      if (p.direction == PortDirection::Input) {
        for (const ComponentType& other : types) {
          if (other.name == ct.name) continue;
          if (other.find_port(p.name) == nullptr) continue;
          EventSchema conn;
          conn.name = lc + "_call_" + fold_type_name(other.name) + "_" + p.name;
          conn.kind = EventKind::ConnectionCall;
          conn.params = {EventParam{EventParam::Role::Self, ct.name},
                         EventParam{EventParam::Role::Peer, other.name}};
          conn.component_type = ct.name;
          conn.port = p.name;
          conn.peer_type = other.name;
          add(std::move(conn), "connection " + other.name + " -> " + ct.name + "." + p.name);
        }
      }
    }
  }

  std::sort(result.schemas.begin(), result.schemas.end(), [](const auto& a, const auto& b) {
    return a.name != b.name ? a.name < b.name : a.arity() < b.arity();
  });
  return result;
}

namespace {

std::string joinpoint_for(const EventSchema& s) {
  std::string capture = "self";
  for (size_t i = 1; i < s.params.size(); ++i) {
    if (s.params[i].role == EventParam::Role::Peer)
      capture += ", peer";
    else
      capture += ", arg" + std::to_string(i - 1);
  }
  switch (s.kind) {
    case EventKind::Activation:
      return "on constructor completion of " + s.component_type + ", capture (" + capture + ")";
    case EventKind::Execution:
      return "on entry of method " + s.port + " of class " + s.component_type + ", capture (" +
             capture + ")";
    case EventKind::Call:
      return "before outgoing invocation of " + s.port + " by " + s.component_type +
             ", capture (" + capture + ")";
    case EventKind::ConnectionCall:
      return "before outgoing invocation of " + s.port + " from " + s.peer_type + " to " +
             s.component_type + ", capture (" + capture + ")";
  }
  return "";
}

}  // namespace

std::string generate_instrumentation_manifest(const std::vector<EventSchema>& schemas) {
  nlohmann::ordered_json doc;
  doc["events"] = nlohmann::ordered_json::array();
  for (const EventSchema& s : schemas) {
    nlohmann::ordered_json entry;
    entry["name"] = s.name;
    entry["kind"] = to_string(s.kind);
    entry["joinpoint"] = joinpoint_for(s);
    entry["params"] = nlohmann::ordered_json::array();
    for (const EventParam& p : s.params) {
      nlohmann::ordered_json param;
      param["role"] = p.role == EventParam::Role::Self      ? "self"
                      : p.role == EventParam::Role::Payload ? "payload"
                                                            : "peer";
      param["sort"] = p.sort;
      entry["params"].push_back(param);
    }
    doc["events"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

std::optional<DecodedName> decode_event_name(const std::string& name,
                                             const std::vector<ComponentType>& types,
                                             bool* ambiguous) {
  if (ambiguous) *ambiguous = false;
  std::vector<DecodedName> hits;
  for (const ComponentType& ct : types) {
    std::string lc = fold_type_name(ct.name);
    if (name == lc + "_activation")
      hits.push_back(DecodedName{EventKind::Activation, ct.name, "", ""});
    for (const PortDecl& p : ct.ports) {
      std::string suffix = p.direction == PortDirection::Input ? "_execution" : "_call";
      if (name == lc + "_" + p.name + suffix) {
        hits.push_back(DecodedName{p.direction == PortDirection::Input ? EventKind::Execution
                                                                       : EventKind::Call,
                                   ct.name, p.name, ""});
      }
      if (p.direction == PortDirection::Input) {
        for (const ComponentType& other : types) {
          if (other.name == ct.name || other.find_port(p.name) == nullptr) continue;
          if (name == lc + "_call_" + fold_type_name(other.name) + "_" + p.name)
            hits.push_back(DecodedName{EventKind::ConnectionCall, ct.name, p.name, other.name});
        }
      }
    }
  }
  if (hits.empty()) return std::nullopt;
  if (hits.size() > 1 && ambiguous) *ambiguous = true;
  return hits.front();
}

}  // namespace archmon::events
