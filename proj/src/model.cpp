#include "archmon/model.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace archmon::model {

using nlohmann::ordered_json;

std::string canonical_literal(const std::string& text) {
  // integer?
  size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i >= text.size()) return text;
  for (size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return text;
  while (i + 1 < text.size() && text[i] == '0') ++i;
  std::string digits = text.substr(i);
  if (digits == "0") return "0";
  return neg ? "-" + digits : digits;
}

std::string to_string(const PortRef& ref) { return "(" + ref.instance + ", " + ref.port + ")"; }

const ComponentId* ArchSnapshot::find_instance(const std::string& instance) const {
  for (const ComponentId& c : active)
    if (c.instance == instance) return &c;
  return nullptr;
}

bool ArchSnapshot::is_active(const std::string& instance) const {
  return find_instance(instance) != nullptr;
}

namespace {

struct Resolver {
  const spec::SpecDocument& doc;
  const ArchSnapshot& snap;
  std::vector<ModelDiagnostic>& diags;

  void emit(const std::string& code, const std::string& where, const std::string& msg) {
    diags.push_back(ModelDiagnostic{code, std::nullopt, where, msg});
  }

  // Resolves a port reference against the active set; emits diagnostics on
  // failure and returns nullptr.
  const spec::PortDecl* resolve(const PortRef& ref, bool* inactive = nullptr) {
    const ComponentId* comp = snap.find_instance(ref.instance);
    if (comp == nullptr) {
      if (inactive) *inactive = true;
      emit("INACTIVE_ENDPOINT", to_string(ref),
           "component '" + ref.instance + "' is not active");
      return nullptr;
    }
    const spec::ComponentType* ct = doc.find_type(comp->type);
    if (ct == nullptr) {
      emit("PORT_NOT_DECLARED", to_string(ref),
           "component type '" + comp->type + "' is not declared");
      return nullptr;
    }
    const spec::PortDecl* port = ct->find_port(ref.port);
    if (port == nullptr) {
      emit("PORT_NOT_DECLARED", to_string(ref),
           "type '" + comp->type + "' has no port '" + ref.port + "'");
      return nullptr;
    }
    return port;
  }
};

bool tuple_matches_signature(const MessageTuple& tuple, const std::vector<std::string>& sig) {
  if (tuple.size() != sig.size()) return false;
  for (size_t i = 0; i < tuple.size(); ++i)
    if (tuple[i].sort != sig[i]) return false;
  return true;
}

}  // namespace

std::vector<ModelDiagnostic> validate_snapshot(const ArchSnapshot& snapshot,
                                               const spec::SpecDocument& doc) {
  std::vector<ModelDiagnostic> diags;
  Resolver res{doc, snapshot, diags};

  std::set<std::string> seen;
  for (const ComponentId& c : snapshot.active) {
    if (!seen.insert(c.instance).second)
      res.emit("DUP_INSTANCE", c.instance, "instance id appears twice in the active set");
    if (doc.find_type(c.type) == nullptr)
      res.emit("PORT_NOT_DECLARED", c.instance,
               "component type '" + c.type + "' is not declared");
  }

  for (const auto& [input, outputs] : snapshot.connections) {
    const spec::PortDecl* in_port = res.resolve(input);
    if (in_port && in_port->direction != spec::PortDirection::Input)
      res.emit("PORT_NOT_DECLARED", to_string(input),
               "connection key must be an input port");
    for (const PortRef& out : outputs) {
      const spec::PortDecl* out_port = res.resolve(out);
      if (out_port && out_port->direction != spec::PortDirection::Output)
        res.emit("PORT_NOT_DECLARED", to_string(out),
                 "connection target must be an output port");
      if (in_port && out_port && in_port->signature != out_port->signature)
        res.emit("TYPE_MISMATCH", to_string(input),
                 "connected ports " + to_string(out) + " and " + to_string(input) +
                     " have incompatible signatures");
    }
  }

  for (const auto& [ref, tuples] : snapshot.valuations) {
    const spec::PortDecl* port = res.resolve(ref);
    if (!port) continue;
    for (const MessageTuple& tuple : tuples) {
      if (!tuple_matches_signature(tuple, port->signature))
        res.emit("TYPE_MISMATCH", to_string(ref),
                 "message does not match the declared signature of port '" + ref.port + "'");
    }
  }

  // Eq. 3: input with a nonempty connection set carries exactly the union of
  // the connected outputs' messages.
  for (const auto& [input, outputs] : snapshot.connections) {
    if (outputs.empty()) continue;
    std::set<MessageTuple> expected;
    for (const PortRef& out : outputs) {
      auto it = snapshot.valuations.find(out);
      if (it == snapshot.valuations.end()) continue;
      expected.insert(it->second.begin(), it->second.end());
    }
    std::set<MessageTuple> actual;
    auto it = snapshot.valuations.find(input);
    if (it != snapshot.valuations.end()) actual.insert(it->second.begin(), it->second.end());
    if (expected != actual)
      res.emit("VALUATION_INCONSISTENT", to_string(input),
               "valuation of " + to_string(input) +
                   " is not the union of its connected outputs' valuations");
  }

  return diags;
}

std::vector<ModelDiagnostic> validate_trace(const ArchTrace& trace,
                                            const spec::SpecDocument& doc) {
  std::vector<ModelDiagnostic> diags;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    for (ModelDiagnostic d : validate_snapshot(trace.steps[i], doc)) {
      d.step = i;
      diags.push_back(std::move(d));
    }
  }
  if (trace.loop_start && *trace.loop_start >= trace.steps.size())
    diags.push_back(ModelDiagnostic{"LOOP_OUT_OF_RANGE", std::nullopt, "",
                                    "loopStart " + std::to_string(*trace.loop_start) +
                                        " is outside the prefix of length " +
                                        std::to_string(trace.steps.size())});
  return diags;
}

EventTrace abstract_trace(const ArchTrace& trace, const events::EventGenResult& schemas,
                          std::vector<AbstractionError>* errors) {
  EventTrace out;
  out.loop_start = trace.loop_start;

  auto require = [&](const std::string& name, size_t arity) -> bool {
    if (schemas.find(name, arity) != nullptr) return true;
    if (errors)
      errors->push_back(AbstractionError{
          "SCHEMA_MISS", "no schema for event '" + name + "' of arity " + std::to_string(arity)});
    return false;
  };

  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const ArchSnapshot& snap = trace.steps[i];
    std::set<EventRecord> records;

    for (const ComponentId& c : snap.active) {
      bool newly = i == 0 || !trace.steps[i - 1].is_active(c.instance);
      if (!newly) continue;
      std::string name = events::fold_type_name(c.type) + "_activation";
      if (require(name, 1)) records.insert(EventRecord{i, name, {c.instance}});
    }

    for (const auto& [ref, tuples] : snap.valuations) {
      if (tuples.empty()) continue;
      const ComponentId* comp = snap.find_instance(ref.instance);
      if (!comp) continue;  // invalid snapshot; validation reports it
      // The schema provenance tells input (execution) from output (call).
      const events::EventSchema* bare = nullptr;
      for (const events::EventSchema& s : schemas.schemas) {
        if (s.component_type == comp->type && s.port == ref.port && s.arity() == 1 &&
            (s.kind == events::EventKind::Execution || s.kind == events::EventKind::Call)) {
          bare = &s;
          break;
        }
      }
      if (bare == nullptr) {
        if (errors)
          errors->push_back(AbstractionError{
              "SCHEMA_MISS",
              "no execution/call schema for port " + comp->type + "." + ref.port});
        continue;
      }
      const std::string& name = bare->name;
      if (require(name, 1)) records.insert(EventRecord{i, name, {ref.instance}});
      for (const MessageTuple& tuple : tuples) {
        std::vector<std::string> args{ref.instance};
        for (const MessageValue& v : tuple) args.push_back(v.literal);
        if (require(name, args.size())) records.insert(EventRecord{i, name, std::move(args)});
      }
    }

    for (const auto& [input, outputs] : snap.connections) {
      const ComponentId* in_comp = snap.find_instance(input.instance);
      if (!in_comp) continue;
      for (const PortRef& output : outputs) {
        if (input.port != output.port) continue;  // no shared-name schema otherwise
        const ComponentId* out_comp = snap.find_instance(output.instance);
        if (!out_comp) continue;
        auto val = snap.valuations.find(output);
        if (val == snap.valuations.end() || val->second.empty()) continue;
        std::string name = events::fold_type_name(in_comp->type) + "_call_" +
                           events::fold_type_name(out_comp->type) + "_" + input.port;
        if (require(name, 2))
          records.insert(EventRecord{i, name, {input.instance, output.instance}});
      }
    }

    out.steps.emplace_back(records.begin(), records.end());
  }
  return out;
}

ArchTrace unroll(const ArchTrace& trace, size_t k) {
  if (!trace.loop_start || trace.steps.empty()) return trace;
  ArchTrace out = trace;
  size_t start = *trace.loop_start;
  for (size_t round = 0; round < k; ++round)
    for (size_t i = start; i < trace.steps.size(); ++i) out.steps.push_back(trace.steps[i]);
  out.loop_start = out.steps.size() - (trace.steps.size() - start);
  return out;
}

// --- JSON ---

std::string trace_to_json(const ArchTrace& trace) {
  ordered_json doc;
  doc["steps"] = ordered_json::array();
  for (const ArchSnapshot& snap : trace.steps) {
    ordered_json step;
    step["active"] = ordered_json::array();
    for (const ComponentId& c : snap.active) {
      ordered_json comp;
      comp["type"] = c.type;
      comp["id"] = c.instance;
      step["active"].push_back(comp);
    }
    step["connections"] = ordered_json::array();
    for (const auto& [input, outputs] : snap.connections) {
      ordered_json conn;
      conn["from"] = ordered_json{{"id", input.instance}, {"port", input.port}};
      conn["to"] = ordered_json::array();
      for (const PortRef& out : outputs)
        conn["to"].push_back(ordered_json{{"id", out.instance}, {"port", out.port}});
      step["connections"].push_back(conn);
    }
    step["valuations"] = ordered_json::array();
    for (const auto& [ref, tuples] : snap.valuations) {
      ordered_json val;
      val["id"] = ref.instance;
      val["port"] = ref.port;
      val["values"] = ordered_json::array();
      for (const MessageTuple& tuple : tuples)
        for (const MessageValue& v : tuple)
          val["values"].push_back(ordered_json::array({v.sort, v.literal}));
      step["valuations"].push_back(val);
    }
    doc["steps"].push_back(step);
  }
  if (trace.loop_start)
    doc["loopStart"] = *trace.loop_start;
  else
    doc["loopStart"] = nullptr;
  return doc.dump(2) + "\n";
}

TraceParseResult trace_from_json(const std::string& text, const spec::SpecDocument& spec_doc) {
  TraceParseResult result;
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    result.error = "invalid JSON";
    return result;
  }
  ArchTrace trace;
  try {
    if (!doc.contains("steps") || !doc["steps"].is_array()) {
      result.error = "missing 'steps' array";
      return result;
    }
    for (const auto& step : doc["steps"]) {
      ArchSnapshot snap;
      for (const auto& comp : step.value("active", ordered_json::array()))
        snap.active.push_back(
            ComponentId{comp.at("type").get<std::string>(), comp.at("id").get<std::string>()});
      for (const auto& conn : step.value("connections", ordered_json::array())) {
        PortRef from{conn.at("from").at("id").get<std::string>(),
                     conn.at("from").at("port").get<std::string>()};
        std::set<PortRef>& targets = snap.connections[from];
        for (const auto& to : conn.at("to"))
          targets.insert(
              PortRef{to.at("id").get<std::string>(), to.at("port").get<std::string>()});
      }
      for (const auto& val : step.value("valuations", ordered_json::array())) {
        PortRef ref{val.at("id").get<std::string>(), val.at("port").get<std::string>()};
        std::vector<MessageValue> flat;
        for (const auto& pair : val.at("values")) {
          if (!pair.is_array() || pair.size() != 2) {
            result.error = "valuation entries must be [sort, literal] pairs";
            return result;
          }
          flat.push_back(MessageValue{pair[0].get<std::string>(),
                                      canonical_literal(pair[1].get<std::string>())});
        }
        size_t arity = 1;
        if (const ComponentId* comp = snap.find_instance(ref.instance)) {
          if (const spec::ComponentType* ct = spec_doc.find_type(comp->type)) {
            if (const spec::PortDecl* port = ct->find_port(ref.port)) {
              if (!port->signature.empty() && flat.size() % port->signature.size() == 0)
                arity = port->signature.size();
            }
          }
        }
        std::vector<MessageTuple> tuples;
        for (size_t i = 0; i + arity <= flat.size(); i += arity)
          tuples.emplace_back(flat.begin() + static_cast<long>(i),
                              flat.begin() + static_cast<long>(i + arity));
        std::sort(tuples.begin(), tuples.end());
        tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
        snap.valuations[ref] = std::move(tuples);
      }
      trace.steps.push_back(std::move(snap));
    }
    if (doc.contains("loopStart") && !doc["loopStart"].is_null())
      trace.loop_start = doc["loopStart"].get<size_t>();
  } catch (const nlohmann::json::exception& e) {
    result.error = e.what();
    return result;
  }
  result.trace = std::move(trace);
  return result;
}

std::string event_record_to_json(const EventRecord& record) {
  ordered_json doc;
  doc["step"] = record.step;
  doc["event"] = record.name;
  doc["args"] = record.args;
  return doc.dump();
}

std::optional<EventRecord> event_record_from_json(const std::string& line, std::string* error) {
  ordered_json doc = ordered_json::parse(line, nullptr, false);
  if (doc.is_discarded()) {
    if (error) *error = "invalid JSON";
    return std::nullopt;
  }
  EventRecord record;
  try {
    record.step = doc.at("step").get<uint64_t>();
    record.name = doc.at("event").get<std::string>();
    for (const auto& arg : doc.at("args"))
      record.args.push_back(canonical_literal(arg.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
  return record;
}

}  // namespace archmon::model
