#include "archmon/engine.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace archmon::engine {

using model::EventRecord;
using monitor::Verdict;

size_t VerdictReport::count(Verdict v) const {
  size_t n = 0;
  for (const InstanceState& i : instances)
    if (i.verdict == v) ++n;
  return n;
}

std::string report_to_json(const VerdictReport& report) {
  nlohmann::ordered_json doc;
  doc["instances"] = nlohmann::ordered_json::array();
  for (const InstanceState& inst : report.instances) {
    nlohmann::ordered_json entry;
    entry["assertion"] = inst.assertion;
    entry["binding"] = nlohmann::ordered_json::object();
    for (const auto& [var, value] : inst.binding) entry["binding"][var] = value;
    entry["verdict"] = monitor::to_string(inst.verdict);
    entry["createdAt"] = inst.created_at;
    if (inst.first_violation_step)
      entry["firstViolationStep"] = *inst.first_violation_step;
    else
      entry["firstViolationStep"] = nullptr;
    entry["warnings"] = inst.warnings;
    doc["instances"].push_back(entry);
  }
  doc["summary"] = nlohmann::ordered_json{
      {"TOP", report.count(Verdict::Top)},
      {"BOTTOM", report.count(Verdict::Bottom)},
      {"INCONCLUSIVE", report.count(Verdict::Inconclusive)},
  };
  doc["diagnostics"] = nlohmann::ordered_json::array();
  for (const EngineDiagnostic& d : report.diagnostics) {
    nlohmann::ordered_json entry;
    entry["code"] = d.code;
    entry["message"] = d.message;
    if (d.record_index)
      entry["record"] = *d.record_index;
    else
      entry["record"] = nullptr;
    doc["diagnostics"].push_back(entry);
  }
  doc["truncated"] = report.truncated;
  return doc.dump(2) + "\n";
}

namespace {

struct AssertionMonitor {
  std::string name;
  const spec::AssertionDecl* decl = nullptr;
  std::vector<ltl::Atom> atoms;       // formula atom table, first-occurrence order
  monitor::MonitorAutomaton automaton;
  std::optional<ltl::Atom> trigger;   // creation atom (schematic)
  std::vector<std::string> variables;
};

struct Instance {
  size_t assertion = 0;
  Binding binding;
  uint32_t state = 0;
  Verdict verdict = Verdict::Inconclusive;
  uint64_t created_at = 0;
  std::optional<uint64_t> first_violation_step;
  std::optional<uint64_t> decided_at;
  std::vector<std::string> warnings;
};

// Tries to match an event against a schematic atom under a binding.
// On success `assignments` holds the variables the event would resolve.
bool match_atom(const ltl::Atom& atom, const EventRecord& event, const Binding& binding,
                Binding* assignments) {
  if (atom.name != event.name || atom.args.size() != event.args.size()) return false;
  Binding local;
  for (size_t i = 0; i < atom.args.size(); ++i) {
    const ltl::AtomArg& arg = atom.args[i];
    const std::string& value = event.args[i];
    if (arg.kind == ltl::AtomArg::Kind::Var) {
      auto bound = binding.find(arg.text);
      if (bound != binding.end()) {
        if (bound->second != value) return false;
        continue;
      }
      auto fresh = local.find(arg.text);
      if (fresh != local.end()) {
        if (fresh->second != value) return false;
        continue;
      }
      local.emplace(arg.text, value);
    } else {
      std::string expected = arg.kind == ltl::AtomArg::Kind::IntLit
                                 ? model::canonical_literal(arg.text)
                                 : arg.text;
      if (expected != value) return false;
    }
  }
  if (assignments) *assignments = std::move(local);
  return true;
}

}  // namespace

struct Engine::Impl {
  const spec::SpecDocument& doc;
  const events::EventGenResult& schemas;
  ltl::Arena arena;
  std::vector<AssertionMonitor> monitors;
  std::vector<Instance> instances;
  std::vector<EngineDiagnostic> diagnostics;
  VerdictSink sink;
  std::optional<uint64_t> last_step;
  bool truncated = false;
  bool halted = false;

  explicit Impl(const spec::SpecDocument& d, const events::EventGenResult& s)
      : doc(d), schemas(s) {
    for (const spec::AssertionDecl& a : d.assertions) {
      AssertionMonitor am;
      am.name = a.name;
      am.decl = &a;
      ltl::Formula f = translate::translate_assertion(arena, a, d, s);
      for (int32_t id : ltl::collect_atoms(f)) am.atoms.push_back(arena.atom_info(id));
      am.automaton = monitor::minimize(monitor::synthesize_monitor(arena, f));
      spec::AstNode trig;
      if (translate::trigger_atom(a, &trig))
        am.trigger = translate::translate_atom(trig, a, d, s);
      for (const spec::VarDecl& v : a.variables) am.variables.push_back(v.name);
      monitors.push_back(std::move(am));
    }
  }

  void freeze_check(Instance& inst, uint64_t step) {
    Verdict v = monitors[inst.assertion].automaton.verdict_of(inst.state);
    if (v == inst.verdict) return;
    inst.verdict = v;
    if (v == Verdict::Bottom && !inst.first_violation_step) inst.first_violation_step = step;
    if (v != Verdict::Inconclusive) {
      inst.decided_at = step;
      if (sink) sink(snapshot(inst), step);
    }
  }

  InstanceState snapshot(const Instance& inst) const {
    InstanceState out;
    out.assertion = monitors[inst.assertion].name;
    out.binding = inst.binding;
    out.verdict = inst.verdict;
    out.created_at = inst.created_at;
    out.first_violation_step = inst.first_violation_step;
    out.decided_at = inst.decided_at;
    out.warnings = inst.warnings;
    return out;
  }

  // Binding extension: scan atoms in formula order, events in record order;
  // the first full match that resolves unbound variables wins and is
  // permanent. Distinct competing candidates are reported.
  void extend_binding(Instance& inst, const std::vector<EventRecord>& records, uint64_t step) {
    const AssertionMonitor& am = monitors[inst.assertion];
    for (const ltl::Atom& atom : am.atoms) {
      bool has_unbound = false;
      for (const ltl::AtomArg& arg : atom.args)
        if (arg.kind == ltl::AtomArg::Kind::Var && !inst.binding.count(arg.text))
          has_unbound = true;
      if (!has_unbound) continue;
      std::optional<Binding> chosen;
      bool ambiguous = false;
      for (const EventRecord& event : records) {
        Binding assignments;
        if (!match_atom(atom, event, inst.binding, &assignments)) continue;
        if (assignments.empty()) continue;
        if (!chosen) {
          chosen = std::move(assignments);
        } else if (*chosen != assignments) {
          ambiguous = true;
        }
      }
      if (chosen) {
        if (ambiguous)
          inst.warnings.push_back("AMBIGUOUS_BINDING at step " + std::to_string(step) +
                                  " for atom " + ltl::to_string(atom));
        for (auto& [var, value] : *chosen) inst.binding.emplace(var, value);
      }
    }
  }

  monitor::Letter letter_for(const Instance& inst,
                             const std::vector<EventRecord>& records) const {
    const AssertionMonitor& am = monitors[inst.assertion];
    monitor::Letter letter = 0;
    for (size_t i = 0; i < am.atoms.size(); ++i) {
      for (const EventRecord& event : records) {
        Binding assignments;
        if (match_atom(am.atoms[i], event, inst.binding, &assignments) && assignments.empty()) {
          letter |= monitor::Letter{1} << i;
          break;
        }
      }
    }
    return letter;
  }

  void spawn_instances(uint64_t step, const std::vector<EventRecord>& records) {
    for (size_t ai = 0; ai < monitors.size(); ++ai) {
      const AssertionMonitor& am = monitors[ai];
      if (!am.trigger) continue;
      std::set<Binding> candidates;
      for (const EventRecord& event : records) {
        Binding assignments;
        if (!match_atom(*am.trigger, event, Binding{}, &assignments)) continue;
        candidates.insert(std::move(assignments));
      }
      for (const Binding& candidate : candidates) {
        bool exists = false;
        for (const Instance& inst : instances) {
          if (inst.assertion != ai) continue;
          bool agrees = true;
          for (const auto& [var, value] : candidate) {
            auto it = inst.binding.find(var);
            if (it == inst.binding.end() || it->second != value) {
              agrees = false;
              break;
            }
          }
          if (agrees) {
            exists = true;
            break;
          }
        }
        if (exists) continue;
        Instance inst;
        inst.assertion = ai;
        inst.binding = candidate;
        inst.state = am.automaton.initial;
        inst.verdict = Verdict::Inconclusive;
        inst.created_at = step;
        instances.push_back(std::move(inst));
      }
    }
  }
};

Engine::Engine(const spec::SpecDocument& doc, const events::EventGenResult& schemas)
    : impl_(std::make_unique<Impl>(doc, schemas)) {}

Engine::~Engine() = default;

void Engine::set_sink(VerdictSink sink) { impl_->sink = std::move(sink); }

bool Engine::validate_record(const EventRecord& record, size_t index) {
  bool name_known = false;
  bool arity_known = false;
  for (const events::EventSchema& s : impl_->schemas.schemas) {
    if (s.name != record.name) continue;
    name_known = true;
    if (s.arity() == record.args.size()) arity_known = true;
  }
  if (!name_known) {
    impl_->diagnostics.push_back(EngineDiagnostic{
        "UNKNOWN_EVENT", "event '" + record.name + "' is not part of the vocabulary", index});
    return false;
  }
  if (!arity_known) {
    impl_->diagnostics.push_back(EngineDiagnostic{
        "ARITY_MISMATCH",
        "event '" + record.name + "' has no schema of arity " +
            std::to_string(record.args.size()),
        index});
    return false;
  }
  return true;
}

bool Engine::ingest_step(uint64_t step, const std::vector<EventRecord>& records) {
  Impl& im = *impl_;
  if (im.halted) return false;
  if (im.last_step && step <= *im.last_step) {
    im.diagnostics.push_back(EngineDiagnostic{
        "NONMONOTONIC_STEP",
        "step " + std::to_string(step) + " does not exceed step " +
            std::to_string(*im.last_step),
        std::nullopt});
    im.halted = true;
    return false;
  }
  im.last_step = step;

  im.spawn_instances(step, records);
  for (Instance& inst : im.instances) {
    if (inst.verdict != Verdict::Inconclusive) continue;  // frozen
    im.extend_binding(inst, records, step);
    monitor::Letter letter = im.letter_for(inst, records);
    inst.state = im.monitors[inst.assertion].automaton.step(inst.state, letter);
    im.freeze_check(inst, step);
  }
  return true;
}

VerdictReport Engine::report() const {
  VerdictReport out;
  for (const Instance& inst : impl_->instances) out.instances.push_back(impl_->snapshot(inst));
  out.diagnostics = impl_->diagnostics;
  out.truncated = impl_->truncated;
  return out;
}

void Engine::mark_truncated() { impl_->truncated = true; }

void Engine::add_diagnostic(EngineDiagnostic diag) {
  impl_->diagnostics.push_back(std::move(diag));
}

VerdictReport run_log(const std::vector<EventRecord>& log, const spec::SpecDocument& doc,
                      const events::EventGenResult& schemas, VerdictSink sink) {
  Engine engine(doc, schemas);
  if (sink) engine.set_sink(std::move(sink));
  std::vector<EventRecord> group;
  std::optional<uint64_t> group_step;
  auto flush = [&]() {
    if (group_step) engine.ingest_step(*group_step, group);
    group.clear();
    group_step.reset();
  };
  for (size_t i = 0; i < log.size(); ++i) {
    const EventRecord& record = log[i];
    if (!engine.validate_record(record, i)) continue;
    if (group_step && record.step != *group_step) flush();
    group_step = record.step;
    group.push_back(record);
  }
  flush();
  return engine.report();
}

VerdictReport run_stream(std::istream& in, const spec::SpecDocument& doc,
                         const events::EventGenResult& schemas, VerdictSink sink) {
  Engine engine(doc, schemas);
  if (sink) engine.set_sink(std::move(sink));
  std::vector<EventRecord> group;
  std::optional<uint64_t> group_step;
  auto flush = [&]() {
    if (group_step) engine.ingest_step(*group_step, group);
    group.clear();
    group_step.reset();
  };
  std::string line;
  size_t line_no = 0;
  size_t index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    if (line.find("\"meta\"") != std::string::npos && line.find("\"event\"") == std::string::npos)
      continue;  // loopStart annotation emitted by the abstraction
    std::string error;
    std::optional<EventRecord> record = model::event_record_from_json(line, &error);
    if (!record) {
      engine.add_diagnostic(
          EngineDiagnostic{"IO_ERROR", "line " + std::to_string(line_no) + ": " + error, index});
      engine.mark_truncated();
      break;
    }
    if (engine.validate_record(*record, index)) {
      if (group_step && record->step != *group_step) flush();
      group_step = record->step;
      group.push_back(*record);
    }
    ++index;
  }
  if (in.bad()) {
    engine.add_diagnostic(EngineDiagnostic{"IO_ERROR", "stream read failure", std::nullopt});
    engine.mark_truncated();
  }
  flush();
  return engine.report();
}

}  // namespace archmon::engine
