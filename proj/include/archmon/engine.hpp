#pragma once

#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "archmon/events.hpp"
#include "archmon/ltl.hpp"
#include "archmon/model.hpp"
#include "archmon/monitor.hpp"
#include "archmon/spec.hpp"
#include "archmon/translate.hpp"

namespace archmon::engine {

using Binding = std::map<std::string, std::string>;

struct EngineDiagnostic {
  std::string code;  // UNKNOWN_EVENT, ARITY_MISMATCH, NONMONOTONIC_STEP, IO_ERROR
  std::string message;
  std::optional<size_t> record_index;
};

struct InstanceState {
  std::string assertion;
  Binding binding;
  monitor::Verdict verdict = monitor::Verdict::Inconclusive;
  uint64_t created_at = 0;
  std::optional<uint64_t> first_violation_step;
  std::optional<uint64_t> decided_at;
  std::vector<std::string> warnings;
};

struct VerdictReport {
  std::vector<InstanceState> instances;  // one entry per instance ever created
  std::vector<EngineDiagnostic> diagnostics;
  bool truncated = false;

  size_t count(monitor::Verdict v) const;
  bool any_bottom() const { return count(monitor::Verdict::Bottom) > 0; }
};

std::string report_to_json(const VerdictReport& report);

/// Called when an instance's verdict becomes Top or Bottom.
using VerdictSink = std::function<void(const InstanceState&, uint64_t step)>;

/// Parametric monitoring engine: one monitor instance per (assertion,
/// trigger binding), created when an event matches the assertion's creation
/// atom; bindings grow first-match-wins as later events resolve variables;
/// each observed step is one letter per live instance.
class Engine {
 public:
  Engine(const spec::SpecDocument& doc, const events::EventGenResult& schemas);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  void set_sink(VerdictSink sink);

  /// All records must carry the same step, strictly greater than any step
  /// seen before. Returns false when the step is rejected (NONMONOTONIC_STEP).
  bool ingest_step(uint64_t step, const std::vector<model::EventRecord>& records);

  /// Record-level validation used by both offline and online drivers.
  bool validate_record(const model::EventRecord& record, size_t index);

  VerdictReport report() const;
  void mark_truncated();
  void add_diagnostic(EngineDiagnostic diag);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Offline verification: groups records by step and folds them through the
/// engine. Deterministic for a given log.
VerdictReport run_log(const std::vector<model::EventRecord>& log, const spec::SpecDocument& doc,
                      const events::EventGenResult& schemas, VerdictSink sink = nullptr);

/// Online verification over a JSON-lines stream (one record per line; lines
/// whose first non-space character is '#' or that hold a `{"meta": ...}`
/// object are skipped). Identical result to run_log on the same records.
VerdictReport run_stream(std::istream& in, const spec::SpecDocument& doc,
                         const events::EventGenResult& schemas, VerdictSink sink = nullptr);

}  // namespace archmon::engine
