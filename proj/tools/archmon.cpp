// archmon: specification-to-monitor toolchain for dynamic software
// architectures. Subcommands cover the whole pipeline: check a spec,
// derive the event vocabulary, translate assertions to LTL, build
// three-valued monitors, verify event logs, and generate/erode/abstract
// architecture traces.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "archmon/engine.hpp"
#include "archmon/events.hpp"
#include "archmon/ltl.hpp"
#include "archmon/model.hpp"
#include "archmon/monitor.hpp"
#include "archmon/oracle.hpp"
#include "archmon/simulator.hpp"
#include "archmon/spec.hpp"
#include "archmon/translate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kError = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct LoadedSpec {
  archmon::spec::SpecDocument doc;
  archmon::events::EventGenResult schemas;
};

// Parses and typechecks; on failure prints diagnostics and returns nullopt.
std::optional<LoadedSpec> load_spec(const std::string& path, bool with_events = true) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  archmon::spec::ParseResult parsed = archmon::spec::parse_spec(text);
  for (const auto& d : parsed.diagnostics)
    std::cerr << archmon::spec::format_diagnostic(path, d) << "\n";
  if (!parsed.document) return std::nullopt;
  std::vector<archmon::spec::Diagnostic> diags = archmon::spec::typecheck_spec(*parsed.document);
  for (const auto& d : diags) std::cerr << archmon::spec::format_diagnostic(path, d) << "\n";
  if (!diags.empty()) return std::nullopt;
  LoadedSpec out{std::move(*parsed.document), {}};
  if (with_events) {
    out.schemas = archmon::events::generate_events(out.doc.component_types);
    for (const auto& d : out.schemas.diagnostics)
      std::cerr << archmon::spec::format_diagnostic(path, d) << "\n";
    if (!out.schemas.ok()) return std::nullopt;
  }
  return out;
}

const archmon::spec::AssertionDecl* find_assertion(const archmon::spec::SpecDocument& doc,
                                                   const std::string& name) {
  for (const auto& a : doc.assertions)
    if (a.name == name) return &a;
  std::cerr << "unknown assertion '" << name << "'\n";
  return nullptr;
}

std::optional<archmon::model::ArchTrace> load_trace(const std::string& path,
                                                    const archmon::spec::SpecDocument& doc) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  archmon::model::TraceParseResult parsed = archmon::model::trace_from_json(text, doc);
  if (!parsed.trace) {
    std::cerr << path << ": " << parsed.error << "\n";
    return std::nullopt;
  }
  return parsed.trace;
}

nlohmann::ordered_json schemas_json(const archmon::events::EventGenResult& schemas) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : schemas.schemas) {
    nlohmann::ordered_json entry;
    entry["name"] = s.name;
    entry["kind"] = archmon::events::to_string(s.kind);
    entry["params"] = nlohmann::ordered_json::array();
    for (const auto& p : s.params) {
      entry["params"].push_back(nlohmann::ordered_json{
          {"role", p.role == archmon::events::EventParam::Role::Self      ? "self"
                   : p.role == archmon::events::EventParam::Role::Payload ? "payload"
                                                                          : "peer"},
          {"sort", p.sort}});
    }
    list.push_back(entry);
  }
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"runtime verification toolchain for dynamic architecture specs"};
  app.require_subcommand(1);

  // check
  std::string spec_path;
  auto* cmd_check = app.add_subcommand("check", "parse and typecheck a specification");
  cmd_check->add_option("spec", spec_path, "specification file")->required();

  // gen_events
  bool with_manifest = false;
  auto* cmd_gen_events =
      app.add_subcommand("gen_events", "derive the monitorable event vocabulary");
  cmd_gen_events->add_option("spec", spec_path, "specification file")->required();
  cmd_gen_events->add_flag("--manifest", with_manifest,
                           "include the instrumentation manifest");

  // gen_ltl
  std::string assertion_name;
  auto* cmd_gen_ltl = app.add_subcommand("gen_ltl", "translate an assertion to event LTL");
  cmd_gen_ltl->add_option("spec", spec_path, "specification file")->required();
  cmd_gen_ltl->add_option("assertion", assertion_name, "assertion name")->required();

  // gen_monitor
  std::string format = "json";
  size_t atom_budget = 16;
  auto* cmd_gen_monitor =
      app.add_subcommand("gen_monitor", "build the three-valued monitor for an assertion");
  cmd_gen_monitor->add_option("spec", spec_path, "specification file")->required();
  cmd_gen_monitor->add_option("assertion", assertion_name, "assertion name")->required();
  cmd_gen_monitor->add_option("--format", format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  cmd_gen_monitor->add_option("--atom-budget", atom_budget, "ground atom bound");

  // monitor
  std::string log_path;
  bool from_stdin = false;
  auto* cmd_monitor = app.add_subcommand("monitor", "verify an event log or stream");
  cmd_monitor->add_option("spec", spec_path, "specification file")->required();
  auto* log_opt = cmd_monitor->add_option("--log", log_path, "JSONL event log");
  cmd_monitor->add_flag("--stdin", from_stdin, "read the event stream from standard input")
      ->excludes(log_opt);

  // simulate
  archmon::simulator::SimConfig sim_cfg;
  std::string config_path;
  std::vector<std::string> erode_specs;
  auto* cmd_simulate = app.add_subcommand("simulate", "generate an architecture trace");
  cmd_simulate->add_option("spec", spec_path, "specification file")->required();
  cmd_simulate->add_option("--config", config_path, "JSON config file");
  auto* seed_opt = cmd_simulate->add_option("--seed", sim_cfg.seed, "RNG seed");
  auto* steps_opt = cmd_simulate->add_option("--steps", sim_cfg.steps, "trace length");
  auto* max_opt = cmd_simulate->add_option("--max-instances", sim_cfg.max_instances_per_type,
                                           "active instances per type");
  auto* act_opt =
      cmd_simulate->add_option("--activation-rate", sim_cfg.activation_rate, "churn probability");
  auto* msg_opt =
      cmd_simulate->add_option("--message-rate", sim_cfg.message_rate, "message probability");
  auto* conn_opt =
      cmd_simulate->add_option("--connect-rate", sim_cfg.connect_rate, "connection probability");
  bool lasso_flag = false;
  auto* lasso_opt = cmd_simulate->add_flag("--lasso", lasso_flag, "close the trace into a lasso");
  cmd_simulate->add_option("--erode", erode_specs,
                           "erosion ops, e.g. swap-order:3,4 (repeatable)");

  // abstract
  std::string trace_path;
  auto* cmd_abstract = app.add_subcommand("abstract", "map a trace to its JSONL event log");
  cmd_abstract->add_option("spec", spec_path, "specification file")->required();
  cmd_abstract->add_option("trace", trace_path, "architecture trace JSON")->required();

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "evaluate an assertion over a lasso trace");
  cmd_eval->add_option("spec", spec_path, "specification file")->required();
  cmd_eval->add_option("assertion", assertion_name, "assertion name")->required();
  cmd_eval->add_option("trace", trace_path, "architecture trace JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (cmd_check->parsed()) {
      auto loaded = load_spec(spec_path);
      nlohmann::ordered_json out;
      out["ok"] = loaded.has_value();
      std::cout << out.dump() << "\n";
      return loaded ? kOk : kError;
    }

    if (cmd_gen_events->parsed()) {
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      nlohmann::ordered_json out;
      out["schemas"] = schemas_json(loaded->schemas);
      if (with_manifest) {
        out["manifest"] = nlohmann::ordered_json::parse(
            archmon::events::generate_instrumentation_manifest(loaded->schemas.schemas));
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (cmd_gen_ltl->parsed()) {
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      const auto* assertion = find_assertion(loaded->doc, assertion_name);
      if (!assertion) return kError;
      archmon::ltl::Arena arena;
      archmon::ltl::Formula f =
          archmon::translate::translate_assertion(arena, *assertion, loaded->doc,
                                                  loaded->schemas);
      nlohmann::ordered_json out;
      out["assertion"] = assertion_name;
      out["formula"] = archmon::translate::print_ltl(arena, f);
      std::cout << out.dump() << "\n";
      return kOk;
    }

    if (cmd_gen_monitor->parsed()) {
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      const auto* assertion = find_assertion(loaded->doc, assertion_name);
      if (!assertion) return kError;
      archmon::ltl::Arena arena;
      archmon::ltl::Formula f =
          archmon::translate::translate_assertion(arena, *assertion, loaded->doc,
                                                  loaded->schemas);
      archmon::monitor::SynthesisOptions options;
      options.atom_budget = atom_budget;
      archmon::monitor::MonitorAutomaton automaton =
          archmon::monitor::minimize(archmon::monitor::synthesize_monitor(arena, f, options));
      std::cout << archmon::monitor::export_automaton(
          automaton, format == "dot" ? archmon::monitor::ExportFormat::Dot
                                     : archmon::monitor::ExportFormat::Json);
      return kOk;
    }

    if (cmd_monitor->parsed()) {
      if (log_path.empty() && !from_stdin) {
        std::cerr << "monitor needs --log <path> or --stdin\n";
        return kError;
      }
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      archmon::engine::VerdictReport report;
      if (from_stdin) {
        report = archmon::engine::run_stream(std::cin, loaded->doc, loaded->schemas);
      } else {
        std::ifstream in(log_path, std::ios::binary);
        if (!in) {
          std::cerr << log_path << ": cannot read file\n";
          return kError;
        }
        report = archmon::engine::run_stream(in, loaded->doc, loaded->schemas);
      }
      std::cout << archmon::engine::report_to_json(report);
      if (!report.diagnostics.empty() || report.truncated) return kError;
      return report.any_bottom() ? kViolation : kOk;
    }

    if (cmd_simulate->parsed()) {
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      if (!config_path.empty()) {
        std::string text;
        if (!read_file(config_path, text)) {
          std::cerr << config_path << ": cannot read file\n";
          return kError;
        }
        nlohmann::json cfg = nlohmann::json::parse(text, nullptr, false);
        if (cfg.is_discarded()) {
          std::cerr << config_path << ": invalid JSON\n";
          return kError;
        }
        archmon::simulator::SimConfig base;
        base.seed = cfg.value("seed", base.seed);
        base.steps = cfg.value("steps", base.steps);
        base.max_instances_per_type =
            cfg.value("maxInstancesPerType", base.max_instances_per_type);
        base.activation_rate = cfg.value("activationRate", base.activation_rate);
        base.message_rate = cfg.value("messageRate", base.message_rate);
        base.connect_rate = cfg.value("connectRate", base.connect_rate);
        base.lasso = cfg.value("lasso", base.lasso);
        // explicit flags win over the config file
        if (!seed_opt->count()) sim_cfg.seed = base.seed;
        if (!steps_opt->count()) sim_cfg.steps = base.steps;
        if (!max_opt->count()) sim_cfg.max_instances_per_type = base.max_instances_per_type;
        if (!act_opt->count()) sim_cfg.activation_rate = base.activation_rate;
        if (!msg_opt->count()) sim_cfg.message_rate = base.message_rate;
        if (!conn_opt->count()) sim_cfg.connect_rate = base.connect_rate;
        if (!lasso_opt->count()) lasso_flag = base.lasso;
      }
      sim_cfg.lasso = lasso_flag;
      archmon::model::ArchTrace trace = archmon::simulator::simulate(loaded->doc, sim_cfg);
      for (const std::string& erode : erode_specs) {
        archmon::simulator::ErosionOp op = archmon::simulator::parse_erosion(erode);
        trace = archmon::simulator::inject_erosion(trace, op, loaded->doc);
      }
      std::cout << archmon::model::trace_to_json(trace);
      return kOk;
    }

    if (cmd_abstract->parsed()) {
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      auto trace = load_trace(trace_path, loaded->doc);
      if (!trace) return kError;
      auto diags = archmon::model::validate_trace(*trace, loaded->doc);
      if (!diags.empty()) {
        for (const auto& d : diags)
          std::cerr << trace_path << ": step " << (d.step ? std::to_string(*d.step) : "-")
                    << ": " << d.code << ": " << d.message << "\n";
        return kError;
      }
      std::vector<archmon::model::AbstractionError> errors;
      archmon::model::EventTrace events =
          archmon::model::abstract_trace(*trace, loaded->schemas, &errors);
      if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << e.code << ": " << e.message << "\n";
        return kError;
      }
      if (events.loop_start) {
        nlohmann::ordered_json meta;
        meta["meta"] = nlohmann::ordered_json{{"loopStart", *events.loop_start}};
        std::cout << meta.dump() << "\n";
      }
      for (const auto& step : events.steps)
        for (const auto& record : step)
          std::cout << archmon::model::event_record_to_json(record) << "\n";
      return kOk;
    }

    if (cmd_eval->parsed()) {
      auto loaded = load_spec(spec_path);
      if (!loaded) return kError;
      const auto* assertion = find_assertion(loaded->doc, assertion_name);
      if (!assertion) return kError;
      auto trace = load_trace(trace_path, loaded->doc);
      if (!trace) return kError;
      std::vector<archmon::oracle::Valuation> bindings =
          archmon::oracle::enumerate_bindings(*assertion, *trace, loaded->doc);
      nlohmann::ordered_json out;
      out["assertion"] = assertion_name;
      out["bindings"] = nlohmann::ordered_json::array();
      bool all_hold = true;
      for (const archmon::oracle::Valuation& v : bindings) {
        bool holds = archmon::oracle::eval_assertion(*assertion, *trace, v, 0, loaded->doc);
        all_hold = all_hold && holds;
        nlohmann::ordered_json entry;
        entry["binding"] = nlohmann::ordered_json::object();
        for (const auto& [var, value] : v) entry["binding"][var] = value;
        entry["holds"] = holds;
        out["bindings"].push_back(entry);
      }
      out["allHold"] = all_hold;
      std::cout << out.dump(2) << "\n";
      return all_hold ? kOk : kViolation;
    }
  } catch (const archmon::monitor::SynthesisError& e) {
    std::cerr << e.code << ": " << e.what() << "\n";
    return kError;
  } catch (const archmon::translate::TranslationError& e) {
    std::cerr << e.code << ": " << e.what() << "\n";
    return kError;
  } catch (const archmon::oracle::OracleError& e) {
    std::cerr << e.code << ": " << e.what() << "\n";
    return kError;
  } catch (const archmon::simulator::SimError& e) {
    std::cerr << e.code << ": " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
