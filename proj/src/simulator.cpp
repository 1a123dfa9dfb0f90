#include "archmon/simulator.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "archmon/events.hpp"

namespace archmon::simulator {

using model::ArchSnapshot;
using model::ArchTrace;
using model::MessageTuple;
using model::MessageValue;
using model::PortRef;
using spec::AstKind;
using spec::AstNode;

namespace {

// mt19937_64 output is pinned by the standard; the derived draws below avoid
// std::uniform_* distributions, whose sequences vary across library
// implementations.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}
  double chance() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  size_t pick(size_t n) { return n == 0 ? 0 : static_cast<size_t>(engine() % n); }
  bool flip(double p) { return chance() < p; }
};

struct Obligation {
  size_t delay = 0;
  const AstNode* atom = nullptr;
};

// A playable assertion: G(c.p = (t...) -> X^d(atom & ...) & ...).
struct CascadeShape {
  const spec::AssertionDecl* assertion = nullptr;
  const spec::ComponentType* trigger_type = nullptr;
  std::string trigger_var;
  const spec::PortDecl* trigger_port = nullptr;
  std::vector<spec::Term> trigger_terms;
  std::vector<Obligation> obligations;  // sorted by delay
  size_t window = 0;
};

std::string term_sort(const spec::AssertionDecl& a, const std::string& var,
                      const spec::SpecDocument& doc);

bool collect_obligations(const AstNode& node, size_t delay, std::vector<Obligation>& out) {
  if (node.is_atom()) {
    out.push_back(Obligation{delay, &node});
    return true;
  }
  switch (node.kind) {
    case AstKind::And:
      return collect_obligations(node.children[0], delay, out) &&
             collect_obligations(node.children[1], delay, out);
    case AstKind::Next: return collect_obligations(node.children[0], delay + 1, out);
    case AstKind::True: return true;
    default: return false;
  }
}

std::optional<CascadeShape> extract_shape(const spec::AssertionDecl& a,
                                          const spec::SpecDocument& doc) {
  if (a.body.kind != AstKind::Globally) return std::nullopt;
  const AstNode& imp = a.body.children[0];
  if (imp.kind != AstKind::Implies) return std::nullopt;
  const AstNode& trigger = imp.children[0];
  if (trigger.kind != AstKind::PortValuation) return std::nullopt;

  CascadeShape shape;
  shape.assertion = &a;
  shape.trigger_var = trigger.comp_var;
  shape.trigger_terms = trigger.terms;
  for (const spec::VarDecl& v : a.variables)
    if (v.name == trigger.comp_var) shape.trigger_type = doc.find_type(v.type_name);
  if (!shape.trigger_type) return std::nullopt;
  shape.trigger_port = shape.trigger_type->find_port(trigger.port);
  if (!shape.trigger_port || shape.trigger_port->direction != spec::PortDirection::Input)
    return std::nullopt;
  for (const spec::Term& t : shape.trigger_terms)
    if (t.kind == spec::Term::Kind::Var && doc.find_type(term_sort(a, t.text, doc)) != nullptr)
      return std::nullopt;  // component-typed payload draws are not played

  if (!collect_obligations(imp.children[1], 0, shape.obligations)) return std::nullopt;
  std::stable_sort(shape.obligations.begin(), shape.obligations.end(),
                   [](const Obligation& x, const Obligation& y) { return x.delay < y.delay; });

  // Activation obligations introduce fresh components; every other atom may
  // only reference the trigger component or a component activated no later.
  std::map<std::string, size_t> component_ready{{shape.trigger_var, 0}};
  auto var_type = [&](const std::string& var) -> const spec::ComponentType* {
    for (const spec::VarDecl& v : a.variables)
      if (v.name == var) return doc.find_type(v.type_name);
    return nullptr;
  };
  for (const Obligation& ob : shape.obligations) {
    const AstNode& atom = *ob.atom;
    switch (atom.kind) {
      case AstKind::ComponentActive: {
        if (atom.comp_var == shape.trigger_var) return std::nullopt;
        if (!var_type(atom.comp_var)) return std::nullopt;
        if (component_ready.count(atom.comp_var)) return std::nullopt;  // one activation only
        component_ready.emplace(atom.comp_var, ob.delay);
        break;
      }
      case AstKind::PortValuation:
      case AstKind::PortActive: {
        const spec::ComponentType* ct = var_type(atom.comp_var);
        if (!ct || !ct->find_port(atom.port)) return std::nullopt;
        auto ready = component_ready.find(atom.comp_var);
        if (ready == component_ready.end() || ready->second > ob.delay) return std::nullopt;
        break;
      }
      case AstKind::Connected: {
        const spec::ComponentType* src = var_type(atom.comp_var);
        const spec::ComponentType* dst = var_type(atom.dst_var);
        if (!src || !dst) return std::nullopt;
        const spec::PortDecl* out = src->find_port(atom.port);
        const spec::PortDecl* in = dst->find_port(atom.dst_port);
        if (!out || !in || out->signature != in->signature) return std::nullopt;
        if (out->direction != spec::PortDirection::Output ||
            in->direction != spec::PortDirection::Input)
          return std::nullopt;
        for (const std::string* var : {&atom.comp_var, &atom.dst_var}) {
          auto ready = component_ready.find(*var);
          if (ready == component_ready.end() || ready->second > ob.delay) return std::nullopt;
        }
        break;
      }
      default: return std::nullopt;
    }
    shape.window = std::max(shape.window, ob.delay + 1);
  }
  return shape;
}

std::string term_sort(const spec::AssertionDecl& a, const std::string& var,
                      const spec::SpecDocument& doc) {
  (void)doc;
  for (const spec::VarDecl& v : a.variables)
    if (v.name == var) return v.type_name;
  return "";
}

struct ScheduledEmit {
  PortRef ref;
  MessageTuple tuple;
};
struct ScheduledConnect {
  PortRef input;
  PortRef output;
};
struct ScheduledActivate {
  std::string type;
  std::string instance;
};

struct StepPlan {
  std::vector<ScheduledActivate> activations;
  std::vector<ScheduledEmit> emits;
  std::vector<ScheduledConnect> connects;
};

struct Generator {
  const spec::SpecDocument& doc;
  const SimConfig& cfg;
  Rng rng;
  std::vector<CascadeShape> shapes;

  std::map<std::string, std::string> instance_type;      // all ids ever created
  std::set<std::string> active;                           // currently active ids
  std::set<std::string> inactive_pool;                    // deactivated, reusable by churn
  std::map<std::string, size_t> type_counter;
  std::map<std::string, size_t> busy_until;               // cascade participants
  std::set<std::string> cascade_types;                    // no churn for these
  std::set<std::pair<std::string, std::string>> reserved_ports;  // (type, port)
  std::map<std::string, size_t> fresh_value_counter;       // per sort
  std::map<size_t, StepPlan> schedule;
  size_t last_trigger_end = 0;
  bool any_trigger_yet = false;

  Generator(const spec::SpecDocument& d, const SimConfig& c) : doc(d), cfg(c), rng(c.seed) {
    for (const spec::AssertionDecl& a : d.assertions) {
      if (auto shape = extract_shape(a, d)) shapes.push_back(std::move(*shape));
    }
    for (const CascadeShape& shape : shapes) {
      reserved_ports.emplace(shape.trigger_type->name, shape.trigger_port->name);
      for (const Obligation& ob : shape.obligations) {
        const AstNode& atom = *ob.atom;
        if (atom.kind == AstKind::ComponentActive) {
          for (const spec::VarDecl& v : shape.assertion->variables)
            if (v.name == atom.comp_var) cascade_types.insert(v.type_name);
        }
        if (atom.kind == AstKind::PortValuation || atom.kind == AstKind::PortActive) {
          for (const spec::VarDecl& v : shape.assertion->variables)
            if (v.name == atom.comp_var) reserved_ports.emplace(v.type_name, atom.port);
        }
        if (atom.kind == AstKind::Connected) {
          for (const spec::VarDecl& v : shape.assertion->variables) {
            if (v.name == atom.comp_var) reserved_ports.emplace(v.type_name, atom.port);
            if (v.name == atom.dst_var) reserved_ports.emplace(v.type_name, atom.dst_port);
          }
        }
      }
    }
  }

  bool port_reserved(const std::string& type, const std::string& port) const {
    return reserved_ports.count({type, port}) > 0;
  }

  size_t active_count(const std::string& type) const {
    size_t n = 0;
    for (const std::string& id : active)
      if (instance_type.at(id) == type) ++n;
    return n;
  }

  std::string fresh_instance(const std::string& type) {
    size_t k = type_counter[type]++;
    std::string id = events::fold_type_name(type) + std::to_string(k);
    instance_type[id] = type;
    return id;
  }

  std::string fresh_value(const std::string& sort) {
    size_t k = fresh_value_counter[sort]++;
    if (sort == "Integer" || sort == "Int" || sort == "Nat")
      return std::to_string(k + 1);
    return "w" + std::to_string(k);
  }

  const spec::ComponentType* var_type(const CascadeShape& shape, const std::string& var) const {
    for (const spec::VarDecl& v : shape.assertion->variables)
      if (v.name == var) return doc.find_type(v.type_name);
    return nullptr;
  }

  // Schedules one compliant cascade for `shape`, triggered at `step`.
  // Returns false when capacity is unavailable.
  bool schedule_cascade(const CascadeShape& shape, size_t step) {
    // the trigger component: an active one, or a fresh activation this step
    std::string trigger_instance;
    for (const std::string& id : active)
      if (instance_type.at(id) == shape.trigger_type->name) {
        trigger_instance = id;
        break;
      }
    bool activate_trigger = trigger_instance.empty();
    if (activate_trigger) {
      if (active_count(shape.trigger_type->name) >= cfg.max_instances_per_type) return false;
      trigger_instance = fresh_instance(shape.trigger_type->name);
    }

    std::map<std::string, std::string> binding{{shape.trigger_var, trigger_instance}};
    MessageTuple tuple;
    for (size_t i = 0; i < shape.trigger_terms.size(); ++i) {
      const spec::Term& term = shape.trigger_terms[i];
      const std::string& sort = shape.trigger_port->signature[i];
      std::string literal;
      if (term.kind == spec::Term::Kind::Var) {
        auto it = binding.find(term.text);
        literal = it != binding.end() ? it->second : fresh_value(sort);
        binding.emplace(term.text, literal);
      } else {
        literal = model::canonical_literal(term.text);
      }
      tuple.push_back(MessageValue{sort, literal});
    }

    StepPlan& plan = schedule[step];
    if (activate_trigger)
      plan.activations.push_back(ScheduledActivate{shape.trigger_type->name, trigger_instance});
    plan.emits.push_back(
        ScheduledEmit{PortRef{trigger_instance, shape.trigger_port->name}, tuple});

    for (const Obligation& ob : shape.obligations) {
      const AstNode& atom = *ob.atom;
      StepPlan& at = schedule[step + ob.delay];
      switch (atom.kind) {
        case AstKind::ComponentActive: {
          const spec::ComponentType* ct = var_type(shape, atom.comp_var);
          std::string id = fresh_instance(ct->name);
          binding.emplace(atom.comp_var, id);
          at.activations.push_back(ScheduledActivate{ct->name, id});
          break;
        }
        case AstKind::PortValuation: {
          const spec::ComponentType* ct = var_type(shape, atom.comp_var);
          const spec::PortDecl* port = ct->find_port(atom.port);
          MessageTuple out;
          for (size_t i = 0; i < atom.terms.size(); ++i) {
            const spec::Term& term = atom.terms[i];
            std::string literal;
            if (term.kind == spec::Term::Kind::Var) {
              auto it = binding.find(term.text);
              if (it == binding.end()) {
                literal = fresh_value(port->signature[i]);
                binding.emplace(term.text, literal);
              } else {
                literal = it->second;
              }
            } else {
              literal = model::canonical_literal(term.text);
            }
            out.push_back(MessageValue{port->signature[i], literal});
          }
          at.emits.push_back(ScheduledEmit{PortRef{binding.at(atom.comp_var), port->name}, out});
          break;
        }
        case AstKind::PortActive: {
          const spec::ComponentType* ct = var_type(shape, atom.comp_var);
          const spec::PortDecl* port = ct->find_port(atom.port);
          MessageTuple out;
          for (const std::string& sort : port->signature)
            out.push_back(MessageValue{sort, fresh_value(sort)});
          at.emits.push_back(ScheduledEmit{PortRef{binding.at(atom.comp_var), port->name}, out});
          break;
        }
        case AstKind::Connected: {
          at.connects.push_back(
              ScheduledConnect{PortRef{binding.at(atom.dst_var), atom.dst_port},
                               PortRef{binding.at(atom.comp_var), atom.port}});
          break;
        }
        default: break;
      }
    }

    // keep every bound component active through the window
    for (const auto& [var, value] : binding) {
      if (instance_type.count(value))
        busy_until[value] = std::max(busy_until[value], step + shape.window + 1);
    }
    return true;
  }

  ArchTrace run() {
    ArchTrace trace;
    size_t total = cfg.steps;
    for (size_t i = 0; i < total; ++i) {
      // decide triggers for this step before assembling it
      for (const CascadeShape& shape : shapes) {
        if (i + shape.window + 1 >= total) continue;  // window must complete
        if (any_trigger_yet && i < last_trigger_end) continue;  // spacing
        if (!rng.flip(cfg.message_rate)) continue;
        if (schedule_cascade(shape, i)) {
          any_trigger_yet = true;
          last_trigger_end = i + shape.window + 1;
        }
      }

      ArchSnapshot snap = assemble(i);
      trace.steps.push_back(std::move(snap));
    }

    if (cfg.lasso) {
      size_t loop_start = total / 2;
      if (total == 0) {
        trace.steps.push_back(ArchSnapshot{});
        loop_start = 0;
      } else {
        // close the loop with a copy of the snapshot before the loop entry,
        // so the becomes-active history is consistent on replay
        size_t anchor = loop_start == 0 ? total - 1 : loop_start - 1;
        trace.steps.push_back(trace.steps[anchor]);
      }
      trace.loop_start = loop_start;
    }
    return trace;
  }

  ArchSnapshot assemble(size_t i) {
    const StepPlan* plan = nullptr;
    auto it = schedule.find(i);
    if (it != schedule.end()) plan = &it->second;

    // activations scheduled by cascades
    if (plan)
      for (const ScheduledActivate& act : plan->activations) {
        active.insert(act.instance);
        inactive_pool.erase(act.instance);
      }

    // random churn on non-cascade types
    for (const spec::ComponentType& ct : doc.component_types) {
      if (cascade_types.count(ct.name)) continue;
      if (active_count(ct.name) < cfg.max_instances_per_type && rng.flip(cfg.activation_rate)) {
        // reuse a deactivated id when possible
        std::string id;
        for (const std::string& cand : inactive_pool)
          if (instance_type.at(cand) == ct.name) {
            id = cand;
            break;
          }
        if (id.empty())
          id = fresh_instance(ct.name);
        else
          inactive_pool.erase(id);
        active.insert(id);
      }
    }
    // deactivation
    {
      std::vector<std::string> victims;
      for (const std::string& id : active) {
        auto busy = busy_until.find(id);
        if (busy != busy_until.end() && busy->second > i) continue;
        if (cascade_types.count(instance_type.at(id))) continue;
        if (rng.flip(cfg.activation_rate * 0.5)) victims.push_back(id);
      }
      for (const std::string& id : victims) {
        active.erase(id);
        inactive_pool.insert(id);
      }
    }

    ArchSnapshot snap;
    for (const std::string& id : active)
      snap.active.push_back(model::ComponentId{instance_type.at(id), id});
    std::sort(snap.active.begin(), snap.active.end());

    // connections: scheduled first, then noise on unreserved ports
    if (plan)
      for (const ScheduledConnect& c : plan->connects) snap.connections[c.input].insert(c.output);

    struct PortInfo {
      PortRef ref;
      const spec::PortDecl* decl;
      const spec::ComponentType* type;
    };
    std::vector<PortInfo> inputs, outputs;
    for (const model::ComponentId& comp : snap.active) {
      const spec::ComponentType* ct = doc.find_type(comp.type);
      if (!ct) continue;
      for (const spec::PortDecl& p : ct->ports) {
        if (port_reserved(comp.type, p.name)) continue;
        PortInfo info{PortRef{comp.instance, p.name}, &p, ct};
        (p.direction == spec::PortDirection::Input ? inputs : outputs).push_back(info);
      }
    }
    for (const PortInfo& in : inputs) {
      if (snap.connections.count(in.ref)) continue;
      if (!rng.flip(cfg.connect_rate)) continue;
      std::vector<const PortInfo*> compatible;
      for (const PortInfo& out : outputs)
        if (out.decl->signature == in.decl->signature && out.ref.instance != in.ref.instance)
          compatible.push_back(&out);
      if (compatible.empty()) continue;
      snap.connections[in.ref].insert(compatible[rng.pick(compatible.size())]->ref);
    }

    // valuations: scheduled emissions, then noise
    std::map<PortRef, std::set<MessageTuple>> vals;
    if (plan)
      for (const ScheduledEmit& e : plan->emits) vals[e.ref].insert(e.tuple);
    for (const PortInfo& out : outputs) {
      if (!rng.flip(cfg.message_rate * 0.3)) continue;
      MessageTuple tuple;
      for (const std::string& sort : out.decl->signature)
        tuple.push_back(MessageValue{sort, noise_value(sort)});
      vals[out.ref].insert(std::move(tuple));
    }
    for (const PortInfo& in : inputs) {
      if (snap.connections.count(in.ref)) continue;  // connected inputs derive below
      if (!rng.flip(cfg.message_rate * 0.3)) continue;
      MessageTuple tuple;
      for (const std::string& sort : in.decl->signature)
        tuple.push_back(MessageValue{sort, noise_value(sort)});
      vals[in.ref].insert(std::move(tuple));
    }
    // Eq. 3: connected inputs carry the union of their outputs
    for (const auto& [input, targets] : snap.connections) {
      std::set<MessageTuple> u;
      for (const PortRef& out : targets) {
        auto v = vals.find(out);
        if (v != vals.end()) u.insert(v->second.begin(), v->second.end());
      }
      vals[input] = std::move(u);
    }
    for (auto& [ref, tuples] : vals) {
      if (tuples.empty()) continue;
      snap.valuations[ref] = std::vector<MessageTuple>(tuples.begin(), tuples.end());
    }
    return snap;
  }

  std::string noise_value(const std::string& sort) {
    if (doc.find_type(sort) != nullptr) {
      // component reference: any active instance of that type, else a dangling id
      for (const std::string& id : active)
        if (instance_type.at(id) == sort) return id;
      return events::fold_type_name(sort) + "X";
    }
    if (sort == "Integer" || sort == "Int" || sort == "Nat")
      return std::to_string(rng.pick(40) + 1);
    return "n" + std::to_string(rng.pick(12));
  }
};

}  // namespace

ArchTrace simulate(const spec::SpecDocument& doc, const SimConfig& config) {
  if (config.steps < 1) throw SimError("BAD_CONFIG", "steps must be positive");
  for (double p : {config.activation_rate, config.message_rate, config.connect_rate})
    if (p < 0.0 || p > 1.0) throw SimError("BAD_CONFIG", "rates must lie in [0, 1]");
  if (config.max_instances_per_type < 1)
    throw SimError("BAD_CONFIG", "maxInstancesPerType must be positive");
  Generator gen(doc, config);
  return gen.run();
}

ErosionOp parse_erosion(const std::string& text) {
  auto fail = [&]() -> ErosionOp {
    throw SimError("SELECTOR_MISS", "cannot parse erosion op '" + text + "'");
  };
  size_t colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<std::string> parts;
  size_t start = 0;
  while (!rest.empty()) {
    size_t comma = rest.find(',', start);
    parts.push_back(rest.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  ErosionOp op;
  try {
    if (kind == "swap-order") {
      op.kind = ErosionOp::Kind::SwapOrder;
      if (parts.size() == 2) {
        op.step_a = std::stoul(parts[0]);
        op.step_b = std::stoul(parts[1]);
      } else if (!parts.empty()) {
        return fail();
      }
    } else if (kind == "drop-event") {
      op.kind = ErosionOp::Kind::DropEvent;
      if (parts.size() != 3) return fail();
      op.step = std::stoul(parts[0]);
      op.instance = parts[1];
      op.port = parts[2];
    } else if (kind == "duplicate-event") {
      op.kind = ErosionOp::Kind::DuplicateEvent;
      if (parts.size() != 1) return fail();
      op.step = std::stoul(parts[0]);
    } else if (kind == "rewire-connection") {
      op.kind = ErosionOp::Kind::RewireConnection;
      if (parts.size() != 2) return fail();
      auto split = [&](const std::string& s, PortRef& out) {
        size_t dot = s.find('.');
        if (dot == std::string::npos) throw SimError("SELECTOR_MISS", "expected instance.port");
        out = PortRef{s.substr(0, dot), s.substr(dot + 1)};
      };
      PortRef a, b;
      split(parts[0], a);
      split(parts[1], b);
      op.instance = a.instance;
      op.port = a.port;
      op.to_instance = b.instance;
      op.to_port = b.port;
    } else {
      return fail();
    }
  } catch (const std::logic_error&) {
    return fail();
  }
  return op;
}

namespace {

void rederive_inputs(ArchSnapshot& snap) {
  for (const auto& [input, targets] : snap.connections) {
    std::set<MessageTuple> u;
    for (const PortRef& out : targets) {
      auto v = snap.valuations.find(out);
      if (v != snap.valuations.end()) u.insert(v->second.begin(), v->second.end());
    }
    if (u.empty())
      snap.valuations.erase(input);
    else
      snap.valuations[input] = std::vector<MessageTuple>(u.begin(), u.end());
  }
}

}  // namespace

ArchTrace inject_erosion(const ArchTrace& trace, const ErosionOp& op,
                         const spec::SpecDocument& doc) {
  ArchTrace out = trace;
  switch (op.kind) {
    case ErosionOp::Kind::SwapOrder: {
      size_t a, b;
      if (op.step_a && op.step_b) {
        a = *op.step_a;
        b = *op.step_b;
      } else {
        // seeded pick of an adjacent message-bearing pair
        Rng rng(op.seed);
        std::vector<size_t> candidates;
        for (size_t i = 0; i + 1 < out.steps.size(); ++i)
          if (!out.steps[i].valuations.empty() && !out.steps[i + 1].valuations.empty())
            candidates.push_back(i);
        if (candidates.empty())
          throw SimError("SELECTOR_MISS", "no adjacent message-bearing steps to swap");
        a = candidates[rng.pick(candidates.size())];
        b = a + 1;
      }
      if (a >= out.steps.size() || b >= out.steps.size())
        throw SimError("SELECTOR_MISS", "swap-order step out of range");
      std::swap(out.steps[a], out.steps[b]);
      return out;
    }
    case ErosionOp::Kind::DropEvent: {
      if (!op.step || *op.step >= out.steps.size())
        throw SimError("SELECTOR_MISS", "drop-event step out of range");
      ArchSnapshot& snap = out.steps[*op.step];
      PortRef ref{op.instance, op.port};
      auto it = snap.valuations.find(ref);
      if (it == snap.valuations.end() || it->second.empty())
        throw SimError("SELECTOR_MISS",
                       "port " + model::to_string(ref) + " carries no messages at step " +
                           std::to_string(*op.step));
      snap.valuations.erase(it);
      rederive_inputs(snap);
      return out;
    }
    case ErosionOp::Kind::DuplicateEvent: {
      if (!op.step || *op.step >= out.steps.size())
        throw SimError("SELECTOR_MISS", "duplicate-event step out of range");
      out.steps.insert(out.steps.begin() + static_cast<long>(*op.step) + 1,
                       out.steps[*op.step]);
      if (out.loop_start && *out.loop_start > *op.step) ++*out.loop_start;
      return out;
    }
    case ErosionOp::Kind::RewireConnection: {
      PortRef input{op.instance, op.port};
      PortRef replacement{op.to_instance, op.to_port};

      // signature compatibility keeps the eroded trace valid
      auto port_decl = [&](const ArchSnapshot& snap, const PortRef& ref) -> const spec::PortDecl* {
        const model::ComponentId* comp = snap.find_instance(ref.instance);
        if (!comp) return nullptr;
        const spec::ComponentType* ct = doc.find_type(comp->type);
        return ct ? ct->find_port(ref.port) : nullptr;
      };

      bool applied = false;
      for (ArchSnapshot& snap : out.steps) {
        auto it = snap.connections.find(input);
        if (it == snap.connections.end()) continue;
        const spec::PortDecl* in_decl = port_decl(snap, input);
        const spec::PortDecl* new_decl = port_decl(snap, replacement);
        if (!in_decl || !new_decl || in_decl->signature != new_decl->signature) continue;
        if (new_decl->direction != spec::PortDirection::Output) continue;
        it->second = {replacement};
        rederive_inputs(snap);
        applied = true;
      }
      if (!applied)
        throw SimError("SELECTOR_MISS", "rewire-connection never applies: input " +
                                            model::to_string(input) + " -> output " +
                                            model::to_string(replacement));
      return out;
    }
  }
  throw SimError("SELECTOR_MISS", "unknown erosion kind");
}

}  // namespace archmon::simulator
