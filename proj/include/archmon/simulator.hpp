#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "archmon/model.hpp"
#include "archmon/spec.hpp"

namespace archmon::simulator {

struct SimConfig {
  uint64_t seed = 42;
  size_t steps = 20;
  size_t max_instances_per_type = 3;
  double activation_rate = 0.3;
  double message_rate = 0.5;
  double connect_rate = 0.5;
  bool lasso = false;
};

struct SimError : std::runtime_error {
  std::string code;  // SELECTOR_MISS, BAD_CONFIG
  SimError(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

/// Generates a valid architecture trace. Assertions of the staggered
/// obligation shape G(trigger -> X^d(...) & ...) are played compliantly:
/// their triggers fire at random steps and the scheduled obligations
/// (activations, output messages, connections) follow at the right delays.
/// Everything else is seeded random churn on ports that no playable
/// assertion mentions. Pure function of (spec, config).
model::ArchTrace simulate(const spec::SpecDocument& doc, const SimConfig& config);

struct ErosionOp {
  enum class Kind : uint8_t { SwapOrder, DropEvent, DuplicateEvent, RewireConnection } kind =
      Kind::SwapOrder;
  // swap-order
  std::optional<size_t> step_a, step_b;
  // drop-event / duplicate-event
  std::optional<size_t> step;
  std::string instance, port;          // drop-event target
  std::string to_instance, to_port;    // rewire: replacement output
  uint64_t seed = 0;                   // drives selection when a selector is partial
};

/// Parses the CLI form, e.g. "swap-order:3,4", "drop-event:5,bs0,setName",
/// "duplicate-event:3", "rewire-connection:it0.setPrice,bs1.setPrice".
/// Throws SimError(SELECTOR_MISS) on malformed input.
ErosionOp parse_erosion(const std::string& text);

/// Mutates a valid trace into an architecturally eroded but still valid
/// trace: snapshots are swapped/duplicated whole, dropped messages and
/// rewired connections re-derive connected input valuations. Throws
/// SimError(SELECTOR_MISS) when the selector does not resolve.
model::ArchTrace inject_erosion(const model::ArchTrace& trace, const ErosionOp& op,
                                const spec::SpecDocument& doc);

}  // namespace archmon::simulator
