#pragma once

#include <random>
#include <string>
#include <vector>

#include "archmon/ltl.hpp"
#include "archmon/spec.hpp"

namespace archmon::testsupport {

/// Deterministic helper RNG for tests (mt19937_64 output is pinned by the
/// standard; no std distributions).
struct TestRng {
  std::mt19937_64 engine;
  explicit TestRng(uint64_t seed) : engine(seed) {}
  size_t pick(size_t n) { return n == 0 ? 0 : static_cast<size_t>(engine() % n); }
  bool flip(double p) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53 < p;
  }
};

/// All formulas over the given atoms with operator-tree height <= depth,
/// leaves drawn from the atoms plus true/false. Grows fast; meant for
/// depth <= 3 with <= 2 atoms.
std::vector<ltl::Formula> enumerate_formulas(ltl::Arena& arena,
                                             const std::vector<ltl::Formula>& leaves,
                                             size_t depth);

/// One random formula with <= max_atoms distinct atoms and height <= depth.
ltl::Formula random_formula(ltl::Arena& arena, TestRng& rng,
                            const std::vector<ltl::Formula>& atoms, size_t depth);

/// A random well-typed spec: 2-3 component types over String/Integer ports
/// (some port names shared across types so connection events exist), plus
/// `assertions` random trigger-guarded assertions of the form
/// G(c.p = (vars) -> body), body a combination of delayed atoms.
spec::SpecDocument random_spec(TestRng& rng, size_t assertions);

/// Runs a command line, captures stdout and the exit code.
struct RunResult {
  int exit_code = -1;
  std::string out;
};
RunResult run_command(const std::string& command, const std::string& stdin_text = "");

std::string data_path(const std::string& name);
std::string read_file_or_die(const std::string& path);

}  // namespace archmon::testsupport
