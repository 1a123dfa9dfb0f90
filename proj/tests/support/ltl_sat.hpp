#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "archmon/ltl.hpp"

namespace archmon::testsupport {

/// Exact LTL satisfiability over the closure of one root formula, decided on
/// the graph of maximal consistent closure assignments with eventuality
/// pruning. Deliberately a different algorithm from the monitor's tableau +
/// Buchi emptiness, so the two can serve as oracles for each other.
///
/// Worlds assign truth values to the root's atoms and temporal subformulas;
/// edges are the pairs consistent with the expansion laws; the pruning
/// fixpoint removes worlds without successors and worlds whose pending
/// eventualities cannot reach fulfilment. A formula over the closure is
/// satisfiable iff some surviving world satisfies it.
class LtlSat {
 public:
  LtlSat(ltl::Arena& arena, ltl::Formula root, size_t max_bits = 18);

  /// False when the closure needs more bits than max_bits; satisfiable()
  /// must not be called then.
  bool feasible() const { return feasible_; }

  /// `g` may be any boolean combination of the root's closure (all
  /// progression residuals of the root qualify).
  bool satisfiable(ltl::Formula g);

 private:
  using Bitset = std::vector<uint64_t>;

  Bitset make_set(bool value) const;
  bool any(const Bitset& s) const;
  void clear_bit(Bitset& s, size_t i) const { s[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test_bit(const Bitset& s, size_t i) const {
    return (s[i >> 6] >> (i & 63)) & 1;
  }

  const Bitset& eval(ltl::Formula g);

  ltl::Arena& arena_;
  bool feasible_ = false;
  size_t world_count_ = 0;
  std::vector<ltl::Formula> base_;                      // bit order
  std::unordered_map<const ltl::Node*, int> base_bit_;
  std::unordered_map<const ltl::Node*, Bitset> eval_memo_;
  std::vector<Bitset> successors_;  // per world, over surviving worlds
  Bitset surviving_;
};

/// Two-valued LTL truth of f at position 0 of the infinite word
/// prefix[0..loop)..(prefix[loop..])^omega, letters interpreted against
/// atom_ids (bit i = atom_ids[i]).
bool eval_lasso(ltl::Formula f, const std::vector<uint64_t>& prefix, size_t loop_start,
                const std::vector<int32_t>& atom_ids);

}  // namespace archmon::testsupport
