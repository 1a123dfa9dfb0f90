#include "support/ltl_sat.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <stdexcept>

namespace archmon::testsupport {

using ltl::Formula;
using ltl::Node;
using ltl::Op;

namespace {

bool is_temporal(Op op) {
  return op == Op::Next || op == Op::Globally || op == Op::Eventually || op == Op::Until ||
         op == Op::WeakUntil;
}

void collect_base(Formula f, std::vector<Formula>& out,
                  std::unordered_map<const Node*, int>& index) {
  if (index.count(f)) return;
  if (f->op == Op::Atom || is_temporal(f->op)) {
    index.emplace(f, static_cast<int>(out.size()));
    out.push_back(f);
  }
  if (f->lhs) collect_base(f->lhs, out, index);
  if (f->rhs) collect_base(f->rhs, out, index);
}

}  // namespace

LtlSat::Bitset LtlSat::make_set(bool value) const {
  size_t words = (world_count_ + 63) / 64;
  Bitset s(words, value ? ~uint64_t{0} : 0);
  if (value && world_count_ % 64 != 0)
    s.back() = (uint64_t{1} << (world_count_ % 64)) - 1;
  return s;
}

bool LtlSat::any(const Bitset& s) const {
  for (uint64_t w : s)
    if (w) return true;
  return false;
}

const LtlSat::Bitset& LtlSat::eval(Formula g) {
  auto it = eval_memo_.find(g);
  if (it != eval_memo_.end()) return it->second;
  Bitset result;
  auto base = base_bit_.find(g);
  if (base != base_bit_.end()) {
    result = make_set(false);
    for (size_t w = 0; w < world_count_; ++w)
      if ((w >> base->second) & 1) result[w >> 6] |= uint64_t{1} << (w & 63);
  } else {
    switch (g->op) {
      case Op::True: result = make_set(true); break;
      case Op::False: result = make_set(false); break;
      case Op::Not: {
        result = eval(g->lhs);
        Bitset all = make_set(true);
        for (size_t i = 0; i < result.size(); ++i) result[i] = all[i] & ~result[i];
        break;
      }
      case Op::And: {
        result = eval(g->lhs);
        const Bitset& rhs = eval(g->rhs);
        for (size_t i = 0; i < result.size(); ++i) result[i] &= rhs[i];
        break;
      }
      case Op::Or: {
        result = eval(g->lhs);
        const Bitset& rhs = eval(g->rhs);
        for (size_t i = 0; i < result.size(); ++i) result[i] |= rhs[i];
        break;
      }
      case Op::Implies: {
        const Bitset& lhs = eval(g->lhs);
        const Bitset& rhs = eval(g->rhs);
        Bitset all = make_set(true);
        result.resize(lhs.size());
        for (size_t i = 0; i < result.size(); ++i)
          result[i] = (all[i] & ~lhs[i]) | rhs[i];
        break;
      }
      default:
        throw std::logic_error("formula outside the root closure");
    }
  }
  return eval_memo_.emplace(g, std::move(result)).first->second;
}

LtlSat::LtlSat(ltl::Arena& arena, Formula root, size_t max_bits) : arena_(arena) {
  collect_base(root, base_, base_bit_);
  if (base_.size() > max_bits) return;
  feasible_ = true;
  world_count_ = size_t{1} << base_.size();
  surviving_ = make_set(true);

  // Successor sets. The constraint a world puts on its successor depends
  // only on which expansion outcomes it forces, so successor sets are
  // memoized by that signature: per temporal bit, demand true, demand
  // false, or unconstrained — plus "world inconsistent".
  std::map<std::vector<int>, Bitset> memo;
  successors_.resize(world_count_);
  for (size_t w = 0; w < world_count_; ++w) {
    std::vector<int> signature;  // per temporal: 0 any, 1 true, 2 false, 3 dead
    signature.reserve(base_.size());
    bool dead = false;
    for (size_t b = 0; b < base_.size() && !dead; ++b) {
      Formula t = base_[b];
      if (t->op == Op::Atom) {
        signature.push_back(0);
        continue;
      }
      bool now = (w >> b) & 1;
      auto truth = [&](Formula sub) { return test_bit(eval(sub), w); };
      int demand = 0;
      switch (t->op) {
        case Op::Next: demand = now ? 1 : 2; break;
        case Op::Globally:
          if (now)
            demand = truth(t->lhs) ? 1 : 3;
          else
            demand = truth(t->lhs) ? 2 : 0;
          break;
        case Op::Eventually:
          if (now)
            demand = truth(t->lhs) ? 0 : 1;
          else
            demand = truth(t->lhs) ? 3 : 2;
          break;
        case Op::Until:
        case Op::WeakUntil: {
          bool b_now = truth(t->rhs);
          bool a_now = truth(t->lhs);
          if (now)
            demand = b_now ? 0 : (a_now ? 1 : 3);
          else
            demand = b_now ? 3 : (a_now ? 2 : 0);
          break;
        }
        default: demand = 0; break;
      }
      if (demand == 3) dead = true;
      signature.push_back(demand);
    }
    if (dead) {
      successors_[w] = make_set(false);
      continue;
    }
    auto it = memo.find(signature);
    if (it == memo.end()) {
      Bitset set = make_set(true);
      for (size_t b = 0; b < base_.size(); ++b) {
        int demand = signature[b];
        if (demand == 0) continue;
        Formula t = base_[b];
        // successor truth of the temporal bit itself (Next constrains the
        // subformula instead)
        const Bitset& truth_set = t->op == Op::Next ? eval(t->lhs) : eval(t);
        if (demand == 1) {
          for (size_t i = 0; i < set.size(); ++i) set[i] &= truth_set[i];
        } else {
          for (size_t i = 0; i < set.size(); ++i) set[i] &= ~truth_set[i];
        }
      }
      it = memo.emplace(std::move(signature), std::move(set)).first;
    }
    successors_[w] = it->second;
  }

  // Eventuality pruning fixpoint.
  std::vector<std::pair<Formula, Bitset>> eventualities;  // (node, fulfilment set)
  for (Formula t : base_) {
    if (t->op == Op::Eventually)
      eventualities.emplace_back(t, eval(t->lhs));
    else if (t->op == Op::Until)
      eventualities.emplace_back(t, eval(t->rhs));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // drop worlds without surviving successors
    for (size_t w = 0; w < world_count_; ++w) {
      if (!test_bit(surviving_, w)) continue;
      bool has = false;
      const Bitset& succ = successors_[w];
      for (size_t i = 0; i < succ.size(); ++i)
        if (succ[i] & surviving_[i]) {
          has = true;
          break;
        }
      if (!has) {
        clear_bit(surviving_, w);
        changed = true;
      }
    }
    // drop worlds whose pending eventualities cannot be fulfilled
    for (const auto& [node, fulfil] : eventualities) {
      int bit = base_bit_.at(node);
      // backward reachability of fulfilment within surviving worlds
      Bitset ok = fulfil;
      for (size_t i = 0; i < ok.size(); ++i) ok[i] &= surviving_[i];
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t w = 0; w < world_count_; ++w) {
          if (!test_bit(surviving_, w) || test_bit(ok, w)) continue;
          const Bitset& succ = successors_[w];
          bool reaches = false;
          for (size_t i = 0; i < succ.size(); ++i)
            if (succ[i] & ok[i]) {
              reaches = true;
              break;
            }
          if (reaches) {
            ok[w >> 6] |= uint64_t{1} << (w & 63);
            grew = true;
          }
        }
      }
      for (size_t w = 0; w < world_count_; ++w) {
        if (!test_bit(surviving_, w)) continue;
        if (((w >> bit) & 1) && !test_bit(ok, w)) {
          clear_bit(surviving_, w);
          changed = true;
        }
      }
    }
  }
}

bool LtlSat::satisfiable(Formula g) {
  assert(feasible_);
  const Bitset& set = eval(g);
  for (size_t i = 0; i < set.size(); ++i)
    if (set[i] & surviving_[i]) return true;
  return false;
}

bool eval_lasso(Formula f, const std::vector<uint64_t>& prefix, size_t loop_start,
                const std::vector<int32_t>& atom_ids) {
  size_t n = prefix.size();
  assert(n > 0 && loop_start < n);
  auto next = [&](size_t i) { return i + 1 < n ? i + 1 : loop_start; };

  std::map<const Node*, std::vector<char>> memo;
  std::function<const std::vector<char>&(Formula)> eval = [&](Formula g)
      -> const std::vector<char>& {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::vector<char> r(n, 0);
    switch (g->op) {
      case Op::True: std::fill(r.begin(), r.end(), 1); break;
      case Op::False: break;
      case Op::Atom: {
        int bit = -1;
        for (size_t i = 0; i < atom_ids.size(); ++i)
          if (atom_ids[i] == g->atom) bit = static_cast<int>(i);
        if (bit >= 0)
          for (size_t i = 0; i < n; ++i) r[i] = (prefix[i] >> bit) & 1;
        break;
      }
      case Op::Not: {
        const auto& a = eval(g->lhs);
        for (size_t i = 0; i < n; ++i) r[i] = !a[i];
        break;
      }
      case Op::And:
      case Op::Or:
      case Op::Implies: {
        const auto& a = eval(g->lhs);
        const auto& b = eval(g->rhs);
        for (size_t i = 0; i < n; ++i)
          r[i] = g->op == Op::And  ? (a[i] && b[i])
                 : g->op == Op::Or ? (a[i] || b[i])
                                   : (!a[i] || b[i]);
        break;
      }
      case Op::Next: {
        const auto& a = eval(g->lhs);
        for (size_t i = 0; i < n; ++i) r[i] = a[next(i)];
        break;
      }
      case Op::Globally:
      case Op::Eventually: {
        const auto& a = eval(g->lhs);
        bool exists = g->op == Op::Eventually;
        bool cycle = !exists;
        for (size_t i = loop_start; i < n; ++i)
          cycle = exists ? (cycle || a[i]) : (cycle && a[i]);
        for (size_t k = n; k-- > 0;) {
          bool nxt = k + 1 < n ? r[k + 1] : cycle;
          r[k] = exists ? (a[k] || nxt) : (a[k] && nxt);
        }
        for (size_t i = loop_start; i < n; ++i)
          r[i] = exists ? (r[i] || cycle) : (r[i] && cycle);
        break;
      }
      case Op::Until:
      case Op::WeakUntil: {
        const auto& a = eval(g->lhs);
        const auto& b = eval(g->rhs);
        bool weak = g->op == Op::WeakUntil;
        for (size_t i = 0; i < n; ++i) {
          size_t j = i;
          char result = weak ? 1 : 0;
          for (size_t steps = 0; steps < n; ++steps) {
            if (b[j]) { result = 1; break; }
            if (!a[j]) { result = 0; break; }
            j = next(j);
          }
          r[i] = result;
        }
        break;
      }
    }
    return memo.emplace(g, std::move(r)).first->second;
  };
  return eval(f)[0] != 0;
}

}  // namespace archmon::testsupport
