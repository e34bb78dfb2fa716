#include "reqcheck/temporal.hpp"

#include <unordered_map>

#include "reqcheck/parser.hpp"

namespace reqcheck {

namespace {

FormulaPtr make(TemporalOp op, FormulaPtr lhs = nullptr, FormulaPtr rhs = nullptr,
                int lo = 0, int hi = 0, BoolExprPtr atom = nullptr) {
  TemporalFormula f;
  f.op = op;
  f.atom = std::move(atom);
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  f.lo = lo;
  f.hi = hi;
  return std::make_shared<TemporalFormula>(std::move(f));
}

void check_bounds(int lo, int hi) {
  if (lo < 0 || hi < lo)
    throw MalformedFormulaError("metric bounds must satisfy 0 <= lo <= hi");
}

}  // namespace

FormulaPtr f_atom(BoolExprPtr expr) {
  return make(TemporalOp::Atom, nullptr, nullptr, 0, 0, std::move(expr));
}
FormulaPtr f_not(FormulaPtr a) { return make(TemporalOp::Not, std::move(a)); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return make(TemporalOp::And, std::move(a), std::move(b));
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return make(TemporalOp::Or, std::move(a), std::move(b));
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return make(TemporalOp::Implies, std::move(a), std::move(b));
}
FormulaPtr f_prev(FormulaPtr a) { return make(TemporalOp::Prev, std::move(a)); }
FormulaPtr f_historically(FormulaPtr a) {
  return make(TemporalOp::Historically, std::move(a));
}
FormulaPtr f_once(FormulaPtr a) { return make(TemporalOp::Once, std::move(a)); }
FormulaPtr f_since(FormulaPtr anchor, FormulaPtr sustained) {
  return make(TemporalOp::Since, std::move(anchor), std::move(sustained));
}
FormulaPtr f_since_inclusive(FormulaPtr anchor, FormulaPtr sustained) {
  return make(TemporalOp::SinceInclusive, std::move(anchor), std::move(sustained));
}
FormulaPtr f_ftp() { return make(TemporalOp::FirstTimePoint); }
FormulaPtr f_historically_within(int lo, int hi, FormulaPtr a) {
  check_bounds(lo, hi);
  return make(TemporalOp::HistoricallyWithin, std::move(a), nullptr, lo, hi);
}
FormulaPtr f_once_within(int lo, int hi, FormulaPtr a) {
  check_bounds(lo, hi);
  return make(TemporalOp::OnceWithin, std::move(a), nullptr, lo, hi);
}
FormulaPtr f_next(FormulaPtr a) { return make(TemporalOp::Next, std::move(a)); }
FormulaPtr f_globally(FormulaPtr a) {
  return make(TemporalOp::Globally, std::move(a));
}
FormulaPtr f_finally(FormulaPtr a) {
  return make(TemporalOp::Finally, std::move(a));
}
FormulaPtr f_until(FormulaPtr a, FormulaPtr b) {
  return make(TemporalOp::Until, std::move(a), std::move(b));
}
FormulaPtr f_globally_within(int lo, int hi, FormulaPtr a) {
  check_bounds(lo, hi);
  return make(TemporalOp::GloballyWithin, std::move(a), nullptr, lo, hi);
}
FormulaPtr f_finally_within(int lo, int hi, FormulaPtr a) {
  check_bounds(lo, hi);
  return make(TemporalOp::FinallyWithin, std::move(a), nullptr, lo, hi);
}

namespace {

bool is_future_op(TemporalOp op) {
  switch (op) {
    case TemporalOp::Next:
    case TemporalOp::Globally:
    case TemporalOp::Finally:
    case TemporalOp::Until:
    case TemporalOp::GloballyWithin:
    case TemporalOp::FinallyWithin:
      return true;
    default:
      return false;
  }
}

bool is_past_op(TemporalOp op) {
  switch (op) {
    case TemporalOp::Prev:
    case TemporalOp::Historically:
    case TemporalOp::Once:
    case TemporalOp::Since:
    case TemporalOp::SinceInclusive:
    case TemporalOp::FirstTimePoint:
    case TemporalOp::HistoricallyWithin:
    case TemporalOp::OnceWithin:
      return true;
    default:
      return false;
  }
}

bool check_fragment(const FormulaPtr& f, bool allow_past, bool allow_future) {
  if (!f) return true;
  if (!allow_past && is_past_op(f->op)) return false;
  if (!allow_future && is_future_op(f->op)) return false;
  return check_fragment(f->lhs, allow_past, allow_future) &&
         check_fragment(f->rhs, allow_past, allow_future);
}

}  // namespace

bool is_past_only(const FormulaPtr& f) { return check_fragment(f, true, false); }
bool is_future_only(const FormulaPtr& f) { return check_fragment(f, false, true); }

// ---------------------------------------------------------------------------
// BoolTrace
// ---------------------------------------------------------------------------

std::string BoolTrace::key_of(const BoolExprPtr& expr) {
  return print_fretish(expr);
}

void BoolTrace::add_atom(const std::string& key, std::vector<uint8_t> values) {
  if (values.size() != length_)
    throw std::invalid_argument("atom column '" + key +
                                "' does not match the trace length");
  auto [it, inserted] = index_.emplace(key, columns_.size());
  if (inserted)
    columns_.push_back(std::move(values));
  else
    columns_[it->second] = std::move(values);
}

bool BoolTrace::value(const BoolExprPtr& expr, std::size_t t) const {
  if (!expr) throw std::invalid_argument("null atom expression");
  if (t >= length_) throw std::out_of_range("step index out of trace bounds");
  auto it = index_.find(key_of(expr));
  if (it != index_.end()) return columns_[it->second][t] != 0;

  // Fall back to boolean structure over registered atoms; synthetic traces
  // register leaf atoms only.
  if (const auto* c = std::get_if<BoolConst>(&expr->node)) return c->value;
  if (const auto* n = std::get_if<BoolNot>(&expr->node))
    return !value(n->arg, t);
  if (const auto* b = std::get_if<BoolBinary>(&expr->node)) {
    bool l = value(b->lhs, t);
    bool r = value(b->rhs, t);
    switch (b->kind) {
      case BoolBinary::And: return l && r;
      case BoolBinary::Or: return l || r;
      case BoolBinary::Implies: return !l || r;
    }
  }
  if (const auto* p = std::get_if<BoolParen>(&expr->node))
    return value(p->inner, t);
  throw std::invalid_argument("atom '" + key_of(expr) +
                              "' is not valuated by this trace");
}

BoolTrace make_bool_trace(
    const std::vector<std::pair<std::string, std::vector<uint8_t>>>& columns) {
  if (columns.empty()) throw std::invalid_argument("need at least one column");
  BoolTrace trace(columns.front().second.size());
  for (const auto& [name, values] : columns) trace.add_atom(name, values);
  return trace;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

/// Post-order listing of distinct subformulas (children before parents).
void collect(const FormulaPtr& f,
             std::unordered_map<const TemporalFormula*, std::size_t>& seen,
             std::vector<FormulaPtr>& order) {
  if (!f || seen.count(f.get())) return;
  collect(f->lhs, seen, order);
  collect(f->rhs, seen, order);
  seen.emplace(f.get(), order.size());
  order.push_back(f);
}

}  // namespace

FormulaEvaluator::FormulaEvaluator(FormulaPtr f, const BoolTrace& trace,
                                   bool past) {
  if (!f) throw std::invalid_argument("null formula");
  if (past && !is_past_only(f))
    throw MalformedFormulaError(
        "future operator in a past-time evaluation");
  if (!past && !is_future_only(f))
    throw MalformedFormulaError(
        "past operator in a future-time evaluation");

  std::unordered_map<const TemporalFormula*, std::size_t> seen;
  std::vector<FormulaPtr> order;
  collect(f, seen, order);
  root_ = seen.at(f.get());

  const std::size_t n = trace.length();
  tables_.resize(order.size());

  for (std::size_t i = 0; i < order.size(); ++i) {
    const TemporalFormula& node = *order[i];
    std::vector<uint8_t>& table = tables_[i];
    table.assign(n, 0);

    auto child = [&](const FormulaPtr& c) -> const std::vector<uint8_t>& {
      return tables_[seen.at(c.get())];
    };

    switch (node.op) {
      case TemporalOp::Atom:
        for (std::size_t t = 0; t < n; ++t)
          table[t] = trace.value(node.atom, t) ? 1 : 0;
        break;
      case TemporalOp::Not: {
        const auto& a = child(node.lhs);
        for (std::size_t t = 0; t < n; ++t) table[t] = !a[t];
        break;
      }
      case TemporalOp::And: {
        const auto& a = child(node.lhs);
        const auto& b = child(node.rhs);
        for (std::size_t t = 0; t < n; ++t) table[t] = a[t] && b[t];
        break;
      }
      case TemporalOp::Or: {
        const auto& a = child(node.lhs);
        const auto& b = child(node.rhs);
        for (std::size_t t = 0; t < n; ++t) table[t] = a[t] || b[t];
        break;
      }
      case TemporalOp::Implies: {
        const auto& a = child(node.lhs);
        const auto& b = child(node.rhs);
        for (std::size_t t = 0; t < n; ++t) table[t] = !a[t] || b[t];
        break;
      }
      case TemporalOp::Prev: {
        const auto& a = child(node.lhs);
        for (std::size_t t = 1; t < n; ++t) table[t] = a[t - 1];
        break;
      }
      case TemporalOp::Historically: {
        const auto& a = child(node.lhs);
        for (std::size_t t = 0; t < n; ++t)
          table[t] = a[t] && (t == 0 || table[t - 1]);
        break;
      }
      case TemporalOp::Once: {
        const auto& a = child(node.lhs);
        for (std::size_t t = 0; t < n; ++t)
          table[t] = a[t] || (t > 0 && table[t - 1]);
        break;
      }
      case TemporalOp::Since: {
        // S(anchor, sustained): anchor held at some past point and
        // sustained held at every step strictly after it, through now.
        const auto& a = child(node.lhs);
        const auto& b = child(node.rhs);
        for (std::size_t t = 0; t < n; ++t)
          table[t] = a[t] || (b[t] && t > 0 && table[t - 1]);
        break;
      }
      case TemporalOp::SinceInclusive: {
        // SI(anchor, sustained): as Since, but sustained also holds at the
        // anchor step itself.
        const auto& a = child(node.lhs);
        const auto& b = child(node.rhs);
        for (std::size_t t = 0; t < n; ++t)
          table[t] = b[t] && (a[t] || (t > 0 && table[t - 1]));
        break;
      }
      case TemporalOp::FirstTimePoint:
        if (n > 0) table[0] = 1;
        break;
      case TemporalOp::HistoricallyWithin:
      case TemporalOp::OnceWithin: {
        const auto& a = child(node.lhs);
        std::vector<std::size_t> prefix(n + 1, 0);
        for (std::size_t t = 0; t < n; ++t)
          prefix[t + 1] = prefix[t] + (a[t] ? 1 : 0);
        const std::size_t lo = static_cast<std::size_t>(node.lo);
        const std::size_t hi = static_cast<std::size_t>(node.hi);
        for (std::size_t t = 0; t < n; ++t) {
          if (t < lo) {
            // empty window: H vacuously true, O false
            table[t] = node.op == TemporalOp::HistoricallyWithin;
            continue;
          }
          std::size_t w_lo = t >= hi ? t - hi : 0;
          std::size_t w_hi = t - lo;
          std::size_t count = prefix[w_hi + 1] - prefix[w_lo];
          std::size_t size = w_hi - w_lo + 1;
          table[t] = node.op == TemporalOp::HistoricallyWithin ? count == size
                                                               : count > 0;
        }
        break;
      }
      case TemporalOp::Next: {
        const auto& a = child(node.lhs);
        for (std::size_t t = 0; t + 1 < n; ++t) table[t] = a[t + 1];
        break;
      }
      case TemporalOp::Globally: {
        const auto& a = child(node.lhs);
        for (std::size_t t = n; t-- > 0;)
          table[t] = a[t] && (t + 1 == n || table[t + 1]);
        break;
      }
      case TemporalOp::Finally: {
        const auto& a = child(node.lhs);
        for (std::size_t t = n; t-- > 0;)
          table[t] = a[t] || (t + 1 < n && table[t + 1]);
        break;
      }
      case TemporalOp::Until: {
        // U(a, b): some future step satisfies b, with a at every step
        // before it (from the evaluation point on).
        const auto& a = child(node.lhs);
        const auto& b = child(node.rhs);
        for (std::size_t t = n; t-- > 0;)
          table[t] = b[t] || (a[t] && t + 1 < n && table[t + 1]);
        break;
      }
      case TemporalOp::GloballyWithin:
      case TemporalOp::FinallyWithin: {
        const auto& a = child(node.lhs);
        std::vector<std::size_t> prefix(n + 1, 0);
        for (std::size_t t = 0; t < n; ++t)
          prefix[t + 1] = prefix[t] + (a[t] ? 1 : 0);
        const std::size_t lo = static_cast<std::size_t>(node.lo);
        const std::size_t hi = static_cast<std::size_t>(node.hi);
        for (std::size_t t = 0; t < n; ++t) {
          if (t + lo >= n) {
            // window beyond trace end: G clips vacuously, F has no witness
            table[t] = node.op == TemporalOp::GloballyWithin;
            continue;
          }
          std::size_t w_lo = t + lo;
          std::size_t w_hi = std::min(t + hi, n - 1);
          std::size_t count = prefix[w_hi + 1] - prefix[w_lo];
          std::size_t size = w_hi - w_lo + 1;
          table[t] = node.op == TemporalOp::GloballyWithin ? count == size
                                                           : count > 0;
        }
        break;
      }
    }
  }
}

bool FormulaEvaluator::at(std::size_t t) const {
  const auto& root = tables_[root_];
  if (t >= root.size()) throw std::out_of_range("step index out of trace bounds");
  return root[t] != 0;
}

bool eval_past(const FormulaPtr& f, const BoolTrace& trace, std::size_t t) {
  return FormulaEvaluator(f, trace, /*past=*/true).at(t);
}

bool eval_future(const FormulaPtr& f, const BoolTrace& trace, std::size_t t) {
  return FormulaEvaluator(f, trace, /*past=*/false).at(t);
}

}  // namespace reqcheck
