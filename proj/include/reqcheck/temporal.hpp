#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "reqcheck/ast.hpp"

namespace reqcheck {

/// Temporal operators over boolean-expression atoms.
///
/// Past:   Y (previous), H (historically), O (once), S (since),
///         SI (since inclusive), FTP (first time point), H[a,b], O[a,b].
/// Future: X (next), G (globally), F (finally), U (until), G[a,b], F[a,b].
enum class TemporalOp {
  Atom,
  Not,
  And,
  Or,
  Implies,
  // past
  Prev,
  Historically,
  Once,
  Since,
  SinceInclusive,
  FirstTimePoint,
  HistoricallyWithin,
  OnceWithin,
  // future
  Next,
  Globally,
  Finally,
  Until,
  GloballyWithin,
  FinallyWithin,
};

struct TemporalFormula;
using FormulaPtr = std::shared_ptr<const TemporalFormula>;

/// Immutable formula tree. Atoms hold whole boolean expressions; their
/// truth values per step come from a BoolTrace. Metric bounds satisfy
/// 0 <= lo <= hi.
struct TemporalFormula {
  TemporalOp op = TemporalOp::Atom;
  BoolExprPtr atom;      // Atom only
  FormulaPtr lhs, rhs;   // operands (rhs for binary ops)
  int lo = 0, hi = 0;    // metric bounds
};

FormulaPtr f_atom(BoolExprPtr expr);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_prev(FormulaPtr a);
FormulaPtr f_historically(FormulaPtr a);
FormulaPtr f_once(FormulaPtr a);
FormulaPtr f_since(FormulaPtr anchor, FormulaPtr sustained);
FormulaPtr f_since_inclusive(FormulaPtr anchor, FormulaPtr sustained);
FormulaPtr f_ftp();
FormulaPtr f_historically_within(int lo, int hi, FormulaPtr a);
FormulaPtr f_once_within(int lo, int hi, FormulaPtr a);
FormulaPtr f_next(FormulaPtr a);
FormulaPtr f_globally(FormulaPtr a);
FormulaPtr f_finally(FormulaPtr a);
FormulaPtr f_until(FormulaPtr a, FormulaPtr b);
FormulaPtr f_globally_within(int lo, int hi, FormulaPtr a);
FormulaPtr f_finally_within(int lo, int hi, FormulaPtr a);

bool is_past_only(const FormulaPtr& f);
bool is_future_only(const FormulaPtr& f);

/// Raised when an evaluator meets an operator outside its fragment, or a
/// printer meets an operator its dialect cannot express.
class MalformedFormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite trace of pre-evaluated atom valuations. Atoms are keyed by their
/// canonical printed form; every step valuates the same atom set.
class BoolTrace {
 public:
  explicit BoolTrace(std::size_t length) : length_(length) {}

  std::size_t length() const { return length_; }

  void add_atom(const std::string& key, std::vector<uint8_t> values);
  bool has_atom(const std::string& key) const { return index_.count(key) > 0; }

  /// Truth value of `expr` at step t. Constants and boolean structure over
  /// registered atoms are evaluated on the fly; a missing atom throws.
  bool value(const BoolExprPtr& expr, std::size_t t) const;

  /// Canonical atom key (the FRETISH rendering of the expression).
  static std::string key_of(const BoolExprPtr& expr);

 private:
  std::size_t length_;
  std::vector<std::vector<uint8_t>> columns_;
  std::map<std::string, std::size_t> index_;
};

/// Convenience builder for synthetic tests: each named column becomes one
/// boolean atom.
BoolTrace make_bool_trace(
    const std::vector<std::pair<std::string, std::vector<uint8_t>>>& columns);

/// Evaluates a past/boolean formula at step t (memoized, O(n * |f|)).
/// Throws MalformedFormulaError on future operators.
bool eval_past(const FormulaPtr& f, const BoolTrace& trace, std::size_t t);

/// Evaluates a future/boolean formula at step t under finite-trace (LTLf)
/// semantics: strong X, suffix-bounded G/F, G[a,b] clipped at trace end,
/// F[a,b] needs its witness inside the trace.
bool eval_future(const FormulaPtr& f, const BoolTrace& trace, std::size_t t);

/// Evaluator with per-(subformula, step) tables, reusable across steps of
/// the same trace.
class FormulaEvaluator {
 public:
  FormulaEvaluator(FormulaPtr f, const BoolTrace& trace, bool past);
  bool at(std::size_t t) const;

 private:
  std::vector<std::vector<uint8_t>> tables_;
  std::size_t root_ = 0;
};

}  // namespace reqcheck
