#pragma once

#include "presafe/wlang.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace presafe {

enum class Access : std::uint8_t { Read, Write, Exit, Loop, Then, Else };
const char* access_name(Access a);

// variable is empty for exit/loop/then/else
struct AbstractObservable {
  int tid = 0;
  Access access = Access::Read;
  std::string variable;
  Location location;

  std::string str() const;
  auto operator<=>(const AbstractObservable&) const = default;
  bool operator==(const AbstractObservable&) const = default;
};

enum class IoKind : std::uint8_t { Havoc, Input, Output };

struct ConcreteObservable {
  int tid = 0;
  IoKind kind = IoKind::Havoc;
  Integer value = 0;
  std::string subject;  // variable for havoc, tag otherwise

  std::string str() const;
  bool operator==(const ConcreteObservable&) const = default;
};
bool operator<(const ConcreteObservable& a, const ConcreteObservable& b);

using AbstractSequence = std::vector<AbstractObservable>;
using ConcreteSequence = std::vector<ConcreteObservable>;

std::string dev_variable(const std::string& tag);

enum class Scheduling { NonPreemptive, Preemptive };

namespace semantics {

enum class Op : std::uint8_t { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not, Neg };

struct CExpr {
  enum class Kind : std::uint8_t { Var, Const, Op };
  Kind kind = Kind::Const;
  int var = -1;
  Integer value = 0;
  Op op = Op::Add;
  std::vector<CExpr> args;
};

struct VarInfo {
  std::string name;
  wlang::VarKind kind = wlang::VarKind::Std;
  Integer init = 0;
  int sync_slot = -1;  // index into the abstract lock/cond vector
};

using NodeId = std::uint32_t;

struct Node {
  wlang::StmtKind kind = wlang::StmtKind::Skip;
  Location loc;
  int var = -1;
  int tag = -1;
  std::optional<CExpr> expr;
  std::vector<int> reads;  // variable ids read by expr, left to right
  std::vector<NodeId> body, else_body;
};

// Flat form of a program. while(*) is lowered to a havoc of a fresh
// thread-local variable; unroll > 0 caps the iterations of every loop.
class CompiledProgram {
 public:
  CompiledProgram(const wlang::Program& p, int unroll = 0);

  const wlang::Program& source() const { return src_; }
  int threads() const { return static_cast<int>(roots_.size()); }
  int unroll() const { return unroll_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  const std::vector<NodeId>& roots(int tid) const { return roots_[tid - 1]; }
  const std::vector<VarInfo>& vars() const { return vars_; }
  const std::vector<std::string>& tags() const { return tags_; }
  int sync_count() const { return sync_count_; }
  int var_id(const std::string& name) const;  // -1 when unknown

 private:
  wlang::Program src_;
  int unroll_;
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> roots_;
  std::vector<VarInfo> vars_;
  std::vector<std::string> tags_;
  int sync_count_ = 0;

  NodeId compile(const wlang::Statement& s, int tid);
  std::vector<NodeId> compile_block(const wlang::Block& b, int tid);
  CExpr compile_expr(const wlang::Expr& e) const;
  void collect_reads(const CExpr& e, std::vector<int>& out) const;
};

struct Frame {
  NodeId node = 0;
  std::uint32_t iter = 0;
  bool operator==(const Frame&) const = default;
};

// residual program of one thread; back() of the stack runs next
struct ThreadCtl {
  std::vector<Frame> stack;
  std::uint32_t micro = 0;  // symbols already emitted by the current statement
  bool done() const { return stack.empty(); }
  bool operator==(const ThreadCtl&) const = default;
};

struct AbstractState {
  int ctid = 0;
  std::vector<int> sync;
  std::vector<ThreadCtl> threads;
  bool operator==(const AbstractState&) const = default;
};

struct ConcreteState {
  int ctid = 0;
  std::vector<Integer> vals;
  std::vector<ThreadCtl> threads;
  bool operator==(const ConcreteState&) const = default;
};

struct StateHash {
  std::size_t operator()(const AbstractState& s) const;
  std::size_t operator()(const ConcreteState& s) const;
};

using Domain = std::vector<Integer>;
Domain default_domain();  // {0, 1}
Domain parse_domain(const std::string& spec);  // "0..1" or "0,2,5"

AbstractState initial_abstract_state(const CompiledProgram& p);
ConcreteState initial_concrete_state(const CompiledProgram& p);
bool is_final(const AbstractState& s);
bool is_final(const ConcreteState& s);
ThreadCtl initial_thread(const CompiledProgram& p, int tid);

Integer eval(const CExpr& e, const std::vector<Integer>& vals);
std::vector<AbstractObservable> reads_of_expression(int tid, const wlang::Expr& e, const Location& l);

struct SingleConcreteStep {
  std::vector<Integer> vals;
  ThreadCtl ctl;
  std::optional<ConcreteObservable> obs;
};

// Statement-level steps of one thread (Assign, Havoc, If, While, Input, Output).
// Synchronization statements and yield belong to the program-level rules and
// yield no single-thread successors.
std::vector<SingleConcreteStep> step_concrete_single(const CompiledProgram& p, int tid, const std::vector<Integer>& vals,
                                                     const ThreadCtl& ctl, const Domain& domain);

struct SingleAbstractStep {
  ThreadCtl ctl;
  std::vector<AbstractObservable> obs;
};
std::vector<SingleAbstractStep> step_abstract_single(const CompiledProgram& p, int tid, const ThreadCtl& ctl);

// one symbol of a statement's observable chain
struct MicroStep {
  ThreadCtl ctl;
  AbstractObservable obs;
};
std::vector<MicroStep> abstract_micro_steps(const CompiledProgram& p, int tid, const ThreadCtl& ctl);

template <class State, class Obs>
struct Successor {
  State state;
  std::optional<Obs> obs;
};

template <class State, class Obs>
struct StepResult {
  std::vector<Successor<State, Obs>> succ;
  bool unlock_violation = false;
};

using ConcreteStep = StepResult<ConcreteState, ConcreteObservable>;
using AbstractStep = StepResult<AbstractState, AbstractObservable>;

ConcreteStep step_nonpreemptive(const CompiledProgram& p, const ConcreteState& s, const Domain& domain);
ConcreteStep step_preemptive(const CompiledProgram& p, const ConcreteState& s, const Domain& domain);
ConcreteStep step_concrete(const CompiledProgram& p, const ConcreteState& s, const Domain& domain, Scheduling mode);
AbstractStep step_abstract(const CompiledProgram& p, const AbstractState& s, Scheduling mode);

// every unfinished thread waits on a lock held elsewhere or an unset cond
bool is_blocked(const CompiledProgram& p, const AbstractState& s);
bool is_blocked(const CompiledProgram& p, const ConcreteState& s);

std::string describe(const CompiledProgram& p, const AbstractState& s);

enum class Level { Concrete, Abstract };

struct EnumerationConfig {
  Scheduling scheduling = Scheduling::NonPreemptive;
  Level level = Level::Abstract;
  int unroll = 1;                  // 0 = loops unbounded
  std::size_t max_steps = 1000;    // non-scheduling steps per execution
  std::size_t max_states = 100000;
  std::size_t max_sequences = 1000000;
  Domain domain = default_domain();
};

template <class Obs>
struct EnumerationResult {
  bool budget_exceeded = false;
  std::string budget_reason;
  std::set<std::vector<Obs>> sequences;
  std::size_t states = 0;
  std::size_t deadlocks = 0;
  std::size_t unlock_violations = 0;
};

EnumerationResult<AbstractObservable> enumerate_abstract(const wlang::Program& p, const EnumerationConfig& cfg);
EnumerationResult<ConcreteObservable> enumerate_concrete(const wlang::Program& p, const EnumerationConfig& cfg);

bool equivalent_concrete(const ConcreteSequence& a, const ConcreteSequence& b);
bool equivalent_abstract(const AbstractSequence& a, const AbstractSequence& b);

// canonical representatives: equal keys iff equivalent
std::string concrete_key(const ConcreteSequence& s);
std::string abstract_key(const AbstractSequence& s);

}  // namespace semantics
}  // namespace presafe
