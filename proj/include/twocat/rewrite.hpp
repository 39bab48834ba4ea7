#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twocat/expr.hpp"

namespace twocat::sym {

// An equation between unit words.  Variables (declared per rule) match
// nonempty contiguous factor runs whose map prefixes agree with the pattern
// factor; everything else matches literally.  Oriented rules additionally
// drive `normalize` left to right.
struct Rule {
  std::string name;
  Word lhs, rhs;
  bool oriented = false;
  std::set<std::string> vars;
};

struct RuleSystem {
  std::vector<Rule> rules;
};

// All one-step rewrites of w by the rule, read forward or backward,
// applied at every position and free-reduced.
std::vector<Word> rule_neighbors(const Word& w, const Rule& r, bool reverse);

// Applies oriented rules (leftmost match, first rule) plus free reduction
// until a fixpoint or the step cap.
Word normalize(const Word& w, const RuleSystem& rules, std::size_t step_cap = 512);

enum class Verdict { Proven, Refuted, Unknown };
std::string verdict_str(Verdict v);

struct Step {
  std::string rule;
  bool reverse = false;
  Word result;
};

// A replayable equality derivation.  Search proofs are a chain of rule
// applications from `start` to `goal`; difference proofs rewrite
// start * goal^-1 to the empty word.
struct Proof {
  enum class Mode { Trivial, Search, Difference };
  Mode mode = Mode::Trivial;
  Word start, goal;
  std::vector<Step> steps;
};

struct SearchLimits {
  std::size_t depth = 8;       // rule applications per search side
  std::size_t nodes = 100000;  // state budget per search side
};

struct ProveResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Proof> proof;
  std::size_t explored = 0;
};

// Decides lhs == rhs under the rules.  Refuted is only reported for an
// empty rule system, where distinct free normal forms are conclusive;
// searches that exhaust depth or budget return Unknown.
ProveResult prove_equal(const Word& lhs, const Word& rhs, const RuleSystem& rules,
                        const SearchLimits& limits = {});

// Re-executes a proof step by step; every step must be a legal one-step
// rewrite and the chain must land on the recorded goal.
bool replay(const Proof& p, const RuleSystem& rules);

// Proof scripts, one directive per line ('#' and '//' start comments):
//   symbols a b     vars X      homs f g
//   depth N         budget N
//   assume name: L = R          (or L -> R for an oriented rule)
//   lift f name as name2        (apply map f to both sides of a rule)
//   prove name: L = R           (expect Proven)
//   refute name: L = R          (expect Refuted)
//   probe name: L = R           (no expectation, verdict recorded)
//   adopt name: L = R           (prove, then add as a rule for later goals)
enum class Expectation { Proven, Refuted, Any };

struct GoalResult {
  std::string name;
  std::string lhs, rhs;  // printed forms
  Expectation expected = Expectation::Proven;
  Verdict verdict = Verdict::Unknown;
  bool satisfied = false;
  std::size_t steps = 0;       // length of the replayed derivation
  std::size_t explored = 0;    // states visited during the search
  bool replay_ok = false;      // proofs are re-executed before reporting
  std::optional<Proof> proof;  // the derivation itself, for trace output
};

struct ScriptReport {
  std::string label;
  std::vector<GoalResult> goals;
  bool all_satisfied() const;
};

// Caller-side overrides for the script's own depth/budget directives.
struct ScriptOptions {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> budget;
};

ScriptReport verify_script(const std::string& text, const std::string& label = "script",
                           const ScriptOptions& opts = {});
ScriptReport verify_script_file(const std::string& path, const ScriptOptions& opts = {});

}  // namespace twocat::sym
