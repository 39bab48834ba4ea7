#include "twocat/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "twocat/errors.hpp"

namespace twocat::sym {

namespace {

using Bindings = std::map<std::string, Word>;

bool has_hom_prefix(const Factor& f, const std::vector<std::string>& prefix) {
  return f.homs.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), f.homs.begin());
}

Factor strip_prefix(const Factor& f, std::size_t n) {
  Factor out = f;
  out.homs.erase(out.homs.begin(), out.homs.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

// Matches pattern[pi..] against w starting at wi; records (end, bindings)
// for every way the whole pattern can consume a contiguous run.
void match_from(const Word& pat, std::size_t pi, const Word& w, std::size_t wi,
                const std::set<std::string>& vars, Bindings& b,
                std::vector<std::pair<std::size_t, Bindings>>& out) {
  if (pi == pat.size()) {
    out.emplace_back(wi, b);
    return;
  }
  const Factor& p = pat[pi];
  if (vars.count(p.base) == 0) {
    if (wi < w.size() && w[wi] == p) match_from(pat, pi + 1, w, wi + 1, vars, b, out);
    return;
  }
  // Variable: consumes a nonempty run of factors carrying the map prefix.
  Word run;
  for (std::size_t len = 1; wi + len <= w.size(); ++len) {
    const Factor& next = w[wi + len - 1];
    if (!has_hom_prefix(next, p.homs)) break;
    run.push_back(strip_prefix(next, p.homs.size()));
    Word value = p.exp < 0 ? word_inverse(run) : run;
    const auto it = b.find(p.base);
    if (it != b.end()) {
      if (it->second == value) match_from(pat, pi + 1, w, wi + len, vars, b, out);
    } else {
      b.emplace(p.base, std::move(value));
      match_from(pat, pi + 1, w, wi + len, vars, b, out);
      b.erase(p.base);
    }
  }
}

// Substitutes bindings into a rule side; nullopt when a variable is unbound
// (possible when applying a rule backward).
std::optional<Word> instantiate(const Word& side, const Bindings& b,
                                const std::set<std::string>& vars) {
  Word out;
  for (const Factor& p : side) {
    if (vars.count(p.base) == 0) {
      out.push_back(p);
      continue;
    }
    const auto it = b.find(p.base);
    if (it == b.end()) return std::nullopt;
    Word val = it->second;
    if (p.exp < 0) val = word_inverse(val);
    for (Factor f : val) {
      f.homs.insert(f.homs.begin(), p.homs.begin(), p.homs.end());
      out.push_back(std::move(f));
    }
  }
  return out;
}

Word splice(const Word& w, std::size_t start, std::size_t end, const Word& middle) {
  Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(start));
  next.insert(next.end(), middle.begin(), middle.end());
  next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(end), w.end());
  return free_reduce(std::move(next));
}

}  // namespace

std::vector<Word> rule_neighbors(const Word& w, const Rule& r, bool reverse) {
  const Word& pattern = reverse ? r.rhs : r.lhs;
  const Word& replacement = reverse ? r.lhs : r.rhs;
  std::vector<Word> out;
  std::set<std::string> seen;
  const auto emit = [&](Word next) {
    if (seen.insert(word_str(next)).second) out.push_back(std::move(next));
  };
  if (pattern.empty()) {
    // Pure insertion; only usable when the other side has no variables.
    const auto inst = instantiate(replacement, {}, r.vars);
    if (!inst) return out;
    for (std::size_t pos = 0; pos <= w.size(); ++pos) emit(splice(w, pos, pos, *inst));
    return out;
  }
  for (std::size_t start = 0; start < w.size(); ++start) {
    std::vector<std::pair<std::size_t, Bindings>> matches;
    Bindings scratch;
    match_from(pattern, 0, w, start, r.vars, scratch, matches);
    for (const auto& [end, binding] : matches) {
      const auto inst = instantiate(replacement, binding, r.vars);
      if (inst) emit(splice(w, start, end, *inst));
    }
  }
  return out;
}

Word normalize(const Word& w, const RuleSystem& rules, std::size_t step_cap) {
  Word cur = free_reduce(w);
  for (std::size_t step = 0; step < step_cap; ++step) {
    bool changed = false;
    for (const Rule& r : rules.rules) {
      if (!r.oriented || changed) continue;
      for (std::size_t start = 0; start < cur.size() && !changed; ++start) {
        std::vector<std::pair<std::size_t, Bindings>> matches;
        Bindings scratch;
        match_from(r.lhs, 0, cur, start, r.vars, scratch, matches);
        for (const auto& [end, binding] : matches) {
          const auto inst = instantiate(r.rhs, binding, r.vars);
          if (!inst) continue;
          cur = splice(cur, start, end, *inst);
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  return cur;
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Proven: return "proven";
    case Verdict::Refuted: return "refuted";
    default: return "unknown";
  }
}

namespace {

struct NodeInfo {
  Word word;
  std::string parent;  // empty for the root
  Step via;
};

using Visited = std::unordered_map<std::string, NodeInfo>;

std::vector<Step> path_from_root(const Visited& vis, const std::string& key) {
  std::vector<Step> steps;
  std::string cur = key;
  while (true) {
    const NodeInfo& n = vis.at(cur);
    if (n.parent.empty()) break;
    steps.push_back(n.via);
    cur = n.parent;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Bidirectional search for a rewrite chain src -> dst.
std::optional<std::vector<Step>> meet_search(const Word& src, const Word& dst,
                                             const RuleSystem& rules, const SearchLimits& limits,
                                             std::size_t& explored) {
  const std::string src_key = word_str(src);
  const std::string dst_key = word_str(dst);
  if (src_key == dst_key) return std::vector<Step>{};

  Visited vis_s, vis_d;
  vis_s.emplace(src_key, NodeInfo{src, "", {}});
  vis_d.emplace(dst_key, NodeInfo{dst, "", {}});
  std::deque<std::pair<std::string, std::size_t>> q_s{{src_key, 0}}, q_d{{dst_key, 0}};

  const auto join = [&](const std::string& meet_key) {
    std::vector<Step> steps = path_from_root(vis_s, meet_key);
    const std::vector<Step> d_steps = path_from_root(vis_d, meet_key);
    std::vector<Word> chain{dst};
    for (const Step& s : d_steps) chain.push_back(s.result);
    for (std::size_t i = d_steps.size(); i-- > 0;) {
      steps.push_back(Step{d_steps[i].rule, !d_steps[i].reverse, chain[i]});
    }
    return steps;
  };

  while (!q_s.empty() || !q_d.empty()) {
    const bool use_s = q_d.empty() || (!q_s.empty() && q_s.size() <= q_d.size());
    auto& q = use_s ? q_s : q_d;
    Visited& vis = use_s ? vis_s : vis_d;
    Visited& other = use_s ? vis_d : vis_s;

    const auto [key, depth] = q.front();
    q.pop_front();
    if (depth >= limits.depth) continue;
    if (vis.size() > limits.nodes) {
      q.clear();
      continue;
    }
    const Word cur = vis.at(key).word;
    for (const Rule& r : rules.rules) {
      for (const bool rev : {false, true}) {
        for (Word& nb : rule_neighbors(cur, r, rev)) {
          std::string nk = word_str(nb);
          if (vis.count(nk) != 0) continue;
          vis.emplace(nk, NodeInfo{nb, key, Step{r.name, rev, nb}});
          if (other.count(nk) != 0) {
            explored += vis_s.size() + vis_d.size();
            return join(nk);
          }
          q.emplace_back(std::move(nk), depth + 1);
        }
      }
    }
  }
  explored += vis_s.size() + vis_d.size();
  return std::nullopt;
}

}  // namespace

ProveResult prove_equal(const Word& lhs, const Word& rhs, const RuleSystem& rules,
                        const SearchLimits& limits) {
  ProveResult res;
  const Word l = free_reduce(lhs);
  const Word r = free_reduce(rhs);
  if (word_str(l) == word_str(r)) {
    res.verdict = Verdict::Proven;
    res.proof = Proof{Proof::Mode::Trivial, l, r, {}};
    return res;
  }
  if (rules.rules.empty()) {
    // Free words have unique reduced forms, so inequality is conclusive.
    res.verdict = Verdict::Refuted;
    return res;
  }
  if (auto steps = meet_search(l, r, rules, limits, res.explored)) {
    res.verdict = Verdict::Proven;
    res.proof = Proof{Proof::Mode::Search, l, r, std::move(*steps)};
    return res;
  }
  const Word diff = free_reduce(word_concat(l, word_inverse(r)));
  if (auto steps = meet_search(diff, {}, rules, limits, res.explored)) {
    res.verdict = Verdict::Proven;
    res.proof = Proof{Proof::Mode::Difference, diff, {}, std::move(*steps)};
    return res;
  }
  res.verdict = Verdict::Unknown;
  return res;
}

bool replay(const Proof& p, const RuleSystem& rules) {
  const auto find_rule = [&](const std::string& name) -> const Rule* {
    for (const Rule& r : rules.rules) {
      if (r.name == name) return &r;
    }
    return nullptr;
  };
  const auto reachable = [](const Word& from, const Word& to, const Rule& r, bool rev) {
    const std::string want = word_str(to);
    for (const Word& nb : rule_neighbors(from, r, rev)) {
      if (word_str(nb) == want) return true;
    }
    return false;
  };
  Word cur = free_reduce(p.start);
  for (const Step& s : p.steps) {
    const Rule* r = find_rule(s.rule);
    if (r == nullptr) return false;
    // A step is legal if it is a one-step rewrite in either reading;
    // backward-applied rules may drop variables, so check both.
    if (!reachable(cur, s.result, *r, s.reverse) && !reachable(s.result, cur, *r, !s.reverse)) {
      return false;
    }
    cur = s.result;
  }
  const Word target = p.mode == Proof::Mode::Difference ? Word{} : free_reduce(p.goal);
  return word_str(cur) == word_str(target);
}

namespace {

std::string strip_comment(const std::string& line) {
  std::string s = line;
  if (const auto p = s.find('#'); p != std::string::npos) s = s.substr(0, p);
  if (const auto p = s.find("//"); p != std::string::npos) s = s.substr(0, p);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void script_error(const std::string& label, std::size_t lineno,
                               const std::string& msg) {
  throw ParseError(label + " line " + std::to_string(lineno) + ": " + msg, 0);
}

}  // namespace

bool ScriptReport::all_satisfied() const {
  for (const GoalResult& g : goals) {
    if (!g.satisfied) return false;
  }
  return !goals.empty();
}

ScriptReport verify_script(const std::string& text, const std::string& label,
                           const ScriptOptions& opts) {
  ScriptReport rep;
  rep.label = label;
  SymbolTable table;
  RuleSystem rules;
  SearchLimits limits;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) continue;
    std::istringstream ls(body);
    std::string kw;
    ls >> kw;

    if (kw == "symbols" || kw == "vars" || kw == "homs") {
      std::string name;
      std::size_t count = 0;
      while (ls >> name) {
        ++count;
        if (kw == "symbols") table.atoms.insert(name);
        if (kw == "vars") table.vars.insert(name);
        if (kw == "homs") table.homs.insert(name);
      }
      if (count == 0) script_error(label, lineno, "expected at least one name");
      continue;
    }
    if (kw == "depth" || kw == "budget") {
      std::size_t v = 0;
      if (!(ls >> v) || v == 0) script_error(label, lineno, "expected a positive integer");
      (kw == "depth" ? limits.depth : limits.nodes) = v;
      continue;
    }
    if (kw == "lift") {
      std::string hom, src, as_kw, dst;
      if (!(ls >> hom >> src >> as_kw >> dst) || as_kw != "as") {
        script_error(label, lineno, "usage: lift <map> <rule> as <name>");
      }
      if (table.homs.count(hom) == 0) script_error(label, lineno, "unknown map '" + hom + "'");
      const Rule* found = nullptr;
      for (const Rule& r : rules.rules) {
        if (r.name == src) found = &r;
      }
      if (found == nullptr) script_error(label, lineno, "unknown rule '" + src + "'");
      Rule lifted = *found;
      lifted.name = dst;
      for (Factor& f : lifted.lhs) f.homs.insert(f.homs.begin(), hom);
      for (Factor& f : lifted.rhs) f.homs.insert(f.homs.begin(), hom);
      rules.rules.push_back(std::move(lifted));
      continue;
    }

    const bool is_assume = kw == "assume";
    const bool is_goal = kw == "prove" || kw == "refute" || kw == "probe" || kw == "adopt";
    if (!is_assume && !is_goal) script_error(label, lineno, "unknown directive '" + kw + "'");

    const auto colon = body.find(':');
    if (colon == std::string::npos) script_error(label, lineno, "expected 'name: equation'");
    std::istringstream ns(body.substr(kw.size(), colon - kw.size()));
    std::string name;
    ns >> name;
    std::string extra;
    if (name.empty() || (ns >> extra)) script_error(label, lineno, "expected a single name");
    std::string eq = body.substr(colon + 1);

    bool oriented = false;
    std::size_t sep = eq.find("->");
    std::size_t sep_len = 2;
    if (sep != std::string::npos && is_assume) {
      oriented = true;
    } else {
      sep = eq.find('=');
      sep_len = 1;
    }
    if (sep == std::string::npos) script_error(label, lineno, "expected '=' in equation");

    Word lhs, rhs;
    try {
      lhs = parse_word(eq.substr(0, sep), table);
      rhs = parse_word(eq.substr(sep + sep_len), table);
    } catch (const ParseError& e) {
      script_error(label, lineno, e.what());
    }

    if (is_assume) {
      if (lhs.empty()) script_error(label, lineno, "rule pattern must be nonempty");
      rules.rules.push_back(Rule{name, std::move(lhs), std::move(rhs), oriented, table.vars});
      continue;
    }

    GoalResult g;
    g.name = name;
    g.lhs = word_str(lhs);
    g.rhs = word_str(rhs);
    g.expected = kw == "refute" ? Expectation::Refuted
                 : kw == "probe" ? Expectation::Any
                                 : Expectation::Proven;
    SearchLimits eff = limits;
    if (opts.depth) eff.depth = *opts.depth;
    if (opts.budget) eff.nodes = *opts.budget;
    const ProveResult pr = prove_equal(lhs, rhs, rules, eff);
    g.verdict = pr.verdict;
    g.explored = pr.explored;
    if (pr.proof) {
      g.steps = pr.proof->steps.size();
      g.replay_ok = replay(*pr.proof, rules);
      g.proof = pr.proof;
    }
    switch (g.expected) {
      case Expectation::Proven:
        g.satisfied = g.verdict == Verdict::Proven && g.replay_ok;
        break;
      case Expectation::Refuted:
        g.satisfied = g.verdict == Verdict::Refuted;
        break;
      case Expectation::Any:
        g.satisfied = true;
        break;
    }
    if (kw == "adopt" && g.verdict == Verdict::Proven && g.replay_ok) {
      rules.rules.push_back(Rule{name, lhs, rhs, false, table.vars});
    }
    rep.goals.push_back(std::move(g));
  }
  return rep;
}

ScriptReport verify_script_file(const std::string& path, const ScriptOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read script: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return verify_script(buf.str(), path, opts);
}

}  // namespace twocat::sym
