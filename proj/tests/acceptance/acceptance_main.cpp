// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "test_support.hpp"
#include "treemine/datagen.hpp"
#include "treemine/embedding_matcher.hpp"
#include "treemine/miner.hpp"
#include "treemine/occlist.hpp"
#include "treemine/occurrence_engine.hpp"
#include "treemine/oracle.hpp"

namespace {

using namespace treemine;
using testing::Keyed;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr Algorithm kAlgorithms[] = {Algorithm::base, Algorithm::eager, Algorithm::prune};
constexpr std::size_t kTrees = 500;
constexpr std::size_t kCap = 5;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const Verdict& v) {
  fmt::print("criterion {}: {} {}\n", id, v.pass ? "PASS" : "FAIL", v.detail);
  std::fflush(stdout);
  failures += !v.pass;
}

struct Case {
  DataTree tree;
  std::size_t minsup;
};

std::vector<Case> criterion_one_cases() {
  std::mt19937_64 rng(20240601);
  std::vector<Case> cases;
  for (std::size_t i = 0; i < kTrees; ++i) {
    const std::size_t nodes = testing::uniform(rng, 20, 60);
    const std::size_t labels = testing::uniform(rng, 3, 6);
    const std::size_t minsup = testing::uniform(rng, 2, 3);
    cases.push_back({testing::random_tree(rng, nodes, labels), minsup});
  }
  return cases;
}

// Accumulated over the criterion-one runs for criteria 3, 4 and 6.
struct Observations {
  std::size_t class_elements = 0;
  std::vector<std::string> antimonotone_violations;
  std::size_t covered_checks = 0;
  std::vector<std::string> uncovered;
  std::size_t surrogates = 0;
  std::size_t surrogate_patterns_checked = 0;
  std::vector<std::string> closed_under_surrogate;
};

// The pattern and each of its frequent canonical rightmost-path expansions
// must be non-closed with no size horizon.
void check_surrogate_target(const oracle::NaiveTree& nt, std::size_t minsup, const Pattern& target,
                            Observations& obs) {
  const auto& labels = nt.tree().label_table();
  std::vector<Pattern> todo{target};
  for (int at : target.rightmost_path()) {
    for (LabelId l = 0; l < static_cast<LabelId>(labels.size()); ++l) {
      Pattern q = target.extended(at, l);
      if (canonical_check(q) && oracle::naive_support(nt, q) >= minsup) todo.push_back(std::move(q));
    }
  }
  for (const auto& p : todo) {
    ++obs.surrogate_patterns_checked;
    if (oracle::is_closed_unbounded(nt, minsup, p))
      obs.closed_under_surrogate.push_back(encode(target, labels) + " via " + encode(p, labels));
  }
}

Verdict criterion_one(const std::vector<Case>& cases, Observations& obs) {
  std::size_t mismatches = 0, patterns = 0;
  double seconds = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [tree, minsup] = cases[i];
    const auto t0 = Clock::now();
    const auto truth = oracle::run_oracle(tree, minsup, kCap);
    Keyed want_closed, want_max;
    for (auto k : truth.closed) want_closed[encode(truth.frequent[k].pattern, tree.label_table())] = truth.frequent[k].support;
    for (auto k : truth.maximal) want_max[encode(truth.frequent[k].pattern, tree.label_table())] = truth.frequent[k].support;
    patterns += want_closed.size();

    std::vector<Pattern> surrogate_targets;
    MiningHooks hooks;
    hooks.on_class_element = [&](const EquivalenceClass& cls, const ClassElement& el) {
      ++obs.class_elements;
      if (el.support() > cls.prefix_support || !(el.pattern.prefix() == cls.prefix))
        obs.antimonotone_violations.push_back(encode(el.pattern, tree.label_table()));
    };
    hooks.on_surrogate = [&](const SurrogateEvent& e) { surrogate_targets.push_back(e.target); };

    std::vector<MinedPattern> closed_out;
    for (Algorithm a : kAlgorithms) {
      for (Target target : {Target::closed, Target::maximal}) {
        MiningConfig cfg;
        cfg.algorithm = a;
        cfg.target = target;
        cfg.minsup = minsup;
        cfg.max_size = kCap;
        auto r = mine(tree, cfg, &hooks);
        const Keyed got = testing::keyed(r, tree.label_table());
        if (got != (target == Target::closed ? want_closed : want_max)) {
          ++mismatches;
          if (first_bad.empty()) first_bad = fmt::format(" first=case{}:{}:{}", i, to_string(a), to_string(target));
        }
        if (a == Algorithm::prune && target == Target::closed) closed_out = std::move(r.patterns);
      }
    }
    // The same-position surrogates are only confirmed under the aggressive
    // rule; under a cap it prunes nothing, so its output must match too.
    {
      MiningConfig cfg;
      cfg.minsup = minsup;
      cfg.max_size = kCap;
      cfg.aggressive_prune = true;
      if (testing::keyed(mine(tree, cfg, &hooks), tree.label_table()) != want_closed) {
        ++mismatches;
        if (first_bad.empty()) first_bad = fmt::format(" first=case{}:prune-aggressive", i);
      }
    }
    seconds += seconds_since(t0);

    // Criterion 4 on the prune output.
    for (const auto& f : truth.frequent) {
      if (f.pattern.size() < 2) continue;
      ++obs.covered_checks;
      bool covered = false;
      for (const auto& q : closed_out) {
        const auto images = embeds(f.pattern, q.pattern);
        if (images.empty()) continue;
        if (materialize(l_root_given(images, q.ol), tree) == f.lists[0]) {
          covered = true;
          break;
        }
      }
      if (!covered) obs.uncovered.push_back(fmt::format("case{}:{}", i, encode(f.pattern, tree.label_table())));
    }

    // Criterion 6; each target is checked once per tree.
    if (!surrogate_targets.empty()) {
      const oracle::NaiveTree nt(tree);
      std::set<std::string> done;
      for (const auto& target : surrogate_targets) {
        if (!done.insert(encode(target, tree.label_table())).second) continue;
        ++obs.surrogates;
        check_surrogate_target(nt, minsup, target, obs);
      }
    }
  }
  const bool pass = mismatches == 0 && seconds < 300;
  return {pass, fmt::format("trees={} closed_patterns={} mismatches={} seconds={:.1f}{}", cases.size(), patterns,
                            mismatches, seconds, first_bad)};
}

Verdict criterion_two(const std::vector<Case>& cases) {
  std::mt19937_64 rng(77);
  std::size_t checked = 0, tuples = 0, bad = 0;
  for (std::size_t i = 0; i < cases.size(); i += 2) {
    const DataTree& tree = cases[i].tree;
    const oracle::NaiveTree nt(tree);
    std::vector<Pattern> pats;
    for (int k = 0; k < 4; ++k)
      pats.push_back(testing::random_pattern(rng, testing::uniform(rng, 1, 5), tree.label_count()));
    // Frequent patterns have many tuples, so mix some in.
    const auto freq = oracle::enumerate_frequent_naive(nt, cases[i].minsup, kCap);
    for (int k = 0; k < 4 && !freq.empty(); ++k) pats.push_back(freq[testing::uniform(rng, 0, freq.size() - 1)].pattern);
    for (const auto& p : pats) {
      std::set<OccurrenceTuple> got;
      twig_join_homomorphic(tree, p, full_candidates(tree, p), [&](const OccurrenceTuple& x) {
        if (sibling_filter(tree, p, x)) got.insert(x);
        return true;
      });
      const auto want = oracle::naive_embeddings(nt, p);
      ++checked;
      tuples += want.size();
      if (got != std::set<OccurrenceTuple>(want.begin(), want.end())) ++bad;
    }
  }
  return {bad == 0, fmt::format("patterns={} tuples={} mismatches={}", checked, tuples, bad)};
}

Verdict criterion_five() {
  std::string detail;
  bool pass = true, halved = false;
  for (const auto& preset : presets()) {
    if (preset.profile.node_count < 5000) continue;
    const DataTree tree = load_forest(generate(preset.profile));
    std::size_t computed[2] = {0, 0}, frequent = 0;
    double secs[2] = {0, 0};
    Keyed outputs[2];
    for (int k = 0; k < 2; ++k) {
      MiningConfig cfg;
      cfg.algorithm = k == 0 ? Algorithm::eager : Algorithm::prune;
      cfg.minsup = preset.minsup;
      const auto t0 = Clock::now();
      const auto r = mine(tree, cfg);
      secs[k] = seconds_since(t0);
      computed[k] = r.stats.computed;
      frequent = std::max(frequent, r.stats.frequent);
      outputs[k] = testing::keyed(r, tree.label_table());
    }
    const double ratio = computed[1] ? static_cast<double>(computed[0]) / static_cast<double>(computed[1]) : 0;
    const bool ok = frequent >= 200 && computed[1] <= computed[0] && secs[0] < 120 && secs[1] < 120 &&
                    outputs[0] == outputs[1];
    pass = pass && ok;
    halved = halved || ratio >= 2.0;
    detail += fmt::format(" [{} nodes={} minsup={} frequent={} eager={} ({:.1f}s) prune={} ({:.1f}s) ratio={:.2f}{}]",
                          preset.name, tree.size(), preset.minsup, frequent, computed[0], secs[0], computed[1],
                          secs[1], ratio, outputs[0] == outputs[1] ? "" : " outputs differ");
  }
  if (detail.empty()) return {false, "no preset with at least 5000 nodes"};
  return {pass && halved, detail.substr(1)};
}

Verdict criterion_seven() {
  const DataTree tree = load_forest("A B C -1 -1 B C -1 D -1 -1\n");
  const Keyed want = {{"B C -1", 2}};
  std::size_t runs = 0, bad = 0;
  for (Algorithm a : kAlgorithms)
    for (Target t : {Target::closed, Target::maximal})
      for (auto cap : {std::optional<std::size_t>{}, std::optional<std::size_t>{kCap}}) {
        ++runs;
        bad += testing::mined(tree, a, t, 2, cap) != want;
      }
  return {bad == 0, fmt::format("runs={} mismatches={}", runs, bad)};
}

Verdict criterion_eight() {
  std::mt19937_64 rng(8);
  std::size_t bad = 0;
  for (int round = 0; round < 10000; ++round) {
    const std::size_t size = testing::uniform(rng, 0, 1000);
    const double da = std::uniform_real_distribution<double>(0, 1)(rng);
    const double db = std::uniform_real_distribution<double>(0, 1)(rng);
    OccurrenceBitmap a(0, size), b(0, size);
    std::set<std::size_t> sa, sb;
    std::bernoulli_distribution pa(da), pb(db);
    for (std::size_t i = 0; i < size; ++i) {
      if (pa(rng)) a.set(i), sa.insert(i);
      if (pb(rng)) b.set(i), sb.insert(i);
    }
    std::vector<std::size_t> i_want, u_want;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(i_want));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(u_want));
    const auto i_got = a & b, u_got = a | b;
    if (i_got.positions() != i_want || u_got.positions() != u_want || i_got.count() != i_want.size() ||
        u_got.count() != u_want.size() || a.count() != sa.size() || b.count() != sb.size())
      ++bad;
  }
  return {bad == 0, fmt::format("pairs=10000 mismatches={}", bad)};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const auto cases = criterion_one_cases();
  Observations obs;
  report(1, criterion_one(cases, obs));
  report(2, criterion_two(cases));
  report(3, {obs.antimonotone_violations.empty() && obs.class_elements > 0,
             fmt::format("class_elements={} violations={}", obs.class_elements, obs.antimonotone_violations.size())});
  report(4, {obs.uncovered.empty() && obs.covered_checks > 0,
             fmt::format("frequent_patterns={} uncovered={}{}", obs.covered_checks, obs.uncovered.size(),
                         obs.uncovered.empty() ? "" : " first=" + obs.uncovered.front())});
  report(5, criterion_five());
  report(6, {obs.closed_under_surrogate.empty() && obs.surrogates > 0,
             fmt::format("surrogates={} patterns_checked={} closed_found={}{}", obs.surrogates,
                         obs.surrogate_patterns_checked, obs.closed_under_surrogate.size(),
                         obs.closed_under_surrogate.empty() ? "" : " first=" + obs.closed_under_surrogate.front())});
  report(7, criterion_seven());
  report(8, criterion_eight());
  fmt::print("total seconds={:.1f} failures={}\n", seconds_since(t0), failures);
  return failures == 0 ? 0 : 1;
}
