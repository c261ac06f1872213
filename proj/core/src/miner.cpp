#include "treemine/miner.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "treemine/embedding_matcher.hpp"

namespace treemine {

SeedClasses mine_f1_f2(const DataTree& tree, const MiningConfig& cfg) {
  SeedClasses seed;
  const std::size_t labels = tree.label_count();
  for (std::size_t a = 0; a < labels; ++a)
    if (tree.inverted_list(static_cast<LabelId>(a)).size() >= std::max<std::size_t>(cfg.minsup, 1))
      seed.f1.push_back(static_cast<LabelId>(a));
  if (cfg.max_size && *cfg.max_size < 2) return seed;

  for (LabelId a : seed.f1) {
    EquivalenceClass cls;
    cls.prefix = Pattern(a);
    cls.prefix_support = tree.inverted_list(a).size();
    const auto root_ol = OccurrenceListSet::single(tree, a);
    for (std::size_t b = 0; b < labels; ++b) {
      // A non-root node may carry a label that is rare on its own.
      if (tree.inverted_list(static_cast<LabelId>(b)).empty()) continue;
      Pattern q = cls.prefix.extended(0, static_cast<LabelId>(b));
      auto ol = compute_emb_ol(tree, q);
      ++seed.computed;
      if (ol.root_support() < cfg.minsup || ol.root_support() == 0) continue;
      ClassElement el;
      el.pattern = std::move(q);
      el.ol = std::move(ol);
      el.canonical = true;
      cls.elements.push_back(std::move(el));
    }
    if (!cls.elements.empty()) seed.classes.push_back(std::move(cls));
  }
  return seed;
}

namespace {

enum class Mode { enumerate, eager, prune };

class Miner {
 public:
  Miner(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks, Mode mode)
      : tree_(tree), cfg_(cfg), hooks_(hooks), mode_(mode) {}

  MiningResult run() {
    const auto start = std::chrono::steady_clock::now();
    SeedClasses seed = mine_f1_f2(tree_, cfg_);
    stats_.computed += seed.computed;
    for (auto& cls : seed.classes) {
      for (const auto& el : cls.elements) {
        ++stats_.frequent;
        if (hooks_ && hooks_->on_class_element) hooks_->on_class_element(cls, el);
      }
      hold(cls, +1);
      process(cls);
      hold(cls, -1);
    }

    MiningResult out;
    out.patterns = mode_ == Mode::enumerate ? std::move(frequent_) : closed_.take();
    // Pruned subtrees never reach the evidence index, so an entry whose only
    // one-node covers were pruned survives; confirm the survivors directly.
    if (pruning_active() && stats_.pruned_subtrees > 0)
      std::erase_if(out.patterns, [&](const MinedPattern& p) {
        return has_one_node_cover(tree_, p.pattern, p.ol, cfg_.minsup, stats_.cover_checks, &pruned_roots_);
      });
    sort_patterns(out.patterns, tree_.label_table());
    stats_.embedding_tests += closed_.embedding_tests();
    if (mode_ != Mode::enumerate) {
      stats_.closed = out.patterns.size();
      stats_.maximal = static_cast<std::size_t>(
          std::count_if(out.patterns.begin(), out.patterns.end(), [](const auto& p) { return p.is_max; }));
    }
    stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.stats = stats_;
    return out;
  }

 private:
  using Ols = std::vector<std::optional<OccurrenceListSet>>;

  void hold(const EquivalenceClass& cls, int sign) {
    std::size_t bytes = 0;
    for (const auto& el : cls.elements) bytes += el.ol.memory_bytes();
    if (sign > 0) {
      live_bytes_ += bytes;
      stats_.peak_list_bytes = std::max(stats_.peak_list_bytes, live_bytes_);
    } else {
      live_bytes_ -= bytes;
    }
  }

  bool can_grow(const Pattern& p) const { return !cfg_.max_size || p.size() < *cfg_.max_size; }
  // Pruning a surrogate's subtree would also drop patterns at the size cap,
  // which are closed relative to the capped universe; so with a cap the
  // surrogates are still detected but never acted on.
  bool pruning_active() const { return mode_ == Mode::prune && !cfg_.max_size; }

  OccurrenceListSet compute(const Pattern& q, const OccurrenceListSet& left, const OccurrenceListSet& right) {
    ++stats_.computed;
    return compute_emb_ol(tree_, q, left, right);
  }

  void process(EquivalenceClass& cls) {
    const std::size_t n = cls.elements.size();
    for (std::size_t x = 0; x < n; ++x) {
      ClassElement& ex = cls.elements[x];
      if (!ex.canonical) continue;
      if (mode_ == Mode::enumerate) frequent_.push_back({ex.pattern, ex.ol, false});
      if (pruning_active() && ex.confirmed_cousin_surrogate) {
        closed_.observe(ex.pattern, ex.ol);
        ++stats_.pruned_subtrees;
        pruned_roots_.insert(ex.pattern);
        continue;
      }

      EquivalenceClass child;
      child.prefix = ex.pattern;
      child.prefix_support = ex.support();
      Ols child_ols(n), cousin_ols(n);
      if (can_grow(ex.pattern)) {
        // Child joins attach below the rightmost leaf, cousin joins higher up,
        // so this order keeps the new class sorted.
        for (std::size_t z = 0; z < n; ++z) expand(cls, x, z, SurrogateKind::child, child, child_ols);
        for (std::size_t z = 0; z < n; ++z) expand(cls, x, z, SurrogateKind::cousin, child, cousin_ols);
        if (mode_ == Mode::prune && cfg_.aggressive_prune)
          for (std::size_t z = x; z < n; ++z)
            if (cls.elements[z].attach() == ex.attach()) disqualify(cls, x, z, child_ols, cousin_ols);
      }

      const bool has_canonical =
          std::any_of(child.elements.begin(), child.elements.end(), [](const auto& e) { return e.canonical; });
      if (!has_canonical) ++stats_.locally_maximal;
      if (mode_ != Mode::enumerate) {
        if (ex.locally_closed) {
          ++stats_.locally_closed;
          closed_.check_closed_max_subpattern(ex.pattern, ex.ol, child.elements.empty());
        } else {
          closed_.observe(ex.pattern, ex.ol);
        }
      }

      if (mode_ == Mode::prune && cfg_.aggressive_prune && can_grow(ex.pattern) && verify_candidates(cls, x, cousin_ols) &&
          pruning_active()) {
        ++stats_.pruned_subtrees;
        pruned_roots_.insert(ex.pattern);
        continue;
      }
      hold(child, +1);
      process(child);
      hold(child, -1);
    }
  }

  void expand(EquivalenceClass& cls, std::size_t x, std::size_t z, SurrogateKind kind, EquivalenceClass& child,
              Ols& ols) {
    ClassElement& ex = cls.elements[x];
    ClassElement& ez = cls.elements[z];
    auto q = kind == SurrogateKind::child ? child_join(ex.pattern, ez.pattern) : cousin_join(ex.pattern, ez.pattern);
    if (!q) return;
    OccurrenceListSet ol = compute(*q, ex.ol, ez.ol);
    if (mode_ == Mode::prune) ols[z] = ol;
    if (ol.root_support() < cfg_.minsup || ol.root_support() == 0) return;

    if (mode_ != Mode::enumerate) {
      if (ol.root() == ex.ol.root()) ex.locally_closed = false;
      if (ol.root() == ez.ol.root()) ez.locally_closed = false;
    }
    ClassElement el;
    el.canonical = canonical_extension_check(*q);
    el.pattern = std::move(*q);
    el.ol = std::move(ol);
    if (el.canonical) ++stats_.frequent;
    if (hooks_ && hooks_->on_class_element) hooks_->on_class_element(child, el);
    child.elements.push_back(std::move(el));
    if (mode_ == Mode::prune && child.elements.back().canonical)
      find_surrogate_candidate(cls, x, z, kind, child.elements.back());
  }

  // Candidate test: the later element is occurrence equivalent to its
  // expansion by the earlier one.
  void find_surrogate_candidate(EquivalenceClass& cls, std::size_t x, std::size_t y, SurrogateKind kind,
                                const ClassElement& q) {
    if (x >= y) return;
    // Only a surrogate attached strictly deeper than y is safe to cut on.
    if (!cfg_.aggressive_prune && (kind == SurrogateKind::child || cls.elements[x].attach() <= cls.elements[y].attach()))
      return;
    ClassElement& ey = cls.elements[y];
    if (ey.confirmed_cousin_surrogate || !(q.ol.root() == ey.ol.root())) return;
    const int inserted = static_cast<int>(cls.prefix.size());
    auto eq = occurrence_equivalent(tree_, ey.pattern, ey.ol, q.pattern, q.ol, inserted, cfg_.tuple_budget);
    if (!eq || !*eq) return;
    ++stats_.surrogate_candidates;
    if (kind == SurrogateKind::child) {
      ey.child_surrogate_candidates.push_back(x);
      return;
    }
    ey.cousin_surrogate_candidates.push_back(x);
    // No element from y on, y itself included since it cousin-joins with
    // itself, sits at or below the surrogate's position, so the follower
    // joins need no checking.
    const int i = cls.elements[x].attach();
    bool shortcut = true;
    for (std::size_t z = y; z < cls.elements.size() && shortcut; ++z)
      if (cls.elements[z].attach() >= i) shortcut = false;
    if (!shortcut) return;
    ey.confirmed_cousin_surrogate = true;
    ++stats_.surrogates_confirmed;
    report(cls, x, y, kind, q.pattern, true);
  }

  void report(const EquivalenceClass& cls, std::size_t x, std::size_t y, SurrogateKind kind, const Pattern& witness,
              bool shortcut) {
    if (!hooks_ || !hooks_->on_surrogate) return;
    hooks_->on_surrogate({cls.elements[x].pattern, cls.elements[y].pattern, witness, kind, shortcut});
  }

  const std::set<OccurrenceTuple>* projection(const Pattern& p, const OccurrenceListSet& ol,
                                              const std::vector<int>& positions,
                                              std::optional<std::set<OccurrenceTuple>>& slot) {
    slot = project_occurrences(tree_, p, ol, positions, cfg_.filter_budget);
    return slot ? &*slot : nullptr;
  }

  // Necessary conditions on candidates of elements between x and z, run
  // once x has been joined with z (both at the same position).
  void disqualify(EquivalenceClass& cls, std::size_t x, std::size_t z, const Ols& child_ols, const Ols& cousin_ols) {
    ClassElement& ex = cls.elements[x];
    ClassElement& ez = cls.elements[z];
    const int n = static_cast<int>(cls.prefix.size());
    std::vector<int> prefix_pos(n), x_pos(n + 1);
    for (int k = 0; k < n; ++k) prefix_pos[k] = x_pos[k] = k;
    x_pos[n] = n;

    for (std::size_t y = x + 1; y < z; ++y) {
      ClassElement& ey = cls.elements[y];
      auto& child_c = ey.child_surrogate_candidates;
      auto& cousin_c = ey.cousin_surrogate_candidates;
      const bool child_cand = std::find(child_c.begin(), child_c.end(), x) != child_c.end();
      const bool cousin_cand = std::find(cousin_c.begin(), cousin_c.end(), x) != cousin_c.end();
      if (!child_cand && !cousin_cand) continue;

      if (child_cand && child_ols[y] && child_ols[z] && cousin_ols[z]) {
        std::optional<std::set<OccurrenceTuple>> a, b, s, t1, t2;
        const auto* py = projection(ey.pattern, ey.ol, prefix_pos, a);
        const auto* pz = projection(ez.pattern, ez.ol, prefix_pos, b);
        if (py && pz && *py == *pz) {
          const auto* sy = projection(*child_join(ex.pattern, ey.pattern), *child_ols[y], x_pos, s);
          const auto* c1 = projection(*child_join(ex.pattern, ez.pattern), *child_ols[z], x_pos, t1);
          const auto* c2 = projection(*cousin_join(ex.pattern, ez.pattern), *cousin_ols[z], x_pos, t2);
          if (sy && c1 && c2 && !std::includes(c1->begin(), c1->end(), sy->begin(), sy->end()) &&
              !std::includes(c2->begin(), c2->end(), sy->begin(), sy->end())) {
            std::erase(child_c, x);
            ++stats_.candidates_disqualified;
          }
        }
      }

      if (cousin_cand && cousin_ols[y] && child_ols[z]) {
        const Pattern zx = *child_join(ez.pattern, ex.pattern);
        const OccurrenceListSet zx_ol = compute(zx, ez.ol, ex.ol);
        std::vector<int> x_in_zx(prefix_pos);
        x_in_zx.push_back(n + 1);
        std::optional<std::set<OccurrenceTuple>> s, t1, t2;
        const auto* sy = projection(*cousin_join(ex.pattern, ey.pattern), *cousin_ols[y], x_pos, s);
        const auto* c1 = projection(*child_join(ex.pattern, ez.pattern), *child_ols[z], x_pos, t1);
        const auto* c2 = projection(zx, zx_ol, x_in_zx, t2);
        auto meets = [](const std::set<OccurrenceTuple>& u, const std::set<OccurrenceTuple>& v) {
          return std::any_of(u.begin(), u.end(), [&](const auto& e) { return v.count(e) > 0; });
        };
        if (sy && c1 && c2 && (meets(*sy, *c1) || meets(*sy, *c2))) {
          std::erase(cousin_c, x);
          ++stats_.candidates_disqualified;
        }
      }
    }
  }

  // Follower check for each surviving candidate x of element y: every join
  // of y with an element z from y on must be occurrence equivalent to the
  // matching join of x's expansions of y and z. True when some x passes.
  bool verify_candidates(EquivalenceClass& cls, std::size_t y, const Ols& cousin_ols) {
    ClassElement& ey = cls.elements[y];
    const int inserted = static_cast<int>(cls.prefix.size());
    const std::size_t n = cls.elements.size();

    auto equivalent = [&](const Pattern& p, const OccurrenceListSet& ol_p, const Pattern& w,
                          const OccurrenceListSet& ol_w) {
      auto r = occurrence_equivalent(tree_, p, ol_p, w, ol_w, inserted, cfg_.tuple_budget);
      return r && *r;
    };

    for (std::size_t x : ey.child_surrogate_candidates) {
      const ClassElement& ex = cls.elements[x];
      const Pattern a = *child_join(ex.pattern, ey.pattern);
      const OccurrenceListSet a_ol = compute(a, ex.ol, ey.ol);
      bool holds = true;
      for (std::size_t z = y; z < n && holds; ++z) {
        const ClassElement& ez = cls.elements[z];
        if (ez.attach() != ey.attach()) continue;
        const Pattern p = *cousin_join(ey.pattern, ez.pattern);
        const OccurrenceListSet& p_ol = *cousin_ols[z];
        if (p_ol.root_support() == 0) continue;
        const Pattern b1 = *child_join(ex.pattern, ez.pattern);
        const Pattern w1 = *cousin_join(a, b1);
        const OccurrenceListSet w1_ol = compute(w1, a_ol, compute(b1, ex.ol, ez.ol));
        if (equivalent(p, p_ol, w1, w1_ol)) continue;
        const Pattern b2 = *cousin_join(ex.pattern, ez.pattern);
        const Pattern w2 = *cousin_join(a, b2);
        const OccurrenceListSet w2_ol = compute(w2, a_ol, compute(b2, ex.ol, ez.ol));
        holds = equivalent(p, p_ol, w2, w2_ol);
      }
      if (holds) {
        ++stats_.surrogates_confirmed;
        report(cls, x, y, SurrogateKind::child, a, false);
        return true;
      }
    }

    for (std::size_t x : ey.cousin_surrogate_candidates) {
      const ClassElement& ex = cls.elements[x];
      const Pattern a = *cousin_join(ex.pattern, ey.pattern);
      const OccurrenceListSet a_ol = compute(a, ex.ol, ey.ol);
      bool holds = true;
      for (std::size_t z = y; z < n && holds; ++z) {
        const ClassElement& ez = cls.elements[z];
        const Pattern p = *cousin_join(ey.pattern, ez.pattern);
        const OccurrenceListSet& p_ol = *cousin_ols[z];
        if (p_ol.root_support() == 0) continue;
        const Pattern b = *cousin_join(ex.pattern, ez.pattern);
        const Pattern w = *cousin_join(a, b);
        const OccurrenceListSet w_ol = compute(w, a_ol, compute(b, ex.ol, ez.ol));
        holds = equivalent(p, p_ol, w, w_ol);
      }
      if (holds) {
        ++stats_.surrogates_confirmed;
        report(cls, x, y, SurrogateKind::cousin, a, false);
        return true;
      }
    }
    return false;
  }

  const DataTree& tree_;
  const MiningConfig& cfg_;
  const MiningHooks* hooks_;
  Mode mode_;
  MiningStats stats_;
  ClosedSet closed_;
  std::vector<MinedPattern> frequent_;
  std::unordered_set<Pattern, PatternHash> pruned_roots_;
  std::size_t live_bytes_ = 0;
};

}  // namespace

MiningResult mine_frequent(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks) {
  return Miner(tree, cfg, hooks, Mode::enumerate).run();
}

MiningResult mine_eager(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks) {
  return Miner(tree, cfg, hooks, Mode::eager).run();
}

MiningResult mine_prune(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks) {
  return Miner(tree, cfg, hooks, Mode::prune).run();
}

MiningResult mine_base(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks) {
  MiningResult all = mine_frequent(tree, cfg, hooks);
  auto& f = all.patterns;
  const auto start = std::chrono::steady_clock::now();
  MiningResult out;
  out.stats = all.stats;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool closed = true;
    bool maximal = true;
    for (std::size_t j = i + 1; j < f.size() && (closed || maximal); ++j) {
      if (f[j].pattern.size() <= f[i].pattern.size()) continue;
      ++out.stats.embedding_tests;
      auto images = embeds(f[i].pattern, f[j].pattern);
      if (images.empty()) continue;
      maximal = false;
      if (l_root_given(images, f[j].ol) == f[i].ol.root()) closed = false;
    }
    if (closed) out.patterns.push_back({f[i].pattern, f[i].ol, maximal});
  }
  out.stats.closed = out.patterns.size();
  out.stats.maximal = static_cast<std::size_t>(
      std::count_if(out.patterns.begin(), out.patterns.end(), [](const auto& p) { return p.is_max; }));
  out.stats.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

MiningResult mine(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks) {
  if (cfg.target == Target::frequent) return mine_frequent(tree, cfg, hooks);
  MiningResult r;
  switch (cfg.algorithm) {
    case Algorithm::base: r = mine_base(tree, cfg, hooks); break;
    case Algorithm::eager: r = mine_eager(tree, cfg, hooks); break;
    case Algorithm::prune: r = mine_prune(tree, cfg, hooks); break;
  }
  if (cfg.target == Target::maximal)
    std::erase_if(r.patterns, [](const MinedPattern& p) { return !p.is_max; });
  return r;
}

}  // namespace treemine
