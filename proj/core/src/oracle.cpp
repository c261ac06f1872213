#include "treemine/oracle.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>

namespace treemine::oracle {

NaiveTree::NaiveTree(const DataTree& tree)
    : tree_(tree), n_(tree.size()), anc_(n_ * n_, 0), by_label_(tree.label_count()) {
  for (std::size_t v = 0; v < n_; ++v) {
    for (NodeId a = tree.parent(static_cast<NodeId>(v)); a != kNoNode; a = tree.parent(a)) anc_[a * n_ + v] = 1;
    const LabelId l = tree.label(static_cast<NodeId>(v));
    if (l != kVirtualRootLabel) by_label_[l].push_back(static_cast<NodeId>(v));
  }
}

namespace {

using Code = std::vector<int>;
constexpr int kUp = INT_MAX;

std::vector<std::vector<int>> child_lists(const std::vector<LabelId>& labels, const std::vector<int>& parents) {
  std::vector<std::vector<int>> kids(labels.size());
  for (std::size_t k = 0; k < parents.size(); ++k)
    if (parents[k] >= 0) kids[parents[k]].push_back(static_cast<int>(k));
  return kids;
}

Code code_of(int k, const std::vector<LabelId>& labels, const std::vector<std::vector<int>>& kids) {
  std::vector<Code> parts;
  for (int c : kids[k]) parts.push_back(code_of(c, labels, kids));
  std::sort(parts.begin(), parts.end());
  Code out{labels[k]};
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  out.push_back(kUp);
  return out;
}

Pattern pattern_of(const Code& code) {
  std::vector<PatternNode> nodes;
  std::vector<int> open;
  for (int sym : code) {
    if (sym == kUp) {
      open.pop_back();
      continue;
    }
    nodes.push_back({sym, open.empty() ? kNoParent : open.back()});
    open.push_back(static_cast<int>(nodes.size()) - 1);
  }
  return Pattern(std::move(nodes));
}

// Canonical code of an arbitrary rooted tree given as parent array.
Code canonical_code(const std::vector<LabelId>& labels, const std::vector<int>& parents) {
  int root = static_cast<int>(std::find(parents.begin(), parents.end(), -1) - parents.begin());
  return code_of(root, labels, child_lists(labels, parents));
}

Code canonical_code(const Pattern& p) {
  std::vector<LabelId> labels;
  std::vector<int> parents;
  for (const auto& n : p.nodes()) {
    labels.push_back(n.label);
    parents.push_back(n.parent);
  }
  return canonical_code(labels, parents);
}

// Plain backtracking. pin[k] >= 0 forces position k onto that node.
class Search {
 public:
  Search(const NaiveTree& t, const Pattern& p, bool embedded) : t_(t), p_(p), embedded_(embedded), img_(p.size()) {}

  void run(const std::vector<NodeId>& pin, const std::function<bool(const std::vector<NodeId>&)>& sink) {
    pin_ = &pin;
    sink_ = &sink;
    step(0);
  }

 private:
  bool step(std::size_t k) {
    if (k == p_.size()) return (*sink_)(img_);
    const auto& pool = t_.nodes_with(p_.label(static_cast<int>(k)));
    for (NodeId v : pool) {
      if ((*pin_)[k] >= 0 && (*pin_)[k] != v) continue;
      if (!allowed(k, v)) continue;
      img_[k] = v;
      if (!step(k + 1)) return false;
    }
    return true;
  }

  bool allowed(std::size_t k, NodeId v) const {
    const int up = p_.parent(static_cast<int>(k));
    if (up != kNoParent && !t_.is_ancestor(img_[up], v)) return false;
    if (!embedded_) return true;
    for (std::size_t s = 0; s < k; ++s) {
      if (img_[s] == v) return false;
      if (up != kNoParent && p_.parent(static_cast<int>(s)) == up &&
          (t_.is_ancestor(img_[s], v) || t_.is_ancestor(v, img_[s])))
        return false;
    }
    return true;
  }

  const NaiveTree& t_;
  const Pattern& p_;
  bool embedded_;
  std::vector<NodeId> img_;
  const std::vector<NodeId>* pin_ = nullptr;
  const std::function<bool(const std::vector<NodeId>&)>* sink_ = nullptr;
};

std::vector<std::vector<NodeId>> all_tuples(const NaiveTree& t, const Pattern& p, bool embedded) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> pin(p.size(), -1);
  Search(t, p, embedded).run(pin, [&](const std::vector<NodeId>& img) {
    out.push_back(img);
    return true;
  });
  return out;
}

bool exists_with(const NaiveTree& t, const Pattern& p, std::size_t pos, NodeId v) {
  std::vector<NodeId> pin(p.size(), -1);
  pin[pos] = v;
  bool found = false;
  Search(t, p, true).run(pin, [&](const std::vector<NodeId>&) {
    found = true;
    return false;
  });
  return found;
}

NodeList naive_root_list(const NaiveTree& t, const Pattern& p) {
  NodeList out;
  for (NodeId v : t.nodes_with(p.label(0)))
    if (exists_with(t, p, 0, v)) out.push_back(v);
  return out;
}

}  // namespace

Pattern canonical_form(const Pattern& p) { return p.empty() ? p : pattern_of(canonical_code(p)); }

std::vector<std::vector<NodeId>> naive_embeddings(const NaiveTree& t, const Pattern& p) {
  return all_tuples(t, p, true);
}

std::vector<std::vector<NodeId>> naive_homomorphisms(const NaiveTree& t, const Pattern& p) {
  return all_tuples(t, p, false);
}

std::vector<NodeList> naive_occurrence_lists(const NaiveTree& t, const Pattern& p) {
  std::vector<NodeList> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    for (NodeId v : t.nodes_with(p.label(static_cast<int>(k))))
      if (exists_with(t, p, k, v)) out[k].push_back(v);
  return out;
}

std::size_t naive_support(const NaiveTree& t, const Pattern& p) { return naive_root_list(t, p).size(); }

std::vector<int> naive_root_images(const Pattern& p, const Pattern& q) {
  const int np = static_cast<int>(p.size());
  const int nq = static_cast<int>(q.size());
  std::set<int> roots;
  std::vector<int> img(np, -1);
  std::vector<char> used(nq, 0);
  std::function<bool(int)> step = [&](int k) -> bool {
    if (k == np) return true;
    for (int v = 0; v < nq; ++v) {
      if (used[v] || q.label(v) != p.label(k)) continue;
      const int up = p.parent(k);
      if (up != kNoParent && !q.is_ancestor(img[up], v)) continue;
      bool ok = true;
      for (int s = 1; s < k && ok; ++s)
        if (p.parent(s) == up && (q.is_ancestor(img[s], v) || q.is_ancestor(v, img[s]))) ok = false;
      if (!ok) continue;
      img[k] = v;
      used[v] = 1;
      const bool done = step(k + 1);
      used[v] = 0;
      if (done) return true;
    }
    return false;
  };
  if (np == 0 || np > nq) return {};
  for (int r = 0; r < nq; ++r) {
    if (q.label(r) != p.label(0)) continue;
    img[0] = r;
    used[r] = 1;
    if (step(1)) roots.insert(r);
    used[r] = 0;
  }
  return {roots.begin(), roots.end()};
}

std::vector<FrequentPattern> enumerate_frequent_naive(const NaiveTree& t, std::size_t minsup, std::size_t max_size) {
  std::vector<FrequentPattern> out;
  if (max_size == 0) return out;
  const std::size_t labels = t.tree().label_count();

  std::vector<std::size_t> frontier;
  for (std::size_t l = 0; l < labels; ++l) {
    const auto& nodes = t.nodes_with(static_cast<LabelId>(l));
    if (nodes.size() < minsup || nodes.empty()) continue;
    out.push_back({Pattern(static_cast<LabelId>(l)), {nodes}, nodes.size()});
    frontier.push_back(out.size() - 1);
  }

  for (std::size_t size = 2; size <= max_size && !frontier.empty(); ++size) {
    std::set<Code> seen;
    std::vector<std::size_t> next;
    for (std::size_t f : frontier) {
      const Pattern base = out[f].pattern;
      for (int a : base.rightmost_path()) {
        for (std::size_t l = 0; l < labels; ++l) {
          const Code code = canonical_code(base.extended(a, static_cast<LabelId>(l)));
          if (!seen.insert(code).second) continue;
          Pattern cand = pattern_of(code);
          NodeList roots = naive_root_list(t, cand);
          if (roots.size() < minsup || roots.empty()) continue;
          FrequentPattern fp{cand, naive_occurrence_lists(t, cand), roots.size()};
          out.push_back(std::move(fp));
          next.push_back(out.size() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

bool labels_within(const Pattern& p, const Pattern& q) {
  std::map<LabelId, int> need;
  for (const auto& n : p.nodes()) ++need[n.label];
  for (const auto& n : q.nodes()) --need[n.label];
  return std::all_of(need.begin(), need.end(), [](const auto& e) { return e.second <= 0; });
}

NodeList union_at(const std::vector<NodeList>& lists, const std::vector<int>& positions) {
  std::set<NodeId> u;
  for (int r : positions) u.insert(lists[r].begin(), lists[r].end());
  return {u.begin(), u.end()};
}

}  // namespace

void filter_closed_naive(OracleResult& result) {
  result.closed.clear();
  result.maximal.clear();
  const auto& f = result.frequent;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& p = f[i];
    if (p.pattern.size() < 2) continue;
    bool closed = true;
    bool maximal = true;
    for (std::size_t j = 0; j < f.size() && (closed || maximal); ++j) {
      const auto& q = f[j];
      if (q.pattern.size() <= p.pattern.size() || !labels_within(p.pattern, q.pattern)) continue;
      auto roots = naive_root_images(p.pattern, q.pattern);
      if (roots.empty()) continue;
      maximal = false;
      if (union_at(q.lists, roots) == p.lists[0]) closed = false;
    }
    if (closed) result.closed.push_back(i);
    if (maximal) result.maximal.push_back(i);
  }
}

OracleResult run_oracle(const DataTree& tree, std::size_t minsup, std::size_t max_size) {
  NaiveTree t(tree);
  OracleResult r;
  r.frequent = enumerate_frequent_naive(t, minsup, max_size);
  filter_closed_naive(r);
  return r;
}

std::vector<Pattern> one_node_extensions(const Pattern& p, const std::vector<LabelId>& labels) {
  std::vector<LabelId> lab;
  std::vector<int> par;
  for (const auto& n : p.nodes()) {
    lab.push_back(n.label);
    par.push_back(n.parent);
  }
  const int n = static_cast<int>(p.size());
  auto kids = child_lists(lab, par);
  std::set<Code> seen;
  std::vector<Pattern> out;
  auto add = [&](std::vector<LabelId> l2, std::vector<int> p2) {
    Code c = canonical_code(l2, p2);
    if (seen.insert(c).second) out.push_back(pattern_of(c));
  };
  for (LabelId l : labels) {
    {
      auto l2 = lab;
      auto p2 = par;
      l2.push_back(l);
      p2.push_back(-1);
      p2[0] = n;
      add(l2, p2);
    }
    for (int a = 0; a < n; ++a) {
      const auto& ch = kids[a];
      for (unsigned mask = 0; mask < (1u << ch.size()); ++mask) {
        auto l2 = lab;
        auto p2 = par;
        l2.push_back(l);
        p2.push_back(a);
        for (std::size_t b = 0; b < ch.size(); ++b)
          if (mask & (1u << b)) p2[ch[b]] = n;
        add(l2, p2);
      }
    }
  }
  return out;
}

bool is_closed_unbounded(const NaiveTree& t, std::size_t minsup, const Pattern& p) {
  const NodeList roots = naive_root_list(t, p);
  std::vector<LabelId> labels;
  for (std::size_t l = 0; l < t.tree().label_count(); ++l) labels.push_back(static_cast<LabelId>(l));
  for (const Pattern& q : one_node_extensions(p, labels)) {
    if (naive_root_list(t, q).size() < minsup) continue;
    auto images = naive_root_images(p, q);
    if (images.empty()) continue;
    if (union_at(naive_occurrence_lists(t, q), images) == roots) return false;
  }
  return true;
}

}  // namespace treemine::oracle
