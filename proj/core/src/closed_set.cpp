#include <algorithm>
#include <string>

#include "treemine/embedding_matcher.hpp"
#include "treemine/miner.hpp"

namespace treemine {

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "base") return Algorithm::base;
  if (s == "eager") return Algorithm::eager;
  if (s == "prune") return Algorithm::prune;
  return std::nullopt;
}

std::optional<Target> parse_target(std::string_view s) {
  if (s == "frequent") return Target::frequent;
  if (s == "closed") return Target::closed;
  if (s == "maximal") return Target::maximal;
  return std::nullopt;
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::base: return "base";
    case Algorithm::eager: return "eager";
    case Algorithm::prune: return "prune";
  }
  return "?";
}

const char* to_string(Target t) {
  switch (t) {
    case Target::frequent: return "frequent";
    case Target::closed: return "closed";
    case Target::maximal: return "maximal";
  }
  return "?";
}

namespace {

std::vector<LabelId> label_multiset(const Pattern& p) {
  std::vector<LabelId> key;
  key.reserve(p.size());
  for (const auto& n : p.nodes()) key.push_back(n.label);
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

int ClosedSet::relation(const Pattern& small, const OccurrenceListSet& small_ol, const Pattern& big,
                        const OccurrenceListSet& big_ol) {
  ++embedding_tests_;
  auto images = embeds(small, big);
  if (images.empty()) return 0;
  return l_root_given(images, big_ol) == small_ol.root() ? 2 : 1;
}

bool ClosedSet::check_closed_max_subpattern(const Pattern& p, const OccurrenceListSet& ol, bool is_max) {
  Multiset key = label_multiset(p);
  bool closed = true;
  for (std::size_t k = 0; k < entries_.size();) {
    auto& q = entries_[k];
    if (q.pattern.size() < p.size()) {
      const int r = relation(q.pattern, q.ol, p, ol);
      if (r > 0) q.is_max = false;
      if (r == 2) {
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(k));
        entry_keys_.erase(entry_keys_.begin() + static_cast<std::ptrdiff_t>(k));
        continue;
      }
    } else if (p.size() < q.pattern.size()) {
      const int r = relation(p, ol, q.pattern, q.ol);
      if (r > 0) is_max = false;
      if (r == 2) closed = false;
    }
    ++k;
  }
  if (closed) {
    Multiset bigger;
    for (LabelId l : seen_labels_) {
      bigger = key;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), l), l);
      auto it = seen_.find(bigger);
      if (it == seen_.end()) continue;
      for (const auto& q : it->second) {
        const int r = relation(p, ol, q.pattern, q.ol);
        if (r > 0) is_max = false;
        if (r == 2) closed = false;
        if (!closed) break;
      }
      if (!closed) break;
    }
  }
  if (closed) {
    entries_.push_back({p, ol, is_max});
    entry_keys_.push_back(key);
  }
  remember(p, ol, std::move(key));
  return closed;
}

void ClosedSet::observe(const Pattern& p, const OccurrenceListSet& ol) {
  Multiset key = label_multiset(p);
  evict_covered_by(p, ol, key);
  remember(p, ol, std::move(key));
}

void ClosedSet::evict_covered_by(const Pattern& p, const OccurrenceListSet& ol, const Multiset& key) {
  for (std::size_t k = 0; k < entries_.size();) {
    auto& q = entries_[k];
    if (q.pattern.size() + 1 == p.size() && std::includes(key.begin(), key.end(), entry_keys_[k].begin(),
                                                          entry_keys_[k].end())) {
      const int r = relation(q.pattern, q.ol, p, ol);
      if (r > 0) q.is_max = false;
      if (r == 2) {
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(k));
        entry_keys_.erase(entry_keys_.begin() + static_cast<std::ptrdiff_t>(k));
        continue;
      }
    }
    ++k;
  }
}

void ClosedSet::remember(const Pattern& p, const OccurrenceListSet& ol, Multiset key) {
  for (LabelId l : key) seen_labels_.insert(l);
  seen_[std::move(key)].push_back({p, ol, false});
}

void sort_patterns(std::vector<MinedPattern>& patterns, const LabelTable& labels) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) keys.emplace_back(encode(patterns[i].pattern, labels), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    const auto sa = patterns[a.second].pattern.size();
    const auto sb = patterns[b.second].pattern.size();
    return sa != sb ? sa < sb : a.first < b.first;
  });
  std::vector<MinedPattern> out;
  out.reserve(patterns.size());
  for (const auto& k : keys) out.push_back(std::move(patterns[k.second]));
  patterns = std::move(out);
}

}  // namespace treemine
