#include "treemine/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

namespace treemine {

namespace {

// Largest tree the depth and fanout bounds allow, saturating.
std::size_t capacity(std::size_t depth, std::size_t fanout) {
  constexpr std::size_t kCap = static_cast<std::size_t>(1) << 62;
  std::size_t total = 0, level = 1;
  for (std::size_t d = 0; d <= depth; ++d) {
    total = std::min(kCap, total + level);
    if (total >= kCap) return kCap;
    level = fanout == 0 ? 0 : std::min(kCap, level * fanout);
    if (level == 0) break;
  }
  return total;
}

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

constexpr std::size_t kSchemaOrdinals = 64;

class Generator {
 public:
  explicit Generator(const GenProfile& g) : g_(g), rng_(g.seed) {
    std::vector<double> w(g.label_count);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), g.zipf_skew);
    zipf_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    fanout_ = std::uniform_int_distribution<std::size_t>(
        0, std::min<std::size_t>(g.max_fanout, static_cast<std::size_t>(std::lround(2 * g.record_fanout))));
    // The schema has its own stream so it depends on the seed only.
    std::mt19937_64 schema_rng(g.seed ^ 0x9e3779b97f4a7c15ULL);
    schema_labels_.resize(g.label_count * kSchemaOrdinals);
    for (auto& s : schema_labels_) s = zipf_(schema_rng);
    schema_fanout_.resize(g.label_count);
    for (auto& f : schema_fanout_) f = fanout_(schema_rng);
  }

  std::string run() {
    const std::size_t n = g_.node_count;
    labels_.reserve(n);
    depth_.reserve(n);
    parent_.reserve(n);
    children_.resize(n);
    add_node(n, zipf_(rng_));

    std::bernoulli_distribution regular(g_.regularity);
    std::deque<std::size_t> queue{0};
    while (labels_.size() < n && !queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      if (depth_[v] >= g_.max_depth) continue;
      const bool follow = regular(rng_);
      std::size_t k = v == 0 ? g_.max_fanout : follow ? schema_fanout_[labels_[v]] : fanout_(rng_);
      k = std::min({k, g_.max_fanout, n - labels_.size()});
      for (std::size_t i = 0; i < k; ++i) queue.push_back(add_node(v, pick_label(v, follow)));
    }
    if (labels_.size() < n) fill(regular);
    return emit();
  }

 private:
  std::size_t add_node(std::size_t parent, std::size_t label) {
    const std::size_t id = labels_.size();
    labels_.push_back(label);
    parent_.push_back(parent);
    depth_.push_back(parent == g_.node_count ? 0 : depth_[parent] + 1);
    if (parent != g_.node_count) children_[parent].push_back(id);
    return id;
  }

  // Feasibility guarantees an open node exists until the count is reached.
  void fill(std::bernoulli_distribution& regular) {
    std::vector<std::size_t> open;
    for (std::size_t v = 0; v < labels_.size(); ++v)
      if (depth_[v] < g_.max_depth && children_[v].size() < g_.max_fanout) open.push_back(v);
    std::bernoulli_distribution deep(g_.depth_bias);
    while (labels_.size() < g_.node_count) {
      std::size_t slot = open.size() - 1;
      if (!deep(rng_)) slot = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng_);
      const std::size_t parent = open[slot];
      const std::size_t child = add_node(parent, pick_label(parent, regular(rng_)));
      if (children_[parent].size() >= g_.max_fanout) {
        open[slot] = open.back();
        open.pop_back();
      }
      if (depth_[child] < g_.max_depth && g_.max_fanout > 0) open.push_back(child);
    }
  }

  std::size_t pick_label(std::size_t parent, bool follow) {
    if (g_.recursion_rate > 0 && std::bernoulli_distribution(g_.recursion_rate)(rng_)) {
      std::size_t hops = std::uniform_int_distribution<std::size_t>(0, depth_[parent])(rng_);
      std::size_t a = parent;
      while (hops-- > 0) a = parent_[a];
      return labels_[a];
    }
    if (follow) {
      const std::size_t ordinal = children_[parent].size() % kSchemaOrdinals;
      return schema_labels_[labels_[parent] * kSchemaOrdinals + ordinal];
    }
    return zipf_(rng_);
  }

  std::string emit() const {
    const auto names = generated_label_names(g_.label_count);
    std::ostringstream out;
    // Iterative preorder; a marker of n means "close the current node".
    const std::size_t n = labels_.size();
    std::vector<std::size_t> stack{0};
    bool first = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (!first) out << ' ';
      first = false;
      if (v == n) {
        out << "-1";
        continue;
      }
      out << names[labels_[v]];
      if (v != 0) stack.push_back(n);
      for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) stack.push_back(*it);
    }
    out << '\n';
    return out.str();
  }

  const GenProfile& g_;
  std::mt19937_64 rng_;
  std::discrete_distribution<std::size_t> zipf_;
  std::uniform_int_distribution<std::size_t> fanout_;
  std::vector<std::size_t> schema_labels_, schema_fanout_;
  std::vector<std::size_t> labels_, depth_, parent_;
  std::vector<std::vector<std::size_t>> children_;
};

}  // namespace

void validate(const GenProfile& g) {
  if (g.node_count == 0) throw ConfigError("node count must be positive");
  if (g.label_count == 0) throw ConfigError("label count must be positive");
  if (!(g.zipf_skew >= 0.0) || !std::isfinite(g.zipf_skew)) throw ConfigError("zipf skew must be >= 0");
  if (!valid_probability(g.recursion_rate)) throw ConfigError("recursion rate must be in [0, 1]");
  if (!valid_probability(g.regularity)) throw ConfigError("regularity must be in [0, 1]");
  if (!valid_probability(g.depth_bias)) throw ConfigError("depth bias must be in [0, 1]");
  if (!(g.record_fanout >= 0.0) || !std::isfinite(g.record_fanout)) throw ConfigError("record fanout must be >= 0");
  if (g.node_count > capacity(g.max_depth, g.max_fanout))
    throw ConfigError("node count " + std::to_string(g.node_count) + " exceeds what depth " +
                      std::to_string(g.max_depth) + " and fanout " + std::to_string(g.max_fanout) + " allow");
}

std::string generate(const GenProfile& profile) {
  validate(profile);
  return Generator(profile).run();
}

std::vector<std::string> generated_label_names(std::size_t label_count) {
  std::vector<std::string> names;
  names.reserve(label_count);
  if (label_count <= 26) {
    for (std::size_t i = 0; i < label_count; ++i) names.emplace_back(1, static_cast<char>('A' + i));
    return names;
  }
  const std::size_t width = std::to_string(label_count - 1).size();
  for (std::size_t i = 0; i < label_count; ++i) {
    std::string digits = std::to_string(i);
    names.push_back("L" + std::string(width - digits.size(), '0') + digits);
  }
  return names;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    std::vector<Preset> v;
    {
      GenProfile g;
      g.seed = 7;
      g.node_count = 5000;
      g.max_depth = 8;
      g.max_fanout = 400;
      g.label_count = 16;
      g.zipf_skew = 0.6;
      g.recursion_rate = 0.0;
      g.regularity = 1.0;
      g.record_fanout = 1.5;
      g.depth_bias = 0.5;
      v.push_back({"xmark", "wide root over schema-regular auction-style records", g, 60});
    }
    {
      GenProfile g;
      g.seed = 11;
      g.node_count = 6000;
      g.max_depth = 3;
      g.max_fanout = 400;
      g.label_count = 24;
      g.zipf_skew = 1.1;
      g.recursion_rate = 0.0;
      g.regularity = 0.8;
      g.depth_bias = 0.2;
      v.push_back({"dblp", "flat, bushy bibliography-style document", g, 40});
    }
    {
      GenProfile g;
      g.seed = 3;
      g.node_count = 60;
      g.max_depth = 6;
      g.max_fanout = 4;
      g.label_count = 4;
      g.zipf_skew = 0.5;
      g.recursion_rate = 0.2;
      g.depth_bias = 0.5;
      v.push_back({"small", "tiny random tree for smoke tests", g, 3});
    }
    return v;
  }();
  return all;
}

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace treemine
