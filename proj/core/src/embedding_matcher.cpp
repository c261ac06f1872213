#include "treemine/embedding_matcher.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace treemine {

namespace {

struct Shape {
  std::vector<int> end;     // one past the subtree, depth-first positions
  std::vector<int> height;  // leaves have height 0
  std::vector<std::vector<int>> children;
};

Shape shape_of(const Pattern& p) {
  const int n = static_cast<int>(p.size());
  Shape s{std::vector<int>(n), std::vector<int>(n, 0), std::vector<std::vector<int>>(n)};
  for (int k = n - 1; k >= 0; --k) {
    if (s.end[k] == 0) s.end[k] = k + 1;
    const int up = p.parent(k);
    if (up != kNoParent) {
      s.end[up] = std::max(s.end[up], s.end[k]);
      s.height[up] = std::max(s.height[up], s.height[k] + 1);
    }
  }
  for (int k = 1; k < n; ++k) s.children[p.parent(k)].push_back(k);
  return s;
}

// fits(a, v): the subtree of p at a embeds into the subtree of q at v with a
// sent to v. Children of a go to pairwise off-path proper descendants of v.
class Matcher {
 public:
  Matcher(const Pattern& p, const Pattern& q)
      : p_(p), q_(q), sp_(shape_of(p)), sq_(shape_of(q)), memo_(p.size() * q.size(), kUnknown) {}

  bool fits(int a, int v) {
    auto& m = memo_[a * q_.size() + v];
    if (m != kUnknown) return m == kYes;
    m = compute(a, v) ? kYes : kNo;
    return m == kYes;
  }

 private:
  static constexpr std::int8_t kUnknown = -1, kNo = 0, kYes = 1;

  bool compute(int a, int v) {
    if (p_.label(a) != q_.label(v)) return false;
    if (sp_.height[a] > sq_.height[v]) return false;
    if (sp_.end[a] - a > sq_.end[v] - v) return false;
    const auto& kids = sp_.children[a];
    if (kids.empty()) return true;

    std::vector<std::vector<int>> options(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (int w = v + 1; w < sq_.end[v]; ++w)
        if (fits(kids[i], w)) options[i].push_back(w);
      if (options[i].empty()) return false;
    }
    std::vector<std::size_t> order(kids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return options[x].size() < options[y].size(); });
    std::vector<int> chosen;
    return assign(options, order, 0, chosen);
  }

  bool off_path(int x, int y) const {
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    return y >= sq_.end[x];
  }

  bool assign(const std::vector<std::vector<int>>& options, const std::vector<std::size_t>& order, std::size_t i,
              std::vector<int>& chosen) {
    if (i == order.size()) return true;
    for (int w : options[order[i]]) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](int c) { return off_path(c, w); });
      if (!ok) continue;
      chosen.push_back(w);
      if (assign(options, order, i + 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  const Pattern& p_;
  const Pattern& q_;
  Shape sp_;
  Shape sq_;
  std::vector<std::int8_t> memo_;
};

bool labels_contained(const Pattern& p, const Pattern& q) {
  std::vector<LabelId> a, b;
  for (const auto& n : p.nodes()) a.push_back(n.label);
  for (const auto& n : q.nodes()) b.push_back(n.label);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

RootImageSet embeds(const Pattern& p, const Pattern& q) {
  RootImageSet out;
  if (p.empty() || p.size() > q.size() || !labels_contained(p, q)) return out;
  Matcher m(p, q);
  for (int v = 0; v < static_cast<int>(q.size()); ++v)
    if (m.fits(0, v)) out.push_back(v);
  return out;
}

OccurrenceBitmap l_root_given(const RootImageSet& images, const OccurrenceListSet& ol_q) {
  if (images.empty()) throw std::invalid_argument("pattern is not an embedded subpattern");
  OccurrenceBitmap out = ol_q[images.front()];
  for (std::size_t i = 1; i < images.size(); ++i) out |= ol_q[images[i]];
  return out;
}

OccurrenceBitmap l_root_given(const Pattern& p, const Pattern& q, const OccurrenceListSet& ol_q) {
  return l_root_given(embeds(p, q), ol_q);
}

}  // namespace treemine
