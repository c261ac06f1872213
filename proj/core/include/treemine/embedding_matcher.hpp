#pragma once

#include <vector>

#include "treemine/occlist.hpp"
#include "treemine/occurrence_engine.hpp"
#include "treemine/pattern.hpp"

namespace treemine {

// Positions of q that some embedding p -> q maps root(p) to, ascending.
using RootImageSet = std::vector<int>;

RootImageSet embeds(const Pattern& p, const Pattern& q);

inline bool is_embedded_subpattern(const Pattern& p, const Pattern& q) { return !embeds(p, q).empty(); }

// L_root(p|q): union of q's lists at the root images of p in q.
// Throws std::invalid_argument when p does not embed in q.
OccurrenceBitmap l_root_given(const Pattern& p, const Pattern& q, const OccurrenceListSet& ol_q);
OccurrenceBitmap l_root_given(const RootImageSet& images, const OccurrenceListSet& ol_q);

}  // namespace treemine
