#pragma once

#include <string>
#include <vector>

#include "treemine/tree_store.hpp"

namespace treemine::detail {

// A parsed tree before label ids are assigned; parents index into names.
struct RawTree {
  std::vector<std::string> names;
  std::vector<NodeId> parents;
};

// Several trees are joined under a virtual root.
DataTree build_tree(std::vector<RawTree> trees);

}  // namespace treemine::detail
