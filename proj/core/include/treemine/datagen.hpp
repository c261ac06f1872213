#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treemine {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GenProfile {
  std::uint64_t seed = 1;
  std::size_t node_count = 100;
  std::size_t max_depth = 8;    // root has depth 0
  std::size_t max_fanout = 5;
  std::size_t label_count = 5;
  double zipf_skew = 1.0;       // 0 gives uniform labels
  double recursion_rate = 0.1;  // chance a child repeats an ancestor label
  // Chance a node follows the schema for its label: a fixed child count and
  // a fixed label per child ordinal. High values give record-like data.
  double regularity = 0.0;
  // Mean child count of non-root nodes; the root takes up to max_fanout.
  double record_fanout = 2.0;
  // Once the breadth-first expansion dies out, remaining nodes hang under
  // the newest open node with this chance, else under a random one.
  double depth_bias = 0.5;
};

void validate(const GenProfile& profile);

// One tree in the line format, newline terminated.
std::string generate(const GenProfile& profile);

// Label names used by generate, ordered like their ids.
std::vector<std::string> generated_label_names(std::size_t label_count);

struct Preset {
  std::string name;
  std::string description;
  GenProfile profile;
  std::size_t minsup;  // tuned so the preset yields a few hundred frequent patterns
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(std::string_view name);

}  // namespace treemine
