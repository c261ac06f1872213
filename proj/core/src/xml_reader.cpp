#include <cctype>

#include "tree_builder.hpp"
#include "treemine/tree_store.hpp"

namespace treemine {

// Element names only. Attributes, text, comments, processing instructions,
// CDATA and the doctype are skipped.
DataTree load_xml(std::string_view text) {
  detail::RawTree tree;
  std::vector<NodeId> open;
  std::vector<detail::RawTree> trees;
  std::size_t line = 1;
  std::size_t i = 0;

  auto advance_to = [&](std::string_view marker) {
    std::size_t at = text.find(marker, i);
    if (at == std::string_view::npos) throw ParseError(line, "unterminated markup");
    for (std::size_t k = i; k < at; ++k) line += text[k] == '\n';
    i = at + marker.size();
  };
  auto is_name_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c != '<') {
      line += c == '\n';
      ++i;
      continue;
    }
    if (text.substr(i, 4) == "<!--") {
      i += 4;
      advance_to("-->");
    } else if (text.substr(i, 9) == "<![CDATA[") {
      i += 9;
      advance_to("]]>");
    } else if (text.substr(i, 2) == "<?") {
      i += 2;
      advance_to("?>");
    } else if (text.substr(i, 2) == "<!") {
      // Doctype, possibly with an internal subset.
      int depth = 0;
      for (++i; i < text.size(); ++i) {
        line += text[i] == '\n';
        if (text[i] == '[') ++depth;
        if (text[i] == ']') --depth;
        if (text[i] == '>' && depth <= 0) break;
      }
      ++i;
    } else if (text.substr(i, 2) == "</") {
      i += 2;
      std::size_t start = i;
      while (i < text.size() && is_name_char(text[i])) ++i;
      std::string_view name = text.substr(start, i - start);
      if (open.empty() || tree.names[open.back()] != name)
        throw ParseError(line, "mismatched closing tag </" + std::string(name) + ">");
      open.pop_back();
      advance_to(">");
      if (open.empty()) {
        trees.push_back(std::move(tree));
        tree = {};
      }
    } else {
      ++i;
      std::size_t start = i;
      while (i < text.size() && is_name_char(text[i])) ++i;
      if (i == start) throw ParseError(line, "malformed tag");
      std::string name(text.substr(start, i - start));
      // Skip attributes, honouring quoted values that may contain '>'.
      char quote = 0;
      while (i < text.size() && (quote || text[i] != '>')) {
        if (quote) {
          if (text[i] == quote) quote = 0;
        } else if (text[i] == '"' || text[i] == '\'') {
          quote = text[i];
        }
        line += text[i] == '\n';
        ++i;
      }
      if (i >= text.size()) throw ParseError(line, "unterminated tag <" + name + ">");
      const bool self_closing = text[i - 1] == '/';
      ++i;
      tree.parents.push_back(open.empty() ? kNoNode : open.back());
      tree.names.push_back(std::move(name));
      if (self_closing) {
        if (open.empty()) {
          trees.push_back(std::move(tree));
          tree = {};
        }
      } else {
        open.push_back(static_cast<NodeId>(tree.names.size() - 1));
      }
    }
  }
  if (!open.empty()) throw ParseError(line, "unclosed element <" + tree.names[open.back()] + ">");
  if (trees.empty()) throw ParseError(line, "no elements in input");
  return detail::build_tree(std::move(trees));
}

}  // namespace treemine
