#include "trp/xml_tree.hpp"

#include <cstring>

namespace trp {

int rank_of(Characteristic c) {
  switch (c) {
    case Characteristic::NoChildren: return 0;
    case Characteristic::TwoChildren: return 2;
    default: return 1;
  }
}

std::string characteristic_bits(Characteristic c) {
  auto v = static_cast<unsigned>(c);
  return {static_cast<char>('0' + ((v >> 1) & 1)), static_cast<char>('0' + (v & 1))};
}

std::uint32_t Alphabet::intern(const std::string& name, Characteristic ch) {
  std::string key = name;
  key.push_back('\0');
  key.push_back(static_cast<char>('0' + static_cast<int>(ch)));
  auto [it, fresh] = index_.try_emplace(key, size());
  if (fresh) symbols_.push_back({name, ch});
  return it->second;
}

std::int32_t BinaryTree::first_child(std::int32_t v) const {
  auto ch = symbol(v).ch;
  return (static_cast<unsigned>(ch) & 2) ? nodes[v].kid[0] : -1;
}

std::int32_t BinaryTree::next_sibling(std::int32_t v) const {
  switch (symbol(v).ch) {
    case Characteristic::TwoChildren: return nodes[v].kid[1];
    case Characteristic::NoLeftChild: return nodes[v].kid[0];
    default: return -1;
  }
}

bool same_structure(const BinaryTree& a, const BinaryTree& b) {
  if (a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  std::vector<std::pair<std::int32_t, std::int32_t>> work{{0, 0}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!(a.symbol(x) == b.symbol(y))) return false;
    for (int i = 0; i < a.rank(x); ++i) work.emplace_back(a.child(x, i), b.child(y, i));
  }
  return true;
}

void TreeBuilder::start_element(std::string_view name) {
  std::int32_t u = static_cast<std::int32_t>(tree_.nodes.size());
  tree_.nodes.emplace_back();
  names_.emplace_back(name);
  has_kid_.push_back(0);
  bool top = index_stack_.empty();
  if (top && ++top_ == 1) {
    tree_.nodes[u].label = tree_.alphabet.intern(names_[u], Characteristic::NoRightChild);
  } else {
    int i = top ? top_ : ++index_stack_.back();
    std::int32_t v = hierarchy_.back();
    tree_.nodes[u].parent = v;
    tree_.nodes[u].index = (i == 1) ? 0 : 1;
    has_kid_[v] |= (i == 1) ? 1 : 2;
  }
  index_stack_.push_back(0);
  hierarchy_.push_back(u);
}

void TreeBuilder::label_chain(int count) {
  for (int k = 0; k < count; ++k) {
    std::int32_t v = hierarchy_.back();
    bool l = has_kid_[v] & 1, r = has_kid_[v] & 2;
    auto ch = static_cast<Characteristic>((l ? 2 : 0) | (r ? 1 : 0));
    tree_.nodes[v].label = tree_.alphabet.intern(names_[v], ch);
    hierarchy_.pop_back();
  }
}

void TreeBuilder::end_element() {
  if (index_stack_.empty()) throw std::runtime_error("unbalanced end element");
  label_chain(index_stack_.back());
  index_stack_.pop_back();
}

BinaryTree TreeBuilder::finish() {
  if (top_ == 0 || !index_stack_.empty()) throw std::runtime_error("unterminated document");
  if (tree_.nodes.size() < 2) throw std::runtime_error("root element without children is not supported");
  if (top_ > 1) {
    // Top-level siblings relabel the root; drop symbols left unused.
    label_chain(top_);
    std::vector<std::uint8_t> used(tree_.alphabet.size(), 0);
    for (const auto& n : tree_.nodes) used[n.label] = 1;
    Alphabet kept;
    std::vector<std::uint32_t> id(used.size());
    for (std::uint32_t s = 0; s < used.size(); ++s)
      if (used[s]) id[s] = kept.intern(tree_.alphabet.at(s).name, tree_.alphabet.at(s).ch);
    for (auto& n : tree_.nodes) n.label = id[n.label];
    tree_.alphabet = std::move(kept);
  }
  // Child slots: a node's single rank-1 child lives in slot 0 whatever its role.
  for (std::size_t u = 1; u < tree_.nodes.size(); ++u) {
    auto& n = tree_.nodes[u];
    auto& p = tree_.nodes[n.parent];
    int slot = (n.index == 1 && (has_kid_[n.parent] & 1)) ? 1 : 0;
    n.index = slot;
    p.kid[slot] = static_cast<std::int32_t>(u);
  }
  return std::move(tree_);
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::size_t skip_past(std::string_view s, std::size_t at, std::size_t from, std::string_view marker, const char* what) {
  auto end = s.find(marker, from);
  if (end == std::string_view::npos) throw ParseError(std::string("unterminated ") + what, at);
  return end + marker.size();
}

}  // namespace

BinaryTree parse_xml(std::string_view s) {
  TreeBuilder b;
  std::vector<std::string_view> open;
  std::size_t pos = 0;
  while (true) {
    pos = s.find('<', pos);
    if (pos == std::string_view::npos) break;
    std::size_t at = pos;
    if (s.compare(pos, 4, "<!--") == 0) {
      pos = skip_past(s, pos, pos + 4, "-->", "comment");
    } else if (s.compare(pos, 9, "<![CDATA[") == 0) {
      pos = skip_past(s, pos, pos + 9, "]]>", "CDATA section");
    } else if (s.compare(pos, 2, "<?") == 0) {
      pos = skip_past(s, pos, pos + 2, "?>", "processing instruction");
    } else if (s.compare(pos, 2, "<!") == 0) {
      int depth = 0;
      std::size_t i = pos + 2;
      for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"' || c == '\'') {
          i = s.find(c, i + 1);
          if (i == std::string_view::npos) throw ParseError("unterminated literal in declaration", at);
        } else if (c == '[') {
          ++depth;
        } else if (c == ']') {
          --depth;
        } else if (c == '>' && depth <= 0) {
          break;
        }
      }
      if (i >= s.size()) throw ParseError("unterminated declaration", at);
      pos = i + 1;
    } else if (s.compare(pos, 2, "</") == 0) {
      std::size_t i = pos + 2, start = i;
      while (i < s.size() && !is_space(s[i]) && s[i] != '>') ++i;
      std::string_view name = s.substr(start, i - start);
      while (i < s.size() && is_space(s[i])) ++i;
      if (i >= s.size() || s[i] != '>') throw ParseError("malformed end tag", at);
      if (open.empty() || open.back() != name)
        throw ParseError("mismatched end tag </" + std::string(name) + ">", at);
      open.pop_back();
      b.end_element();
      pos = i + 1;
    } else {
      std::size_t i = pos + 1, start = i;
      while (i < s.size() && !is_space(s[i]) && s[i] != '>' && s[i] != '/') ++i;
      std::string_view name = s.substr(start, i - start);
      if (name.empty()) throw ParseError("empty element name", at);
      bool empty = false;
      while (i < s.size()) {
        char c = s[i];
        if (c == '"' || c == '\'') {
          i = s.find(c, i + 1);
          if (i == std::string_view::npos) throw ParseError("unterminated attribute value", at);
          ++i;
        } else if (c == '>') {
          break;
        } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '>') {
          empty = true;
          ++i;
          break;
        } else {
          ++i;
        }
      }
      if (i >= s.size()) throw ParseError("unterminated start tag", at);
      try {
        b.start_element(name);
        if (empty) b.end_element();
      } catch (const std::runtime_error& e) {
        throw ParseError(e.what(), at);
      }
      if (!empty) open.push_back(name);
      pos = i + 1;
    }
  }
  if (!open.empty()) throw ParseError("unclosed element <" + std::string(open.back()) + ">", s.size());
  try {
    return b.finish();
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what(), s.size());
  }
}

std::string serialize_xml(const BinaryTree& t) {
  std::string out;
  if (t.size() == 0) return out;
  // Each frame is an element whose end tag is still pending.
  std::vector<std::int32_t> open;
  std::int32_t v = 0;
  while (true) {
    const auto& name = t.symbol(v).name;
    std::int32_t fc = t.first_child(v);
    if (fc >= 0) {
      out += '<';
      out += name;
      out += '>';
      open.push_back(v);
      v = fc;
      continue;
    }
    out += '<';
    out += name;
    out += "/>";
    // Climb until a next sibling exists.
    std::int32_t cur = v;
    while (true) {
      std::int32_t ns = t.next_sibling(cur);
      if (ns >= 0) {
        v = ns;
        break;
      }
      if (open.empty()) return out;
      cur = open.back();
      open.pop_back();
      out += "</";
      out += t.symbol(cur).name;
      out += '>';
    }
  }
}

std::int32_t next_in_postorder(const BinaryTree& t, std::int32_t v) {
  auto walk_down = [&](std::int32_t u) {
    while (t.rank(u) > 0) u = t.child(u, 0);
    return u;
  };
  if (t.nodes[v].parent < 0) return walk_down(v);
  std::int32_t p = t.nodes[v].parent;
  int i = t.nodes[v].index + 1;
  if (i < t.rank(p)) return walk_down(t.child(p, i));
  return p;
}

std::vector<std::int32_t> postorder(const BinaryTree& t) {
  std::vector<std::int32_t> out;
  if (t.size() == 0) return out;
  out.reserve(t.size());
  std::int32_t v = 0;
  do {
    v = next_in_postorder(t, v);
    out.push_back(v);
  } while (v != 0);
  return out;
}

}  // namespace trp
