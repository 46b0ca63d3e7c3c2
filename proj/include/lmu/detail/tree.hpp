#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lmu/rational.hpp"

namespace lmu::detail {

/// Immutable node shared by the formula and term ASTs. `free` caches the
/// sorted free variable names of the subtree.
template <class Kind>
struct TreeNode {
  Kind kind;
  std::string name;
  Rational coefficient;
  std::shared_ptr<const TreeNode> lhs;
  std::shared_ptr<const TreeNode> rhs;
  std::vector<std::string> free;
  std::size_t hash = 0;
};

inline std::vector<std::string> merge_names(const std::vector<std::string>& a,
                                            const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<std::string> without_name(const std::vector<std::string>& a, const std::string& name) {
  std::vector<std::string> out;
  out.reserve(a.size());
  for (const auto& n : a) {
    if (n != name) out.push_back(n);
  }
  return out;
}

inline std::size_t mix_hash(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

template <class Kind>
bool same_tree(const TreeNode<Kind>* a, const TreeNode<Kind>* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->name != b->name || a->coefficient != b->coefficient) {
    return false;
  }
  return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
}

}  // namespace lmu::detail
