#include <unordered_map>

#include "pathsdd/compiler.hpp"

namespace pathsdd {

namespace {

struct Key {
  EdgeLabel var;
  NodeRef high;
  NodeRef low;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = k.var;
    h = h * 0x9E3779B97F4A7C15ULL ^ k.high;
    h = h * 0x9E3779B97F4A7C15ULL ^ k.low;
    return h;
  }
};

}  // namespace

Circuit reduce(const Circuit& c) {
  std::vector<Node> arena{{0, kFalse, kFalse}, {0, kTrue, kTrue}};
  std::unordered_map<Key, NodeRef, KeyHash> unique;
  std::vector<NodeRef> remap(c.size(), kFalse);
  remap[kTrue] = kTrue;

  std::vector<bool> reach(c.size(), false);
  reach[c.root()] = true;
  for (std::size_t i = c.size(); i-- > 2;) {
    if (!reach[i]) continue;
    reach[c.node(static_cast<NodeRef>(i)).high] = true;
    reach[c.node(static_cast<NodeRef>(i)).low] = true;
  }

  for (NodeRef r = 2; r < c.size(); ++r) {
    if (!reach[r]) continue;
    const Node& n = c.node(r);
    const NodeRef high = remap[n.high];
    const NodeRef low = remap[n.low];
    if (high == low) {
      remap[r] = high;
      continue;
    }
    Key key{c.var_of(r), high, low};
    auto [it, inserted] = unique.try_emplace(key, static_cast<NodeRef>(arena.size()));
    if (inserted) arena.push_back({n.level, high, low});
    remap[r] = it->second;
  }
  std::vector<EdgeLabel> order(c.var_of_level().begin(), c.var_of_level().end());
  return Circuit::from_arena(c.k(), std::move(order), std::move(arena), remap[c.root()]);
}

}  // namespace pathsdd
