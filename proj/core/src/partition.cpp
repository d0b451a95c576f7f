#include "embopt/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace embopt {

namespace {

BigInt power(unsigned k, std::uint32_t e) {
  return boost::multiprecision::pow(BigInt(k), e);
}

}  // namespace

ScaledRational ScaledRational::canonical(BigInt num, std::uint32_t exp, unsigned k) {
  if (num == 0) return ScaledRational{BigInt(0), 0};
  const BigInt kk(k);
  while (exp > 0 && num % kk == 0) {
    num /= kk;
    --exp;
  }
  return ScaledRational{std::move(num), exp};
}

double ScaledRational::to_double(unsigned k) const {
  return num.convert_to<double>() / std::pow(static_cast<double>(k), static_cast<double>(exp));
}

int compare_values(const ScaledRational& a, const ScaledRational& b, unsigned k) {
  const BigInt lhs = a.num * power(k, b.exp);
  const BigInt rhs = b.num * power(k, a.exp);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

std::size_t BasePointLedger::count(const BasePointKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.count;
}

const LedgerEntry* BasePointLedger::find(const BasePointKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const LedgerEntry& BasePointLedger::record(const BasePointKey& key,
                                           const EvaluationRecord& evaluation) {
  LedgerEntry& entry = entries_[key];
  if (entry.count == 0 || evaluation.value < entry.best) {
    entry.best = evaluation.value;
    entry.best_record = evaluation;
  }
  ++entry.count;
  return entry;
}

PartitionTree::PartitionTree(BoxSpace space, unsigned k)
    : space_(std::move(space)), k_(k), leaves_(1, DepthGroups(NormOrder{k})) {
  if (k_ < 3 || k_ % 2 == 0) {
    throw std::invalid_argument("PartitionTree: K must be an odd integer >= 3");
  }
  if (!space_.is_symmetric_cube()) {
    throw std::invalid_argument("PartitionTree: Y must be a symmetric cube");
  }
  TreeNode root;
  root.index = 0;
  root.cell.assign(space_.dim(), CellAxis{BigInt(-1), 0});
  finish_node(root);
  nodes_.push_back(std::move(root));
  add_leaf(0);
}

BasePointKey PartitionTree::key_from_cell(NodeId id) const {
  const TreeNode& n = nodes_.at(id);
  BasePointKey key;
  key.reserve(n.cell.size());
  for (const CellAxis& axis : n.cell) {
    key.push_back(ScaledRational::canonical(axis.lo + 1, axis.splits, k_));
  }
  return key;
}

void PartitionTree::finish_node(TreeNode& node) const {
  const std::size_t d = node.cell.size();
  node.key.clear();
  for (const CellAxis& axis : node.cell) {
    node.key.push_back(ScaledRational::canonical(axis.lo + 1, axis.splits, k_));
  }
  std::uint32_t top = 0;
  for (const auto& c : node.key) top = std::max(top, c.exp);
  BigInt sum = 0;
  for (const auto& c : node.key) sum += c.num * c.num * power(k_, 2 * (top - c.exp));
  node.squared_norm = ScaledRational::canonical(std::move(sum), 2 * top, k_);

  const double half = space_.half_width();
  node.base_point.coords.resize(d);
  for (std::size_t j = 0; j < d; ++j) node.base_point.coords[j] = half * node.key[j].to_double(k_);
  node.norm = l2_norm(node.base_point);
}

void PartitionTree::add_leaf(NodeId id) {
  const TreeNode& n = nodes_[id];
  if (leaves_.size() <= n.depth) leaves_.resize(n.depth + 1, DepthGroups(NormOrder{k_}));
  leaves_[n.depth][n.squared_norm].push_back(id);
  ++leaf_count_;
}

void PartitionTree::remove_leaf(NodeId id) {
  const TreeNode& n = nodes_[id];
  auto& groups = leaves_[n.depth];
  auto it = groups.find(n.squared_norm);
  auto& members = it->second;
  members.erase(std::find(members.begin(), members.end(), id));
  if (members.empty()) groups.erase(it);
  --leaf_count_;
}

std::vector<NodeId> PartitionTree::expand(NodeId id) {
  if (id >= nodes_.size()) throw std::out_of_range("PartitionTree::expand: no such node");
  if (nodes_[id].expanded) throw std::logic_error("PartitionTree::expand: node is not a leaf");
  remove_leaf(id);
  nodes_[id].expanded = true;

  const std::size_t depth = nodes_[id].depth + 1;
  const std::size_t axis = nodes_[id].depth % dim();
  std::vector<NodeId> children;
  children.reserve(k_);
  for (unsigned m = 0; m < k_; ++m) {
    TreeNode child;
    child.depth = depth;
    child.index = nodes_[id].index * k_ + m;
    child.parent = id;
    child.cell = nodes_[id].cell;
    CellAxis& split = child.cell[axis];
    split.lo = split.lo * k_ + 2 * m;
    split.splits += 1;
    finish_node(child);
    const NodeId child_id = nodes_.size();
    nodes_.push_back(std::move(child));
    add_leaf(child_id);
    children.push_back(child_id);
  }
  nodes_[id].children = children;
  max_depth_ = std::max(max_depth_, depth);
  return children;
}

void PartitionTree::set_value(NodeId id, double f_star) { nodes_.at(id).f_star = f_star; }

std::vector<NormGroup> PartitionTree::norm_groups(std::size_t h) const {
  std::vector<NormGroup> out;
  if (h >= leaves_.size()) return out;
  std::size_t rank = 1;
  for (const auto& [sq, members] : leaves_[h]) {
    out.push_back(NormGroup{h, rank++, sq, members});
  }
  return out;
}

std::vector<NodeId> PartitionTree::leaves_at(std::size_t h) const {
  std::vector<NodeId> out;
  if (h >= leaves_.size()) return out;
  for (const auto& [sq, members] : leaves_[h]) out.insert(out.end(), members.begin(), members.end());
  return out;
}

bool PartitionTree::leaf_volume_is_exact() const {
  // Leaf volume relative to Y is K^-(total splits); the sum must be 1.
  std::uint32_t top = 0;
  for (const TreeNode& n : nodes_) {
    if (!n.expanded) top = std::max<std::uint32_t>(top, static_cast<std::uint32_t>(n.depth));
  }
  BigInt sum = 0;
  for (const TreeNode& n : nodes_) {
    if (n.expanded) continue;
    std::uint32_t splits = 0;
    for (const CellAxis& a : n.cell) splits += a.splits;
    sum += power(k_, top - splits);
  }
  return sum == power(k_, top);
}

void PartitionTree::dump_csv(std::ostream& out) const {
  out << "depth,index,base_point,f_star,eval_count\n";
  const auto precision = out.precision(17);
  for (const TreeNode& n : nodes_) {
    out << n.depth << ',' << n.index << ',';
    for (std::size_t j = 0; j < n.base_point.dim(); ++j) {
      if (j > 0) out << ' ';
      out << n.base_point.coords[j];
    }
    out << ',';
    if (n.f_star) out << *n.f_star;
    out << ',' << ledger_.count(n.key) << '\n';
  }
  out.precision(precision);
}

NodeId select_in_group(const PartitionTree& tree, const NormGroup& group) {
  if (group.members.empty()) throw std::logic_error("select_in_group: empty group");
  std::optional<NodeId> best;
  for (NodeId id : group.members) {
    const TreeNode& n = tree.node(id);
    if (!n.f_star) throw std::logic_error("select_in_group: member has no value");
    if (!best) {
      best = id;
      continue;
    }
    const TreeNode& b = tree.node(*best);
    if (*n.f_star < *b.f_star || (*n.f_star == *b.f_star && n.index < b.index)) best = id;
  }
  return *best;
}

}  // namespace embopt
