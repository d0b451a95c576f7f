#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "embopt/embedding.hpp"
#include "embopt/spaces.hpp"

namespace embopt {

using BigInt = boost::multiprecision::cpp_int;
using NodeId = std::size_t;

/// The exact value num / K^exp, in units of the half width of Y.
///
/// Kept canonical: exp is the smallest exponent for which the value times
/// K^exp is an integer, so equal values have equal representations.
struct ScaledRational {
  BigInt num;
  std::uint32_t exp = 0;

  static ScaledRational canonical(BigInt num, std::uint32_t exp, unsigned k);
  double to_double(unsigned k) const;

  friend bool operator==(const ScaledRational&, const ScaledRational&) = default;
  /// Representation order (exponent, then numerator); not value order.
  friend bool operator<(const ScaledRational& a, const ScaledRational& b) {
    if (a.exp != b.exp) return a.exp < b.exp;
    return a.num < b.num;
  }
};

/// Compares two scaled rationals by value.
int compare_values(const ScaledRational& a, const ScaledRational& b, unsigned k);

/// Exact base point: one canonical coordinate per axis. Ordered by
/// representation, which is a total order consistent with equality.
using BasePointKey = std::vector<ScaledRational>;

/// One axis of a cell: the interval [lo, lo + 2] / K^splits.
struct CellAxis {
  BigInt lo;
  std::uint32_t splits = 0;
};

struct TreeNode {
  std::size_t depth = 0;
  BigInt index;  // in [0, K^depth)
  std::optional<NodeId> parent;
  std::vector<CellAxis> cell;
  BasePointKey key;
  ScaledRational squared_norm;  // in units of the squared half width
  LowPoint base_point;
  double norm = 0.0;
  std::optional<double> f_star;
  bool expanded = false;
  std::vector<NodeId> children;
};

/// Evaluation history of one base point, shared by every node placed there.
struct LedgerEntry {
  std::size_t count = 0;
  double best = 0.0;
  std::optional<EvaluationRecord> best_record;
};

class BasePointLedger {
 public:
  /// Evaluation count for a key; 0 when never evaluated.
  std::size_t count(const BasePointKey& key) const;
  const LedgerEntry* find(const BasePointKey& key) const;
  /// Adds one evaluation and returns the updated entry.
  const LedgerEntry& record(const BasePointKey& key, const EvaluationRecord& evaluation);
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<BasePointKey, LedgerEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<BasePointKey, LedgerEntry> entries_;
};

/// Leaves of one depth whose base points share a norm; rank 1 holds the
/// largest norm.
struct NormGroup {
  std::size_t depth = 0;
  std::size_t rank = 0;
  ScaledRational squared_norm;
  std::vector<NodeId> members;
};

/// K-ary partition of a symmetric box Y with exact-rational cells.
///
/// Depth-h nodes are split along axis h mod d into K equal slices. K must
/// be odd and at least 3 so that the middle child keeps its parent's center.
class PartitionTree {
 public:
  /// Creates the single root leaf (0,0) whose base point is the origin.
  PartitionTree(BoxSpace space, unsigned k);

  unsigned k() const noexcept { return k_; }
  const BoxSpace& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return space_.dim(); }

  NodeId root() const noexcept { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// Deepest depth of any node.
  std::size_t depth() const noexcept { return max_depth_; }
  bool is_leaf(NodeId id) const { return !nodes_.at(id).expanded; }

  /// Splits leaf `id` into K children, returned in index order. Children
  /// have no value yet. Throws std::logic_error if `id` is not a leaf.
  std::vector<NodeId> expand(NodeId id);

  void set_value(NodeId id, double f_star);

  /// Norm groups of the depth-h leaves ordered by strictly decreasing
  /// norm. Empty when depth h has no leaves.
  std::vector<NormGroup> norm_groups(std::size_t h) const;
  /// All depth-h leaves.
  std::vector<NodeId> leaves_at(std::size_t h) const;
  std::size_t leaf_count() const noexcept { return leaf_count_; }

  BasePointLedger& ledger() noexcept { return ledger_; }
  const BasePointLedger& ledger() const noexcept { return ledger_; }

  std::uint64_t iteration() const noexcept { return iteration_; }
  void advance_iteration() noexcept { ++iteration_; }

  /// True when the leaf cells' volumes sum exactly to the volume of Y.
  bool leaf_volume_is_exact() const;

  /// The base point rebuilt from the node's cell, canonicalized.
  BasePointKey key_from_cell(NodeId id) const;

  /// CSV with columns depth,index,base_point,f_star,eval_count.
  void dump_csv(std::ostream& out) const;

 private:
  struct NormOrder {
    unsigned k;
    bool operator()(const ScaledRational& a, const ScaledRational& b) const {
      return compare_values(a, b, k) > 0;
    }
  };
  using DepthGroups = std::map<ScaledRational, std::vector<NodeId>, NormOrder>;

  void finish_node(TreeNode& node) const;
  void add_leaf(NodeId id);
  void remove_leaf(NodeId id);

  BoxSpace space_;
  unsigned k_;
  std::vector<TreeNode> nodes_;
  std::vector<DepthGroups> leaves_;
  std::size_t leaf_count_ = 0;
  std::size_t max_depth_ = 0;
  BasePointLedger ledger_;
  std::uint64_t iteration_ = 1;
};

/// Argmin of f* over the group; ties go to the smallest node index.
/// Throws std::logic_error on an empty group or a member without a value.
NodeId select_in_group(const PartitionTree& tree, const NormGroup& group);

}  // namespace embopt
