#pragma once

/// \file partitions.hpp
/// Set partitions of {0..q-1} in restricted-growth form (label[0] = 0,
/// each new block takes the next unused label), plus the weighted
/// rank-based reduction that keeps at most 2^(q-1) representatives while
/// preserving minimum-weight completions to the single-block partition.

#include <vector>

namespace sforge {

using Partition = std::vector<int>;

// Relabels arbitrary block ids into restricted-growth form.
Partition canonical_partition(std::vector<int> labels);

int block_count(const Partition& p);
bool same_block(const Partition& p, int i, int j);

// Finest common coarsening: blocks are the connected components of the
// union of both block relations.
Partition partition_join(const Partition& a, const Partition& b);

// New singleton element inserted at position pos (later elements shift).
Partition partition_insert(const Partition& p, int pos);

// Element at position pos removed (later elements shift down).
Partition partition_remove(const Partition& p, int pos);

// Blocks of elements i and j merged.
Partition partition_union(const Partition& p, int i, int j);

// All partitions of {0..q-1} in lexicographic restricted-growth order.
std::vector<Partition> all_partitions(int q);

// Indices of a minimum-weight row basis of the cuts matrix over GF(2):
// rows are candidates ordered by (weight, partition, index), columns the
// 2^(q-1) two-sided cuts keeping element 0 on the first side.  The kept
// set has at most 2^(q-1) entries and preserves, for every partition b,
// the minimum weight over candidates whose join with b is one block.
// keep_all short-circuits to the identity selection.
std::vector<int> reduce_representatives(const std::vector<Partition>& parts,
                                        const std::vector<double>& weights,
                                        int q, bool keep_all = false);

}  // namespace sforge
