#include "sforge/partitions.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "sforge/errors.hpp"
#include "sforge/mst.hpp"

namespace sforge {

Partition canonical_partition(std::vector<int> labels) {
  std::vector<int> remap;
  for (int& x : labels) {
    int found = -1;
    for (size_t i = 0; i < remap.size(); ++i) {
      if (remap[i] == x) {
        found = static_cast<int>(i);
        break;
      }
    }
    if (found < 0) {
      remap.push_back(x);
      found = static_cast<int>(remap.size()) - 1;
    }
    x = found;
  }
  return labels;
}

int block_count(const Partition& p) {
  int best = -1;
  for (int x : p) best = std::max(best, x);
  return best + 1;
}

bool same_block(const Partition& p, int i, int j) {
  return p[static_cast<size_t>(i)] == p[static_cast<size_t>(j)];
}

Partition partition_join(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw input_error("joined partitions cover different ground sets");
  }
  const int q = static_cast<int>(a.size());
  DisjointSets dsu(q);
  std::vector<int> first_a(a.size(), -1);
  std::vector<int> first_b(b.size(), -1);
  for (int i = 0; i < q; ++i) {
    int& fa = first_a[static_cast<size_t>(a[static_cast<size_t>(i)])];
    if (fa < 0) {
      fa = i;
    } else {
      dsu.unite(fa, i);
    }
    int& fb = first_b[static_cast<size_t>(b[static_cast<size_t>(i)])];
    if (fb < 0) {
      fb = i;
    } else {
      dsu.unite(fb, i);
    }
  }
  std::vector<int> labels(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i) labels[static_cast<size_t>(i)] = dsu.find(i);
  return canonical_partition(std::move(labels));
}

Partition partition_insert(const Partition& p, int pos) {
  Partition out;
  out.reserve(p.size() + 1);
  out.insert(out.end(), p.begin(), p.begin() + pos);
  out.push_back(block_count(p));
  out.insert(out.end(), p.begin() + pos, p.end());
  return canonical_partition(std::move(out));
}

Partition partition_remove(const Partition& p, int pos) {
  Partition out;
  out.reserve(p.size() - 1);
  out.insert(out.end(), p.begin(), p.begin() + pos);
  out.insert(out.end(), p.begin() + pos + 1, p.end());
  return canonical_partition(std::move(out));
}

Partition partition_union(const Partition& p, int i, int j) {
  Partition out = p;
  const int lo = std::min(out[static_cast<size_t>(i)], out[static_cast<size_t>(j)]);
  const int hi = std::max(out[static_cast<size_t>(i)], out[static_cast<size_t>(j)]);
  if (lo != hi) {
    for (int& x : out) {
      if (x == hi) x = lo;
    }
  }
  return canonical_partition(std::move(out));
}

std::vector<Partition> all_partitions(int q) {
  std::vector<Partition> out;
  Partition cur(static_cast<size_t>(q), 0);
  if (q == 0) {
    out.push_back({});
    return out;
  }
  // Lexicographic restricted-growth enumeration: position i may take any
  // label up to one past the running maximum of earlier positions.
  std::vector<int> maxes(static_cast<size_t>(q), 0);
  int i = 0;
  while (true) {
    if (i == q) {
      out.push_back(cur);
      --i;
      while (i > 0 && cur[static_cast<size_t>(i)] ==
                          maxes[static_cast<size_t>(i - 1)] + 1) {
        --i;
      }
      if (i == 0) break;
      ++cur[static_cast<size_t>(i)];
      maxes[static_cast<size_t>(i)] =
          std::max(maxes[static_cast<size_t>(i - 1)], cur[static_cast<size_t>(i)]);
      ++i;
      continue;
    }
    if (i > 0) {
      cur[static_cast<size_t>(i)] = 0;
      maxes[static_cast<size_t>(i)] = maxes[static_cast<size_t>(i - 1)];
    }
    ++i;
  }
  return out;
}

std::vector<int> reduce_representatives(const std::vector<Partition>& parts,
                                        const std::vector<double>& weights,
                                        int q, bool keep_all) {
  if (parts.size() != weights.size()) {
    throw input_error("partition and weight counts differ");
  }
  std::vector<int> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  if (keep_all) return order;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const double wx = weights[static_cast<size_t>(x)];
    const double wy = weights[static_cast<size_t>(y)];
    if (wx != wy) return wx < wy;
    if (parts[static_cast<size_t>(x)] != parts[static_cast<size_t>(y)]) {
      return parts[static_cast<size_t>(x)] < parts[static_cast<size_t>(y)];
    }
    return x < y;
  });
  if (q <= 1) {
    return order.empty() ? order : std::vector<int>{order[0]};
  }

  const int cut_bits = q - 1;
  const size_t cuts = size_t{1} << cut_bits;
  const size_t words = (cuts + 63) / 64;
  std::vector<std::vector<uint64_t>> by_pivot(cuts);  // reduced row per pivot bit
  std::vector<int> kept;
  std::vector<uint64_t> row(words);
  std::vector<uint64_t> block_mask;
  for (int idx : order) {
    const Partition& p = parts[static_cast<size_t>(idx)];
    const int nb = block_count(p);
    block_mask.assign(static_cast<size_t>(nb), 0);
    for (int i = 1; i < q; ++i) {
      block_mask[static_cast<size_t>(p[static_cast<size_t>(i)])] |=
          uint64_t{1} << (i - 1);
    }
    // Row bit c is set when no block straddles the cut: the block of
    // element 0 lies fully on the first side, every other block fully on
    // either side.
    std::fill(row.begin(), row.end(), 0);
    for (size_t c = 0; c < cuts; ++c) {
      bool ok = (c & block_mask[static_cast<size_t>(p[0])]) == 0;
      for (int b = 0; ok && b < nb; ++b) {
        if (b == p[0]) continue;
        const uint64_t m = block_mask[static_cast<size_t>(b)];
        const uint64_t inter = c & m;
        ok = inter == 0 || inter == m;
      }
      if (ok) row[c >> 6] |= uint64_t{1} << (c & 63);
    }
    // Incremental GF(2) elimination keyed by lowest set bit; a row that
    // lands on a free pivot increases the rank and stays.
    std::vector<uint64_t> work = row;
    while (true) {
      size_t pivot = cuts;
      for (size_t w = 0; w < words; ++w) {
        if (work[w] != 0) {
          pivot = (w << 6) +
                  static_cast<size_t>(__builtin_ctzll(work[w]));
          break;
        }
      }
      if (pivot == cuts) break;
      std::vector<uint64_t>& slot = by_pivot[pivot];
      if (slot.empty()) {
        slot = std::move(work);
        kept.push_back(idx);
        break;
      }
      for (size_t w = 0; w < words; ++w) work[w] ^= slot[w];
    }
    if (kept.size() == cuts) break;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace sforge
