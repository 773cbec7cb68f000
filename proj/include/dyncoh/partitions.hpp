#pragma once

#include "dyncoh/numeric.hpp"

#include <string>
#include <vector>

namespace dyncoh {

// Weakly decreasing positive parts; the empty vector is the partition of 0.
using Partition = std::vector<int>;

// All partitions of n, largest-part-first lexicographic order.
std::vector<Partition> all_partitions(int n);

// O_m (odd distinct parts) or O*_m (additionally 1 excluded); O_0 = {empty}.
std::vector<Partition> odd_distinct_partitions(int m, bool exclude_one);

// The partition function P(n).
long long partition_count(int n);

std::string partition_str(const Partition& p);

// lambda union {1^k}, still sorted.
Partition with_ones(Partition p, int k);

}  // namespace dyncoh
