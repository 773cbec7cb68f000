#include "dyncoh/partitions.hpp"

#include <algorithm>

namespace dyncoh {

namespace {

void gen_parts(int n, int maxpart, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    gen_parts(n - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  if (n >= 0) gen_parts(n, n == 0 ? 1 : n, cur, out);
  return out;
}

std::vector<Partition> odd_distinct_partitions(int m, bool exclude_one) {
  std::vector<Partition> out;
  for (auto& p : all_partitions(m)) {
    bool ok = true;
    for (size_t i = 0; i < p.size() && ok; ++i) {
      if (p[i] % 2 == 0) ok = false;
      if (exclude_one && p[i] == 1) ok = false;
      if (i + 1 < p.size() && p[i] == p[i + 1]) ok = false;
    }
    if (ok) out.push_back(p);
  }
  return out;
}

long long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int i = k; i <= n; ++i) p[i] += p[i - k];
  return p[n];
}

std::string partition_str(const Partition& p) {
  if (p.empty()) return "()";
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Partition with_ones(Partition p, int k) {
  for (int i = 0; i < k; ++i) p.push_back(1);
  std::sort(p.rbegin(), p.rend());
  return p;
}

}  // namespace dyncoh
