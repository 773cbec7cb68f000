#include "dyncoh/classical.hpp"

#include "dyncoh/errors.hpp"

#include <algorithm>

namespace dyncoh {

namespace {

Partition doubled(const Partition& nu) {
  Partition p = nu;
  for (int& x : p) x *= 2;
  return p;
}

Partition ones(int k) { return Partition(static_cast<size_t>(std::max(k, 0)), 1); }

ClassLabel label_a(Partition lambda) {
  ClassLabel l;
  l.kind = ClassLabel::Kind::A;
  l.lambda = std::move(lambda);
  return l;
}

ClassLabel label_pair(ClassLabel::Kind kind, Partition lambda, Partition mu) {
  ClassLabel l;
  l.kind = kind;
  l.lambda = std::move(lambda);
  l.mu = std::move(mu);
  return l;
}

ClassLabel label_i2(int p) {
  ClassLabel l;
  l.kind = ClassLabel::Kind::I2;
  l.power = p;
  return l;
}

}  // namespace

std::vector<ClassLabel> epsilon_trivial_labels(Family f, int n) {
  std::vector<ClassLabel> out;
  switch (f) {
    case Family::A:
      for (auto& lam : odd_distinct_partitions(n + 1, false)) out.push_back(label_a(lam));
      break;
    case Family::B:
      if (n % 2 == 0)
        for (auto& nu : all_partitions(n / 2))
          out.push_back(label_pair(ClassLabel::Kind::B, {}, doubled(nu)));
      break;
    case Family::D:
      for (int m = 0; m <= n; ++m)
        for (auto& lam : odd_distinct_partitions(m, false))
          for (auto& mu : odd_distinct_partitions(n - m, false)) {
            if (mu.size() % 2) continue;
            out.push_back(label_pair(ClassLabel::Kind::DI, lam, mu));
          }
      if (n % 2 == 0)
        for (auto& nu : all_partitions(n / 2)) {
          if (nu.size() % 2) continue;
          out.push_back(label_pair(ClassLabel::Kind::DI, {}, doubled(nu)));
        }
      break;
    case Family::I2:
      for (int p = 1; p <= (n - 1) / 2; ++p) out.push_back(label_i2(p));
      break;
  }
  return out;
}

HdClosedForm hd_dims_closed_form(Family f, int n) {
  if (f == Family::D && n == 3) return hd_dims_closed_form(Family::A, 3);
  HdClosedForm out;
  out.rank = (f == Family::I2) ? 2 : n;
  out.dims.assign(out.rank + 1, 0);
  out.classes.resize(out.rank + 1);

  switch (f) {
    case Family::A:
      for (int p = 0; p <= n; ++p)
        for (auto& lam : odd_distinct_partitions(p + 1, true))
          out.classes[p].push_back(label_a(with_ones(lam, n - p)));
      break;
    case Family::B:
      if (n < 2) throw Error(Errc::BadInput, "B family starts at rank 2");
      for (int p = 0; p <= n; ++p) {
        if (p <= n - 1)
          for (auto& lam : odd_distinct_partitions(p + 1, true))
            out.classes[p].push_back(
                label_pair(ClassLabel::Kind::B, with_ones(lam, n - p - 1), {}));
        if (p >= 2 && p % 2 == 0)
          for (auto& nu : all_partitions(p / 2))
            out.classes[p].push_back(label_pair(ClassLabel::Kind::B, ones(n - p), doubled(nu)));
      }
      break;
    case Family::D:
      if (n < 4) throw Error(Errc::BadInput, "D family handled from rank 4 (D3 = A3)");
      for (int p = 2; p < n; ++p) {
        for (auto& lam : odd_distinct_partitions(p + 1, true))
          out.classes[p].push_back(
              label_pair(ClassLabel::Kind::DI, with_ones(lam, n - p - 1), {}));
        if (p % 2 == 0)
          for (auto& nu : all_partitions(p / 2)) {
            if (nu.size() % 2) continue;
            out.classes[p].push_back(label_pair(ClassLabel::Kind::DI, ones(n - p), doubled(nu)));
          }
      }
      // Top degree: the even-mu classes plus the odd-distinct pairs.
      if (n % 2 == 0)
        for (auto& nu : all_partitions(n / 2)) {
          if (nu.size() % 2) continue;
          out.classes[n].push_back(label_pair(ClassLabel::Kind::DI, {}, doubled(nu)));
        }
      for (int m = 0; m < n; ++m)
        for (auto& lam : odd_distinct_partitions(m, true))
          for (auto& mu : odd_distinct_partitions(n - m, false)) {
            if (mu.size() % 2) continue;
            out.classes[n].push_back(label_pair(ClassLabel::Kind::DI, lam, mu));
          }
      break;
    case Family::I2:
      if (n < 3) throw Error(Errc::BadInput, "I2(m) needs m >= 3");
      for (int p = 1; p <= (n - 1) / 2; ++p) out.classes[2].push_back(label_i2(p));
      break;
  }
  for (int p = 0; p <= out.rank; ++p) out.dims[p] = static_cast<int>(out.classes[p].size());
  return out;
}

namespace {

// Truncated product expansions in one variable z.
std::vector<long long> fermionic_poly(int degree) {
  // prod_{d>=1} (1 + z^{2d+1}) - 1
  std::vector<long long> f(degree + 1, 0);
  f[0] = 1;
  for (int d = 1; 2 * d + 1 <= degree; ++d)
    for (int k = degree; k >= 2 * d + 1; --k) f[k] += f[k - (2 * d + 1)];
  f[0] = 0;
  return f;
}

std::vector<long long> bosonic_poly(int degree) {
  // prod_{d>=1} (1 - z^{2d})^{-1} - 1  =  sum_{m>=1} P(m) z^{2m}
  std::vector<long long> g(degree + 1, 0);
  g[0] = 1;
  for (int d = 1; 2 * d <= degree; ++d)
    for (int k = 2 * d; k <= degree; ++k) g[k] += g[k - 2 * d];
  g[0] = 0;
  return g;
}

}  // namespace

GenfunTable genfun_coeffs(char family, int max_q, int max_t) {
  if (family != 'A' && family != 'B') throw Error(Errc::BadInput, "genfun family must be A or B");
  GenfunTable out;
  out.family = family;
  out.coeff.assign(max_q + 1, std::vector<long long>(max_t + 1, 0));
  const int deg = std::max(max_q, max_t) + 2;
  auto f = fermionic_poly(deg);

  if (family == 'A') {
    // (1/(1-q)) (f(qt)) / (qt): [q^n t^p] = f_{p+1} summed over q-powers.
    for (int p = 0; p <= max_t; ++p) {
      if (p + 1 > deg) continue;
      for (int n = p; n <= max_q; ++n) out.coeff[n][p] += f[p + 1];
    }
  } else {
    // f(qt) / ((1-q) t) + (g(qt)) / (1-q)
    for (int p = 0; p <= max_t; ++p)
      if (p + 1 <= deg)
        for (int n = p + 1; n <= max_q; ++n) out.coeff[n][p] += f[p + 1];
    auto g = bosonic_poly(deg);
    for (int p = 0; p <= max_t; ++p)
      if (p <= deg)
        for (int n = p; n <= max_q; ++n) out.coeff[n][p] += g[p];
  }
  return out;
}

}  // namespace dyncoh
