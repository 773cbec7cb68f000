#include "dyncoh/classical.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace dyncoh;

namespace {

// Brute-force oracle for O_m / O*_m: filter all partitions by hand.
std::set<Partition> odd_distinct_oracle(int m, bool no_ones) {
  std::set<Partition> out;
  for (auto& p : all_partitions(m)) {
    std::set<int> seen;
    bool ok = true;
    for (int x : p) {
      if (x % 2 == 0 || seen.count(x) || (no_ones && x == 1)) ok = false;
      seen.insert(x);
    }
    if (ok) out.insert(p);
  }
  return out;
}

}  // namespace

TEST_CASE("partitions and odd-distinct sets") {
  CHECK(all_partitions(0).size() == 1);
  CHECK(all_partitions(5).size() == 7);
  CHECK(partition_count(0) == 1);
  CHECK(partition_count(1) == 1);
  CHECK(partition_count(2) == 2);
  CHECK(partition_count(8) == 22);

  // Frozen from the brute-force oracle.
  CHECK(odd_distinct_partitions(4, false) == std::vector<Partition>{{3, 1}});
  CHECK(odd_distinct_partitions(4, true).empty());
  CHECK(odd_distinct_partitions(8, true) == std::vector<Partition>{{5, 3}});
  CHECK(odd_distinct_partitions(0, true) == std::vector<Partition>{{}});
  CHECK(odd_distinct_partitions(0, false) == std::vector<Partition>{{}});

  for (int m = 0; m <= 12; ++m)
    for (bool no1 : {false, true}) {
      auto got = odd_distinct_partitions(m, no1);
      CHECK(std::set<Partition>(got.begin(), got.end()) == odd_distinct_oracle(m, no1));
    }
}

TEST_CASE("epsilon-trivial labels of the classical families") {
  CHECK(epsilon_trivial_labels(Family::A, 2).size() == 1);  // {(3)}
  CHECK(epsilon_trivial_labels(Family::A, 2)[0].lambda == Partition{3});
  CHECK(epsilon_trivial_labels(Family::B, 3).empty());
  CHECK(epsilon_trivial_labels(Family::B, 4).size() == 2);  // (0,(4)), (0,(2,2))
  CHECK(epsilon_trivial_labels(Family::A, 1).empty());      // kS2^eps = 0

  auto d4 = epsilon_trivial_labels(Family::D, 4);
  REQUIRE(d4.size() == 3);
  std::set<std::string> texts;
  for (auto& l : d4) texts.insert(l.text());
  CHECK(texts == std::set<std::string>{"((3,1)|())", "(()|(3,1))", "(()|(2,2))"});

  for (int m = 3; m <= 9; ++m)
    CHECK(static_cast<int>(epsilon_trivial_labels(Family::I2, m).size()) == (m - 1) / 2);
}

TEST_CASE("closed-form HD dimensions") {
  auto a3 = hd_dims_closed_form(Family::A, 3);
  CHECK(a3.dims == std::vector<int>{0, 0, 1, 0});
  CHECK(a3.classes[2][0].lambda == Partition{3, 1});

  auto i6 = hd_dims_closed_form(Family::I2, 6);
  CHECK(i6.dims == std::vector<int>{0, 0, 2});

  // dim HD^p(kS_n) + P(p/2) for
  // even positive p.
  auto b4 = hd_dims_closed_form(Family::B, 4);
  CHECK(b4.dims == std::vector<int>{0, 0, 2, 0, 2});
  auto a3dims = hd_dims_closed_form(Family::A, 3).dims;
  for (int p = 0; p <= 3; ++p) {
    long long want = a3dims[p];  // HD^p(kS_4)
    if (p >= 2 && p % 2 == 0) want += partition_count(p / 2);
    CHECK(b4.dims[p] == want);
  }

  // Type D: non-top degrees stabilize; top collects both families.
  auto d4 = hd_dims_closed_form(Family::D, 4);
  CHECK(d4.dims == std::vector<int>{0, 0, 1, 0, 2});
  auto d6 = hd_dims_closed_form(Family::D, 6);
  CHECK(d6.dims[2] == 1);
  CHECK(d6.dims[4] == 2);  // |O*_5| + #{nu of 2 with evenly many parts}
  CHECK(d6.dims[6] == 2);  // top: (()|(5,1)) and (()|(4,2))

  CHECK(hd_dims_closed_form(Family::D, 3).dims == a3.dims);  // D3 = A3
}

TEST_CASE("generating functions match the closed forms") {
  auto ga = genfun_coeffs('A', 8, 8);
  CHECK(ga.coeff[2][2] == 1);
  for (int n = 0; n <= 8; ++n) CHECK(ga.coeff[n][0] == 0);
  for (int n = 1; n <= 8; ++n) {
    auto cf = hd_dims_closed_form(Family::A, n);
    for (int p = 0; p <= 8; ++p) {
      long long want = (p <= n) ? cf.dims[p] : 0;
      CHECK(ga.coeff[n][p] == want);
    }
  }

  auto gb = genfun_coeffs('B', 8, 8);
  CHECK(gb.coeff[2][2] == 1);
  CHECK(gb.coeff[4][4] == 2);  // P(2) from the bosonic summand
  for (int n = 2; n <= 8; ++n) {
    auto cf = hd_dims_closed_form(Family::B, n);
    for (int p = 0; p <= 8; ++p) {
      long long want = (p <= n) ? cf.dims[p] : 0;
      CHECK(gb.coeff[n][p] == want);
    }
  }
}

TEST_CASE("classical stabilisation in the closed forms") {
  // In type A the dimensions agree up to p = m included; in types B and D
  // the top degree of X_m differs from degree m of X_n (the symmetric-group
  // summand needs p <= n-1), so the stable range there is p < m.
  for (char fam : {'A', 'B', 'D'}) {
    Family f = fam == 'A' ? Family::A : (fam == 'B' ? Family::B : Family::D);
    int lo = fam == 'A' ? 1 : (fam == 'B' ? 2 : 3);
    for (int n = lo; n <= 8; ++n) {
      auto big = hd_dims_closed_form(f, n);
      for (int m = lo; m <= n; ++m) {
        auto small = hd_dims_closed_form(f, m);
        int hi = (fam == 'A') ? m : (m == n ? m : m - 1);
        for (int p = 0; p <= hi; ++p) CHECK(big.dims[p] == small.dims[p]);
      }
    }
  }
  // The boundary cases that keep B/D out of the p = m range.
  CHECK(hd_dims_closed_form(Family::B, 5).dims[4] == 3);
  CHECK(hd_dims_closed_form(Family::B, 4).dims[4] == 2);
  CHECK(hd_dims_closed_form(Family::D, 9).dims[8] == 4);
  CHECK(hd_dims_closed_form(Family::D, 8).dims[8] == 5);
}
