#pragma once

#include "dyncoh/group.hpp"
#include "dyncoh/partitions.hpp"

#include <vector>

namespace dyncoh {

enum class Family { A, B, D, I2 };

// Classes spanning kW^eps, by the classical sign classifications.
std::vector<ClassLabel> epsilon_trivial_labels(Family f, int n_or_m);

struct HdClosedForm {
  int rank = 0;
  std::vector<int> dims;                         // index = cohomological degree 0..rank
  std::vector<std::vector<ClassLabel>> classes;  // contributors per degree
};

// Closed-form HD dimensions with the contributing class labels. D3 is
// routed to the A3 formulas.
HdClosedForm hd_dims_closed_form(Family f, int rank_or_m);

// chi^A / chi^B coefficient tables: coeff[n][p] for 0 <= n <= max_q,
// 0 <= p <= max_t, expanded exactly from the product formulas.
struct GenfunTable {
  char family = 'A';
  std::vector<std::vector<long long>> coeff;
};
GenfunTable genfun_coeffs(char family, int max_q, int max_t);

}  // namespace dyncoh
