#pragma once

#include "dyncoh/numeric.hpp"

#include <utility>
#include <vector>

namespace dyncoh {

// Sparse rational matrix, row-major. Rows keep their entries sorted by
// column index with no explicit zeros.
struct SparseMat {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, Rat>>> row;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c), row(r) {}

  void add(int r, int c, Rat v);
  bool is_zero() const;
  long nnz() const;

  // this * other (shapes must chain).
  SparseMat multiply(const SparseMat& other) const;
};

// Exact rank by sparse Gaussian elimination with Markowitz-style pivoting.
long sparse_rank(const SparseMat& m);

// Dense rational matrix for the small solve/kernel work.
struct DenseMat {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  DenseMat() = default;
  DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static DenseMat from_sparse(const SparseMat& m);
};

// Row-reduce in place; returns rank. Pivot column indices appended to
// pivot_cols when non-null.
int dense_rref(DenseMat& m, std::vector<int>* pivot_cols = nullptr);

// Basis of the right kernel {x : m x = 0}; each entry is a vector of
// length m.cols.
std::vector<std::vector<Rat>> dense_kernel(const DenseMat& m);

// Rank of the column span of the given vectors (each of length dim).
int rank_of_vectors(const std::vector<std::vector<Rat>>& vecs, int dim);

// Smith normal form U * A * V = diag(d) with U, V unimodular and
// d1 | d2 | ... (zeros trailing for the free part).
struct SmithForm {
  std::vector<Int> diag;                 // length min(rows, cols)
  std::vector<std::vector<Int>> U;       // rows x rows
  std::vector<std::vector<Int>> V;       // cols x cols
};
SmithForm smith_normal_form(std::vector<std::vector<Int>> A);

}  // namespace dyncoh
