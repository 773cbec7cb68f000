#include "dyncoh/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>

namespace dyncoh {

void SparseMat::add(int r, int c, Rat v) {
  if (v == 0) return;
  auto& rw = row[r];
  auto it = std::lower_bound(rw.begin(), rw.end(), c,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != rw.end() && it->first == c) {
    it->second += v;
    if (it->second == 0) rw.erase(it);
  } else {
    rw.insert(it, {c, std::move(v)});
  }
}

bool SparseMat::is_zero() const {
  for (const auto& rw : row)
    if (!rw.empty()) return false;
  return true;
}

long SparseMat::nnz() const {
  long n = 0;
  for (const auto& rw : row) n += static_cast<long>(rw.size());
  return n;
}

SparseMat SparseMat::multiply(const SparseMat& other) const {
  if (cols != other.rows) throw std::invalid_argument("SparseMat::multiply: shape mismatch");
  SparseMat out(rows, other.cols);
  for (int r = 0; r < rows; ++r) {
    std::map<int, Rat> acc;
    for (const auto& [k, v] : row[r])
      for (const auto& [c, w] : other.row[k]) acc[c] += v * w;
    for (auto& [c, v] : acc)
      if (v != 0) out.row[r].emplace_back(c, std::move(v));
  }
  return out;
}

namespace {

// row_i -= f * row_p, both sorted sparse rows.
std::vector<std::pair<int, Rat>> row_axpy(const std::vector<std::pair<int, Rat>>& ri,
                                          const std::vector<std::pair<int, Rat>>& rp,
                                          const Rat& f) {
  std::vector<std::pair<int, Rat>> out;
  out.reserve(ri.size() + rp.size());
  size_t a = 0, b = 0;
  while (a < ri.size() || b < rp.size()) {
    if (b == rp.size() || (a < ri.size() && ri[a].first < rp[b].first)) {
      out.push_back(ri[a++]);
    } else if (a == ri.size() || rp[b].first < ri[a].first) {
      out.emplace_back(rp[b].first, -f * rp[b].second);
      ++b;
    } else {
      Rat v = ri[a].second - f * rp[b].second;
      if (v != 0) out.emplace_back(ri[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace

long sparse_rank(const SparseMat& m) {
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  rows.reserve(m.row.size());
  for (const auto& rw : m.row)
    if (!rw.empty()) rows.push_back(rw);

  long rank = 0;
  std::vector<char> active(rows.size(), 1);
  std::vector<long> colcnt(m.cols, 0);
  size_t live = rows.size();

  while (live > 0) {
    std::fill(colcnt.begin(), colcnt.end(), 0);
    for (size_t r = 0; r < rows.size(); ++r)
      if (active[r])
        for (const auto& [c, v] : rows[r]) ++colcnt[c];

    // Markowitz pivot: minimise (row fill) * (col fill), deterministic ties.
    size_t pr = rows.size();
    int pc = -1;
    unsigned long long best = std::numeric_limits<unsigned long long>::max();
    for (size_t r = 0; r < rows.size(); ++r) {
      if (!active[r]) continue;
      const auto rn = static_cast<unsigned long long>(rows[r].size() - 1);
      for (const auto& [c, v] : rows[r]) {
        unsigned long long score = rn * static_cast<unsigned long long>(colcnt[c] - 1);
        if (score < best || (score == best && (pc == -1 || c < pc))) {
          best = score;
          pr = r;
          pc = c;
        }
      }
    }
    if (pc < 0) break;

    Rat pv;
    for (const auto& [c, v] : rows[pr])
      if (c == pc) pv = v;

    for (size_t r = 0; r < rows.size(); ++r) {
      if (!active[r] || r == pr) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), pc,
                                 [](const auto& e, int col) { return e.first < col; });
      if (it == rows[r].end() || it->first != pc) continue;
      Rat f = it->second / pv;
      rows[r] = row_axpy(rows[r], rows[pr], f);
      if (rows[r].empty()) {
        active[r] = 0;
        --live;
      }
    }
    active[pr] = 0;
    --live;
    ++rank;
  }
  return rank;
}

DenseMat DenseMat::from_sparse(const SparseMat& m) {
  DenseMat d(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (const auto& [c, v] : m.row[r]) d.at(r, c) = v;
  return d;
}

int dense_rref(DenseMat& m, std::vector<int>* pivot_cols) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int k = 0; k < m.cols; ++k) std::swap(m.at(piv, k), m.at(rank, k));
    Rat inv = Rat(1) / m.at(rank, c);
    for (int k = c; k < m.cols; ++k) m.at(rank, k) *= inv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      Rat f = m.at(r, c);
      for (int k = c; k < m.cols; ++k) m.at(r, k) -= f * m.at(rank, k);
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rat>> dense_kernel(const DenseMat& m) {
  DenseMat r = m;
  std::vector<int> piv;
  int rank = dense_rref(r, &piv);
  std::vector<char> is_piv(m.cols, 0);
  for (int c : piv) is_piv[c] = 1;

  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    std::vector<Rat> v(m.cols);
    v[c] = 1;
    for (int i = 0; i < rank; ++i) v[piv[i]] = -r.at(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_of_vectors(const std::vector<std::vector<Rat>>& vecs, int dim) {
  if (vecs.empty()) return 0;
  DenseMat m(static_cast<int>(vecs.size()), dim);
  for (size_t r = 0; r < vecs.size(); ++r)
    for (int c = 0; c < dim; ++c) m.at(static_cast<int>(r), c) = vecs[r][c];
  return dense_rref(m);
}

namespace {

using IntMat = std::vector<std::vector<Int>>;

IntMat identity(int n) {
  IntMat m(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void row_op(IntMat& A, IntMat& U, int dst, int src, const Int& f) {
  for (size_t j = 0; j < A[dst].size(); ++j) A[dst][j] -= f * A[src][j];
  for (size_t j = 0; j < U[dst].size(); ++j) U[dst][j] -= f * U[src][j];
}

void col_op(IntMat& A, IntMat& V, int dst, int src, const Int& f) {
  for (auto& r : A) r[dst] -= f * r[src];
  for (auto& r : V) r[dst] -= f * r[src];
}

void row_swap(IntMat& A, IntMat& U, int i, int j) {
  std::swap(A[i], A[j]);
  std::swap(U[i], U[j]);
}

void col_swap(IntMat& A, IntMat& V, int i, int j) {
  for (auto& r : A) std::swap(r[i], r[j]);
  for (auto& r : V) std::swap(r[i], r[j]);
}

void row_negate(IntMat& A, IntMat& U, int i) {
  for (auto& x : A[i]) x = -x;
  for (auto& x : U[i]) x = -x;
}

}  // namespace

SmithForm smith_normal_form(IntMat A) {
  const int nr = static_cast<int>(A.size());
  const int nc = nr ? static_cast<int>(A[0].size()) : 0;
  SmithForm out;
  out.U = identity(nr);
  out.V = identity(nc);
  const int n = std::min(nr, nc);

  for (int k = 0; k < n; ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block to (k, k).
      int bi = -1, bj = -1;
      for (int i = k; i < nr; ++i)
        for (int j = k; j < nc; ++j)
          if (A[i][j] != 0 &&
              (bi < 0 || abs(A[i][j]) < abs(A[bi][bj])))
            bi = i, bj = j;
      if (bi < 0) break;
      if (bi != k) row_swap(A, out.U, k, bi);
      if (bj != k) col_swap(A, out.V, k, bj);

      bool clean = true;
      for (int i = k + 1; i < nr; ++i) {
        if (A[i][k] == 0) continue;
        Int q = A[i][k] / A[k][k];
        row_op(A, out.U, i, k, q);
        if (A[i][k] != 0) clean = false;
      }
      for (int j = k + 1; j < nc; ++j) {
        if (A[k][j] == 0) continue;
        Int q = A[k][j] / A[k][k];
        col_op(A, out.V, j, k, q);
        if (A[k][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: A[k][k] must divide the trailing block.
      bool fixed = true;
      for (int i = k + 1; i < nr && fixed; ++i)
        for (int j = k + 1; j < nc && fixed; ++j)
          if (A[i][j] % A[k][k] != 0) {
            row_op(A, out.U, k, i, Int(-1));  // add row i to row k
            fixed = false;
          }
      if (fixed) break;
    }
    if (A[k][k] < 0) row_negate(A, out.U, k);
  }

  out.diag.resize(n);
  for (int k = 0; k < n; ++k) out.diag[k] = A[k][k];
  // Nonzero entries first, zeros trailing (they already are, since a zero
  // pivot means the whole trailing block was zero).
  return out;
}

}  // namespace dyncoh
