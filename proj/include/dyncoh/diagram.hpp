#pragma once

#include "dyncoh/errors.hpp"
#include "dyncoh/numeric.hpp"

#include <string>
#include <vector>

namespace dyncoh {

// Coxeter matrix entry standing for m_ij = infinity (affine A1 bond).
constexpr int kInfinite = 0;

// A Coxeter diagram: vertices 1..n in a fixed total order plus the full
// Coxeter matrix. Edges are drawn wherever m_ij >= 3 (or infinite).
class CoxeterDiagram {
 public:
  CoxeterDiagram(std::vector<std::vector<int>> coxeter_matrix, std::string name = "");

  // "A5", "B3", "C3", "D4", "E6", "F4", "G2", "H3", "H4", "I2(7)",
  // "affine-A2", ... Affine names append the affine vertex last.
  static CoxeterDiagram from_label(const std::string& label);

  int rank() const { return n_; }
  const std::string& name() const { return name_; }
  int m(int i, int j) const { return mat_[i - 1][j - 1]; }
  bool adjacent(int i, int j) const {
    int v = m(i, j);
    return i != j && (v >= 3 || v == kInfinite);
  }
  std::vector<int> all_vertices() const;

  bool is_connected(const std::vector<int>& verts) const;
  // Connected components of a vertex set, each sorted, ordered by least
  // vertex.
  std::vector<std::vector<int>> components(const std::vector<int>& verts) const;

  // Stable identifying string (rank + matrix), used for cache keys.
  std::string canonical_key() const;

  const std::vector<std::vector<int>>& matrix() const { return mat_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> mat_;
  std::string name_;
};

// Full subdiagram given by a sorted vertex subset; an empty vertex set is
// the distinct empty sentinel used by the component operator.
struct Subdiagram {
  const CoxeterDiagram* parent = nullptr;
  std::vector<int> verts;

  Subdiagram() = default;
  Subdiagram(const CoxeterDiagram& d, std::vector<int> v);

  bool empty() const { return verts.empty(); }
  int size() const { return static_cast<int>(verts.size()); }
  bool contains(int v) const;

  friend bool operator==(const Subdiagram& a, const Subdiagram& b) {
    return a.parent == b.parent && a.verts == b.verts;
  }
};

// Every non-empty connected full subdiagram, ordered by (size, lexicographic
// vertex set).
std::vector<Subdiagram> connected_subdiagrams(const CoxeterDiagram& d);

// Connected component of B \ {removed} containing all of `target`, or the
// empty sentinel when no single component does. `removed` must lie in B and
// `target` in B \ {removed}.
Subdiagram component_containing(const Subdiagram& B, int removed,
                                const std::vector<int>& target);

// 1-based position of `beta` within the sorted vertex set of `bprime`; the
// HC differential sign is (-1) to this power.
int position_sign(const Subdiagram& bprime, int beta);

// Disjoint vertex sets with no joining edge.
bool are_orthogonal(const Subdiagram& b1, const Subdiagram& b2);

struct DiagramType {
  char family = '?';  // 'A','B','D','E','F','G','H','I' ('I' = I2(m))
  int rank = 0;
  int m2 = 0;  // edge label for I2(m)
  bool finite = false;
  Int order = 0;  // |W| when finite

  std::string label() const;
};

DiagramType classify(const CoxeterDiagram& d, const std::vector<int>& verts);
DiagramType classify(const CoxeterDiagram& d);

// Order of the finite Coxeter group of the given classified type.
Int coxeter_order(const DiagramType& t);

}  // namespace dyncoh
