#pragma once

#include "dyncoh/complexes.hpp"
#include "dyncoh/diagram.hpp"
#include "dyncoh/group.hpp"
#include "dyncoh/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dyncoh {

using IntMat = std::vector<std::vector<Int>>;
using IntVec = std::vector<Int>;

// An affine Weyl group W = Q x| W0 for a finite crystallographic family:
// the coroot lattice with its W0-action plus the completed diagram.
class AffineData {
 public:
  // family in {A,B,C,D,E,F,G}; rank caps keep W0 enumerable.
  static std::unique_ptr<AffineData> build(char family, int rank, const GroupConfig& cfg = {});
  static std::unique_ptr<AffineData> build(const std::string& label, const GroupConfig& cfg = {});

  char family() const { return family_; }
  int lattice_rank() const { return n_; }
  const CoxeterDiagram& finite_diagram() const { return d0_; }
  const CoxeterDiagram& completed_diagram() const { return dc_; }
  const GroupData& w0() const { return *w0_; }

  // Integer matrix of a W0 element on the coroot basis.
  const IntMat& action_matrix(ElemId w) const;
  // Lift of a completed-diagram generator: vertex n+1 is t_{theta^} s_theta.
  std::pair<IntVec, ElemId> affine_generator(int vertex) const;
  std::pair<IntVec, ElemId> affine_mult(const std::pair<IntVec, ElemId>& a,
                                        const std::pair<IntVec, ElemId>& b) const;
  std::pair<IntVec, ElemId> affine_word(const std::vector<int>& vertices) const;

 private:
  AffineData() : d0_({{1}}, ""), dc_({{1}}, "") {}
  char family_ = 'A';
  int n_ = 0;
  CoxeterDiagram d0_;
  CoxeterDiagram dc_;
  std::unique_ptr<GroupData> w0_;
  std::vector<IntMat> gen_mat_;  // per finite vertex
  IntVec theta_covec_;           // theta^ in coroot coordinates
  ElemId s_theta_ = 0;
  mutable std::map<ElemId, IntMat> mat_cache_;
};

// Q/Q_v presented by the Smith form of I - M_v.
struct LatticeQuotient {
  SmithForm smith;  // of I - M_v
  int free_rank = 0;
  Int torsion_order = 1;  // product of the nonzero invariant factors
};
LatticeQuotient lattice_quotient(const AffineData& a, ElemId v);

struct AffineClassRep {
  IntVec t;          // coroot coordinates
  ElemId v = 0;      // W0 class representative
  int v_class = -1;  // W0 class id
  bool order_infinite = false;
};

// One representative tv per conjugacy class of W, the free part of Q/Q_v
// truncated to |coordinate| <= height_bound.
std::vector<AffineClassRep> class_representatives(const AffineData& a, int height_bound);

// Image of C_W(tv) in W0: the x in C_{W0}(v) with x(t) - t in Q_v.
std::vector<ElemId> centralizer_image(const AffineData& a, const AffineClassRep& rep);

// Dimensions of (Lambda^{n+1-i}(V^v) (x) eps)^{Cbar} for i = 0..n+1; these
// are the HD^i_c when the class has infinite order.
std::vector<Int> lambda_formula_dims(const AffineData& a, const AffineClassRep& rep);

// Same, but refuses finite-order classes (the formula needs infinite order).
std::vector<Int> hd_dims_infinite_class(const AffineData& a, const AffineClassRep& rep);

// Stable key identifying the W-conjugacy class of the affine element tv.
std::string affine_class_key(const AffineData& a, const IntVec& t, ElemId w);

// HC_f over the completed diagram: every proper connected subdiagram is
// finite. With a class key, keeps only the basis vectors whose
// representative lifts into that W-class.
ChainComplex hc_f_for_affine(const AffineData& a, const std::string& class_key = "");

}  // namespace dyncoh
