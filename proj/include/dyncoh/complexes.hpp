#pragma once

#include "dyncoh/group.hpp"
#include "dyncoh/linalg.hpp"

#include <string>
#include <vector>

namespace dyncoh {

struct BasisLabel {
  std::vector<int> B;      // subdiagram vertices (CC: the alpha subset)
  std::vector<int> alpha;  // vertex subset
  long long item = 0;      // orbit / class / coset identifier within (B, alpha)
  ElemId rep = 0;          // representative parent element
  int w_class = -1;        // conjugacy class of the ambient group, when meaningful

  std::string text() const;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Chain data for one complex. Cohomological complexes store maps[i] :
// C^{min+i} -> C^{min+i+1}; homological ones store maps[i] : C_{min+i} ->
// C_{min+i-1}. Composites of consecutive maps are checked to vanish at
// build time.
struct ChainComplex {
  bool cohomological = true;
  int min_degree = 0;
  std::vector<std::vector<BasisLabel>> basis;
  std::vector<SparseMat> maps;

  int degrees() const { return static_cast<int>(basis.size()); }
  int dim(int idx) const { return static_cast<int>(basis[idx].size()); }
  void verify_square_zero() const;
};

struct CohomologyResult {
  int min_degree = 0;
  std::vector<int> dims;
  long long euler_basis = 0;  // alternating sum of chain dimensions
  long long euler_h = 0;      // alternating sum of cohomology dimensions
};

CohomologyResult cohomology_dims(const ChainComplex& c);

// Coxeter complex of W_B (homological, degrees 0..|B|).
ChainComplex build_coxeter_complex(const ParabolicView& v);

// Full Dynkin complex CD(kW) (degrees 0..n), optionally cut to the piece of
// one conjugacy class of W.
ChainComplex build_dynkin_complex(const GroupData& g, int class_filter = -1,
                                  long long full_cd_cap = 1200);

// Collapsed complex HC (degrees 0..n, concentrated in >= 2).
ChainComplex build_hc_complex(const GroupData& g, int class_filter = -1);

// HC of a connected subdiagram D', with the same ambient group (basis over
// connected B contained in D').
ChainComplex build_hc_subcomplex(const GroupData& g, const std::vector<int>& sub_vertices,
                                 int class_filter = -1);

// Graded piece CD_B: only the alpha-growing part of the differential.
ChainComplex build_graded_piece(const ParabolicView& v);

// Projection HC(D) -> HC(D') killing basis vectors with B not inside D';
// checked to commute with the differentials.
std::vector<SparseMat> restrict_hc(const ChainComplex& full, const ChainComplex& sub);

// Rank of the induced map on cohomology per degree.
std::vector<int> induced_cohomology_ranks(const ChainComplex& full, const ChainComplex& sub,
                                          const std::vector<SparseMat>& proj);

// Classes with epsilon-trivial centralizer meeting no proper maximal
// connected parabolic; they give a basis of the top cohomology.
std::vector<int> top_cohomology_basis(const GroupData& g);

std::string complex_to_json(const ChainComplex& c);

}  // namespace dyncoh
