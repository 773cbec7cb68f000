#pragma once

#include "dyncoh/diagram.hpp"
#include "dyncoh/errors.hpp"
#include "dyncoh/numeric.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace dyncoh {

using ElemId = std::uint32_t;
constexpr ElemId kNoElem = ~ElemId(0);

struct GroupConfig {
  // Covers E6, H4, F4; E7 needs ~3.0e6 (CLI --allow-large raises it).
  long long size_cap = 300000;
};

struct ClassLabel {
  enum class Kind { Generic, A, B, DI, DII, I2 };
  Kind kind = Kind::Generic;
  std::vector<int> lambda;
  std::vector<int> mu;
  int power = 0;        // I2(m): class of (st)^power
  std::string generic;  // fallback description

  std::string text() const;
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

struct ConjClass {
  std::uint32_t rep = 0;  // canonical representative, local id
  long long size = 0;
  long long centralizer_order = 0;
  bool epsilon_trivial = false;
  ClassLabel label;
};

class GroupData;

// Standard parabolic subgroup W_B enumerated inside its parent group.
class ParabolicView {
 public:
  const GroupData& group() const { return *group_; }
  const std::vector<int>& vertices() const { return verts_; }
  long long size() const { return static_cast<long long>(elems_.size()); }

  ElemId parent_of(std::uint32_t local) const { return elems_[local]; }
  std::uint32_t local_of(ElemId parent) const;  // kNoLocal when absent
  static constexpr std::uint32_t kNoLocal = ~std::uint32_t(0);

  int length(std::uint32_t local) const { return length_[local]; }
  int sign(std::uint32_t local) const { return length_[local] % 2 ? -1 : 1; }

  const std::vector<ConjClass>& classes() const { return classes_; }
  std::uint32_t class_of(std::uint32_t local) const { return class_of_[local]; }
  // Sign of any u in W_B with u . rep . u^-1 = element (well-defined on
  // epsilon-trivial classes).
  int trans_sign(std::uint32_t local) const { return trans_sign_[local]; }

  int sign_space_dim() const;
  // Lexicographically least reduced word in the vertices of B.
  std::vector<int> lex_min_word(std::uint32_t local) const;

 private:
  friend class GroupData;
  friend struct LabelAccess;
  const GroupData* group_ = nullptr;
  std::vector<int> verts_;
  std::vector<ElemId> elems_;                          // local -> parent
  std::vector<std::pair<ElemId, std::uint32_t>> idx_;  // sorted by parent id
  std::vector<std::uint16_t> length_;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::int8_t> trans_sign_;
  std::vector<ConjClass> classes_;
};

// A finite Coxeter group realized as permutations of its root set.
// Crystallographic types act on integer root coordinates, H3/H4 on
// Q(sqrt5) coordinates, I2(m) on the 2m root directions indexed mod 2m.
class GroupData {
 public:
  static std::unique_ptr<GroupData> build(const CoxeterDiagram& d, const GroupConfig& cfg = {});

  // Rebuild from cached backend data (roots and generator permutations),
  // skipping root-system arithmetic. Element enumeration is re-run, so ids
  // match a fresh build exactly.
  struct RawBackend {
    int nroots = 0;
    std::vector<int> simple_root;
    std::vector<std::vector<int>> gen_perm;
    std::vector<std::string> root_str;
  };
  static std::unique_ptr<GroupData> build_from_backend(const CoxeterDiagram& d, RawBackend raw,
                                                       const GroupConfig& cfg = {});

  const CoxeterDiagram& diagram() const { return diagram_; }
  const DiagramType& type() const { return type_; }
  long long size() const { return static_cast<long long>(count_); }
  int num_roots() const { return nroots_; }
  int rank() const { return diagram_.rank(); }

  ElemId identity() const { return 0; }
  ElemId generator(int vertex) const { return gens_[vertex - 1]; }
  ElemId mult(ElemId a, ElemId b) const;
  ElemId inverse(ElemId a) const { return inv_[a]; }
  ElemId conj_by_gen(int vertex, ElemId x) const;  // s x s
  int length(ElemId a) const { return length_[a]; }
  int sign(ElemId a) const { return length_[a] % 2 ? -1 : 1; }
  int element_order(ElemId a) const;

  ElemId word_to_elem(const std::vector<int>& vertices) const;
  std::vector<int> lex_min_word(ElemId a) const;

  // W_B for a connected vertex subset; built lazily and cached.
  const ParabolicView& view(const std::vector<int>& verts) const;
  const ParabolicView& full_view() const { return view(diagram_.all_vertices()); }

  int root_image(ElemId a, int root) const { return perm_[size_t(a) * nroots_ + root]; }

  // Roots as printable coordinate strings (simple-root basis), for the
  // disk cache and debug output.
  std::vector<std::string> root_strings() const;
  std::vector<std::vector<int>> generator_perms() const;
  const std::vector<int>& simple_roots() const { return simple_root_; }

  // Classical signed-permutation frame (Bourbaki-ordered A/B/C/D), used by
  // the tau-pattern class representatives. family() is 0 when absent.
  char classical_family() const { return classical_family_; }
  int e_dim() const { return edim_; }
  const std::vector<std::vector<Rat>>& e_of_simple() const { return e_of_simple_; }
  int find_root(const std::vector<int>& coords) const;  // -1 when absent
  ElemId elem_from_simple_images(const std::vector<int>& root_indices) const;

 private:
  GroupData() = default;
  void init_classical_frame();
  void enumerate(long long expected, long long cap);
  std::uint64_t elem_key(ElemId a) const;
  ElemId lookup_key(std::uint64_t key) const;
  void build_view(ParabolicView& v, const std::vector<int>& verts) const;

  CoxeterDiagram diagram_{std::vector<std::vector<int>>{{1}}, ""};
  DiagramType type_;
  int nroots_ = 0;
  std::vector<int> simple_root_;            // vertex -> root index
  std::vector<std::vector<int>> gen_perm_;  // per vertex, root permutation
  std::vector<std::string> root_str_;

  std::size_t count_ = 0;
  std::vector<std::uint8_t> perm_;  // count_ x nroots_
  std::vector<ElemId> inv_;
  std::vector<std::uint16_t> length_;
  std::vector<ElemId> gens_;
  std::vector<std::pair<std::uint64_t, ElemId>> key_index_;

  std::vector<std::vector<int>> root_coords_;  // crystallographic backend
  std::map<std::vector<int>, int> root_lookup_;
  std::vector<std::string> quad_root_str_;  // H3/H4 backend

  // Classical signed-permutation frame (types A/B/C/D in Bourbaki order).
  char classical_family_ = 0;  // 'A','B','D' after C -> B aliasing
  int edim_ = 0;
  std::vector<std::vector<Rat>> e_of_simple_;  // edim x rank

  mutable std::mutex view_mutex_;
  mutable std::map<std::vector<int>, std::unique_ptr<ParabolicView>> views_;

  friend void attach_labels(const GroupData&, ParabolicView&);
};

// Signed permutation w(e_k) = sgn[k] * e_{img[k]} on symbols lo..hi.
struct SignedPerm {
  int lo = 1;
  std::vector<int> img;  // img[k - lo]
  std::vector<int> sgn;

  static SignedPerm identity(int lo, int hi);
  int hi() const { return lo + static_cast<int>(img.size()) - 1; }
  int image(int sym) const { return img[sym - lo]; }
  int sig(int sym) const { return sgn[sym - lo]; }
};

// Locates the group element realizing a signed permutation (types A/B/C/D
// in Bourbaki order); throws if the element is not in the group.
ElemId element_from_signed_perm(const GroupData& g, const SignedPerm& sp);

struct FusionResult {
  int target_class = -1;
  int sign = 0;  // 0 is the zero-marker (target class not epsilon-trivial)
};

// Class of `sub`'s representative inside `super` (W_B inside W_B'), with
// the conjugator sign.
FusionResult fuse_class(const ParabolicView& sub, int class_id, const ParabolicView& super);

// Sparse vector in the group algebra, indexed by parent element ids.
using GroupVec = std::map<ElemId, Rat>;

// (1/|W_B|) sum over w in W_B of eps(w) w v w^{-1}; support must lie in W_B.
GroupVec alt_project(const ParabolicView& v, const GroupVec& vec);

// Alt_B applied to a single class representative: the HC basis vector.
GroupVec alt_basis_vector(const ParabolicView& v, int class_id);

int sign_space_dim(const ParabolicView& v);

}  // namespace dyncoh
