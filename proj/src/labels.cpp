#include "dyncoh/group.hpp"
#include "dyncoh/linalg.hpp"
#include "dyncoh/partitions.hpp"

#include <algorithm>
#include <sstream>

namespace dyncoh {

std::string ClassLabel::text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::A:
      return partition_str(lambda);
    case Kind::B:
    case Kind::DI:
      return "(" + partition_str(lambda) + "|" + partition_str(mu) + ")";
    case Kind::DII:
      return "II" + partition_str(lambda);
    case Kind::I2:
      os << "c^" << power;
      return os.str();
    case Kind::Generic:
    default:
      return generic;
  }
}

SignedPerm SignedPerm::identity(int lo, int hi) {
  SignedPerm sp;
  sp.lo = lo;
  sp.img.resize(hi - lo + 1);
  sp.sgn.assign(hi - lo + 1, 1);
  for (int k = lo; k <= hi; ++k) sp.img[k - lo] = k;
  return sp;
}

namespace {

// The cycle (a a+1 ... b): a -> a+1, ..., b -> a.
void place_cycle(SignedPerm& sp, int a, int b) {
  for (int k = a; k < b; ++k) sp.img[k - sp.lo] = k + 1;
  sp.img[b - sp.lo] = a;
}

// (a ... b) with one sign flip on the cycle: e_b -> -e_a.
void place_neg_cycle(SignedPerm& sp, int a, int b) {
  place_cycle(sp, a, b);
  sp.sgn[b - sp.lo] = -1;
}

// tau^lambda tau~^mu on the symbol window [lo, hi].
SignedPerm tau_pair(int lo, int hi, const Partition& lambda, const Partition& mu) {
  SignedPerm sp = SignedPerm::identity(lo, hi);
  int pos = lo;
  for (int part : lambda) {
    place_cycle(sp, pos, pos + part - 1);
    pos += part;
  }
  for (int part : mu) {
    place_neg_cycle(sp, pos, pos + part - 1);
    pos += part;
  }
  return sp;
}

// tau^{lambda,II}: all cycles positive, extra flips at the two fork symbols.
SignedPerm tau_type2(int lo, int hi, const Partition& lambda) {
  SignedPerm sp = tau_pair(lo, hi, lambda, {});
  sp.sgn[hi - 1 - sp.lo] = -sp.sgn[hi - 1 - sp.lo];
  sp.sgn[hi - sp.lo] = -sp.sgn[hi - sp.lo];
  return sp;
}

// Conjugation by eps_n (the D-type diagram involution sigma).
SignedPerm sigma_twist(SignedPerm sp, int n) {
  for (size_t k = 0; k < sp.img.size(); ++k) {
    if (static_cast<int>(k) + sp.lo == n) sp.sgn[k] = -sp.sgn[k];
    if (sp.img[k] == n) sp.sgn[k] = -sp.sgn[k];
  }
  return sp;
}

std::vector<Rat> solve_columns(const std::vector<std::vector<Rat>>& e_cols, const std::vector<Rat>& rhs) {
  const int rows = static_cast<int>(e_cols.size());
  const int cols = static_cast<int>(e_cols[0].size());
  DenseMat m(rows, cols + 1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m.at(r, c) = e_cols[r][c];
    m.at(r, cols) = rhs[r];
  }
  std::vector<int> piv;
  dense_rref(m, &piv);
  std::vector<Rat> x(cols, 0);
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == cols) throw Error(Errc::Mismatch, "signed permutation outside the root span");
    x[piv[i]] = m.at(static_cast<int>(i), cols);
  }
  return x;
}

}  // namespace

ElemId element_from_signed_perm(const GroupData& g, const SignedPerm& sp) {
  if (!g.classical_family()) throw Error(Errc::BadInput, "group has no classical frame");
  const int edim = g.e_dim();
  const int n = g.rank();

  std::vector<int> img(edim), sgn(edim, 1);
  for (int k = 1; k <= edim; ++k) img[k - 1] = k;
  for (int k = sp.lo; k <= sp.hi(); ++k) {
    img[k - 1] = sp.image(k);
    sgn[k - 1] = sp.sig(k);
  }

  std::vector<int> images(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> v(edim, 0), w(edim, 0);
    for (int r = 0; r < edim; ++r) v[r] = g.e_of_simple()[r][j];
    for (int k = 0; k < edim; ++k) w[img[k] - 1] += Rat(sgn[k]) * v[k];
    std::vector<Rat> x = solve_columns(g.e_of_simple(), w);
    std::vector<int> coords(n);
    for (int c = 0; c < n; ++c) {
      if (denominator(x[c]) != 1) throw Error(Errc::Mismatch, "non-integral root image");
      coords[c] = static_cast<int>(numerator(x[c]));
    }
    int root = g.find_root(coords);
    if (root < 0) throw Error(Errc::Mismatch, "signed permutation does not map roots to roots");
    images[j] = root;
  }
  ElemId e = g.elem_from_simple_images(images);
  if (e == kNoElem) throw Error(Errc::Mismatch, "signed permutation is not a group element");
  return e;
}

struct LabelAccess {
  static std::vector<ConjClass>& classes(ParabolicView& v) { return v.classes_; }
};

namespace {

struct ViewFrame {
  enum class Kind { None, A, ASigma, B, D } kind = Kind::None;
  int lo = 0, hi = 0;  // symbol window
};

bool is_interval(const std::vector<int>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[i - 1] + 1) return false;
  return true;
}

ViewFrame view_frame(char family, int n, const std::vector<int>& verts) {
  ViewFrame f;
  if (family == 'A') {
    if (!is_interval(verts)) return f;
    f.kind = ViewFrame::Kind::A;
    f.lo = verts.front();
    f.hi = verts.back() + 1;
    return f;
  }
  if (family == 'B') {
    if (!is_interval(verts)) return f;
    if (verts.back() == n) {
      f.kind = ViewFrame::Kind::B;
      f.lo = verts.front();
      f.hi = n;
    } else {
      f.kind = ViewFrame::Kind::A;
      f.lo = verts.front();
      f.hi = verts.back() + 1;
    }
    return f;
  }
  // family D
  bool has_m = std::binary_search(verts.begin(), verts.end(), n - 1);
  bool has_n = std::binary_search(verts.begin(), verts.end(), n);
  if (has_m && has_n) {
    if (verts.front() + static_cast<int>(verts.size()) - 1 != n || !is_interval(verts)) return f;
    f.kind = ViewFrame::Kind::D;
    f.lo = verts.front();
    f.hi = n;
  } else if (has_m) {
    if (!is_interval(verts)) return f;
    f.kind = ViewFrame::Kind::A;
    f.lo = verts.front();
    f.hi = n;
  } else if (has_n) {
    std::vector<int> rest(verts.begin(), verts.end() - 1);
    if (!rest.empty() && (!is_interval(rest) || rest.back() != n - 2)) return f;
    f.kind = ViewFrame::Kind::ASigma;
    f.lo = rest.empty() ? n - 1 : rest.front();
    f.hi = n;
  } else {
    if (!is_interval(verts)) return f;
    f.kind = ViewFrame::Kind::A;
    f.lo = verts.front();
    f.hi = verts.back() + 1;
  }
  return f;
}

void generic_labels(const GroupData& g, ParabolicView& v) {
  for (auto& c : LabelAccess::classes(v)) {
    std::ostringstream os;
    os << "o" << g.element_order(v.parent_of(c.rep)) << "s" << c.size << "w";
    auto word = v.lex_min_word(c.rep);
    for (size_t i = 0; i < word.size(); ++i) os << (i ? "." : "") << word[i];
    c.label.kind = ClassLabel::Kind::Generic;
    c.label.generic = os.str();
  }
}

void set_class(ParabolicView& v, ElemId rep, ClassLabel label, std::vector<char>& hit) {
  std::uint32_t loc = v.local_of(rep);
  if (loc == ParabolicView::kNoLocal) throw Error(Errc::Mismatch, "label representative outside view");
  std::uint32_t cid = v.class_of(loc);
  if (hit[cid]) throw Error(Errc::Mismatch, "two labels landed in one conjugacy class");
  hit[cid] = 1;
  LabelAccess::classes(v)[cid].rep = loc;
  LabelAccess::classes(v)[cid].label = std::move(label);
}

void i2_labels(const GroupData& g, ParabolicView& v) {
  const int m = g.diagram().m(1, 2);
  std::vector<char> hit(v.classes().size(), 0);
  ElemId st = g.mult(g.generator(1), g.generator(2));
  ElemId x = g.identity();
  for (int p = 0; p <= m / 2; ++p) {
    ClassLabel l;
    l.kind = ClassLabel::Kind::I2;
    l.power = p;
    set_class(v, x, l, hit);
    x = g.mult(x, st);
  }
  ClassLabel r1;
  r1.kind = ClassLabel::Kind::Generic;
  r1.generic = "refl.s";
  set_class(v, g.generator(1), r1, hit);
  if (m % 2 == 0) {
    ClassLabel r2;
    r2.kind = ClassLabel::Kind::Generic;
    r2.generic = "refl.t";
    set_class(v, g.generator(2), r2, hit);
  }
  for (char h : hit)
    if (!h) throw Error(Errc::Mismatch, "I2 labelling missed a class");
}

}  // namespace

void attach_labels(const GroupData& g, ParabolicView& v) {
  if (g.diagram().name().rfind("I2(", 0) == 0 && v.vertices().size() == 2) {
    i2_labels(g, v);
    return;
  }
  char fam = g.classical_family();
  ViewFrame f = fam ? view_frame(fam, g.rank(), v.vertices()) : ViewFrame{};
  if (f.kind == ViewFrame::Kind::None) {
    generic_labels(g, v);
    return;
  }

  std::vector<char> hit(v.classes().size(), 0);
  const int q = f.hi - f.lo + 1;
  switch (f.kind) {
    case ViewFrame::Kind::A:
    case ViewFrame::Kind::ASigma:
      for (const auto& lambda : all_partitions(q)) {
        SignedPerm sp = tau_pair(f.lo, f.hi, lambda, {});
        if (f.kind == ViewFrame::Kind::ASigma) sp = sigma_twist(sp, g.rank());
        ClassLabel l;
        l.kind = ClassLabel::Kind::A;
        l.lambda = lambda;
        set_class(v, element_from_signed_perm(g, sp), l, hit);
      }
      break;
    case ViewFrame::Kind::B:
      for (int k = 0; k <= q; ++k)
        for (const auto& lambda : all_partitions(k))
          for (const auto& mu : all_partitions(q - k)) {
            ClassLabel l;
            l.kind = ClassLabel::Kind::B;
            l.lambda = lambda;
            l.mu = mu;
            set_class(v, element_from_signed_perm(g, tau_pair(f.lo, f.hi, lambda, mu)), l, hit);
          }
      break;
    case ViewFrame::Kind::D:
      for (int k = 0; k <= q; ++k)
        for (const auto& lambda : all_partitions(k))
          for (const auto& mu : all_partitions(q - k)) {
            if (mu.size() % 2) continue;
            ClassLabel l;
            l.kind = ClassLabel::Kind::DI;
            l.lambda = lambda;
            l.mu = mu;
            set_class(v, element_from_signed_perm(g, tau_pair(f.lo, f.hi, lambda, mu)), l, hit);
          }
      for (const auto& lambda : all_partitions(q)) {
        bool all_even = true;
        for (int p : lambda) all_even &= (p % 2 == 0);
        if (!all_even || lambda.empty()) continue;
        ClassLabel l;
        l.kind = ClassLabel::Kind::DII;
        l.lambda = lambda;
        set_class(v, element_from_signed_perm(g, tau_type2(f.lo, f.hi, lambda)), l, hit);
      }
      break;
    default:
      break;
  }
  for (char h : hit)
    if (!h) throw Error(Errc::Mismatch, "classical labelling missed a class");
}

}  // namespace dyncoh
