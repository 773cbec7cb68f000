#include "dyncoh/affine.hpp"

#include <algorithm>
#include <sstream>

namespace dyncoh {

namespace {

IntMat identity_mat(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mult(const IntMat& a, const IntMat& b) {
  const int n = static_cast<int>(a.size());
  IntMat out(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
  const int n = static_cast<int>(a.size());
  IntVec out(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += a[i][j] * x[j];
  return out;
}

// Bourbaki Cartan matrix of the finite family (C distinct from B here).
std::vector<std::vector<int>> family_cartan(char fam, int n, const CoxeterDiagram& d) {
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 1; i <= n; ++i) {
    c[i - 1][i - 1] = 2;
    for (int j = 1; j <= n; ++j) {
      if (i == j || !d.adjacent(i, j)) continue;
      c[i - 1][j - 1] = -1;
    }
  }
  switch (fam) {
    case 'B':
      c[n - 1][n - 2] = -2;
      break;
    case 'C':
      c[n - 2][n - 1] = -2;
      break;
    case 'F':
      c[2][1] = -2;
      break;
    case 'G':
      c[0][1] = -3;
      break;
    default:
      break;
  }
  return c;
}

// Highest root in simple-root coordinates and its coroot in coroot
// coordinates.
void theta_tables(char fam, int n, std::vector<int>& theta, std::vector<int>& theta_co) {
  theta.assign(n, 2);
  theta_co.assign(n, 1);
  switch (fam) {
    case 'A':
      theta.assign(n, 1);
      theta_co.assign(n, 1);
      break;
    case 'B':
      theta[0] = 1;
      theta_co.assign(n, 2);
      theta_co[0] = 1;
      theta_co[n - 1] = 1;
      break;
    case 'C':
      theta[n - 1] = 1;
      theta_co.assign(n, 1);
      break;
    case 'D':
      theta[0] = 1;
      theta[n - 2] = 1;
      theta[n - 1] = 1;
      theta_co = theta;
      break;
    case 'E':
      if (n == 6)
        theta = {1, 2, 2, 3, 2, 1};
      else if (n == 7)
        theta = {2, 2, 3, 4, 3, 2, 1};
      else
        theta = {2, 3, 4, 6, 5, 4, 3, 2};
      theta_co = theta;
      break;
    case 'F':
      theta = {2, 3, 4, 2};
      theta_co = {2, 3, 2, 1};
      break;
    case 'G':
      theta = {3, 2};
      theta_co = {1, 2};
      break;
    default:
      throw Error(Errc::BadInput, "unknown crystallographic family");
  }
}

// (abs, sign) order making 0 < 1 < -1 < 2 < -2 < ...; ties broken
// coordinatewise.
bool phi_less(const IntVec& a, const IntVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    Int aa = abs(a[i]), ab = abs(b[i]);
    if (aa != ab) return aa < ab;
    if ((a[i] < 0) != (b[i] < 0)) return b[i] < 0;
  }
  return false;
}

IntVec reduce_coords(const SmithForm& s, IntVec y) {
  for (size_t i = 0; i < y.size(); ++i) {
    if (i < s.diag.size() && s.diag[i] > 0) {
      y[i] %= s.diag[i];
      if (y[i] < 0) y[i] += s.diag[i];
    }
  }
  return y;
}

IntMat integer_inverse(const IntMat& u) {
  const int n = static_cast<int>(u.size());
  DenseMat m(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = Rat(u[i][j]);
    m.at(i, n + i) = 1;
  }
  if (dense_rref(m) != n) throw Error(Errc::Mismatch, "transform matrix not invertible");
  IntMat out(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = m.at(i, n + j);
      if (denominator(v) != 1) throw Error(Errc::Mismatch, "transform inverse not integral");
      out[i][j] = numerator(v);
    }
  return out;
}

std::vector<ElemId> centralizer_elements(const GroupData& g, ElemId v) {
  std::vector<ElemId> out;
  for (ElemId x = 0; x < static_cast<ElemId>(g.size()); ++x)
    if (g.mult(x, v) == g.mult(v, x)) out.push_back(x);
  return out;
}

// u with u . rep . u^-1 = target, found by BFS over the class.
ElemId conjugator_from_rep(const GroupData& g, ElemId rep, ElemId target) {
  std::map<ElemId, ElemId> via;  // element -> conjugator from rep
  via[rep] = g.identity();
  std::vector<ElemId> queue{rep};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    ElemId x = queue[qi];
    if (x == target) return via[x];
    for (int vtx = 1; vtx <= g.rank(); ++vtx) {
      ElemId y = g.conj_by_gen(vtx, x);
      if (via.emplace(y, g.mult(g.generator(vtx), via[x])).second) queue.push_back(y);
    }
  }
  auto it = via.find(target);
  if (it == via.end()) throw Error(Errc::Mismatch, "elements not conjugate");
  return it->second;
}

}  // namespace

std::unique_ptr<AffineData> AffineData::build(const std::string& label, const GroupConfig& cfg) {
  if (label.size() < 2) throw Error(Errc::BadInput, "bad affine type label: " + label);
  char fam = static_cast<char>(std::toupper(label[0]));
  int rank = 0;
  try {
    rank = std::stoi(label.substr(1));
  } catch (...) {
    throw Error(Errc::BadInput, "bad affine type label: " + label);
  }
  return build(fam, rank, cfg);
}

std::unique_ptr<AffineData> AffineData::build(char family, int rank, const GroupConfig& cfg) {
  static const std::string crys = "ABCDEFG";
  if (crys.find(family) == std::string::npos)
    throw Error(Errc::BadInput, "affine construction needs a crystallographic family (A-G)");
  auto a = std::unique_ptr<AffineData>(new AffineData());
  a->family_ = family;
  a->n_ = rank;
  std::string base = std::string(1, family) + std::to_string(rank);
  a->d0_ = CoxeterDiagram::from_label(base);
  a->dc_ = CoxeterDiagram::from_label("affine-" + base);
  a->w0_ = GroupData::build(a->d0_, cfg);

  auto cart = family_cartan(family, rank, a->d0_);
  a->gen_mat_.resize(rank);
  for (int j = 1; j <= rank; ++j) {
    IntMat m = identity_mat(rank);
    for (int i = 1; i <= rank; ++i) m[j - 1][i - 1] = (i == j) ? -1 : Int(-cart[i - 1][j - 1]);
    a->gen_mat_[j - 1] = std::move(m);
  }

  std::vector<int> theta, theta_co;
  theta_tables(family, rank, theta, theta_co);
  a->theta_covec_.assign(theta_co.begin(), theta_co.end());

  // s_theta as a matrix: column i is e_i - <alpha_i^, theta> theta^.
  IntMat ms = identity_mat(rank);
  for (int i = 0; i < rank; ++i) {
    Int h = 0;
    for (int j = 0; j < rank; ++j) h += Int(cart[i][j]) * theta[j];
    for (int r = 0; r < rank; ++r) ms[r][i] -= h * a->theta_covec_[r];
  }
  // Locate s_theta in W0 (it is a reflection, scan suffices).
  ElemId found = kNoElem;
  for (ElemId w = 0; w < static_cast<ElemId>(a->w0_->size()) && found == kNoElem; ++w) {
    if (a->w0_->length(w) % 2 == 0) continue;
    if (a->action_matrix(w) == ms) found = w;
  }
  if (found == kNoElem) throw Error(Errc::Mismatch, "highest-root reflection not found in W0");
  a->s_theta_ = found;
  return a;
}

const IntMat& AffineData::action_matrix(ElemId w) const {
  auto it = mat_cache_.find(w);
  if (it != mat_cache_.end()) return it->second;
  IntMat m = identity_mat(n_);
  for (int v : w0_->lex_min_word(w)) m = mat_mult(m, gen_mat_[v - 1]);
  return mat_cache_.emplace(w, std::move(m)).first->second;
}

std::pair<IntVec, ElemId> AffineData::affine_generator(int vertex) const {
  if (vertex <= n_) return {IntVec(n_, 0), w0_->generator(vertex)};
  if (vertex == n_ + 1) return {theta_covec_, s_theta_};
  throw Error(Errc::BadInput, "affine generator index out of range");
}

std::pair<IntVec, ElemId> AffineData::affine_mult(const std::pair<IntVec, ElemId>& a,
                                                  const std::pair<IntVec, ElemId>& b) const {
  IntVec t = mat_vec(action_matrix(a.second), b.first);
  for (int i = 0; i < n_; ++i) t[i] += a.first[i];
  return {std::move(t), w0_->mult(a.second, b.second)};
}

std::pair<IntVec, ElemId> AffineData::affine_word(const std::vector<int>& vertices) const {
  std::pair<IntVec, ElemId> x{IntVec(n_, 0), w0_->identity()};
  for (int v : vertices) x = affine_mult(x, affine_generator(v));
  return x;
}

LatticeQuotient lattice_quotient(const AffineData& a, ElemId v) {
  const int n = a.lattice_rank();
  const IntMat& m = a.action_matrix(v);
  IntMat k = identity_mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k[i][j] -= m[i][j];
  LatticeQuotient q;
  q.smith = smith_normal_form(k);
  for (const Int& d : q.smith.diag) {
    if (d == 0)
      ++q.free_rank;
    else
      q.torsion_order *= d;
  }
  return q;
}

namespace {

struct QuotientFrame {
  LatticeQuotient q;
  IntMat uinv;
  std::vector<ElemId> cent;       // C_{W0}(v)
  std::vector<IntMat> cent_quot;  // U M_x U^{-1}
};

QuotientFrame quotient_frame(const AffineData& a, ElemId v) {
  QuotientFrame f;
  f.q = lattice_quotient(a, v);
  f.uinv = integer_inverse(f.q.smith.U);
  f.cent = centralizer_elements(a.w0(), v);
  for (ElemId x : f.cent)
    f.cent_quot.push_back(mat_mult(f.q.smith.U, mat_mult(a.action_matrix(x), f.uinv)));
  return f;
}

// cent_quot holds the whole centralizer, so the orbit of y is one sweep.
IntVec canonical_orbit_min(const QuotientFrame& f, const IntVec& y) {
  IntVec best = reduce_coords(f.q.smith, y);
  for (const auto& m : f.cent_quot) {
    IntVec z = reduce_coords(f.q.smith, mat_vec(m, y));
    if (phi_less(z, best)) best = z;
  }
  return best;
}

bool infinite_order(const AffineData& a, const IntVec& t, ElemId v) {
  const int n = a.lattice_rank();
  int ord = a.w0().element_order(v);
  IntVec acc(n, 0), cur = t;
  ElemId w = a.w0().identity();
  for (int k = 0; k < ord; ++k) {
    cur = mat_vec(a.action_matrix(w), t);
    for (int i = 0; i < n; ++i) acc[i] += cur[i];
    w = a.w0().mult(w, v);
  }
  for (const Int& x : acc)
    if (x != 0) return true;
  return false;
}

}  // namespace

std::vector<AffineClassRep> class_representatives(const AffineData& a, int height_bound) {
  std::vector<AffineClassRep> out;
  const auto& full = a.w0().full_view();
  for (size_t ci = 0; ci < full.classes().size(); ++ci) {
    ElemId v = full.parent_of(full.classes()[ci].rep);
    QuotientFrame f = quotient_frame(a, v);
    const auto& diag = f.q.smith.diag;
    const int n = a.lattice_rank();

    // Enumerate quotient coordinates: torsion fully, free in the box.
    std::vector<IntVec> points{IntVec(n, 0)};
    for (int i = 0; i < n; ++i) {
      std::vector<IntVec> next;
      std::vector<Int> vals;
      if (i < static_cast<int>(diag.size()) && diag[i] > 0) {
        for (Int d = 0; d < diag[i]; ++d) vals.push_back(d);
      } else {
        vals.push_back(0);
        for (int h = 1; h <= height_bound; ++h) {
          vals.push_back(h);
          vals.push_back(-h);
        }
      }
      for (const auto& p : points)
        for (const Int& val : vals) {
          IntVec q = p;
          q[i] = val;
          next.push_back(std::move(q));
        }
      points = std::move(next);
    }

    std::vector<IntVec> seen;
    for (const auto& y : points) {
      IntVec cano = canonical_orbit_min(f, y);
      bool fresh = true;
      for (const auto& s : seen)
        if (s == cano) {
          fresh = false;
          break;
        }
      if (!fresh) continue;
      seen.push_back(cano);
      AffineClassRep rep;
      rep.t = mat_vec(f.uinv, cano);
      rep.v = v;
      rep.v_class = static_cast<int>(ci);
      rep.order_infinite = infinite_order(a, rep.t, v);
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<ElemId> centralizer_image(const AffineData& a, const AffineClassRep& rep) {
  QuotientFrame f = quotient_frame(a, rep.v);
  std::vector<ElemId> out;
  for (size_t i = 0; i < f.cent.size(); ++i) {
    IntVec moved = mat_vec(a.action_matrix(f.cent[i]), rep.t);
    for (size_t j = 0; j < moved.size(); ++j) moved[j] -= rep.t[j];
    IntVec y = mat_vec(f.q.smith.U, moved);
    bool in_qv = true;
    for (size_t j = 0; j < y.size(); ++j) {
      const Int d = j < f.q.smith.diag.size() ? f.q.smith.diag[j] : Int(0);
      if (d > 0 ? (y[j] % d != 0) : (y[j] != 0)) in_qv = false;
    }
    if (in_qv) out.push_back(f.cent[i]);
  }
  return out;
}

std::vector<Int> lambda_formula_dims(const AffineData& a, const AffineClassRep& rep) {
  const int n = a.lattice_rank();
  const IntMat& mv = a.action_matrix(rep.v);

  // Rational basis of V^v = ker(M_v - I).
  DenseMat km(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) km.at(i, j) = Rat(mv[i][j]) - (i == j ? 1 : 0);
  auto kernel = dense_kernel(km);
  const int k = static_cast<int>(kernel.size());

  auto cbar = centralizer_image(a, rep);
  std::vector<Rat> acc(n + 2, 0);
  for (ElemId x : cbar) {
    const IntMat& mx = a.action_matrix(x);
    // Solve K R = M_x K for the restriction R of x to V^v.
    DenseMat sys(n, k + k);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < k; ++c) sys.at(i, c) = kernel[c][i];
      for (int c = 0; c < k; ++c) {
        Rat rhs = 0;
        for (int j = 0; j < n; ++j) rhs += Rat(mx[i][j]) * kernel[c][j];
        sys.at(i, k + c) = rhs;
      }
    }
    std::vector<int> piv;
    dense_rref(sys, &piv);
    DenseMat r(k, k);
    for (size_t pi = 0; pi < piv.size(); ++pi) {
      if (piv[pi] >= k) throw Error(Errc::Mismatch, "centralizer does not preserve V^v");
      for (int c = 0; c < k; ++c) r.at(piv[pi], c) = sys.at(static_cast<int>(pi), k + c);
    }

    // Exterior-power traces from Newton's identities.
    std::vector<Rat> pw(k + 1, 0), el(k + 1, 0);
    DenseMat power = r;
    for (int i = 1; i <= k; ++i) {
      Rat tr = 0;
      for (int d = 0; d < k; ++d) tr += power.at(d, d);
      pw[i] = tr;
      if (i < k) {
        DenseMat nxt(k, k);
        for (int rr = 0; rr < k; ++rr)
          for (int cc = 0; cc < k; ++cc) {
            Rat s = 0;
            for (int m = 0; m < k; ++m) s += power.at(rr, m) * r.at(m, cc);
            nxt.at(rr, cc) = s;
          }
        power = std::move(nxt);
      }
    }
    el[0] = 1;
    for (int i = 1; i <= k; ++i) {
      Rat s = 0;
      for (int j = 1; j <= i; ++j) s += (j % 2 == 1 ? pw[j] : -pw[j]) * el[i - j];
      el[i] = s / i;
    }

    int eps = a.w0().sign(x);
    for (int deg = 0; deg <= n + 1; ++deg) {
      int j = n + 1 - deg;
      if (j >= 0 && j <= k) acc[deg] += (eps > 0 ? el[j] : -el[j]);
    }
  }

  std::vector<Int> dims(n + 2, 0);
  for (int deg = 0; deg <= n + 1; ++deg) {
    Rat v = acc[deg] / static_cast<long long>(cbar.size());
    if (denominator(v) != 1 || v < 0)
      throw Error(Errc::Mismatch, "invariant dimension is not a nonnegative integer");
    dims[deg] = numerator(v);
  }
  return dims;
}

std::vector<Int> hd_dims_infinite_class(const AffineData& a, const AffineClassRep& rep) {
  if (!rep.order_infinite)
    throw Error(Errc::BadInput,
                "class has finite order: the closed formula does not apply, use the HC_f route");
  return lambda_formula_dims(a, rep);
}

std::string affine_class_key(const AffineData& a, const IntVec& t, ElemId w) {
  const auto& full = a.w0().full_view();
  std::uint32_t wl = full.local_of(w);
  int ci = static_cast<int>(full.class_of(wl));
  ElemId rep = full.parent_of(full.classes()[ci].rep);
  ElemId u = conjugator_from_rep(a.w0(), rep, w);
  ElemId g0 = a.w0().inverse(u);
  QuotientFrame f = quotient_frame(a, rep);
  IntVec moved = mat_vec(a.action_matrix(g0), t);
  IntVec cano = canonical_orbit_min(f, mat_vec(f.q.smith.U, moved));
  std::ostringstream os;
  os << "c" << ci << ":";
  for (size_t i = 0; i < cano.size(); ++i) os << (i ? "," : "") << to_string(cano[i]);
  return os.str();
}

ChainComplex hc_f_for_affine(const AffineData& a, const std::string& class_key) {
  const CoxeterDiagram& dc = a.completed_diagram();
  const int ncomp = dc.rank();  // n + 1

  std::map<std::string, std::unique_ptr<GroupData>> groups;
  auto group_for = [&](const std::vector<int>& verts) -> GroupData& {
    std::vector<std::vector<int>> m(verts.size(), std::vector<int>(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = 0; j < verts.size(); ++j) m[i][j] = dc.m(verts[i], verts[j]);
    CoxeterDiagram d(m, "");
    auto key = d.canonical_key();
    auto it = groups.find(key);
    if (it == groups.end()) it = groups.emplace(key, GroupData::build(d)).first;
    return *it->second;
  };

  std::vector<Subdiagram> subs;
  for (auto& s : connected_subdiagrams(dc))
    if (s.size() < ncomp) subs.push_back(s);

  ChainComplex c;
  c.cohomological = true;
  c.min_degree = 0;
  c.basis.resize(ncomp);
  c.maps.resize(ncomp);

  // Lift a class representative to the affine group and name its W-class.
  auto key_of = [&](const std::vector<int>& verts, GroupData& g, int cls) -> std::string {
    const auto& full = g.full_view();
    auto word = g.lex_min_word(full.parent_of(full.classes()[cls].rep));
    std::vector<int> dword;
    for (int j : word) dword.push_back(verts[j - 1]);
    auto lift = a.affine_word(dword);
    return affine_class_key(a, lift.first, lift.second);
  };

  std::map<std::vector<int>, std::map<int, int>> pos;
  for (const auto& sub : subs) {
    GroupData& g = group_for(sub.verts);
    const auto& full = g.full_view();
    for (size_t ci = 0; ci < full.classes().size(); ++ci) {
      if (!full.classes()[ci].epsilon_trivial) continue;
      if (!class_key.empty() && key_of(sub.verts, g, static_cast<int>(ci)) != class_key) continue;
      const int p = sub.size();
      pos[sub.verts][static_cast<int>(ci)] = static_cast<int>(c.basis[p].size());
      BasisLabel l;
      l.B = sub.verts;
      l.item = static_cast<long long>(ci);
      l.rep = full.parent_of(full.classes()[ci].rep);
      c.basis[p].push_back(std::move(l));
    }
  }
  for (int p = 0; p < ncomp; ++p)
    c.maps[p] = SparseMat(p + 1 < ncomp ? c.dim(p + 1) : 0, c.dim(p));

  for (const auto& sub : subs) {
    auto it_b = pos.find(sub.verts);
    if (it_b == pos.end()) continue;
    const int p = sub.size();
    GroupData& g = group_for(sub.verts);
    const auto& full = g.full_view();
    for (const auto& bigger : subs) {
      if (bigger.size() != p + 1) continue;
      if (!std::includes(bigger.verts.begin(), bigger.verts.end(), sub.verts.begin(),
                         sub.verts.end()))
        continue;
      std::vector<int> extra;
      std::set_difference(bigger.verts.begin(), bigger.verts.end(), sub.verts.begin(),
                          sub.verts.end(), std::back_inserter(extra));
      int beta = extra[0];
      int position =
          static_cast<int>(std::lower_bound(bigger.verts.begin(), bigger.verts.end(), beta) -
                           bigger.verts.begin()) +
          1;
      Rat sgn(position % 2 == 1 ? -1 : 1);
      GroupData& gp = group_for(bigger.verts);
      const auto& fullp = gp.full_view();
      for (const auto& [ci, col] : it_b->second) {
        // Embed the representative by its word, written in the vertices of
        // the completed diagram.
        auto word = g.lex_min_word(full.parent_of(full.classes()[ci].rep));
        std::vector<int> pword;
        for (int j : word) {
          int dvert = sub.verts[j - 1];
          pword.push_back(static_cast<int>(std::lower_bound(bigger.verts.begin(),
                                                            bigger.verts.end(), dvert) -
                                           bigger.verts.begin()) +
                          1);
        }
        ElemId emb = gp.word_to_elem(pword);
        std::uint32_t loc = fullp.local_of(emb);
        int target = static_cast<int>(fullp.class_of(loc));
        if (!fullp.classes()[target].epsilon_trivial) continue;
        auto it_bp = pos.find(bigger.verts);
        if (it_bp == pos.end()) continue;
        auto tgt = it_bp->second.find(target);
        if (tgt == it_bp->second.end()) continue;
        c.maps[p].add(tgt->second, col, sgn * fullp.trans_sign(loc));
      }
    }
  }
  c.verify_square_zero();
  return c;
}

}  // namespace dyncoh
