#include "dyncoh/complexes.hpp"

#include "dyncoh/diagram.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace dyncoh {

std::string BasisLabel::text() const {
  std::ostringstream os;
  os << "B=";
  for (size_t i = 0; i < B.size(); ++i) os << (i ? "." : "") << B[i];
  os << "|a=";
  for (size_t i = 0; i < alpha.size(); ++i) os << (i ? "." : "") << alpha[i];
  os << "|i=" << item;
  return os.str();
}

void ChainComplex::verify_square_zero() const {
  for (size_t i = 0; i + 1 < maps.size(); ++i) {
    const SparseMat& first = cohomological ? maps[i] : maps[i + 1];
    const SparseMat& second = cohomological ? maps[i + 1] : maps[i];
    if (first.cols == 0 || second.rows == 0) continue;
    if (!second.multiply(first).is_zero())
      throw Error(Errc::Mismatch, "differential does not square to zero");
  }
}

CohomologyResult cohomology_dims(const ChainComplex& c) {
  CohomologyResult r;
  r.min_degree = c.min_degree;
  const int nd = c.degrees();
  std::vector<long> ranks(nd, 0);
  for (int i = 0; i < nd; ++i) ranks[i] = sparse_rank(c.maps[i]);
  r.dims.resize(nd);
  for (int i = 0; i < nd; ++i) {
    long out_rank = ranks[i];
    long in_rank = 0;
    if (c.cohomological)
      in_rank = (i > 0) ? ranks[i - 1] : 0;
    else
      in_rank = (i + 1 < nd) ? ranks[i + 1] : 0;
    r.dims[i] = c.dim(i) - static_cast<int>(out_rank) - static_cast<int>(in_rank);
    if (r.dims[i] < 0) throw Error(Errc::Mismatch, "negative cohomology dimension");
  }
  for (int i = 0; i < nd; ++i) {
    int p = c.min_degree + i;
    long long s = (p % 2 == 0) ? 1 : -1;
    r.euler_basis += s * c.dim(i);
    r.euler_h += s * r.dims[i];
  }
  return r;
}

namespace {

// Orbits of the conjugation action of W_{B \ alpha} on W_B (the orbit sums
// form a basis of the fixed-point space), plus coset structures. Indices
// are local to the view.
struct OrbitTable {
  std::vector<std::uint32_t> orbit_of;  // local element -> orbit id
  std::vector<std::uint32_t> reps;      // orbit id -> seed local id
};

OrbitTable conjugation_orbits(const ParabolicView& v, const std::vector<int>& stab_verts) {
  const auto n = static_cast<std::uint32_t>(v.size());
  OrbitTable t;
  t.orbit_of.assign(n, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t seed = 0; seed < n; ++seed) {
    if (t.orbit_of[seed] != UINT32_MAX) continue;
    auto oid = static_cast<std::uint32_t>(t.reps.size());
    t.reps.push_back(seed);
    t.orbit_of[seed] = oid;
    queue.assign(1, seed);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (int vert : stab_verts) {
        ElemId yp = v.group().conj_by_gen(vert, v.parent_of(queue[qi]));
        std::uint32_t y = v.local_of(yp);
        if (t.orbit_of[y] == UINT32_MAX) {
          t.orbit_of[y] = oid;
          queue.push_back(y);
        }
      }
    }
  }
  return t;
}

OrbitTable coset_table(const ParabolicView& v, const std::vector<int>& sub_verts) {
  const auto n = static_cast<std::uint32_t>(v.size());
  OrbitTable t;
  t.orbit_of.assign(n, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t seed = 0; seed < n; ++seed) {
    if (t.orbit_of[seed] != UINT32_MAX) continue;
    auto oid = static_cast<std::uint32_t>(t.reps.size());
    t.reps.push_back(seed);
    t.orbit_of[seed] = oid;
    queue.assign(1, seed);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (int vert : sub_verts) {
        ElemId yp = v.group().mult(v.parent_of(queue[qi]), v.group().generator(vert));
        std::uint32_t y = v.local_of(yp);
        if (t.orbit_of[y] == UINT32_MAX) {
          t.orbit_of[y] = oid;
          queue.push_back(y);
        }
      }
    }
  }
  return t;
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& verts, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Lexicographic enumeration of k-subsets of the sorted vertex list.
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (size_t i = start; i < verts.size(); ++i) {
      cur.push_back(verts[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_union(const std::vector<int>& a, int extra) {
  std::vector<int> out = a;
  out.insert(std::lower_bound(out.begin(), out.end(), extra), extra);
  return out;
}

int pos_in(const std::vector<int>& sorted, int x) {
  return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) + 1;
}

}  // namespace

ChainComplex build_coxeter_complex(const ParabolicView& v) {
  const std::vector<int>& B = v.vertices();
  const int nb = static_cast<int>(B.size());
  ChainComplex c;
  c.cohomological = false;
  c.min_degree = 0;
  c.basis.resize(nb + 1);

  std::map<std::vector<int>, OrbitTable> cosets;      // alpha -> cosets of W_{B\alpha}
  std::map<std::vector<int>, std::vector<int>> offs;  // alpha -> basis offset per coset
  for (int p = 0; p <= nb; ++p) {
    for (auto& alpha : subsets_of_size(B, p)) {
      auto tab = coset_table(v, set_minus(B, alpha));
      std::vector<int> off(tab.reps.size());
      for (size_t i = 0; i < tab.reps.size(); ++i) {
        off[i] = static_cast<int>(c.basis[p].size());
        BasisLabel l;
        l.B = alpha;  // for CC the label records the alpha subset
        l.alpha = alpha;
        l.item = static_cast<long long>(i);
        l.rep = v.parent_of(tab.reps[i]);
        c.basis[p].push_back(std::move(l));
      }
      offs[alpha] = std::move(off);
      cosets[alpha] = std::move(tab);
    }
  }

  c.maps.resize(nb + 1);
  c.maps[0] = SparseMat(0, c.dim(0));
  for (int p = 1; p <= nb; ++p) {
    SparseMat m(c.dim(p - 1), c.dim(p));
    int col = 0;
    for (auto& alpha : subsets_of_size(B, p)) {
      const auto& tab = cosets[alpha];
      for (size_t ci = 0; ci < tab.reps.size(); ++ci, ++col) {
        std::uint32_t w = tab.reps[ci];
        for (int i = 1; i <= p; ++i) {
          std::vector<int> alpha2 = alpha;
          alpha2.erase(alpha2.begin() + (i - 1));
          const auto& tab2 = cosets[alpha2];
          int target = offs[alpha2][tab2.orbit_of[w]];
          m.add(target, col, (i % 2 == 1) ? Rat(1) : Rat(-1));
        }
      }
    }
    c.maps[p] = std::move(m);
  }
  c.verify_square_zero();
  return c;
}

namespace {

// Shared basis bookkeeping for CD and its graded pieces.
struct DynkinScaffold {
  const GroupData* g = nullptr;
  std::vector<Subdiagram> subs;
  // per (B index, alpha) data
  std::map<std::pair<int, std::vector<int>>, OrbitTable> orbits;
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> basis_pos;  // orbit -> column (-1 filtered)
  ChainComplex c;

  void build_basis(const std::vector<Subdiagram>& subs_in, int class_filter, int max_degree) {
    const GroupData& G = *g;
    subs = subs_in;
    c.cohomological = true;
    c.min_degree = 0;
    c.basis.resize(max_degree + 1);
    const ParabolicView& full = G.full_view();
    for (int p = 0; p <= max_degree; ++p) {
      for (size_t bi = 0; bi < subs.size(); ++bi) {
        const auto& B = subs[bi].verts;
        if (static_cast<int>(B.size()) < p) continue;
        const ParabolicView& vb = G.view(B);
        for (auto& alpha : subsets_of_size(B, p)) {
          auto tab = conjugation_orbits(vb, set_minus(B, alpha));
          std::vector<int> pos(tab.reps.size(), -1);
          for (size_t oi = 0; oi < tab.reps.size(); ++oi) {
            ElemId rep = vb.parent_of(tab.reps[oi]);
            int wc = static_cast<int>(full.class_of(full.local_of(rep)));
            if (class_filter >= 0 && wc != class_filter) continue;
            pos[oi] = static_cast<int>(c.basis[p].size());
            BasisLabel l;
            l.B = B;
            l.alpha = alpha;
            l.item = static_cast<long long>(oi);
            l.rep = rep;
            l.w_class = wc;
            c.basis[p].push_back(std::move(l));
          }
          auto key = std::make_pair(static_cast<int>(bi), alpha);
          basis_pos[key] = std::move(pos);
          orbits[key] = std::move(tab);
        }
      }
    }
  }
};

}  // namespace

ChainComplex build_dynkin_complex(const GroupData& g, int class_filter, long long full_cd_cap) {
  if (g.size() > full_cd_cap)
    throw Error(Errc::CapExceeded, "group too large for the full Dynkin complex", Int(g.size()));
  const int n = g.rank();
  auto subs = connected_subdiagrams(g.diagram());
  std::map<std::vector<int>, int> sub_index;
  for (size_t i = 0; i < subs.size(); ++i) sub_index[subs[i].verts] = static_cast<int>(i);

  DynkinScaffold s;
  s.g = &g;
  s.build_basis(subs, class_filter, n);
  ChainComplex& c = s.c;

  // Component-shrinking targets: for each B, the pairs (B', beta) with
  // B' containing B and beta outside B such that B is a connected component
  // of B' minus beta.
  std::vector<std::vector<std::pair<int, int>>> growth(subs.size());
  for (size_t bi = 0; bi < subs.size(); ++bi) {
    for (size_t pi = 0; pi < subs.size(); ++pi) {
      if (subs[pi].size() <= subs[bi].size()) continue;
      if (!std::includes(subs[pi].verts.begin(), subs[pi].verts.end(), subs[bi].verts.begin(),
                         subs[bi].verts.end()))
        continue;
      for (int beta : set_minus(subs[pi].verts, subs[bi].verts)) {
        std::vector<int> rest = set_minus(subs[pi].verts, {beta});
        auto comps = g.diagram().components(rest);
        for (auto& comp : comps)
          if (comp == subs[bi].verts) growth[bi].push_back({static_cast<int>(pi), beta});
      }
    }
  }

  c.maps.resize(n + 1);
  for (int p = 0; p <= n; ++p) {
    SparseMat m(p + 1 <= n ? c.dim(p + 1) : 0, c.dim(p));
    for (size_t bi = 0; bi < subs.size() && p + 1 <= n; ++bi) {
      const auto& B = subs[bi].verts;
      if (static_cast<int>(B.size()) < p) continue;
      const ParabolicView& vb = g.view(B);
      for (auto& alpha : subsets_of_size(B, p)) {
        auto key = std::make_pair(static_cast<int>(bi), alpha);
        const auto& tab = s.orbits.at(key);
        const auto& pos = s.basis_pos.at(key);
        for (size_t oi = 0; oi < tab.reps.size(); ++oi) {
          if (pos[oi] < 0) continue;
          const int col = pos[oi];
          // Same-B term: expand into the finer orbits of W_{B\(alpha+beta)}.
          for (int beta : set_minus(B, alpha)) {
            auto alpha2 = set_union(alpha, beta);
            Rat sgn((pos_in(alpha2, beta) % 2 == 1) ? 1 : -1);
            auto key2 = std::make_pair(static_cast<int>(bi), alpha2);
            const auto& tab2 = s.orbits.at(key2);
            const auto& pos2 = s.basis_pos.at(key2);
            std::vector<char> added(tab2.reps.size(), 0);
            for (std::uint32_t e = 0; e < static_cast<std::uint32_t>(vb.size()); ++e) {
              if (tab.orbit_of[e] != oi) continue;
              std::uint32_t fo = tab2.orbit_of[e];
              if (added[fo]) continue;
              added[fo] = 1;
              if (pos2[fo] >= 0) m.add(pos2[fo], col, sgn);
            }
          }
          // Component-shrinking term, seen from the source: include into
          // every B' of which B is a component after deleting beta.
          ElemId rep = vb.parent_of(tab.reps[oi]);
          for (auto [pi, beta] : growth[bi]) {
            auto alpha2 = set_union(alpha, beta);
            Rat sgn((pos_in(alpha2, beta) % 2 == 1) ? -1 : 1);
            auto key2 = std::make_pair(pi, alpha2);
            const auto& tab2 = s.orbits.at(key2);
            const auto& pos2 = s.basis_pos.at(key2);
            const ParabolicView& vp = g.view(subs[pi].verts);
            std::uint32_t fo = tab2.orbit_of[vp.local_of(rep)];
            if (pos2[fo] >= 0) m.add(pos2[fo], col, sgn);
          }
        }
      }
    }
    c.maps[p] = std::move(m);
  }
  c.verify_square_zero();
  return c;
}

ChainComplex build_graded_piece(const ParabolicView& v) {
  const std::vector<int>& B = v.vertices();
  const int nb = static_cast<int>(B.size());

  ChainComplex c;
  c.cohomological = true;
  c.min_degree = 0;
  c.basis.resize(nb + 1);
  std::map<std::vector<int>, OrbitTable> orbits;
  std::map<std::vector<int>, std::vector<int>> offs;
  for (int p = 0; p <= nb; ++p) {
    for (auto& alpha : subsets_of_size(B, p)) {
      auto tab = conjugation_orbits(v, set_minus(B, alpha));
      std::vector<int> off(tab.reps.size());
      for (size_t oi = 0; oi < tab.reps.size(); ++oi) {
        off[oi] = static_cast<int>(c.basis[p].size());
        BasisLabel l;
        l.B = B;
        l.alpha = alpha;
        l.item = static_cast<long long>(oi);
        l.rep = v.parent_of(tab.reps[oi]);
        c.basis[p].push_back(std::move(l));
      }
      offs[alpha] = std::move(off);
      orbits[alpha] = std::move(tab);
    }
  }
  c.maps.resize(nb + 1);
  for (int p = 0; p <= nb; ++p) {
    SparseMat m(p + 1 <= nb ? c.dim(p + 1) : 0, c.dim(p));
    if (p + 1 <= nb) {
      for (auto& alpha : subsets_of_size(B, p)) {
        const auto& tab = orbits[alpha];
        const auto& off = offs[alpha];
        for (size_t oi = 0; oi < tab.reps.size(); ++oi) {
          const int col = off[oi];
          for (int beta : set_minus(B, alpha)) {
            auto alpha2 = set_union(alpha, beta);
            Rat sgn((pos_in(alpha2, beta) % 2 == 1) ? 1 : -1);
            const auto& tab2 = orbits[alpha2];
            const auto& off2 = offs[alpha2];
            std::vector<char> added(tab2.reps.size(), 0);
            for (std::uint32_t e = 0; e < static_cast<std::uint32_t>(v.size()); ++e) {
              if (tab.orbit_of[e] != oi) continue;
              std::uint32_t fo = tab2.orbit_of[e];
              if (added[fo]) continue;
              added[fo] = 1;
              m.add(off2[fo], col, sgn);
            }
          }
        }
      }
    }
    c.maps[p] = std::move(m);
  }
  c.verify_square_zero();
  return c;
}

namespace {

ChainComplex build_hc_over(const GroupData& g, const std::vector<Subdiagram>& subs, int class_filter) {
  const int n = g.rank();
  ChainComplex c;
  c.cohomological = true;
  c.min_degree = 0;
  c.basis.resize(n + 1);
  const ParabolicView& full = g.full_view();

  std::map<std::vector<int>, std::map<int, int>> pos;  // B -> class -> column
  for (const auto& sub : subs) {
    const ParabolicView& vb = g.view(sub.verts);
    const int p = sub.size();
    for (size_t ci = 0; ci < vb.classes().size(); ++ci) {
      if (!vb.classes()[ci].epsilon_trivial) continue;
      ElemId rep = vb.parent_of(vb.classes()[ci].rep);
      int wc = static_cast<int>(full.class_of(full.local_of(rep)));
      if (class_filter >= 0 && wc != class_filter) continue;
      pos[sub.verts][static_cast<int>(ci)] = static_cast<int>(c.basis[p].size());
      BasisLabel l;
      l.B = sub.verts;
      l.item = static_cast<long long>(ci);
      l.rep = rep;
      l.w_class = wc;
      c.basis[p].push_back(std::move(l));
    }
  }

  c.maps.resize(n + 1);
  for (int p = 0; p <= n; ++p) c.maps[p] = SparseMat(p + 1 <= n ? c.dim(p + 1) : 0, c.dim(p));
  for (const auto& sub : subs) {
    const int p = sub.size();
    if (p + 1 > n) continue;
    auto it_b = pos.find(sub.verts);
    if (it_b == pos.end()) continue;
    const ParabolicView& vb = g.view(sub.verts);
    for (const auto& bigger : subs) {
      if (bigger.size() != p + 1) continue;
      if (!std::includes(bigger.verts.begin(), bigger.verts.end(), sub.verts.begin(), sub.verts.end()))
        continue;
      int beta = set_minus(bigger.verts, sub.verts)[0];
      auto it_bp = pos.find(bigger.verts);
      if (it_bp == pos.end()) continue;
      const ParabolicView& vp = g.view(bigger.verts);
      Rat sgn((pos_in(bigger.verts, beta) % 2 == 1) ? -1 : 1);
      for (const auto& [ci, col] : it_b->second) {
        FusionResult f = fuse_class(vb, ci, vp);
        if (f.sign == 0) continue;
        auto tgt = it_bp->second.find(f.target_class);
        if (tgt == it_bp->second.end()) continue;  // filtered to another class
        c.maps[p].add(tgt->second, col, sgn * f.sign);
      }
    }
  }
  c.verify_square_zero();
  return c;
}

}  // namespace

ChainComplex build_hc_complex(const GroupData& g, int class_filter) {
  return build_hc_over(g, connected_subdiagrams(g.diagram()), class_filter);
}

ChainComplex build_hc_subcomplex(const GroupData& g, const std::vector<int>& sub_vertices,
                                 int class_filter) {
  std::vector<int> sv = sub_vertices;
  std::sort(sv.begin(), sv.end());
  if (!g.diagram().is_connected(sv))
    throw Error(Errc::BadInput, "restriction target must be connected");
  std::vector<Subdiagram> subs;
  for (auto& s : connected_subdiagrams(g.diagram()))
    if (std::includes(sv.begin(), sv.end(), s.verts.begin(), s.verts.end())) subs.push_back(s);
  return build_hc_over(g, subs, class_filter);
}

std::vector<SparseMat> restrict_hc(const ChainComplex& full, const ChainComplex& sub) {
  std::vector<SparseMat> proj(full.degrees());
  for (int p = 0; p < full.degrees(); ++p) {
    proj[p] = SparseMat(sub.dim(p), full.dim(p));
    for (int r = 0; r < sub.dim(p); ++r) {
      const BasisLabel& want = sub.basis[p][r];
      for (int cidx = 0; cidx < full.dim(p); ++cidx) {
        const BasisLabel& have = full.basis[p][cidx];
        if (have.B == want.B && have.item == want.item) {
          proj[p].add(r, cidx, 1);
          break;
        }
      }
    }
  }
  for (int p = 0; p + 1 < full.degrees(); ++p) {
    SparseMat lhs = proj[p + 1].multiply(full.maps[p]);
    SparseMat rhs = sub.maps[p].multiply(proj[p]);
    SparseMat diff = lhs;
    for (int r = 0; r < rhs.rows; ++r)
      for (const auto& [cc, vv] : rhs.row[r]) diff.add(r, cc, -vv);
    if (!diff.is_zero()) throw Error(Errc::Mismatch, "restriction does not commute with d");
  }
  return proj;
}

std::vector<int> induced_cohomology_ranks(const ChainComplex& full, const ChainComplex& sub,
                                          const std::vector<SparseMat>& proj) {
  std::vector<int> out(full.degrees(), 0);
  for (int p = 0; p < full.degrees(); ++p) {
    auto kernel = dense_kernel(DenseMat::from_sparse(full.maps[p]));
    // Drop the part that is a coboundary upstream: rank of image in
    // H^p(sub) = rank(proj(ker) + im d_sub) - rank(im d_sub).
    std::vector<std::vector<Rat>> im_vecs;
    if (p > 0) {
      DenseMat dm = DenseMat::from_sparse(sub.maps[p - 1]);
      for (int cidx = 0; cidx < dm.cols; ++cidx) {
        std::vector<Rat> v(dm.rows);
        for (int r = 0; r < dm.rows; ++r) v[r] = dm.at(r, cidx);
        im_vecs.push_back(std::move(v));
      }
    }
    int base = rank_of_vectors(im_vecs, sub.dim(p));
    auto vecs = im_vecs;
    for (auto& k : kernel) {
      std::vector<Rat> v(sub.dim(p), 0);
      for (int r = 0; r < proj[p].rows; ++r)
        for (const auto& [cidx, val] : proj[p].row[r]) v[r] += val * k[cidx];
      vecs.push_back(std::move(v));
    }
    out[p] = rank_of_vectors(vecs, sub.dim(p)) - base;
  }
  return out;
}

std::vector<int> top_cohomology_basis(const GroupData& g) {
  const ParabolicView& full = g.full_view();
  std::vector<char> meets(full.classes().size(), 0);
  for (int v = 1; v <= g.rank(); ++v) {
    std::vector<int> rest;
    for (int u = 1; u <= g.rank(); ++u)
      if (u != v) rest.push_back(u);
    if (rest.empty() || !g.diagram().is_connected(rest)) continue;
    const ParabolicView& vb = g.view(rest);
    for (std::uint32_t e = 0; e < static_cast<std::uint32_t>(vb.size()); ++e)
      meets[full.class_of(full.local_of(vb.parent_of(e)))] = 1;
  }
  std::vector<int> out;
  for (size_t ci = 0; ci < full.classes().size(); ++ci)
    if (full.classes()[ci].epsilon_trivial && !meets[ci]) out.push_back(static_cast<int>(ci));
  return out;
}

std::string complex_to_json(const ChainComplex& c) {
  nlohmann::ordered_json j;
  j["direction"] = c.cohomological ? "cohomological" : "homological";
  j["min_degree"] = c.min_degree;
  nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
  for (int p = 0; p < c.degrees(); ++p) {
    nlohmann::ordered_json d;
    d["degree"] = c.min_degree + p;
    nlohmann::ordered_json lbls = nlohmann::ordered_json::array();
    for (const auto& l : c.basis[p]) lbls.push_back(l.text());
    d["basis"] = std::move(lbls);
    nlohmann::ordered_json trips = nlohmann::ordered_json::array();
    for (int r = 0; r < c.maps[p].rows; ++r)
      for (const auto& [col, v] : c.maps[p].row[r])
        trips.push_back({r, col, to_string(numerator(v)), to_string(denominator(v))});
    d["map"] = std::move(trips);
    degrees.push_back(std::move(d));
  }
  j["terms"] = std::move(degrees);
  return j.dump(2);
}

}  // namespace dyncoh
