#include "dyncoh/group.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>

namespace dyncoh {

namespace {

bool is_bourbaki(const CoxeterDiagram& d, char fam, int n) {
  auto want = [&](int i, int j) -> int {
    if (fam == 'A') return j == i + 1 ? 3 : 2;
    if (fam == 'B') return j == i + 1 ? (j == n ? 4 : 3) : 2;
    if (fam == 'D') {
      if (j == i + 1 && j <= n - 1) return 3;
      if (i == n - 2 && j == n) return 3;
      return 2;
    }
    return -1;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (d.m(i, j) != want(i, j)) return false;
  return true;
}

// Cartan matrix read off the Coxeter matrix; on a multiple bond the larger
// vertex takes the short root, matching Bourbaki for B_n and F4.
std::vector<std::vector<int>> cartan_from_coxeter(const CoxeterDiagram& d) {
  const int n = d.rank();
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 1; i <= n; ++i) {
    c[i - 1][i - 1] = 2;
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      int m = d.m(i, j);
      if (m == 2) continue;
      if (m == 3)
        c[i - 1][j - 1] = -1;
      else if (m == 4 || m == 6)
        c[i - 1][j - 1] = (i > j) ? -(m / 2) : -1;
      else
        throw Error(Errc::NotFiniteType, "non-crystallographic bond m=" + std::to_string(m));
    }
  }
  return c;
}

long long expected_root_count(const DiagramType& t) {
  switch (t.family) {
    case 'A':
      return static_cast<long long>(t.rank) * (t.rank + 1);
    case 'B':
      return 2LL * t.rank * t.rank;
    case 'D':
      return 2LL * t.rank * (t.rank - 1);
    case 'E':
      return t.rank == 6 ? 72 : (t.rank == 7 ? 126 : 240);
    case 'F':
      return 48;
    case 'G':
      return 12;
    case 'H':
      return t.rank == 3 ? 30 : 120;
    case 'I':
      return 2LL * t.m2;
    default:
      return -1;
  }
}

}  // namespace

// Signed-permutation frame for Bourbaki-ordered classical diagrams.
void GroupData::init_classical_frame() {
  const int n = diagram_.rank();
  char fam = (type_.family == 'A' || type_.family == 'B' || type_.family == 'D') ? type_.family : 0;
  if (fam == 'D' && type_.rank < 4) fam = 0;  // D3 carries no Bourbaki-IV frame
  if (!fam || !is_bourbaki(diagram_, fam, n)) return;
  classical_family_ = fam;
  edim_ = (fam == 'A') ? n + 1 : n;
  e_of_simple_.assign(edim_, std::vector<Rat>(n, 0));
  for (int j = 1; j <= n; ++j) {
    if (fam == 'A') {
      e_of_simple_[j - 1][j - 1] = 1;
      e_of_simple_[j][j - 1] = -1;
    } else if (fam == 'B') {
      e_of_simple_[j - 1][j - 1] = 1;
      if (j < n) e_of_simple_[j][j - 1] = -1;
    } else {  // D
      if (j <= n - 1) {
        e_of_simple_[j - 1][j - 1] = 1;
        e_of_simple_[j][j - 1] = -1;
      } else {
        e_of_simple_[n - 2][j - 1] = 1;
        e_of_simple_[n - 1][j - 1] = 1;
      }
    }
  }
}

std::unique_ptr<GroupData> GroupData::build(const CoxeterDiagram& d, const GroupConfig& cfg) {
  DiagramType t = classify(d);
  if (!t.finite)
    throw Error(Errc::NotFiniteType, "diagram " + (d.name().empty() ? d.canonical_key() : d.name()) +
                                         " is not of finite type");
  if (t.order > cfg.size_cap)
    throw Error(Errc::CapExceeded,
                "group order " + to_string(t.order) + " exceeds cap " + std::to_string(cfg.size_cap),
                t.order);

  auto g = std::unique_ptr<GroupData>(new GroupData());
  g->diagram_ = d;
  g->type_ = t;
  const int n = d.rank();

  if (t.family == 'I') {
    // Dihedral backend: roots are the 2m directions, indexed mod 2m.
    const int m = t.m2;
    if (m > 127) throw Error(Errc::CapExceeded, "I2(m) supported for m <= 127", Int(2 * m));
    const int R = 2 * m;
    g->nroots_ = R;
    g->simple_root_ = {0, m - 1};
    g->gen_perm_.assign(2, std::vector<int>(R));
    for (int j = 0; j < R; ++j) {
      g->gen_perm_[0][j] = ((m - j) % R + R) % R;
      g->gen_perm_[1][j] = ((m - 2 - j) % R + R) % R;
    }
    for (int j = 0; j < R; ++j) g->root_str_.push_back("d" + std::to_string(j));
  } else if (t.family == 'H') {
    // Q(sqrt5) backend via the standard bilinear form -cos(pi/m_ij).
    std::vector<std::vector<QuadQ5>> B(n, std::vector<QuadQ5>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int m = d.m(i + 1, j + 1);
        if (i == j)
          B[i][j] = QuadQ5(1);
        else if (m == 2)
          B[i][j] = QuadQ5(0);
        else if (m == 3)
          B[i][j] = QuadQ5(Rat(-1, 2));
        else if (m == 5)
          B[i][j] = QuadQ5(Rat(-1, 4), Rat(-1, 4));  // -cos(pi/5)
        else
          throw Error(Errc::NotFiniteType, "unexpected bond in H realization");
      }
    auto reflect = [&](int i, std::vector<QuadQ5> v) {
      QuadQ5 acc(0);
      for (int j = 0; j < n; ++j) acc = acc + B[i][j] * v[j];
      v[i] = v[i] - QuadQ5(2) * acc;
      return v;
    };
    std::map<std::vector<std::pair<Rat, Rat>>, int> lookup;
    std::vector<std::vector<QuadQ5>> roots;
    auto keyed = [&](const std::vector<QuadQ5>& v) {
      std::vector<std::pair<Rat, Rat>> k;
      for (const auto& q : v) k.emplace_back(q.a, q.b);
      return k;
    };
    auto add = [&](const std::vector<QuadQ5>& v) {
      auto k = keyed(v);
      auto it = lookup.find(k);
      if (it != lookup.end()) return it->second;
      int id = static_cast<int>(roots.size());
      lookup[k] = id;
      roots.push_back(v);
      return id;
    };
    for (int i = 0; i < n; ++i) {
      std::vector<QuadQ5> v(n, QuadQ5(0)), w(n, QuadQ5(0));
      v[i] = QuadQ5(1);
      w[i] = QuadQ5(-1);
      add(v);
      add(w);
    }
    for (size_t h = 0; h < roots.size(); ++h)
      for (int i = 0; i < n; ++i) add(reflect(i, roots[h]));
    const int R = static_cast<int>(roots.size());
    if (R != expected_root_count(t)) throw Error(Errc::Mismatch, "H root closure has wrong size");
    g->nroots_ = R;
    g->simple_root_.resize(n);
    for (int i = 0; i < n; ++i) {
      std::vector<QuadQ5> v(n, QuadQ5(0));
      v[i] = QuadQ5(1);
      g->simple_root_[i] = lookup.at(keyed(v));
    }
    g->gen_perm_.assign(n, std::vector<int>(R));
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < R; ++r) g->gen_perm_[i][r] = lookup.at(keyed(reflect(i, roots[r])));
    for (int r = 0; r < R; ++r) {
      std::string s = "(";
      for (int j = 0; j < n; ++j) s += (j ? "," : "") + roots[r][j].str();
      g->root_str_.push_back(s + ")");
    }
  } else {
    // Crystallographic backend: integer root coordinates in the simple basis.
    auto cart = cartan_from_coxeter(d);
    auto reflect = [&](int i, std::vector<int> v) {
      long long acc = 0;
      for (int j = 0; j < n; ++j) acc += static_cast<long long>(cart[i][j]) * v[j];
      v[i] -= static_cast<int>(acc);
      return v;
    };
    std::vector<std::vector<int>>& roots = g->root_coords_;
    auto add = [&](const std::vector<int>& v) {
      auto it = g->root_lookup_.find(v);
      if (it != g->root_lookup_.end()) return it->second;
      int id = static_cast<int>(roots.size());
      g->root_lookup_[v] = id;
      roots.push_back(v);
      return id;
    };
    for (int i = 0; i < n; ++i) {
      std::vector<int> v(n, 0), w(n, 0);
      v[i] = 1;
      w[i] = -1;
      add(v);
      add(w);
    }
    for (size_t h = 0; h < roots.size(); ++h)
      for (int i = 0; i < n; ++i) add(reflect(i, roots[h]));
    const int R = static_cast<int>(roots.size());
    if (R != expected_root_count(t)) throw Error(Errc::Mismatch, "root closure has wrong size");
    g->nroots_ = R;
    g->simple_root_.resize(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> v(n, 0);
      v[i] = 1;
      g->simple_root_[i] = g->root_lookup_.at(v);
    }
    g->gen_perm_.assign(n, std::vector<int>(R));
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < R; ++r) g->gen_perm_[i][r] = g->root_lookup_.at(reflect(i, roots[r]));
    for (int r = 0; r < R; ++r) {
      std::string s = "(";
      for (int j = 0; j < n; ++j) s += (j ? "," : "") + std::to_string(roots[r][j]);
      g->root_str_.push_back(s + ")");
    }

    g->init_classical_frame();
  }

  if (g->nroots_ > 255) throw Error(Errc::CapExceeded, "root set too large for the engine", Int(g->nroots_));
  long long expected = static_cast<long long>(t.order);
  g->enumerate(expected, cfg.size_cap);
  return g;
}

std::unique_ptr<GroupData> GroupData::build_from_backend(const CoxeterDiagram& d, RawBackend raw,
                                                         const GroupConfig& cfg) {
  DiagramType t = classify(d);
  if (!t.finite) throw Error(Errc::NotFiniteType, "cached diagram is not of finite type");
  if (t.order > cfg.size_cap)
    throw Error(Errc::CapExceeded, "group order exceeds cap", t.order);
  const int n = d.rank();
  if (raw.nroots <= 0 || raw.nroots > 255 || static_cast<int>(raw.simple_root.size()) != n ||
      static_cast<int>(raw.gen_perm.size()) != n ||
      static_cast<int>(raw.root_str.size()) != raw.nroots)
    throw Error(Errc::BadInput, "cached backend data is inconsistent");
  for (const auto& p : raw.gen_perm)
    if (static_cast<int>(p.size()) != raw.nroots)
      throw Error(Errc::BadInput, "cached generator permutation has wrong size");

  auto g = std::unique_ptr<GroupData>(new GroupData());
  g->diagram_ = d;
  g->type_ = t;
  g->nroots_ = raw.nroots;
  g->simple_root_ = std::move(raw.simple_root);
  g->gen_perm_ = std::move(raw.gen_perm);
  g->root_str_ = std::move(raw.root_str);

  // Crystallographic coordinates are recovered from the printed roots so
  // the signed-permutation machinery keeps working after a cache load.
  if (!g->root_str_.empty() && g->root_str_[0].size() > 1 && g->root_str_[0][0] == '(') {
    for (int r = 0; r < g->nroots_; ++r) {
      std::vector<int> coords;
      const std::string& s = g->root_str_[r];
      size_t i = 1;
      bool ok = true;
      while (i < s.size() && s[i] != ')') {
        size_t j = i;
        while (j < s.size() && s[j] != ',' && s[j] != ')') ++j;
        try {
          std::string tok = s.substr(i, j - i);
          size_t used = 0;
          int val = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);  // H roots: "1/2", "r5"
          coords.push_back(val);
        } catch (...) {
          ok = false;
          break;
        }
        i = (j < s.size() && s[j] == ',') ? j + 1 : j;
      }
      if (!ok || static_cast<int>(coords.size()) != n) {
        g->root_coords_.clear();
        g->root_lookup_.clear();
        break;
      }
      g->root_lookup_[coords] = r;
      g->root_coords_.push_back(std::move(coords));
    }
    if (!g->root_coords_.empty()) g->init_classical_frame();
  }

  g->enumerate(static_cast<long long>(t.order), cfg.size_cap);
  return g;
}

std::uint64_t GroupData::elem_key(ElemId a) const {
  const std::uint8_t* p = perm_.data() + static_cast<size_t>(a) * nroots_;
  std::uint64_t k = 0;
  for (size_t j = 0; j < simple_root_.size(); ++j) k = (k << 8) | p[simple_root_[j]];
  return k;
}

ElemId GroupData::lookup_key(std::uint64_t key) const {
  auto it = std::lower_bound(key_index_.begin(), key_index_.end(), key,
                             [](const auto& e, std::uint64_t k) { return e.first < k; });
  if (it == key_index_.end() || it->first != key) return kNoElem;
  return it->second;
}

void GroupData::enumerate(long long expected, long long cap) {
  const int R = nroots_;
  const int n = rank();

  std::unordered_map<std::uint64_t, ElemId> seen;
  seen.reserve(static_cast<size_t>(expected) * 2);

  if (expected > 0) perm_.reserve(static_cast<size_t>(expected) * R);
  perm_.resize(R);
  for (int r = 0; r < R; ++r) perm_[r] = static_cast<std::uint8_t>(r);
  length_.push_back(0);
  count_ = 1;
  seen.emplace(elem_key(0), 0);

  for (ElemId cur = 0; cur < count_; ++cur) {
    for (int v = 0; v < n; ++v) {
      const std::uint8_t* pc = perm_.data() + static_cast<size_t>(cur) * R;
      const auto& gp = gen_perm_[v];
      std::uint64_t k = 0;
      for (int j = 0; j < n; ++j) k = (k << 8) | pc[gp[simple_root_[j]]];
      auto [it, fresh] = seen.emplace(k, static_cast<ElemId>(count_));
      if (!fresh) continue;
      if (static_cast<long long>(count_) >= cap)
        throw Error(Errc::CapExceeded, "enumeration exceeded the group size cap", Int(cap) + 1);
      perm_.resize(perm_.size() + R);
      std::uint8_t* pn = perm_.data() + count_ * static_cast<size_t>(R);
      const std::uint8_t* pc2 = perm_.data() + static_cast<size_t>(cur) * R;  // after resize
      for (int r = 0; r < R; ++r) pn[r] = pc2[gp[r]];
      length_.push_back(static_cast<std::uint16_t>(length_[cur] + 1));
      ++count_;
    }
  }
  if (expected >= 0 && static_cast<long long>(count_) != expected)
    throw Error(Errc::Mismatch, "group enumeration size mismatch");

  key_index_.reserve(count_);
  for (auto& [k, id] : seen) key_index_.emplace_back(k, id);
  std::sort(key_index_.begin(), key_index_.end());

  gens_.resize(n);
  for (int v = 0; v < n; ++v) {
    std::uint64_t k = 0;
    for (int j = 0; j < n; ++j) k = (k << 8) | gen_perm_[v][simple_root_[j]];
    gens_[v] = lookup_key(k);
  }

  inv_.resize(count_);
  std::vector<int> ip(R);
  for (ElemId a = 0; a < count_; ++a) {
    const std::uint8_t* p = perm_.data() + static_cast<size_t>(a) * R;
    for (int r = 0; r < R; ++r) ip[p[r]] = r;
    std::uint64_t k = 0;
    for (int j = 0; j < n; ++j) k = (k << 8) | static_cast<std::uint8_t>(ip[simple_root_[j]]);
    inv_[a] = lookup_key(k);
  }
}

ElemId GroupData::mult(ElemId a, ElemId b) const {
  const std::uint8_t* pa = perm_.data() + static_cast<size_t>(a) * nroots_;
  const std::uint8_t* pb = perm_.data() + static_cast<size_t>(b) * nroots_;
  std::uint64_t k = 0;
  for (size_t j = 0; j < simple_root_.size(); ++j) k = (k << 8) | pa[pb[simple_root_[j]]];
  return lookup_key(k);
}

ElemId GroupData::conj_by_gen(int vertex, ElemId x) const {
  const auto& gp = gen_perm_[vertex - 1];
  const std::uint8_t* px = perm_.data() + static_cast<size_t>(x) * nroots_;
  std::uint64_t k = 0;
  for (size_t j = 0; j < simple_root_.size(); ++j) k = (k << 8) | gp[px[gp[simple_root_[j]]]];
  return lookup_key(k);
}

int GroupData::element_order(ElemId a) const {
  int o = 1;
  ElemId x = a;
  while (x != 0) {
    x = mult(x, a);
    ++o;
  }
  return o;
}

ElemId GroupData::word_to_elem(const std::vector<int>& vertices) const {
  ElemId x = 0;
  for (int v : vertices) x = mult(x, gens_[v - 1]);
  return x;
}

std::vector<int> GroupData::lex_min_word(ElemId a) const {
  std::vector<int> out;
  while (a != 0) {
    for (int v = 1; v <= rank(); ++v) {
      ElemId b = mult(gens_[v - 1], a);
      if (length_[b] < length_[a]) {
        out.push_back(v);
        a = b;
        break;
      }
    }
  }
  return out;
}

int GroupData::find_root(const std::vector<int>& coords) const {
  auto it = root_lookup_.find(coords);
  return it == root_lookup_.end() ? -1 : it->second;
}

ElemId GroupData::elem_from_simple_images(const std::vector<int>& root_indices) const {
  std::uint64_t k = 0;
  for (int r : root_indices) k = (k << 8) | static_cast<std::uint8_t>(r);
  return lookup_key(k);
}

std::vector<std::string> GroupData::root_strings() const { return root_str_; }

std::vector<std::vector<int>> GroupData::generator_perms() const { return gen_perm_; }

std::uint32_t ParabolicView::local_of(ElemId parent) const {
  auto it = std::lower_bound(idx_.begin(), idx_.end(), parent,
                             [](const auto& e, ElemId p) { return e.first < p; });
  if (it == idx_.end() || it->first != parent) return kNoLocal;
  return it->second;
}

int ParabolicView::sign_space_dim() const {
  int d = 0;
  for (const auto& c : classes_)
    if (c.epsilon_trivial) ++d;
  return d;
}

std::vector<int> ParabolicView::lex_min_word(std::uint32_t local) const {
  std::vector<int> out;
  std::uint32_t cur = local;
  while (length_[cur] > 0) {
    for (int v : verts_) {
      ElemId b = group_->mult(group_->generator(v), elems_[cur]);
      std::uint32_t bl = local_of(b);
      if (bl != kNoLocal && length_[bl] < length_[cur]) {
        out.push_back(v);
        cur = bl;
        break;
      }
    }
  }
  return out;
}

const ParabolicView& GroupData::view(const std::vector<int>& verts) const {
  std::vector<int> key = verts;
  std::sort(key.begin(), key.end());
  std::lock_guard<std::mutex> lock(view_mutex_);
  auto it = views_.find(key);
  if (it != views_.end()) return *it->second;
  auto v = std::make_unique<ParabolicView>();
  build_view(*v, key);
  auto* ptr = v.get();
  views_.emplace(std::move(key), std::move(v));
  return *ptr;
}

void GroupData::build_view(ParabolicView& v, const std::vector<int>& verts) const {
  v.group_ = this;
  v.verts_ = verts;

  if (static_cast<int>(verts.size()) == rank()) {
    // The full view is the identity enumeration.
    v.elems_.resize(count_);
    v.idx_.reserve(count_);
    for (std::uint32_t i = 0; i < count_; ++i) {
      v.elems_[i] = i;
      v.idx_.emplace_back(i, i);
    }
    v.length_ = length_;
  } else {
    std::unordered_map<ElemId, std::uint32_t> seen;
    v.elems_.push_back(0);
    v.length_.push_back(0);
    seen.emplace(0, 0);
    for (std::uint32_t cur = 0; cur < v.elems_.size(); ++cur) {
      for (int vert : verts) {
        ElemId next = mult(v.elems_[cur], gens_[vert - 1]);
        auto [it, fresh] = seen.emplace(next, static_cast<std::uint32_t>(v.elems_.size()));
        if (!fresh) continue;
        v.elems_.push_back(next);
        v.length_.push_back(static_cast<std::uint16_t>(v.length_[cur] + 1));
      }
    }
    v.idx_.reserve(v.elems_.size());
    for (std::uint32_t i = 0; i < v.elems_.size(); ++i) v.idx_.emplace_back(v.elems_[i], i);
    std::sort(v.idx_.begin(), v.idx_.end());
  }

  // Conjugacy classes by BFS under conjugation by the generators of B,
  // tracking the sign of the conjugator from the class seed (Schreier
  // generators of the centralizer all have sign +1 iff the class is
  // epsilon-trivial).
  const std::uint32_t N = static_cast<std::uint32_t>(v.elems_.size());
  v.class_of_.assign(N, ParabolicView::kNoLocal);
  v.trans_sign_.assign(N, 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t seed = 0; seed < N; ++seed) {
    if (v.class_of_[seed] != ParabolicView::kNoLocal) continue;
    const auto cid = static_cast<std::uint32_t>(v.classes_.size());
    bool eps_trivial = true;
    queue.clear();
    queue.push_back(seed);
    v.class_of_[seed] = cid;
    v.trans_sign_[seed] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      std::uint32_t x = queue[qi];
      for (int vert : verts) {
        ElemId yp = conj_by_gen(vert, v.elems_[x]);
        std::uint32_t y = v.local_of(yp);
        if (v.class_of_[y] == ParabolicView::kNoLocal) {
          v.class_of_[y] = cid;
          v.trans_sign_[y] = static_cast<std::int8_t>(-v.trans_sign_[x]);
          queue.push_back(y);
        } else if (v.trans_sign_[y] != -v.trans_sign_[x]) {
          eps_trivial = false;
        }
      }
    }
    ConjClass c;
    c.rep = seed;
    c.size = static_cast<long long>(queue.size());
    c.centralizer_order = static_cast<long long>(N) / c.size;
    c.epsilon_trivial = eps_trivial;
    v.classes_.push_back(std::move(c));
  }
  attach_labels(*this, v);
}

FusionResult fuse_class(const ParabolicView& sub, int class_id, const ParabolicView& super) {
  for (int vert : sub.vertices()) {
    bool found = false;
    for (int w : super.vertices()) found |= (w == vert);
    if (!found) throw Error(Errc::BadInput, "fuse_class: B not contained in B'");
  }
  ElemId rep = sub.parent_of(sub.classes()[class_id].rep);
  std::uint32_t loc = super.local_of(rep);
  if (loc == ParabolicView::kNoLocal) throw Error(Errc::BadInput, "fuse_class: representative outside B'");
  FusionResult r;
  r.target_class = static_cast<int>(super.class_of(loc));
  r.sign = super.classes()[r.target_class].epsilon_trivial ? super.trans_sign(loc) : 0;
  return r;
}

GroupVec alt_project(const ParabolicView& v, const GroupVec& vec) {
  const GroupData& g = v.group();
  for (const auto& [e, c] : vec)
    if (v.local_of(e) == ParabolicView::kNoLocal)
      throw Error(Errc::BadInput, "alt_project: support outside W_B");
  GroupVec acc;
  const long long n = v.size();
  for (std::uint32_t w = 0; w < static_cast<std::uint32_t>(n); ++w) {
    ElemId wp = v.parent_of(w);
    ElemId wi = g.inverse(wp);
    int s = v.sign(w);
    for (const auto& [e, c] : vec) {
      ElemId target = g.mult(g.mult(wp, e), wi);
      acc[target] += (s > 0 ? c : -c);
    }
  }
  GroupVec out;
  for (auto& [e, c] : acc) {
    c /= n;
    if (c != 0) out.emplace(e, std::move(c));
  }
  return out;
}

GroupVec alt_basis_vector(const ParabolicView& v, int class_id) {
  GroupVec seed;
  seed[v.parent_of(v.classes()[class_id].rep)] = 1;
  return alt_project(v, seed);
}

int sign_space_dim(const ParabolicView& v) { return v.sign_space_dim(); }

}  // namespace dyncoh
