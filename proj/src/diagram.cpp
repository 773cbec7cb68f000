#include "dyncoh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace dyncoh {

CoxeterDiagram::CoxeterDiagram(std::vector<std::vector<int>> coxeter_matrix, std::string name)
    : n_(static_cast<int>(coxeter_matrix.size())), mat_(std::move(coxeter_matrix)), name_(std::move(name)) {
  if (n_ == 0) throw Error(Errc::BadInput, "diagram: empty vertex set");
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(mat_[i].size()) != n_)
      throw Error(Errc::BadInput, "diagram: Coxeter matrix not square");
    if (mat_[i][i] != 1) throw Error(Errc::BadInput, "diagram: m_ii must be 1");
    for (int j = 0; j < n_; ++j) {
      if (mat_[i][j] != mat_[j][i]) throw Error(Errc::BadInput, "diagram: matrix not symmetric");
      if (i != j && mat_[i][j] != kInfinite && mat_[i][j] < 2)
        throw Error(Errc::BadInput, "diagram: off-diagonal m_ij must be >= 2 (or infinite)");
    }
  }
  if (!is_connected(all_vertices()))
    throw Error(Errc::BadInput, "diagram: underlying graph must be connected");
}

std::vector<int> CoxeterDiagram::all_vertices() const {
  std::vector<int> v(n_);
  for (int i = 0; i < n_; ++i) v[i] = i + 1;
  return v;
}

bool CoxeterDiagram::is_connected(const std::vector<int>& verts) const {
  return !verts.empty() && components(verts).size() == 1;
}

std::vector<std::vector<int>> CoxeterDiagram::components(const std::vector<int>& verts) const {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(n_ + 1, 0);
  std::vector<char> in_set(n_ + 1, 0);
  for (int v : verts) in_set[v] = 1;
  for (int v : verts) {
    if (seen[v]) continue;
    std::vector<int> comp, stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int y : verts)
        if (!seen[y] && adjacent(x, y)) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

std::string CoxeterDiagram::canonical_key() const {
  std::ostringstream os;
  os << n_;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) os << ',' << mat_[i][j];
  return os.str();
}

namespace {

std::vector<std::vector<int>> matrix_all2(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void set_edge(std::vector<std::vector<int>>& m, int i, int j, int v) {
  m[i - 1][j - 1] = v;
  m[j - 1][i - 1] = v;
}

// Finite Bourbaki diagrams; C_n shares the B_n Coxeter matrix.
std::vector<std::vector<int>> named_matrix(char fam, int rank, int m2) {
  auto m = matrix_all2(rank);
  auto path = [&](int upto) {
    for (int i = 1; i < upto; ++i) set_edge(m, i, i + 1, 3);
  };
  switch (fam) {
    case 'A':
      path(rank);
      break;
    case 'B':
    case 'C':
      if (rank < 2) throw Error(Errc::BadInput, "B/C rank must be >= 2");
      path(rank);
      set_edge(m, rank - 1, rank, 4);
      break;
    case 'D':
      if (rank < 3) throw Error(Errc::BadInput, "D rank must be >= 3");
      path(rank - 1);
      set_edge(m, rank - 2, rank, 3);
      break;
    case 'E':
      if (rank < 6 || rank > 8) throw Error(Errc::BadInput, "E rank must be 6, 7 or 8");
      set_edge(m, 1, 3, 3);
      set_edge(m, 2, 4, 3);
      for (int i = 3; i < rank; ++i) set_edge(m, i, i + 1, 3);
      break;
    case 'F':
      if (rank != 4) throw Error(Errc::BadInput, "F rank must be 4");
      path(4);
      set_edge(m, 2, 3, 4);
      break;
    case 'G':
      if (rank != 2) throw Error(Errc::BadInput, "G rank must be 2");
      set_edge(m, 1, 2, 6);
      break;
    case 'H':
      if (rank != 3 && rank != 4) throw Error(Errc::BadInput, "H rank must be 3 or 4");
      path(rank);
      set_edge(m, 1, 2, 5);
      break;
    case 'I':
      if (m2 < 3) throw Error(Errc::BadInput, "I2(m) needs m >= 3");
      set_edge(m, 1, 2, m2);
      break;
    default:
      throw Error(Errc::BadInput, std::string("unknown family ") + fam);
  }
  return m;
}

// Completed (affine) diagram of the finite crystallographic family; the
// affine vertex is ordered last.
std::vector<std::vector<int>> affine_matrix(char fam, int rank) {
  const int a = rank + 1;  // affine vertex
  if (fam == 'A' && rank == 1) {
    auto m = matrix_all2(2);
    set_edge(m, 1, 2, kInfinite);
    return m;
  }
  auto m = named_matrix(fam == 'C' ? 'B' : fam, rank, 0);
  for (auto& row : m) row.push_back(2);
  m.push_back(std::vector<int>(a, 2));
  m[a - 1][a - 1] = 1;
  switch (fam) {
    case 'A':
      set_edge(m, 1, a, 3);
      set_edge(m, rank, a, 3);
      break;
    case 'B':
      if (rank == 2)
        set_edge(m, 2, a, 4);
      else
        set_edge(m, 2, a, 3);
      break;
    case 'C':
      set_edge(m, 1, a, 4);
      break;
    case 'D':
      if (rank < 4) throw Error(Errc::BadInput, "affine D rank must be >= 4");
      set_edge(m, 2, a, 3);
      break;
    case 'E':
      set_edge(m, rank == 6 ? 2 : (rank == 7 ? 1 : 8), a, 3);
      break;
    case 'F':
      set_edge(m, 1, a, 3);
      break;
    case 'G':
      set_edge(m, 2, a, 3);
      break;
    default:
      throw Error(Errc::BadInput, "affine completion needs a crystallographic family");
  }
  return m;
}

}  // namespace

CoxeterDiagram CoxeterDiagram::from_label(const std::string& label) {
  std::string s = label;
  bool affine = false;
  if (s.rfind("affine-", 0) == 0) {
    affine = true;
    s = s.substr(7);
  }
  if (s.empty()) throw Error(Errc::BadInput, "empty diagram label");

  char fam = static_cast<char>(std::toupper(s[0]));
  int rank = 0, m2 = 0;
  if (fam == 'I') {
    // I2(m)
    size_t lp = s.find('('), rp = s.find(')');
    if (s.rfind("I2(", 0) != 0 || rp == std::string::npos)
      throw Error(Errc::BadInput, "bad I2 label: " + label);
    m2 = std::stoi(s.substr(lp + 1, rp - lp - 1));
    rank = 2;
  } else {
    try {
      rank = std::stoi(s.substr(1));
    } catch (...) {
      throw Error(Errc::BadInput, "bad diagram label: " + label);
    }
    if (rank < 1) throw Error(Errc::BadInput, "bad rank in label: " + label);
  }

  if (affine) {
    if (fam == 'H' || fam == 'I')
      throw Error(Errc::BadInput, "affine completion requires a crystallographic type: " + label);
    return CoxeterDiagram(affine_matrix(fam, rank), "affine-" + s);
  }
  return CoxeterDiagram(named_matrix(fam, rank, m2), s);
}

Subdiagram::Subdiagram(const CoxeterDiagram& d, std::vector<int> v) : parent(&d), verts(std::move(v)) {
  std::sort(verts.begin(), verts.end());
  for (int x : verts)
    if (x < 1 || x > d.rank()) throw Error(Errc::BadInput, "subdiagram: vertex out of range");
}

bool Subdiagram::contains(int v) const {
  return std::binary_search(verts.begin(), verts.end(), v);
}

std::vector<Subdiagram> connected_subdiagrams(const CoxeterDiagram& d) {
  const int n = d.rank();
  std::vector<std::vector<int>> found;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> verts;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) verts.push_back(i + 1);
    if (d.is_connected(verts)) found.push_back(std::move(verts));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Subdiagram> out;
  out.reserve(found.size());
  for (auto& v : found) out.emplace_back(d, std::move(v));
  return out;
}

Subdiagram component_containing(const Subdiagram& B, int removed, const std::vector<int>& target) {
  if (!B.contains(removed)) throw Error(Errc::BadInput, "component_containing: removed vertex not in B");
  std::vector<int> rest;
  for (int v : B.verts)
    if (v != removed) rest.push_back(v);
  for (int t : target)
    if (t == removed || !B.contains(t))
      throw Error(Errc::BadInput, "component_containing: target not inside B minus removed");
  auto comps = B.parent->components(rest);
  for (auto& c : comps) {
    bool all = true;
    for (int t : target)
      if (!std::binary_search(c.begin(), c.end(), t)) {
        all = false;
        break;
      }
    if (all && !target.empty()) return Subdiagram(*B.parent, c);
  }
  return Subdiagram();  // empty sentinel
}

int position_sign(const Subdiagram& bprime, int beta) {
  auto it = std::lower_bound(bprime.verts.begin(), bprime.verts.end(), beta);
  if (it == bprime.verts.end() || *it != beta)
    throw Error(Errc::BadInput, "position_sign: beta not in subdiagram");
  return static_cast<int>(it - bprime.verts.begin()) + 1;
}

bool are_orthogonal(const Subdiagram& b1, const Subdiagram& b2) {
  if (b1.parent != b2.parent) throw Error(Errc::BadInput, "are_orthogonal: different parents");
  for (int x : b1.verts)
    for (int y : b2.verts)
      if (x == y || b1.parent->adjacent(x, y)) return false;
  return true;
}

std::string DiagramType::label() const {
  std::ostringstream os;
  if (family == 'I')
    os << "I2(" << m2 << ")";
  else
    os << family << rank;
  return os.str();
}

Int coxeter_order(const DiagramType& t) {
  auto fact = [](int k) {
    Int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  switch (t.family) {
    case 'A':
      return fact(t.rank + 1);
    case 'B':
      return (Int(1) << t.rank) * fact(t.rank);
    case 'D':
      return (Int(1) << (t.rank - 1)) * fact(t.rank);
    case 'E':
      return t.rank == 6 ? Int(51840) : (t.rank == 7 ? Int(2903040) : Int(696729600));
    case 'F':
      return 1152;
    case 'G':
      return 12;
    case 'H':
      return t.rank == 3 ? Int(120) : Int(14400);
    case 'I':
      return 2 * t.m2;
    default:
      return 0;
  }
}

DiagramType classify(const CoxeterDiagram& d, const std::vector<int>& verts) {
  DiagramType t;
  t.rank = static_cast<int>(verts.size());
  if (!d.is_connected(verts)) return t;

  std::vector<std::pair<std::pair<int, int>, int>> edges;  // ((i,j), m)
  bool has_infinite = false;
  for (size_t a = 0; a < verts.size(); ++a)
    for (size_t b = a + 1; b < verts.size(); ++b) {
      int mv = d.m(verts[a], verts[b]);
      if (mv == kInfinite) has_infinite = true;
      if (mv >= 3 || mv == kInfinite) edges.push_back({{verts[a], verts[b]}, mv});
    }

  if (t.rank == 1) {
    t.family = 'A';
    t.finite = true;
    t.order = coxeter_order(t);
    return t;
  }
  if (has_infinite) return t;

  if (t.rank == 2) {
    int mv = edges[0].second;
    t.m2 = mv;
    t.family = (mv == 3) ? 'A' : (mv == 4 ? 'B' : (mv == 6 ? 'G' : 'I'));
    if (t.family != 'I') t.m2 = 0;
    t.finite = true;
    t.order = 2 * mv;
    return t;
  }

  // A tree with at most one trivalent node is required from rank 3 on.
  if (static_cast<int>(edges.size()) != t.rank - 1) return t;
  std::map<int, int> deg;
  for (auto& e : edges) {
    ++deg[e.first.first];
    ++deg[e.first.second];
  }
  int forks = 0, fork_vertex = 0;
  for (auto& [v, dg] : deg) {
    if (dg >= 4) return t;
    if (dg == 3) {
      ++forks;
      fork_vertex = v;
    }
  }
  if (forks > 1) return t;

  auto neighbours = [&](int v) {
    std::vector<int> out;
    for (auto& e : edges) {
      if (e.first.first == v) out.push_back(e.first.second);
      if (e.first.second == v) out.push_back(e.first.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  if (forks == 1) {
    // All single bonds, arms (1,1,k) -> D; (1,2,2|3|4) -> E6/E7/E8.
    for (auto& e : edges)
      if (e.second != 3) return t;
    std::vector<int> arms;
    for (int nb : neighbours(fork_vertex)) {
      int len = 1, prev = fork_vertex, cur = nb;
      for (;;) {
        int next = -1;
        for (int x : neighbours(cur))
          if (x != prev) next = x;
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      t.family = 'D';
      t.finite = true;
    } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
      t.family = 'E';
      t.finite = true;
    } else {
      return t;
    }
    t.order = coxeter_order(t);
    return t;
  }

  // A path; read the bond labels end to end (endpoints have degree 1).
  int end = 0;
  for (auto& [v, dg] : deg)
    if (dg == 1 && end == 0) end = v;
  std::vector<int> order{end};
  std::vector<int> labels;
  int prev = -1, cur = end;
  while (static_cast<int>(order.size()) < t.rank) {
    int next = -1;
    for (int nb : neighbours(cur))
      if (nb != prev) next = nb;
    labels.push_back(d.m(cur, next));
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  int n3 = 0, n4 = 0, n5 = 0, other = 0;
  for (int l : labels) (l == 3 ? n3 : l == 4 ? n4 : l == 5 ? n5 : other) += 1;
  if (other > 0) return t;
  if (n4 == 0 && n5 == 0) {
    t.family = 'A';
    t.finite = true;
  } else if (n4 == 1 && n5 == 0) {
    if (labels.front() == 4 || labels.back() == 4) {
      t.family = 'B';
      t.finite = true;
    } else if (t.rank == 4 && labels[1] == 4) {
      t.family = 'F';
      t.finite = true;
    } else {
      return t;
    }
  } else if (n5 == 1 && n4 == 0 && t.rank <= 4 && (labels.front() == 5 || labels.back() == 5)) {
    t.family = 'H';
    t.finite = true;
  } else {
    return t;
  }
  t.order = coxeter_order(t);
  return t;
}

DiagramType classify(const CoxeterDiagram& d) { return classify(d, d.all_vertices()); }

}  // namespace dyncoh
