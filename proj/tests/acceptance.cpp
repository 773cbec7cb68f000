// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run with --skip-e7 (or DYNCOH_SKIP_E7=1) to leave the long E7 row out.

#include "dyncoh/affine.hpp"
#include "dyncoh/cache.hpp"
#include "dyncoh/classical.hpp"
#include "dyncoh/complexes.hpp"
#include "dyncoh/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <set>
#include <sstream>

using namespace dyncoh;

namespace {

int g_failures = 0;
std::ostringstream g_detail;

#define REQ(cond, msg)                                          \
  do {                                                          \
    if (!(cond)) {                                              \
      ++g_failures;                                             \
      g_detail << "    FAILED: " << msg << " (" << __FILE__     \
               << ":" << __LINE__ << ")\n";                     \
    }                                                           \
  } while (0)

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int num, const char* name, int before, double secs) {
  bool pass = (g_failures == before);
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << num << ": " << name << "  ("
            << secs << " s)\n";
  if (!pass) {
    std::cout << g_detail.str();
    g_detail.str("");
  }
}

std::unique_ptr<GroupData> make(const std::string& label, long long cap = 300000) {
  GroupConfig cfg;
  cfg.size_cap = cap;
  return GroupData::build(CoxeterDiagram::from_label(label), cfg);
}

std::vector<int> hc_dims(const GroupData& g, int cls = -1) {
  return cohomology_dims(build_hc_complex(g, cls)).dims;
}

std::string dims_str(const std::vector<int>& d) {
  std::string s;
  for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s;
}

// ---------------------------------------------------------------------
// 1. Exceptional table rows, with the stated runtime budgets.
void criterion1() {
  int before = g_failures;
  Timer t;
  struct Row {
    const char* label;
    std::vector<int> expect;  // degrees 2..n
    double budget;
  };
  const Row rows[] = {
      {"G2", {2}, 5.0},          {"F4", {3, 0, 5}, 5.0},      {"H3", {3, 0}, 5.0},
      {"H4", {3, 0, 16}, 60.0},  {"E6", {1, 0, 2, 0, 4}, 900.0},
  };
  for (const auto& row : rows) {
    Timer rt;
    auto g = make(row.label);
    auto dims = hc_dims(*g);
    std::vector<int> got(dims.begin() + 2, dims.end());
    REQ(got == row.expect, std::string(row.label) + " row is " + dims_str(got));
    REQ(rt.secs() < row.budget, std::string(row.label) + " exceeded its runtime budget");
  }
  report(1, "exceptional table G2/F4/H3/H4/E6", before, t.secs());
}

// ---------------------------------------------------------------------
// 2. E7 behind the raised cap; E8 refused, its row shipped as reference
// data marked untested.
void criterion2(bool skip_e7) {
  int before = g_failures;
  Timer t;
  if (skip_e7) {
    std::cout << "[SKIP] criterion 2 E7 row (checking only the E8 policy)\n";
  } else {
    auto g = make("E7", 3200000);
    auto dims = hc_dims(*g);
    std::vector<int> got(dims.begin() + 2, dims.end());
    REQ(got == std::vector<int>({1, 0, 2, 0, 7, 0}), "E7 row is " + dims_str(got));
  }
  // E8 must be refused by the generic engine even with the raised cap.
  bool refused = false;
  Int required = 0;
  try {
    make("E8", 3200000);
  } catch (const Error& e) {
    refused = (e.code == Errc::CapExceeded);
    required = e.required;
  }
  REQ(refused, "E8 was not refused with a cap error");
  REQ(required == Int(696729600), "E8 refusal must report the required size");
  bool found = false;
  for (const auto& row : verify::exceptional_reference_table())
    if (std::string(row.label) == "E8") {
      found = true;
      REQ(row.dims == std::vector<int>({1, 0, 2, 0, 6, 1, 17}), "E8 reference row wrong");
      REQ(!row.engine_tested, "E8 reference row must be marked untested");
    }
  REQ(found, "E8 reference row missing");
  report(2, "E7 row (raised cap) and E8 reference policy", before, t.secs());
}

// ---------------------------------------------------------------------
// 3. Closed forms equal engine HC cohomology, with label-level bijection.
void criterion3() {
  int before = g_failures;
  Timer t;
  auto run = [&](Family f, const std::string& label, int n) {
    auto g = make(label);
    auto cf = hd_dims_closed_form(f, n);
    auto dims = hc_dims(*g);
    REQ(dims == cf.dims, label + ": engine " + dims_str(dims) + " vs closed " + dims_str(cf.dims));
    std::multiset<std::string> engine, formula;
    for (const auto& c : g->full_view().classes())
      if (c.epsilon_trivial) engine.insert(c.label.text());
    for (const auto& l : epsilon_trivial_labels(f, n)) formula.insert(l.text());
    REQ(engine == formula, label + ": eps-trivial label sets differ");
  };
  for (int n = 1; n <= 5; ++n) run(Family::A, "A" + std::to_string(n), n);
  for (int n = 2; n <= 4; ++n) run(Family::B, "B" + std::to_string(n), n);
  run(Family::D, "D4", 4);
  for (int m = 3; m <= 8; ++m) run(Family::I2, "I2(" + std::to_string(m) + ")", m);
  REQ(t.secs() < 60.0, "criterion 3 exceeded 60 s");
  report(3, "closed form vs engine (A<=5, B<=4, D4, I2<=8)", before, t.secs());
}

// ---------------------------------------------------------------------
// 4. Quasi-isomorphism: CD and HC cohomology agree, overall and per class.
void criterion4() {
  int before = g_failures;
  Timer t;
  for (const char* label : {"A2", "A3", "B2", "B3", "G2", "I2(5)", "I2(7)", "H3"}) {
    auto g = make(label);
    auto cd = cohomology_dims(build_dynkin_complex(*g));
    auto hc = cohomology_dims(build_hc_complex(*g));
    REQ(cd.dims == hc.dims, std::string(label) + ": CD " + dims_str(cd.dims) + " vs HC " +
                                dims_str(hc.dims));
    const auto& classes = g->full_view().classes();
    for (size_t c = 0; c < classes.size(); ++c) {
      auto cdc = cohomology_dims(build_dynkin_complex(*g, static_cast<int>(c)));
      auto hcc = cohomology_dims(build_hc_complex(*g, static_cast<int>(c)));
      REQ(cdc.dims == hcc.dims,
          std::string(label) + " class " + std::to_string(c) + ": per-class mismatch");
    }
  }
  REQ(t.secs() < 300.0, "criterion 4 exceeded 5 min");
  report(4, "quasi-isomorphism CD = HC, overall and per class", before, t.secs());
}

// ---------------------------------------------------------------------
// 5. Property suite: d o d = 0, sphere homology, Alt identities, fusion
// oracle, Euler characteristics.
void criterion5() {
  int before = g_failures;
  Timer t;

  // d o d = 0 for every built complex (rebuilt here, checked explicitly).
  for (const char* label : {"A2", "A3", "B2", "B3", "G2", "I2(5)", "H3"}) {
    auto g = make(label);
    build_dynkin_complex(*g).verify_square_zero();
    build_hc_complex(*g).verify_square_zero();
    build_coxeter_complex(g->full_view()).verify_square_zero();
  }

  // Coxeter complex of every finite W_B with |W_B| <= 1200 computes the
  // reduced shifted sphere homology (0, ..., 0, 1).
  for (const char* label :
       {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "G2", "H3", "F4", "I2(5)", "I2(7)",
        "I2(8)"}) {
    auto g = make(label);
    REQ(g->size() <= 1200, std::string(label) + " exceeds the sphere-check cap");
    auto h = cohomology_dims(build_coxeter_complex(g->full_view()));
    bool ok = h.dims.back() == 1;
    for (size_t p = 0; p + 1 < h.dims.size(); ++p) ok &= (h.dims[p] == 0);
    REQ(ok, std::string("CC(") + label + ") homology is " + dims_str(h.dims));
    REQ(h.euler_basis == h.euler_h, std::string(label) + ": Euler characteristics disagree");
  }

  // Alt idempotence and eps-equivariance on pseudo-random vectors.
  unsigned state = 2024;
  auto rnd = [&](unsigned mod) {
    state = state * 1103515245u + 12345u;
    return (state >> 16) % mod;
  };
  for (const char* label : {"A3", "B3"}) {
    auto g = make(label);
    const auto& full = g->full_view();
    for (int trial = 0; trial < 5; ++trial) {
      GroupVec v;
      for (int k = 0; k < 4; ++k)
        v[rnd(static_cast<unsigned>(g->size()))] += Rat(1 + static_cast<int>(rnd(5)), 1 + static_cast<int>(rnd(3)));
      GroupVec a = alt_project(full, v);
      REQ(alt_project(full, a) == a, std::string(label) + ": Alt not idempotent");
      for (int reps = 0; reps < 8; ++reps) {
        ElemId w = rnd(static_cast<unsigned>(g->size()));
        GroupVec moved;
        for (const auto& [e, c] : a) moved[g->mult(g->mult(w, e), g->inverse(w))] += c;
        GroupVec scaled = a;
        if (g->sign(w) < 0)
          for (auto& [e, c] : scaled) c = -c;
        REQ(moved == scaled, std::string(label) + ": Alt not eps-equivariant");
      }
    }
  }

  // Fusion coefficients match the Alt projection oracle on every inclusion
  // B inside B' with |W_B'| <= 10^4.
  for (const char* label : {"A3", "A4", "A5", "B3", "B4", "D4", "F4", "H3", "H4", "E6"}) {
    auto g = make(label);
    auto subs = connected_subdiagrams(g->diagram());
    for (const auto& sb : subs)
      for (const auto& sp : subs) {
        if (sb.verts == sp.verts || sp.size() != sb.size() + 1) continue;
        if (!std::includes(sp.verts.begin(), sp.verts.end(), sb.verts.begin(), sb.verts.end()))
          continue;
        const auto& vp = g->view(sp.verts);
        if (vp.size() > 10000) continue;
        const auto& vb = g->view(sb.verts);
        for (size_t ci = 0; ci < vb.classes().size(); ++ci) {
          GroupVec seed;
          seed[vb.parent_of(vb.classes()[ci].rep)] = 1;
          GroupVec oracle = alt_project(vp, seed);
          FusionResult f = fuse_class(vb, static_cast<int>(ci), vp);
          if (f.sign == 0) {
            REQ(oracle.empty(), std::string(label) + ": zero-marker vs nonzero oracle");
            continue;
          }
          GroupVec expect = alt_basis_vector(vp, f.target_class);
          for (auto& [e, c] : expect) c *= f.sign;
          REQ(oracle == expect, std::string(label) + ": fusion sign disagrees with the oracle");
        }
      }
  }

  // Euler characteristic consistency on CD.
  for (const char* label : {"A2", "A3", "B2", "B3", "I2(7)", "H3"}) {
    auto g = make(label);
    auto h = cohomology_dims(build_dynkin_complex(*g));
    REQ(h.euler_basis == h.euler_h, std::string(label) + ": CD Euler mismatch");
  }

  report(5, "property suite (d^2, spheres, Alt, fusion oracle, Euler)", before, t.secs());
}

// ---------------------------------------------------------------------
// 6. Generating functions match the closed forms for n, p <= 8.
void criterion6() {
  int before = g_failures;
  Timer t;
  for (char fam : {'A', 'B'}) {
    auto table = genfun_coeffs(fam, 8, 8);
    for (int n = (fam == 'A' ? 1 : 2); n <= 8; ++n) {
      auto cf = hd_dims_closed_form(fam == 'A' ? Family::A : Family::B, n);
      for (int p = 0; p <= 8; ++p) {
        long long want = p <= n ? cf.dims[p] : 0;
        REQ(table.coeff[n][p] == want, std::string("chi^") + fam + " at (" + std::to_string(n) +
                                           "," + std::to_string(p) + ")");
      }
    }
  }
  REQ(t.secs() < 1.0, "criterion 6 exceeded 1 s");
  report(6, "generating functions chi^A, chi^B", before, t.secs());
}

// ---------------------------------------------------------------------
// 7. Top cohomology basis size equals the HC dimension in top degree.
void criterion7() {
  int before = g_failures;
  Timer t;
  for (const char* label : {"A2", "A3", "B2", "B3", "G2", "I2(5)", "I2(7)", "H3", "A4", "A5"}) {
    auto g = make(label);
    auto dims = hc_dims(*g);
    REQ(static_cast<int>(top_cohomology_basis(*g).size()) == dims.back(),
        std::string(label) + ": top basis does not match HC top degree");
  }
  report(7, "top cohomology via cuspidal eps-trivial classes", before, t.secs());
}

// ---------------------------------------------------------------------
// 8. Stabilisation. For family A the closed forms agree for p <= m; for
// B and D the top degree p = m genuinely differs (the symmetric-group
// summand of HD^p needs p <= n-1: HD^4(B5) = 3 but HD^4(B4) = 2, matching
// the engine and chi^B), so the stable range there is p < m.
void criterion8() {
  int before = g_failures;
  Timer t;
  for (char fam : {'A', 'B', 'D'}) {
    Family f = fam == 'A' ? Family::A : (fam == 'B' ? Family::B : Family::D);
    int lo = fam == 'A' ? 1 : (fam == 'B' ? 2 : 3);
    for (int n = lo; n <= 8; ++n) {
      auto big = hd_dims_closed_form(f, n);
      for (int m = lo; m < n; ++m) {
        auto small = hd_dims_closed_form(f, m);
        int hi = (fam == 'A') ? m : m - 1;
        for (int p = 0; p <= hi; ++p)
          REQ(big.dims[p] == small.dims[p], std::string(1, fam) + std::to_string(n) + " vs " +
                                                std::to_string(m) + " at degree " +
                                                std::to_string(p));
      }
    }
  }
  // The B/D boundary values that pin the corrected range.
  REQ(hd_dims_closed_form(Family::B, 5).dims[4] == 3, "HD^4(B5)");
  REQ(hd_dims_closed_form(Family::B, 4).dims[4] == 2, "HD^4(B4)");

  // Restriction maps on engine cohomology for the A family, n <= 5:
  // rank of H^p(res) equals the stable dimension for p <= m.
  for (int n = 2; n <= 5; ++n) {
    auto g = make("A" + std::to_string(n));
    auto full = build_hc_complex(*g);
    for (int m = 1; m <= n; ++m) {
      std::vector<int> sub;
      for (int v = 1; v <= m; ++v) sub.push_back(v);
      auto hsub = build_hc_subcomplex(*g, sub);
      auto proj = restrict_hc(full, hsub);
      auto ranks = induced_cohomology_ranks(full, hsub, proj);
      auto want = hd_dims_closed_form(Family::A, m);
      for (int p = 0; p <= m; ++p)
        REQ(ranks[p] == want.dims[p], "A" + std::to_string(n) + " -> A" + std::to_string(m) +
                                          " restriction rank at degree " + std::to_string(p));
    }
  }
  report(8, "stabilisation (A: p <= m; B/D: p < m, boundary documented)", before, t.secs());
}

// ---------------------------------------------------------------------
// 9. Affine formulas.
void criterion9() {
  int before = g_failures;
  Timer t;
  {
    auto a = AffineData::build("A1");
    AffineClassRep rep;
    rep.t = {Int(1)};
    rep.v = a->w0().identity();
    rep.order_infinite = true;
    auto d = hd_dims_infinite_class(*a, rep);
    REQ(d[1] == 1 && d[2] == 1 && d[0] == 0, "affine A1 translation dims");
  }
  {
    auto a = AffineData::build("A2");
    AffineClassRep rep;
    rep.t = {Int(1), Int(0)};
    rep.v = a->w0().identity();
    rep.order_infinite = true;
    auto d = hd_dims_infinite_class(*a, rep);
    REQ(d[1] == 1 && d[2] == 2 && d[3] == 1, "affine A2 coroot translation dims");
  }
  for (const char* label : {"A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2"}) {
    auto a = AffineData::build(label);
    for (const auto& rep : class_representatives(*a, 3)) {
      if (!rep.order_infinite) continue;
      try {
        auto d = hd_dims_infinite_class(*a, rep);  // throws when non-integral
        for (const Int& x : d) REQ(x >= 0, std::string(label) + ": negative dimension");
      } catch (const Error& e) {
        REQ(false, std::string(label) + ": " + e.what());
      }
    }
  }
  REQ(t.secs() < 60.0, "criterion 9 exceeded 60 s");
  report(9, "affine infinite-order class dimensions", before, t.secs());
}

}  // namespace

int main(int argc, char** argv) {
  bool skip_e7 = std::getenv("DYNCOH_SKIP_E7") != nullptr;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--skip-e7") == 0) skip_e7 = true;

  Timer total;
  criterion1();
  criterion2(skip_e7);
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES")
            << "  (" << total.secs() << " s total)\n";
  return g_failures == 0 ? 0 : 1;
}
