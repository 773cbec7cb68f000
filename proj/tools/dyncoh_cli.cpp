#include "dyncoh/affine.hpp"
#include "dyncoh/cache.hpp"
#include "dyncoh/classical.hpp"
#include "dyncoh/complexes.hpp"
#include "dyncoh/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

using namespace dyncoh;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  std::string format = "text";
  std::string cache_dir = ".dyncoh-cache";
  int parallelism = 1;
  bool allow_large = false;

  long long group_cap() const { return allow_large ? 3200000LL : 300000LL; }
};

int exit_code_for(const Error& e) {
  switch (e.code) {
    case Errc::CapExceeded:
      return 2;
    case Errc::Mismatch:
      return 3;
    default:
      return 1;
  }
}

std::string resolve_label(const std::string& type, int rank) {
  if (rank > 0) {
    if (type == "I2" || type == "I") return "I2(" + std::to_string(rank) + ")";
    return type + std::to_string(rank);
  }
  return type;
}

CoxeterDiagram diagram_from_args(const std::string& type, int rank, const std::string& matrix) {
  if (!matrix.empty()) {
    std::string text = matrix;
    if (matrix[0] == '@') {
      std::ifstream in(matrix.substr(1));
      if (!in) throw Error(Errc::BadInput, "cannot read matrix file " + matrix.substr(1));
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw Error(Errc::BadInput, std::string("bad matrix JSON: ") + e.what());
    }
    auto m = j.at("m").get<std::vector<std::vector<int>>>();
    return CoxeterDiagram(m, j.value("name", std::string("custom")));
  }
  if (type.empty()) throw Error(Errc::BadInput, "one of --type or --matrix is required");
  return CoxeterDiagram::from_label(resolve_label(type, rank));
}

std::unique_ptr<GroupData> obtain_group(const CoxeterDiagram& d, const GlobalOpts& g, bool* cache_hit) {
  GroupConfig cfg;
  cfg.size_cap = g.group_cap();
  if (!g.cache_dir.empty()) {
    if (auto cached = cache_load(d, g.cache_dir, cfg)) {
      if (cache_hit) *cache_hit = true;
      return cached;
    }
  }
  auto built = GroupData::build(d, cfg);
  if (!g.cache_dir.empty()) cache_store(*built, g.cache_dir);
  if (cache_hit) *cache_hit = false;
  return built;
}

std::optional<Family> classical_family_of_label(const std::string& label, int* m_out) {
  if (label.rfind("I2(", 0) == 0) {
    *m_out = std::stoi(label.substr(3, label.size() - 4));
    return Family::I2;
  }
  char f = label.empty() ? '?' : label[0];
  if (f != 'A' && f != 'B' && f != 'D') return std::nullopt;
  try {
    *m_out = std::stoi(label.substr(1));
  } catch (...) {
    return std::nullopt;
  }
  return f == 'A' ? Family::A : (f == 'B' ? Family::B : Family::D);
}

// ---------------------------------------------------------------- hd ----

struct HdArgs {
  std::string type, matrix, method = "engine", dump_complex;
  int rank = 0;
  bool per_class = false;
};

int cmd_hd(const GlobalOpts& g, const HdArgs& args) {
  auto t0 = std::chrono::steady_clock::now();
  CoxeterDiagram d = diagram_from_args(args.type, args.rank, args.matrix);
  std::string label = d.name().empty() ? d.canonical_key() : d.name();

  std::optional<std::vector<int>> engine_dims;
  std::optional<std::vector<int>> formula_dims;
  std::vector<std::tuple<std::string, int, int>> per_class_rows;  // label, degree, dim
  bool cache_hit = false;
  long long order = 0;

  if (args.method == "engine" || args.method == "both") {
    auto grp = obtain_group(d, g, &cache_hit);
    order = grp->size();
    auto hc = build_hc_complex(*grp);
    engine_dims = cohomology_dims(hc).dims;
    if (!args.dump_complex.empty()) {
      std::ofstream out(args.dump_complex);
      out << complex_to_json(hc);
    }
    if (args.per_class) {
      const auto& classes = grp->full_view().classes();
      for (size_t c = 0; c < classes.size(); ++c) {
        auto dims = cohomology_dims(build_hc_complex(*grp, static_cast<int>(c))).dims;
        for (size_t p = 0; p < dims.size(); ++p)
          if (dims[p] != 0)
            per_class_rows.emplace_back(classes[c].label.text(), static_cast<int>(p), dims[p]);
      }
    }
  }
  if (args.method == "combinatorial" || args.method == "both") {
    int n = 0;
    auto fam = classical_family_of_label(resolve_label(args.type, args.rank), &n);
    if (!fam)
      throw Error(Errc::BadInput, "--method combinatorial needs a classical family label (A/B/D/I2)");
    formula_dims = hd_dims_closed_form(*fam, n).dims;
    if (args.per_class && !engine_dims) {
      auto cf = hd_dims_closed_form(*fam, n);
      for (int p = 0; p <= cf.rank; ++p)
        for (const auto& l : cf.classes[p]) per_class_rows.emplace_back(l.text(), p, 1);
    }
  }
  if (args.method == "both" && *engine_dims != *formula_dims)
    throw Error(Errc::Mismatch, "engine and combinatorial dimensions disagree for " + label);

  const std::vector<int>& dims = engine_dims ? *engine_dims : *formula_dims;
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (g.format == "json") {
    ordered_json j;
    j["command"] = "hd";
    j["diagram"] = label;
    j["method"] = args.method;
    if (order) j["order"] = order;
    ordered_json dd = ordered_json::array();
    for (size_t p = 0; p < dims.size(); ++p) dd.push_back({{"degree", p}, {"dim", dims[p]}});
    j["dims"] = std::move(dd);
    if (args.per_class) {
      ordered_json rows = ordered_json::array();
      for (auto& [lab, deg, dim] : per_class_rows)
        rows.push_back({{"class", lab}, {"degree", deg}, {"dim", dim}});
      j["per_class"] = std::move(rows);
    }
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "diagram,degree,dim,class_label\n";
    for (size_t p = 0; p < dims.size(); ++p)
      std::cout << label << "," << p << "," << dims[p] << ",\n";
    for (auto& [lab, deg, dim] : per_class_rows)
      std::cout << label << "," << deg << "," << dim << ",\"" << lab << "\"\n";
  } else {
    std::cout << "diagram " << label;
    if (order) std::cout << "  |W| = " << order;
    std::cout << "  method " << args.method << (cache_hit ? "  (cache hit)" : "") << "\n";
    std::cout << "HD dims by degree 0.." << dims.size() - 1 << ":";
    for (int v : dims) std::cout << " " << v;
    std::cout << "\n";
    if (args.method == "both") std::cout << "engine and combinatorial dimensions agree\n";
    for (auto& [lab, deg, dim] : per_class_rows)
      std::cout << "  class " << lab << "  HD^" << deg << " = " << dim << "\n";
    std::cout << "time " << ms << " ms\n";
  }
  return 0;
}

// ------------------------------------------------------------- verify ----

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
  verify::SuiteConfig cfg;
  cfg.allow_large = g.allow_large;
  cfg.parallelism = g.parallelism;
  auto results = verify::run_suite(suite, cfg);
  bool all = true;
  for (const auto& r : results) all &= r.pass;

  if (g.format == "json") {
    ordered_json j;
    j["command"] = "verify";
    j["suite"] = suite;
    ordered_json rows = ordered_json::array();
    for (const auto& r : results)
      rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    j["checks"] = std::move(rows);
    j["pass"] = all;
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "suite,check,pass,detail\n";
    for (const auto& r : results)
      std::cout << suite << "," << r.name << "," << (r.pass ? 1 : 0) << ",\"" << r.detail << "\"\n";
  } else {
    for (const auto& r : results)
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << (r.pass ? "" : " - " + r.detail)
                << "\n";
    std::cout << (all ? "all checks passed" : "FAILURES present") << "\n";
  }
  return all ? 0 : 3;
}

// ------------------------------------------------------------- genfun ----

int cmd_genfun(const GlobalOpts& g, const std::string& family, int max_q, int max_t) {
  if (family != "A" && family != "B") throw Error(Errc::BadInput, "genfun family must be A or B");
  auto t = genfun_coeffs(family[0], max_q, max_t);

  bool consistent = true;
  int lo = family == "A" ? 1 : 2;
  for (int n = lo; n <= max_q && consistent; ++n) {
    auto cf = hd_dims_closed_form(family == "A" ? Family::A : Family::B, n);
    for (int p = 0; p <= max_t; ++p) {
      long long want = p <= n ? cf.dims[p] : 0;
      if (t.coeff[n][p] != want) consistent = false;
    }
  }

  if (g.format == "json") {
    ordered_json j;
    j["command"] = "genfun";
    j["family"] = family;
    j["max_q"] = max_q;
    j["max_t"] = max_t;
    j["coeff"] = t.coeff;
    j["consistent_with_closed_form"] = consistent;
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "family,n,p,coeff\n";
    for (int n = 0; n <= max_q; ++n)
      for (int p = 0; p <= max_t; ++p)
        std::cout << family << "," << n << "," << p << "," << t.coeff[n][p] << "\n";
  } else {
    std::cout << "chi^" << family << "(q,t) coefficients, rows n = 0.." << max_q << ", cols p = 0.."
              << max_t << "\n";
    for (int n = 0; n <= max_q; ++n) {
      for (int p = 0; p <= max_t; ++p) std::cout << t.coeff[n][p] << (p < max_t ? " " : "");
      std::cout << "\n";
    }
    std::cout << (consistent ? "consistent with closed-form dimensions\n"
                             : "MISMATCH with closed-form dimensions\n");
  }
  return consistent ? 0 : 3;
}

// ------------------------------------------------------------- affine ----

int cmd_affine(const GlobalOpts& g, const std::string& type, int height, bool infinite_only) {
  std::unique_ptr<AffineData> a;
  try {
    GroupConfig cfg;
    cfg.size_cap = g.group_cap();
    a = AffineData::build(type, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // non-crystallographic type, or W0 over the cap
  }
  if (a->lattice_rank() > 4 && !g.allow_large) {
    std::cerr << "error: affine rank > 4 requires --allow-large\n";
    return 2;
  }

  auto reps = class_representatives(*a, height);
  ordered_json out_reps = ordered_json::array();
  std::ostringstream text;
  for (const auto& rep : reps) {
    if (infinite_only && !rep.order_infinite) continue;
    std::string tstr;
    for (size_t i = 0; i < rep.t.size(); ++i) tstr += (i ? "," : "") + to_string(rep.t[i]);
    std::string vword;
    for (int v : a->w0().lex_min_word(rep.v)) vword += std::to_string(v) + ".";
    ordered_json jr;
    jr["t"] = tstr;
    jr["v_word"] = vword;
    jr["v_class"] = rep.v_class;
    jr["infinite_order"] = rep.order_infinite;
    text << "[t=(" << tstr << ") v=" << (vword.empty() ? "e" : vword) << "] ";
    if (rep.order_infinite) {
      auto dims = hd_dims_infinite_class(*a, rep);
      ordered_json dd = ordered_json::array();
      text << "infinite order, HD_c dims by degree:";
      for (size_t p = 0; p < dims.size(); ++p) {
        dd.push_back({{"degree", p}, {"dim", to_string(dims[p])}});
        text << " " << dims[p];
      }
      jr["dims"] = std::move(dd);
      text << "\n";
    } else {
      auto lam = lambda_formula_dims(*a, rep);
      auto key = affine_class_key(*a, rep.t, rep.v);
      auto hcf = cohomology_dims(hc_f_for_affine(*a, key));
      ordered_json side1 = ordered_json::array(), side2 = ordered_json::array();
      for (size_t p = 0; p < lam.size(); ++p)
        side1.push_back({{"degree", p}, {"dim", to_string(lam[p])}});
      for (size_t p = 0; p < hcf.dims.size(); ++p)
        side2.push_back({{"degree", p}, {"dim", hcf.dims[p]}});
      jr["triangle_sides"] = ordered_json{{"lambda_side", std::move(side1)},
                                          {"hcf_side", std::move(side2)}};
      text << "finite order, triangle sides only: lambda side";
      for (const Int& x : lam) text << " " << x;
      text << " | HC_f side";
      for (int x : hcf.dims) text << " " << x;
      text << "\n";
    }
    out_reps.push_back(std::move(jr));
  }

  if (g.format == "json") {
    ordered_json j;
    j["command"] = "affine";
    j["diagram"] = "affine-" + type;
    j["height_bound"] = height;
    j["reps"] = std::move(out_reps);
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "diagram,rep,infinite_order\n";
    for (const auto& jr : out_reps)
      std::cout << "affine-" << type << ",\"t=(" << jr["t"].get<std::string>() << ") v="
                << jr["v_word"].get<std::string>() << "\","
                << (jr["infinite_order"].get<bool>() ? 1 : 0) << "\n";
  } else {
    std::cout << "affine-" << type << ", height bound " << height << ", " << out_reps.size()
              << " class representatives\n"
              << text.str();
  }
  return 0;
}

// -------------------------------------------------------------- cache ----

int cmd_cache(const GlobalOpts& g, const std::string& action) {
  if (action == "info") {
    auto entries = cache_info(g.cache_dir);
    if (g.format == "json") {
      ordered_json j;
      j["command"] = "cache";
      ordered_json rows = ordered_json::array();
      for (const auto& e : entries)
        rows.push_back({{"file", e.file}, {"name", e.name}, {"order", e.group_order}});
      j["entries"] = std::move(rows);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "cache dir: " << g.cache_dir << " (" << entries.size() << " entries)\n";
      for (const auto& e : entries)
        std::cout << "  " << e.file << "  " << e.name << "  |W| = " << e.group_order << "\n";
    }
    return 0;
  }
  if (action == "clear") {
    int n = cache_clear(g.cache_dir);
    std::cout << "removed " << n << " cache entries\n";
    return 0;
  }
  throw Error(Errc::BadInput, "cache action must be info or clear");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynkin diagram cohomology of finite Coxeter groups"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "Output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache-dir", g.cache_dir, "Group cache directory");
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "Disable the group cache");
  app.add_option("--parallelism", g.parallelism, "Worker thread bound")->check(CLI::PositiveNumber);
  app.add_flag("--allow-large", g.allow_large, "Raise caps for long runs (E7, affine rank > 4)");

  HdArgs hd;
  auto* hd_cmd = app.add_subcommand("hd", "Dynkin diagram cohomology dimensions");
  hd_cmd->add_option("--type", hd.type, "Type label (A5, I2(7), ...) or family letter with --rank");
  hd_cmd->add_option("--rank", hd.rank, "Rank when --type is a family letter");
  hd_cmd->add_option("--matrix", hd.matrix, "Coxeter matrix JSON, inline or @file");
  hd_cmd->add_option("--method", hd.method, "engine | combinatorial | both")
      ->check(CLI::IsMember({"engine", "combinatorial", "both"}));
  hd_cmd->add_flag("--per-class", hd.per_class, "Add the conjugacy class decomposition");
  hd_cmd->add_option("--dump-complex", hd.dump_complex, "Write the HC complex as JSON");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", suite,
                         "table | classical | quasi-iso | stabilisation | affine | all");

  std::string family = "A";
  int max_q = 8, max_t = 8;
  auto* genfun_cmd = app.add_subcommand("genfun", "Generating function coefficients");
  genfun_cmd->add_option("--family", family, "A or B");
  genfun_cmd->add_option("--max-q", max_q, "Highest rank power");
  genfun_cmd->add_option("--max-t", max_t, "Highest degree power");

  std::string atype;
  int height = 2;
  bool infinite_only = false;
  auto* affine_cmd = app.add_subcommand("affine", "Affine Weyl group class dimensions");
  affine_cmd->add_option("--type", atype, "Finite crystallographic type, e.g. A2, C3")->required();
  affine_cmd->add_option("--height", height, "Free-part enumeration bound");
  affine_cmd->add_flag("--infinite-only", infinite_only, "Only infinite-order classes");

  std::string cache_action;
  auto* cache_cmd = app.add_subcommand("cache", "Cache management: info or clear");
  cache_cmd->add_option("action", cache_action, "info | clear")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (no_cache) g.cache_dir.clear();

  try {
    if (*hd_cmd) return cmd_hd(g, hd);
    if (*verify_cmd) return cmd_verify(g, suite);
    if (*genfun_cmd) return cmd_genfun(g, family, max_q, max_t);
    if (*affine_cmd) return cmd_affine(g, atype, height, infinite_only);
    if (*cache_cmd) return cmd_cache(g, cache_action);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
