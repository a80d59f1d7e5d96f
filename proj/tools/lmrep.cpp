// Command-line driver: enumeration, Hom and Ext tables, the Čech certificates, the equivalence
// report and the property suites. JSON (sorted keys, "schema": 1) or CSV on stdout.
// Exit codes: 0 success, 1 verification failure, 2 usage error or refusal.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lmrep/ainfty.hpp"
#include "lmrep/cech.hpp"
#include "lmrep/freedga.hpp"
#include "lmrep/sheafcat.hpp"
#include "lmrep/suites.hpp"
#include "lmrep/torusrep.hpp"

using json = nlohmann::json;
using namespace lmrep;

namespace {

struct Config {
  int m = 2;
  size_t n = 1;
  uint32_t p = 2;
  uint64_t seed = 1;
  size_t samples = 3;
  uint64_t budget = 128;
  std::string format = "json";
  int copies = 1;
  int resolution = 1;
  bool corrupt_sign = false;
  // Set when the flag appeared on the command line.
  bool m_given = false, n_given = false, p_given = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Table = std::vector<std::vector<std::string>>;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void print_csv(const Table& t) {
  for (const auto& row : t) {
    for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_field(row[i]);
    std::cout << "\n";
  }
}

void emit(const Config& c, const json& doc, const Table& table) {
  if (c.format == "csv") print_csv(table);
  else std::cout << doc.dump(2) << "\n";
}

json config_json(const Config& c) {
  return {{"m", c.m},           {"n", c.n},         {"p", c.p},
          {"seed", c.seed},     {"samples", c.samples}, {"budget", c.budget},
          {"copies", c.copies}, {"resolution", c.resolution}, {"corrupt_sign", c.corrupt_sign}};
}

json header(const Config& c, const std::string& command) {
  return {{"schema", 1}, {"command", command}, {"config", config_json(c)}};
}

json mat_json(const Mat& a) {
  json rows = json::array();
  for (size_t i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (size_t j = 0; j < a.cols(); ++j) r.push_back(a.at(i, j).value());
    rows.push_back(r);
  }
  return rows;
}

std::string mat_str(const Mat& a) {
  std::ostringstream os;
  for (size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ";";
    for (size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a.at(i, j).value();
  }
  return os.str();
}

json tuple_json(const std::vector<Mat>& t) {
  json a = json::array();
  for (const auto& x : t) a.push_back(mat_json(x));
  return a;
}

std::string tuple_str(const std::vector<Mat>& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) s += (i ? " | " : "") + mat_str(t[i]);
  return s;
}

// Number of tuples p^(m n^2), saturating.
uint64_t tuple_count(const Config& c) {
  uint64_t total = 1;
  for (size_t i = 0; i < static_cast<size_t>(c.m) * c.n * c.n; ++i) {
    if (total > UINT64_MAX / c.p) return UINT64_MAX;
    total *= c.p;
  }
  return total;
}

struct Objects {
  std::vector<std::vector<Mat>> tuples;
  bool enumerated = false;
};

// Full enumeration when the tuple space fits the budget, seeded samples otherwise.
Objects select_objects(const Config& c) {
  if (tuple_count(c) <= c.budget) return {enumerate_tuples(c.m, c.n, c.p, c.budget), true};
  return {suites::sample_objects(c.m, c.n, c.p, c.samples, c.seed), false};
}

json objects_json(const Objects& o) {
  json a = json::array();
  for (size_t i = 0; i < o.tuples.size(); ++i) a.push_back({{"index", i}, {"tuple", tuple_json(o.tuples[i])}});
  return a;
}

// ---------------------------------------------------------------- dga

int cmd_dga(const Config& c) {
  DGA base = build_lambda_dga(c.m, c.p);
  KCopy copy = kcopy_dga(base, c.copies);
  const DGA& d = c.copies == 1 ? base : copy.dga;
  json doc = header(c, "dga");
  json gens = json::array(), diffs = json::object(), terms = json::object();
  Table table{{"generator", "degree", "invertible", "r", "c", "differential"}};
  for (uint32_t g = 0; g < d.size(); ++g) {
    const Generator& gen = d.gen(g);
    gens.push_back({{"name", gen.name}, {"degree", gen.degree}, {"invertible", gen.invertible},
                    {"r", gen.r}, {"c", gen.c}});
    if (gen.invertible) continue;
    std::string text = d.format(d.diff(g));
    diffs[gen.name] = text;
    json tl = json::array();
    for (const auto& [w, coeff] : d.diff(g).terms()) {
      json letters = json::array();
      for (const auto& l : w) letters.push_back({{"gen", d.gen(l.gen).name}, {"exp", l.exp}});
      tl.push_back({{"coeff", coeff}, {"word", letters}});
    }
    terms[gen.name] = tl;
    table.push_back({gen.name, std::to_string(gen.degree), "false", std::to_string(gen.r),
                     std::to_string(gen.c), text});
  }
  bool sq = check_d_squared(d), gr = check_gradings(d);
  doc["generators"] = gens;
  doc["differentials"] = diffs;
  doc["terms"] = terms;
  doc["d_squared_zero"] = sq;
  doc["gradings_consistent"] = gr;
  emit(c, doc, table);
  return sq && gr ? 0 : 1;
}

// ---------------------------------------------------------------- reps

int cmd_reps(const Config& c) {
  auto tuples = enumerate_tuples(c.m, c.n, c.p, c.budget);
  json doc = header(c, "reps");
  doc["count"] = tuples.size();
  doc["objects"] = objects_json({tuples, true});
  Table table{{"index", "tuple"}};
  for (size_t i = 0; i < tuples.size(); ++i) table.push_back({std::to_string(i), tuple_str(tuples[i])});
  emit(c, doc, table);
  return 0;
}

// ---------------------------------------------------------------- hom

int cmd_hom(const Config& c) {
  Objects obj = select_objects(c);
  DGA L = build_lambda_dga(c.m, c.p);
  RepEngine E(L, c.corrupt_sign);
  std::vector<Representation> reps;
  for (const auto& t : obj.tuples) reps.push_back(lambda_rep(L, t));
  json doc = header(c, "hom");
  json pairs = json::array();
  Table table{{"source", "target", "h0", "h1", "h2", "closed_h0", "closed_h1", "agree"}};
  bool ok = true;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j) {
      auto hm = E.hom_cohomology(reps[i], reps[j]);
      auto hc = torus::cohomology_closed(reps[i], reps[j]);
      bool agree = hm.dims[0] == hc.dim0 && hm.dims[1] == hc.dim1 && hm.dims[2] == 0;
      ok = ok && agree;
      pairs.push_back({{"source", i}, {"target", j},
                       {"machinery", {{"h0", hm.dims[0]}, {"h1", hm.dims[1]}, {"h2", hm.dims[2]}}},
                       {"closed", {{"h0", hc.dim0}, {"h1", hc.dim1}}}, {"agree", agree}});
      table.push_back({std::to_string(i), std::to_string(j), std::to_string(hm.dims[0]),
                       std::to_string(hm.dims[1]), std::to_string(hm.dims[2]), std::to_string(hc.dim0),
                       std::to_string(hc.dim1), agree ? "true" : "false"});
    }
  doc["enumerated"] = obj.enumerated;
  doc["objects"] = objects_json(obj);
  doc["pairs"] = pairs;
  doc["pass"] = ok;
  emit(c, doc, table);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- ext

int cmd_ext(const Config& c) {
  Objects obj = select_objects(c);
  std::vector<sheaf::SheafObject> S;
  for (const auto& t : obj.tuples) S.push_back(sheaf::build_sheaf_object(t));
  json doc = header(c, "ext");
  json objects = json::array(), e0 = json::array(), e1 = json::array();
  Table table{{"source", "target", "ext0", "ext1"}};
  bool ok = true;
  for (size_t i = 0; i < S.size(); ++i) {
    json phi = json::array();
    for (const auto& f : S[i].phi) phi.push_back(mat_json(f));
    bool valid = sheaf::check_object(S[i]);
    ok = ok && valid;
    objects.push_back({{"index", i}, {"tuple", tuple_json(S[i].A)}, {"phi", phi},
                       {"psi", mat_json(S[i].psi)}, {"valid", valid}});
    json r0 = json::array(), r1 = json::array();
    for (size_t j = 0; j < S.size(); ++j) {
      size_t a = sheaf::ext0_basis(S[i], S[j]).size(), b = sheaf::ext1(S[i], S[j]).dim;
      r0.push_back(a);
      r1.push_back(b);
      table.push_back({std::to_string(i), std::to_string(j), std::to_string(a), std::to_string(b)});
    }
    e0.push_back(r0);
    e1.push_back(r1);
  }
  doc["enumerated"] = obj.enumerated;
  doc["objects"] = objects;
  doc["ext0"] = e0;
  doc["ext1"] = e1;
  doc["pass"] = ok;
  emit(c, doc, table);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- cech

int cmd_cech(const Config& c) {
  auto T = cech::build_tiling(c.m, c.resolution);
  std::string invalid = cech::validate_tiling(T);
  auto graph = cech::build_graph(T);
  auto game = cech::graph_game(graph);
  json doc = header(c, "cech");
  json kinds = json::object();
  for (auto k : {cech::TileKind::Empty, cech::TileKind::Strand, cech::TileKind::LeftCusp,
                 cech::TileKind::RightCusp, cech::TileKind::Crossing})
    kinds[cech::kind_name(k)] = T.count(k);
  doc["tiling"] = {{"tiles", T.tiles.size()}, {"edges", T.edges.size()},
                   {"vertices", T.vertices.size()}, {"kinds", kinds}, {"valid", invalid.empty()},
                   {"violation", invalid}};
  json trace = json::array();
  for (size_t i = 0; i < game.trace.size(); ++i) {
    json blue = json::array(), red = json::array();
    for (int b : game.trace[i].blue) blue.push_back(graph.blue[b].edge);
    for (int r : game.trace[i].red) red.push_back(graph.red[r].vertex);
    trace.push_back({{"step", i}, {"rule", game.trace[i].rule}, {"edges", blue}, {"vertices", red}});
  }
  json stuck = json::array();
  for (int r : game.stuck_red) stuck.push_back(graph.red[r].vertex);
  doc["game"] = {{"success", game.success}, {"trace", trace}, {"stuck_vertices", stuck},
                 {"stuck_reason", game.stuck_reason}};

  Objects obj = select_objects(c);
  std::vector<sheaf::SheafObject> S;
  for (const auto& t : obj.tuples) S.push_back(sheaf::build_sheaf_object(t));
  json pairs = json::array();
  Table table{{"source", "target", "h0", "h1", "h2", "ext0", "ext1", "d1_rank", "c2",
               "surjective", "certificates_ok", "agree"}};
  bool ok = invalid.empty() && game.success;
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = 0; j < S.size(); ++j) {
      auto C = cech::assemble_cech(cech::front_sheaf(S[i], T), cech::front_sheaf(S[j], T), T);
      auto d = cech::cech_dims(C);
      auto h2 = cech::check_h2(C);
      size_t e0 = sheaf::ext0_basis(S[i], S[j]).size(), e1 = sheaf::ext1(S[i], S[j]).dim;
      json certs = json::array();
      bool certs_ok = game.success;
      if (game.success)
        for (const auto& sc : cech::certify_game(game, graph, C)) {
          certs.push_back({{"rank", sc.rank}, {"target", sc.target}, {"ok", sc.ok}});
          certs_ok = certs_ok && sc.ok;
        }
      bool agree = d.h0 == e0 && d.h1 == e1 && d.h2 == 0 && h2.surjective && cech::d_squared_zero(C);
      ok = ok && agree && certs_ok;
      pairs.push_back(
          {{"source", i}, {"target", j},
           {"cech", {{"h0", d.h0}, {"h1", d.h1}, {"h2", d.h2}, {"c0", d.c0}, {"c1", d.c1}, {"c2", d.c2}}},
           {"ext", {{"ext0", e0}, {"ext1", e1}}},
           {"h2_certificate",
            {{"surjective", h2.surjective}, {"rank", h2.rank}, {"dim_c1", h2.dim_c1}, {"dim_c2", h2.dim_c2}}},
           {"step_certificates", certs}, {"agree", agree}});
      table.push_back({std::to_string(i), std::to_string(j), std::to_string(d.h0), std::to_string(d.h1),
                       std::to_string(d.h2), std::to_string(e0), std::to_string(e1),
                       std::to_string(h2.rank), std::to_string(h2.dim_c2), h2.surjective ? "true" : "false",
                       certs_ok ? "true" : "false", agree ? "true" : "false"});
    }
  doc["enumerated"] = obj.enumerated;
  doc["objects"] = objects_json(obj);
  doc["pairs"] = pairs;
  doc["pass"] = ok;
  emit(c, doc, table);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- equiv

int cmd_equiv(const Config& c) {
  Objects obj = select_objects(c);
  DGA L = build_lambda_dga(c.m, c.p);
  RepEngine E(L, c.corrupt_sign);
  std::vector<Representation> reps;
  std::vector<sheaf::SheafObject> S;
  for (const auto& t : obj.tuples) {
    reps.push_back(lambda_rep(L, t));
    S.push_back(sheaf::build_sheaf_object(sheaf::functor_object(t)));
  }
  json doc = header(c, "equiv");
  json pairs = json::array(), agreement = json::array();
  Table table{{"source", "target", "h0", "h1", "h2", "ext0", "ext1", "ext2_cech", "agree"}};
  bool ok = true;
  for (size_t i = 0; i < reps.size(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < reps.size(); ++j) {
      auto hm = E.hom_cohomology(reps[i], reps[j]);
      size_t e0 = sheaf::ext0_basis(S[i], S[j]).size(), e1 = sheaf::ext1(S[i], S[j]).dim;
      auto d = cech::cech_ext_dims(S[i], S[j], c.resolution);
      bool agree = hm.dims[0] == e0 && hm.dims[1] == e1 && hm.dims[2] == 0 && d.h2 == 0 &&
                   d.h0 == e0 && d.h1 == e1;
      ok = ok && agree;
      row.push_back(agree);
      pairs.push_back({{"source", i}, {"target", j},
                       {"hom", {{"h0", hm.dims[0]}, {"h1", hm.dims[1]}, {"h2", hm.dims[2]}}},
                       {"ext", {{"ext0", e0}, {"ext1", e1}, {"ext2_cech", d.h2}}}, {"agree", agree}});
      table.push_back({std::to_string(i), std::to_string(j), std::to_string(hm.dims[0]),
                       std::to_string(hm.dims[1]), std::to_string(hm.dims[2]), std::to_string(e0),
                       std::to_string(e1), std::to_string(d.h2), agree ? "true" : "false"});
    }
    agreement.push_back(row);
  }
  auto f = suites::functoriality(obj.tuples, 64, c.corrupt_sign);
  ok = ok && f.pass;
  doc["enumerated"] = obj.enumerated;
  doc["objects"] = objects_json(obj);
  doc["pairs"] = pairs;
  doc["agreement"] = agreement;
  doc["functoriality"] = {{"cases", f.cases}, {"failures", f.failures}, {"first_failure", f.first_failure},
                          {"counts", f.counts}, {"pass", f.pass}};
  doc["pass"] = ok;
  emit(c, doc, table);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& c) {
  suites::Scale s;
  s.max_m = c.m_given ? c.m : 3;
  s.max_n = c.n_given ? c.n : 2;
  s.primes = c.p_given ? std::vector<uint32_t>{c.p} : std::vector<uint32_t>{2, 3};
  s.samples = c.samples;
  s.seed = c.seed;
  s.resolution = c.resolution;
  s.budget = c.budget;
  s.corrupt_sign = c.corrupt_sign;
  auto outcomes = suites::run_all(s);
  json doc = header(c, "verify");
  json list = json::array();
  Table table{{"suite", "pass", "cases", "failures", "first_failure"}};
  bool ok = true;
  size_t cases = 0;
  for (const auto& o : outcomes) {
    ok = ok && o.pass;
    cases += o.cases;
    list.push_back({{"name", o.name}, {"pass", o.pass}, {"cases", o.cases}, {"failures", o.failures},
                    {"first_failure", o.first_failure}, {"counts", o.counts}});
    table.push_back({o.name, o.pass ? "true" : "false", std::to_string(o.cases),
                     std::to_string(o.failures), o.first_failure});
    if (!o.pass) std::cerr << "FAIL " << o.name << ": " << o.first_failure << "\n";
  }
  bool vacuous = cases == 0;
  if (vacuous) std::cerr << "warning: no cases were run (--samples 0); the pass is vacuous\n";
  doc["suites"] = list;
  doc["cases"] = cases;
  doc["vacuous"] = vacuous;
  doc["pass"] = ok;
  emit(c, doc, table);
  return ok ? 0 : 1;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--m", c.m, "number of crossings (m >= 1)");
  sub->add_option("--n", c.n, "representation dimension / microlocal rank (n >= 1)");
  sub->add_option("--p", c.p, "prime field size");
  sub->add_option("--seed", c.seed, "seed for sampling");
  sub->add_option("--samples", c.samples, "random cases per cell, or sampled objects");
  sub->add_option("--budget", c.budget, "largest enumeration or search size");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--copies", c.copies, "k for the k-copy DGA (dga only)");
  sub->add_option("--resolution", c.resolution, "tiling resolution (>= 1)");
  sub->add_flag("--corrupt-sign", c.corrupt_sign, "drop the alternating part of the mu_k sign");
}

void validate(const Config& c) {
  if (c.m < 1) throw UsageError("--m must be at least 1");
  if (c.n < 1) throw UsageError("--n must be at least 1");
  if (!is_prime(c.p)) throw UsageError("--p must be prime");
  if (c.copies < 1 || c.copies > 4) throw UsageError("--copies must be in 1..4");
  if (c.resolution < 1) throw UsageError("--resolution must be at least 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rep_n and Sh_n computations for the (2, m) torus link"};
  app.require_subcommand(1);
  Config c;
  std::vector<std::pair<CLI::App*, int (*)(const Config&)>> subs;
  auto add = [&](const char* name, const char* desc, int (*fn)(const Config&)) {
    CLI::App* s = app.add_subcommand(name, desc);
    add_common(s, c);
    subs.push_back({s, fn});
  };
  add("dga", "print the DGA of Lambda_m or its k-copy", cmd_dga);
  add("reps", "enumerate representations", cmd_reps);
  add("hom", "cohomology of Hom between representations", cmd_hom);
  add("ext", "Ext^0 and Ext^1 between sheaves", cmd_ext);
  add("cech", "Čech complex, removal game and rank certificates", cmd_cech);
  add("equiv", "compare the two categories", cmd_equiv);
  add("verify", "run the property suites", cmd_verify);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto& [sub, fn] : subs) {
      if (!sub->parsed()) continue;
      c.m_given = sub->count("--m") > 0;
      c.n_given = sub->count("--n") > 0;
      c.p_given = sub->count("--p") > 0;
      validate(c);
      return fn(c);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
