#include "lmrep/suites.hpp"

#include <array>
#include <chrono>
#include <set>
#include <sstream>

#include "lmrep/ainfty.hpp"
#include "lmrep/cech.hpp"
#include "lmrep/freedga.hpp"
#include "lmrep/rng.hpp"
#include "lmrep/sheafcat.hpp"
#include "lmrep/torusrep.hpp"

namespace lmrep::suites {

namespace {

using Clock = std::chrono::steady_clock;
using torus::TorusClass;

class Tally {
 public:
  explicit Tally(std::string name) : start_(Clock::now()) { o_.name = std::move(name); }

  void context(const std::string& c) { ctx_ = c; }
  bool check(bool ok, const std::string& what) {
    ++o_.cases;
    if (!ok) {
      ++o_.failures;
      if (o_.first_failure.empty()) o_.first_failure = what + (ctx_.empty() ? "" : " [" + ctx_ + "]");
    }
    return ok;
  }
  void count(const std::string& key, size_t v = 1) { o_.counts[key] += v; }
  // A required sub-count: failing when it stayed at zero with sampling enabled.
  void require_count(const std::string& key, const Scale& s) {
    if (s.samples > 0 && o_.counts[key] == 0) {
      ++o_.failures;
      if (o_.first_failure.empty()) o_.first_failure = "no cases exercised for " + key;
    }
  }
  Outcome finish() {
    o_.pass = o_.failures == 0;
    o_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return o_;
  }

 private:
  Outcome o_;
  std::string ctx_;
  Clock::time_point start_;
};

std::string cell_name(int m, size_t n, uint32_t p) {
  return "m=" + std::to_string(m) + " n=" + std::to_string(n) + " p=" + std::to_string(p);
}

SplitMix64 cell_rng(const Scale& s, uint64_t tag, int m, size_t n, uint32_t p) {
  SplitMix64 root(s.seed);
  return root.split(tag * 1000003ULL + static_cast<uint64_t>(m) * 10007ULL + n * 101ULL + p);
}

template <class F>
void for_cells(const Scale& s, F&& f) {
  for (uint32_t p : s.primes)
    for (int m = s.min_m; m <= s.max_m; ++m)
      for (size_t n = s.min_n; n <= s.max_n; ++n) f(m, n, p);
}

std::vector<Mat> random_tuple(int m, size_t n, uint32_t p, SplitMix64& g) {
  for (;;) {
    std::vector<Mat> t;
    for (int j = 0; j < m; ++j) t.push_back(random_mat(n, n, p, g));
    if (!det(pq_matrix(t, PQ::P, n, p)).is_zero()) return t;
  }
}

std::vector<Mat> conjugate(const std::vector<Mat>& t, const Mat& M) {
  Mat Mi = *inverse(M);
  std::vector<Mat> out;
  for (const auto& a : t) out.push_back(Mi * a * M);
  return out;
}

// A related triple: conjugates give nonzero Hom spaces, random members keep it generic.
std::array<std::vector<Mat>, 3> related_triple(int m, size_t n, uint32_t p, SplitMix64& g,
                                               size_t trial) {
  auto t0 = random_tuple(m, n, p, g);
  auto t1 = trial % 2 == 0 ? conjugate(t0, random_invertible(n, p, g)) : random_tuple(m, n, p, g);
  auto t2 = trial % 3 != 2 ? conjugate(t1, random_invertible(n, p, g)) : random_tuple(m, n, p, g);
  return {t0, t1, t2};
}

HomElement random_element(const HomSpace& hs, int d, SplitMix64& g) {
  return hs.from_vec(d, random_mat(hs.dim(d), 1, hs.modulus(), g));
}

Mat unit_vector(size_t dim, size_t i, uint32_t p) {
  Mat v(dim, 1, p);
  v.data()[i] = 1;
  return v;
}

bool same(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  return sheaf::stack(a) == sheaf::stack(b);
}

bool same(const sheaf::Ext0Elem& a, const sheaf::Ext0Elem& b) { return a.u1 == b.u1 && a.u2 == b.u2; }

HomElement lift(const Representation& r0, const Representation& r1, const TorusClass& x) {
  return x.degree == 0 ? torus::h0_element(x) : torus::h1_lift(r0, r1, x);
}

// Class of the machinery mu_2(g, f) for closed-form classes f : r0 -> r1, g : r1 -> r2.
TorusClass machinery_mu2(RepEngine& E, const Representation& r0, const Representation& r1,
                         const Representation& r2, const TorusClass& g, const TorusClass& f,
                         int m) {
  return torus::project(E.mu2(r0, r1, r2, lift(r1, r2, g), lift(r0, r1, f)), m);
}

std::vector<TorusClass> classes(const torus::Cohomology& h, int degree, size_t m, size_t n) {
  std::vector<TorusClass> out;
  const Mat& b = degree == 0 ? h.h0 : h.h1;
  size_t dim = degree == 0 ? h.dim0 : h.dim1;
  for (size_t c = 0; c < dim; ++c) out.push_back(torus::unstack(degree, b.col(c), degree == 0 ? 2 : m, n));
  return out;
}

sheaf::SheafObject functor_sheaf(const Representation& r) {
  return sheaf::build_sheaf_object(sheaf::functor_object(r.tuple));
}

}  // namespace

// ---------------------------------------------------------------- 1

Outcome dga_identities(const Scale& s) {
  Tally t("dga: d^2 = 0 on Lambda_m and its 2-, 3-copies");
  if (s.samples == 0) return t.finish();
  for (uint32_t p : s.primes)
    for (int m = s.min_m; m <= s.max_m; ++m) {
      t.context("m=" + std::to_string(m) + " p=" + std::to_string(p));
      DGA L = build_lambda_dga(m, p);
      t.check(check_d_squared(L), "d^2 on Lambda_m");
      t.check(check_gradings(L), "gradings on Lambda_m");
      for (int k : {2, 3}) {
        KCopy c = kcopy_dga(L, k);
        t.check(check_d_squared(c.dga), std::to_string(k) + "-copy d^2");
        t.check(check_gradings(c.dga), std::to_string(k) + "-copy gradings");
        t.count(std::to_string(k) + "-copy");
      }
    }
  return t.finish();
}

// ---------------------------------------------------------------- 2

Outcome sylvester(const Scale& s) {
  Tally t("torusrep: det P_m = (-1)^{mn} det Q_m");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 2, m, n, p);
    for (size_t i = 0; i < s.samples; ++i) {
      std::vector<Mat> A;
      for (int j = 0; j < m; ++j) A.push_back(random_mat(n, n, p, g));
      t.check(torus::sylvester_check(A), "Sylvester identity");
    }
  });
  return t.finish();
}

// ---------------------------------------------------------------- 3

Outcome closed_forms(const Scale& s) {
  Tally t("torusrep: closed forms against the copy machinery");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 3, m, n, p);
    DGA L = build_lambda_dga(m, p);
    RepEngine E(L, s.corrupt_sign);
    HomSpace hs(L, n);
    const long n2 = static_cast<long>(n * n);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto tr = related_triple(m, n, p, g, trial);
      Representation r[3] = {lambda_rep(L, tr[0]), lambda_rep(L, tr[1]), lambda_rep(L, tr[2])};
      for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}}) {
        t.count("pairs");
        for (int d : {0, 1})
          for (size_t i = 0; i < hs.dim(d); ++i) {
            HomElement x = hs.from_vec(d, unit_vector(hs.dim(d), i, p));
            t.check(E.mu1(r[a], r[b], x) == torus::mu1_closed(L, r[a], r[b], x),
                    "mu_1 closed form, degree " + std::to_string(d));
          }
        auto hc = torus::cohomology_closed(r[a], r[b]);
        auto hm = E.hom_cohomology(r[a], r[b]);
        t.check(hc.dim0 == hm.dims[0] && hc.dim1 == hm.dims[1], "cohomology dimensions");
        t.check(hm.dims[2] == 0, "H^2 = 0");
        t.check(static_cast<long>(hc.dim0) - static_cast<long>(hc.dim1) == (2 - m) * n2,
                "Euler characteristic");
        for (const auto& u : classes(hc, 0, m, n)) {
          t.check(E.mu1(r[a], r[b], torus::h0_element(u)).is_zero(), "H^0 kernel element is a cocycle");
          t.check(torus::pq_intertwine_check(r[a].tuple, r[b].tuple, u.c[0], u.c[1]) ==
                      torus::Check::Holds,
                  "P/Q intertwining");
        }
        TorusClass w{1, {}};
        for (int j = 0; j < m; ++j) w.c.push_back(random_mat(n, n, p, g));
        t.check(E.mu1(r[a], r[b], torus::h1_lift(r[a], r[b], w)).is_zero(), "H^1 lift is closed");
      }
      t.count("triples");
      auto h01 = torus::cohomology_closed(r[0], r[1]);
      auto h12 = torus::cohomology_closed(r[1], r[2]);
      auto h02 = torus::cohomology_closed(r[0], r[2]);
      for (int dg : {0, 1})
        for (int df : {0, 1}) {
          if (dg + df == 2) continue;
          std::string key = "mu2_" + std::to_string(dg) + std::to_string(df);
          for (const auto& G : classes(h12, dg, m, n))
            for (const auto& F : classes(h01, df, m, n)) {
              t.count(key);
              TorusClass mm = machinery_mu2(E, r[0], r[1], r[2], G, F, m);
              TorusClass cc = torus::mu2_closed(G, F);
              bool ok = dg + df == 0 ? torus::stack(mm) == torus::stack(cc)
                                     : torus::stack(torus::canonical_h1(h02, mm)) ==
                                           torus::stack(torus::canonical_h1(h02, cc));
              t.check(ok, "mu_2 degrees (" + std::to_string(dg) + "," + std::to_string(df) + ")");
            }
        }
      // Boundaries compose to boundaries.
      for (const auto& G : classes(h12, 0, m, n))
        for (size_t c = 0; c < h01.image.dim(); ++c) {
          TorusClass b = torus::unstack(1, h01.image.basis().col(c), m, n);
          t.check(h02.image.contains(torus::stack(torus::mu2_closed(G, b))), "mu_2 well defined (0,1)");
        }
      for (const auto& F : classes(h01, 0, m, n))
        for (size_t c = 0; c < h12.image.dim(); ++c) {
          TorusClass b = torus::unstack(1, h12.image.basis().col(c), m, n);
          t.check(h02.image.contains(torus::stack(torus::mu2_closed(b, F))), "mu_2 well defined (1,0)");
        }
    }
  });
  for (const char* k : {"mu2_00", "mu2_01", "mu2_10"}) t.require_count(k, s);
  return t.finish();
}

// ---------------------------------------------------------------- 4

Outcome ainfty_relations(const Scale& s) {
  Tally t("ainfty: A-infinity relations at arities 1-3");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 4, m, n, p);
    DGA L = build_lambda_dga(m, p);
    RepEngine E(L, s.corrupt_sign);
    HomSpace hs(L, n);
    auto degs = hs.degrees();
    auto deg_name = [](std::initializer_list<int> ds) {
      std::string r = "(";
      for (int d : ds) r += (r.size() > 1 ? "," : "") + std::to_string(d);
      return r + ")";
    };
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto tr = related_triple(m, n, p, g, trial);
      Representation r0 = lambda_rep(L, tr[0]), r1 = lambda_rep(L, tr[1]), r2 = lambda_rep(L, tr[2]);
      Representation r3 = lambda_rep(L, conjugate(tr[2], random_invertible(n, p, g)));
      for (int d : degs) {
        t.count("arity1");
        t.check(E.ainfty_relation({&r0, &r1}, {random_element(hs, d, g)}).is_zero(),
                "arity 1 relation, degree " + deg_name({d}));
      }
      for (int d1 : degs)
        for (int d2 : degs) {
          HomElement a = random_element(hs, d1, g), b = random_element(hs, d2, g);
          t.count("arity2");
          t.check(E.ainfty_relation({&r0, &r1, &r2}, {a, b}).is_zero(),
                  "arity 2 relation, degrees " + deg_name({d1, d2}));
          for (int d3 : degs) {
            HomElement c = random_element(hs, d3, g);
            t.count("arity3");
            t.check(E.ainfty_relation({&r0, &r1, &r2, &r3}, {a, b, c}).is_zero(),
                    "arity 3 relation, degrees " + deg_name({d1, d2, d3}));
          }
        }
      // mu_2(u' y_k, u y_k) = -u u' y_k and products of different y's vanish.
      Mat u = random_mat(n, n, p, g), up = random_mat(n, n, p, g);
      for (uint32_t k : {1u, 2u}) {
        HomElement A = HomElement::zero(0, n, p), B = A, want = A, other = A;
        A.add({DualGen::Y, k}, up);
        B.add({DualGen::Y, k}, u);
        want.add({DualGen::Y, k}, -(u * up));
        other.add({DualGen::Y, 3 - k}, u);
        t.check(E.mu2(r0, r0, r0, A, B) == want, "mu_2 on y duals");
        t.check(E.mu2(r0, r0, r0, A, other).is_zero(), "mu_2 on distinct y duals");
      }
    }
  });
  return t.finish();
}

// ---------------------------------------------------------------- 5

Outcome unit_laws(const Scale& s) {
  Tally t("ainfty: unit laws on cohomology");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 5, m, n, p);
    DGA L = build_lambda_dga(m, p);
    RepEngine E(L, s.corrupt_sign);
    HomSpace hs(L, n);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto tr = related_triple(m, n, p, g, trial);
      Representation r0 = lambda_rep(L, tr[0]), r1 = lambda_rep(L, tr[1]);
      HomElement e0 = E.unit(r0), e1 = E.unit(r1);
      bool shape = true;
      for (uint32_t k : {1u, 2u}) shape = shape && e0.get({DualGen::Y, k}) == -Mat::identity(n, p);
      t.check(shape && e0.coeffs.size() == 2, "unit is -y_1 - y_2");
      t.check(E.mu1(r0, r0, e0).is_zero(), "mu_1(e) = 0");
      for (int d : {0, 1}) {
        Mat z = kernel_matrix(E.mu1_matrix(r0, r1, d));
        if (z.cols() == 0) continue;
        HomElement f = hs.from_vec(d, z * random_mat(z.cols(), 1, p, g));
        Subspace bd = d == 0 ? Subspace(hs.dim(0), p) : Subspace::span(E.mu1_matrix(r0, r1, d - 1));
        t.count("closed_" + std::to_string(d));
        HomElement left = E.mu2(r0, r1, r1, e1, f);
        HomElement right = E.mu2(r0, r0, r1, f, e0);
        t.check(bd.contains(hs.to_vec(left - f)), "[mu_2(e, f)] = [f], degree " + std::to_string(d));
        t.check(bd.contains(hs.to_vec(right - f)), "[mu_2(f, e)] = [f], degree " + std::to_string(d));
      }
    }
  });
  t.require_count("closed_0", s);
  t.require_count("closed_1", s);
  return t.finish();
}

// ---------------------------------------------------------------- 6

namespace {

void check_pair_dims(RepEngine& E, const Representation& a, const Representation& b, int res,
                     Tally& t) {
  auto hm = E.hom_cohomology(a, b);
  auto F = functor_sheaf(a), G = functor_sheaf(b);
  t.count("pairs");
  t.check(hm.dims[0] == sheaf::ext0_basis(F, G).size(), "dim H^0 = dim Ext^0");
  t.check(hm.dims[1] == sheaf::ext1(F, G).dim, "dim H^1 = dim Ext^1");
  t.check(hm.dims[2] == 0, "H^2 = 0");
  t.check(cech::check_h2(F, G, res).surjective, "Čech Ext^2 = 0");
}

void check_functoriality(RepEngine& E, const Representation& r0, const Representation& r1,
                         const Representation& r2, int m, Tally& t) {
  size_t n = r0.n;
  auto S0 = functor_sheaf(r0), S1 = functor_sheaf(r1), S2 = functor_sheaf(r2);
  auto h01 = torus::cohomology_closed(r0, r1);
  auto h12 = torus::cohomology_closed(r1, r2);
  auto h02 = torus::cohomology_closed(r0, r2);
  auto x02 = sheaf::ext1(S0, S2);

  // Identities.
  TorusClass e = torus::project(E.unit(r0), m);
  sheaf::Ext0Elem fe = sheaf::functor_h0(e.c[0], e.c[1]);
  Mat I = Mat::identity(n, r0.p);
  t.check(fe.u1 == I && fe.u2 == I && sheaf::is_ext0(S0, S0, fe), "F(e) is the identity");

  auto F0 = [](const TorusClass& u) { return sheaf::functor_h0(u.c.at(0), u.c.at(1)); };
  auto canon = [&](const std::vector<Mat>& w) { return sheaf::canonical(x02, w); };

  for (const auto& g : classes(h12, 0, m, n))
    for (const auto& f : classes(h01, 0, m, n)) {
      t.count("compose00");
      TorusClass c = machinery_mu2(E, r0, r1, r2, g, f, m);
      t.check(same(F0(c), sheaf::compose00(F0(g), F0(f))), "F preserves (0,0) composition");
    }
  for (const auto& g : classes(h12, 0, m, n))
    for (const auto& f : classes(h01, 1, m, n)) {
      t.count("compose01");
      TorusClass c = machinery_mu2(E, r0, r1, r2, g, f, m);
      auto lhs = canon(sheaf::functor_h1(torus::canonical_h1(h02, c).c));
      auto rhs = canon(sheaf::compose10(F0(g), sheaf::functor_h1(f.c)));
      t.check(same(lhs, rhs), "F preserves composition of degrees (0,1)");
    }
  for (const auto& g : classes(h12, 1, m, n))
    for (const auto& f : classes(h01, 0, m, n)) {
      t.count("compose10");
      TorusClass c = machinery_mu2(E, r0, r1, r2, g, f, m);
      auto lhs = canon(sheaf::functor_h1(torus::canonical_h1(h02, c).c));
      auto rhs = canon(sheaf::compose01(sheaf::functor_h1(g.c), F0(f)));
      t.check(same(lhs, rhs), "F preserves composition of degrees (1,0)");
    }
}

}  // namespace

Outcome equivalence(const Scale& s) {
  Tally t("equivalence: Hom dimensions and functoriality");
  if (s.samples == 0) return t.finish();
  {
    // Full enumeration at n = 1, m = 2 over F_2.
    t.context(cell_name(2, 1, 2));
    DGA L = build_lambda_dga(2, 2);
    RepEngine E(L, s.corrupt_sign);
    auto reps = enumerate_reps(L, 1, s.budget);
    t.check(reps.size() == 3, "three objects for n=1, m=2 over F_2");
    std::set<std::vector<uint32_t>> rep_side, sheaf_side;
    for (const auto& r : reps) {
      std::vector<uint32_t> key;
      for (const auto& a : sheaf::functor_object(r.tuple)) key.push_back(a.data()[0]);
      rep_side.insert(key);
    }
    for (uint32_t a = 0; a < 2; ++a)
      for (uint32_t b = 0; b < 2; ++b) {
        try {
          sheaf::build_sheaf_object({Mat::scalar(1, a, 2), Mat::scalar(1, b, 2)});
          sheaf_side.insert({a, b});
        } catch (const std::exception&) {
        }
      }
    t.check(rep_side == sheaf_side, "F is a bijection on objects");
    for (const auto& a : reps)
      for (const auto& b : reps) check_pair_dims(E, a, b, s.resolution, t);
    for (const auto& a : reps)
      for (const auto& b : reps)
        for (const auto& c : reps) check_functoriality(E, a, b, c, 2, t);
  }
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 6, m, n, p);
    DGA L = build_lambda_dga(m, p);
    RepEngine E(L, s.corrupt_sign);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto tr = related_triple(m, n, p, g, trial);
      Representation r0 = lambda_rep(L, tr[0]), r1 = lambda_rep(L, tr[1]), r2 = lambda_rep(L, tr[2]);
      check_pair_dims(E, r0, r1, s.resolution, t);
      check_pair_dims(E, r1, r2, s.resolution, t);
      check_functoriality(E, r0, r1, r2, m, t);
    }
  });
  for (const char* k : {"compose00", "compose01", "compose10"}) t.require_count(k, s);
  return t.finish();
}

// ---------------------------------------------------------------- 7

namespace {

struct TilingCache {
  std::map<std::pair<int, int>, cech::TilingComplex> tilings;
  const cech::TilingComplex& get(int m, int res) {
    auto key = std::pair{m, res};
    auto it = tilings.find(key);
    if (it == tilings.end()) it = tilings.emplace(key, cech::build_tiling(m, res)).first;
    return it->second;
  }
};

void cech_pair(const sheaf::SheafObject& F, const sheaf::SheafObject& G, TilingCache& cache,
               int res, bool refine, Tally& t) {
  size_t e0 = sheaf::ext0_basis(F, G).size(), e1 = sheaf::ext1(F, G).dim;
  int m = static_cast<int>(F.m());
  for (int r : refine ? std::vector<int>{res, res + 1} : std::vector<int>{res}) {
    const auto& T = cache.get(m, r);
    auto FS = cech::front_sheaf(F, T), GS = cech::front_sheaf(G, T);
    t.check(cech::check_microsupport(T, FS, F.n).empty(), "microsupport conditions");
    auto C = cech::assemble_cech(FS, GS, T);
    t.check(cech::d_squared_zero(C), "d^1 d^0 = 0");
    auto d = cech::cech_dims(C);
    std::string tag = r == res ? "" : " after refinement";
    t.check(d.h0 == e0 && d.h1 == e1 && d.h2 == 0, "Čech dims equal (Ext^0, Ext^1, 0)" + tag);
    t.check(cech::check_h2(C).surjective, "d^1 surjective" + tag);
    t.count(r == res ? "pairs" : "refined");
  }
}

}  // namespace

Outcome cech_oracle(const Scale& s) {
  Tally t("cech: Čech cohomology against Ext");
  if (s.samples == 0) return t.finish();
  TilingCache cache;
  {
    t.context(cell_name(2, 1, 2));
    auto tuples = enumerate_tuples(2, 1, 2, s.budget);
    for (const auto& a : tuples)
      for (const auto& b : tuples)
        cech_pair(sheaf::build_sheaf_object(a), sheaf::build_sheaf_object(b), cache, s.resolution,
                  true, t);
    auto Z = sheaf::build_sheaf_object({Mat::scalar(1, 0, 2), Mat::scalar(1, 0, 2)});
    auto d = cech::cech_ext_dims(Z, Z, s.resolution);
    t.check(d.h0 == 2 && d.h1 == 2 && d.h2 == 0, "(0,0) with itself gives (2, 2, 0)");
  }
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 7, m, n, p);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto tr = related_triple(m, n, p, g, trial);
      auto F = sheaf::build_sheaf_object(tr[0]), G = sheaf::build_sheaf_object(tr[1]);
      cech_pair(F, G, cache, s.resolution, trial == 0, t);
    }
  });
  return t.finish();
}

// ---------------------------------------------------------------- 8

Outcome removal_game(const Scale& s) {
  Tally t("cech: removal game and rank certificates");
  if (s.samples == 0) return t.finish();
  for (int m = s.min_m; m <= s.max_m; ++m)
    for (int res : {s.resolution, s.resolution + 1}) {
      t.context("m=" + std::to_string(m) + " resolution=" + std::to_string(res));
      auto T = cech::build_tiling(m, res);
      t.check(cech::validate_tiling(T).empty(), "tiling constraints");
      t.check(T.count(cech::TileKind::LeftCusp) + T.count(cech::TileKind::RightCusp) == 4 &&
                  T.count(cech::TileKind::Crossing) == static_cast<size_t>(m),
              "four cusps and m crossings");
      auto graph = cech::build_graph(T);
      auto game = cech::graph_game(graph);
      t.count("games");
      if (!t.check(game.success, "game leaves no red nodes")) continue;
      for (uint32_t p : s.primes)
        for (size_t n = s.min_n; n <= s.max_n; ++n) {
          SplitMix64 g = cell_rng(s, 8 + 100 * res, m, n, p);
          for (size_t trial = 0; trial < s.samples; ++trial) {
            auto tr = related_triple(m, n, p, g, trial);
            auto F = sheaf::build_sheaf_object(tr[0]), G = sheaf::build_sheaf_object(tr[1]);
            auto C = cech::assemble_cech(cech::front_sheaf(F, T), cech::front_sheaf(G, T), T);
            bool all = true;
            for (const auto& c : cech::certify_game(game, graph, C)) all = all && c.ok;
            t.count("certified");
            t.check(all, "every removal step is a surjection");
            t.check(cech::check_h2(C).surjective, "success implies d^1 surjective");
          }
        }
    }
  return t.finish();
}

// ---------------------------------------------------------------- 9

Outcome eye_fixture(const Scale& s) {
  Tally t("cech: eye unknot Hom is k^{rs} in degree 0");
  if (s.samples == 0) return t.finish();
  for (int res : {s.resolution, s.resolution + 1}) {
    auto T = cech::build_eye_tiling(res);
    t.check(cech::validate_tiling(T).empty(), "eye tiling constraints");
    for (uint32_t p : s.primes)
      for (size_t r = 1; r <= 2; ++r)
        for (size_t q = 1; q <= 2; ++q) {
          t.context("r=" + std::to_string(r) + " s=" + std::to_string(q) + " p=" + std::to_string(p) +
                    " resolution=" + std::to_string(res));
          auto F = cech::eye_sheaf(r, p), G = cech::eye_sheaf(q, p);
          t.check(cech::check_microsupport(T, F, r).empty(), "microsupport conditions");
          auto C = cech::assemble_cech(F, G, T);
          auto d = cech::cech_dims(C);
          t.count("pairs");
          t.check(cech::d_squared_zero(C), "d^1 d^0 = 0");
          t.check(d.h0 == r * q && d.h1 == 0 && d.h2 == 0, "cohomology (rs, 0, 0)");
          t.check(cech::check_h2(C).surjective, "d^1 surjective");
        }
  }
  return t.finish();
}

// ---------------------------------------------------------------- 10

Outcome conjugation(const Scale& s) {
  Tally t("ainfty: conjugate representations are isomorphic");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 10, m, n, p);
    DGA L = build_lambda_dga(m, p);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto A = random_tuple(m, n, p, g);
      Mat M = random_invertible(n, p, g);
      Representation r1 = lambda_rep(L, A), r2 = lambda_rep(L, conjugate(A, M));
      auto res = is_isomorphic(L, r1, r2, s.budget, g.next());
      t.count("pairs");
      if (!t.check(res.status == IsoResult::Found, "witness found")) continue;
      bool ok = res.witness.size() == static_cast<size_t>(L.base_points());
      for (const auto& u : res.witness) ok = ok && !det(u).is_zero();
      for (uint32_t z = 0; ok && z < L.size(); ++z) {
        const Generator& gen = L.gen(z);
        if (gen.degree != 0) continue;
        const Mat& ur = res.witness[gen.r - 1];
        const Mat& uc = res.witness[gen.c - 1];
        ok = ur * r2.at(z) == r1.at(z) * uc;
      }
      t.check(ok, "witness intertwines every degree-0 generator");
    }
  });
  return t.finish();
}

// ---------------------------------------------------------------- extra

Outcome exact_algebra(const Scale& s) {
  Tally t("exactalg: rank, kernel, inverse, determinant");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 11, m, n, p);
    size_t r = n * static_cast<size_t>(m), c = n + 1 + static_cast<size_t>(m);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      Mat A = random_mat(r, c, p, g);
      Mat K = kernel_matrix(A);
      t.check(rank(A) + K.cols() == c, "rank + nullity");
      t.check((A * K).is_zero(), "kernel columns");
      t.check(rank(A.transpose()) == rank(A), "row rank = column rank");
      Mat B = random_mat(r, r, p, g), C = random_mat(r, r, p, g);
      t.check(det(B * C) == det(B) * det(C), "det multiplicative");
      auto Bi = inverse(B);
      t.check(Bi.has_value() == !det(B).is_zero(), "inverse exists iff det != 0");
      if (Bi) t.check(B * *Bi == Mat::identity(r, p), "inverse");
      Subspace W = Subspace::span(A);
      Mat v = random_mat(r, 1, p, g);
      Mat red = W.reduce(v);
      t.check(W.contains(v - red) && W.reduce(red) == red, "coset representatives");
    }
  });
  return t.finish();
}

Outcome twisting(const Scale& s) {
  Tally t("ainfty: twisted differentials");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 12, m, n, p);
    DGA L = build_lambda_dga(m, p);
    for (size_t trial = 0; trial < s.samples; ++trial) {
      Representation rho = lambda_rep(L, random_tuple(m, n, p, g));
      t.check(!augmentation_defect(L, rho).has_value(), "rho annihilates the differential");
      TwistedDGA tw = twist_diff(L, rho);
      t.check(check_twisted_d_squared(tw), "twisted d^2 = 0");
      bool constants = true;
      for (uint32_t z = 0; z < L.size(); ++z)
        if (!L.gen(z).invertible) constants = constants && tw.diff[z].constant_term().is_zero();
      t.check(constants, "no constant terms after twisting");
      t.check(eval_poly(L, rho, pq_apply([&] {
                          std::vector<FreePoly> a;
                          for (int j = 1; j <= m; ++j)
                            a.push_back(FreePoly::letter(L.index("a" + std::to_string(j)), 1, p));
                          return a;
                        }(), PQ::P, p)) == pq_matrix(rho.tuple, PQ::P, n, p),
              "P_m evaluated as a word polynomial");
    }
  });
  return t.finish();
}

Outcome sheaf_invariants(const Scale& s) {
  Tally t("sheafcat: objects, extensions and compositions");
  for_cells(s, [&](int m, size_t n, uint32_t p) {
    t.context(cell_name(m, n, p));
    SplitMix64 g = cell_rng(s, 13, m, n, p);
    auto rnd = [&] { return random_mat(n, n, p, g); };
    for (size_t trial = 0; trial < s.samples; ++trial) {
      auto tr = related_triple(m, n, p, g, trial);
      auto F = sheaf::build_sheaf_object(tr[0]), G = sheaf::build_sheaf_object(tr[1]),
           H = sheaf::build_sheaf_object(tr[2]);
      t.check(sheaf::check_object(F), "object invariants");
      {
        std::vector<Mat> rev;
        for (size_t j = m; j-- > 0;) rev.push_back(tr[0][j].transpose());
        t.check(pq_matrix(tr[0], PQ::P, n, p).transpose() == pq_matrix(rev, PQ::P, n, p),
                "P_m(A)^T = P_m(A_m^T, .., A_1^T)");
      }
      sheaf::Ext0Elem id{Mat::identity(n, p), Mat::identity(n, p)};
      t.check(sheaf::is_ext0(F, F, id), "identity in Ext^0(F, F)");
      for (const auto& u : sheaf::ext0_basis(F, G))
        t.check(sheaf::check_morphism(F, G, sheaf::materialize(u, m)), "materialized morphism");

      // General extension data: round trip, equivalence action, normalization.
      sheaf::ExtensionData d = sheaf::zero_data(n, m, p);
      d.x = rnd(), d.y = rnd(), d.v0 = rnd(), d.w0 = rnd();
      for (int k = 0; k < m; ++k) d.v[k] = rnd(), d.w[k] = rnd();
      auto X = sheaf::middle_from_data(F, G, d);
      t.check(sheaf::check_extension(F, G, X), "extension invariants");
      auto back = sheaf::read_extension(F, G, X);
      t.check(same(back.w, d.w) && same(back.v, d.v) && back.x == d.x && back.y == d.y &&
                  back.v0 == d.v0 && back.w0 == d.w0,
              "extension data round trip");
      sheaf::Equivalence q{rnd(), rnd(), rnd(), rnd(), {}};
      for (int k = 0; k < m + 2; ++k) q.u.push_back(random_invertible(n, p, g));
      try {
        auto e1 = sheaf::apply_equivalence(F, G, d, q);
        auto e2 = sheaf::read_extension(F, G, sheaf::transform(X, q));
        t.check(same(e1.w, e2.w) && same(e1.v, e2.v) && e1.x == e2.x && e1.y == e2.y &&
                    e1.v0 == e2.v0 && e1.w0 == e2.w0,
                "closed-form equivalence action");
      } catch (const std::exception& ex) {
        t.check(false, std::string("equivalence leaves the normal form: ") + ex.what());
      }
      auto nz = sheaf::normalize(F, G, d);
      auto en = sheaf::apply_equivalence(F, G, d, nz.eq);
      t.check(en.x.is_zero() && en.y.is_zero() && en.v0.is_zero() && en.w0.is_zero() &&
                  sheaf::stack(en.v).is_zero() && same(en.w, nz.w),
              "normalization");

      // Compositions against pullback and pushout, well-definedness, associativity.
      auto sGH = sheaf::ext1(G, H), sFH = sheaf::ext1(F, H), sFG = sheaf::ext1(F, G);
      auto bFG = sheaf::ext0_basis(F, G), bGH = sheaf::ext0_basis(G, H);
      for (const auto& u : bFG)
        for (size_t c = 0; c < sGH.dim; ++c) {
          auto w = sheaf::unstack(sGH.basis.col(c), m, n);
          auto PB = sheaf::pullback(F, G, H, sheaf::extension_from_class(G, H, w), u);
          t.count("pullbacks");
          if (!t.check(sheaf::check_extension(F, H, PB), "pullback is an extension")) continue;
          auto nw = sheaf::normalize(F, H, sheaf::read_extension(F, H, PB)).w;
          t.check(same(sheaf::canonical(sFH, nw), sheaf::canonical(sFH, sheaf::compose01(w, u))),
                  "compose01 equals the pullback class");
        }
      for (const auto& u : bGH)
        for (size_t c = 0; c < sFG.dim; ++c) {
          auto w = sheaf::unstack(sFG.basis.col(c), m, n);
          auto PO = sheaf::pushout(F, G, H, sheaf::extension_from_class(F, G, w), u);
          t.count("pushouts");
          if (!t.check(sheaf::check_extension(F, H, PO), "pushout is an extension")) continue;
          auto nw = sheaf::normalize(F, H, sheaf::read_extension(F, H, PO)).w;
          t.check(same(sheaf::canonical(sFH, nw), sheaf::canonical(sFH, sheaf::compose10(u, w))),
                  "compose10 equals the pushout class");
        }
      for (const auto& u : bFG)
        for (size_t c = 0; c < sGH.image.dim(); ++c) {
          auto b = sheaf::unstack(sGH.image.basis().col(c), m, n);
          t.check(sFH.image.contains(sheaf::stack(sheaf::compose01(b, u))), "compose01 well defined");
        }
      for (const auto& u : bGH)
        for (size_t c = 0; c < sFG.image.dim(); ++c) {
          auto b = sheaf::unstack(sFG.image.basis().col(c), m, n);
          t.check(sFH.image.contains(sheaf::stack(sheaf::compose10(u, b))), "compose10 well defined");
        }
      for (const auto& u : bFG)
        for (const auto& v : bGH)
          for (const auto& w : sheaf::ext0_basis(H, F)) {
            t.check(same(sheaf::compose00(w, sheaf::compose00(v, u)),
                         sheaf::compose00(sheaf::compose00(w, v), u)),
                    "compose00 associative");
            auto e = sheaf::unstack(random_mat(m * n * n, 1, p, g), m, n);
            t.check(same(sheaf::compose10(w, sheaf::compose01(e, v)),
                         sheaf::compose01(sheaf::compose10(w, e), v)),
                    "mixed associativity");
          }
    }
  });
  return t.finish();
}

Outcome functoriality(const std::vector<std::vector<Mat>>& objects, size_t max_triples,
                      bool corrupt_sign) {
  Tally t("equivalence: functoriality");
  if (objects.empty()) return t.finish();
  int m = static_cast<int>(objects[0].size());
  uint32_t p = objects[0][0].modulus();
  DGA L = build_lambda_dga(m, p);
  RepEngine E(L, corrupt_sign);
  std::vector<Representation> reps;
  for (const auto& o : objects) reps.push_back(lambda_rep(L, o));
  size_t k = reps.size();
  if (k * k * k <= max_triples) {
    for (const auto& a : reps)
      for (const auto& b : reps)
        for (const auto& c : reps) check_functoriality(E, a, b, c, m, t);
  } else {
    for (size_t i = 0; i < k; ++i) check_functoriality(E, reps[i], reps[(i + 1) % k], reps[(i + 2) % k], m, t);
  }
  return t.finish();
}

std::vector<std::vector<Mat>> sample_objects(int m, size_t n, uint32_t p, size_t count,
                                             uint64_t seed) {
  SplitMix64 g = SplitMix64(seed).split(static_cast<uint64_t>(m) * 10007ULL + n * 101ULL + p);
  std::vector<std::vector<Mat>> out;
  for (size_t i = 0; i < count; ++i)
    out.push_back(i % 2 == 1 ? conjugate(out.back(), random_invertible(n, p, g)) : random_tuple(m, n, p, g));
  return out;
}

std::vector<Outcome> run_all(const Scale& s) {
  return {exact_algebra(s), dga_identities(s), twisting(s),       sylvester(s),
          closed_forms(s),  ainfty_relations(s), unit_laws(s),    conjugation(s),
          sheaf_invariants(s), equivalence(s),  cech_oracle(s),   removal_game(s),
          eye_fixture(s)};
}

}  // namespace lmrep::suites
