// One PASS/FAIL line per acceptance criterion. Every check is exact: a criterion passes when
// its suite reports zero failures, reaches the minimum case count, and finishes within the
// time limit. Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lmrep/suites.hpp"

using namespace lmrep::suites;

namespace {

struct Criterion {
  int id;
  std::string what;
  std::function<Outcome(const Scale&)> run;
  Scale scale;
  std::string count_key;  // sub-count that must reach min_count; empty means total cases
  size_t min_count;
  double max_seconds;
};

Scale grid(int max_m, size_t min_n, size_t max_n, std::vector<uint32_t> primes, size_t samples) {
  Scale s;
  s.min_m = 1;
  s.max_m = max_m;
  s.min_n = min_n;
  s.max_n = max_n;
  s.primes = std::move(primes);
  s.samples = samples;
  s.seed = 20240601;
  s.budget = 1u << 16;
  return s;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "d^2 = 0 for Lambda_m and its 2-, 3-copies, m <= 4, p in {2,3,5}", dga_identities,
       grid(4, 1, 1, {2, 3, 5}, 1), "3-copy", 12, 10.0},
      {2, "Sylvester identity on random tuples, n <= 3, m <= 6, F_5", sylvester,
       grid(6, 1, 3, {5}, 56), "", 1000, 60.0},
      {3, "closed-form mu_1, mu_2 equal the copy machinery, n <= 2, m <= 4", closed_forms,
       grid(4, 1, 2, {2, 3, 5}, 5), "triples", 100, 300.0},
      {4, "A-infinity relations at arities 1-3", ainfty_relations, grid(4, 1, 2, {2, 3, 5}, 3),
       "arity3", 1000, 300.0},
      {5, "unit laws on cohomology", unit_laws, grid(4, 1, 2, {2, 3, 5}, 5), "closed_1", 50, 300.0},
      {6, "equivalence: dims, degree 2 vanishing, functoriality (n=1 enumeration, n=2 samples)",
       equivalence, grid(3, 2, 2, {2, 3}, 5), "pairs", 9 + 60, 120.0},
      {7, "Čech dims equal Ext dims and d^1 is surjective", cech_oracle, grid(3, 1, 2, {2, 3}, 5),
       "pairs", 60, 300.0},
      {8, "removal game succeeds for m <= 4 and certifies surjectivity", removal_game,
       grid(4, 1, 2, {2, 3}, 2), "games", 8, 300.0},
      {9, "eye unknot Hom is k^{rs} in degree 0, r, s <= 2", eye_fixture, grid(1, 1, 1, {2, 3, 5}, 1),
       "pairs", 24, 60.0},
      {10, "conjugation gives an isomorphism witness", conjugation, grid(4, 1, 2, {2, 3, 5}, 5),
       "pairs", 100, 300.0},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o = c.run(c.scale);
    size_t count = c.count_key.empty() ? o.cases : o.counts[c.count_key];
    bool enough = count >= c.min_count;
    bool fast = o.seconds <= c.max_seconds;
    bool pass = o.pass && enough && fast;
    all = all && pass;
    std::string extra;
    for (const auto& [k, v] : o.counts) extra += " " + k + "=" + std::to_string(v);
    std::printf("criterion %d: %s  %s [cases=%zu failures=%zu%s; %.2fs <= %.0fs]\n", c.id,
                pass ? "PASS" : "FAIL", c.what.c_str(), o.cases, o.failures, extra.c_str(), o.seconds,
                c.max_seconds);
    if (!o.pass) std::printf("  first failure: %s\n", o.first_failure.c_str());
    if (!enough)
      std::printf("  only %zu cases for %s, need %zu\n", count,
                  c.count_key.empty() ? "the suite" : c.count_key.c_str(), c.min_count);
    if (!fast) std::printf("  time limit exceeded\n");
  }
  return all ? 0 : 1;
}
