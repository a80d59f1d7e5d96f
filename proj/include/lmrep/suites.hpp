// Property suites shared by the `verify` subcommand and the acceptance binary. Each suite runs
// a family of exact checks over a grid of (m, n, p) cells and reports case and failure counts.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lmrep/exactalg.hpp"

namespace lmrep::suites {

struct Scale {
  int min_m = 1, max_m = 3;
  size_t min_n = 1, max_n = 2;
  std::vector<uint32_t> primes{2, 3};
  size_t samples = 3;  // random cases per cell; 0 disables every suite
  uint64_t seed = 1;
  int resolution = 1;
  uint64_t budget = 1u << 16;
  bool corrupt_sign = false;
};

struct Outcome {
  std::string name;
  bool pass = true;
  size_t cases = 0, failures = 0;
  std::string first_failure;
  std::map<std::string, size_t> counts;  // named sub-counts, e.g. mu2 cases per degree pair
  double seconds = 0;
};

// d^2 = 0 and grading consistency for Lambda_m and its 2- and 3-copies.
Outcome dga_identities(const Scale& s);
// det P_m(A) = (-1)^{mn} det Q_m(A) on random tuples.
Outcome sylvester(const Scale& s);
// Closed-form mu_1, cohomology and mu_2 against the copy machinery.
Outcome closed_forms(const Scale& s);
// A-infinity relations at arities 1, 2, 3 on random homogeneous inputs.
Outcome ainfty_relations(const Scale& s);
// mu_1(e) = 0 and [mu_2(e, f)] = [f] = [mu_2(f, e)].
Outcome unit_laws(const Scale& s);
// Dimensions, vanishing of degree 2 and functoriality of the transpose functor.
Outcome equivalence(const Scale& s);
// Čech dimensions against Ext dimensions, H^2 certificates, refinement invariance.
Outcome cech_oracle(const Scale& s);
// The removal game on the closure tilings and its rank certificates.
Outcome removal_game(const Scale& s);
// Hom between rank r and rank s sheaves on the eye.
Outcome eye_fixture(const Scale& s);
// is_isomorphic(rho, M^-1 rho M) finds a witness, checked against every generator.
Outcome conjugation(const Scale& s);

// Further module properties run by `verify`.
Outcome exact_algebra(const Scale& s);
Outcome twisting(const Scale& s);
Outcome sheaf_invariants(const Scale& s);

// Functoriality of the transpose functor on triples of objects (tuples with P_m invertible):
// every ordered triple when there are at most `max_triples` of them, else consecutive ones.
Outcome functoriality(const std::vector<std::vector<Mat>>& objects, size_t max_triples,
                      bool corrupt_sign = false);

// Seeded objects for sweeps: odd positions are conjugates of their predecessor so that Hom
// spaces between neighbours are nonzero.
std::vector<std::vector<Mat>> sample_objects(int m, size_t n, uint32_t p, size_t count,
                                             uint64_t seed);

// Every suite above in a fixed order.
std::vector<Outcome> run_all(const Scale& s);

}  // namespace lmrep::suites
