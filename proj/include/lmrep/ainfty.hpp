// Matrix representations of a DGA, twisting by augmentations, and the A-infinity operations
// mu_k obtained by dualizing the differential of the (k+1)-copy.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmrep/exactalg.hpp"
#include "lmrep/freedga.hpp"

namespace lmrep {

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, uint64_t required, uint64_t budget)
      : std::runtime_error(what + ": requires " + std::to_string(required) + ", budget " +
                           std::to_string(budget)),
        required(required),
        budget(budget) {}
  uint64_t required, budget;
};

// Assignment of n x n matrices to the degree-0 generators of a DGA; all other generators map to 0.
struct Representation {
  uint32_t p = 2;
  size_t n = 1;
  std::vector<std::optional<Mat>> value;  // per generator; only degree-0 ones are set
  std::vector<std::optional<Mat>> inv;    // inverses for invertible generators
  std::vector<Mat> tuple;                 // (A_1..A_m) when built from Lambda_m

  const Mat& at(uint32_t g) const;
};

// P_m or Q_m evaluated on matrices by the recurrences (P over prefixes, Q over suffixes).
Mat pq_matrix(const std::vector<Mat>& args, PQ kind, size_t n, uint32_t p);

// Builds a representation and checks rho(t) invertible and rho(d g) = 0 for all g.
Representation make_representation(const DGA& dga, size_t n, const std::map<uint32_t, Mat>& values);
// Lambda_m representation from (A_1..A_m): T1 = -P_m(A)^{-1}, T2 = -Q_m(A).
Representation lambda_rep(const DGA& lambda, const std::vector<Mat>& tuple);
// Generator whose differential is not annihilated, if any.
std::optional<uint32_t> augmentation_defect(const DGA& dga, const Representation& rho);

Mat eval_word(const DGA& dga, const Representation& rho, const Word& w);
Mat eval_poly(const DGA& dga, const Representation& rho, const FreePoly& f);

// All tuples with P_m(A) invertible, lexicographic in the entries (A_1 row-major first).
std::vector<std::vector<Mat>> enumerate_tuples(int m, size_t n, uint32_t p, uint64_t budget);
std::vector<Representation> enumerate_reps(const DGA& lambda, size_t n, uint64_t budget);

// ---- twisting ----

// Element of the tensor algebra over Mat_n: for each word of chord letters z_1..z_L the
// coefficient lies in Mat_n^{(x)(L+1)}, stored densely with index (i0,j0,i1,j1,...,iL,jL).
struct MatPoly {
  size_t n = 1;
  uint32_t p = 2;
  std::map<Word, std::vector<uint32_t>> terms;

  static MatPoly constant(const Mat& m);
  static MatPoly letter(uint32_t gen, size_t n, uint32_t p);
  bool is_zero() const;
  void add(const Word& w, const std::vector<uint32_t>& t, uint32_t scale = 1);
  MatPoly operator*(const MatPoly& o) const;
  MatPoly& operator+=(const MatPoly& o);
  // The constant (empty word) coefficient, or the zero matrix.
  Mat constant_term() const;
  // Coefficient tensor of w, zero if absent.
  std::vector<uint32_t> coeff(const Word& w) const;
};

struct TwistedDGA {
  const DGA* dga;
  Representation eps;
  std::vector<MatPoly> diff;  // per generator; only chords carry letters
};

// d_eps(c) = phi_eps(d c) with phi_eps(c) = c + eps(c); throws std::invalid_argument naming the
// offending generator when eps does not annihilate the differential.
TwistedDGA twist_diff(const DGA& dga, const Representation& eps);
MatPoly apply_twisted(const TwistedDGA& t, const MatPoly& f);
bool check_twisted_d_squared(const TwistedDGA& t);

// ---- Hom spaces ----

struct DualGen {
  enum Kind { Chord = 0, X = 1, Y = 2 } kind;
  uint32_t index;  // base generator for Chord, base point (1-based) for X and Y
  auto operator<=>(const DualGen&) const = default;
};

struct HomElement {
  int degree = 0;
  size_t n = 1;
  uint32_t p = 2;
  std::map<DualGen, Mat> coeffs;

  static HomElement zero(int degree, size_t n, uint32_t p) { return {degree, n, p, {}}; }
  void add(const DualGen& g, const Mat& m);
  Mat get(const DualGen& g) const;
  bool is_zero() const;
  HomElement operator+(const HomElement& o) const;
  HomElement operator-(const HomElement& o) const;
  HomElement scaled(uint32_t c) const;
  bool operator==(const HomElement& o) const;
};

// The graded free Mat_n-module on dual generators in the fixed order: degree-0 chords, x's,
// remaining chords, y's (for Lambda_m: a_1..a_m, x_1, x_2, b_1, b_2, y_1, y_2).
class HomSpace {
 public:
  HomSpace(const DGA& dga, size_t n);
  const std::vector<DualGen>& duals() const { return duals_; }
  int dual_degree(const DualGen& g) const;
  std::string name(const DualGen& g) const;
  std::vector<DualGen> duals_of_degree(int d) const;
  std::vector<int> degrees() const;
  size_t dim(int d) const { return duals_of_degree(d).size() * n_ * n_; }
  Mat to_vec(const HomElement& x) const;  // column vector in Hom^{x.degree}
  HomElement from_vec(int d, const Mat& v) const;
  size_t n() const { return n_; }
  uint32_t modulus() const { return p_; }

 private:
  const DGA* dga_;
  size_t n_;
  uint32_t p_;
  std::vector<DualGen> duals_;
};

struct HomCohomology {
  std::map<int, size_t> dims;
  std::map<int, Mat> bases;  // columns: canonical representatives of classes
  std::map<int, Subspace> boundaries;
};

// Engine for Rep_n(Lambda) built on one base DGA: caches the (k+1)-copies and the chain terms.
class RepEngine {
 public:
  explicit RepEngine(const DGA& base, bool corrupt_sign = false);

  const DGA& base() const { return base_; }
  HomSpace space(size_t n) const { return HomSpace(base_, n); }

  // mu_k(args[0], ..., args[k-1]) with args[0] in Hom(rho_{k-1}, rho_k), ..., args[k-1] in
  // Hom(rho_0, rho_1); rhos = (rho_0, ..., rho_k).
  HomElement mu(const std::vector<const Representation*>& rhos,
                const std::vector<HomElement>& args);
  HomElement mu1(const Representation& r0, const Representation& r1, const HomElement& x);
  HomElement mu2(const Representation& r0, const Representation& r1, const Representation& r2,
                 const HomElement& a, const HomElement& b);
  // Matrix of mu_1 : Hom^d(r0, r1) -> Hom^{d+1}(r0, r1) in HomSpace coordinates.
  Mat mu1_matrix(const Representation& r0, const Representation& r1, int d);
  HomCohomology hom_cohomology(const Representation& r0, const Representation& r1);

  HomElement unit(const Representation& rho) const;

  // Sum over the A-infinity relation at arity args.size() (Koszul convention); zero iff it holds.
  HomElement ainfty_relation(const std::vector<const Representation*>& rhos,
                             const std::vector<HomElement>& args);

  struct ChainTerm {
    uint32_t coeff;
    Word word;  // letters of the (k+1)-copy, each diagonal or a step (i, i+1)
  };
  // For every dual generator w in HomSpace order, the chain words of d(w^{1,k+1}).
  const std::vector<std::vector<ChainTerm>>& chains(int k);
  const KCopy& copy(int k);

 private:
  DGA base_;
  bool corrupt_;
  std::vector<DualGen> order_;
  std::map<int, std::unique_ptr<KCopy>> copies_;
  std::map<int, std::vector<std::vector<ChainTerm>>> chains_;
};

struct IsoResult {
  enum Status { Found, NotIsomorphic, Undecided } status;
  std::vector<Mat> witness;  // u_1..u_q
  uint64_t solution_dim = 0;
  uint64_t tried = 0;
};

// Searches for invertible u_1..u_q with u_{r(z)} rho2(z) = rho1(z) u_{c(z)} for every degree-0
// generator z: solves the linear system, then enumerates the solution space when it has at most
// `budget` points, otherwise samples `budget` random points (seeded) and reports Undecided if
// none is invertible.
IsoResult is_isomorphic(const DGA& dga, const Representation& r1, const Representation& r2,
                        uint64_t budget, uint64_t seed = 0);

}  // namespace lmrep
