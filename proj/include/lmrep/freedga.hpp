// Free noncommutative graded algebras with invertible letters, Leibniz differentials,
// the Lambda_m DGA of the (2,m) torus link and its k-copies.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lmrep/exactalg.hpp"

namespace lmrep {

struct Generator {
  std::string name;
  int degree = 0;
  bool invertible = false;
  int r = 1;  // link grading: component of the upper endpoint
  int c = 1;  // link grading: component of the lower endpoint
};

struct Letter {
  uint32_t gen = 0;
  int8_t exp = 1;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Concatenation with eager cancellation of g g^-1 and g^-1 g at the seam.
Word concat(const Word& a, const Word& b);
bool is_reduced(const Word& w);

class FreePoly {
 public:
  explicit FreePoly(uint32_t p = 2) : p_(p) {}
  static FreePoly constant(int64_t c, uint32_t p);
  static FreePoly letter(uint32_t gen, int exp, uint32_t p);
  static FreePoly word(const Word& w, int64_t c, uint32_t p);

  uint32_t modulus() const { return p_; }
  const std::map<Word, uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Word& w, uint32_t c);
  FreePoly operator+(const FreePoly& o) const;
  FreePoly operator-(const FreePoly& o) const;
  FreePoly operator-() const;
  FreePoly operator*(const FreePoly& o) const;
  FreePoly scaled(uint32_t c) const;
  FreePoly& operator+=(const FreePoly& o);
  FreePoly& operator-=(const FreePoly& o);
  bool operator==(const FreePoly& o) const { return p_ == o.p_ && terms_ == o.terms_; }
  bool operator!=(const FreePoly& o) const { return !(*this == o); }

 private:
  void check(const FreePoly& o) const;
  uint32_t p_;
  std::map<Word, uint32_t> terms_;
};

// Degree of a word given generator degrees (inverse letters contribute their generator degree).
int word_degree(const std::vector<Generator>& gens, const Word& w);

class DGA {
 public:
  DGA(uint32_t p, std::vector<Generator> gens);

  uint32_t modulus() const { return p_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& gen(uint32_t i) const { return gens_.at(i); }
  size_t size() const { return gens_.size(); }
  uint32_t index(const std::string& name) const;
  bool has(const std::string& name) const { return by_name_.count(name) > 0; }

  const FreePoly& diff(uint32_t g) const { return diff_.at(g); }
  void set_diff(uint32_t g, FreePoly f);

  // Number of base points q (the invertible generators are t_1..t_q).
  int base_points() const;

  // Degree of a homogeneous polynomial; throws std::invalid_argument if inhomogeneous.
  int degree(const FreePoly& f) const;
  std::string format(const FreePoly& f) const;
  std::string format(const Word& w) const;

 private:
  uint32_t p_;
  std::vector<Generator> gens_;
  std::vector<FreePoly> diff_;
  std::map<std::string, uint32_t> by_name_;
};

FreePoly poly_mul(const FreePoly& f, const FreePoly& g);
FreePoly apply_diff(const DGA& dga, const FreePoly& f);
bool check_d_squared(const DGA& dga);
// Checks that every differential is homogeneous of degree |g| - 1 and that every word is a
// composable path for the link grading (r of first letter = r(g), ..., c of last = c(g)).
bool check_gradings(const DGA& dga);

enum class PQ { P, Q };

// The continuant-style recursion applied to arbitrary arguments f_1..f_m.
FreePoly pq_apply(const std::vector<FreePoly>& args, PQ kind, uint32_t p);
// P_m or Q_m in letters 0..m-1 (named a_1..a_m by callers).
FreePoly pq_polynomial(int m, PQ kind, uint32_t p);

// Lambda_m: generators b1, b2, a1..am, t1, t2 in that order.
DGA build_lambda_dga(int m, uint32_t p);

struct CopyIndex {
  enum Kind { Chord, T, X, Y } kind;
  uint32_t base;  // generator index in the base DGA (Chord, T) or base point 1..q (X, Y)
  int i, j;       // copy superscripts; for T only i is used
};

// k-copy DGA. Carries `copy_index` for every generator so consumers can decode the letters.
struct KCopy {
  DGA dga;
  int k;
  std::vector<CopyIndex> copy_index;
  std::map<std::tuple<int, uint32_t, int, int>, uint32_t> lookup;  // (kind, base, i, j) -> gen
  uint32_t find(CopyIndex::Kind kind, uint32_t base, int i, int j) const;
};

KCopy kcopy_dga(const DGA& base, int k);

}  // namespace lmrep
