// Microlocal rank-n sheaves on the Lambda_m front as (phi_k, psi) diagrams, Ext^0 and Ext^1
// between them, extension normal forms, compositions, and the functor from representations.
#pragma once

#include <vector>

#include "lmrep/exactalg.hpp"

namespace lmrep::sheaf {

struct SheafObject {
  size_t n = 1;
  uint32_t p = 2;
  std::vector<Mat> A;    // A_1..A_m
  std::vector<Mat> phi;  // phi_1..phi_{m+1}, each 2n x n
  Mat psi;               // n x 2n

  size_t m() const { return A.size(); }
};

// [[0, 1], [1, a]] in n-blocks.
Mat crossing_block(const Mat& a);

// Rejects tuples with P_m(A) singular.
SheafObject build_sheaf_object(const std::vector<Mat>& A);
// psi phi_1 = I, [phi_i phi_{i+1}] invertible, psi phi_{m+1} invertible.
bool check_object(const SheafObject& F);

// ---- Ext^0 ----

struct Ext0Elem {
  Mat u1, u2;
};

// Linear system in (u_1, u_2) from F = (A) to G = (A'): A'_k u_1 = u_2 A_k for k even and
// A'_k u_2 = u_1 A_k for k odd.
Mat ext0_system(const SheafObject& F, const SheafObject& G);
std::vector<Ext0Elem> ext0_basis(const SheafObject& F, const SheafObject& G);
bool is_ext0(const SheafObject& F, const SheafObject& G, const Ext0Elem& u);

struct MorphismDiagram {
  std::vector<Mat> u;  // u_0..u_{m+1}
  Mat v;               // 2n x 2n
};

MorphismDiagram materialize(const Ext0Elem& e, size_t m);
// v phi_k = phi'_k u_k for all k and psi' v = u_0 psi.
bool check_morphism(const SheafObject& F, const SheafObject& G, const MorphismDiagram& d);
MorphismDiagram compose_diagrams(const MorphismDiagram& second, const MorphismDiagram& first);

// ---- Ext^1 ----

// (u_1, u_2) -> (u_kA_k - A'_k u_{k+1})_k, with u_k = u_1 for k odd and u_2 for k even.
Mat ext1_image_map(const SheafObject& F, const SheafObject& G);

struct Ext1Space {
  size_t dim = 0;
  Mat basis;  // mn^2 x dim canonical coset representatives
  Subspace image;
};

Ext1Space ext1(const SheafObject& F, const SheafObject& G);
std::vector<Mat> canonical(const Ext1Space& s, const std::vector<Mat>& w);
Mat stack(const std::vector<Mat>& w);
std::vector<Mat> unstack(const Mat& v, size_t parts, size_t n);

// General extension of F by G (G is the subobject): Psi = (0 v0 1 w0; 0 0 0 1),
// Omega_1 = (0 x 1 v1; 0 0 0 1; 1 y A'_1 w1; 0 1 0 A_1), Omega_k with x = y = 0 for k >= 2.
struct ExtensionData {
  Mat x, y, v0, w0;
  std::vector<Mat> v, w;  // v_1..v_m, w_1..w_m
};

ExtensionData zero_data(size_t n, size_t m, uint32_t p);
ExtensionData class_data(const std::vector<Mat>& w);

struct MiddleObject {
  Mat Psi;                  // 2n x 4n
  std::vector<Mat> Omega;   // Omega_1..Omega_m, 4n x 4n
  std::vector<Mat> Phi;     // Phi_1..Phi_{m+1}, 4n x 2n
};

MiddleObject middle_from_data(const SheafObject& F, const SheafObject& G, const ExtensionData& d);
MiddleObject extension_from_class(const SheafObject& F, const SheafObject& G,
                                  const std::vector<Mat>& w);
// Recovers Omega_k = (Omega_1...Omega_{k-1})^{-1}[Phi_k Phi_{k+1}] and reads the data; throws
// std::invalid_argument if the diagram is not in the general extension form.
ExtensionData read_extension(const SheafObject& F, const SheafObject& G, const MiddleObject& X);
// Psi Phi_1, [Phi_k Phi_{k+1}] and Psi Phi_{m+1} invertible, and componentwise exactness of 0 -> G -> X -> F -> 0.
bool check_extension(const SheafObject& F, const SheafObject& G, const MiddleObject& X);

struct Equivalence {
  Mat z1, z2, z3, z4;
  std::vector<Mat> u;  // u_0..u_{m+1}
};

// Closed-form action of an isomorphism of extensions on the data.
ExtensionData apply_equivalence(const SheafObject& F, const SheafObject& G,
                                const ExtensionData& d, const Equivalence& e);
// Matrix action: Psi' = Y_0 Psi Theta^{-1}, Omega'_1 = Theta Omega_1 (Y_1+Y_2)^{-1},
// Omega'_k = (Y_{k-1}+Y_k) Omega_k (Y_k+Y_{k+1})^{-1}.
MiddleObject transform(const MiddleObject& X, const Equivalence& e);

struct Normalized {
  std::vector<Mat> w;
  Equivalence eq;  // takes the input data to (0, .., 0, w)
};
Normalized normalize(const SheafObject& F, const SheafObject& G, const ExtensionData& d);

// ---- compositions ----

Ext0Elem compose00(const Ext0Elem& second, const Ext0Elem& first);
// e' in Ext^1(F', F''), u in Ext^0(F, F') -> e' o u in Ext^1(F, F'').
std::vector<Mat> compose01(const std::vector<Mat>& e, const Ext0Elem& u);
// u' in Ext^0(F', F''), e in Ext^1(F, F') -> u' o e in Ext^1(F, F'').
std::vector<Mat> compose10(const Ext0Elem& u, const std::vector<Mat>& e);

// u^*X for X an extension of F' by F'' and u : F -> F'; an extension of F by F''.
MiddleObject pullback(const SheafObject& F, const SheafObject& Fp, const SheafObject& Fpp,
                      const MiddleObject& X, const Ext0Elem& u);
// u_*X for X an extension of F by F' and u : F' -> F''; an extension of F by F''.
MiddleObject pushout(const SheafObject& F, const SheafObject& Fp, const SheafObject& Fpp,
                     const MiddleObject& X, const Ext0Elem& u);

// ---- the functor from representations ----

std::vector<Mat> functor_object(const std::vector<Mat>& tuple);
Ext0Elem functor_h0(const Mat& u1, const Mat& u2);
std::vector<Mat> functor_h1(const std::vector<Mat>& w);

}  // namespace lmrep::sheaf
