// Closed-form computations in Rep_n(Lambda_m): Sylvester identity, mu_1, the reduced two-term
// complex and its cohomology, the P/Q intertwining identities and mu_2 on cohomology.
#pragma once

#include <vector>

#include "lmrep/ainfty.hpp"

namespace lmrep::torus {

// det P_m(A) == (-1)^{mn} det Q_m(A).
bool sylvester_check(const std::vector<Mat>& A);

// mu_1 on Hom(rho, rho') by the explicit formulas (x homogeneous of degree 0, 1 or 2).
HomElement mu1_closed(const DGA& lambda, const Representation& rho, const Representation& rhop,
                      const HomElement& x);

// (u_1, u_2) -> (u_1A'_1 - A_1u_2, u_2A'_2 - A_2u_1, u_1A'_3 - A_3u_2, ...) as a matrix
// (Mat_n)^2 -> (Mat_n)^m on row-major coordinates.
Mat reduced_map(const Representation& rho, const Representation& rhop);

struct Cohomology {
  size_t dim0 = 0, dim1 = 0;
  Mat h0;          // 2n^2 x dim0: kernel basis, coordinates (u_1, u_2)
  Mat h1;          // mn^2 x dim1: canonical coset representatives of (Mat_n)^m / image
  Subspace image;  // image of reduced_map
};

Cohomology cohomology_closed(const Representation& rho, const Representation& rhop);

// Degree-0 and degree-1 classes in the reduced coordinates: (u_1, u_2) or (w_1, ..., w_m).
struct TorusClass {
  int degree = 0;
  std::vector<Mat> c;
};

HomElement h0_element(const TorusClass& u);
// The cocycle sum w_j a_j^v + v_1 x_1^v + v_2 x_2^v with v_1, v_2 solved from the b-coefficients.
HomElement h1_lift(const Representation& rho, const Representation& rhop, const TorusClass& w);
// Drops the x and y parts; reads (u_1, u_2) from degree 0 and (w_1..w_m) from degree 1.
TorusClass project(const HomElement& x, int m);
// Canonical representative of an H^1 class.
TorusClass canonical_h1(const Cohomology& h, const TorusClass& w);

Mat stack(const TorusClass& x);
TorusClass unstack(int degree, const Mat& v, size_t parts, size_t n);

enum class Check { Holds, Fails, PreconditionViolated };
// Both identities u_1P_m(A') = P_m(A)u_{2|1} and Q_m(A)u_2 = u_{1|2}Q_m(A') (odd|even m).
Check pq_intertwine_check(const std::vector<Mat>& A, const std::vector<Mat>& Ap, const Mat& u1,
                          const Mat& u2);

// mu_2(g, f) with g in H(rho', rho''), f in H(rho, rho'); degrees (0,0), (0,1), (1,0).
TorusClass mu2_closed(const TorusClass& g, const TorusClass& f);

}  // namespace lmrep::torus
