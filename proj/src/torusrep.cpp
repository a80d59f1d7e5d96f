#include "lmrep/torusrep.hpp"

#include <stdexcept>

namespace lmrep::torus {

namespace {

int lambda_m(const DGA& lambda) { return static_cast<int>(lambda.size()) - 4; }

struct Names {
  uint32_t b1, b2, t1, t2;
  std::vector<uint32_t> a;
};

Names names(const DGA& lambda) {
  Names nm{lambda.index("b1"), lambda.index("b2"), lambda.index("t1"), lambda.index("t2"), {}};
  for (int j = 1; j <= lambda_m(lambda); ++j) nm.a.push_back(lambda.index("a" + std::to_string(j)));
  return nm;
}

std::vector<Mat> slice(const std::vector<Mat>& v, size_t from, size_t to) {
  return {v.begin() + from, v.begin() + to};
}

}  // namespace

bool sylvester_check(const std::vector<Mat>& A) {
  size_t n = A.at(0).rows(), m = A.size();
  uint32_t p = A[0].modulus();
  FieldElem dp = det(pq_matrix(A, PQ::P, n, p));
  FieldElem dq = det(pq_matrix(A, PQ::Q, n, p));
  return (m * n) % 2 == 0 ? dp == dq : dp == -dq;
}

HomElement mu1_closed(const DGA& lambda, const Representation& rho, const Representation& rhop,
                      const HomElement& x) {
  int m = lambda_m(lambda);
  Names nm = names(lambda);
  size_t n = rho.n;
  uint32_t p = rho.p;
  const auto& A = rho.tuple;
  const auto& Ap = rhop.tuple;
  const Mat& T2 = rho.at(nm.t2);
  const Mat& T1p = rhop.at(nm.t1);
  const Mat& T2p = rhop.at(nm.t2);
  const Mat& T1i = *rho.inv[nm.t1];
  const Mat& T2i = *rho.inv[nm.t2];
  const Mat& T1pi = *rhop.inv[nm.t1];
  DualGen b1{DualGen::Chord, nm.b1}, b2{DualGen::Chord, nm.b2};
  DualGen x1{DualGen::X, 1}, x2{DualGen::X, 2}, y1{DualGen::Y, 1}, y2{DualGen::Y, 2};
  HomElement out = HomElement::zero(x.degree + 1, n, p);

  if (x.degree == 1) {
    for (int j = 1; j <= m; ++j) {
      Mat w = x.get({DualGen::Chord, nm.a[j - 1]});
      Mat pb = pq_matrix(slice(A, 0, j - 1), PQ::P, n, p) * w *
               pq_matrix(slice(Ap, j, m), PQ::P, n, p);
      Mat qb = pq_matrix(slice(A, j, m), PQ::Q, n, p) * w *
               pq_matrix(slice(Ap, 0, j - 1), PQ::Q, n, p);
      out.add(b1, pb);
      out.add(b2, -qb);
    }
    out.add(b1, -(x.get(x1) * T1pi));
    out.add(b2, T2 * x.get(x2));
  } else if (x.degree == 0) {
    Mat u1 = x.get(y1), u2 = x.get(y2);
    for (int j = 1; j <= m; ++j) {
      DualGen aj{DualGen::Chord, nm.a[j - 1]};
      if (j % 2 == 1) {
        out.add(aj, u1 * Ap[j - 1]);
        out.add(aj, -(A[j - 1] * u2));
      } else {
        out.add(aj, -(A[j - 1] * u1));
        out.add(aj, u2 * Ap[j - 1]);
      }
    }
    out.add(x1, -u1);
    out.add(x2, -u2);
    if (m % 2 == 1) {
      out.add(x2, T2i * u1 * T2p);
      out.add(x1, T1i * u2 * T1p);
    } else {
      out.add(x1, T1i * u1 * T1p);
      out.add(x2, T2i * u2 * T2p);
    }
  }
  return out;
}

Mat reduced_map(const Representation& rho, const Representation& rhop) {
  size_t n = rho.n, n2 = n * n, m = rho.tuple.size();
  uint32_t p = rho.p;
  Mat M(m * n2, 2 * n2, p);
  for (size_t c = 0; c < 2 * n2; ++c) {
    Mat u[2] = {Mat(n, n, p), Mat(n, n, p)};
    u[c / n2].data()[c % n2] = 1;
    for (size_t j = 1; j <= m; ++j) {
      const Mat& a = rho.tuple[j - 1];
      const Mat& ap = rhop.tuple[j - 1];
      Mat v = j % 2 == 1 ? u[0] * ap - a * u[1] : u[1] * ap - a * u[0];
      for (size_t e = 0; e < n2; ++e) M((j - 1) * n2 + e, c) = v.data()[e];
    }
  }
  return M;
}

Cohomology cohomology_closed(const Representation& rho, const Representation& rhop) {
  Mat d = reduced_map(rho, rhop);
  Cohomology h{0, 0, kernel_matrix(d), Mat(), Subspace::span(d)};
  h.dim0 = h.h0.cols();
  h.h1 = quotient_basis(Mat::identity(d.rows(), rho.p), h.image);
  h.dim1 = h.h1.cols();
  return h;
}

Mat stack(const TorusClass& x) {
  std::vector<Mat> cols;
  for (const auto& m : x.c) cols.push_back(m.vec());
  return vstack(cols);
}

TorusClass unstack(int degree, const Mat& v, size_t parts, size_t n) {
  TorusClass x{degree, {}};
  size_t n2 = n * n;
  for (size_t i = 0; i < parts; ++i) x.c.push_back(Mat::unvec(v.block(i * n2, 0, n2, 1), n, n));
  return x;
}

HomElement h0_element(const TorusClass& u) {
  const Mat& u1 = u.c.at(0);
  HomElement e = HomElement::zero(0, u1.rows(), u1.modulus());
  e.add({DualGen::Y, 1}, u1);
  e.add({DualGen::Y, 2}, u.c.at(1));
  return e;
}

HomElement h1_lift(const Representation& rho, const Representation& rhop, const TorusClass& w) {
  size_t m = rho.tuple.size(), n = rho.n;
  uint32_t p = rho.p;
  const auto& A = rho.tuple;
  const auto& Ap = rhop.tuple;
  // a-generators sit at indices 2..m+1 and t1, t2 at m+2, m+3 in Lambda_m.
  uint32_t t1 = static_cast<uint32_t>(m + 2), t2 = static_cast<uint32_t>(m + 3);
  Mat sp(n, n, p), sq(n, n, p);
  HomElement x = HomElement::zero(1, n, p);
  for (size_t j = 1; j <= m; ++j) {
    const Mat& wj = w.c.at(j - 1);
    sp += pq_matrix(slice(A, 0, j - 1), PQ::P, n, p) * wj * pq_matrix(slice(Ap, j, m), PQ::P, n, p);
    sq += pq_matrix(slice(A, j, m), PQ::Q, n, p) * wj * pq_matrix(slice(Ap, 0, j - 1), PQ::Q, n, p);
    x.add({DualGen::Chord, static_cast<uint32_t>(j + 1)}, wj);
  }
  x.add({DualGen::X, 1}, sp * rhop.at(t1));
  x.add({DualGen::X, 2}, *rho.inv[t2] * sq);
  return x;
}

TorusClass project(const HomElement& x, int m) {
  TorusClass t{x.degree, {}};
  if (x.degree == 0) {
    t.c = {x.get({DualGen::Y, 1}), x.get({DualGen::Y, 2})};
  } else if (x.degree == 1) {
    for (int j = 1; j <= m; ++j) t.c.push_back(x.get({DualGen::Chord, static_cast<uint32_t>(j + 1)}));
  } else {
    throw std::invalid_argument("only degrees 0 and 1 carry cohomology");
  }
  return t;
}

TorusClass canonical_h1(const Cohomology& h, const TorusClass& w) {
  size_t n = w.c.at(0).rows();
  return unstack(1, h.image.reduce(stack(w)), w.c.size(), n);
}

Check pq_intertwine_check(const std::vector<Mat>& A, const std::vector<Mat>& Ap, const Mat& u1,
                          const Mat& u2) {
  size_t m = A.size(), n = u1.rows();
  uint32_t p = u1.modulus();
  for (size_t j = 1; j <= m; ++j) {
    bool ok = j % 2 == 1 ? u1 * Ap[j - 1] == A[j - 1] * u2 : A[j - 1] * u1 == u2 * Ap[j - 1];
    if (!ok) return Check::PreconditionViolated;
  }
  Mat P = pq_matrix(A, PQ::P, n, p), Pp = pq_matrix(Ap, PQ::P, n, p);
  Mat Q = pq_matrix(A, PQ::Q, n, p), Qp = pq_matrix(Ap, PQ::Q, n, p);
  bool odd = m % 2 == 1;
  bool first = u1 * Pp == P * (odd ? u2 : u1);
  bool second = Q * u2 == (odd ? u1 : u2) * Qp;
  return first && second ? Check::Holds : Check::Fails;
}

TorusClass mu2_closed(const TorusClass& g, const TorusClass& f) {
  if (g.degree == 0 && f.degree == 0)
    return {0, {-(f.c.at(0) * g.c.at(0)), -(f.c.at(1) * g.c.at(1))}};
  if (g.degree == 0 && f.degree == 1) {
    TorusClass r{1, {}};
    for (size_t j = 1; j <= f.c.size(); ++j) r.c.push_back(-(f.c[j - 1] * g.c.at(j % 2 == 1 ? 1 : 0)));
    return r;
  }
  if (g.degree == 1 && f.degree == 0) {
    TorusClass r{1, {}};
    for (size_t j = 1; j <= g.c.size(); ++j) r.c.push_back(-(f.c.at(j % 2 == 1 ? 0 : 1) * g.c[j - 1]));
    return r;
  }
  throw std::invalid_argument("mu_2 of two degree-1 classes lands in degree 2, which vanishes");
}

}  // namespace lmrep::torus
