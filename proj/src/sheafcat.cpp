#include "lmrep/sheafcat.hpp"

#include <stdexcept>

namespace lmrep::sheaf {

namespace {

Mat I(size_t n, uint32_t p) { return Mat::identity(n, p); }
Mat Z(size_t n, uint32_t p) { return Mat::zero(n, n, p); }

// Square block matrix from an r x r grid of n x n blocks.
Mat grid(const std::vector<std::vector<Mat>>& b) {
  std::vector<Mat> rows;
  for (const auto& r : b) rows.push_back(hstack(r));
  return vstack(rows);
}

Mat blk(const Mat& M, size_t i, size_t j, size_t n) { return M.block(i * n, j * n, n, n); }

// Rows {0, 2} (the subobject) or {1, 3} (the quotient) of a 4n-row matrix, as a 2n-row matrix.
Mat rows_of(const Mat& M, size_t a, size_t b, size_t n) {
  return vstack({M.block(a * n, 0, n, M.cols()), M.block(b * n, 0, n, M.cols())});
}

// 4n-row matrix with `s` in block rows {0, 2} and `q` in {1, 3}.
Mat interleave(const Mat& s, const Mat& q, size_t n) {
  return vstack({s.block(0, 0, n, s.cols()), q.block(0, 0, n, q.cols()), s.block(n, 0, n, s.cols()),
                 q.block(n, 0, n, q.cols())});
}

void same_shape(const SheafObject& F, const SheafObject& G) {
  if (F.n != G.n || F.p != G.p || F.m() != G.m())
    throw std::invalid_argument("sheaf objects over different n, field or m");
}

Mat pq_prefix(const std::vector<Mat>& a, size_t from, size_t to, size_t n, uint32_t p) {
  Mat prev = Z(n, p), cur = I(n, p);
  for (size_t k = from; k < to; ++k) {
    Mat next = cur * a[k] + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

Mat crossing_block(const Mat& a) {
  size_t n = a.rows();
  uint32_t p = a.modulus();
  return grid({{Z(n, p), I(n, p)}, {I(n, p), a}});
}

SheafObject build_sheaf_object(const std::vector<Mat>& A) {
  if (A.empty()) throw std::invalid_argument("empty tuple");
  size_t n = A[0].rows(), m = A.size();
  uint32_t p = A[0].modulus();
  if (det(pq_prefix(A, 0, m, n, p)).is_zero())
    throw std::invalid_argument("P_m(A) is singular: the right cusp condition fails");
  SheafObject F{n, p, A, {}, hstack({Z(n, p), I(n, p)})};
  Mat chain = I(2 * n, p);
  F.phi.push_back(vstack({Z(n, p), I(n, p)}));
  for (size_t k = 1; k <= m; ++k) {
    chain = chain * crossing_block(A[k - 1]);  // [phi_k phi_{k+1}] = B_1 ... B_k
    F.phi.push_back(chain.block(0, n, 2 * n, n));
  }
  return F;
}

bool check_object(const SheafObject& F) {
  size_t n = F.n;
  if (F.psi * F.phi[0] != I(n, F.p)) return false;
  for (size_t i = 0; i + 1 < F.phi.size(); ++i)
    if (rank(hstack({F.phi[i], F.phi[i + 1]})) != 2 * n) return false;
  return !det(F.psi * F.phi.back()).is_zero();
}

// ---------------------------------------------------------------- Ext^0

Mat ext0_system(const SheafObject& F, const SheafObject& G) {
  same_shape(F, G);
  size_t n = F.n, n2 = n * n, m = F.m();
  uint32_t p = F.p;
  Mat M(m * n2, 2 * n2, p);
  for (size_t c = 0; c < 2 * n2; ++c) {
    Mat u[2] = {Z(n, p), Z(n, p)};
    u[c / n2].data()[c % n2] = 1;
    for (size_t k = 1; k <= m; ++k) {
      const Mat& a = F.A[k - 1];
      const Mat& ap = G.A[k - 1];
      Mat r = k % 2 == 0 ? ap * u[0] - u[1] * a : ap * u[1] - u[0] * a;
      for (size_t e = 0; e < n2; ++e) M((k - 1) * n2 + e, c) = r.data()[e];
    }
  }
  return M;
}

std::vector<Ext0Elem> ext0_basis(const SheafObject& F, const SheafObject& G) {
  Mat K = kernel_matrix(ext0_system(F, G));
  size_t n = F.n, n2 = n * n;
  std::vector<Ext0Elem> out;
  for (size_t c = 0; c < K.cols(); ++c)
    out.push_back({Mat::unvec(K.block(0, c, n2, 1), n, n), Mat::unvec(K.block(n2, c, n2, 1), n, n)});
  return out;
}

bool is_ext0(const SheafObject& F, const SheafObject& G, const Ext0Elem& u) {
  return (ext0_system(F, G) * vstack({u.u1.vec(), u.u2.vec()})).is_zero();
}

MorphismDiagram materialize(const Ext0Elem& e, size_t m) {
  MorphismDiagram d;
  d.u.push_back(e.u1);
  for (size_t k = 1; k <= m + 1; ++k) d.u.push_back(k % 2 == 1 ? e.u1 : e.u2);
  size_t n = e.u1.rows();
  uint32_t p = e.u1.modulus();
  d.v = grid({{e.u2, Z(n, p)}, {Z(n, p), e.u1}});
  return d;
}

bool check_morphism(const SheafObject& F, const SheafObject& G, const MorphismDiagram& d) {
  same_shape(F, G);
  for (size_t k = 1; k <= F.m() + 1; ++k)
    if (d.v * F.phi[k - 1] != G.phi[k - 1] * d.u[k]) return false;
  return G.psi * d.v == d.u[0] * F.psi;
}

MorphismDiagram compose_diagrams(const MorphismDiagram& second, const MorphismDiagram& first) {
  MorphismDiagram d;
  for (size_t k = 0; k < first.u.size(); ++k) d.u.push_back(second.u[k] * first.u[k]);
  d.v = second.v * first.v;
  return d;
}

// ---------------------------------------------------------------- Ext^1

Mat ext1_image_map(const SheafObject& F, const SheafObject& G) {
  same_shape(F, G);
  size_t n = F.n, n2 = n * n, m = F.m();
  uint32_t p = F.p;
  Mat M(m * n2, 2 * n2, p);
  for (size_t c = 0; c < 2 * n2; ++c) {
    Mat u[2] = {Z(n, p), Z(n, p)};
    u[c / n2].data()[c % n2] = 1;
    for (size_t k = 1; k <= m; ++k) {
      const Mat& uk = u[(k + 1) % 2];  // u_1 for odd k
      const Mat& uk1 = u[k % 2];
      Mat r = uk * F.A[k - 1] - G.A[k - 1] * uk1;
      for (size_t e = 0; e < n2; ++e) M((k - 1) * n2 + e, c) = r.data()[e];
    }
  }
  return M;
}

Ext1Space ext1(const SheafObject& F, const SheafObject& G) {
  Mat d = ext1_image_map(F, G);
  Ext1Space s{0, Mat(), Subspace::span(d)};
  s.basis = quotient_basis(Mat::identity(d.rows(), F.p), s.image);
  s.dim = s.basis.cols();
  return s;
}

Mat stack(const std::vector<Mat>& w) {
  std::vector<Mat> cols;
  for (const auto& x : w) cols.push_back(x.vec());
  return vstack(cols);
}

std::vector<Mat> unstack(const Mat& v, size_t parts, size_t n) {
  std::vector<Mat> out;
  for (size_t i = 0; i < parts; ++i) out.push_back(Mat::unvec(v.block(i * n * n, 0, n * n, 1), n, n));
  return out;
}

std::vector<Mat> canonical(const Ext1Space& s, const std::vector<Mat>& w) {
  return unstack(s.image.reduce(stack(w)), w.size(), w.at(0).rows());
}

ExtensionData zero_data(size_t n, size_t m, uint32_t p) {
  return {Z(n, p), Z(n, p), Z(n, p), Z(n, p), std::vector<Mat>(m, Z(n, p)),
          std::vector<Mat>(m, Z(n, p))};
}

ExtensionData class_data(const std::vector<Mat>& w) {
  ExtensionData d = zero_data(w.at(0).rows(), w.size(), w[0].modulus());
  d.w = w;
  return d;
}

MiddleObject middle_from_data(const SheafObject& F, const SheafObject& G, const ExtensionData& d) {
  same_shape(F, G);
  size_t n = F.n, m = F.m();
  uint32_t p = F.p;
  Mat o = Z(n, p), e = I(n, p);
  MiddleObject X;
  X.Psi = grid({{o, d.v0, e, d.w0}, {o, o, o, e}});
  Mat chain = I(4 * n, p);
  for (size_t k = 1; k <= m; ++k) {
    const Mat& x = k == 1 ? d.x : o;
    const Mat& y = k == 1 ? d.y : o;
    Mat Om = grid({{o, x, e, d.v[k - 1]},
                   {o, o, o, e},
                   {e, y, G.A[k - 1], d.w[k - 1]},
                   {o, e, o, F.A[k - 1]}});
    X.Omega.push_back(Om);
    if (k == 1) X.Phi.push_back(Om.block(0, 0, 4 * n, 2 * n));
    chain = chain * Om;
    X.Phi.push_back(chain.block(0, 2 * n, 4 * n, 2 * n));
  }
  return X;
}

MiddleObject extension_from_class(const SheafObject& F, const SheafObject& G,
                                  const std::vector<Mat>& w) {
  return middle_from_data(F, G, class_data(w));
}

ExtensionData read_extension(const SheafObject& F, const SheafObject& G, const MiddleObject& X) {
  same_shape(F, G);
  size_t n = F.n, m = F.m();
  uint32_t p = F.p;
  Mat o = Z(n, p), e = I(n, p);
  ExtensionData d = zero_data(n, m, p);
  auto expect = [&](const Mat& M, size_t i, size_t j, const Mat& want, const char* what) {
    if (blk(M, i, j, n) != want)
      throw std::invalid_argument(std::string("not in extension form: ") + what);
  };
  const Mat& Psi = X.Psi;
  expect(Psi, 0, 0, o, "Psi");
  expect(Psi, 0, 2, e, "Psi");
  expect(Psi, 1, 0, o, "Psi");
  expect(Psi, 1, 1, o, "Psi");
  expect(Psi, 1, 2, o, "Psi");
  expect(Psi, 1, 3, e, "Psi");
  d.v0 = blk(Psi, 0, 1, n);
  d.w0 = blk(Psi, 0, 3, n);
  Mat chain = I(4 * n, p);
  for (size_t k = 1; k <= m; ++k) {
    auto ci = inverse(chain);
    if (!ci) throw std::invalid_argument("singular Omega chain");
    Mat Om = *ci * hstack({X.Phi[k - 1], X.Phi[k]});
    const char* what = "Omega";
    expect(Om, 0, 0, o, what);
    expect(Om, 0, 2, e, what);
    for (size_t j = 0; j < 3; ++j) expect(Om, 1, j, o, what);
    expect(Om, 1, 3, e, what);
    expect(Om, 2, 0, e, what);
    expect(Om, 2, 2, G.A[k - 1], what);
    expect(Om, 3, 0, o, what);
    expect(Om, 3, 1, e, what);
    expect(Om, 3, 2, o, what);
    expect(Om, 3, 3, F.A[k - 1], what);
    if (k == 1) {
      d.x = blk(Om, 0, 1, n);
      d.y = blk(Om, 2, 1, n);
    } else {
      expect(Om, 0, 1, o, what);
      expect(Om, 2, 1, o, what);
    }
    d.v[k - 1] = blk(Om, 0, 3, n);
    d.w[k - 1] = blk(Om, 2, 3, n);
    chain = chain * Om;
  }
  return d;
}

bool check_extension(const SheafObject& F, const SheafObject& G, const MiddleObject& X) {
  same_shape(F, G);
  size_t n = F.n, m = F.m();
  uint32_t p = F.p;
  Mat o = Z(n, p), e = I(n, p);
  if (det(X.Psi * X.Phi[0]).is_zero()) return false;
  for (size_t k = 0; k < m; ++k)
    if (rank(hstack({X.Phi[k], X.Phi[k + 1]})) != 4 * n) return false;
  if (det(X.Psi * X.Phi[m]).is_zero()) return false;
  Mat i2 = vstack({e, o}), p2 = hstack({o, e});
  Mat i4 = grid({{e, o}, {o, o}, {o, e}, {o, o}});
  Mat p4 = grid({{o, e, o, o}, {o, o, o, e}});
  for (size_t k = 0; k <= m; ++k) {
    if (X.Phi[k] * i2 != i4 * G.phi[k]) return false;
    if (p4 * X.Phi[k] != F.phi[k] * p2) return false;
  }
  return X.Psi * i4 == i2 * G.psi && p2 * X.Psi == F.psi * p4;
}

ExtensionData apply_equivalence(const SheafObject& F, const SheafObject& G,
                                const ExtensionData& d, const Equivalence& q) {
  size_t m = F.m();
  const auto& u = q.u;
  ExtensionData r = d;
  r.x = d.x + q.z2;
  r.y = d.y + q.z4 - u[1];
  r.v0 = d.v0 - q.z3;
  r.w0 = d.w0 + u[0] - q.z4;
  r.v[0] = d.v[0] + q.z1 + q.z2 * F.A[0] - u[2];
  r.w[0] = d.w[0] + q.z3 + q.z4 * F.A[0] - G.A[0] * u[2];
  for (size_t k = 2; k <= m; ++k) {
    r.v[k - 1] = d.v[k - 1] + u[k - 1] - u[k + 1];
    r.w[k - 1] = d.w[k - 1] + u[k] * F.A[k - 1] - G.A[k - 1] * u[k + 1];
  }
  return r;
}

MiddleObject transform(const MiddleObject& X, const Equivalence& q) {
  size_t n = q.z1.rows();
  uint32_t p = q.z1.modulus();
  Mat o = Z(n, p), e = I(n, p);
  Mat Theta = grid({{e, q.z1, o, q.z2}, {o, e, o, o}, {o, q.z3, e, q.z4}, {o, o, o, e}});
  auto Y = [&](size_t k) { return grid({{e, q.u[k]}, {o, e}}); };
  auto inv = [](const Mat& M) {
    auto r = inverse(M);
    if (!r) throw std::logic_error("singular isomorphism component");
    return *r;
  };
  MiddleObject R;
  R.Psi = Y(0) * X.Psi * inv(Theta);
  for (size_t k = 1; k <= X.Omega.size(); ++k) {
    Mat left = k == 1 ? Theta : block_diag({Y(k - 1), Y(k)});
    R.Omega.push_back(left * X.Omega[k - 1] * inv(block_diag({Y(k), Y(k + 1)})));
  }
  for (size_t k = 0; k < X.Phi.size(); ++k) R.Phi.push_back(Theta * X.Phi[k] * inv(Y(k + 1)));
  return R;
}

Normalized normalize(const SheafObject& F, const SheafObject& G, const ExtensionData& d) {
  size_t n = F.n, m = F.m();
  uint32_t p = F.p;
  Equivalence q{Z(n, p), -d.x, d.v0, -d.y, std::vector<Mat>(m + 2, Z(n, p))};
  q.u[0] = q.z4 - d.w0;
  q.z1 = -d.v[0] - q.z2 * F.A[0];  // u_1 = u_2 = 0
  for (size_t k = 2; k <= m; ++k) q.u[k + 1] = q.u[k - 1] + d.v[k - 1];
  ExtensionData r = apply_equivalence(F, G, d, q);
  return {r.w, q};
}

// ---------------------------------------------------------------- compositions

Ext0Elem compose00(const Ext0Elem& second, const Ext0Elem& first) {
  return {second.u1 * first.u1, second.u2 * first.u2};
}

std::vector<Mat> compose01(const std::vector<Mat>& e, const Ext0Elem& u) {
  std::vector<Mat> r;
  for (size_t k = 1; k <= e.size(); ++k) r.push_back(e[k - 1] * (k % 2 == 1 ? u.u2 : u.u1));
  return r;
}

std::vector<Mat> compose10(const Ext0Elem& u, const std::vector<Mat>& e) {
  std::vector<Mat> r;
  for (size_t k = 1; k <= e.size(); ++k) r.push_back((k % 2 == 1 ? u.u1 : u.u2) * e[k - 1]);
  return r;
}

MiddleObject pullback(const SheafObject& F, const SheafObject& Fp, const SheafObject& Fpp,
                      const MiddleObject& X, const Ext0Elem& u) {
  same_shape(F, Fp);
  same_shape(F, Fpp);
  size_t n = F.n, m = F.m();
  uint32_t p = F.p;
  Mat o = Z(n, p), e = I(n, p);
  MorphismDiagram d = materialize(u, m);
  Mat W = block_diag({e, u.u2, e, u.u1});
  MiddleObject R;
  // Coordinates (g'', f) on every component: g'' in F'', f in F, with g = (g'', u f).
  for (size_t k = 1; k <= m + 1; ++k) {
    Mat M = X.Phi[k - 1] * grid({{e, o}, {o, d.u[k]}});
    Mat sub = rows_of(M, 0, 2, n);
    Mat quo = hstack({Mat::zero(2 * n, n, p), F.phi[k - 1]});
    R.Phi.push_back(interleave(sub, quo, n));
  }
  Mat top = X.Psi * W;
  R.Psi = vstack({top.block(0, 0, n, 4 * n), grid({{o, o, o, e}})});
  return R;
}

MiddleObject pushout(const SheafObject& F, const SheafObject& Fp, const SheafObject& Fpp,
                     const MiddleObject& X, const Ext0Elem& u) {
  same_shape(F, Fp);
  same_shape(F, Fpp);
  size_t n = F.n, m = F.m();
  uint32_t p = F.p;
  Mat o = Z(n, p), e = I(n, p);
  MorphismDiagram d = materialize(u, m);
  MiddleObject R;
  // Coordinates (h, f) with h in F'', f in F: the class of (h, (g', f)) is (h + u g', f).
  for (size_t k = 1; k <= m + 1; ++k) {
    Mat Xf = X.Phi[k - 1].block(0, n, 4 * n, n);  // Phi^X(0, f)
    Mat sub = hstack({Fpp.phi[k - 1], d.v * rows_of(Xf, 0, 2, n)});
    Mat quo = hstack({Mat::zero(2 * n, n, p), rows_of(Xf, 1, 3, n)});
    R.Phi.push_back(interleave(sub, quo, n));
  }
  // Psi on coordinates (h_1, f_1, h_2, f_2).
  Mat Xq = hstack({X.Psi.block(0, n, 2 * n, n), X.Psi.block(0, 3 * n, 2 * n, n)});  // Psi^X(0, f)
  Mat top = hstack({Fpp.psi.block(0, 0, n, n), d.u[0] * Xq.block(0, 0, n, n),
                    Fpp.psi.block(0, n, n, n), d.u[0] * Xq.block(0, n, n, n)});
  Mat bottom = hstack({o, Xq.block(n, 0, n, n), o, Xq.block(n, n, n, n)});
  R.Psi = vstack({top, bottom});
  return R;
}

// ---------------------------------------------------------------- functor

std::vector<Mat> functor_object(const std::vector<Mat>& tuple) {
  std::vector<Mat> r;
  for (const auto& a : tuple) r.push_back(a.transpose());
  return r;
}

Ext0Elem functor_h0(const Mat& u1, const Mat& u2) { return {-u2.transpose(), -u1.transpose()}; }

std::vector<Mat> functor_h1(const std::vector<Mat>& w) { return functor_object(w); }

}  // namespace lmrep::sheaf
