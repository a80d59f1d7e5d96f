#include "lmrep/ainfty.hpp"

#include <algorithm>
#include <set>

#include "lmrep/rng.hpp"

namespace lmrep {

// ---------------------------------------------------------------- representations

const Mat& Representation::at(uint32_t g) const {
  if (g >= value.size() || !value[g]) throw std::out_of_range("representation has no value there");
  return *value[g];
}

Mat pq_matrix(const std::vector<Mat>& args, PQ kind, size_t n, uint32_t p) {
  Mat I = Mat::identity(n, p), Z = Mat::zero(n, n, p);
  size_t m = args.size();
  if (kind == PQ::P) {
    Mat prev = Z, cur = I;  // P_{-1} = 0, P_0 = 1
    for (size_t k = 0; k < m; ++k) {
      Mat next = cur * args[k] + prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  Mat after = Z, cur = I;  // Q(m+1) = 0, Q(m) = 1
  for (size_t s = m; s-- > 0;) {
    Mat next = after - cur * args[s];
    after = cur;
    cur = next;
  }
  return cur;
}

Mat eval_word(const DGA& dga, const Representation& rho, const Word& w) {
  Mat acc = Mat::identity(rho.n, rho.p);
  for (const auto& l : w) {
    const auto& g = dga.gen(l.gen);
    if (g.degree != 0) return Mat::zero(rho.n, rho.n, rho.p);
    if (l.exp < 0) {
      if (!rho.inv.at(l.gen)) throw std::logic_error("missing inverse for " + g.name);
      acc = acc * *rho.inv[l.gen];
    } else {
      acc = acc * rho.at(l.gen);
    }
  }
  return acc;
}

Mat eval_poly(const DGA& dga, const Representation& rho, const FreePoly& f) {
  Mat acc = Mat::zero(rho.n, rho.n, rho.p);
  for (const auto& [w, c] : f.terms()) acc += eval_word(dga, rho, w) * c;
  return acc;
}

std::optional<uint32_t> augmentation_defect(const DGA& dga, const Representation& rho) {
  for (uint32_t g = 0; g < dga.size(); ++g)
    if (!eval_poly(dga, rho, dga.diff(g)).is_zero()) return g;
  return std::nullopt;
}

Representation make_representation(const DGA& dga, size_t n,
                                   const std::map<uint32_t, Mat>& values) {
  uint32_t p = dga.modulus();
  Representation r;
  r.p = p;
  r.n = n;
  r.value.assign(dga.size(), std::nullopt);
  r.inv.assign(dga.size(), std::nullopt);
  for (uint32_t g = 0; g < dga.size(); ++g) {
    const auto& gen = dga.gen(g);
    auto it = values.find(g);
    if (gen.degree != 0) {
      if (it != values.end() && !it->second.is_zero())
        throw std::invalid_argument("nonzero value on " + gen.name + " of nonzero degree");
      continue;
    }
    Mat v = it == values.end() ? Mat::zero(n, n, p) : it->second;
    if (v.rows() != n || v.cols() != n || v.modulus() != p)
      throw std::invalid_argument("value for " + gen.name + " has the wrong shape or field");
    if (gen.invertible) {
      auto vi = inverse(v);
      if (!vi) throw std::invalid_argument("value for " + gen.name + " is not invertible");
      r.inv[g] = *vi;
    }
    r.value[g] = v;
  }
  if (auto bad = augmentation_defect(dga, r))
    throw std::invalid_argument("differential of " + dga.gen(*bad).name + " not annihilated");
  return r;
}

Representation lambda_rep(const DGA& lambda, const std::vector<Mat>& tuple) {
  int q = lambda.base_points();
  size_t m = lambda.size() - 2 - q;
  if (tuple.size() != m) throw std::invalid_argument("tuple length differs from m");
  if (tuple.empty()) throw std::invalid_argument("empty tuple");
  size_t n = tuple[0].rows();
  uint32_t p = lambda.modulus();
  for (const auto& a : tuple)
    if (a.rows() != n || a.cols() != n || a.modulus() != p)
      throw std::invalid_argument("tuple entries must be n x n over the DGA field");
  auto pinv = inverse(pq_matrix(tuple, PQ::P, n, p));
  if (!pinv) throw std::invalid_argument("P_m(A) is not invertible");
  std::map<uint32_t, Mat> vals;
  for (size_t j = 0; j < m; ++j) vals[lambda.index("a" + std::to_string(j + 1))] = tuple[j];
  vals[lambda.index("t1")] = -*pinv;
  vals[lambda.index("t2")] = -pq_matrix(tuple, PQ::Q, n, p);
  Representation r = make_representation(lambda, n, vals);
  r.tuple = tuple;
  return r;
}

std::vector<std::vector<Mat>> enumerate_tuples(int m, size_t n, uint32_t p, uint64_t budget) {
  require_field(p);
  size_t entries = static_cast<size_t>(m) * n * n;
  uint64_t total = 1;
  for (size_t i = 0; i < entries && total != UINT64_MAX; ++i)
    total = total > UINT64_MAX / p ? UINT64_MAX : total * p;
  if (total > budget) throw BudgetExceeded("tuple enumeration", total, budget);
  std::vector<std::vector<Mat>> out;
  std::vector<uint32_t> digits(entries, 0);
  for (uint64_t c = 0; c < total; ++c) {
    std::vector<Mat> t(m, Mat(n, n, p));
    for (size_t e = 0; e < entries; ++e) t[e / (n * n)].data()[e % (n * n)] = digits[e];
    if (!det(pq_matrix(t, PQ::P, n, p)).is_zero()) out.push_back(std::move(t));
    for (size_t e = entries; e-- > 0;) {
      if (++digits[e] < p) break;
      digits[e] = 0;
    }
  }
  return out;
}

std::vector<Representation> enumerate_reps(const DGA& lambda, size_t n, uint64_t budget) {
  int m = static_cast<int>(lambda.size()) - 2 - lambda.base_points();
  std::vector<Representation> out;
  for (auto& t : enumerate_tuples(m, n, lambda.modulus(), budget))
    out.push_back(lambda_rep(lambda, t));
  return out;
}

// ---------------------------------------------------------------- MatPoly

namespace {

size_t ipow(size_t b, size_t e) {
  size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Inserts D between factors s-1 and s of a tensor with `factors` factors:
// R[a][i][inner][j][b] += scale * sum_{k,l} T[a][i][k][l][j][b] * D[k][inner][l].
std::vector<uint32_t> splice(const std::vector<uint32_t>& T, size_t factors, size_t s,
                             const std::vector<uint32_t>& D, size_t dfactors, size_t n,
                             uint32_t p) {
  size_t n2 = n * n;
  size_t A = ipow(n2, s - 1), B = ipow(n2, factors - s - 1);
  size_t inner = dfactors == 1 ? 1 : n * ipow(n2, dfactors - 2) * n;
  std::vector<uint32_t> R(A * n * inner * n * B, 0);
  for (size_t a = 0; a < A; ++a)
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l)
          for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < B; ++b) {
              uint32_t t = T[((((a * n + i) * n + k) * n + l) * n + j) * B + b];
              if (!t) continue;
              for (size_t x = 0; x < inner; ++x) {
                uint32_t d = D[(k * inner + x) * n + l];
                if (!d) continue;
                uint32_t& r = R[(((a * n + i) * inner + x) * n + j) * B + b];
                r = fp::add(r, fp::mul(t, d, p), p);
              }
            }
  return R;
}

}  // namespace

MatPoly MatPoly::constant(const Mat& m) {
  MatPoly r{m.rows(), m.modulus(), {}};
  if (!m.is_zero()) r.terms[{}] = m.data();
  return r;
}

MatPoly MatPoly::letter(uint32_t gen, size_t n, uint32_t p) {
  MatPoly r{n, p, {}};
  std::vector<uint32_t> t(n * n * n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) t[((i * n + i) * n + j) * n + j] = 1;
  r.terms[{Letter{gen, 1}}] = t;
  return r;
}

bool MatPoly::is_zero() const { return terms.empty(); }

void MatPoly::add(const Word& w, const std::vector<uint32_t>& t, uint32_t scale) {
  auto it = terms.find(w);
  if (it == terms.end()) it = terms.emplace(w, std::vector<uint32_t>(t.size(), 0)).first;
  bool nz = false;
  for (size_t i = 0; i < t.size(); ++i) {
    it->second[i] = fp::add(it->second[i], fp::mul(t[i], scale, p), p);
    nz |= it->second[i] != 0;
  }
  if (!nz) terms.erase(it);
}

MatPoly MatPoly::operator*(const MatPoly& o) const {
  MatPoly r{n, p, {}};
  for (const auto& [w1, t1] : terms)
    for (const auto& [w2, t2] : o.terms) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      // Contract the last factor of t1 with the first of t2.
      size_t f1 = w1.size() + 1, f2 = w2.size() + 1;
      std::vector<uint32_t> ext(t1.size() * n * n, 0);
      // Append an identity factor to t1, then splice t2 in before it.
      for (size_t a = 0; a < t1.size(); ++a)
        if (t1[a])
          for (size_t i = 0; i < n; ++i) ext[(a * n + i) * n + i] = t1[a];
      r.add(w, splice(ext, f1 + 1, f1, t2, f2, n, p));
    }
  return r;
}

MatPoly& MatPoly::operator+=(const MatPoly& o) {
  for (const auto& [w, t] : o.terms) add(w, t);
  return *this;
}

Mat MatPoly::constant_term() const {
  Mat m(n, n, p);
  auto it = terms.find(Word{});
  if (it != terms.end()) m.data() = it->second;
  return m;
}

std::vector<uint32_t> MatPoly::coeff(const Word& w) const {
  auto it = terms.find(w);
  if (it != terms.end()) return it->second;
  return std::vector<uint32_t>(ipow(n * n, w.size() + 1), 0);
}

TwistedDGA twist_diff(const DGA& dga, const Representation& eps) {
  if (auto bad = augmentation_defect(dga, eps))
    throw std::invalid_argument("not an augmentation: differential of " + dga.gen(*bad).name +
                                " is not annihilated");
  size_t n = eps.n;
  uint32_t p = eps.p;
  std::vector<MatPoly> shifted(dga.size(), MatPoly{n, p, {}});
  for (uint32_t g = 0; g < dga.size(); ++g) {
    const auto& gen = dga.gen(g);
    if (gen.invertible) continue;
    shifted[g] = MatPoly::letter(g, n, p);
    if (gen.degree == 0) shifted[g] += MatPoly::constant(eps.at(g));
  }
  TwistedDGA t{&dga, eps, std::vector<MatPoly>(dga.size(), MatPoly{n, p, {}})};
  for (uint32_t g = 0; g < dga.size(); ++g) {
    if (dga.gen(g).invertible) continue;
    MatPoly acc{n, p, {}};
    for (const auto& [w, c] : dga.diff(g).terms()) {
      MatPoly term = MatPoly::constant(Mat::scalar(n, c, p));
      for (const auto& l : w) {
        if (dga.gen(l.gen).invertible)
          term = term * MatPoly::constant(l.exp > 0 ? eps.at(l.gen) : *eps.inv.at(l.gen));
        else
          term = term * shifted[l.gen];
        if (term.is_zero()) break;
      }
      acc += term;
    }
    t.diff[g] = std::move(acc);
  }
  return t;
}

MatPoly apply_twisted(const TwistedDGA& t, const MatPoly& f) {
  const DGA& dga = *t.dga;
  MatPoly r{f.n, f.p, {}};
  for (const auto& [w, T] : f.terms) {
    int before = 0;
    for (size_t s = 1; s <= w.size(); ++s) {
      const auto& z = w[s - 1];
      uint32_t sg = fp::sign(before, f.p);
      before += dga.gen(z.gen).degree;
      for (const auto& [dw, D] : t.diff[z.gen].terms) {
        Word nw(w.begin(), w.begin() + (s - 1));
        nw.insert(nw.end(), dw.begin(), dw.end());
        nw.insert(nw.end(), w.begin() + s, w.end());
        r.add(nw, splice(T, w.size() + 1, s, D, dw.size() + 1, f.n, f.p), sg);
      }
    }
  }
  return r;
}

bool check_twisted_d_squared(const TwistedDGA& t) {
  for (uint32_t g = 0; g < t.dga->size(); ++g) {
    if (!t.diff[g].constant_term().is_zero()) return false;
    if (!apply_twisted(t, t.diff[g]).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Hom elements

void HomElement::add(const DualGen& g, const Mat& m) {
  auto it = coeffs.find(g);
  if (it == coeffs.end()) {
    if (!m.is_zero()) coeffs.emplace(g, m);
    return;
  }
  it->second += m;
  if (it->second.is_zero()) coeffs.erase(it);
}

Mat HomElement::get(const DualGen& g) const {
  auto it = coeffs.find(g);
  return it == coeffs.end() ? Mat::zero(n, n, p) : it->second;
}

bool HomElement::is_zero() const { return coeffs.empty(); }

HomElement HomElement::operator+(const HomElement& o) const {
  HomElement r = *this;
  for (const auto& [g, m] : o.coeffs) r.add(g, m);
  return r;
}

HomElement HomElement::operator-(const HomElement& o) const { return *this + o.scaled(p - 1); }

HomElement HomElement::scaled(uint32_t c) const {
  HomElement r{degree, n, p, {}};
  for (const auto& [g, m] : coeffs) r.add(g, m * (c % p));
  return r;
}

bool HomElement::operator==(const HomElement& o) const {
  return degree == o.degree && n == o.n && p == o.p && coeffs == o.coeffs;
}

namespace {

std::vector<DualGen> dual_order(const DGA& dga) {
  std::vector<DualGen> zero, rest, xs, ys;
  for (uint32_t g = 0; g < dga.size(); ++g) {
    const auto& gen = dga.gen(g);
    if (gen.invertible) continue;
    (gen.degree == 0 ? zero : rest).push_back({DualGen::Chord, g});
  }
  for (int l = 1; l <= dga.base_points(); ++l) {
    xs.push_back({DualGen::X, static_cast<uint32_t>(l)});
    ys.push_back({DualGen::Y, static_cast<uint32_t>(l)});
  }
  std::vector<DualGen> out = zero;
  out.insert(out.end(), xs.begin(), xs.end());
  out.insert(out.end(), rest.begin(), rest.end());
  out.insert(out.end(), ys.begin(), ys.end());
  return out;
}

int dual_degree_of(const DGA& dga, const DualGen& g) {
  switch (g.kind) {
    case DualGen::Chord:
      return dga.gen(g.index).degree + 1;
    case DualGen::X:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

HomSpace::HomSpace(const DGA& dga, size_t n)
    : dga_(&dga), n_(n), p_(dga.modulus()), duals_(dual_order(dga)) {}

int HomSpace::dual_degree(const DualGen& g) const { return dual_degree_of(*dga_, g); }

std::string HomSpace::name(const DualGen& g) const {
  switch (g.kind) {
    case DualGen::Chord:
      return dga_->gen(g.index).name + "^v";
    case DualGen::X:
      return "x" + std::to_string(g.index) + "^v";
    default:
      return "y" + std::to_string(g.index) + "^v";
  }
}

std::vector<DualGen> HomSpace::duals_of_degree(int d) const {
  std::vector<DualGen> out;
  for (const auto& g : duals_)
    if (dual_degree(g) == d) out.push_back(g);
  return out;
}

std::vector<int> HomSpace::degrees() const {
  std::set<int> s;
  for (const auto& g : duals_) s.insert(dual_degree(g));
  return {s.begin(), s.end()};
}

Mat HomSpace::to_vec(const HomElement& x) const {
  auto ds = duals_of_degree(x.degree);
  size_t n2 = n_ * n_;
  Mat v(ds.size() * n2, 1, p_);
  for (const auto& [g, m] : x.coeffs)
    if (dual_degree(g) != x.degree)
      throw std::invalid_argument("element stores a dual of the wrong degree");
  for (size_t i = 0; i < ds.size(); ++i) {
    Mat m = x.get(ds[i]);
    for (size_t e = 0; e < n2; ++e) v(i * n2 + e, 0) = m.data()[e];
  }
  return v;
}

HomElement HomSpace::from_vec(int d, const Mat& v) const {
  auto ds = duals_of_degree(d);
  size_t n2 = n_ * n_;
  if (v.rows() != ds.size() * n2 || v.cols() != 1)
    throw std::invalid_argument("vector length does not match Hom space");
  HomElement x = HomElement::zero(d, n_, p_);
  for (size_t i = 0; i < ds.size(); ++i) {
    Mat m(n_, n_, p_);
    for (size_t e = 0; e < n2; ++e) m.data()[e] = v(i * n2 + e, 0);
    x.add(ds[i], m);
  }
  return x;
}

// ---------------------------------------------------------------- mu_k

RepEngine::RepEngine(const DGA& base, bool corrupt_sign)
    : base_(base), corrupt_(corrupt_sign), order_(dual_order(base)) {}

const KCopy& RepEngine::copy(int k) {
  auto it = copies_.find(k);
  if (it == copies_.end())
    it = copies_.emplace(k, std::make_unique<KCopy>(kcopy_dga(base_, k))).first;
  return *it->second;
}

const std::vector<std::vector<RepEngine::ChainTerm>>& RepEngine::chains(int k) {
  auto it = chains_.find(k);
  if (it != chains_.end()) return it->second;
  const KCopy& kc = copy(k + 1);
  std::vector<std::vector<ChainTerm>> out;
  for (const auto& w : order_) {
    uint32_t g = 0;
    switch (w.kind) {
      case DualGen::Chord:
        g = kc.find(CopyIndex::Chord, w.index, 1, k + 1);
        break;
      case DualGen::X:
        g = kc.find(CopyIndex::X, w.index, 1, k + 1);
        break;
      case DualGen::Y:
        g = kc.find(CopyIndex::Y, w.index, 1, k + 1);
        break;
    }
    std::vector<ChainTerm> terms;
    for (const auto& [word, c] : kc.dga.diff(g).terms()) {
      bool chain = true;
      int steps = 0;
      for (const auto& l : word) {
        const auto& ci = kc.copy_index[l.gen];
        if (ci.kind == CopyIndex::T || ci.i == ci.j) {
          if (ci.kind == CopyIndex::Chord && kc.dga.gen(l.gen).degree != 0) chain = false;
          continue;
        }
        if (ci.j != ci.i + 1) chain = false;
        ++steps;
      }
      if (chain && steps == k) terms.push_back({c, word});
    }
    out.push_back(std::move(terms));
  }
  return chains_.emplace(k, std::move(out)).first->second;
}

HomElement RepEngine::mu(const std::vector<const Representation*>& rhos,
                         const std::vector<HomElement>& args) {
  int k = static_cast<int>(args.size());
  if (k < 1) throw std::invalid_argument("mu_k needs k >= 1");
  if (rhos.size() != args.size() + 1) throw std::invalid_argument("need k+1 representations");
  size_t n = rhos[0]->n;
  uint32_t p = base_.modulus();
  for (const auto* r : rhos)
    if (r->n != n || r->p != p) throw std::invalid_argument("mismatched representations");
  for (const auto& a : args)
    if (a.n != n || a.p != p) throw std::invalid_argument("mismatched Hom elements");
  int out_deg = 2 - k;
  for (const auto& a : args) out_deg += a.degree;
  HomElement out = HomElement::zero(out_deg, n, p);
  for (const auto& a : args)
    if (a.is_zero()) return out;

  const KCopy& kc = copy(k + 1);
  const auto& ch = chains(k);
  std::vector<int> dd(k + 1);  // dual degrees by slot (1-based)
  for (int s = 1; s <= k; ++s) dd[s] = args[s - 1].degree;
  int sigma = k * (k - 1) / 2;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) sigma += dd[a] * dd[b];
  for (int a = 2; a <= k; a += 2) sigma += corrupt_ ? 0 : dd[a];
  uint32_t sg = fp::sign(sigma, p);

  for (size_t wi = 0; wi < order_.size(); ++wi) {
    Mat acc_total = Mat::zero(n, n, p);
    for (const auto& term : ch[wi]) {
      Mat acc = Mat::identity(n, p);
      bool zero = false;
      for (const auto& l : term.word) {
        const auto& ci = kc.copy_index[l.gen];
        if (ci.kind == CopyIndex::T) {
          const Representation& r = *rhos[ci.i - 1];
          acc = acc * (l.exp > 0 ? r.at(ci.base) : *r.inv.at(ci.base));
          continue;
        }
        if (ci.i == ci.j) {
          const Representation& r = *rhos[ci.i - 1];
          acc = acc * r.at(ci.base);
          continue;
        }
        int slot = k + 1 - ci.i;
        DualGen d{ci.kind == CopyIndex::Chord ? DualGen::Chord
                  : ci.kind == CopyIndex::X   ? DualGen::X
                                              : DualGen::Y,
                  ci.base};
        auto it = args[slot - 1].coeffs.find(d);
        if (it == args[slot - 1].coeffs.end()) {
          zero = true;
          break;
        }
        acc = acc * it->second;
      }
      if (!zero) acc_total += acc * term.coeff;
    }
    if (!acc_total.is_zero()) out.add(order_[wi], acc_total * sg);
  }
  return out;
}

HomElement RepEngine::mu1(const Representation& r0, const Representation& r1,
                          const HomElement& x) {
  return mu({&r0, &r1}, {x});
}

HomElement RepEngine::mu2(const Representation& r0, const Representation& r1,
                          const Representation& r2, const HomElement& a, const HomElement& b) {
  return mu({&r0, &r1, &r2}, {a, b});
}

Mat RepEngine::mu1_matrix(const Representation& r0, const Representation& r1, int d) {
  HomSpace hs(base_, r0.n);
  size_t src = hs.dim(d), dst = hs.dim(d + 1);
  uint32_t p = base_.modulus();
  Mat M(dst, src, p);
  for (size_t j = 0; j < src; ++j) {
    Mat e(src, 1, p);
    e(j, 0) = 1;
    Mat col = hs.to_vec(mu1(r0, r1, hs.from_vec(d, e)));
    for (size_t i = 0; i < dst; ++i) M(i, j) = col(i, 0);
  }
  return M;
}

HomCohomology RepEngine::hom_cohomology(const Representation& r0, const Representation& r1) {
  HomSpace hs(base_, r0.n);
  auto degs = hs.degrees();
  uint32_t p = base_.modulus();
  HomCohomology h;
  for (int d = degs.front(); d <= degs.back(); ++d) {
    Mat out = mu1_matrix(r0, r1, d);
    Mat in = mu1_matrix(r0, r1, d - 1);
    Subspace bnd = in.cols() == 0 ? Subspace(hs.dim(d), p) : Subspace::span(in);
    Mat cyc = kernel_matrix(out);
    Mat basis = quotient_basis(cyc, bnd);
    h.dims[d] = basis.cols();
    h.bases.emplace(d, basis);
    h.boundaries.emplace(d, bnd);
  }
  return h;
}

HomElement RepEngine::unit(const Representation& rho) const {
  HomElement e = HomElement::zero(0, rho.n, rho.p);
  for (int l = 1; l <= base_.base_points(); ++l)
    e.add({DualGen::Y, static_cast<uint32_t>(l)}, Mat::scalar(rho.n, -1, rho.p));
  return e;
}

HomElement RepEngine::ainfty_relation(const std::vector<const Representation*>& rhos,
                                      const std::vector<HomElement>& args) {
  int N = static_cast<int>(args.size());
  size_t n = rhos.at(0)->n;
  uint32_t p = base_.modulus();
  int total = 3 - N;
  for (const auto& a : args) total += a.degree;
  HomElement sum = HomElement::zero(total, n, p);
  // args[0] = a_1 in Hom(rho_{N-1}, rho_N), ..., args[N-1] = a_N in Hom(rho_0, rho_1).
  for (int j = 1; j <= N; ++j)
    for (int i = 0; i + j <= N; ++i) {
      int l = N - i - j;
      std::vector<HomElement> inner_args(args.begin() + i, args.begin() + i + j);
      std::vector<const Representation*> inner_rhos(rhos.begin() + (N - i - j),
                                                    rhos.begin() + (N - i) + 1);
      HomElement inner = mu(inner_rhos, inner_args);
      std::vector<HomElement> outer_args(args.begin(), args.begin() + i);
      outer_args.push_back(inner);
      outer_args.insert(outer_args.end(), args.begin() + i + j, args.end());
      std::vector<const Representation*> outer_rhos(rhos.begin(), rhos.begin() + (N - i - j) + 1);
      outer_rhos.insert(outer_rhos.end(), rhos.begin() + (N - i), rhos.end());
      HomElement val = mu(outer_rhos, outer_args);
      int koszul = 0;
      for (int s = 0; s < i; ++s) koszul += args[s].degree;
      int e = i + j * l + j * koszul;
      sum = sum + val.scaled(fp::sign(e, p));
    }
  return sum;
}

// ---------------------------------------------------------------- isomorphism

IsoResult is_isomorphic(const DGA& dga, const Representation& r1, const Representation& r2,
                        uint64_t budget, uint64_t seed) {
  if (r1.n != r2.n || r1.p != r2.p) throw std::invalid_argument("mismatched representations");
  size_t n = r1.n, n2 = n * n;
  uint32_t p = r1.p;
  int q = dga.base_points();
  std::vector<Mat> blocks;
  // Unknown u_l occupies columns (l-1)n^2 .. l n^2 - 1, row-major.
  for (uint32_t g = 0; g < dga.size(); ++g) {
    const auto& gen = dga.gen(g);
    if (gen.degree != 0) continue;
    const Mat& A1 = r1.at(g);
    const Mat& A2 = r2.at(g);
    Mat E(n2, q * n2, p);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
          size_t row = i * n + j;
          // (u_r A2)_{ij} = sum_k u_r[i][k] A2[k][j]
          size_t cr = (gen.r - 1) * n2 + i * n + k;
          E(row, cr) = fp::add(E(row, cr), A2(k, j), p);
          // -(A1 u_c)_{ij} = -sum_k A1[i][k] u_c[k][j]
          size_t cc = (gen.c - 1) * n2 + k * n + j;
          E(row, cc) = fp::sub(E(row, cc), A1(i, k), p);
        }
    blocks.push_back(E);
  }
  Mat K = kernel_matrix(vstack(blocks));
  IsoResult res{IsoResult::NotIsomorphic, {}, K.cols(), 0};
  size_t d = K.cols();
  if (d == 0) return res;

  auto unpack = [&](const Mat& v) {
    std::vector<Mat> us;
    for (int l = 0; l < q; ++l) {
      Mat u(n, n, p);
      for (size_t e = 0; e < n2; ++e) u.data()[e] = v(l * n2 + e, 0);
      us.push_back(u);
    }
    return us;
  };
  auto try_coeffs = [&](const std::vector<uint32_t>& c) {
    Mat v(K.rows(), 1, p);
    for (size_t b = 0; b < d; ++b)
      if (c[b])
        for (size_t r = 0; r < K.rows(); ++r) v(r, 0) = fp::add(v(r, 0), fp::mul(c[b], K(r, b), p), p);
    auto us = unpack(v);
    ++res.tried;
    for (const auto& u : us)
      if (det(u).is_zero()) return false;
    res.witness = us;
    res.status = IsoResult::Found;
    return true;
  };

  uint64_t points = 1;
  bool small = true;
  for (size_t b = 0; b < d; ++b) {
    if (points > budget / p) {
      small = false;
      break;
    }
    points *= p;
  }
  if (small) {
    std::vector<uint32_t> c(d, 0);
    for (uint64_t t = 0; t < points; ++t) {
      if (try_coeffs(c)) return res;
      for (size_t b = d; b-- > 0;) {
        if (++c[b] < p) break;
        c[b] = 0;
      }
    }
    return res;
  }
  SplitMix64 rng(seed);
  for (uint64_t t = 0; t < budget; ++t) {
    std::vector<uint32_t> c(d);
    for (auto& x : c) x = static_cast<uint32_t>(rng.below(p));
    if (try_coeffs(c)) return res;
  }
  res.status = IsoResult::Undecided;
  return res;
}

}  // namespace lmrep
