#include "lmrep/freedga.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace lmrep {

Word concat(const Word& a, const Word& b) {
  Word out = a;
  size_t k = 0;
  while (k < b.size() && !out.empty() && out.back().gen == b[k].gen &&
         out.back().exp == -b[k].exp) {
    out.pop_back();
    ++k;
  }
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  return out;
}

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i].gen == w[i - 1].gen && w[i].exp == -w[i - 1].exp) return false;
  return true;
}

// ---- FreePoly ----

FreePoly FreePoly::constant(int64_t c, uint32_t p) { return word({}, c, p); }

FreePoly FreePoly::letter(uint32_t gen, int exp, uint32_t p) {
  return word({Letter{gen, static_cast<int8_t>(exp)}}, 1, p);
}

FreePoly FreePoly::word(const Word& w, int64_t c, uint32_t p) {
  FreePoly f(p);
  f.add_term(w, fp::reduce(c, p));
  return f;
}

void FreePoly::check(const FreePoly& o) const {
  if (p_ != o.p_) throw std::invalid_argument("FreePoly field mismatch");
}

void FreePoly::add_term(const Word& w, uint32_t c) {
  c %= p_;
  if (!c) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second = fp::add(it->second, c, p_);
  if (!it->second) terms_.erase(it);
}

FreePoly& FreePoly::operator+=(const FreePoly& o) {
  check(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& o) {
  check(o);
  for (const auto& [w, c] : o.terms_) add_term(w, fp::neg(c, p_));
  return *this;
}

FreePoly FreePoly::operator+(const FreePoly& o) const {
  FreePoly f = *this;
  f += o;
  return f;
}
FreePoly FreePoly::operator-(const FreePoly& o) const {
  FreePoly f = *this;
  f -= o;
  return f;
}
FreePoly FreePoly::operator-() const { return scaled(p_ - 1); }

FreePoly FreePoly::scaled(uint32_t c) const {
  FreePoly f(p_);
  for (const auto& [w, v] : terms_) f.add_term(w, fp::mul(v, c % p_, p_));
  return f;
}

FreePoly FreePoly::operator*(const FreePoly& o) const {
  check(o);
  FreePoly f(p_);
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) f.add_term(concat(w1, w2), fp::mul(c1, c2, p_));
  return f;
}

FreePoly poly_mul(const FreePoly& f, const FreePoly& g) { return f * g; }

int word_degree(const std::vector<Generator>& gens, const Word& w) {
  int d = 0;
  for (const auto& l : w) d += gens.at(l.gen).degree;
  return d;
}

// ---- DGA ----

DGA::DGA(uint32_t p, std::vector<Generator> gens) : p_(p), gens_(std::move(gens)) {
  require_field(p);
  for (uint32_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].invertible && gens_[i].degree != 0)
      throw std::invalid_argument("invertible generator " + gens_[i].name + " must have degree 0");
    if (!by_name_.emplace(gens_[i].name, i).second)
      throw std::invalid_argument("duplicate generator " + gens_[i].name);
    diff_.emplace_back(p);
  }
}

uint32_t DGA::index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw std::out_of_range("no generator " + name);
  return it->second;
}

void DGA::set_diff(uint32_t g, FreePoly f) {
  if (f.modulus() != p_) throw std::invalid_argument("differential over wrong field");
  if (gens_.at(g).invertible && !f.is_zero())
    throw std::invalid_argument("invertible generators must be closed");
  diff_.at(g) = std::move(f);
}

int DGA::base_points() const {
  return static_cast<int>(std::count_if(gens_.begin(), gens_.end(),
                                        [](const Generator& g) { return g.invertible; }));
}

int DGA::degree(const FreePoly& f) const {
  if (f.is_zero()) return INT_MIN;
  int d = INT_MIN;
  for (const auto& [w, c] : f.terms()) {
    int wd = word_degree(gens_, w);
    if (d == INT_MIN) d = wd;
    else if (wd != d) throw std::invalid_argument("inhomogeneous polynomial");
  }
  return d;
}

std::string DGA::format(const Word& w) const {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += gens_.at(w[i].gen).name;
    if (w[i].exp < 0) s += "^-1";
  }
  return s;
}

std::string DGA::format(const FreePoly& f) const {
  if (f.is_zero()) return "0";
  // Display order: fewer non-invertible letters first, then more invertible letters, then
  // the canonical word order.
  std::vector<std::pair<Word, uint32_t>> ts(f.terms().begin(), f.terms().end());
  auto key = [&](const Word& w) {
    int inv = 0;
    for (const auto& l : w) inv += gens_.at(l.gen).invertible ? 1 : 0;
    return std::make_tuple(static_cast<int>(w.size()) - inv, -inv);
  };
  std::stable_sort(ts.begin(), ts.end(),
                   [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : ts) {
    bool neg = c > p_ / 2;
    uint32_t mag = neg ? p_ - c : c;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    std::string body = format(w);
    if (body.empty()) os << mag;
    else if (mag == 1) os << body;
    else os << mag << ' ' << body;
  }
  return os.str();
}

FreePoly apply_diff(const DGA& dga, const FreePoly& f) {
  uint32_t p = dga.modulus();
  FreePoly out(p);
  if (f.is_zero()) return out;
  dga.degree(f);
  const auto& gens = dga.generators();
  for (const auto& [w, c] : f.terms()) {
    int prefix_deg = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      const Letter& l = w[i];
      FreePoly d = dga.diff(l.gen);
      if (!d.is_zero()) {
        if (l.exp < 0) {
          FreePoly ginv = FreePoly::letter(l.gen, -1, p);
          d = -(ginv * d * ginv);
        }
        Word pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        Word suf(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        uint32_t s = fp::mul(c, fp::sign(prefix_deg, p), p);
        for (const auto& [dw, dc] : d.terms())
          out.add_term(concat(concat(pre, dw), suf), fp::mul(s, dc, p));
      }
      prefix_deg += gens[l.gen].degree;
    }
  }
  return out;
}

bool check_d_squared(const DGA& dga) {
  for (uint32_t g = 0; g < dga.size(); ++g)
    if (!apply_diff(dga, dga.diff(g)).is_zero()) return false;
  return true;
}

bool check_gradings(const DGA& dga) {
  const auto& gens = dga.generators();
  for (uint32_t g = 0; g < dga.size(); ++g) {
    for (const auto& [w, c] : dga.diff(g).terms()) {
      if (word_degree(gens, w) != gens[g].degree - 1) return false;
      int cur = gens[g].r;
      for (const auto& l : w) {
        const auto& lg = gens[l.gen];
        int lr = l.exp > 0 ? lg.r : lg.c, lc = l.exp > 0 ? lg.c : lg.r;
        if (lr != cur) return false;
        cur = lc;
      }
      if (cur != gens[g].c) return false;
    }
  }
  return true;
}

// ---- P/Q ----

FreePoly pq_apply(const std::vector<FreePoly>& a, PQ kind, uint32_t p) {
  size_t m = a.size();
  if (kind == PQ::P) {
    FreePoly prev2 = FreePoly(p), prev = FreePoly::constant(1, p);  // P_{-1} = 0, P_0 = 1
    for (size_t k = 0; k < m; ++k) {
      FreePoly cur = prev * a[k] + prev2;
      prev2 = std::move(prev);
      prev = std::move(cur);
    }
    return prev;
  }
  // Q over the suffix a[s..m): Q(s) = -Q(s+1) a[s] + Q(s+2), Q(m) = 1, Q(m+1) = 0.
  std::vector<FreePoly> q(m + 2, FreePoly(p));
  q[m] = FreePoly::constant(1, p);
  for (size_t s = m; s-- > 0;) q[s] = -(q[s + 1] * a[s]) + q[s + 2];
  return q[0];
}

FreePoly pq_polynomial(int m, PQ kind, uint32_t p) {
  if (m < 0) throw std::invalid_argument("negative index");
  std::vector<FreePoly> a;
  for (int j = 0; j < m; ++j) a.push_back(FreePoly::letter(static_cast<uint32_t>(j), 1, p));
  return pq_apply(a, kind, p);
}

DGA build_lambda_dga(int m, uint32_t p) {
  if (m < 1) throw std::invalid_argument("Lambda_m needs m >= 1");
  bool odd = m % 2 == 1;
  std::vector<Generator> g;
  g.push_back({"b1", 1, false, odd ? 1 : 1, odd ? 2 : 1});
  g.push_back({"b2", 1, false, odd ? 1 : 2, odd ? 2 : 2});
  for (int j = 1; j <= m; ++j) {
    bool jo = j % 2 == 1;
    g.push_back({"a" + std::to_string(j), 0, false, jo ? 1 : 2, jo ? 2 : 1});
  }
  g.push_back({"t1", 0, true, odd ? 2 : 1, 1});
  g.push_back({"t2", 0, true, odd ? 1 : 2, 2});
  DGA dga(p, g);
  std::vector<FreePoly> a;
  for (int j = 1; j <= m; ++j) a.push_back(FreePoly::letter(static_cast<uint32_t>(1 + j), 1, p));
  uint32_t t1 = dga.index("t1"), t2 = dga.index("t2");
  dga.set_diff(0, FreePoly::letter(t1, -1, p) + pq_apply(a, PQ::P, p));
  dga.set_diff(1, FreePoly::letter(t2, 1, p) + pq_apply(a, PQ::Q, p));
  return dga;
}

// ---- k-copy ----

uint32_t KCopy::find(CopyIndex::Kind kind, uint32_t base, int i, int j) const {
  auto it = lookup.find({static_cast<int>(kind), base, i, j});
  if (it == lookup.end()) throw std::out_of_range("k-copy generator not found");
  return it->second;
}

namespace {

struct PMat {
  int k;
  std::vector<FreePoly> e;
  PMat(int k, uint32_t p) : k(k), e(static_cast<size_t>(k * k), FreePoly(p)) {}
  FreePoly& at(int i, int j) { return e[static_cast<size_t>(i * k + j)]; }
  const FreePoly& at(int i, int j) const { return e[static_cast<size_t>(i * k + j)]; }
};

PMat pm_mul(const PMat& a, const PMat& b, uint32_t p) {
  PMat c(a.k, p);
  for (int i = 0; i < a.k; ++i)
    for (int l = 0; l < a.k; ++l) {
      if (a.at(i, l).is_zero()) continue;
      for (int j = 0; j < a.k; ++j)
        if (!b.at(l, j).is_zero()) c.at(i, j) += a.at(i, l) * b.at(l, j);
    }
  return c;
}

PMat pm_add(const PMat& a, const PMat& b, uint32_t s) {
  PMat c = a;
  for (size_t x = 0; x < c.e.size(); ++x) c.e[x] += b.e[x].scaled(s);
  return c;
}

PMat pm_identity(int k, uint32_t p) {
  PMat m(k, p);
  for (int i = 0; i < k; ++i) m.at(i, i) = FreePoly::constant(1, p);
  return m;
}

std::string sup(int i, int j) {
  return "^{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

}  // namespace

KCopy kcopy_dga(const DGA& base, int k) {
  if (k < 1) throw std::invalid_argument("k-copy needs k >= 1");
  uint32_t p = base.modulus();
  const auto& bg = base.generators();
  std::vector<Generator> gens;
  std::vector<CopyIndex> idx;
  std::vector<int> base_point_of(bg.size(), 0);
  int q = 0;
  for (uint32_t g = 0; g < bg.size(); ++g)
    if (bg[g].invertible) base_point_of[g] = ++q;

  for (uint32_t g = 0; g < bg.size(); ++g) {
    if (bg[g].invertible) {
      for (int i = 1; i <= k; ++i) {
        gens.push_back({bg[g].name + "^{" + std::to_string(i) + "}", 0, true, bg[g].r, bg[g].c});
        idx.push_back({CopyIndex::T, g, i, i});
      }
    } else {
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
          gens.push_back({bg[g].name + sup(i, j), bg[g].degree, false, bg[g].r, bg[g].c});
          idx.push_back({CopyIndex::Chord, g, i, j});
        }
    }
  }
  for (int l = 1; l <= q; ++l)
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        gens.push_back({"x" + std::to_string(l) + sup(i, j), 0, false, l, l});
        idx.push_back({CopyIndex::X, static_cast<uint32_t>(l), i, j});
      }
  for (int l = 1; l <= q; ++l)
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        gens.push_back({"y" + std::to_string(l) + sup(i, j), -1, false, l, l});
        idx.push_back({CopyIndex::Y, static_cast<uint32_t>(l), i, j});
      }

  KCopy kc{DGA(p, gens), k, idx, {}};
  for (uint32_t g = 0; g < idx.size(); ++g)
    kc.lookup[{static_cast<int>(idx[g].kind), idx[g].base, idx[g].i, idx[g].j}] = g;

  auto L = [&](uint32_t g, int e = 1) { return FreePoly::letter(g, e, p); };
  auto chord_mat = [&](uint32_t g) {
    PMat m(k, p);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) m.at(i - 1, j - 1) = L(kc.find(CopyIndex::Chord, g, i, j));
    return m;
  };
  std::vector<PMat> X, Xinv, Y, D, Dinv;
  for (int l = 1; l <= q; ++l) {
    PMat x = pm_identity(k, p), y(k, p), n(k, p);
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        x.at(i - 1, j - 1) = L(kc.find(CopyIndex::X, static_cast<uint32_t>(l), i, j));
        n.at(i - 1, j - 1) = -x.at(i - 1, j - 1);
        y.at(i - 1, j - 1) = L(kc.find(CopyIndex::Y, static_cast<uint32_t>(l), i, j));
      }
    // X^{-1} = sum_{r<k} (-N)^r.
    PMat xi = pm_identity(k, p), pw = pm_identity(k, p);
    for (int r = 1; r < k; ++r) {
      pw = pm_mul(pw, n, p);
      xi = pm_add(xi, pw, 1);
    }
    X.push_back(x);
    Xinv.push_back(xi);
    Y.push_back(y);
  }
  for (uint32_t g = 0; g < bg.size(); ++g) {
    if (!bg[g].invertible) continue;
    PMat d(k, p), di(k, p);
    for (int i = 1; i <= k; ++i) {
      d.at(i - 1, i - 1) = L(kc.find(CopyIndex::T, g, i, i));
      di.at(i - 1, i - 1) = L(kc.find(CopyIndex::T, g, i, i), -1);
    }
    D.push_back(d);
    Dinv.push_back(di);
  }

  auto phi_word = [&](const Word& w) {
    PMat acc = pm_identity(k, p);
    for (const auto& l : w) {
      const auto& g = bg[l.gen];
      if (g.invertible) {
        int b = base_point_of[l.gen] - 1;
        acc = l.exp > 0 ? pm_mul(pm_mul(acc, D[b], p), X[b], p)
                        : pm_mul(pm_mul(acc, Xinv[b], p), Dinv[b], p);
      } else {
        acc = pm_mul(acc, chord_mat(l.gen), p);
      }
    }
    return acc;
  };
  auto phi = [&](const FreePoly& f) {
    PMat acc(k, p);
    for (const auto& [w, c] : f.terms()) acc = pm_add(acc, phi_word(w), c);
    return acc;
  };

  for (uint32_t g = 0; g < bg.size(); ++g) {
    if (bg[g].invertible) continue;
    PMat C = chord_mat(g);
    PMat dc = phi(base.diff(g));
    dc = pm_add(dc, pm_mul(Y[bg[g].r - 1], C, p), 1);
    uint32_t s = bg[g].degree % 2 == 0 ? p - 1 : 1;  // -(-1)^{|c|}
    dc = pm_add(dc, pm_mul(C, Y[bg[g].c - 1], p), s);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j)
        kc.dga.set_diff(kc.find(CopyIndex::Chord, g, i, j), dc.at(i - 1, j - 1));
  }
  int b = 0;
  for (uint32_t g = 0; g < bg.size(); ++g) {
    if (!bg[g].invertible) continue;
    int l = base_point_of[g];
    PMat dx = pm_mul(pm_mul(pm_mul(Dinv[b], Y[bg[g].r - 1], p), D[b], p), X[b], p);
    dx = pm_add(dx, pm_mul(X[b], Y[bg[g].c - 1], p), p - 1);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= i; ++j)
        if (!dx.at(i - 1, j - 1).is_zero())
          throw std::logic_error("k-copy: dX has entries on or below the diagonal");
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        kc.dga.set_diff(kc.find(CopyIndex::X, static_cast<uint32_t>(l), i, j), dx.at(i - 1, j - 1));
    PMat dy = pm_mul(Y[l - 1], Y[l - 1], p);
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        kc.dga.set_diff(kc.find(CopyIndex::Y, static_cast<uint32_t>(l), i, j), dy.at(i - 1, j - 1));
    ++b;
  }
  return kc;
}

}  // namespace lmrep
