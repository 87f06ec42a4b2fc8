#include "hsf/groebner.hpp"

#include <algorithm>
#include <mutex>

namespace hsf {

namespace {

std::mutex g_deadline_mu;
std::optional<std::chrono::steady_clock::time_point> g_deadline;

void check_deadline(const std::optional<std::chrono::steady_clock::time_point>& d) {
  if (d && std::chrono::steady_clock::now() > *d) throw MathError("time budget exceeded");
}

// Geometric buckets (Yan) holding a polynomial as a few sorted runs.
class Geobucket {
 public:
  explicit Geobucket(const PolyRing& R) : R_(R), F_(R.field()) {}

  void add(std::vector<Term>&& p) {
    if (p.empty()) return;
    std::size_t i = 0;
    while (cap(i) < p.size()) ++i;
    for (;;) {
      if (b_.size() <= i) {
        b_.resize(i + 1);
        off_.resize(i + 1, 0);
      }
      if (live(i) == 0) {
        b_[i] = std::move(p);
        off_[i] = 0;
        return;
      }
      merge_into(p, i);
      if (p.size() <= cap(i)) {
        b_[i] = std::move(p);
        off_[i] = 0;
        return;
      }
      b_[i].clear();
      off_[i] = 0;
      ++i;
    }
  }

  bool pop_lead(Term& out) {
    for (;;) {
      int best = -1;
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if (!live(i)) continue;
        if (best < 0 || R_.cmp(head(i).m, head(best).m) > 0) best = static_cast<int>(i);
      }
      if (best < 0) return false;
      Monomial m = head(best).m;
      u32 c = 0;
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if (live(i) && head(i).m == m) {
          c = F_.add(c, head(i).c);
          ++off_[i];
        }
      }
      if (c) {
        out = {m, c};
        return true;
      }
    }
  }

 private:
  static std::size_t cap(std::size_t i) { return std::size_t(4) << (2 * i); }
  std::size_t live(std::size_t i) const { return b_[i].size() - off_[i]; }
  const Term& head(std::size_t i) const { return b_[i][off_[i]]; }

  void merge_into(std::vector<Term>& p, std::size_t i) {
    const auto& q = b_[i];
    std::vector<Term> out;
    out.reserve(p.size() + live(i));
    std::size_t a = 0, b = off_[i];
    while (a < p.size() && b < q.size()) {
      int c = R_.cmp(p[a].m, q[b].m);
      if (c > 0) out.push_back(p[a++]);
      else if (c < 0) out.push_back(q[b++]);
      else {
        u32 s = F_.add(p[a].c, q[b].c);
        if (s) out.push_back({p[a].m, s});
        ++a;
        ++b;
      }
    }
    out.insert(out.end(), p.begin() + a, p.end());
    out.insert(out.end(), q.begin() + b, q.end());
    p = std::move(out);
  }

  const PolyRing& R_;
  const PrimeField& F_;
  std::vector<std::vector<Term>> b_;
  std::vector<std::size_t> off_;
};

struct Elem {
  Poly p;  // monic
  long sugar;
};

struct Pair {
  int i, j;  // j < 0: input generator i
  Monomial lcm;
  long sugar;
};

// c * m * (g without its leading term)
std::vector<Term> shifted_tail(const Poly& g, const Monomial& m, u32 c, const PrimeField& F) {
  std::vector<Term> out;
  const auto& t = g.terms();
  out.reserve(t.size() ? t.size() - 1 : 0);
  for (std::size_t k = 1; k < t.size(); ++k) out.push_back({mono_mul(t[k].m, m), F.mul(t[k].c, c)});
  return out;
}

class Reducer {
 public:
  Reducer(const PolyRing& R, const std::vector<Elem>& E) : R_(R), E_(E) {}
  void set_active(const std::vector<int>* act) { act_ = act; }

  int find(const Monomial& m) const {
    for (int k : *act_) {
      const Monomial& lm = E_[k].p.lm();
      if (mono_divides(lm, m)) return k;
    }
    return -1;
  }

  // full reduction of the polynomial held in the bucket
  Poly reduce(Geobucket& gb, RingPtr ring, long& sugar, const std::optional<std::chrono::steady_clock::time_point>& dl) const {
    const PrimeField& F = R_.field();
    std::vector<Term> res;
    Term t;
    std::size_t steps = 0;
    while (gb.pop_lead(t)) {
      if ((++steps & 1023) == 0) check_deadline(dl);
      int k = find(t.m);
      if (k < 0) {
        res.push_back(t);
        continue;
      }
      Monomial q = mono_div(t.m, E_[k].p.lm());
      sugar = std::max(sugar, E_[k].sugar + R_.wdeg(q));
      gb.add(shifted_tail(E_[k].p, q, F.neg(t.c), F));
    }
    return Poly(std::move(ring), std::move(res));
  }

 private:
  const PolyRing& R_;
  const std::vector<Elem>& E_;
  const std::vector<int>* act_ = nullptr;
};

// Gebauer-Moeller update (Becker-Weispfenning UPDATE).
void gm_update(std::vector<int>& G, std::vector<Pair>& B, int h, const std::vector<Elem>& E, const PolyRing& R) {
  const Monomial& lh = E[h].p.lm();
  struct Cand {
    int g;
    Monomial lcm;
    bool coprime;
    bool keep;
  };
  std::vector<Cand> C;
  C.reserve(G.size());
  for (int g : G) {
    const Monomial& lg = E[g].p.lm();
    C.push_back({g, mono_lcm(lh, lg), mono_coprime(lh, lg), true});
  }
  // criterion: drop (h,g1) if another (h,g2) has lcm dividing lcm(h,g1),
  // keeping coprime ones for the next step; ties broken by index
  for (std::size_t a = 0; a < C.size(); ++a) {
    if (C[a].coprime) continue;
    for (std::size_t b = 0; b < C.size(); ++b) {
      if (a == b || !C[b].keep) continue;
      if (mono_divides(C[b].lcm, C[a].lcm)) {
        if (C[b].lcm == C[a].lcm && b > a && !C[b].coprime) continue;
        C[a].keep = false;
        break;
      }
    }
  }
  // filter old pairs
  std::vector<Pair> nb;
  nb.reserve(B.size() + C.size());
  for (auto& pr : B) {
    if (pr.j < 0) {
      nb.push_back(pr);
      continue;
    }
    if (!mono_divides(lh, pr.lcm)) {
      nb.push_back(pr);
      continue;
    }
    Monomial l1 = mono_lcm(E[pr.i].p.lm(), lh), l2 = mono_lcm(lh, E[pr.j].p.lm());
    if (l1 == pr.lcm || l2 == pr.lcm) nb.push_back(pr);
  }
  for (auto& c : C) {
    if (!c.keep || c.coprime) continue;
    long s = std::max(E[h].sugar + R.wdeg(mono_div(c.lcm, lh)), E[c.g].sugar + R.wdeg(mono_div(c.lcm, E[c.g].p.lm())));
    nb.push_back({c.g, h, c.lcm, s});
  }
  B = std::move(nb);
  std::vector<int> ng;
  ng.reserve(G.size() + 1);
  for (int g : G)
    if (!mono_divides(lh, E[g].p.lm())) ng.push_back(g);
  ng.push_back(h);
  G = std::move(ng);
}

RingPtr common_ring(const std::vector<Poly>& gens) {
  RingPtr r;
  for (auto& g : gens) {
    if (!g.ring()) continue;
    if (!r) r = g.ring();
    else if (r.get() != g.ring().get() && !r->same_as(*g.ring())) throw MathError("ring mismatch");
  }
  return r;
}

std::vector<Poly> interreduce(std::vector<Poly> G, const RingPtr& ring) {
  const PolyRing& R = *ring;
  std::sort(G.begin(), G.end(), [&](const Poly& a, const Poly& b) { return R.cmp(a.lm(), b.lm()) < 0; });
  std::vector<Elem> E;
  for (auto& g : G) E.push_back({g.monic(), 0});
  std::vector<Poly> out;
  for (std::size_t k = 0; k < E.size(); ++k) {
    std::vector<int> others;
    for (std::size_t j = 0; j < E.size(); ++j)
      if (j != k) others.push_back(static_cast<int>(j));
    Reducer red(R, E);
    red.set_active(&others);
    Geobucket gb(R);
    std::vector<Term> tail(E[k].p.terms().begin() + 1, E[k].p.terms().end());
    gb.add(std::move(tail));
    long s = 0;
    Poly rt = red.reduce(gb, ring, s, std::nullopt);
    std::vector<Term> terms;
    terms.push_back(E[k].p.lt());
    terms.insert(terms.end(), rt.terms().begin(), rt.terms().end());
    out.emplace_back(ring, std::move(terms));
  }
  return out;
}

}  // namespace

void set_gb_deadline(std::optional<std::chrono::steady_clock::time_point> d) {
  std::lock_guard<std::mutex> lk(g_deadline_mu);
  g_deadline = d;
}

std::optional<std::chrono::steady_clock::time_point> gb_deadline() {
  std::lock_guard<std::mutex> lk(g_deadline_mu);
  return g_deadline;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (auto& g : gens_) out.push_back(g.lm());
  return out;
}

GroebnerBasis buchberger(const std::vector<Poly>& gens, const GBOptions& opt) {
  RingPtr ring = common_ring(gens);
  if (!ring) return GroebnerBasis(ring, {}, true);
  const PolyRing& R = *ring;
  const PrimeField& F = R.field();
  auto dl = opt.deadline ? opt.deadline : gb_deadline();

  std::vector<Elem> E;
  std::vector<Pair> B;
  std::vector<int> G;
  std::vector<Poly> inputs;
  for (auto& g : gens)
    if (!g.is_zero()) inputs.push_back(g.monic());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    B.push_back({static_cast<int>(i), -1, inputs[i].lm(), inputs[i].wdegree()});

  Reducer red(R, E);
  red.set_active(&G);
  bool truncated = false;
  while (!B.empty()) {
    check_deadline(dl);
    std::size_t best = 0;
    for (std::size_t k = 1; k < B.size(); ++k) {
      const Pair& a = B[k];
      const Pair& b = B[best];
      bool better;
      if (opt.selection == GBOptions::Selection::Sugar && a.sugar != b.sugar) better = a.sugar < b.sugar;
      else {
        int c = R.cmp(a.lcm, b.lcm);
        better = c != 0 ? c < 0 : (a.j < b.j || (a.j == b.j && a.i < b.i));
      }
      if (better) best = k;
    }
    Pair pr = B[best];
    B.erase(B.begin() + static_cast<long>(best));
    if (opt.max_degree >= 0 && pr.sugar > opt.max_degree) {
      truncated = true;
      continue;
    }
    Geobucket gb(R);
    long sugar = pr.sugar;
    if (pr.j < 0) {
      gb.add(std::vector<Term>(inputs[pr.i].terms()));
    } else {
      const Poly& f = E[pr.i].p;
      const Poly& g = E[pr.j].p;
      gb.add(shifted_tail(f, mono_div(pr.lcm, f.lm()), 1, F));
      gb.add(shifted_tail(g, mono_div(pr.lcm, g.lm()), F.neg(1), F));
    }
    Poly h = red.reduce(gb, ring, sugar, dl);
    if (h.is_zero()) continue;
    h = h.monic();
    if (h.lm().is_one()) return GroebnerBasis(ring, {Poly::constant(ring, 1)}, true);
    E.push_back({h, sugar});
    // Elem storage may have moved; reducer holds a reference to the vector itself
    gm_update(G, B, static_cast<int>(E.size()) - 1, E, R);
  }
  std::vector<Poly> out;
  for (int g : G) out.push_back(E[g].p);
  out = interreduce(std::move(out), ring);
  return GroebnerBasis(ring, std::move(out), true, truncated ? opt.max_degree : -1);
}

Poly normal_form(const Poly& f, const GroebnerBasis& G) {
  if (f.is_zero()) return f;
  if (G.ring() && !(f.ring().get() == G.ring().get() || f.ring()->same_as(*G.ring())))
    throw MathError("normal_form: ring mismatch");
  if (G.is_zero_ideal()) return f;
  const PolyRing& R = *f.ring();
  std::vector<Elem> E;
  for (auto& g : G.gens()) E.push_back({g.monic(), 0});
  std::vector<int> act(E.size());
  for (std::size_t k = 0; k < E.size(); ++k) act[k] = static_cast<int>(k);
  Reducer red(R, E);
  red.set_active(&act);
  Geobucket gb(R);
  gb.add(std::vector<Term>(f.terms()));
  long s = 0;
  return red.reduce(gb, f.ring(), s, std::nullopt);
}

bool ideal_contains(const GroebnerBasis& G, const Poly& f) { return normal_form(f, G).is_zero(); }

// ---------------------------------------------------------------------------
// cofactor tracking and syzygies

namespace {

struct TElem {
  Poly p;
  std::vector<Poly> cof;
};

void vec_sub_mul(std::vector<Poly>& a, u32 c, const Monomial& m, const std::vector<Poly>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] = a[i].sub_mul(c, m, b[i]);
}

// reduce e (with cofactors) by basis elements; full reduction
void tracked_reduce(TElem& e, const std::vector<TElem>& G, const std::vector<int>& act, const RingPtr& ring) {
  const PrimeField& F = ring->field();
  std::vector<Term> done;
  Poly f = e.p;
  while (!f.is_zero()) {
    const Term t = f.lt();
    int k = -1;
    for (int j : act)
      if (mono_divides(G[j].p.lm(), t.m)) {
        k = j;
        break;
      }
    if (k < 0) {
      done.push_back(t);
      f = Poly(ring, std::vector<Term>(f.terms().begin() + 1, f.terms().end()));
      continue;
    }
    Monomial q = mono_div(t.m, G[k].p.lm());
    u32 c = F.mul(t.c, F.inv(G[k].p.lc()));
    f = f.sub_mul(c, q, G[k].p);
    vec_sub_mul(e.cof, c, q, G[k].cof);
  }
  e.p = Poly(ring, std::move(done));
}

// division with quotients (no cofactors of the divisors)
std::vector<Poly> divide(const Poly& f0, const std::vector<Poly>& G, Poly& rem) {
  RingPtr ring = f0.ring();
  const PrimeField& F = ring->field();
  std::vector<Poly> q(G.size(), Poly(ring));
  std::vector<Term> done;
  Poly f = f0;
  while (!f.is_zero()) {
    const Term t = f.lt();
    int k = -1;
    for (std::size_t j = 0; j < G.size(); ++j)
      if (mono_divides(G[j].lm(), t.m)) {
        k = static_cast<int>(j);
        break;
      }
    if (k < 0) {
      done.push_back(t);
      f = Poly(ring, std::vector<Term>(f.terms().begin() + 1, f.terms().end()));
      continue;
    }
    Monomial m = mono_div(t.m, G[k].lm());
    u32 c = F.mul(t.c, F.inv(G[k].lc()));
    f = f.sub_mul(c, m, G[k]);
    q[k] = q[k] + Poly::monomial(ring, m, c);
  }
  rem = Poly(ring, std::move(done));
  return q;
}

}  // namespace

TrackedBasis buchberger_tracked(const std::vector<Poly>& gens) {
  RingPtr ring = common_ring(gens);
  TrackedBasis out;
  if (!ring) return out;
  const PolyRing& R = *ring;
  const PrimeField& F = R.field();
  const std::size_t n = gens.size();
  auto dl = gb_deadline();

  std::vector<TElem> E;
  std::vector<Pair> B;
  std::vector<int> G;
  for (std::size_t i = 0; i < n; ++i)
    if (!gens[i].is_zero()) B.push_back({static_cast<int>(i), -1, gens[i].lm(), gens[i].wdegree()});
  std::vector<Elem> shadow;  // lm bookkeeping for gm_update
  while (!B.empty()) {
    check_deadline(dl);
    std::size_t best = 0;
    for (std::size_t k = 1; k < B.size(); ++k) {
      const Pair& a = B[k];
      const Pair& b = B[best];
      bool better = a.sugar != b.sugar ? a.sugar < b.sugar : R.cmp(a.lcm, b.lcm) < 0;
      if (better) best = k;
    }
    Pair pr = B[best];
    B.erase(B.begin() + static_cast<long>(best));
    TElem e;
    e.cof.assign(n, Poly(ring));
    if (pr.j < 0) {
      e.p = gens[pr.i];
      e.cof[pr.i] = Poly::constant(ring, 1);
    } else {
      const TElem& a = E[pr.i];
      const TElem& b = E[pr.j];
      Monomial ma = mono_div(pr.lcm, a.p.lm()), mb = mono_div(pr.lcm, b.p.lm());
      u32 ca = F.inv(a.p.lc()), cb = F.inv(b.p.lc());
      e.p = a.p.mul_term(ma, ca) - b.p.mul_term(mb, cb);
      for (std::size_t i = 0; i < n; ++i) e.cof[i] = a.cof[i].mul_term(ma, ca) - b.cof[i].mul_term(mb, cb);
    }
    tracked_reduce(e, E, G, ring);
    if (e.p.is_zero()) continue;
    u32 inv = F.inv(e.p.lc());
    e.p = e.p.scaled(inv);
    for (auto& c : e.cof) c = c.scaled(inv);
    E.push_back(e);
    shadow.push_back({e.p, pr.sugar});
    gm_update(G, B, static_cast<int>(E.size()) - 1, shadow, R);
    if (e.p.lm().is_one()) break;
  }
  // interreduce with cofactors
  std::sort(G.begin(), G.end(), [&](int a, int b) { return R.cmp(E[a].p.lm(), E[b].p.lm()) < 0; });
  bool unit = !G.empty() && E[G.back()].p.lm().is_one();
  if (unit) G = {G.back()};
  std::vector<TElem> fin;
  for (std::size_t k = 0; k < G.size(); ++k) {
    TElem e = E[G[k]];
    std::vector<int> others;
    for (std::size_t j = 0; j < G.size(); ++j)
      if (j != k) others.push_back(G[j]);
    // reduce the tail only
    Term lead = e.p.lt();
    TElem tail{Poly(ring, std::vector<Term>(e.p.terms().begin() + 1, e.p.terms().end())), e.cof};
    tracked_reduce(tail, E, others, ring);
    std::vector<Term> terms{lead};
    terms.insert(terms.end(), tail.p.terms().begin(), tail.p.terms().end());
    fin.push_back({Poly(ring, std::move(terms)), tail.cof});
  }
  std::vector<Poly> basis;
  for (auto& e : fin) {
    basis.push_back(e.p);
    out.cofactors.push_back(e.cof);
  }
  out.gb = GroebnerBasis(ring, basis, true);

  // Schreyer syzygies of the basis, mapped back to the inputs
  const std::size_t t = basis.size();
  auto push_syz = [&](std::vector<Poly> v) {
    bool nz = false;
    for (auto& x : v) nz = nz || !x.is_zero();
    if (nz) out.syzygies.push_back(std::move(v));
  };
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = a + 1; b < t; ++b) {
      check_deadline(dl);
      Monomial l = mono_lcm(basis[a].lm(), basis[b].lm());
      Monomial ma = mono_div(l, basis[a].lm()), mb = mono_div(l, basis[b].lm());
      Poly s = basis[a].mul_term(ma, 1) - basis[b].mul_term(mb, 1);
      Poly rem;
      auto q = divide(s, basis, rem);
      if (!rem.is_zero()) throw MathError("internal: S-pair of reduced basis does not reduce to zero");
      // syzygy of basis: ma*e_a - mb*e_b - sum q_k e_k
      std::vector<Poly> sb(t, Poly(ring));
      for (std::size_t k = 0; k < t; ++k) sb[k] = -q[k];
      sb[a] = sb[a] + Poly::monomial(ring, ma, 1);
      sb[b] = sb[b] - Poly::monomial(ring, mb, 1);
      std::vector<Poly> v(n, Poly(ring));
      for (std::size_t k = 0; k < t; ++k) {
        if (sb[k].is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
          if (!out.cofactors[k][i].is_zero()) v[i] = v[i] + sb[k] * out.cofactors[k][i];
      }
      push_syz(std::move(v));
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (gens[i].is_zero()) {
      std::vector<Poly> v(n, Poly(ring));
      v[i] = Poly::constant(ring, 1);
      push_syz(std::move(v));
      continue;
    }
    Poly rem;
    auto q = divide(gens[i], basis, rem);
    if (!rem.is_zero()) throw MathError("internal: generator not in its own ideal");
    std::vector<Poly> v(n, Poly(ring));
    v[i] = Poly::constant(ring, 1);
    for (std::size_t k = 0; k < t; ++k) {
      if (q[k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!out.cofactors[k][j].is_zero()) v[j] = v[j] - q[k] * out.cofactors[k][j];
    }
    push_syz(std::move(v));
  }
  return out;
}

std::vector<std::vector<Poly>> syzygies(const std::vector<Poly>& gens) {
  for (auto& g : gens)
    if (!g.is_homogeneous()) throw MathError("syzygies: generators must be homogeneous");
  return buchberger_tracked(gens).syzygies;
}

}  // namespace hsf
