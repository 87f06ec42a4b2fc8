#include "hsf/poly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace hsf {

PolyRing::PolyRing(PrimeField field, std::vector<std::string> names, MonomialOrder order)
    : field_(field), names_(std::move(names)), order_(std::move(order)) {
  if (names_.size() > static_cast<std::size_t>(kMaxVars))
    throw InputError("at most " + std::to_string(kMaxVars) + " variables supported");
  if (order_.nvars() != nvars()) throw InputError("order does not match variable count");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw InputError("duplicate variable name " + names_[i]);
  for (int w : order_.weights()) unit_grading_ = unit_grading_ && w == 1;
}

RingPtr PolyRing::make(PrimeField field, std::vector<std::string> names) {
  int n = static_cast<int>(names.size());
  return std::make_shared<PolyRing>(field, std::move(names), MonomialOrder::grevlex(n));
}

RingPtr PolyRing::make(PrimeField field, std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<PolyRing>(field, std::move(names), std::move(order));
}

RingPtr PolyRing::make(PrimeField field, int n, const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return make(field, std::move(names));
}

int PolyRing::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

long PolyRing::wdeg(const Monomial& m) const {
  if (unit_grading_) return m.deg;
  long d = 0;
  const auto& w = order_.weights();
  for (int i = 0; i < nvars(); ++i) d += static_cast<long>(w[i]) * m.exp(i);
  return d;
}

RingPtr PolyRing::with_order(const MonomialOrder& o) const {
  return std::make_shared<PolyRing>(field_, names_, o);
}

RingPtr ring_of(std::initializer_list<const char*> names, u32 p) {
  std::vector<std::string> v(names.begin(), names.end());
  return PolyRing::make(PrimeField(p), v);
}

Poly Poly::constant(RingPtr r, u32 c) {
  c %= r->field().p();
  Poly f(std::move(r));
  if (c) f.t_.push_back({Monomial{}, c});
  return f;
}

Poly Poly::var(RingPtr r, int i) {
  Monomial m;
  m.set_exp(i, 1);
  return monomial(std::move(r), m, 1);
}

Poly Poly::monomial(RingPtr r, const Monomial& m, u32 c) {
  Poly f(std::move(r));
  if (c % f.ring_->field().p()) f.t_.push_back({m, c % f.ring_->field().p()});
  return f;
}

Poly Poly::from_terms(RingPtr r, std::vector<Term> terms) {
  const PolyRing& R = *r;
  const PrimeField& F = R.field();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return R.cmp(a.m, b.m) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    u32 c = t.c % F.p();
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = F.add(out.back().c, c);
      if (out.back().c == 0) out.pop_back();
    } else if (c) {
      out.push_back({t.m, c});
    }
  }
  return Poly(std::move(r), std::move(out));
}

void Poly::check_ring(const Poly& o) const {
  if (ring_.get() != o.ring_.get() && !(ring_ && o.ring_ && ring_->same_as(*o.ring_)))
    throw MathError("ring mismatch");
}

int Poly::degree() const {
  int d = -1;
  for (auto& t : t_) d = std::max<int>(d, static_cast<int>(t.m.deg));
  return d;
}

long Poly::wdegree() const {
  long d = -1;
  for (auto& t : t_) d = std::max(d, ring_->wdeg(t.m));
  return d;
}

bool Poly::is_homogeneous() const {
  if (t_.empty()) return true;
  long d = ring_->wdeg(t_[0].m);
  for (auto& t : t_)
    if (ring_->wdeg(t.m) != d) return false;
  return true;
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(ring_);
  for (auto& t : t_)
    if (static_cast<int>(t.m.deg) == d) r.t_.push_back(t);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (t_.empty()) return o;
  if (o.t_.empty()) return *this;
  check_ring(o);
  const PolyRing& R = *ring_;
  const PrimeField& F = R.field();
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    int c = R.cmp(t_[i].m, o.t_[j].m);
    if (c > 0) out.push_back(t_[i++]);
    else if (c < 0) out.push_back(o.t_[j++]);
    else {
      u32 s = F.add(t_[i].c, o.t_[j].c);
      if (s) out.push_back({t_[i].m, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), t_.begin() + i, t_.end());
  out.insert(out.end(), o.t_.begin() + j, o.t_.end());
  return Poly(ring_, std::move(out));
}

Poly Poly::operator-() const {
  Poly r = *this;
  const PrimeField& F = ring_->field();
  for (auto& t : r.t_) t.c = F.neg(t.c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (o.t_.empty()) return *this;
  return *this + (-o);
}

Poly Poly::sub_mul(u32 c, const Monomial& m, const Poly& g) const {
  const PolyRing& R = *g.ring_;
  const PrimeField& F = R.field();
  u32 nc = F.neg(c);
  std::vector<Term> out;
  out.reserve(t_.size() + g.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() && j < g.t_.size()) {
    Monomial gm = mono_mul(g.t_[j].m, m);
    int cc = R.cmp(t_[i].m, gm);
    if (cc > 0) out.push_back(t_[i++]);
    else if (cc < 0) {
      out.push_back({gm, F.mul(nc, g.t_[j].c)});
      ++j;
    } else {
      u32 s = F.add(t_[i].c, F.mul(nc, g.t_[j].c));
      if (s) out.push_back({gm, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), t_.begin() + i, t_.end());
  for (; j < g.t_.size(); ++j) out.push_back({mono_mul(g.t_[j].m, m), F.mul(nc, g.t_[j].c)});
  return Poly(g.ring_, std::move(out));
}

Poly Poly::scaled(u32 c) const {
  const PrimeField& F = ring_->field();
  c %= F.p();
  if (c == 0) return Poly(ring_);
  Poly r = *this;
  for (auto& t : r.t_) t.c = F.mul(t.c, c);
  return r;
}

Poly Poly::mul_term(const Monomial& m, u32 c) const {
  const PrimeField& F = ring_->field();
  if (c % F.p() == 0) return Poly(ring_);
  Poly r(ring_);
  r.t_.reserve(t_.size());
  for (auto& t : t_) r.t_.push_back({mono_mul(t.m, m), F.mul(t.c, c)});
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (t_.empty() || o.t_.empty()) return Poly(ring_ ? ring_ : o.ring_);
  check_ring(o);
  if (t_.size() == 1) return o.mul_term(t_[0].m, t_[0].c);
  if (o.t_.size() == 1) return mul_term(o.t_[0].m, o.t_[0].c);
  const PrimeField& F = ring_->field();
  std::unordered_map<Monomial, u32, MonomialHash> acc;
  acc.reserve(t_.size() * o.t_.size());
  for (auto& a : t_)
    for (auto& b : o.t_) {
      auto [it, ins] = acc.try_emplace(mono_mul(a.m, b.m), 0u);
      it->second = F.add(it->second, F.mul(a.c, b.c));
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) terms.push_back({m, c});
  const PolyRing& R = *ring_;
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) { return R.cmp(x.m, y.m) > 0; });
  return Poly(ring_, std::move(terms));
}

Poly Poly::pow(int e) const {
  if (e < 0) throw MathError("negative power");
  Poly r = constant(ring_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::monic() const {
  if (t_.empty()) return *this;
  return scaled(ring_->field().inv(lc()));
}

u32 Poly::eval(const std::vector<u32>& pt) const {
  const PrimeField& F = ring_->field();
  int n = ring_->nvars();
  if (static_cast<int>(pt.size()) < n) throw MathError("point has too few coordinates");
  // cache small powers per variable lazily
  std::vector<std::vector<u32>> pw(n);
  u32 sum = 0;
  for (auto& t : t_) {
    u32 v = t.c;
    for (int i = 0; i < n && v; ++i) {
      int e = t.m.exp(i);
      if (!e) continue;
      auto& p = pw[i];
      if (p.empty()) p.push_back(1);
      while (static_cast<int>(p.size()) <= e) p.push_back(F.mul(p.back(), pt[i]));
      v = F.mul(v, p[e]);
    }
    sum = F.add(sum, v);
  }
  return sum;
}

Poly Poly::derivative(int var) const {
  const PrimeField& F = ring_->field();
  std::vector<Term> out;
  for (auto& t : t_) {
    int e = t.m.exp(var);
    if (!e) continue;
    u32 c = F.mul(t.c, F.from_int(e));
    if (!c) continue;
    Monomial m = t.m;
    m.set_exp(var, e - 1);
    out.push_back({m, c});
  }
  // derivative keeps the relative order only for unit-weight grevlex; re-sort in general
  return from_terms(ring_, std::move(out));
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  int n = ring_->nvars();
  if (static_cast<int>(images.size()) != n) throw MathError("substitute: wrong number of images");
  RingPtr tr = images.empty() ? ring_ : images[0].ring();
  std::vector<std::vector<Poly>> pw(n);
  std::unordered_map<Monomial, u32, MonomialHash> acc;
  const PrimeField& F = tr->field();
  for (auto& t : t_) {
    Poly v = constant(tr, t.c);
    for (int i = 0; i < n && !v.is_zero(); ++i) {
      int e = t.m.exp(i);
      if (!e) continue;
      auto& p = pw[i];
      if (p.empty()) p.push_back(constant(tr, 1));
      while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * images[i]);
      v = v * p[e];
    }
    for (auto& s : v.t_) {
      auto [it, ins] = acc.try_emplace(s.m, 0u);
      it->second = F.add(it->second, s.c);
    }
  }
  std::vector<Term> terms;
  for (auto& [m, c] : acc)
    if (c) terms.push_back({m, c});
  const PolyRing& R = *tr;
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) { return R.cmp(x.m, y.m) > 0; });
  return Poly(tr, std::move(terms));
}

Poly Poly::in_ring(const RingPtr& r) const {
  if (r->nvars() != ring_->nvars()) throw MathError("in_ring: variable count differs");
  return from_terms(r, t_);
}

Poly Poly::embed(const RingPtr& r, const std::vector<int>& map) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  int n = ring_->nvars();
  for (auto& t : t_) {
    Monomial m;
    for (int i = 0; i < n; ++i)
      if (int e = t.m.exp(i)) m.set_exp(map[i], m.exp(map[i]) + e);
    out.push_back({m, t.c});
  }
  return from_terms(r, std::move(out));
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].c != o.t_[i].c || t_[i].m != o.t_[i].m) return false;
  return true;
}

std::string mono_str(const PolyRing& r, const Monomial& m) {
  std::string s;
  for (int i = 0; i < r.nvars(); ++i) {
    int e = m.exp(i);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += r.names()[i];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  const PrimeField& F = ring_->field();
  std::string s;
  bool first = true;
  for (auto& t : t_) {
    i64 c = F.to_signed(t.c);
    bool neg = c < 0;
    i64 a = neg ? -c : c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? "-" : "+";
    }
    first = false;
    if (t.m.is_one()) {
      s += std::to_string(a);
    } else {
      if (a != 1) s += std::to_string(a) + "*";
      s += mono_str(*ring_, t.m);
    }
  }
  return s;
}

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  // enumerate compositions; sort afterwards
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(Monomial::from_exps(e));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(Monomial{});
    return out;
  }
  rec(0, d);
  MonomialOrder o = MonomialOrder::grevlex(n);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return o.cmp(a, b) > 0; });
  return out;
}

}  // namespace hsf
