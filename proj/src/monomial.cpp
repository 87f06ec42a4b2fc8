#include "hsf/monomial.hpp"

#include <numeric>

namespace hsf {

void Monomial::set_exp(int i, int e) {
  if (e < 0 || e > kMaxExp) throw MathError("exponent out of range");
  int old = exp(i);
  u64& word = w[3 - i / 8];
  int sh = 8 * (i % 8);
  word = (word & ~(0xFFULL << sh)) | (static_cast<u64>(e) << sh);
  deg = deg - old + e;
}

Monomial Monomial::from_exps(const std::vector<int>& e) {
  if (e.size() > static_cast<std::size_t>(kMaxVars)) throw MathError("too many variables");
  Monomial m;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) m.set_exp(static_cast<int>(i), e[i]);
  return m;
}

std::vector<int> Monomial::exps(int nvars) const {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exp(i);
  return e;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  u64 over = 0;
  for (int k = 0; k < 4; ++k) {
    r.w[k] = a.w[k] + b.w[k];
    over |= r.w[k];
  }
  if (over & detail::kHigh) throw MathError("exponent overflow (max 127 per variable)");
  r.deg = a.deg + b.deg;
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  u32 d = 0;
  for (int k = 0; k < 4; ++k) {
    u64 ge = ((a.w[k] | detail::kHigh) - b.w[k]) & detail::kHigh;  // a >= b per byte
    u64 mask = (ge >> 7) * 0xFF;
    r.w[k] = (a.w[k] & mask) | (b.w[k] & ~mask);
    u64 x = r.w[k];
    while (x) {
      d += static_cast<u32>(x & 0xFF);
      x >>= 8;
    }
  }
  r.deg = d;
  return r;
}

MonomialOrder MonomialOrder::grevlex(int n) {
  MonomialOrder o;
  o.kind_ = Kind::GRevLex;
  o.n_ = n;
  o.blocks_ = {{0, n}};
  o.weights_.assign(n, 1);
  o.fast_ = true;
  return o;
}

MonomialOrder MonomialOrder::lex(int n) {
  MonomialOrder o;
  o.kind_ = Kind::Lex;
  o.n_ = n;
  for (int i = 0; i < n; ++i) o.blocks_.push_back({i, i + 1});
  o.weights_.assign(n, 1);
  o.fast_ = false;
  return o;
}

MonomialOrder MonomialOrder::block(int n, int k) {
  if (k <= 0 || k >= n) throw InputError("block order needs 0 < k < n");
  MonomialOrder o = blocks({k, n - k});
  return o;
}

MonomialOrder MonomialOrder::blocks(const std::vector<int>& sizes) {
  int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  return weighted_blocks(sizes, std::vector<int>(n, 1));
}

MonomialOrder MonomialOrder::weighted(const std::vector<int>& weights) {
  MonomialOrder o;
  o.kind_ = Kind::Weighted;
  o.n_ = static_cast<int>(weights.size());
  o.blocks_ = {{0, o.n_}};
  o.weights_ = weights;
  o.fast_ = false;
  for (int w : weights)
    if (w <= 0) throw InputError("weights must be positive");
  return o;
}

MonomialOrder MonomialOrder::weighted_blocks(const std::vector<int>& sizes, const std::vector<int>& weights) {
  MonomialOrder o;
  o.n_ = static_cast<int>(weights.size());
  int s = 0;
  for (int sz : sizes) {
    if (sz <= 0) throw InputError("empty block");
    o.blocks_.push_back({s, s + sz});
    s += sz;
  }
  if (s != o.n_) throw InputError("block sizes do not match variable count");
  o.weights_ = weights;
  o.kind_ = sizes.size() == 1 ? Kind::Weighted : Kind::Block;
  bool unit = true;
  for (int w : weights) {
    if (w <= 0) throw InputError("weights must be positive");
    unit = unit && w == 1;
  }
  if (sizes.size() == 1 && unit) o.kind_ = Kind::GRevLex;
  o.fast_ = o.kind_ == Kind::GRevLex;
  return o;
}

int MonomialOrder::cmp_slow(const Monomial& a, const Monomial& b) const {
  for (auto [s, e] : blocks_) {
    long da = 0, db = 0;
    for (int i = s; i < e; ++i) {
      da += static_cast<long>(weights_[i]) * a.exp(i);
      db += static_cast<long>(weights_[i]) * b.exp(i);
    }
    if (da != db) return da > db ? 1 : -1;
    for (int i = e - 1; i >= s; --i) {
      int x = a.exp(i), y = b.exp(i);
      if (x != y) return x < y ? 1 : -1;
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::GRevLex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Weighted: return "weighted";
    case Kind::Block: {
      std::string s = "block(";
      for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(blocks_[i].second - blocks_[i].first);
      }
      return s + ")";
    }
  }
  return "?";
}

}  // namespace hsf
