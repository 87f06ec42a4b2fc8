#include "hsf/linalg.hpp"

#include <algorithm>

namespace hsf {

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

void Mat::append_row(const std::vector<u32>& v) {
  if (r_ == 0 && c_ == 0) c_ = static_cast<int>(v.size());
  if (static_cast<int>(v.size()) != c_) throw MathError("append_row: length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++r_;
}

Mat Mat::transpose() const {
  Mat T(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

Mat mat_mul(const Mat& A, const Mat& B, const PrimeField& F) {
  if (A.cols() != B.rows()) throw MathError("mat_mul: shape mismatch");
  Mat C(A.rows(), B.cols());
  const u64 p = F.p();
  std::vector<u64> acc(B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int k = 0; k < A.cols(); ++k) {
      u64 a = A(i, k);
      if (!a) continue;
      const u32* b = B.row(k);
      for (int j = 0; j < B.cols(); ++j) acc[j] = (acc[j] + a * b[j]) % p;
    }
    for (int j = 0; j < B.cols(); ++j) C(i, j) = static_cast<u32>(acc[j]);
  }
  return C;
}

std::vector<u32> mat_vec(const Mat& A, const std::vector<u32>& v, const PrimeField& F) {
  std::vector<u32> out(A.rows());
  for (int i = 0; i < A.rows(); ++i) {
    u64 s = 0;
    for (int j = 0; j < A.cols(); ++j) s = (s + static_cast<u64>(A(i, j)) * v[j]) % F.p();
    out[i] = static_cast<u32>(s);
  }
  return out;
}

namespace {
// row_t -= f * row_s from column c0 on
inline void axpy(u32* t, const u32* s, u32 f, int c0, int n, u64 p) {
  u64 nf = p - f;
  for (int j = c0; j < n; ++j)
    if (s[j]) t[j] = static_cast<u32>((t[j] + nf * s[j]) % p);
}
}  // namespace

std::vector<int> rref(Mat& A, const PrimeField& F) {
  std::vector<int> piv;
  int r = 0;
  const int n = A.cols(), m = A.rows();
  const u64 p = F.p();
  for (int c = 0; c < n && r < m; ++c) {
    int sel = -1;
    for (int i = r; i < m; ++i)
      if (A(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) std::swap_ranges(A.row(sel), A.row(sel) + n, A.row(r));
    u32* pr = A.row(r);
    u32 inv = F.inv(pr[c]);
    for (int j = c; j < n; ++j) pr[j] = F.mul(pr[j], inv);
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      u32 f = A(i, c);
      if (f) axpy(A.row(i), pr, f, c, n, p);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(Mat A, const PrimeField& F) { return static_cast<int>(rref(A, F).size()); }

Mat kernel(const Mat& A0, const PrimeField& F) {
  Mat A = A0;
  auto piv = rref(A, F);
  int n = A.cols();
  std::vector<int> is_piv(n, -1);
  for (std::size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
  Mat K(0, n);
  for (int f = 0; f < n; ++f) {
    if (is_piv[f] >= 0) continue;
    std::vector<u32> v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(A(static_cast<int>(i), f));
    K.append_row(v);
  }
  if (K.rows() == 0) K = Mat(0, n);
  return K;
}

std::vector<u32> solve(const Mat& A, const std::vector<u32>& b, const PrimeField& F) {
  if (static_cast<int>(b.size()) != A.rows()) throw MathError("solve: rhs length mismatch");
  Mat Ab(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) Ab(i, j) = A(i, j);
    Ab(i, A.cols()) = b[i];
  }
  auto piv = rref(Ab, F);
  if (!piv.empty() && piv.back() == A.cols()) throw MathError("inconsistent linear system");
  std::vector<u32> x(A.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = Ab(static_cast<int>(i), A.cols());
  return x;
}

LinearSolution solve_linear(const Mat& A, SolveMode mode, const PrimeField& F, const std::vector<u32>& rhs) {
  LinearSolution s;
  s.kernel = kernel(A, F);
  if (mode == SolveMode::Solve) s.particular = solve(A, rhs, F);
  return s;
}

u32 det(Mat A, const PrimeField& F) {
  if (A.rows() != A.cols()) throw MathError("det of non-square matrix");
  int n = A.rows();
  u32 d = 1;
  const u64 p = F.p();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (A(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) return 0;
    if (sel != c) {
      std::swap_ranges(A.row(sel), A.row(sel) + n, A.row(c));
      d = F.neg(d);
    }
    d = F.mul(d, A(c, c));
    u32 inv = F.inv(A(c, c));
    for (int i = c + 1; i < n; ++i) {
      u32 f = F.mul(A(i, c), inv);
      if (f) axpy(A.row(i), A.row(c), f, c, n, p);
    }
  }
  return d;
}

std::optional<Mat> inverse(const Mat& A, const PrimeField& F) {
  if (A.rows() != A.cols()) throw MathError("inverse of non-square matrix");
  int n = A.rows();
  Mat M(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = 1;
  }
  auto piv = rref(M, F);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = M(i, n + j);
  return R;
}

std::vector<u32> charpoly(const Mat& A0, const PrimeField& F) {
  int n = A0.rows();
  if (n != A0.cols()) throw MathError("charpoly of non-square matrix");
  Mat H = A0;
  // reduce to upper Hessenberg form by similarity
  for (int m = 1; m < n - 1; ++m) {
    int sel = -1;
    for (int i = m; i < n; ++i)
      if (H(i, m - 1)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != m) {
      for (int j = 0; j < n; ++j) std::swap(H(sel, j), H(m, j));
      for (int i = 0; i < n; ++i) std::swap(H(i, sel), H(i, m));
    }
    u32 inv = F.inv(H(m, m - 1));
    for (int i = m + 1; i < n; ++i) {
      u32 u = F.mul(H(i, m - 1), inv);
      if (!u) continue;
      for (int j = 0; j < n; ++j) H(i, j) = F.sub(H(i, j), F.mul(u, H(m, j)));
      for (int k = 0; k < n; ++k) H(k, m) = F.add(H(k, m), F.mul(u, H(k, i)));
    }
  }
  // recurrence on leading principal minors
  std::vector<std::vector<u32>> P(n + 1);
  P[0] = {1};
  for (int k = 1; k <= n; ++k) {
    // P_k = (x - h_kk) P_{k-1} - sum_{i<k} h_ik * prod_{j=i+1}^{k} h_{j,j-1} * P_{i-1}
    std::vector<u32> r(k + 1, 0);
    const auto& prev = P[k - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      r[i + 1] = F.add(r[i + 1], prev[i]);
      r[i] = F.sub(r[i], F.mul(H(k - 1, k - 1), prev[i]));
    }
    u32 t = 1;
    for (int i = k - 1; i >= 1; --i) {
      t = F.mul(t, H(i, i - 1));
      if (!t) break;
      u32 c = F.mul(t, H(i - 1, k - 1));
      const auto& q = P[i - 1];
      for (std::size_t j = 0; j < q.size(); ++j) r[j] = F.sub(r[j], F.mul(c, q[j]));
    }
    P[k] = std::move(r);
  }
  return P[n];
}

Mat row_basis(Mat A, const PrimeField& F) {
  auto piv = rref(A, F);
  Mat B(0, A.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) B.append_row(A.row_vec(static_cast<int>(i)));
  if (B.rows() == 0) B = Mat(0, A.cols());
  return B;
}

}  // namespace hsf
