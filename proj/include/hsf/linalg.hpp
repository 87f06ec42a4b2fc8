#pragma once

#include <optional>
#include <vector>

#include "hsf/field.hpp"

namespace hsf {

// Dense row-major matrix over F_p.
class Mat {
 public:
  Mat() = default;
  Mat(int r, int c) : r_(r), c_(c), a_(static_cast<std::size_t>(r) * c, 0) {}
  static Mat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  u32& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  u32 operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  u32* row(int i) { return a_.data() + static_cast<std::size_t>(i) * c_; }
  const u32* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * c_; }
  std::vector<u32> row_vec(int i) const { return {row(i), row(i) + c_}; }
  void append_row(const std::vector<u32>& v);
  Mat transpose() const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

 private:
  int r_ = 0, c_ = 0;
  std::vector<u32> a_;
};

Mat mat_mul(const Mat& A, const Mat& B, const PrimeField& F);
std::vector<u32> mat_vec(const Mat& A, const std::vector<u32>& v, const PrimeField& F);

// In-place reduced row echelon form; returns pivot columns. Zero rows are
// moved to the bottom.
std::vector<int> rref(Mat& A, const PrimeField& F);
int rank(Mat A, const PrimeField& F);

enum class SolveMode { Kernel, Solve };

// Kernel basis as rows, one per free column, each with a 1 in its free
// column and 0 in the other free columns.
Mat kernel(const Mat& A, const PrimeField& F);
// Some solution x of A x = b; throws MathError when inconsistent.
std::vector<u32> solve(const Mat& A, const std::vector<u32>& b, const PrimeField& F);

struct LinearSolution {
  Mat kernel;
  std::vector<u32> particular;  // empty in kernel mode
};
LinearSolution solve_linear(const Mat& A, SolveMode mode, const PrimeField& F,
                            const std::vector<u32>& rhs = {});

u32 det(Mat A, const PrimeField& F);
std::optional<Mat> inverse(const Mat& A, const PrimeField& F);
// characteristic polynomial det(xI - A), coefficients low to high, monic
std::vector<u32> charpoly(const Mat& A, const PrimeField& F);

// row space basis (rref rows, zero rows dropped)
Mat row_basis(Mat A, const PrimeField& F);

}  // namespace hsf
