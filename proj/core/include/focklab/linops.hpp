#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "focklab/fock.hpp"

namespace focklab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense operator on H (x) Fock.  The Fock index is the slow (outer) index:
// the vector xi (x) e_w lives at rows [index(w)*h, index(w)*h + h), so every
// basis label owns a contiguous h x h block.
struct Operator {
  Matrix mat;
  int h = 1;
  FockPtr fock;

  Operator() = default;
  Operator(Matrix m, int h_, FockPtr f);

  int dim() const { return static_cast<int>(mat.rows()); }

  Eigen::Block<Matrix> block(int mu, int nu);
  Eigen::Block<const Matrix> block(int mu, int nu) const;
};

Operator zero_operator(const FockPtr& fock, int h);
Operator identity_operator(const FockPtr& fock, int h);

// standard Kronecker product (first factor is the slow index)
Matrix kron(const Matrix& a, const Matrix& b);

double op_norm(const Matrix& m);  // largest singular value

// (mu, nu) block of T in the basis-block layout
Matrix block_entry(const Operator& T, const Word& mu, const Word& nu);
Matrix block_entry(const Operator& T, const MultiIndex& mu, const MultiIndex& nu);

// orthogonal projection onto H (x) span{e_w : |w| = k}
Operator graded_projection(const FockPtr& fock, int h, int k);
// projection onto degrees <= k; k < 0 yields the zero projection
Operator projection_up_to(const FockPtr& fock, int h, int k);
// two-sided compression P_{<=k} T P_{<=k}
Matrix compress(const Operator& T, int k);

// A finite spanning family of matrices of a common shape.
struct SpanBasis {
  std::vector<Matrix> mats;

  int size() const { return static_cast<int>(mats.size()); }
  bool empty() const { return mats.empty(); }
  // numerical dimension of the linear span
  int dim(double tol = 1e-10) const;
  // orthonormal columns spanning the same space (vectorized, column-major)
  Matrix orthonormal_columns(double tol = 1e-10) const;
  // distance of vec(x) from the span, relative to ||x||
  double residual_of(const Matrix& x, double tol = 1e-10) const;
  bool contains(const Matrix& x, double tol) const;
};

enum class SpanOrder { Equal, FirstInSecond, SecondInFirst, Incomparable };

struct SpanComparison {
  SpanOrder order;
  double residual_a_in_b = 0.0;  // worst projection residual of A onto span(B)
  double residual_b_in_a = 0.0;
  double max_residual() const { return std::max(residual_a_in_b, residual_b_in_a); }
};

SpanComparison compare_spans(const SpanBasis& a, const SpanBasis& b, double tol);

// Orthonormal basis of {x : ||Mx|| <= tol * max(||M||,1) * ||x||}, singular
// values below the threshold counting as zero.  Columns of the result span
// the nullspace; empty (n x 0) matrix when trivial.
Matrix nullspace(const Matrix& M, double tol = 1e-8);

// Nullspace basis of a stack of linear maps given as a positive semidefinite
// Gram accumulation H = sum_i M_i^* M_i (used when stacking is too large).
Matrix nullspace_of_gram(const Matrix& H, double tol = 1e-8);

// vec/unvec with column-major layout; vec(A X B) = (B^T kron A) vec(X)
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int rows, int cols);

// Deterministic complex Gaussian sampling (Box-Muller over a mt19937_64
// stream), reproducible across platforms.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : eng_(seed) {}
  double real();              // standard normal
  Complex complex_normal();   // E|z|^2 = 1
  Matrix matrix(int rows, int cols);
  Vector vector(int n);
  std::uint64_t uniform_index(std::uint64_t bound);  // in [0, bound)

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t derive_seed(std::uint64_t base, const std::string& tag);

}  // namespace focklab
