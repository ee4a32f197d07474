#include "focklab/linops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace focklab {

Operator::Operator(Matrix m, int h_, FockPtr f)
    : mat(std::move(m)), h(h_), fock(std::move(f)) {
  if (!fock) throw Error(ErrorKind::InvalidParameter, "operator without basis");
  const int n = fock->size() * h;
  if (mat.rows() != n || mat.cols() != n)
    throw Error(ErrorKind::InvalidParameter, "operator shape inconsistent with h*D");
  if (!mat.allFinite())
    throw Error(ErrorKind::InvalidParameter, "operator has non-finite entries");
}

Eigen::Block<Matrix> Operator::block(int mu, int nu) {
  return mat.block(mu * h, nu * h, h, h);
}

Eigen::Block<const Matrix> Operator::block(int mu, int nu) const {
  return mat.block(mu * h, nu * h, h, h);
}

Operator zero_operator(const FockPtr& fock, int h) {
  return Operator(Matrix::Zero(fock->size() * h, fock->size() * h), h, fock);
}

Operator identity_operator(const FockPtr& fock, int h) {
  return Operator(Matrix::Identity(fock->size() * h, fock->size() * h), h, fock);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

Matrix block_entry(const Operator& T, const Word& mu, const Word& nu) {
  return T.block(T.fock->index(mu), T.fock->index(nu));
}

Matrix block_entry(const Operator& T, const MultiIndex& mu, const MultiIndex& nu) {
  return T.block(T.fock->index(mu), T.fock->index(nu));
}

Operator graded_projection(const FockPtr& fock, int h, int k) {
  if (k < 0 || k > fock->max_degree())
    throw Error(ErrorKind::InvalidParameter, "graded level out of range");
  Operator P = zero_operator(fock, h);
  for (int i = 0; i < fock->size(); ++i)
    if (fock->degree(i) == k) P.block(i, i) = Matrix::Identity(h, h);
  return P;
}

Operator projection_up_to(const FockPtr& fock, int h, int k) {
  Operator P = zero_operator(fock, h);
  for (int i = 0; i < fock->size(); ++i)
    if (fock->degree(i) <= k) P.block(i, i) = Matrix::Identity(h, h);
  return P;
}

Matrix compress(const Operator& T, int k) {
  const Matrix P = projection_up_to(T.fock, T.h, k).mat;
  return P * T.mat * P;
}

int SpanBasis::dim(double tol) const {
  if (mats.empty()) return 0;
  Matrix stacked(static_cast<Eigen::Index>(mats.size()), mats[0].size());
  for (size_t i = 0; i < mats.size(); ++i)
    stacked.row(static_cast<Eigen::Index>(i)) = vec(mats[i]).transpose();
  auto sv = stacked.jacobiSvd().singularValues();
  if (sv.size() == 0) return 0;
  const double cut = tol * std::max(sv(0), 1e-300);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

Matrix SpanBasis::orthonormal_columns(double tol) const {
  if (mats.empty()) return Matrix(0, 0);
  Matrix cols(mats[0].size(), static_cast<Eigen::Index>(mats.size()));
  for (size_t i = 0; i < mats.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = vec(mats[i]);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(sv.size() ? sv(0) : 0.0, 1e-300);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

double SpanBasis::residual_of(const Matrix& x, double tol) const {
  const Vector v = vec(x);
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  if (mats.empty()) return 1.0;
  const Matrix Q = orthonormal_columns(tol);
  return (v - Q * (Q.adjoint() * v)).norm() / nv;
}

bool SpanBasis::contains(const Matrix& x, double tol) const {
  return residual_of(x) <= tol;
}

SpanComparison compare_spans(const SpanBasis& a, const SpanBasis& b, double tol) {
  SpanComparison cmp{SpanOrder::Incomparable, 0.0, 0.0};
  const Matrix Qa = a.orthonormal_columns();
  const Matrix Qb = b.orthonormal_columns();
  auto worst = [](const SpanBasis& from, const Matrix& onto) {
    double w = 0.0;
    for (const auto& m : from.mats) {
      const Vector v = vec(m);
      const double nv = v.norm();
      if (nv == 0.0) continue;
      const Vector r = onto.size() ? Vector(v - onto * (onto.adjoint() * v)) : v;
      w = std::max(w, r.norm() / nv);
    }
    return w;
  };
  cmp.residual_a_in_b = worst(a, Qb);
  cmp.residual_b_in_a = worst(b, Qa);
  const bool ab = cmp.residual_a_in_b <= tol;
  const bool ba = cmp.residual_b_in_a <= tol;
  cmp.order = ab ? (ba ? SpanOrder::Equal : SpanOrder::FirstInSecond)
                 : (ba ? SpanOrder::SecondInFirst : SpanOrder::Incomparable);
  return cmp;
}

Matrix nullspace(const Matrix& M, double tol) {
  const Eigen::Index n = M.cols();
  if (M.rows() == 0 || M.size() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(sv.size() ? sv(0) : 0.0, 1.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

Matrix nullspace_of_gram(const Matrix& H, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const auto& ev = es.eigenvalues();  // ascending
  const Eigen::Index n = H.cols();
  const double top = ev.size() ? std::sqrt(std::max(ev(ev.size() - 1), 0.0)) : 0.0;
  const double cut = tol * std::max(top, 1.0);
  Eigen::Index k = 0;
  while (k < n && std::sqrt(std::max(ev(k), 0.0)) <= cut) ++k;
  return es.eigenvectors().leftCols(k);
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw Error(ErrorKind::InvalidParameter, "unvec size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

double Gaussian::real() {
  // Box-Muller on 53-bit uniforms; fixed algorithm keeps seeded runs
  // reproducible across standard library implementations.
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = (eng_() >> 11) * 0x1.0p-53;
  } while (u1 <= 0.0);
  const double u2 = (eng_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Complex Gaussian::complex_normal() {
  const double re = real();
  const double im = real();
  return Complex(re, im) / std::sqrt(2.0);
}

Matrix Gaussian::matrix(int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Vector Gaussian::vector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

std::uint64_t Gaussian::uniform_index(std::uint64_t bound) {
  return bound ? eng_() % bound : 0;
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& tag) {
  // FNV-1a over the tag, mixed with the base seed
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : tag) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash ^ (base * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
}

}  // namespace focklab
