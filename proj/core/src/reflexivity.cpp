#include "focklab/reflexivity.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace focklab {

Matrix ref_constraints(const SpanBasis& a, const Vector& xi, double tol) {
  const int n = static_cast<int>(xi.size());
  if (xi.norm() == 0.0)
    throw Error(ErrorKind::InvalidParameter, "constraint vector must be nonzero");
  Matrix cols(n, a.size());
  for (int k = 0; k < a.size(); ++k) cols.col(k) = a.mats[k] * xi;
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(sv(0), 1e-300)) ++r;
  if (r == n) return Matrix(0, static_cast<Eigen::Index>(n) * n);
  const Matrix Q = svd.matrixU().leftCols(r);
  const Matrix Pperp = Matrix::Identity(n, n) - Q * Q.adjoint();
  // vec(T xi) = (xi^T kron I) vec(T); project onto (A xi)^perp
  return kron(xi.transpose(), Pperp);
}

Vector sample_constraint_vector(int n, Gaussian& g) {
  std::vector<int> support;
  while (support.empty()) {
    const int size = 1 + static_cast<int>(g.uniform_index(n));
    support.clear();
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int k = 0; k < size; ++k) {
      const int pick = static_cast<int>(g.uniform_index(pool.size()));
      support.push_back(pool[pick]);
      pool.erase(pool.begin() + pick);
    }
  }
  Vector xi = Vector::Zero(n);
  for (int idx : support) xi(idx) = g.complex_normal();
  return xi;
}

SampledRef sampled_ref(const SpanBasis& a, int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw Error(ErrorKind::InvalidParameter, "sampled_ref needs trials >= 1");
  if (a.empty()) throw Error(ErrorKind::InvalidAlgebra, "empty algebra basis");
  const int n = static_cast<int>(a.mats[0].rows());
  Gaussian g(seed);
  Matrix basis = Matrix::Identity(static_cast<Eigen::Index>(n) * n,
                                  static_cast<Eigen::Index>(n) * n);
  SampledRef out;
  for (int t = 0; t < trials; ++t) {
    const Vector xi = sample_constraint_vector(n, g);
    const Matrix C = ref_constraints(a, xi);
    if (C.rows() > 0 && basis.cols() > 0) {
      const Matrix M = C * basis;
      basis = basis * nullspace(M, tol);
    }
    out.dim_history.push_back(static_cast<int>(basis.cols()));
  }
  const int window = std::max(1, trials / 4);
  out.stabilized = true;
  for (int t = trials - window; t < trials; ++t)
    out.stabilized = out.stabilized && out.dim_history[t] == out.dim_history.back();
  for (Eigen::Index k = 0; k < basis.cols(); ++k)
    out.cover.mats.push_back(unvec(basis.col(k), n, n));
  return out;
}

CertifyResult certify(const SpanBasis& a, int trials, std::uint64_t seed, double tol) {
  const int n = static_cast<int>(a.mats.empty() ? 0 : a.mats[0].rows());
  if (n == 0 || a.residual_of(Matrix::Identity(n, n)) > 1e-10)
    throw Error(ErrorKind::InvalidAlgebra, "certify needs a unital algebra basis");
  CertifyResult res;
  auto sampled = sampled_ref(a, trials, seed, tol);
  res.cover = std::move(sampled.cover);
  res.stabilized = sampled.stabilized;
  res.cover_dim = res.cover.dim();
  res.algebra_dim = a.dim();
  if (res.stabilized && res.cover_dim == res.algebra_dim) {
    // span(A) is always inside the cover, so equal dimensions force equality
    res.verdict = CertifyVerdict::CertifiedReflexive;
  }
  return res;
}

double witness_residual(const SpanBasis& a, const Matrix& x, int count,
                        std::uint64_t seed) {
  const int n = static_cast<int>(x.rows());
  Gaussian g(seed);
  const Vector v = vec(x);
  double worst = 0.0;
  for (int t = 0; t < count; ++t) {
    const Vector xi = sample_constraint_vector(n, g);
    const Matrix C = ref_constraints(a, xi);
    if (C.rows() == 0) continue;
    worst = std::max(worst, (C * v).norm() / std::max(xi.norm() * v.norm(), 1e-300));
  }
  return worst;
}

RefNecessaryReport ref_necessary_semicrossed(const DynSystem& sys, const Operator& T,
                                             double tol, int trials,
                                             std::uint64_t seed) {
  RefNecessaryReport rep;
  const auto tri = is_lower_triangular(T, TriangularFlavor::Left, tol);
  rep.triangular = tri.triangular;
  rep.triangular_residual = tri.worst_norm;
  if (!rep.triangular) {
    rep.witness = tri.worst_label();
    return rep;
  }
  const auto cover = sampled_ref(sys.algebra(), trials, seed, tol);
  rep.blocks_in_cover = true;
  const auto& fock = sys.fock();
  for (int i = 0; i < fock->size(); ++i)
    for (int j = 0; j < fock->size(); ++j) {
      if (!leq_left(fock->word(j), fock->word(i))) continue;
      const Matrix blk = T.block(i, j);
      if (blk.norm() <= tol) continue;
      const double r = cover.cover.residual_of(blk) * blk.norm();
      rep.block_residual = std::max(rep.block_residual, r);
      if (r > tol && rep.blocks_in_cover) {
        rep.blocks_in_cover = false;
        rep.witness = "(" + fock->word(i).str() + ", " + fock->word(j).str() + ")";
      }
    }
  return rep;
}

}  // namespace focklab
