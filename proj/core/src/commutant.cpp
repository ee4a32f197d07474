#include "focklab/commutant.hpp"

#include <cmath>

namespace focklab {

namespace {

constexpr int kMaxSide = 130;

SpanBasis nullspace_to_matrices(const Matrix& N, int n) {
  SpanBasis out;
  for (Eigen::Index k = 0; k < N.cols(); ++k)
    out.mats.push_back(unvec(N.col(k), n, n));
  return out;
}

SpanBasis solve_constraints(const std::vector<Matrix>& maps, int n, double tol) {
  // maps are n^2 x n^2 blocks of the stacked constraint matrix
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  const double stacked_entries = static_cast<double>(maps.size()) * nn * nn;
  if (stacked_entries <= 4.0e7) {
    Matrix M(static_cast<Eigen::Index>(maps.size()) * nn, nn);
    for (size_t i = 0; i < maps.size(); ++i)
      M.middleRows(static_cast<Eigen::Index>(i) * nn, nn) = maps[i];
    return nullspace_to_matrices(nullspace(M, tol), n);
  }
  Matrix H = Matrix::Zero(nn, nn);
  for (const auto& m : maps) H += m.adjoint() * m;
  return nullspace_to_matrices(nullspace_of_gram(H, tol), n);
}

}  // namespace

SpanBasis matrix_commutant(const std::vector<Matrix>& ops, double tol) {
  if (ops.empty()) throw Error(ErrorKind::InvalidParameter, "commutant of empty family");
  const int n = static_cast<int>(ops[0].rows());
  if (n > kMaxSide)
    throw Error(ErrorKind::InvalidParameter, "commutant instance exceeds the size cap");
  const Matrix I = Matrix::Identity(n, n);
  std::vector<Matrix> maps;
  for (const auto& T : ops) {
    if (T.rows() != n || T.cols() != n)
      throw Error(ErrorKind::InvalidParameter, "commutant family dimension mismatch");
    maps.push_back(kron(T.transpose(), I) - kron(I, T));  // vec(XT - TX)
  }
  return solve_constraints(maps, n, tol);
}

SpanBasis graded_commutant(const FockPtr& fock, int h,
                           const std::vector<Matrix>& ops, int guard, double tol) {
  if (guard < 0 || guard > fock->max_degree())
    throw Error(ErrorKind::InvalidParameter, "guard band out of range");
  const int n = fock->size() * h;
  if (n > kMaxSide)
    throw Error(ErrorKind::InvalidParameter, "commutant instance exceeds the size cap");
  const Matrix P = projection_up_to(fock, h, fock->max_degree() - guard).mat;
  std::vector<Matrix> maps;
  for (const auto& T : ops)
    maps.push_back(kron((T * P).transpose(), P) - kron(P.transpose(), P * T));
  return solve_constraints(maps, n, tol);
}

SpanBasis bicommutant(const SpanBasis& a, double tol) {
  const SpanBasis first = matrix_commutant(a.mats, tol);
  if (first.empty()) {
    // commutant is never empty (it contains I); guard anyway
    const int n = static_cast<int>(a.mats[0].rows());
    return matrix_commutant({Matrix::Identity(n, n)}, tol);
  }
  return matrix_commutant(first.mats, tol);
}

Thm41Report verify_thm_4_1(const DynSystem& sys, double tol, bool compare_span) {
  Thm41Report rep;
  const auto& fock = sys.fock();
  const int h = sys.h();
  const int L = fock->max_degree();
  const SpanBasis a_prime = matrix_commutant(sys.algebra().mats);
  const SpanBasis a_second = matrix_commutant(a_prime.mats);
  const auto gens = predicted_commutant_generators(sys, a_prime);

  struct Tagged {
    Matrix mat;
    int degree;
  };
  std::vector<Tagged> sc_gens_left, sc_gens_right, commutant_left, commutant_right;

  if (sys.kind() == SemigroupKind::Free) {
    std::vector<Word> labels{Word{}};
    for (int i = 1; i <= sys.d(); ++i) labels.push_back(Word{{i}});
    for (const auto& mu : labels) {
      for (const auto& a : sys.algebra().mats) {
        sc_gens_left.push_back({sc_left(sys, mu, a).mat, mu.length()});
        sc_gens_right.push_back({sc_right(sys, mu, a).mat, mu.length()});
      }
      // the bicommutant halves of the theorem pair A'' generators with the
      // twisted products
      for (const auto& z : a_second.mats) {
        sc_gens_left.push_back({sc_left(sys, mu, z).mat, mu.length()});
        sc_gens_right.push_back({sc_right(sys, mu, z).mat, mu.length()});
      }
    }
    for (const auto& g : gens.diagonal) {
      commutant_right.push_back({g.mat, 0});
      commutant_left.push_back({g.mat, 0});
    }
    for (const auto& g : gens.right_twisted) commutant_right.push_back({g.mat, 1});
    for (const auto& g : gens.left_twisted) commutant_left.push_back({g.mat, 1});
  } else {
    std::vector<MultiIndex> labels;
    MultiIndex zero;
    zero.coords.assign(sys.d(), 0);
    labels.push_back(zero);
    for (int i = 1; i <= sys.d(); ++i) {
      MultiIndex e = zero;
      e.coords[i - 1] = 1;
      labels.push_back(e);
    }
    for (const auto& m : labels)
      for (const auto& a : sys.algebra().mats)
        sc_gens_left.push_back({sc_abelian(sys, m, a).mat, m.degree()});
    for (const auto& g : gens.diagonal) commutant_right.push_back({g.mat, 0});
    for (const auto& g : gens.right_twisted) commutant_right.push_back({g.mat, 1});
  }

  const Matrix Pwin = sys.window_column_projection(fock, 1);
  auto check_pairing = [&](const std::vector<Tagged>& xs, const std::vector<Tagged>& ys) {
    for (const auto& x : xs)
      for (const auto& y : ys) {
        const int guard = std::min(x.degree + y.degree, L);
        const Matrix P = projection_up_to(fock, h, L - guard).mat;
        const Matrix C = x.mat * y.mat - y.mat * x.mat;
        rep.identity_residual =
            std::max(rep.identity_residual, op_norm(P * C * P * Pwin));
      }
  };
  check_pairing(commutant_right, sc_gens_left);
  if (sys.kind() == SemigroupKind::Free) check_pairing(commutant_left, sc_gens_right);

  rep.spans_compared = false;
  bool exact = true;
  for (const auto& r : sys.rows())
    exact = exact && r.multiplicity() == 1 && !r.window.has_value();
  if (compare_span && exact && fock->size() * h <= 60 && L >= 1) {
    std::vector<Matrix> gen_mats;
    for (const auto& g : sc_gens_left) gen_mats.push_back(g.mat);
    const SpanBasis solved = graded_commutant(fock, h, gen_mats, 1, tol);
    const auto monomials = predicted_commutant_monomials(sys, a_prime, L, true);
    const Matrix P = projection_up_to(fock, h, L - 1).mat;
    SpanBasis solved_c, predicted_c;
    for (const auto& X : solved.mats) solved_c.mats.push_back(P * X * P);
    for (const auto& M : monomials) predicted_c.mats.push_back(P * M.mat * P);
    const auto cmp = compare_spans(solved_c, predicted_c, 1e-8);
    rep.spans_compared = true;
    rep.span_order = cmp.order;
    rep.span_residual = cmp.max_residual();
    rep.solved_dimension = solved_c.dim();
    rep.predicted_dimension = predicted_c.dim();
  }
  return rep;
}

}  // namespace focklab
