#include "focklab/semicrossed.hpp"

#include <algorithm>
#include <cmath>

namespace focklab {

Operator sc_left(const DynSystem& sys, const Word& mu, const Matrix& a) {
  if (sys.kind() != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter, "sc_left needs a free system");
  Operator T = rep_pibar(sys, a);
  T.mat = creation_left(sys.fock(), sys.h(), mu).mat * T.mat;
  return T;
}

Operator sc_right(const DynSystem& sys, const Word& mu, const Matrix& a) {
  if (sys.kind() != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter, "sc_right needs a free system");
  Operator T = rep_pi(sys, a);
  T.mat = creation_right(sys.fock(), sys.h(), mu).mat * T.mat;
  return T;
}

Operator sc_abelian(const DynSystem& sys, const MultiIndex& n, const Matrix& a) {
  if (sys.kind() != SemigroupKind::Abelian)
    throw Error(ErrorKind::InvalidParameter, "sc_abelian needs an abelian system");
  Operator T = rep_pi(sys, a);
  T.mat = creation_abelian(sys.fock(), sys.h(), n).mat * T.mat;
  return T;
}

namespace {

enum class Side { Left, Right, Abelian };

MembershipResult membership_impl(const DynSystem& sys, const Operator& T,
                                 double tol, Side side) {
  MembershipResult res;
  const auto& fock = sys.fock();
  const TriangularFlavor flavor = side == Side::Left ? TriangularFlavor::Left
                                  : side == Side::Right ? TriangularFlavor::Right
                                                        : TriangularFlavor::Abelian;
  auto tri = is_lower_triangular(T, flavor, tol);
  if (!tri.triangular) {
    res.rejection = "not-lower-triangular";
    res.witness = tri.worst_label();
    res.worst_residual = tri.worst_norm;
    return res;
  }
  const int unit = 0;  // basis position of the unit label
  for (int g = 0; g < fock->size(); ++g) {
    // coefficient read off against the vacuum column
    const Matrix a_g = T.block(g, unit);
    const double rel = sys.algebra().residual_of(a_g);
    res.worst_residual = std::max(res.worst_residual, a_g.norm() * rel);
    if (a_g.norm() * rel > tol) {
      res.rejection = "coefficient-not-in-algebra";
      res.witness = side == Side::Abelian ? fock->multi(g).str() : fock->word(g).str();
      return res;
    }
    if (a_g.norm() > tol) res.coefficients[g] = a_g;
    for (int j = 0; j < fock->size(); ++j) {
      int i = -1;
      Matrix expected;
      if (side == Side::Left) {
        // T_{mu w, w} = alpha_{reverse(w)}(a_mu) with mu = word(g)
        const Word& w = fock->word(j);
        i = fock->find(concat(fock->word(g), w));
        if (i < 0) continue;
        expected = alpha(sys, reverse(w), a_g);
      } else if (side == Side::Right) {
        // T_{w zeta, w} = alpha_w(a_zeta) with zeta = word(g)
        const Word& w = fock->word(j);
        i = fock->find(concat(w, fock->word(g)));
        if (i < 0) continue;
        expected = alpha(sys, w, a_g);
      } else {
        const MultiIndex& w = fock->multi(j);
        i = fock->find(add(fock->multi(g), w));
        if (i < 0) continue;
        expected = alpha(sys, w, a_g);
      }
      if (j == unit) continue;
      const double diff = (T.block(i, j) - expected).norm();
      res.worst_residual = std::max(res.worst_residual, diff);
      if (diff > tol) {
        res.rejection = "block-inconsistent-with-action";
        res.witness = side == Side::Abelian
                          ? "(" + fock->multi(i).str() + ", " + fock->multi(j).str() + ")"
                          : "(" + fock->word(i).str() + ", " + fock->word(j).str() + ")";
        return res;
      }
    }
  }
  res.verdict = MembershipVerdict::Member;
  return res;
}

}  // namespace

MembershipResult membership_left(const DynSystem& sys, const Operator& T, double tol) {
  return membership_impl(sys, T, tol, Side::Left);
}

MembershipResult membership_right(const DynSystem& sys, const Operator& T, double tol) {
  return membership_impl(sys, T, tol, Side::Right);
}

MembershipResult membership_abelian(const DynSystem& sys, const Operator& T, double tol) {
  return membership_impl(sys, T, tol, Side::Abelian);
}

double DecomposeReport::max_residual() const {
  return std::max({creation_residual, rep_residual, unitary_residual});
}

namespace {

// nested one-variable construction over axes 1..k of an abelian system,
// acting on H (x) C^{cap+1} (x) ... (x) C^{cap+1} (axis k slowest)
struct Nested {
  Matrix shift;  // one-axis truncated shift

  Matrix axis_creation(int h, int cap, int k, int axis) const {
    // I (x)^{axis-1} shift (x) I^{k-axis}, counted with axis 1 innermost
    const int D1 = cap + 1;
    Matrix M = Matrix::Identity(h, h);
    for (int a = 1; a <= k; ++a)
      M = kron(a == axis ? shift : Matrix::Identity(D1, D1), M);
    return M;
  }
};

}  // namespace

DecomposeReport decompose_abelian(const DynSystem& sys, int cap, double tol) {
  (void)tol;
  if (sys.kind() != SemigroupKind::Abelian || sys.d() < 2)
    throw Error(ErrorKind::InvalidParameter, "decompose needs an abelian system with d >= 2");
  const int d = sys.d();
  const int h = sys.h();
  const int D1 = cap + 1;
  const auto rect = TruncatedFock::abelian_rect(d, cap);
  const DynSystem rsys = sys.with_fock(rect);
  const int Dk = rect->size();
  long tensor_dim = h;
  for (int a = 0; a < d; ++a) tensor_dim *= D1;

  // basis bijection e_{(n_1..n_d)} (x) H  ->  e_{n_d} (x) ... (x) e_{n_1} (x) H
  Matrix P = Matrix::Zero(static_cast<Eigen::Index>(Dk) * h, tensor_dim);
  for (int i = 0; i < Dk; ++i) {
    const auto& c = rect->multi(i).coords;
    long flat = 0;
    for (int a = d - 1; a >= 0; --a) flat = flat * D1 + c[a];
    P.block(static_cast<Eigen::Index>(i) * h, flat * h, h, h) = Matrix::Identity(h, h);
  }
  DecomposeReport rep;
  rep.unitary_residual = op_norm(P * P.adjoint() - Matrix::Identity(Dk * h, Dk * h));

  Matrix sh = Matrix::Zero(D1, D1);
  for (int k = 0; k + 1 < D1; ++k) sh(k + 1, k) = 1.0;
  Nested nested{sh};

  // nested representation: axis-1 diag of alpha_1 powers, then iterated
  // hat extensions pi_k(X) = diag_m (alpha_k (x) id)^m (X)
  auto nested_rep = [&](const Matrix& a) {
    Matrix X = a;
    for (int axis = 1; axis <= d; ++axis) {
      const auto& row = sys.row(axis);
      const Eigen::Index n1 = X.rows();
      const Eigen::Index pad = n1 / h;
      Matrix T = Matrix::Zero(n1 * D1, n1 * D1);
      Matrix Y = X;
      for (int m = 0; m < D1; ++m) {
        T.block(m * n1, m * n1, n1, n1) = Y;
        Matrix next = Matrix::Zero(n1, n1);
        for (size_t j = 0; j < row.u.size(); ++j)
          next += kron(Matrix::Identity(pad, pad), row.u[j]) * Y *
                  kron(Matrix::Identity(pad, pad), row.v[j]);
        Y = next;
      }
      X = T;
    }
    return X;
  };
  // nested creation for axis i: the axis shift, pushed through the outer
  // representations (the hat actions fix the creations)
  auto nested_creation = [&](int axis) {
    Matrix X = nested.axis_creation(h, cap, axis, axis);
    for (int outer = axis + 1; outer <= d; ++outer) {
      const Eigen::Index n1 = X.rows();
      Matrix T = Matrix::Zero(n1 * D1, n1 * D1);
      for (int m = 0; m < D1; ++m) T.block(m * n1, m * n1, n1, n1) = X;
      X = T;
    }
    return X;
  };

  for (int i = 1; i <= d; ++i) {
    MultiIndex e;
    e.coords.assign(d, 0);
    e.coords[i - 1] = 1;
    const Matrix conj = P.adjoint() * creation_abelian(rect, h, e).mat * P;
    rep.creation_residual =
        std::max(rep.creation_residual, op_norm(conj - nested_creation(i)));
  }
  for (const auto& a : sys.algebra().mats) {
    const Matrix conj = P.adjoint() * rep_pi(rsys, a).mat * P;
    rep.rep_residual = std::max(rep.rep_residual, op_norm(conj - nested_rep(a)));
  }
  return rep;
}

namespace {

Operator twisted_letter(const DynSystem& sys, int i, int j, bool right_version) {
  const auto& fock = sys.fock();
  const int h = sys.h();
  Operator T = zero_operator(fock, h);
  if (sys.kind() == SemigroupKind::Free) {
    for (int c = 0; c < fock->size(); ++c) {
      const Word& w = fock->word(c);
      const Word target = right_version ? concat(w, Word{{i}}) : concat(Word{{i}}, w);
      const int r = fock->find(target);
      if (r >= 0) T.block(r, c) = sys.row(i).u[j];
    }
  } else {
    MultiIndex e;
    e.coords.assign(sys.d(), 0);
    e.coords[i - 1] = 1;
    for (int c = 0; c < fock->size(); ++c) {
      const int r = fock->find(add(e, fock->multi(c)));
      if (r >= 0) T.block(r, c) = sys.row(i).u[j];
    }
  }
  return T;
}

}  // namespace

CommutantGenerators predicted_commutant_generators(const DynSystem& sys,
                                                   const SpanBasis& a_prime) {
  CommutantGenerators out;
  for (const auto& y : a_prime.mats) out.diagonal.push_back(rep_rho(sys, y));
  for (int i = 1; i <= sys.d(); ++i)
    for (int j = 0; j < sys.row(i).multiplicity(); ++j) {
      const Operator W = twisted_letter(sys, i, j, /*right_version=*/true);
      for (const auto& y : a_prime.mats) {
        Operator g = rep_rho(sys, y);
        g.mat = W.mat * g.mat;
        out.right_twisted.push_back(g);
      }
      if (sys.kind() == SemigroupKind::Free) {
        const Operator V = twisted_letter(sys, i, j, /*right_version=*/false);
        for (const auto& y : a_prime.mats) {
          Operator g = rep_rho(sys, y);
          g.mat = V.mat * g.mat;
          out.left_twisted.push_back(g);
        }
      }
    }
  return out;
}

std::vector<Operator> predicted_commutant_monomials(const DynSystem& sys,
                                                    const SpanBasis& a_prime,
                                                    int max_degree,
                                                    bool right_version) {
  std::vector<std::pair<int, int>> letters;
  for (int i = 1; i <= sys.d(); ++i)
    for (int j = 0; j < sys.row(i).multiplicity(); ++j) letters.emplace_back(i, j);
  std::vector<Matrix> letter_mats;
  for (auto [i, j] : letters)
    letter_mats.push_back(twisted_letter(sys, i, j, right_version).mat);

  std::vector<Operator> out;
  const Matrix I = Matrix::Identity(sys.fock()->size() * sys.h(), sys.fock()->size() * sys.h());
  std::vector<Matrix> frontier{I};
  for (int deg = 0; deg <= max_degree; ++deg) {
    for (const auto& M : frontier)
      for (const auto& y : a_prime.mats) {
        Operator g = rep_rho(sys, y);
        g.mat = M * g.mat;
        out.push_back(g);
      }
    if (deg == max_degree) break;
    std::vector<Matrix> next;
    for (const auto& M : frontier)
      for (const auto& lm : letter_mats) next.push_back(M * lm);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace focklab
