#include "focklab/similarity.hpp"

#include <cmath>

namespace focklab {

long capacity(const DynSystem& sys) {
  long out = sys.kind() == SemigroupKind::Free ? 0 : 1;
  for (const auto& r : sys.rows()) {
    if (sys.kind() == SemigroupKind::Free)
      out += r.multiplicity();
    else
      out *= r.multiplicity();
  }
  return out;
}

SimilarityPair build_U(const DynSystem& sys, int L) {
  if (sys.kind() != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter,
                "similarity is built for free systems; decompose abelian systems first");
  const int h = sys.h();
  SimilarityPair out;
  for (int i = 1; i <= sys.d(); ++i)
    for (int j = 0; j < sys.row(i).multiplicity(); ++j) out.letters.emplace_back(i, j);
  const int N = static_cast<int>(out.letters.size());
  out.fock_target = TruncatedFock::free(N, L);
  const auto fock_d = sys.fock()->max_degree() == L && sys.fock()->kind() == SemigroupKind::Free
                          ? sys.fock()
                          : TruncatedFock::free(sys.d(), L);
  const int DN = out.fock_target->size();
  const int DD = fock_d->size();
  out.U = Matrix::Zero(static_cast<Eigen::Index>(DD) * h, static_cast<Eigen::Index>(DN) * h);
  out.Uinv = Matrix::Zero(static_cast<Eigen::Index>(DN) * h, static_cast<Eigen::Index>(DD) * h);

  // U xi (x) e_{(mu_k,j_k)...(mu_1,j_1)} = u_{mu_1,j_1} ... u_{mu_k,j_k} xi (x) e_{mu_k...mu_1}
  for (int c = 0; c < DN; ++c) {
    const Word& wN = out.fock_target->word(c);
    Word proj;
    Matrix coef = Matrix::Identity(h, h);
    for (int letter : wN.letters) proj.letters.push_back(out.letters[letter - 1].first);
    for (auto it = wN.letters.rbegin(); it != wN.letters.rend(); ++it) {
      const auto [i, j] = out.letters[*it - 1];
      coef = coef * sys.row(i).u[j];
    }
    out.U.block(static_cast<Eigen::Index>(fock_d->index(proj)) * h,
                static_cast<Eigen::Index>(c) * h, h, h) += coef;
  }
  // Uinv xi (x) e_{mu_k...mu_1} =
  //   sum_branches v_{mu_k,j_k} ... v_{mu_1,j_1} xi (x) e_{(mu_k,j_k)...(mu_1,j_1)}
  for (int c = 0; c < DD; ++c) {
    const Word& wD = fock_d->word(c);
    const int k = wD.length();
    std::vector<int> branch(k, 0);
    while (true) {
      Word wN;
      Matrix coef = Matrix::Identity(h, h);
      for (int t = 0; t < k; ++t) {
        const int i = wD.letters[t];
        int offset = 0;
        for (int p = 1; p < i; ++p) offset += sys.row(p).multiplicity();
        wN.letters.push_back(offset + branch[t] + 1);
        coef = coef * sys.row(i).v[branch[t]];
      }
      out.Uinv.block(static_cast<Eigen::Index>(out.fock_target->index(wN)) * h,
                     static_cast<Eigen::Index>(c) * h, h, h) += coef;
      int t = k - 1;
      while (t >= 0 && branch[t] == sys.row(wD.letters[t]).multiplicity() - 1)
        branch[t--] = 0;
      if (t < 0) break;
      ++branch[t];
    }
  }
  return out;
}

double SimilarityReport::max_residual() const {
  double m = std::max({inverse_residual, intertwine_residual, creation_residual,
                       recovery_residual});
  if (adjoint_residual >= 0.0) m = std::max(m, adjoint_residual);
  return m;
}

SimilarityReport verify_similarity(const DynSystem& sys, int L, double tol) {
  (void)tol;
  const auto pair = build_U(sys, L);
  const DynSystem lsys =
      sys.fock()->max_degree() == L ? sys : sys.with_fock(TruncatedFock::free(sys.d(), L));
  const auto& fock_d = lsys.fock();
  const auto& fock_n = pair.fock_target;
  const int h = sys.h();
  const Eigen::Index nd = pair.U.rows();
  const Eigen::Index nn = pair.Uinv.rows();

  // per-degree window restrictions on the N-side columns
  auto win_cols = [&](int offset, bool constant_level) {
    Matrix P = Matrix::Zero(nn, nn);
    for (int i = 0; i < fock_n->size(); ++i) {
      const int level = constant_level ? offset : fock_n->degree(i) + offset;
      P.block(static_cast<Eigen::Index>(i) * h, static_cast<Eigen::Index>(i) * h, h, h) =
          lsys.window_projection(level);
    }
    return P;
  };
  const Matrix Pdeg = win_cols(0, false);   // W_k at degree k
  const Matrix P1 = win_cols(1, true);      // W_1 everywhere
  const Matrix P2 = win_cols(2, true);      // W_2 everywhere

  SimilarityReport rep;
  rep.k_bound = lsys.uniform_bound();
  rep.norm_U = op_norm(pair.U);
  rep.norm_Uinv = op_norm(pair.Uinv);
  rep.inverse_residual =
      std::max(op_norm(pair.U * pair.Uinv - Matrix::Identity(nd, nd)),
               op_norm((pair.Uinv * pair.U - Matrix::Identity(nn, nn)) * Pdeg));

  bool cuntz = true;
  for (const auto& r : lsys.rows())
    for (size_t j = 0; j < r.u.size() && cuntz; ++j)
      cuntz = (r.v[j] - r.u[j].adjoint()).norm() <= 1e-12;
  if (cuntz) rep.adjoint_residual = op_norm(pair.Uinv - pair.U.adjoint());

  // (a) pibar(x) U = U rho(x) over matrix units of B(H)
  auto rho_n = [&](const Matrix& x) {
    Matrix R = Matrix::Zero(nn, nn);
    for (int i = 0; i < fock_n->size(); ++i)
      R.block(static_cast<Eigen::Index>(i) * h, static_cast<Eigen::Index>(i) * h, h, h) = x;
    return R;
  };
  for (const auto& x : full_matrix_algebra(h).mats) {
    Matrix pib = Matrix::Zero(nd, nd);
    for (int i = 0; i < fock_d->size(); ++i)
      pib.block(static_cast<Eigen::Index>(i) * h, static_cast<Eigen::Index>(i) * h, h, h) =
          alpha(lsys, reverse(fock_d->word(i)), x);
    rep.intertwine_residual = std::max(
        rep.intertwine_residual, op_norm((pib * pair.U - pair.U * rho_n(x)) * Pdeg));
  }

  // (b) L_i U = U sum_j L_{(i,j)} rho(v_{i,j})
  // (c) Uinv L_i U rho(u_{i,j}) = L_{(i,j)}
  for (int i = 1; i <= lsys.d(); ++i) {
    const Matrix Li = creation_left(fock_d, h, Word{{i}}).mat;
    Matrix sum = Matrix::Zero(nn, nn);
    int offset = 0;
    for (int p = 1; p < i; ++p) offset += lsys.row(p).multiplicity();
    for (int j = 0; j < lsys.row(i).multiplicity(); ++j) {
      const Matrix Lij = creation_left(fock_n, h, Word{{offset + j + 1}}).mat;
      sum += Lij * rho_n(lsys.row(i).v[j]);
      rep.recovery_residual = std::max(
          rep.recovery_residual,
          op_norm((pair.Uinv * Li * pair.U * rho_n(lsys.row(i).u[j]) - Lij) * P2));
    }
    rep.creation_residual =
        std::max(rep.creation_residual, op_norm((Li * pair.U - pair.U * sum) * P1));
  }
  return rep;
}

}  // namespace focklab
