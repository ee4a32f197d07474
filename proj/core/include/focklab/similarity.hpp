#pragma once

#include "focklab/semicrossed.hpp"

namespace focklab {

// capacity of the system: sum of multiplicities (free), product (abelian)
long capacity(const DynSystem& sys);

// The degree-preserving similarity between H (x) l^2(F_+^N)_{<=L} and
// H (x) l^2(F_+^d)_{<=L} built from the row entries, together with its
// declared inverse.  Letters of F_+^N are ordered (1,1)..(1,n_1),(2,1)...
struct SimilarityPair {
  Matrix U;     // (h D_d) x (h D_N)
  Matrix Uinv;  // (h D_N) x (h D_d)
  FockPtr fock_target;                    // the F_+^N truncation
  std::vector<std::pair<int, int>> letters;  // N-letter -> (i, j)
};

SimilarityPair build_U(const DynSystem& sys, int L);

struct SimilarityReport {
  double inverse_residual = 0.0;      // U Uinv - I and (Uinv U - I) windowed
  double intertwine_residual = 0.0;   // pibar(x) U - U rho(x), windowed per degree
  double creation_residual = 0.0;     // L_i U - U sum_j L_{(i,j)} rho(v_{i,j})
  double recovery_residual = 0.0;     // Uinv L_i U rho(u_{i,j}) - L_{(i,j)}
  double adjoint_residual = -1.0;     // Uinv - U* (Cuntz rows only, else -1)
  double norm_U = 0.0;
  double norm_Uinv = 0.0;
  double k_bound = 0.0;               // system's uniform bound K
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

// Conjugation identities of the similarity theorem, restricted to
// window-supported vectors (per-degree shrinking windows) when the system
// declares windows.
SimilarityReport verify_similarity(const DynSystem& sys, int L, double tol);

}  // namespace focklab
