#pragma once

#include <optional>
#include <string>

#include "focklab/linops.hpp"

namespace focklab {

// Truncated creation operators.  Vectors that a shift would push past the
// truncation degree are annihilated, so every operator is an endomorphism of
// the same space; identities involving total creation degree k are asserted
// after compressing away the top k levels.

// L_mu : xi (x) e_w -> xi (x) e_{mu w}
Operator creation_left(const FockPtr& fock, int h, const Word& mu);
// R_nu : xi (x) e_w -> xi (x) e_{w reverse(nu)}
Operator creation_right(const FockPtr& fock, int h, const Word& nu);
// abelian L_m : xi (x) e_w -> xi (x) e_{m + w}
Operator creation_abelian(const FockPtr& fock, int h, const MultiIndex& m);

struct GaugeParams {
  std::vector<double> s;  // one angle (free) or d angles (abelian), in [-pi, pi]
};

// diagonal gauge unitary: e^{i|w|s} (free) or e^{i <w,s>} (abelian) per block
Operator gauge(const FockPtr& fock, int h, const GaugeParams& params);

// G_m(T) = sum_k P_{k+m} T P_k (free grading, clipped to the truncation)
Operator fourier_graded(const Operator& T, int m);
// abelian coefficient: keeps blocks (m + w, w)
Operator fourier_graded_multi(const Operator& T, const MultiIndex& m);

// (1/q) sum_j U_{s_j} T U_{s_j}^* e^{-i m s_j} on the uniform grid
// s_j = 2 pi j / q - pi; exact against fourier_graded once q >= 2L+1.
Operator fourier_quadrature(const Operator& T, int m, int q);
Operator fourier_quadrature_multi(const Operator& T, const MultiIndex& m, int q);

// Fejer/Cesaro sum sigma_{n+1}(T) = sum_{|k|<=n} (1 - |k|/(n+1)) G_k(T);
// abelian operators use the product Fejer kernel over coordinates.
Operator cesaro(const Operator& T, int n);
// a priori bound on ||sigma_{n+1}(T) - T|| from the graded parts
double cesaro_error_bound(const Operator& T, int n);

enum class TriangularFlavor { Left, Right, Abelian };

struct TriangularReport {
  bool triangular = false;
  double worst_norm = 0.0;
  int worst_row = -1;  // basis positions of the worst forbidden block
  int worst_col = -1;
  std::string worst_label() const;
  const TruncatedFock* fock = nullptr;
};

TriangularReport is_lower_triangular(const Operator& T, TriangularFlavor flavor,
                                     double tol);

// Truncation of the L_d^* eigenvector nu_lambda (multiplicity one, h = 1):
// (1 - ||lambda||^2)^{1/2} sum_{|w|<=L} w(lambda) e_w.  Requires ||lambda|| < 1.
Vector eigenvector(const FockPtr& fock, const std::vector<Complex>& lambda,
                   bool normalize);
// residual of the truncated eigenrelation max_i ||l_i^* nu - lambda_i nu||
double eigenvector_residual(const FockPtr& fock, const std::vector<Complex>& lambda,
                            const Vector& nu);

}  // namespace focklab
