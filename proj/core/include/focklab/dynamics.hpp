#pragma once

#include <optional>
#include <string>
#include <vector>

#include "focklab/generators.hpp"
#include "focklab/linops.hpp"

namespace focklab {

// An invertible row operator u = [u_1 ... u_n] with declared inverse column
// v: sum_j u_j v_j = I and v_j u_k = delta_{jk} I, exactly on the declared
// window of H-basis indices (everywhere when no window is declared).
struct RowOperator {
  std::vector<Matrix> u;
  std::vector<Matrix> v;
  std::optional<std::vector<int>> window;

  int h() const { return u.empty() ? 0 : static_cast<int>(u[0].rows()); }
  int multiplicity() const { return static_cast<int>(u.size()); }

  // 0/1 diagonal projection onto the declared window (identity when absent)
  Matrix window_projection() const;
  // worst residual of the two row-inverse identities, window-restricted
  double relation_residual() const;
  // alpha(a) = sum_j u_j a v_j
  Matrix apply(const Matrix& a) const;
};

// named examples
RowOperator gallery_odometer(int D);                    // S1 e_n = e_{2n}, S2 e_n = e_{2n+1} on C^D
Matrix binary_weight_unitary(int D, Complex lambda, Complex mu);
RowOperator gallery_binary_weight(int D, Complex lambda, Complex mu);
int binary_weight(int n);                               // number of 1s in base-2 expansion
// bilateral space l^2(Z) truncated to indices -D..D-1 (stored with offset D)
RowOperator gallery_bilateral_odometer(int D);
Matrix bilateral_diag_unitary(int D, Complex lambda, Complex mu);   // lambda on n>=0, mu on n<0
Matrix bilateral_swap_unitary(int D, Complex lambda, Complex mu);   // e_n -> e_{-n-1} with phases
struct ClockShiftPair {
  Matrix u;  // diag(omega^k)
  Matrix v;  // cyclic shift; u v = e^{2 pi i / D} v u
};
ClockShiftPair gallery_clock_shift(int D);
RowOperator unitary_row(const Matrix& u);               // n = 1 row from a unitary/invertible
RowOperator trivial_row(int h);

SpanBasis full_matrix_algebra(int h);
SpanBasis diagonal_algebra(int h);
SpanBasis scalar_algebra(int h);
SpanBasis algebra_I_E21(int h);

struct SystemValidation {
  double row_relation_residual = 0.0;   // row-inverse identities on windows
  double unitality_residual = 0.0;      // ||alpha_i(I) - I|| on windows
  double algebra_invariance_residual = 0.0;  // alpha_i(basis) back in span
  double commuting_residual = 0.0;      // abelian kind only, pairwise
  double max_residual() const;
};

// A w*-dynamical system at truncation scale: d row-implemented generators
// acting on A subset B(C^h), together with the Fock truncation they act on.
class DynSystem {
 public:
  DynSystem(SemigroupKind kind, std::vector<RowOperator> rows, SpanBasis algebra,
            FockPtr fock, int h);

  SemigroupKind kind() const { return kind_; }
  int d() const { return static_cast<int>(rows_.size()); }
  int h() const { return h_; }
  const FockPtr& fock() const { return fock_; }
  const std::vector<RowOperator>& rows() const { return rows_; }
  const RowOperator& row(int i) const { return rows_.at(i - 1); }  // 1-based
  const SpanBasis& algebra() const { return algebra_; }
  double uniform_bound() const { return K_; }
  const SystemValidation& validation() const { return validation_; }

  // windows after k row applications: window_chain()[0] is all of H,
  // window_chain()[1] the declared window, each further level shrunk by one
  // application (the odometer halves its window per level).
  const std::vector<std::vector<int>>& window_chain() const { return windows_; }
  Matrix window_projection(int level) const;
  // column restriction to per-degree windows W_{degree + offset}
  Matrix window_column_projection(const FockPtr& fock, int offset) const;

  // same system on a different truncation of the same kind
  DynSystem with_fock(FockPtr fock) const;

 private:
  SemigroupKind kind_;
  std::vector<RowOperator> rows_;
  SpanBasis algebra_;
  FockPtr fock_;
  int h_;
  double K_ = 1.0;
  SystemValidation validation_;
  std::vector<std::vector<int>> windows_;
};

// iterated action alpha_{mu_m} ... alpha_{mu_1} for mu = mu_m ... mu_1
// (letters in reading order; the rightmost letter acts first)
Matrix alpha(const DynSystem& sys, const Word& mu, const Matrix& a);
Matrix alpha(const DynSystem& sys, const MultiIndex& m, const Matrix& a);

// the row of all branch products u_{mu_m, j_m} ... u_{mu_1, j_1} and its
// inverse column, flattened with the outermost branch index slowest
Matrix hat_row(const DynSystem& sys, const Word& mu);
Matrix hat_col(const DynSystem& sys, const Word& mu);

// pi(a):     block alpha_mu(a) at e_mu         (abelian: alpha_m(a))
// pibar(a):  block alpha_{reverse(mu)}(a) at e_mu
// rho(x):    x (x) I
Operator rep_pi(const DynSystem& sys, const Matrix& a);
Operator rep_pibar(const DynSystem& sys, const Matrix& a);
Operator rep_rho(const DynSystem& sys, const Matrix& x);

struct CovarianceReport {
  SystemValidation validation;
  double left_residual = 0.0;   // pibar(a) L_i - L_i pibar(alpha_i(a))
  double right_residual = 0.0;  // pi(a) R_i - R_i pi(alpha_i(a))
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

// Covariance of the representation: re-validates the row relations (that is
// where corrupted data shows up) and evaluates both intertwining relations
// over the algebra basis, guard band 1, restricted to window-supported
// vectors when a window is declared.
CovarianceReport check_covariance(const DynSystem& sys, double tol);

struct CommutingReport {
  double residual = 0.0;
  bool pass(double tol) const { return residual <= tol; }
};

// max over window-supported rank-one matrices E_ij of
// ||alpha(beta(E_ij)) - beta(alpha(E_ij))||
CommutingReport check_commuting(const RowOperator& a, const RowOperator& b,
                                const std::vector<int>& window, double tol);

struct LacaReport {
  Matrix W;                      // nm x nm intertwiner, column (i,j)
  double equation_residual = 0.0;
  double unitarity_residual = 0.0;
  bool pass(double tol) const {
    return equation_residual <= tol && unitarity_residual <= tol;
  }
};

// Solves t_j s_i = sum_{(k,l)} W_{(k,l),(i,j)} s_k t_l in least squares over
// window-supported columns.  Throws InsufficientWindow when the window does
// not determine the solution.
LacaReport laca_intertwiner(const std::vector<Matrix>& s_family,
                            const std::vector<Matrix>& t_family,
                            const std::vector<int>& window, double tol);

struct TransportReport {
  double precondition_residual = 0.0;  // [y, a] over the algebra basis
  double transport_residual = 0.0;     // [v_j y u_k, a]
  bool pass(double tol) const {
    return precondition_residual <= tol && transport_residual <= tol;
  }
};

// y in A' implies v_j y u_k in A' for every j, k (window-restricted)
TransportReport check_commutant_transport(const DynSystem& sys, const Matrix& y,
                                          double tol);

}  // namespace focklab
