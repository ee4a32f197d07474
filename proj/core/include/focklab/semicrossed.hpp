#pragma once

#include <map>
#include <string>

#include "focklab/dynamics.hpp"

namespace focklab {

// Semicrossed-product generators on the truncation:
//   sc_left(mu, a)  = L_mu pibar(a)
//   sc_right(mu, a) = R_mu pi(a)
//   sc_abelian(n, a) = L_n pi(a)
Operator sc_left(const DynSystem& sys, const Word& mu, const Matrix& a);
Operator sc_right(const DynSystem& sys, const Word& mu, const Matrix& a);
Operator sc_abelian(const DynSystem& sys, const MultiIndex& n, const Matrix& a);

enum class MembershipVerdict { Member, Rejected };

struct MembershipResult {
  MembershipVerdict verdict = MembershipVerdict::Rejected;
  // coefficient a_mu per basis label (only labels with a nonzero coefficient)
  std::map<int, Matrix> coefficients;
  std::string rejection;     // first violated condition, empty when member
  std::string witness;       // offending block labels
  double worst_residual = 0.0;

  bool member() const { return verdict == MembershipVerdict::Member; }
};

// Membership test via block consistency: T belongs to the generator span iff
// (i) it is lower triangular of the matching flavor; (ii) the blocks above
// each coefficient replicate it through the action, e.g. T_{mu w, w} =
// alpha_{reverse(w)}(T_{mu, e}) for the left version; (iii) each coefficient
// lies in the algebra span.
MembershipResult membership_left(const DynSystem& sys, const Operator& T, double tol);
MembershipResult membership_right(const DynSystem& sys, const Operator& T, double tol);
MembershipResult membership_abelian(const DynSystem& sys, const Operator& T, double tol);

struct DecomposeReport {
  double creation_residual = 0.0;   // conjugated L_i against the nested generator
  double rep_residual = 0.0;        // conjugated pi(a) against the nested representation
  double unitary_residual = 0.0;    // permutation property of the basis bijection
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

// Tensor-splitting of an abelian system on the rectangular truncation with
// per-axis cap `cap`: conjugates the semicrossed generators through the basis
// bijection e_{(n_1..n_d)} <-> e_{n_1} (x) ... (x) e_{n_d} and compares with
// the iterated one-variable construction.
DecomposeReport decompose_abelian(const DynSystem& sys, int cap, double tol);

struct CommutantGenerators {
  // for the left product (A x| L_d)': W_{i,j} rho(y) with W_{i,j} = u_{i,j} (x) r_i
  std::vector<Operator> right_twisted;
  // for the right product (A x| R_d)': V_{i,j} rho(y) with V_{i,j} = u_{i,j} (x) l_i
  std::vector<Operator> left_twisted;
  // rho(y) for the commutant basis
  std::vector<Operator> diagonal;
};

// First-order twisted generators of the predicted commutant, built over a
// basis of A' computed on H.  Abelian systems use the direction creations.
CommutantGenerators predicted_commutant_generators(const DynSystem& sys,
                                                   const SpanBasis& a_prime);

// All monomials W_bw rho(y) over words bw in the twisted letters (i,j) with
// |bw| <= max_degree; spans the predicted commutant at truncation scale.
std::vector<Operator> predicted_commutant_monomials(const DynSystem& sys,
                                                    const SpanBasis& a_prime,
                                                    int max_degree,
                                                    bool right_version);

}  // namespace focklab
