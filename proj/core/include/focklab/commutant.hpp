#pragma once

#include "focklab/semicrossed.hpp"

namespace focklab {

// Basis of {X : XT = TX for every T in ops}, solved densely through the
// stacked commutator map on vec(X).  Instances are capped at side 130.
SpanBasis matrix_commutant(const std::vector<Matrix>& ops, double tol = 1e-8);

// Basis of {X : P (XT - TX) P = 0} for P the projection onto degrees
// <= L - guard; a superset of the compression of the true commutant.
SpanBasis graded_commutant(const FockPtr& fock, int h,
                           const std::vector<Matrix>& ops, int guard,
                           double tol = 1e-8);

// matrix_commutant applied twice; always contains span(A)
SpanBasis bicommutant(const SpanBasis& a, double tol = 1e-8);

struct Thm41Report {
  // worst graded commutation residual of predicted commutant generators
  // against semicrossed generators (all pairings), window-restricted
  double identity_residual = 0.0;
  // span comparison of the graded commutant against the predicted monomials
  // on interior compressions (exact instances only; Equal expected)
  SpanOrder span_order = SpanOrder::Incomparable;
  double span_residual = 0.0;
  bool spans_compared = false;
  int solved_dimension = 0;
  int predicted_dimension = 0;

  bool identities_pass(double tol) const { return identity_residual <= tol; }
};

// Commutation identities of the commutant theorem at truncation scale.
// compare_spans is attempted only when every generator is an n = 1 row and
// the instance is small enough for the dense solve.
Thm41Report verify_thm_4_1(const DynSystem& sys, double tol,
                           bool compare_span = true);

}  // namespace focklab
