#pragma once

#include <cstdint>

#include "focklab/semicrossed.hpp"

namespace focklab {

// Constraint rows on vec(T) expressing P_{(A xi)^perp} T xi = 0,
// where A xi = span{a xi : a in A-basis}.  Empty when A xi is everything.
Matrix ref_constraints(const SpanBasis& a, const Vector& xi, double tol = 1e-10);

// One sampled constraint vector: coordinates masked by a random support
// pattern, Gaussian entries on the support.  Dense Gaussians make the
// constraints of diagonal-type algebras generically vacuous, so supports of
// every size are drawn.
Vector sample_constraint_vector(int n, Gaussian& g);

struct SampledRef {
  SpanBasis cover;              // stabilized over-approximation of Ref(A)
  bool stabilized = false;      // dimension flat over the final 25% of trials
  std::vector<int> dim_history;
};

// Intersection of ref_constraints over seeded random vectors; monotone
// decreasing in trials and always containing span(A).
SampledRef sampled_ref(const SpanBasis& a, int trials, std::uint64_t seed,
                       double tol = 1e-9);

enum class CertifyVerdict { CertifiedReflexive, Inconclusive };

struct CertifyResult {
  CertifyVerdict verdict = CertifyVerdict::Inconclusive;
  SpanBasis cover;
  int cover_dim = 0;
  int algebra_dim = 0;
  bool stabilized = false;

  bool certified() const { return verdict == CertifyVerdict::CertifiedReflexive; }
};

// Certified-reflexive exactly when the sampled cover stabilizes at span(A);
// a stabilized strict over-approximation is reported inconclusive, never as
// non-reflexivity.
CertifyResult certify(const SpanBasis& a, int trials, std::uint64_t seed,
                      double tol = 1e-9);

// residual of x against `count` fresh sampled constraints
double witness_residual(const SpanBasis& a, const Matrix& x, int count,
                        std::uint64_t seed);

struct RefNecessaryReport {
  bool triangular = false;
  bool blocks_in_cover = false;
  double triangular_residual = 0.0;
  double block_residual = 0.0;
  std::string witness;
  bool pass() const { return triangular && blocks_in_cover; }
};

// Necessary conditions for membership in Ref of the left semicrossed
// product: left lower triangularity and every block T_{mu w, w} inside the
// sampled reflexive cover of A.  Necessary, not sufficient.
RefNecessaryReport ref_necessary_semicrossed(const DynSystem& sys, const Operator& T,
                                             double tol, int trials = 200,
                                             std::uint64_t seed = 1);

}  // namespace focklab
