#include "focklab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace focklab {

Matrix RowOperator::window_projection() const {
  Matrix P = Matrix::Zero(h(), h());
  if (window) {
    for (int n : *window) {
      if (n < 0 || n >= h())
        throw Error(ErrorKind::InvalidParameter, "window index outside H");
      P(n, n) = 1.0;
    }
  } else {
    P.setIdentity();
  }
  return P;
}

double RowOperator::relation_residual() const {
  const int hh = h();
  const Matrix P = window_projection();
  Matrix completeness = -Matrix::Identity(hh, hh);
  for (size_t j = 0; j < u.size(); ++j) completeness += u[j] * v[j];
  double worst = op_norm(completeness * P);
  for (size_t j = 0; j < u.size(); ++j)
    for (size_t k = 0; k < u.size(); ++k) {
      Matrix rel = v[j] * u[k];
      if (j == k) rel -= Matrix::Identity(hh, hh);
      worst = std::max(worst, op_norm(rel * P));
    }
  return worst;
}

Matrix RowOperator::apply(const Matrix& a) const {
  Matrix out = Matrix::Zero(h(), h());
  for (size_t j = 0; j < u.size(); ++j) out += u[j] * a * v[j];
  return out;
}

RowOperator gallery_odometer(int D) {
  if (D < 2) throw Error(ErrorKind::InvalidParameter, "odometer needs D >= 2");
  Matrix S1 = Matrix::Zero(D, D), S2 = Matrix::Zero(D, D);
  std::vector<int> window;
  for (int n = 0; n < D; ++n) {
    if (2 * n < D) S1(2 * n, n) = 1.0;
    if (2 * n + 1 < D) {
      S2(2 * n + 1, n) = 1.0;
      window.push_back(n);
    }
  }
  return RowOperator{{S1, S2}, {S1.adjoint(), S2.adjoint()}, window};
}

int binary_weight(int n) {
  int c = 0;
  for (; n > 0; n >>= 1) c += n & 1;
  return c;
}

Matrix binary_weight_unitary(int D, Complex lambda, Complex mu) {
  if (D < 1) throw Error(ErrorKind::InvalidParameter, "binary weight needs D >= 1");
  Matrix U = Matrix::Zero(D, D);
  for (int n = 0; n < D; ++n) U(n, n) = lambda * std::pow(mu, binary_weight(n));
  return U;
}

RowOperator gallery_binary_weight(int D, Complex lambda, Complex mu) {
  const Matrix U = binary_weight_unitary(D, lambda, mu);
  return RowOperator{{U}, {U.adjoint()}, std::nullopt};
}

RowOperator gallery_bilateral_odometer(int D) {
  // l^2(Z) window -D..D-1, index n stored at n + D
  if (D < 2) throw Error(ErrorKind::InvalidParameter, "bilateral odometer needs D >= 2");
  const int dim = 2 * D;
  Matrix S1 = Matrix::Zero(dim, dim), S2 = Matrix::Zero(dim, dim);
  std::vector<int> window;
  for (int n = -D; n < D; ++n) {
    if (2 * n >= -D && 2 * n < D) S1(2 * n + D, n + D) = 1.0;
    if (2 * n + 1 >= -D && 2 * n + 1 < D) S2(2 * n + 1 + D, n + D) = 1.0;
    if (2 * n >= -D && 2 * n + 1 < D) window.push_back(n + D);
  }
  return RowOperator{{S1, S2}, {S1.adjoint(), S2.adjoint()}, window};
}

Matrix bilateral_diag_unitary(int D, Complex lambda, Complex mu) {
  const int dim = 2 * D;
  Matrix U = Matrix::Zero(dim, dim);
  for (int n = -D; n < D; ++n) U(n + D, n + D) = n >= 0 ? lambda : mu;
  return U;
}

Matrix bilateral_swap_unitary(int D, Complex lambda, Complex mu) {
  const int dim = 2 * D;
  Matrix U = Matrix::Zero(dim, dim);
  for (int n = -D; n < D; ++n) {
    const int target = -n - 1;  // in [-D, D-1] exactly when n is
    U(target + D, n + D) = n >= 0 ? lambda : mu;
  }
  return U;
}

ClockShiftPair gallery_clock_shift(int D) {
  if (D < 1) throw Error(ErrorKind::InvalidParameter, "clock shift needs D >= 1");
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  Matrix U = Matrix::Zero(D, D), V = Matrix::Zero(D, D);
  for (int k = 0; k < D; ++k) {
    U(k, k) = std::exp(Complex(0, kTwoPi * k / D));
    V((k + 1) % D, k) = 1.0;
  }
  return {U, V};
}

RowOperator unitary_row(const Matrix& u) {
  return RowOperator{{u}, {u.inverse()}, std::nullopt};
}

RowOperator trivial_row(int h) {
  return RowOperator{{Matrix::Identity(h, h)}, {Matrix::Identity(h, h)}, std::nullopt};
}

SpanBasis full_matrix_algebra(int h) {
  SpanBasis b;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      Matrix e = Matrix::Zero(h, h);
      e(i, j) = 1.0;
      b.mats.push_back(e);
    }
  return b;
}

SpanBasis diagonal_algebra(int h) {
  SpanBasis b;
  for (int i = 0; i < h; ++i) {
    Matrix e = Matrix::Zero(h, h);
    e(i, i) = 1.0;
    b.mats.push_back(e);
  }
  return b;
}

SpanBasis scalar_algebra(int h) {
  return SpanBasis{{Matrix::Identity(h, h)}};
}

SpanBasis algebra_I_E21(int h) {
  if (h < 2) throw Error(ErrorKind::InvalidParameter, "I+E21 needs h >= 2");
  Matrix e = Matrix::Zero(h, h);
  e(1, 0) = 1.0;
  return SpanBasis{{Matrix::Identity(h, h), e}};
}

double SystemValidation::max_residual() const {
  return std::max({row_relation_residual, unitality_residual,
                   algebra_invariance_residual, commuting_residual});
}

namespace {

std::vector<int> intersect_windows(const std::vector<RowOperator>& rows) {
  std::set<int> acc;
  bool first = true;
  for (const auto& r : rows) {
    if (!r.window) continue;
    std::set<int> w(r.window->begin(), r.window->end());
    if (first) {
      acc = w;
      first = false;
    } else {
      std::set<int> tmp;
      std::set_intersection(acc.begin(), acc.end(), w.begin(), w.end(),
                            std::inserter(tmp, tmp.begin()));
      acc = tmp;
    }
  }
  if (first) return {};  // no declared windows
  return {acc.begin(), acc.end()};
}

}  // namespace

DynSystem::DynSystem(SemigroupKind kind, std::vector<RowOperator> rows,
                     SpanBasis algebra, FockPtr fock, int h)
    : kind_(kind), rows_(std::move(rows)), algebra_(std::move(algebra)),
      fock_(std::move(fock)), h_(h) {
  if (rows_.empty()) throw Error(ErrorKind::InvalidParameter, "system needs at least one generator");
  if (fock_->kind() != kind_)
    throw Error(ErrorKind::InvalidParameter, "basis kind does not match system kind");
  if (fock_->alphabet_size() != d())
    throw Error(ErrorKind::InvalidParameter, "basis alphabet does not match generator count");
  for (const auto& r : rows_) {
    if (r.h() != h_) throw Error(ErrorKind::InvalidParameter, "row operator dimension mismatch");
    if (r.u.size() != r.v.size() || r.u.empty())
      throw Error(ErrorKind::InvalidParameter, "row operator needs matching u/v entries");
  }
  if (algebra_.empty())
    throw Error(ErrorKind::InvalidAlgebra, "algebra basis is empty");
  if (algebra_.residual_of(Matrix::Identity(h_, h_)) > 1e-10)
    throw Error(ErrorKind::InvalidAlgebra, "algebra must contain the identity");

  // window chain
  const int L = fock_->max_degree();
  std::vector<int> all(h_);
  for (int i = 0; i < h_; ++i) all[i] = i;
  const bool windowed = std::any_of(rows_.begin(), rows_.end(),
                                    [](const RowOperator& r) { return r.window.has_value(); });
  std::vector<int> w1 = windowed ? intersect_windows(rows_) : all;
  windows_.push_back(all);
  windows_.push_back(w1);
  for (int level = 2; level <= L + 1; ++level) {
    std::vector<int> next;
    const std::vector<int>& prev = windows_.back();
    std::set<int> prevset(prev.begin(), prev.end());
    for (int n : w1) {
      bool keep = true;
      for (const auto& r : rows_)
        for (const auto& uj : r.u)
          for (int m = 0; m < h_ && keep; ++m)
            if (std::abs(uj(m, n)) > 1e-12 && !prevset.count(m)) keep = false;
      if (keep) next.push_back(n);
    }
    windows_.push_back(next);
  }

  // uniform bound over all words of degree <= L
  K_ = 1.0;
  std::vector<Word> stack{Word{}};
  for (int len = 1; len <= L; ++len) {
    std::vector<Word> next;
    for (const auto& w : stack)
      for (int i = 1; i <= d(); ++i) {
        Word e = concat(w, Word{{i}});
        K_ = std::max({K_, op_norm(hat_row(*this, e)), op_norm(hat_col(*this, e))});
        next.push_back(e);
      }
    stack = std::move(next);
  }

  // validation
  for (const auto& r : rows_)
    validation_.row_relation_residual =
        std::max(validation_.row_relation_residual, r.relation_residual());
  const Matrix I = Matrix::Identity(h_, h_);
  for (const auto& r : rows_) {
    validation_.unitality_residual = std::max(
        validation_.unitality_residual, op_norm((r.apply(I) - I) * r.window_projection()));
    for (const auto& a : algebra_.mats)
      validation_.algebra_invariance_residual = std::max(
          validation_.algebra_invariance_residual, algebra_.residual_of(r.apply(a)));
  }
  if (kind_ == SemigroupKind::Abelian && d() >= 2) {
    std::vector<int> w = windows_[1];
    for (int i = 0; i < d(); ++i)
      for (int j = i + 1; j < d(); ++j) {
        auto rep = check_commuting(rows_[i], rows_[j], w, 0.0);
        validation_.commuting_residual =
            std::max(validation_.commuting_residual, rep.residual);
      }
  }
}

Matrix DynSystem::window_projection(int level) const {
  Matrix P = Matrix::Zero(h_, h_);
  const auto& w = windows_.at(std::min<size_t>(level, windows_.size() - 1));
  for (int n : w) P(n, n) = 1.0;
  return P;
}

Matrix DynSystem::window_column_projection(const FockPtr& fock, int offset) const {
  Matrix P = Matrix::Zero(fock->size() * h_, fock->size() * h_);
  for (int i = 0; i < fock->size(); ++i)
    P.block(i * h_, i * h_, h_, h_) = window_projection(fock->degree(i) + offset);
  return P;
}

DynSystem DynSystem::with_fock(FockPtr fock) const {
  return DynSystem(kind_, rows_, algebra_, std::move(fock), h_);
}

Matrix alpha(const DynSystem& sys, const Word& mu, const Matrix& a) {
  Matrix out = a;
  for (auto it = mu.letters.rbegin(); it != mu.letters.rend(); ++it)
    out = sys.row(*it).apply(out);
  return out;
}

Matrix alpha(const DynSystem& sys, const MultiIndex& m, const Matrix& a) {
  Matrix out = a;
  for (int i = 0; i < m.dim(); ++i)
    for (int k = 0; k < m.coords[i]; ++k) out = sys.row(i + 1).apply(out);
  return out;
}

Matrix hat_row(const DynSystem& sys, const Word& mu) {
  const int h = sys.h();
  Matrix M = Matrix::Identity(h, h);
  long branches = 1;
  for (int letter : mu.letters) {
    const auto& r = sys.row(letter);
    Matrix rowmat(h, static_cast<Eigen::Index>(r.multiplicity()) * h);
    for (int j = 0; j < r.multiplicity(); ++j) rowmat.block(0, j * h, h, h) = r.u[j];
    M = M * kron(Matrix::Identity(branches, branches), rowmat);
    branches *= r.multiplicity();
  }
  return M;
}

Matrix hat_col(const DynSystem& sys, const Word& mu) {
  const int h = sys.h();
  Matrix M = Matrix::Identity(h, h);
  long branches = 1;
  for (int letter : mu.letters) {
    const auto& r = sys.row(letter);
    Matrix colmat(static_cast<Eigen::Index>(r.multiplicity()) * h, h);
    for (int j = 0; j < r.multiplicity(); ++j) colmat.block(j * h, 0, h, h) = r.v[j];
    M = kron(Matrix::Identity(branches, branches), colmat) * M;
    branches *= r.multiplicity();
  }
  return M;
}

namespace {

Matrix checked_algebra_element(const DynSystem& sys, const Matrix& a) {
  if (a.rows() != sys.h() || a.cols() != sys.h())
    throw Error(ErrorKind::InvalidParameter, "algebra element has wrong shape");
  if (sys.algebra().residual_of(a) > 1e-7)
    throw Error(ErrorKind::NotInAlgebra, "element is not in the algebra span");
  return a;
}

}  // namespace

Operator rep_pi(const DynSystem& sys, const Matrix& a) {
  checked_algebra_element(sys, a);
  Operator T = zero_operator(sys.fock(), sys.h());
  for (int i = 0; i < sys.fock()->size(); ++i) {
    const Matrix blk = sys.kind() == SemigroupKind::Free
                           ? alpha(sys, sys.fock()->word(i), a)
                           : alpha(sys, sys.fock()->multi(i), a);
    T.block(i, i) = blk;
  }
  return T;
}

Operator rep_pibar(const DynSystem& sys, const Matrix& a) {
  if (sys.kind() != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter, "pibar is a free-kind representation");
  checked_algebra_element(sys, a);
  Operator T = zero_operator(sys.fock(), sys.h());
  for (int i = 0; i < sys.fock()->size(); ++i)
    T.block(i, i) = alpha(sys, reverse(sys.fock()->word(i)), a);
  return T;
}

Operator rep_rho(const DynSystem& sys, const Matrix& x) {
  Operator T = zero_operator(sys.fock(), sys.h());
  for (int i = 0; i < sys.fock()->size(); ++i) T.block(i, i) = x;
  return T;
}

double CovarianceReport::max_residual() const {
  return std::max({validation.max_residual(), left_residual, right_residual});
}

CovarianceReport check_covariance(const DynSystem& sys, double tol) {
  (void)tol;
  CovarianceReport rep;
  rep.validation = sys.validation();
  const auto& fock = sys.fock();
  const int h = sys.h();
  const Matrix Pint = projection_up_to(fock, h, fock->max_degree() - 1).mat;
  const Matrix Pwin = sys.window_column_projection(fock, 1);
  for (int i = 1; i <= sys.d(); ++i) {
    for (const auto& a : sys.algebra().mats) {
      const Matrix ai = sys.row(i).apply(a);
      if (sys.kind() == SemigroupKind::Free) {
        const Matrix Li = creation_left(fock, h, Word{{i}}).mat;
        const Matrix Ri = creation_right(fock, h, Word{{i}}).mat;
        const Matrix left =
            rep_pibar(sys, a).mat * Li - Li * rep_pibar(sys, ai).mat;
        const Matrix right = rep_pi(sys, a).mat * Ri - Ri * rep_pi(sys, ai).mat;
        rep.left_residual =
            std::max(rep.left_residual, op_norm(Pint * left * Pint * Pwin));
        rep.right_residual =
            std::max(rep.right_residual, op_norm(Pint * right * Pint * Pwin));
      } else {
        MultiIndex e;
        e.coords.assign(sys.d(), 0);
        e.coords[i - 1] = 1;
        const Matrix Li = creation_abelian(fock, h, e).mat;
        const Matrix diff = rep_pi(sys, a).mat * Li - Li * rep_pi(sys, ai).mat;
        rep.left_residual =
            std::max(rep.left_residual, op_norm(Pint * diff * Pint * Pwin));
      }
    }
  }
  return rep;
}

CommutingReport check_commuting(const RowOperator& a, const RowOperator& b,
                                const std::vector<int>& window, double tol) {
  (void)tol;
  if (a.h() != b.h())
    throw Error(ErrorKind::InvalidParameter, "endomorphisms act on different spaces");
  CommutingReport rep;
  for (int i : window)
    for (int j : window) {
      Matrix E = Matrix::Zero(a.h(), a.h());
      E(i, j) = 1.0;
      rep.residual =
          std::max(rep.residual, op_norm(a.apply(b.apply(E)) - b.apply(a.apply(E))));
    }
  return rep;
}

LacaReport laca_intertwiner(const std::vector<Matrix>& s_family,
                            const std::vector<Matrix>& t_family,
                            const std::vector<int>& window, double tol) {
  (void)tol;
  const int n = static_cast<int>(s_family.size());
  const int m = static_cast<int>(t_family.size());
  if (n == 0 || m == 0 || window.empty())
    throw Error(ErrorKind::InvalidParameter, "laca needs two families and a window");
  const int h = static_cast<int>(s_family[0].rows());
  const int cols = static_cast<int>(window.size());
  auto restricted = [&](const Matrix& X) {
    Vector out(static_cast<Eigen::Index>(h) * cols);
    for (int c = 0; c < cols; ++c) out.segment(c * h, h) = X.col(window[c]);
    return out;
  };
  Matrix A(static_cast<Eigen::Index>(h) * cols, static_cast<Eigen::Index>(n) * m);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < m; ++l) A.col(k * m + l) = restricted(s_family[k] * t_family[l]);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(sv(0), 1.0)) ++rank;
  if (rank < n * m)
    throw Error(ErrorKind::InsufficientWindow,
                "window does not determine the intertwiner");
  LacaReport rep;
  rep.W = Matrix::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const Vector b = restricted(t_family[j] * s_family[i]);
      const Vector w = svd.solve(b);
      rep.W.col(i * m + j) = w;
      rep.equation_residual = std::max(rep.equation_residual, (A * w - b).norm());
    }
  rep.unitarity_residual =
      op_norm(rep.W.adjoint() * rep.W - Matrix::Identity(n * m, n * m));
  return rep;
}

TransportReport check_commutant_transport(const DynSystem& sys, const Matrix& y,
                                          double tol) {
  (void)tol;
  TransportReport rep;
  const Matrix P = sys.window_projection(1);
  auto comm_residual = [&](const Matrix& x) {
    double worst = 0.0;
    for (const auto& a : sys.algebra().mats)
      worst = std::max(worst, op_norm(P * (x * a - a * x) * P));
    return worst;
  };
  rep.precondition_residual = comm_residual(y);
  for (int i = 1; i <= sys.d(); ++i) {
    const auto& r = sys.row(i);
    for (int j = 0; j < r.multiplicity(); ++j)
      for (int k = 0; k < r.multiplicity(); ++k)
        rep.transport_residual =
            std::max(rep.transport_residual, comm_residual(r.v[j] * y * r.u[k]));
  }
  return rep;
}

}  // namespace focklab
