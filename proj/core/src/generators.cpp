#include "focklab/generators.hpp"

#include <cmath>

namespace focklab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Operator creation_left(const FockPtr& fock, int h, const Word& mu) {
  if (fock->kind() != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter, "creation_left needs a free basis");
  if (mu.length() > fock->max_degree())
    throw Error(ErrorKind::InvalidParameter, "creation label exceeds truncation");
  Operator T = zero_operator(fock, h);
  for (int j = 0; j < fock->size(); ++j) {
    const int i = fock->find(concat(mu, fock->word(j)));
    if (i >= 0) T.block(i, j) = Matrix::Identity(h, h);
  }
  return T;
}

Operator creation_right(const FockPtr& fock, int h, const Word& nu) {
  if (fock->kind() != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter, "creation_right needs a free basis");
  if (nu.length() > fock->max_degree())
    throw Error(ErrorKind::InvalidParameter, "creation label exceeds truncation");
  Operator T = zero_operator(fock, h);
  const Word rev = reverse(nu);
  for (int j = 0; j < fock->size(); ++j) {
    const int i = fock->find(concat(fock->word(j), rev));
    if (i >= 0) T.block(i, j) = Matrix::Identity(h, h);
  }
  return T;
}

Operator creation_abelian(const FockPtr& fock, int h, const MultiIndex& m) {
  if (fock->kind() != SemigroupKind::Abelian)
    throw Error(ErrorKind::InvalidParameter, "creation_abelian needs an abelian basis");
  if (fock->find(m) < 0)
    throw Error(ErrorKind::InvalidParameter, "creation label exceeds truncation");
  Operator T = zero_operator(fock, h);
  for (int j = 0; j < fock->size(); ++j) {
    const int i = fock->find(add(m, fock->multi(j)));
    if (i >= 0) T.block(i, j) = Matrix::Identity(h, h);
  }
  return T;
}

Operator gauge(const FockPtr& fock, int h, const GaugeParams& params) {
  const bool abelian = fock->kind() == SemigroupKind::Abelian;
  const size_t want = abelian ? static_cast<size_t>(fock->alphabet_size()) : 1;
  if (params.s.size() != want)
    throw Error(ErrorKind::InvalidParameter, "gauge parameter dimension mismatch");
  for (double s : params.s)
    if (!(s >= -kPi - 1e-12 && s <= kPi + 1e-12))
      throw Error(ErrorKind::InvalidParameter, "gauge angle outside [-pi, pi]");
  Operator U = zero_operator(fock, h);
  for (int i = 0; i < fock->size(); ++i) {
    double phase = 0.0;
    if (abelian) {
      const auto& c = fock->multi(i).coords;
      for (size_t k = 0; k < c.size(); ++k) phase += c[k] * params.s[k];
    } else {
      phase = fock->degree(i) * params.s[0];
    }
    U.block(i, i) = std::exp(Complex(0, phase)) * Matrix::Identity(h, h);
  }
  return U;
}

Operator fourier_graded(const Operator& T, int m) {
  Operator G = zero_operator(T.fock, T.h);
  for (int i = 0; i < T.fock->size(); ++i)
    for (int j = 0; j < T.fock->size(); ++j)
      if (T.fock->degree(i) - T.fock->degree(j) == m) G.block(i, j) = T.block(i, j);
  return G;
}

Operator fourier_graded_multi(const Operator& T, const MultiIndex& m) {
  if (T.fock->kind() != SemigroupKind::Abelian)
    throw Error(ErrorKind::InvalidParameter, "multi coefficient needs an abelian basis");
  Operator G = zero_operator(T.fock, T.h);
  for (int i = 0; i < T.fock->size(); ++i)
    for (int j = 0; j < T.fock->size(); ++j) {
      const auto& wi = T.fock->multi(i).coords;
      const auto& wj = T.fock->multi(j).coords;
      bool match = true;
      for (size_t k = 0; k < wi.size() && match; ++k)
        match = (wi[k] - wj[k] == m.coords[k]);
      if (match) G.block(i, j) = T.block(i, j);
    }
  return G;
}

Operator fourier_quadrature(const Operator& T, int m, int q) {
  if (q < 1) throw Error(ErrorKind::InvalidParameter, "quadrature needs q >= 1");
  Operator G = zero_operator(T.fock, T.h);
  for (int j = 0; j < q; ++j) {
    const double s = 2.0 * kPi * j / q - kPi;
    const Operator U = gauge(T.fock, T.h, {{s}});
    G.mat += U.mat * T.mat * U.mat.adjoint() * std::exp(Complex(0, -m * s));
  }
  G.mat /= static_cast<double>(q);
  return G;
}

Operator fourier_quadrature_multi(const Operator& T, const MultiIndex& m, int q) {
  if (q < 1) throw Error(ErrorKind::InvalidParameter, "quadrature needs q >= 1");
  const int d = T.fock->alphabet_size();
  Operator G = zero_operator(T.fock, T.h);
  std::vector<int> grid(d, 0);
  while (true) {
    GaugeParams p;
    double phase = 0.0;
    for (int k = 0; k < d; ++k) {
      const double s = 2.0 * kPi * grid[k] / q - kPi;
      p.s.push_back(s);
      phase -= m.coords[k] * s;
    }
    const Operator U = gauge(T.fock, T.h, p);
    G.mat += U.mat * T.mat * U.mat.adjoint() * std::exp(Complex(0, phase));
    int k = d - 1;
    while (k >= 0 && grid[k] == q - 1) grid[k--] = 0;
    if (k < 0) break;
    ++grid[k];
  }
  G.mat /= std::pow(static_cast<double>(q), d);
  return G;
}

Operator cesaro(const Operator& T, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "cesaro needs n >= 0");
  Operator S = zero_operator(T.fock, T.h);
  if (T.fock->kind() == SemigroupKind::Free) {
    for (int i = 0; i < T.fock->size(); ++i)
      for (int j = 0; j < T.fock->size(); ++j) {
        const int k = T.fock->degree(i) - T.fock->degree(j);
        if (std::abs(k) <= n)
          S.block(i, j) = (1.0 - std::abs(k) / (n + 1.0)) * T.block(i, j);
      }
  } else {
    for (int i = 0; i < T.fock->size(); ++i)
      for (int j = 0; j < T.fock->size(); ++j) {
        const auto& wi = T.fock->multi(i).coords;
        const auto& wj = T.fock->multi(j).coords;
        double w = 1.0;
        for (size_t k = 0; k < wi.size(); ++k) {
          const int dk = std::abs(wi[k] - wj[k]);
          w *= dk <= n ? 1.0 - dk / (n + 1.0) : 0.0;
        }
        S.block(i, j) = w * T.block(i, j);
      }
  }
  return S;
}

double cesaro_error_bound(const Operator& T, int n) {
  double bound = 0.0;
  if (T.fock->kind() == SemigroupKind::Free) {
    const int L = T.fock->max_degree();
    for (int k = -L; k <= L; ++k) {
      if (k == 0) continue;
      const double w = std::min(1.0, std::abs(k) / (n + 1.0));
      bound += w * op_norm(fourier_graded(T, k).mat);
    }
  } else {
    const int d = T.fock->alphabet_size();
    const int L = T.fock->rectangular() ? T.fock->rect_cap() : T.fock->max_degree();
    std::vector<int> m(d, -L);
    while (true) {
      bool zero = true;
      double w = 1.0;
      for (int k = 0; k < d; ++k) {
        if (m[k] != 0) zero = false;
        const int dk = std::abs(m[k]);
        w *= dk <= n ? 1.0 - dk / (n + 1.0) : 0.0;
      }
      if (!zero) {
        MultiIndex mi;
        mi.coords = m;
        bound += (1.0 - w) * op_norm(fourier_graded_multi(T, mi).mat);
      }
      int k = d - 1;
      while (k >= 0 && m[k] == L) m[k--] = -L;
      if (k < 0) break;
      ++m[k];
    }
  }
  return bound;
}

std::string TriangularReport::worst_label() const {
  if (!fock || worst_row < 0) return "";
  if (fock->kind() == SemigroupKind::Free)
    return "(" + fock->word(worst_row).str() + ", " + fock->word(worst_col).str() + ")";
  return "(" + fock->multi(worst_row).str() + ", " + fock->multi(worst_col).str() + ")";
}

TriangularReport is_lower_triangular(const Operator& T, TriangularFlavor flavor,
                                     double tol) {
  TriangularReport rep;
  rep.fock = T.fock.get();
  const bool abelian = T.fock->kind() == SemigroupKind::Abelian;
  if ((flavor == TriangularFlavor::Abelian) != abelian)
    throw Error(ErrorKind::InvalidParameter, "triangularity flavor does not match basis kind");
  for (int i = 0; i < T.fock->size(); ++i)
    for (int j = 0; j < T.fock->size(); ++j) {
      bool allowed;
      if (abelian)
        allowed = leq_multi(T.fock->multi(j), T.fock->multi(i));
      else if (flavor == TriangularFlavor::Left)
        allowed = leq_left(T.fock->word(j), T.fock->word(i));
      else
        allowed = leq_right(T.fock->word(j), T.fock->word(i));
      if (allowed) continue;
      const double n = T.block(i, j).norm();
      if (n > rep.worst_norm) {
        rep.worst_norm = n;
        rep.worst_row = i;
        rep.worst_col = j;
      }
    }
  rep.triangular = rep.worst_norm <= tol;
  return rep;
}

namespace {
double lambda_norm(const std::vector<Complex>& lambda) {
  double s = 0.0;
  for (auto z : lambda) s += std::norm(z);
  return std::sqrt(s);
}
}  // namespace

Vector eigenvector(const FockPtr& fock, const std::vector<Complex>& lambda,
                   bool normalize) {
  if (fock->kind() != SemigroupKind::Free || lambda.size() != static_cast<size_t>(fock->alphabet_size()))
    throw Error(ErrorKind::InvalidParameter, "eigenvector needs a free basis and d coefficients");
  const double nl = lambda_norm(lambda);
  if (nl >= 1.0)
    throw Error(ErrorKind::InvalidParameter, "eigenvector parameter must satisfy ||lambda|| < 1");
  Vector v(fock->size());
  for (int i = 0; i < fock->size(); ++i) {
    Complex c = 1.0;
    for (int letter : fock->word(i).letters) c *= lambda[letter - 1];
    v(i) = c;
  }
  v *= std::sqrt(1.0 - nl * nl);
  if (normalize) v /= v.norm();
  return v;
}

double eigenvector_residual(const FockPtr& fock, const std::vector<Complex>& lambda,
                            const Vector& nu) {
  double worst = 0.0;
  for (int i = 1; i <= fock->alphabet_size(); ++i) {
    const Operator Li = creation_left(fock, 1, Word{{i}});
    worst = std::max(worst, (Li.mat.adjoint() * nu - lambda[i - 1] * nu).norm());
  }
  return worst;
}

}  // namespace focklab
