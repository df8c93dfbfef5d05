#include "jetred/minkowski_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jetred {

SpatialEigen eigen_spatial(const Eigen::MatrixXd& w) {
  const Eigen::Index m = w.rows();
  if (w.cols() != m) throw ShapeError("eigen_spatial: matrix must be square");
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff()))
    throw DomainError("eigen_spatial: matrix is not symmetric");

  Eigen::MatrixXd a = 0.5 * (w + w.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(m, m);
  const double norm = a.norm();

  auto off_diagonal = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal() <= 1e-12 * norm) break;
    for (Eigen::Index p = 0; p < m - 1; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  SpatialEigen out{Eigen::VectorXd(m), Eigen::MatrixXd(m, m)};
  for (Eigen::Index i = 0; i < m; ++i) {
    out.values(i) = a(order[i], order[i]);
    out.frame.col(i) = v.col(order[i]);
  }
  return out;
}

CanonicalJet canonicalize(const ScalarJet2<double>& j) {
  CanonicalJet c;
  c.n = j.dimension();
  c.w_tilde = reduced_spatial_block(j);
  const SpatialEigen e = eigen_spatial(c.w_tilde);
  c.eigenvalues = e.values;
  c.frame = e.frame;
  return c;
}

std::vector<double> traces(const CanonicalJet& c) { return traces<double>(c.w_tilde); }

std::vector<double> elementary_from_traces(const std::vector<double>& p) {
  // k sigma_k = sum_{i=1..k} (-1)^{i-1} sigma_{k-i} p_i
  std::vector<double> sigma(p.size() + 1, 0.0);
  sigma[0] = 1.0;
  for (std::size_t k = 1; k <= p.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += (i % 2 == 1 ? 1.0 : -1.0) * sigma[k - i] * p[i - 1];
    sigma[k] = s / static_cast<double>(k);
  }
  return {sigma.begin() + 1, sigma.end()};
}

std::vector<double> elementary_from_roots(const Eigen::VectorXd& roots) {
  // coefficients of prod (1 + r t)
  std::vector<double> e(static_cast<std::size_t>(roots.size()) + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    for (std::size_t k = static_cast<std::size_t>(i) + 1; k >= 1; --k) e[k] += roots(i) * e[k - 1];
  return {e.begin() + 1, e.end()};
}

InvariantReport invariant_report(const ScalarJet2<double>& j) {
  const CanonicalJet c = canonicalize(j);
  InvariantReport r;
  r.n = c.n;
  r.S = traces(c);
  r.sigma = elementary_from_traces(r.S);
  r.eigenvalues = c.eigenvalues;

  const std::vector<double> sigma_roots = elementary_from_roots(c.eigenvalues);
  for (std::size_t k = 0; k < r.sigma.size(); ++k)
    r.newton_residual = std::max(r.newton_residual, relative_residual(r.sigma[k], sigma_roots[k]));

  if (c.n == 4) {
    r.D_closed = {D1_closed(j), D2_closed(j), D3_closed(j)};
    for (std::size_t k = 0; k < 3; ++k) {
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
      r.closed_form_residuals.push_back(relative_residual(r.S[k], sign * r.D_closed[k]));
    }
  } else {
    r.D_closed = {Dn_closed(j)};
    r.closed_form_residuals.push_back(relative_residual(r.S[0], -r.D_closed[0]));
  }
  return r;
}

}  // namespace jetred
