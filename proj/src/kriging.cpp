#include "coassim/kriging.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>

namespace coassim {

double matern_cov(double d, const MaternParams& p) {
  if (d < 0) throw std::invalid_argument("matern_cov: negative distance");
  const double t = std::sqrt(5.0) * d / p.rho;
  return p.sigma2 * (1.0 + t + t * t / 3.0) * std::exp(-t);
}

double cell_distance(const Grid3D& g, int i, int j) {
  const CellIndex a = g.unflatten(i), b = g.unflatten(j);
  const double la1 = g.lat_of_row(a.iy) * kDegToRad;
  const double la2 = g.lat_of_row(b.iy) * kDegToRad;
  const double dla = la2 - la1;
  const double dlo = (g.lon_of_col(b.ix) - g.lon_of_col(a.ix)) * kDegToRad;
  const double h = std::sin(dla / 2) * std::sin(dla / 2) +
                   std::cos(la1) * std::cos(la2) * std::sin(dlo / 2) *
                       std::sin(dlo / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section minimization on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double xtol) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

struct RhoProfile {
  double nll = 0, log_sigma2 = 0;
};

}  // namespace

MleFit mle_fit(const Grid3D& g, const std::vector<Observation>& snapshot,
               double nugget, const MleOptions& opts, std::uint64_t seed) {
  const int n = static_cast<int>(snapshot.size());
  if (n < 10)
    throw std::invalid_argument("mle_fit: need at least 10 observations");
  const double lr_min =
      opts.log_rho_min != 0 ? opts.log_rho_min : std::log(10e3);
  const double lr_max =
      opts.log_rho_max != 0 ? opts.log_rho_max : std::log(5000e3);

  Eigen::MatrixXd dist(n, n);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = snapshot[i].value;
    for (int j = 0; j <= i; ++j)
      dist(i, j) = dist(j, i) =
          cell_distance(g, snapshot[i].cell, snapshot[j].cell);
  }

  // For a fixed range, diagonalizing the correlation matrix makes the
  // variance line search O(n) per evaluation.
  auto profile_rho = [&](double log_rho) -> RhoProfile {
    MaternParams unit{1.0, std::exp(log_rho), 0.0};
    Eigen::MatrixXd corr(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j)
        corr(i, j) = corr(j, i) = matern_cov(dist(i, j), unit);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr);
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::VectorXd yt = es.eigenvectors().transpose() * y;
    const Eigen::VectorXd ot =
        es.eigenvectors().transpose() * Eigen::VectorXd::Ones(n);
    auto nll_at = [&](double log_s2) {
      const double s2 = std::exp(log_s2);
      double ldet = 0, oo = 0, oy = 0;
      for (int i = 0; i < n; ++i) {
        const double d = std::max(s2 * lam(i) + nugget, 1e-300);
        ldet += std::log(d);
        oo += ot(i) * ot(i) / d;
        oy += ot(i) * yt(i) / d;
      }
      const double mu = oy / oo;
      double quad = 0;
      for (int i = 0; i < n; ++i) {
        const double d = std::max(s2 * lam(i) + nugget, 1e-300);
        const double r = yt(i) - mu * ot(i);
        quad += r * r / d;
      }
      return 0.5 * (ldet + quad);
    };
    const double ls2 =
        golden_min(nll_at, opts.log_sigma2_min, opts.log_sigma2_max, 1e-7);
    return {nll_at(ls2), ls2};
  };

  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull);
  double best_nll = std::numeric_limits<double>::infinity();
  double best_lr = lr_min, best_ls2 = 0;
  const int starts = std::max(1, opts.multistarts);
  for (int s = 0; s < starts; ++s) {
    // Each start searches one window of the range axis; jitter the window
    // edges a little so repeated fits do not share degenerate brackets.
    const double w = (lr_max - lr_min) / starts;
    std::uniform_real_distribution<double> jit(-0.05 * w, 0.05 * w);
    const double lo = std::max(lr_min, lr_min + s * w + jit(rng));
    const double hi = std::min(lr_max, lr_min + (s + 1) * w + jit(rng));
    RhoProfile rp;
    const double lr = golden_min(
        [&](double x) {
          rp = profile_rho(x);
          return rp.nll;
        },
        lo, hi, 1e-3);
    rp = profile_rho(lr);
    if (rp.nll < best_nll - opts.tol ||
        (rp.nll < best_nll && lr < best_lr)) {
      best_nll = rp.nll;
      best_lr = lr;
      best_ls2 = rp.log_sigma2;
    }
  }

  MleFit fit;
  fit.params = {std::exp(best_ls2), std::exp(best_lr), nugget};
  fit.loglik = -best_nll;
  fit.degenerate = best_ls2 < opts.log_sigma2_min + 1e-3 ||
                   best_ls2 > opts.log_sigma2_max - 1e-3;
  return fit;
}

KrigeResult krige_predict(const Grid3D& g,
                          const std::vector<Observation>& snapshot,
                          const MaternParams& p) {
  const int n = static_cast<int>(snapshot.size());
  const int nt = g.n_cells();
  Eigen::MatrixXd K(n, n);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = snapshot[i].value;
    for (int j = 0; j <= i; ++j)
      K(i, j) = K(j, i) =
          matern_cov(cell_distance(g, snapshot[i].cell, snapshot[j].cell), p);
    K(i, i) += p.nugget;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("krige_predict: covariance not positive definite");
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd Ki1 = llt.solve(ones);
  const double denom = ones.dot(Ki1);
  const double mu = y.dot(Ki1) / denom;
  const Eigen::VectorXd alpha = llt.solve(y - mu * ones);

  KrigeResult out;
  out.mean.resize(nt);
  out.variance.resize(nt);
  Eigen::VectorXd kt(n);
  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < n; ++i)
      kt(i) = matern_cov(cell_distance(g, t, snapshot[i].cell), p);
    const Eigen::VectorXd Kik = llt.solve(kt);
    const double lagrange = 1.0 - ones.dot(Kik);
    out.mean[t] = mu + kt.dot(alpha);
    out.variance[t] = std::max(
        0.0, p.sigma2 - kt.dot(Kik) + lagrange * lagrange / denom);
  }
  return out;
}

}  // namespace coassim
