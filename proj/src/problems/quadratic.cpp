#include <algorithm>
#include <cmath>

#include "minimax/errors.hpp"
#include "minimax/problems.hpp"

namespace minimax {

namespace {

Mat gaussian(int rows, int cols, Rng& rng) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  }
  return m;
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

// Subtract the weighted mean so that sum_k p_k E_k = 0.
template <typename T>
void center(std::vector<T>& items, const std::vector<double>& p) {
  T mean = items[0] * 0.0;
  for (std::size_t k = 0; k < items.size(); ++k) mean += p[k] * items[k];
  for (auto& it : items) it -= mean;
}

}  // namespace

QuadraticProblem::QuadraticProblem(const QuadraticConfig& cfg, std::vector<double> weights)
    : Problem(weights.empty() ? uniform_weights(cfg.num_agents) : std::move(weights)),
      m1_(cfg.primal_dim),
      m2_(cfg.dual_dim),
      gamma_(cfg.gamma),
      noise_(cfg.noise) {
  if (!(cfg.gamma > 0.0)) throw InvalidArgument("quadratic problem needs gamma > 0");
  if (m1_ < 1 || m2_ < 1) throw InvalidArgument("quadratic problem dimensions must be positive");
  if (num_agents() != cfg.num_agents) throw InvalidArgument("weight count does not match num_agents");
  if (cfg.noise < 0.0 || cfg.spread < 0.0) throw InvalidArgument("noise and spread must be nonnegative");
  if (cfg.q_min < 0.0 || cfg.q_max < cfg.q_min) throw InvalidArgument("need 0 <= q_min <= q_max");

  Rng rng(cfg.seed);
  const int K = num_agents();

  if (cfg.q_bar) {
    q_bar_ = *cfg.q_bar;
  } else {
    Eigen::HouseholderQR<Mat> qr(gaussian(m1_, m1_, rng));
    const Mat u = qr.householderQ();
    Vec eig(m1_);
    for (int i = 0; i < m1_; ++i) {
      eig(i) = m1_ == 1 ? cfg.q_max : cfg.q_min + (cfg.q_max - cfg.q_min) * i / (m1_ - 1);
    }
    q_bar_ = u * eig.asDiagonal() * u.transpose();
    q_bar_ = 0.5 * (q_bar_ + q_bar_.transpose()).eval();
  }
  b_bar_ = cfg.b_bar ? *cfg.b_bar : Mat(cfg.coupling * gaussian(m1_, m2_, rng) / std::sqrt(m2_));
  c_bar_ = cfg.c_bar ? *cfg.c_bar : Vec(cfg.offset * gaussian(m1_, 1, rng) / std::sqrt(m1_));
  d_bar_ = cfg.d_bar ? *cfg.d_bar : Vec(cfg.offset * gaussian(m2_, 1, rng) / std::sqrt(m2_));
  if (q_bar_.rows() != m1_ || q_bar_.cols() != m1_ || b_bar_.rows() != m1_ ||
      b_bar_.cols() != m2_ || c_bar_.size() != m1_ || d_bar_.size() != m2_) {
    throw InvalidArgument("explicit quadratic blocks have the wrong shape");
  }

  const double off = cfg.offset_spread.value_or(cfg.spread);
  std::vector<Mat> eq(K), eb(K);
  std::vector<Vec> ec(K), ed(K);
  for (int k = 0; k < K; ++k) {
    Mat r = gaussian(m1_, m1_, rng);
    eq[k] = cfg.spread * 0.5 * (r + r.transpose()) / std::sqrt(m1_);
    eb[k] = cfg.spread * gaussian(m1_, m2_, rng) / std::sqrt(m2_);
    ec[k] = off * gaussian(m1_, 1, rng) / std::sqrt(m1_);
    ed[k] = off * gaussian(m2_, 1, rng) / std::sqrt(m2_);
  }
  if (K > 1) {
    center(eq, weights_);
    center(eb, weights_);
    center(ec, weights_);
    center(ed, weights_);
  } else {
    eq[0].setZero();
    eb[0].setZero();
    ec[0].setZero();
    ed[0].setZero();
  }
  q_.resize(K);
  b_.resize(K);
  c_.resize(K);
  d_.resize(K);
  for (int k = 0; k < K; ++k) {
    q_[k] = q_bar_ + eq[k];
    b_[k] = b_bar_ + eb[k];
    c_[k] = c_bar_ + ec[k];
    d_[k] = d_bar_ + ed[k];
  }

  double lf = gamma_;
  double g = 0.0;
  for (int k = 0; k < K; ++k) {
    lf = std::max({lf, spectral_norm(q_[k]), spectral_norm(b_[k])});
    const double db = spectral_norm(b_[k] - b_bar_);
    g = std::max({g, spectral_norm(q_[k] - q_bar_) + db + (c_[k] - c_bar_).norm(),
                  db + (d_[k] - d_bar_).norm()});
  }
  constants_.lipschitz = lf;
  constants_.pl = gamma_;
  constants_.noise.assign(K, noise_);
  constants_.heterogeneity = g;
}

Sample QuadraticProblem::draw_sample(int, SampleTag tag, Rng& rng) const {
  const int n = tag == SampleTag::kPrimal ? m1_ : m2_;
  Sample s;
  s.values.resize(n);
  for (auto& v : s.values) v = rng.normal();
  return s;
}

Vec QuadraticProblem::true_grad_x(int k, const Vec& x, const Vec& y) const {
  return q_[k] * x + b_[k] * y + c_[k];
}

Vec QuadraticProblem::true_grad_y(int k, const Vec& x, const Vec& y) const {
  return b_[k].transpose() * x - gamma_ * y + d_[k];
}

Vec QuadraticProblem::stoch_grad_x(int k, const Vec& x, const Vec& y, const Sample& s) const {
  if (static_cast<int>(s.values.size()) != m1_) throw InvalidArgument("primal sample has wrong size");
  const double scale = std::sqrt(noise_ / m1_);
  return true_grad_x(k, x, y) + scale * Eigen::Map<const Vec>(s.values.data(), m1_);
}

Vec QuadraticProblem::stoch_grad_y(int k, const Vec& x, const Vec& y, const Sample& s) const {
  if (static_cast<int>(s.values.size()) != m2_) throw InvalidArgument("dual sample has wrong size");
  const double scale = std::sqrt(noise_ / m2_);
  return true_grad_y(k, x, y) + scale * Eigen::Map<const Vec>(s.values.data(), m2_);
}

double QuadraticProblem::local_value(int k, const Vec& x, const Vec& y) const {
  return 0.5 * x.dot(q_[k] * x) + x.dot(b_[k] * y) - 0.5 * gamma_ * y.squaredNorm() +
         c_[k].dot(x) + d_[k].dot(y);
}

Vec QuadraticProblem::global_grad_x(const Vec& x, const Vec& y) const {
  return q_bar_ * x + b_bar_ * y + c_bar_;
}

Vec QuadraticProblem::global_grad_y(const Vec& x, const Vec& y) const {
  return b_bar_.transpose() * x - gamma_ * y + d_bar_;
}

double QuadraticProblem::value(const Vec& x, const Vec& y) const {
  return 0.5 * x.dot(q_bar_ * x) + x.dot(b_bar_ * y) - 0.5 * gamma_ * y.squaredNorm() +
         c_bar_.dot(x) + d_bar_.dot(y);
}

std::optional<InnerMax> QuadraticProblem::inner_max(const Vec& x) const {
  InnerMax m;
  m.argmax = (b_bar_.transpose() * x + d_bar_) / gamma_;
  m.value = value(x, m.argmax);
  return m;
}

Vec QuadraticProblem::primal_gradient(const Vec& x) const {
  const Vec y = (b_bar_.transpose() * x + d_bar_) / gamma_;
  return global_grad_x(x, y);
}

std::shared_ptr<const QuadraticProblem> quadratic_pl_problem(const QuadraticConfig& cfg,
                                                             std::vector<double> weights) {
  return std::make_shared<const QuadraticProblem>(cfg, std::move(weights));
}

}  // namespace minimax
