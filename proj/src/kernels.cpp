#include "minimax/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/errors.hpp"
#include "minimax/problems.hpp"

namespace minimax::kernels {

namespace {

struct Range {
  std::size_t begin, end;
};

Range chunk_range(std::size_t n, int chunk) {
  const std::size_t per = (n + kReductionChunks - 1) / kReductionChunks;
  const std::size_t b = std::min(n, per * static_cast<std::size_t>(chunk));
  return {b, std::min(n, b + per)};
}

void accumulate_grad(const Vec& x, double z, Vec& grad, Vec& first, Vec& cross) {
  const double g = generator_output(x, z, grad);
  first += grad;
  cross += g * grad;
}

}  // namespace

MomentSums generator_moments_serial(const Vec& x, std::span<const double> latents) {
  MomentSums s;
  for (double z : latents) {
    const double g = generator_output(x, z);
    s.first += g;
    s.second += g * g;
  }
  s.count = latents.size();
  return s;
}

MomentSums generator_moments_parallel(const Vec& x, std::span<const double> latents) {
  std::vector<double> first(kReductionChunks, 0.0), second(kReductionChunks, 0.0);
  const std::size_t n = latents.size();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < kReductionChunks; ++c) {
    const Range r = chunk_range(n, c);
    double f = 0.0, s = 0.0;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      const double g = generator_output(x, latents[i]);
      f += g;
      s += g * g;
    }
    first[c] = f;
    second[c] = s;
  }
  MomentSums out;
  for (int c = 0; c < kReductionChunks; ++c) {
    out.first += first[c];
    out.second += second[c];
  }
  out.count = n;
  return out;
}

GradMomentSums generator_grad_moments_serial(const Vec& x, std::span<const double> latents) {
  GradMomentSums s{Vec::Zero(x.size()), Vec::Zero(x.size()), latents.size()};
  Vec grad(x.size());
  for (double z : latents) accumulate_grad(x, z, grad, s.first, s.cross);
  return s;
}

GradMomentSums generator_grad_moments_parallel(const Vec& x, std::span<const double> latents) {
  const auto d = x.size();
  std::vector<Vec> first(kReductionChunks, Vec::Zero(d)), cross(kReductionChunks, Vec::Zero(d));
  const std::size_t n = latents.size();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < kReductionChunks; ++c) {
    const Range r = chunk_range(n, c);
    Vec grad(d);
    for (std::size_t i = r.begin; i < r.end; ++i) accumulate_grad(x, latents[i], grad, first[c], cross[c]);
  }
  GradMomentSums out{Vec::Zero(d), Vec::Zero(d), n};
  for (int c = 0; c < kReductionChunks; ++c) {
    out.first += first[c];
    out.cross += cross[c];
  }
  return out;
}

void combine_serial(const CombinationMatrix& a, const Mat& in, Mat& out) {
  const int n = a.size();
  if (in.cols() != n) throw InvalidArgument("combine: column count must match the matrix");
  out.resize(in.rows(), n);
  for (int k = 0; k < n; ++k) {
    out.col(k).setZero();
    for (int l = 0; l < n; ++l) {
      const double w = a(l, k);
      if (w != 0.0) out.col(k) += w * in.col(l);
    }
  }
}

void combine_parallel(const CombinationMatrix& a, const Mat& in, Mat& out) {
  const int n = a.size();
  if (in.cols() != n) throw InvalidArgument("combine: column count must match the matrix");
  out.resize(in.rows(), n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    out.col(k).setZero();
    for (int l = 0; l < n; ++l) {
      const double w = a(l, k);
      if (w != 0.0) out.col(k) += w * in.col(l);
    }
  }
}

double network_deviation_serial(const Mat& columns, std::span<const double> weights, Vec* centroid) {
  Vec c = Vec::Zero(columns.rows());
  for (Eigen::Index k = 0; k < columns.cols(); ++k) c += weights[k] * columns.col(k);
  double dev = 0.0;
  for (Eigen::Index k = 0; k < columns.cols(); ++k) dev += (columns.col(k) - c).squaredNorm();
  if (centroid != nullptr) *centroid = std::move(c);
  return dev;
}

}  // namespace minimax::kernels
