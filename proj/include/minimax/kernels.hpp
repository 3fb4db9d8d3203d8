#pragma once

#include <span>
#include <vector>

#include "minimax/linalg.hpp"
#include "minimax/topology.hpp"

// Data-parallel inner loops. Each kernel has a plain serial reference and an
// OpenMP version. The OpenMP reductions split the index range into a fixed
// number of chunks that does not depend on the thread count, so their result
// is bitwise reproducible for any OMP_NUM_THREADS; it may differ from the
// serial reference in the last few ulps because the summation order differs.
namespace minimax::kernels {

inline constexpr int kReductionChunks = 256;

struct MomentSums {
  double first = 0.0;   // sum G
  double second = 0.0;  // sum G^2
  std::size_t count = 0;
};

struct GradMomentSums {
  Vec first;   // sum dG/dx
  Vec cross;   // sum G dG/dx
  std::size_t count = 0;
};

MomentSums generator_moments_serial(const Vec& x, std::span<const double> latents);
MomentSums generator_moments_parallel(const Vec& x, std::span<const double> latents);

GradMomentSums generator_grad_moments_serial(const Vec& x, std::span<const double> latents);
GradMomentSums generator_grad_moments_parallel(const Vec& x, std::span<const double> latents);

// Blockwise combination out[:, k] = sum_l a(l, k) in[:, l], summed over l in
// increasing order. The parallel version splits over agents k; since each
// column is produced by one thread in the same order, both versions agree
// bitwise.
void combine_serial(const CombinationMatrix& a, const Mat& in, Mat& out);
void combine_parallel(const CombinationMatrix& a, const Mat& in, Mat& out);

// Squared distance of every column to the weighted centroid, summed.
double network_deviation_serial(const Mat& columns, std::span<const double> weights, Vec* centroid);

}  // namespace minimax::kernels
