#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

/// Tolerances for the adaptive integrator. The target is
///   |error| <= max(rel_tol * |integral|, abs_tol)
struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Column 0: abscissa, column 1: Gauss weight, column 2: Kronrod weight.
// Node 0 is the center; the others are mirrored in +/- pairs.
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

// One Gauss-Kronrod 7-15 panel with the QUADPACK error sharpening.
template <class Func>
double gk15(const Func& f, double a, double b, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fp[8], fm[8];
  fp[0] = f(mid);
  fm[0] = 0.0;
  double g7 = kG7K15[0][1] * fp[0];
  double k15 = kG7K15[0][2] * fp[0];
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kG7K15[i][0];
    fp[i] = f(mid + dx);
    fm[i] = f(mid - dx);
    g7 += kG7K15[i][1] * (fp[i] + fm[i]);
    k15 += kG7K15[i][2] * (fp[i] + fm[i]);
  }
  g7 *= half;
  k15 *= half;

  const double mean = k15 / (b - a);
  double resasc = kG7K15[0][2] * std::abs(fp[0] - mean);
  for (int i = 1; i < 8; ++i)
    resasc += kG7K15[i][2] * (std::abs(fp[i] - mean) + std::abs(fm[i] - mean));
  resasc *= std::abs(half);

  err = std::abs(k15 - g7);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return k15;
}

struct Interval {
  double a, b, value, error;
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// error meets the tolerance; throws QuadratureFailure when max_subdivisions
/// is exhausted first.
template <class Func>
double integrate(const Func& f, double a, double b, const QuadratureSettings& q) {
  if (!(q.rel_tol > 0.0)) throw std::invalid_argument("quadrature rel_tol must be > 0");
  if (!(q.abs_tol >= 0.0)) throw std::invalid_argument("quadrature abs_tol must be >= 0");
  if (q.max_subdivisions < 1) throw std::invalid_argument("quadrature max_subdivisions must be >= 1");
  if (a == b) return 0.0;

  std::vector<detail::Interval> segs;
  segs.reserve(64);
  detail::Interval whole{a, b, 0.0, 0.0};
  whole.value = detail::gk15(f, a, b, whole.error);
  segs.push_back(whole);

  const auto sums = [&segs](double& total, double& total_err) {
    total = 0.0;
    total_err = 0.0;
    for (const detail::Interval& s : segs) {
      total += s.value;
      total_err += s.error;
    }
  };

  for (int n = 1;; ++n) {
    double total, total_err;
    sums(total, total_err);
    if (total_err <= std::max(q.rel_tol * std::abs(total), q.abs_tol)) return total;
    if (n >= q.max_subdivisions) break;

    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;

    const detail::Interval seg = segs[worst];
    const double mid = 0.5 * (seg.a + seg.b);
    if (mid <= std::min(seg.a, seg.b) || mid >= std::max(seg.a, seg.b)) {
      raise(ErrorCode::QuadratureFailure, "interval underflow before tolerance was reached");
    }
    detail::Interval left{seg.a, mid, 0.0, 0.0};
    detail::Interval right{mid, seg.b, 0.0, 0.0};
    left.value = detail::gk15(f, left.a, left.b, left.error);
    right.value = detail::gk15(f, right.a, right.b, right.error);

    segs[worst] = left;
    segs.push_back(right);
  }
  raise(ErrorCode::QuadratureFailure,
        "tolerance not reached within " + std::to_string(q.max_subdivisions) + " subdivisions");
}

}  // namespace hetnet
