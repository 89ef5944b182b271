#pragma once
// Adaptive Gauss-Kronrod quadrature (Boost.Math) over graded partitions,
// plus a log-space variant for integrands that overflow double.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hbn::quad {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;

  bool converged(double rel_tol) const {
    return std::isfinite(value) && error <= std::max(rel_tol * std::abs(value), 1e-300) * 10.0;
  }
};

inline constexpr int kMaxIntervals = 600;

/// Globally adaptive Gauss-Kronrod over a partition (31 point rule from
/// Boost.Math): the subinterval with the largest error estimate is bisected
/// until the summed error meets rel_tol, hits the roundoff floor, or the
/// interval budget runs out.
template <class F>
QuadResult integrate_pieces(F&& f, std::span<const double> breaks, double rel_tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Piece {
    double a, b, value, error, l1;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  auto eval = [&](double lo, double hi) {
    double err = 0.0, l1 = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    // Boost reports the non-adaptive error on the reference interval [-1, 1].
    return Piece{lo, hi, v, err * 0.5 * (hi - lo), l1};
  };
  std::vector<Piece> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) heap.push_back(eval(breaks[i], breaks[i + 1]));
  if (heap.empty()) return {};
  std::make_heap(heap.begin(), heap.end());
  auto totals = [&]() {
    CompensatedSum v, e, l;
    for (const auto& p : heap) {
      v.add(p.value);
      e.add(p.error);
      l.add(p.l1);
    }
    return std::array<double, 3>{v.value(), e.value(), l.value()};
  };
  auto t = totals();
  const std::size_t budget = std::max<std::size_t>(kMaxIntervals, 4 * heap.size());
  while (heap.size() < budget) {
    if (!std::isfinite(t[0])) break;
    if (t[1] <= rel_tol * std::abs(t[0]) || t[1] <= 50.0 * 2.2e-16 * t[2]) break;
    std::pop_heap(heap.begin(), heap.end());
    const Piece worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    heap.push_back(eval(worst.a, mid));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(eval(mid, worst.b));
    std::push_heap(heap.begin(), heap.end());
    t = totals();
  }
  return {t[0], t[1]};
}

template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  const double ends[2] = {a, b};
  return integrate_pieces(f, std::span<const double>(ends, 2), rel_tol);
}

/// Breakpoints for [a, b] refined geometrically (factor 4) towards the
/// endpoints; a zero scale disables grading at that end.
inline std::vector<double> graded_breaks(double a, double b, double scale_at_a, double scale_at_b) {
  std::vector<double> left{a}, right{b};
  const double mid = 0.5 * (a + b);
  const double len = b - a;
  if (scale_at_a > 0.0)
    for (double h = scale_at_a; h < 0.5 * len; h *= 4.0) left.push_back(a + h);
  if (scale_at_b > 0.0)
    for (double h = scale_at_b; h < 0.5 * len; h *= 4.0) right.push_back(b - h);
  std::vector<double> out = left;
  if (out.back() < mid && right.back() > mid) out.push_back(mid);
  for (auto it = right.rbegin(); it != right.rend(); ++it) out.push_back(*it);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// log of the integral of exp(log_f) over the partition; -inf for a zero
/// integral. The offset is the largest log_f seen at breakpoints and
/// midpoints, which keeps exp() in range for peaked integrands.
template <class LogF>
double log_integrate(LogF&& log_f, std::span<const double> breaks, double rel_tol,
                     double* rel_error = nullptr) {
  double offset = -std::numeric_limits<double>::infinity();
  auto probe = [&](double x) {
    const double v = log_f(x);
    if (std::isfinite(v)) offset = std::max(offset, v);
  };
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    probe(breaks[i]);
    if (i + 1 < breaks.size()) probe(0.5 * (breaks[i] + breaks[i + 1]));
  }
  if (!std::isfinite(offset)) offset = 0.0;
  auto scaled = [&](double x) {
    const double v = log_f(x);
    return std::isfinite(v) ? std::exp(v - offset) : 0.0;
  };
  const QuadResult r = integrate_pieces(scaled, breaks, rel_tol);
  if (rel_error) *rel_error = r.value > 0.0 ? r.error / r.value : 0.0;
  if (!(r.value > 0.0)) return -std::numeric_limits<double>::infinity();
  return offset + std::log(r.value);
}

/// log(exp(x) + exp(y)).
inline double log_add(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

}  // namespace hbn::quad
