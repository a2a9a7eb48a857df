#include "hardylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

#include "hardylab/error.hpp"

namespace hardylab::quad {

namespace {

Rule compute_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// QUADPACK G7/K15 abscissae and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece kronrod15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return Piece{a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(compute_gauss_legendre(n));
  return *slot;
}

double gauss_fixed(const Integrand& f, double a, double b, int n) {
  const Rule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return sum * h;
}

double gauss_composite(const Integrand& f, std::span<const double> breakpoints,
                       int n) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    sum += gauss_fixed(f, breakpoints[i], breakpoints[i + 1], n);
  }
  return sum;
}

Estimate adaptive(const Integrand& f, double a, double b, const Tolerance& tol) {
  const double bp[2] = {a, b};
  return adaptive(f, std::span<const double>(bp, 2), tol);
}

Estimate adaptive(const Integrand& f, std::span<const double> breakpoints,
                  const Tolerance& tol) {
  Estimate est;
  if (breakpoints.size() < 2) return est;
  std::priority_queue<Piece> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    Piece p = kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    est.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    const double target = std::max(tol.abs, tol.rel * std::abs(total));
    if (total_err <= target) break;
    if (intervals >= tol.max_intervals) {
      est.converged = false;
      break;
    }
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      est.converged = false;
      break;
    }
    heap.pop();
    Piece left = kronrod15(f, worst.a, mid);
    Piece right = kronrod15(f, mid, worst.b);
    est.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated update rounding.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  est.value = sum;
  est.error = err;
  if (!std::isfinite(sum)) est.converged = false;
  return est;
}

namespace {

// Sum over nodes t = k*h for the given k-set.
template <class KRange>
double tanh_sinh_sum(const EndpointIntegrand& f, double a, double b, double h,
                     KRange&& ks, double min_distance) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int k : ks) {
    const double t = k * h;
    if (k == 0) {
      sum += half * std::numbers::pi / 2.0 * f(mid, half, half);
      continue;
    }
    for (int sign : {1, -1}) {
      const double tt = sign * t;
      const double u = std::numbers::pi / 2.0 * std::sinh(std::abs(tt));
      const double e = std::exp(-2.0 * u);
      const double rel_dist = 2.0 * e / (1.0 + e);
      if (rel_dist < min_distance) continue;
      const double dist = half * rel_dist;
      const double weight =
          half * std::numbers::pi / 2.0 * std::cosh(tt) * 4.0 * e / ((1.0 + e) * (1.0 + e));
      double value;
      if (sign > 0) {
        value = f(b - dist, 2.0 * half - dist, dist);
      } else {
        value = f(a + dist, dist, 2.0 * half - dist);
      }
      sum += weight * value;
    }
  }
  return sum;
}

int tanh_sinh_kmax(double h, double min_distance) {
  // Smallest t with relative distance below min_distance.
  const double u_max = 0.5 * std::log(2.0 / min_distance) + 1.0;
  const double t_max = std::asinh(u_max * 2.0 / std::numbers::pi);
  return static_cast<int>(std::ceil(t_max / h));
}

}  // namespace

double tanh_sinh_at_level(const EndpointIntegrand& f, double a, double b, int level,
                          double min_distance) {
  const double h = std::ldexp(1.0, -level);
  const int kmax = tanh_sinh_kmax(h, min_distance);
  std::vector<int> ks(kmax + 1);
  for (int k = 0; k <= kmax; ++k) ks[k] = k;
  return h * tanh_sinh_sum(f, a, b, h, ks, min_distance);
}

Estimate tanh_sinh(const EndpointIntegrand& f, double a, double b,
                   const TanhSinhOptions& opt) {
  Estimate est;
  // Level 0 with h = 1, then add odd multiples of each halved step.
  double h = 1.0;
  int kmax = tanh_sinh_kmax(h, opt.min_distance);
  std::vector<int> ks(kmax + 1);
  for (int k = 0; k <= kmax; ++k) ks[k] = k;
  double raw = tanh_sinh_sum(f, a, b, h, ks, opt.min_distance);
  double previous = raw * h;
  est.evaluations = 2 * kmax + 1;
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    kmax = tanh_sinh_kmax(h, opt.min_distance);
    std::vector<int> odd;
    for (int k = 1; k <= kmax; k += 2) odd.push_back(k);
    raw += tanh_sinh_sum(f, a, b, h, odd, opt.min_distance);
    est.evaluations += 2 * static_cast<int>(odd.size());
    const double current = raw * h;
    est.value = current;
    est.error = std::abs(current - previous);
    est.level = level;
    if (level >= opt.min_level && est.error <= opt.rel * std::abs(current)) {
      est.converged = true;
      return est;
    }
    previous = current;
  }
  est.converged = est.error <= opt.rel * std::abs(est.value);
  return est;
}

std::vector<double> geometric_breakpoints(double a, double b, double ratio) {
  if (!(a > 0.0) || !(b > a) || !(ratio > 1.0)) {
    fail(ErrorCode::InvalidArgument, "geometric_breakpoints needs 0 < a < b, ratio > 1");
  }
  const int n = std::max(1, static_cast<int>(std::ceil(std::log(b / a) / std::log(ratio))));
  std::vector<double> bp(n + 1);
  const double step = std::log(b / a) / n;
  bp[0] = a;
  for (int i = 1; i < n; ++i) bp[i] = a * std::exp(step * i);
  bp[n] = b;
  return bp;
}

}  // namespace hardylab::quad
