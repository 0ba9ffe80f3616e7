#include "fraclift/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "fraclift/errors.hpp"

namespace fraclift {

namespace {

// Kronrod abscissae on [0, 1); the odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980162806, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double lo, hi;
  double value, error, resabs;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const std::function<double(double)>& g, double t) {
  const double v = g(t);
  if (!std::isfinite(v))
    throw QuadratureError("integrand is not finite at t = " + std::to_string(t));
  return v;
}

Panel qk21(const std::function<double(double)>& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked(g, center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(g, center - dx);
    f2[j] = checked(g, center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double ah = std::abs(half);
  resk *= half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  return {lo, hi, resk, err, resabs};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double lo,
                                    double hi, double abs_tol, double rel_tol,
                                    int max_subdivisions) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw QuadratureError("quadrature tolerances must be positive");
  if (lo == hi) return {0.0, 0.0, 0};

  std::priority_queue<Panel> panels;
  const Panel first = qk21(g, lo, hi);
  panels.push(first);
  double value = first.value;
  double error = first.error;
  double resabs = first.resabs;

  auto target = [&] {
    return std::max({abs_tol, rel_tol * std::abs(value), 100.0 * kEps * resabs});
  };

  int count = 1;
  while (error > target()) {
    if (count >= max_subdivisions)
      throw QuadratureError("quadrature did not converge in " +
                            std::to_string(max_subdivisions) +
                            " subdivisions (error estimate " + std::to_string(error) + ")");
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= std::min(worst.lo, worst.hi) || mid >= std::max(worst.lo, worst.hi))
      throw QuadratureError("quadrature panel collapsed near t = " + std::to_string(mid));
    panels.pop();
    const Panel left = qk21(g, worst.lo, mid);
    const Panel right = qk21(g, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  // Re-sum to shed the drift of the running updates.
  double total = 0.0, total_err = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& a, const Panel& b) { return std::abs(a.value) < std::abs(b.value); });
  for (const auto& p : all) {
    total += p.value;
    total_err += p.error;
  }
  return {total, total_err, count};
}

} // namespace fraclift
