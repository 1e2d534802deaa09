#include "einwave/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "einwave/errors.hpp"

namespace einwave::numerics {
namespace {

// Kronrod abscissae (positive half, descending) and weights; Gauss weights
// belong to the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

double gauss_kronrod15(const Integrand& f, double a, double b, double& err) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (resabs > std::numeric_limits<double>::min() / round) err = std::max(round, err);
  return result;
}

QuadratureOutcome integrate(const Integrand& f, double a, double b,
                            const QuadratureOptions& opts) {
  QuadratureOutcome out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Panel> heap;
  double err = 0.0;
  const double v = gauss_kronrod15(f, a, b, err);
  heap.push({a, b, v, err});
  out.evaluations = 15;
  double total = v;
  double total_err = err;
  auto done = [&] {
    return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };
  while (!done() && heap.size() < opts.max_intervals) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) break;
    heap.pop();
    double e1 = 0.0;
    double e2 = 0.0;
    const double v1 = gauss_kronrod15(f, worst.a, mid, e1);
    const double v2 = gauss_kronrod15(f, mid, worst.b, e2);
    out.evaluations += 30;
    heap.push({worst.a, mid, v1, e1});
    heap.push({mid, worst.b, v2, e2});
    total += v1 + v2 - worst.value;
    total_err += e1 + e2 - worst.error;
  }
  // Re-sum from the panels so the running update does not accumulate drift.
  out.intervals = heap.size();
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  total = 0.0;
  total_err = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    total_err += p.error;
  }
  out.value = total;
  out.error = total_err;
  out.converged = done();
  return out;
}

QuadratureOutcome integrate_log_left(const Integrand& f, double a, double b,
                                     const QuadratureOptions& opts) {
  if (!(a > 0.0) || !(b >= a)) {
    std::ostringstream msg;
    msg << "integrate_log_left needs 0 < a <= b, got a=" << a << " b=" << b;
    throw PreconditionError(msg.str());
  }
  const auto g = [&f](double w) {
    const double s = std::exp(-w);
    return f(s) * s;
  };
  return integrate(g, -std::log(b), -std::log(a), opts);
}

double require_converged(const QuadratureOutcome& out, const std::string& what) {
  if (!out.converged) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "quadrature did not converge (" << what << "): value=" << out.value
        << " error=" << out.error << " intervals=" << out.intervals
        << " evaluations=" << out.evaluations;
    throw QuadratureError(msg.str());
  }
  return out.value;
}

}  // namespace einwave::numerics
