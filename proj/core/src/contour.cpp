#include "conecalc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conecalc {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Golub-Welsch via Eigen on the Jacobi matrix; exact symmetric rule.
GaussRule gauss_legendre(int n) {
  GaussRule rule;
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    rule.w[i] = 2.0 * v0 * v0;
  }
  return rule;
}

// Kahan-compensated accumulation of complex vectors.
struct CompensatedVector {
  Eigen::VectorXcd sum, comp;
  explicit CompensatedVector(Eigen::Index n)
      : sum(Eigen::VectorXcd::Zero(n)), comp(Eigen::VectorXcd::Zero(n)) {}
  void add(const Eigen::VectorXcd& term) {
    for (Eigen::Index i = 0; i < sum.size(); ++i) {
      const std::complex<double> y = term[i] - comp[i];
      const std::complex<double> t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
    }
  }
};

double distance_to_spectrum(std::complex<double> z) {
  if (z.real() >= 1.0) return std::abs(z.imag());
  return std::abs(z - std::complex<double>(1.0, 0.0));
}

bool is_real_integer(std::complex<double> w) {
  return std::abs(w.imag()) < 1e-13 &&
         std::abs(w.real() - std::round(w.real())) < 1e-12;
}

}  // namespace

double Contour::min_distance_to_spectrum() const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& n : nodes) d = std::min(d, distance_to_spectrum(n.lambda));
  return d;
}

double Contour::tail_bound(std::complex<double> w) const {
  if (!(w.real() < 0.0))
    throw std::domain_error("tail_bound: needs Re w < 0");
  if (is_real_integer(w)) {
    // The power is single-valued, the two rays cancel, and only the
    // eps-mismatch at the truncation survives.
    return 10.0 * epsilon * std::pow(r_max, w.real() - 1.0);
  }
  return std::cosh(kPi * w.imag()) * std::pow(r_max, w.real()) /
         std::max(std::abs(w.real()), 0.05);
}

double recommended_r_max(std::complex<double> w, double tol) {
  if (!(w.real() < 0.0))
    throw std::domain_error("recommended_r_max: needs Re w < 0");
  if (!(tol > 0.0)) throw std::domain_error("recommended_r_max: tol > 0");
  if (is_real_integer(w)) return 1e4;
  const double target =
      tol * std::max(std::abs(w.real()), 0.05) / std::cosh(kPi * w.imag());
  const double r = std::pow(target, 1.0 / w.real());
  return std::clamp(r, 10.0, 1e16);
}

Contour build_contour(double epsilon, double r_max, int nodes_per_decade,
                      ContourShape shape) {
  if (!(epsilon > 0.0) || epsilon >= 0.5)
    throw std::invalid_argument("build_contour: epsilon in (0, 0.5)");
  if (!(r_max > 10.0 * epsilon) || !(r_max >= 1.0))
    throw std::invalid_argument("build_contour: r_max too small");
  if (nodes_per_decade < 4)
    throw std::invalid_argument("build_contour: need >= 4 nodes per decade");

  Contour c;
  c.shape = shape;
  c.epsilon = epsilon;
  c.r_max = r_max;
  c.nodes_per_decade = nodes_per_decade;

  const GaussRule ray_rule = gauss_legendre(nodes_per_decade);
  const GaussRule arc_rule = gauss_legendre(std::max(nodes_per_decade, 16));
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> pref = i / (2.0 * kPi);

  std::vector<ContourNode> upper;  // incoming ray, from |lambda| = R inward

  if (shape == ContourShape::horizontal) {
    // lambda = s + i eps, s in [-R, 0]; decades of |s| in [eps, R] in the
    // variable t = log|s|, plus one linear panel on s in [-eps, 0].
    const int n_dec =
        std::max(1, static_cast<int>(std::ceil(std::log10(r_max / epsilon))));
    const double t_lo = std::log(epsilon), t_hi = std::log(r_max);
    const double dt = (t_hi - t_lo) / n_dec;
    for (int d = n_dec - 1; d >= 0; --d) {  // outermost decade first
      const double a = t_lo + d * dt, b = a + dt;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int q = static_cast<int>(ray_rule.x.size()); q-- > 0;) {
        const double t = mid + half * ray_rule.x[q];  // decreasing |s|
        const double mag = std::exp(t);
        // Traversal s: -R -> 0 carries the measure ds; with s = -e^t this
        // is +e^t dt on ascending-t panels.
        upper.push_back({std::complex<double>(-mag, epsilon),
                         pref * mag * (half * ray_rule.w[q])});
      }
    }
    // s from -eps to 0, linear panel.
    {
      const double a = -epsilon, b = 0.0;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (std::size_t q = 0; q < ray_rule.x.size(); ++q) {
        const double s = mid + half * ray_rule.x[q];
        upper.push_back({std::complex<double>(s, epsilon),
                         pref * (half * ray_rule.w[q])});
      }
    }
  } else {
    // Radial rays t e^{i(pi - delta)}, t in [1, R], delta = asin(eps); the
    // junction at t = 1 continues exactly into the horizontal segment
    // s in [-sqrt(1 - eps^2), 0] at height eps.
    const double delta = std::asin(epsilon);
    const std::complex<double> dir = std::exp(i * (kPi - delta));
    const int n_dec =
        std::max(1, static_cast<int>(std::ceil(std::log10(r_max))));
    const double t_lo = 0.0, t_hi = std::log(r_max);
    const double dt = (t_hi - t_lo) / n_dec;
    for (int d = n_dec - 1; d >= 0; --d) {
      const double a = t_lo + d * dt, b = a + dt;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int q = static_cast<int>(ray_rule.x.size()); q-- > 0;) {
        const double t = mid + half * ray_rule.x[q];
        const double mag = std::exp(t);
        // lambda = mag * dir traversed inward (mag: R -> 1): the oriented
        // measure is dir * d(mag) = -dir e^t dt on ascending-t panels.
        upper.push_back({mag * dir, pref * dir * (-mag) *
                                        (half * ray_rule.w[q])});
      }
    }
    // The junction segment s in [-sqrt(1 - eps^2), 0] at height eps spans
    // three decades of |lambda| where lambda^w can be nearly singular, so it
    // gets the same log-decade panels as the horizontal shape, ending with
    // one linear panel on [-eps, 0].
    {
      const double s_max = std::sqrt(1.0 - epsilon * epsilon);
      const int seg_dec = std::max(
          1, static_cast<int>(std::ceil(std::log10(s_max / epsilon))));
      const double u_lo = std::log(epsilon), u_hi = std::log(s_max);
      const double du = (u_hi - u_lo) / seg_dec;
      for (int d = seg_dec - 1; d >= 0; --d) {
        const double a = u_lo + d * du, b = a + du;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = static_cast<int>(ray_rule.x.size()); q-- > 0;) {
          const double u = mid + half * ray_rule.x[q];
          const double mag = std::exp(u);
          upper.push_back({std::complex<double>(-mag, epsilon),
                           pref * mag * (half * ray_rule.w[q])});
        }
      }
      const double mid = -0.5 * epsilon, half = 0.5 * epsilon;
      for (std::size_t q = 0; q < ray_rule.x.size(); ++q) {
        const double s = mid + half * ray_rule.x[q];
        upper.push_back({std::complex<double>(s, epsilon),
                         pref * (half * ray_rule.w[q])});
      }
    }
  }

  c.nodes = upper;

  // Clockwise semicircle lambda = eps e^{-i theta}, theta in [-pi/2, pi/2]:
  // dlambda = -i eps e^{-i theta} dtheta.
  for (std::size_t q = 0; q < arc_rule.x.size(); ++q) {
    const double theta = 0.5 * kPi * arc_rule.x[q];
    const std::complex<double> lam = epsilon * std::exp(-i * theta);
    c.nodes.push_back(
        {lam, pref * (-i) * lam * (0.5 * kPi * arc_rule.w[q])});
  }

  // Outgoing ray: exact conjugates of the incoming one, reversed order.
  for (auto it = upper.rbegin(); it != upper.rend(); ++it)
    c.nodes.push_back({std::conj(it->lambda), std::conj(it->weight)});

  // Every node must stay a fixed distance from the spectrum.
  const double dmin = c.min_distance_to_spectrum();
  if (dmin < (1.0 - epsilon) * 0.99)
    throw std::logic_error("build_contour: node too close to the spectrum");
  return c;
}

std::complex<double> scalar_contour_power(const Contour& contour, double a,
                                          std::complex<double> w) {
  if (!(a > 2.0 * contour.epsilon))
    throw std::domain_error("scalar_contour_power: point inside the keyhole");
  std::complex<double> sum = 0.0, comp = 0.0;
  for (const auto& n : contour.nodes) {
    const std::complex<double> term =
        n.weight * std::pow(n.lambda, w) / (a - n.lambda);
    const std::complex<double> y = term - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double contour_defect(const Contour& contour,
                      const Eigen::VectorXd& eigenvalues,
                      std::complex<double> w) {
  double defect = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double nu = eigenvalues[k];
    const std::complex<double> exact =
        std::exp(w * std::log(std::complex<double>(nu, 0.0)));
    defect = std::max(defect,
                      std::abs(scalar_contour_power(contour, nu, w) - exact));
  }
  return defect;
}

ContourApplyResult contour_power_apply(const RadialOperator& op,
                                       const Contour& contour,
                                       std::complex<double> w,
                                       const Eigen::VectorXcd& f) {
  if (!(w.real() < 0.0))
    throw std::domain_error(
        "contour_power_apply: needs Re w < 0 (use analytic continuation)");
  if (f.size() != op.S.size())
    throw std::invalid_argument("contour_power_apply: size mismatch");
  CompensatedVector acc(f.size());
  for (const auto& node : contour.nodes) {
    const Eigen::VectorXcd r = resolvent_apply(op, node.lambda, f);
    acc.add((node.weight * std::pow(node.lambda, w)) * r);
  }
  ContourApplyResult out;
  out.u = acc.sum;
  out.tail_bound = contour.tail_bound(w);
  out.continuation_order = 0;
  return out;
}

ContourApplyResult analytic_continuation_power(const RadialOperator& op,
                                               const Contour& contour,
                                               std::complex<double> w,
                                               const Eigen::VectorXcd& f,
                                               int order) {
  int k = order;
  if (k < 0) k = std::max(0, static_cast<int>(std::ceil(w.real())) + 1);
  if (!(w.real() - k < 0.0))
    throw std::domain_error(
        "analytic_continuation_power: order does not reach Re(w - k) < 0");
  ContourApplyResult base =
      contour_power_apply(op, contour, w - static_cast<double>(k), f);
  for (int j = 0; j < k; ++j) base.u = apply_operator(op, base.u);
  base.continuation_order = k;
  return base;
}

}  // namespace conecalc
