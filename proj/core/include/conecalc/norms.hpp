#pragma once

// Weighted Sobolev norms on the truncated cone, per angular mode.
//
// Cone scale (parameters s, alpha, tau, h): derivatives are measured by
// D_r = (h/(x+h)) x d/dx and D_a = (h/(x+h)) lambda, the outermost weight is
//   W(x) = (x/(x+h))^{-alpha} (x+h)^{-tau},
// and everything integrates against the b-measure x^{-1} e^{(n-1)phi} dx.
// b scale (s, alpha): weight x^{-alpha}, derivatives h x d/dx and h lambda.
//
// Integer orders s in {0, 1, 2} sum the squared L2_b norms of W times the
// derivative words of length <= s; piecewise-linear elements lack strong
// second derivatives, so length-2 radial words insert an L2_b projection
// back onto the mesh between applications.  Fractional orders interpolate
// the integer Gram pencils by spectral theta-powers, and negative orders are
// duals with respect to the (quadrature-regularized) b pairing.

#include <complex>
#include <memory>
#include <vector>

#include "conecalc/assembly.hpp"
#include "conecalc/spectral.hpp"

namespace conecalc {

enum class NormScale { cone, b };

struct NormSpec {
  NormScale scale = NormScale::cone;
  double s = 0.0;      // in [-1, 2]
  double alpha = 0.0;  // boundary weight
  double tau = 0.0;    // transition weight (ignored on the b scale)
};

// The cone-scale weight W(x); useful on its own for weight-shape tests.
double cone_weight(double alpha, double tau, double h, double x);

class ModeNormEvaluator {
 public:
  ModeNormEvaluator(int dim, const Warp& warp, const RadialGrid& grid,
                    double lambda_sq, const NormSpec& spec, double h);

  double norm(const Eigen::VectorXcd& u) const;
  double norm(const Eigen::VectorXd& u) const;

  const NormSpec& spec() const { return spec_; }
  double h() const { return h_; }

  struct Pieces;  // Gram matrices and apply paths for one (alpha,tau) sign

 private:
  std::shared_ptr<Pieces> primal_;  // at (alpha, tau)
  std::shared_ptr<Pieces> dual_;    // at (-alpha, -tau), for s < 0
  NormSpec spec_;
  double h_ = 1.0;

  double norm_sq(const Eigen::VectorXcd& u) const;
};

// Evaluator for one listed mode of a model (the named entry point).
ModeNormEvaluator restriction_weights(const ConeModel& model,
                                      const RadialGrid& grid, int mode_index,
                                      const NormSpec& spec, double h);

// Aggregate over the model's listed modes, weighting each squared mode norm
// by its multiplicity.  `per_mode` must have one coefficient vector per
// listed mode (all on the same grid).
double cone_sobolev_norm(const ConeModel& model, const RadialGrid& grid,
                         const NormSpec& spec, double h,
                         const std::vector<Eigen::VectorXcd>& per_mode);

// Operator-adapted norm ||A^{w/2} u||_{L2(metric)} from a spectral
// decomposition of the assembled pencil.
double domain_norm(const SpectralDecomposition& dec, std::complex<double> w,
                   const Eigen::VectorXcd& u);

// Worst-case ratio ||u||_to / ||u||_from over the declared finite trial set
// (eigenvectors, tip bumps, wave packets), swept over h.  `ratio` already has
// the predicted h-power factored out, so a uniformly bounded inclusion shows
// up as a bounded column.  The constants are lower bounds on the true
// inclusion norms (finite trial set).
struct InclusionRow {
  double h = 0.0;
  double ratio = 0.0;  // worst-case ratio * h^{-predicted power}
  double raw_ratio = 0.0;
  std::string argmax_trial;
};

// Exponent p in the expected uniform bound ||u||_to <= C h^p ||u||_from for
// the cross-scale inclusions; 0 within a single scale (no prediction).
double predicted_inclusion_h_power(const NormSpec& from, const NormSpec& to);

std::vector<InclusionRow> inclusion_constant_sweep(
    const ConeModel& model, const RadialGrid& grid, const NormSpec& from,
    const NormSpec& to, const std::vector<double>& h_values,
    int mode_index = 0);

}  // namespace conecalc
