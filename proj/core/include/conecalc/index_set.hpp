#pragma once

// Truncated polyhomogeneous index sets: finite collections of pairs (z, k)
// with z complex (an exponent) and k a nonnegative integer (a maximal log
// order), recorded as complete for Re z <= cutoff.  The container stores one
// entry per exponent holding the largest log order; lower orders at the same
// exponent are implied (downward closure).

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "conecalc/cone_model.hpp"

namespace conecalc {

struct IndexEntry {
  std::complex<double> z;
  int k = 0;
};

class IndexSet {
 public:
  // Exponents closer than this (in both real and imaginary part) are the
  // same exponent; inserting both keeps the first representative.
  static constexpr double exponent_merge_tol = 1e-9;

  IndexSet() = default;
  explicit IndexSet(double cutoff) : cutoff_(cutoff) {}

  static IndexSet from_entries(const std::vector<IndexEntry>& entries,
                               double cutoff);
  // {(m, 0) : m = 0, 1, 2, ...} up to the cutoff.
  static IndexSet naturals(double cutoff);
  // {(m, 0) : m = 1, 2, ...} up to the cutoff.
  static IndexSet positive_integers(double cutoff);

  double cutoff() const { return cutoff_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Keeps the larger log order when the exponent is already present; drops
  // entries beyond the cutoff.  k must be >= 0.
  void insert(std::complex<double> z, int k);

  // Max log order at exponent z, or -1 if z is not in the set.
  int log_order(std::complex<double> z) const;
  bool contains(std::complex<double> z, int k = 0) const;

  // One entry per exponent (maximal k), sorted by (Re z, Im z).
  const std::vector<IndexEntry>& entries() const { return entries_; }
  // Downward closure: (z, j) for 0 <= j <= k(z).
  std::vector<IndexEntry> expanded_entries() const;

  double min_re() const;  // +infinity when empty
  int max_log_order() const;  // -1 when empty
  bool has_log_terms() const;

  IndexSet shifted(std::complex<double> s) const;  // E + s
  IndexSet truncated(double new_cutoff) const;     // drop Re z > new_cutoff

  // Exact structural equality: cutoffs within 1e-12 and the same exponents
  // (within the merge tolerance) with the same log orders.
  friend bool operator==(const IndexSet& a, const IndexSet& b);
  friend bool operator!=(const IndexSet& a, const IndexSet& b) {
    return !(a == b);
  }

  std::string to_string() const;

 private:
  double cutoff_ = 0.0;
  std::vector<IndexEntry> entries_;  // sorted by (Re, Im), unique exponents

  std::ptrdiff_t find(std::complex<double> z) const;
};

// Union that adds one log order where exponents of both operands coincide:
// shared exponent z gets order k_E(z) + k_F(z) + 1.  Cutoff is the min.
IndexSet extended_union(const IndexSet& E, const IndexSet& F);

// Minkowski sum {(z + w, j + k)}.  Cutoff chosen so the result is complete.
IndexSet set_sum(const IndexSet& E, const IndexSet& F);

// Shift closure: union of E + m over integers m >= 0 (log orders carried
// along unchanged).  Idempotent.
IndexSet shift_saturation(const IndexSet& E);

// Log-doubling companion of the shift closure: extended union of the shift
// closure with itself, so every exponent's order k becomes 2k + 1.  Used as
// the bookkeeping envelope for compositions; not idempotent by design.
IndexSet composition_saturation(const IndexSet& E);

// --- model-derived sets -----------------------------------------------------

// Roots of the indicial polynomial sigma^2 - i(n-2) sigma + lambda^2:
//   sigma_{±} = i((n-2)/2 ± sqrt(((n-2)/2)^2 + lambda^2)).
struct IndicialRoot {
  int mode_index = 0;
  double lambda_sq = 0.0;
  std::complex<double> sigma_plus;
  std::complex<double> sigma_minus;
};

IndicialRoot indicial_roots(int dim, double lambda_sq, int mode_index = 0);

// All roots sigma with |Im sigma| <= cutoff, as entries (sigma, 0).
IndexSet boundary_spectrum(const ConeModel& model, double cutoff);

// Weight window (-(n-2), 0) between the two zero-mode root lines.
struct WeightWindow {
  double lower = 0.0;
  double upper = 0.0;
};
WeightWindow weight_window(const ConeModel& model);

// True when some indicial root line i*sigma has real part within tol of
// alpha; the offending root is copied to *witness when given.
bool alpha_on_boundary_spectrum(const ConeModel& model, double alpha,
                                IndicialRoot* witness = nullptr,
                                double tol = 1e-9);

// Index sets at the four boundary faces of the resolvent's double space:
// near face (lb), front face (ff), far face (rb), residual face (tf).
struct IndexFamily {
  IndexSet lb;
  IndexSet ff;
  IndexSet rb;
  IndexSet tf;

  friend bool operator==(const IndexFamily& a, const IndexFamily& b) {
    return a.lb == b.lb && a.ff == b.ff && a.rb == b.rb && a.tf == b.tf;
  }
  friend bool operator!=(const IndexFamily& a, const IndexFamily& b) {
    return !(a == b);
  }
};

// Structure family of the inverse at weight alpha, complete for
// Re z <= re_cutoff at every face.  Throws std::domain_error when alpha sits
// on the boundary spectrum and std::invalid_argument when the model's mode
// list is too short to certify completeness up to the requested cutoff.
IndexFamily resolvent_index_family(const ConeModel& model, double alpha,
                                   double re_cutoff);

// Same data for the complex power with exponent w.
IndexFamily power_index_family(const ConeModel& model, double alpha,
                               std::complex<double> w, double re_cutoff);

}  // namespace conecalc
