#include "conecalc/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace conecalc {

namespace {

bool same_exponent(std::complex<double> a, std::complex<double> b) {
  return std::abs(a.real() - b.real()) <= IndexSet::exponent_merge_tol &&
         std::abs(a.imag() - b.imag()) <= IndexSet::exponent_merge_tol;
}

bool entry_less(const IndexEntry& a, const IndexEntry& b) {
  if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
  return a.z.imag() < b.z.imag();
}

}  // namespace

IndexSet IndexSet::from_entries(const std::vector<IndexEntry>& entries,
                                double cutoff) {
  IndexSet out(cutoff);
  for (const auto& e : entries) out.insert(e.z, e.k);
  return out;
}

IndexSet IndexSet::naturals(double cutoff) {
  if (!std::isfinite(cutoff))
    throw std::domain_error("naturals: cutoff must be finite");
  IndexSet out(cutoff);
  for (int m = 0; m <= static_cast<int>(std::floor(cutoff)); ++m)
    out.insert(std::complex<double>(m, 0.0), 0);
  return out;
}

IndexSet IndexSet::positive_integers(double cutoff) {
  if (!std::isfinite(cutoff))
    throw std::domain_error("positive_integers: cutoff must be finite");
  IndexSet out(cutoff);
  for (int m = 1; m <= static_cast<int>(std::floor(cutoff)); ++m)
    out.insert(std::complex<double>(m, 0.0), 0);
  return out;
}

std::ptrdiff_t IndexSet::find(std::complex<double> z) const {
  // Entries are sorted by (Re, Im); candidates live in a tol-window in Re.
  IndexEntry probe{z - std::complex<double>(exponent_merge_tol * 2, 0), 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             entry_less);
  for (; it != entries_.end() &&
         it->z.real() <= z.real() + exponent_merge_tol;
       ++it)
    if (same_exponent(it->z, z)) return it - entries_.begin();
  return -1;
}

void IndexSet::insert(std::complex<double> z, int k) {
  if (k < 0) throw std::domain_error("IndexSet::insert: log order k < 0");
  if (z.real() > cutoff_ + 1e-12) return;  // beyond the completeness range
  std::ptrdiff_t at = find(z);
  if (at >= 0) {
    entries_[static_cast<std::size_t>(at)].k =
        std::max(entries_[static_cast<std::size_t>(at)].k, k);
    return;
  }
  IndexEntry e{z, k};
  auto it = std::upper_bound(entries_.begin(), entries_.end(), e, entry_less);
  entries_.insert(it, e);
}

int IndexSet::log_order(std::complex<double> z) const {
  std::ptrdiff_t at = find(z);
  return at < 0 ? -1 : entries_[static_cast<std::size_t>(at)].k;
}

bool IndexSet::contains(std::complex<double> z, int k) const {
  return log_order(z) >= k;
}

std::vector<IndexEntry> IndexSet::expanded_entries() const {
  std::vector<IndexEntry> out;
  for (const auto& e : entries_)
    for (int j = 0; j <= e.k; ++j) out.push_back({e.z, j});
  return out;
}

double IndexSet::min_re() const {
  if (entries_.empty()) return std::numeric_limits<double>::infinity();
  return entries_.front().z.real();  // sorted by Re first
}

int IndexSet::max_log_order() const {
  int k = -1;
  for (const auto& e : entries_) k = std::max(k, e.k);
  return k;
}

bool IndexSet::has_log_terms() const { return max_log_order() > 0; }

IndexSet IndexSet::shifted(std::complex<double> s) const {
  IndexSet out(cutoff_ + s.real());
  for (const auto& e : entries_) out.insert(e.z + s, e.k);
  return out;
}

IndexSet IndexSet::truncated(double new_cutoff) const {
  IndexSet out(std::min(cutoff_, new_cutoff));
  for (const auto& e : entries_) out.insert(e.z, e.k);
  return out;
}

bool operator==(const IndexSet& a, const IndexSet& b) {
  if (std::abs(a.cutoff_ - b.cutoff_) > 1e-12) return false;
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (!same_exponent(a.entries_[i].z, b.entries_[i].z)) return false;
    if (a.entries_[i].k != b.entries_[i].k) return false;
  }
  return true;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  char buf[96];
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.z.imag() == 0.0)
      std::snprintf(buf, sizeof buf, "(%g,%d)", e.z.real(), e.k);
    else
      std::snprintf(buf, sizeof buf, "(%g%+gi,%d)", e.z.real(), e.z.imag(),
                    e.k);
    if (i) s += ", ";
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "} cutoff %g", cutoff_);
  s += buf;
  return s;
}

IndexSet extended_union(const IndexSet& E, const IndexSet& F) {
  IndexSet out(std::min(E.cutoff(), F.cutoff()));
  for (const auto& e : E.entries()) {
    int kf = F.log_order(e.z);
    out.insert(e.z, kf >= 0 ? e.k + kf + 1 : e.k);
  }
  for (const auto& f : F.entries())
    if (E.log_order(f.z) < 0) out.insert(f.z, f.k);
  return out;
}

IndexSet set_sum(const IndexSet& E, const IndexSet& F) {
  if (E.empty() || F.empty())
    return IndexSet(std::numeric_limits<double>::infinity());
  double cutoff =
      std::min(E.cutoff() + F.min_re(), F.cutoff() + E.min_re());
  IndexSet out(cutoff);
  for (const auto& e : E.entries())
    for (const auto& f : F.entries()) out.insert(e.z + f.z, e.k + f.k);
  return out;
}

IndexSet shift_saturation(const IndexSet& E) {
  if (E.empty()) return E;
  IndexSet out(E.cutoff());
  int steps = static_cast<int>(std::floor(E.cutoff() - E.min_re())) + 1;
  for (const auto& e : E.entries())
    for (int m = 0; m <= steps; ++m)
      out.insert(e.z + std::complex<double>(m, 0.0), e.k);
  return out;
}

IndexSet composition_saturation(const IndexSet& E) {
  IndexSet hat = shift_saturation(E);
  return extended_union(hat, hat);
}

IndicialRoot indicial_roots(int dim, double lambda_sq, int mode_index) {
  if (dim < 3) throw std::domain_error("indicial_roots: need dim >= 3");
  if (lambda_sq < 0.0)
    throw std::domain_error("indicial_roots: negative mode eigenvalue");
  const double s = (dim - 2) / 2.0;
  const double r = std::sqrt(s * s + lambda_sq);
  IndicialRoot out;
  out.mode_index = mode_index;
  out.lambda_sq = lambda_sq;
  out.sigma_plus = std::complex<double>(0.0, s + r);
  out.sigma_minus = std::complex<double>(0.0, s - r);
  return out;
}

IndexSet boundary_spectrum(const ConeModel& model, double cutoff) {
  IndexSet out(std::max(cutoff, 0.0));
  for (const auto& mode : model.modes) {
    IndicialRoot root = indicial_roots(model.dim, mode.lambda_sq, mode.index);
    for (std::complex<double> sigma : {root.sigma_minus, root.sigma_plus})
      if (std::abs(sigma.imag()) <= cutoff + 1e-12) out.insert(sigma, 0);
  }
  return out;
}

WeightWindow weight_window(const ConeModel& model) {
  if (model.dim < 3) throw std::domain_error("weight_window: need dim >= 3");
  return {-(model.dim - 2.0), 0.0};
}

bool alpha_on_boundary_spectrum(const ConeModel& model, double alpha,
                                IndicialRoot* witness, double tol) {
  const double s = (model.dim - 2) / 2.0;
  for (const auto& mode : model.modes) {
    const double r = std::sqrt(s * s + mode.lambda_sq);
    // Weight lines Re(i sigma) for the two roots: r - s and -(r + s).
    if (std::abs(alpha - (r - s)) <= tol || std::abs(alpha + (r + s)) <= tol) {
      if (witness)
        *witness = indicial_roots(model.dim, mode.lambda_sq, mode.index);
      return true;
    }
  }
  return false;
}

namespace {

// Exponents contributed to the two boundary faces by the indicial roots,
// filtered by the weight alpha.  Throws when the (truncated) mode list is too
// short to certify completeness up to the requested cutoff.
void boundary_base_sets(const ConeModel& model, double alpha, double cutoff_lb,
                        double cutoff_rb, IndexSet* lb, IndexSet* rb) {
  const double s = (model.dim - 2) / 2.0;
  double r_max = 0.0;
  *lb = IndexSet(cutoff_lb);
  *rb = IndexSet(cutoff_rb);
  for (const auto& mode : model.modes) {
    const double r = std::sqrt(s * s + mode.lambda_sq);
    r_max = std::max(r_max, r);
    IndicialRoot root = indicial_roots(model.dim, mode.lambda_sq, mode.index);
    for (std::complex<double> sigma : {root.sigma_minus, root.sigma_plus}) {
      std::complex<double> i(0.0, 1.0);
      std::complex<double> z_lb = i * sigma;
      std::complex<double> z_rb = -i * sigma;
      if (z_lb.real() > alpha) lb->insert(z_lb, 0);
      if (z_rb.real() > -alpha) rb->insert(z_rb, 0);
    }
  }
  if (!model.modes_complete) {
    // Truncated list: modes beyond it contribute exponents above
    // r_max -+ s; both faces must be certain up to their cutoffs.
    if (!(r_max - s > cutoff_lb) || !(r_max + s > cutoff_rb)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "mode list truncated too early for cutoff: largest root "
                    "%.6g certifies lb only to %.6g (need > %.6g)",
                    r_max, r_max - s, cutoff_lb);
      throw std::invalid_argument(buf);
    }
  }
}

void require_alpha_off_spectrum(const ConeModel& model, double alpha) {
  IndicialRoot witness;
  if (alpha_on_boundary_spectrum(model, alpha, &witness)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "weight alpha=%.12g lies on the boundary spectrum "
                  "(mode %d, lambda^2=%.6g)",
                  alpha, witness.mode_index, witness.lambda_sq);
    throw std::domain_error(buf);
  }
}

}  // namespace

IndexFamily resolvent_index_family(const ConeModel& model, double alpha,
                                   double re_cutoff) {
  if (model.modes.empty())
    throw std::invalid_argument("resolvent_index_family: empty mode list");
  require_alpha_off_spectrum(model, alpha);

  IndexSet lb0, rb0;
  boundary_base_sets(model, alpha, re_cutoff, re_cutoff - 2.0, &lb0, &rb0);

  IndexSet lb_check = composition_saturation(lb0);
  IndexSet rb_check = composition_saturation(rb0);

  // Front face: N_0 + ((lb_check + rb_check) extended-union N_{>=1}),
  // then the operator order shifts ff and rb by 2.
  IndexSet inner = extended_union(set_sum(lb_check, rb_check),
                                  IndexSet::positive_integers(re_cutoff - 2.0));
  IndexSet ff_check = set_sum(IndexSet::naturals(re_cutoff - 2.0), inner);

  IndexFamily fam;
  fam.lb = lb_check;
  fam.ff = ff_check.shifted(2.0).truncated(re_cutoff);
  fam.rb = rb_check.shifted(2.0).truncated(re_cutoff);
  fam.tf = IndexSet::naturals(re_cutoff);
  fam.lb = fam.lb.truncated(re_cutoff);
  return fam;
}

IndexFamily power_index_family(const ConeModel& model, double alpha,
                               std::complex<double> w, double re_cutoff) {
  IndexFamily base = resolvent_index_family(model, alpha, re_cutoff);
  if (w == std::complex<double>(-1.0, 0.0)) return base;

  // Candidate exponents at the front face: the resolvent family plus the
  // power-specific ladder m - 2w, m = 0, 1, ...
  IndexSet ladder =
      IndexSet::naturals(re_cutoff + 2.0 * w.real())
          .shifted(std::complex<double>(-2.0 * w.real(), -2.0 * w.imag()));
  IndexSet candidate = extended_union(base.ff, ladder);

  const double threshold = (w.real() <= -model.dim / 2.0)
                               ? static_cast<double>(model.dim)
                               : -2.0 * w.real();
  IndexSet ff(candidate.cutoff());
  for (const auto& e : candidate.entries()) {
    if (e.z.real() > threshold + 1e-12) {
      ff.insert(e.z, e.k);
    } else if (std::abs(e.z.real() - threshold) <= 1e-12 && e.k == 0) {
      ff.insert(e.z, 0);  // pure term exactly at the threshold survives
    }
  }

  IndexFamily fam;
  fam.lb = base.lb;
  fam.ff = ff;
  fam.rb = base.rb;
  fam.tf = base.tf;
  return fam;
}

}  // namespace conecalc
