#pragma once

// Pushforward measures of pluricanonical maps and their comparison.
//
// A setup is a curve with forms eta_0..eta_N sharing m. The map is
// F = (eta_1/eta_0, ..., eta_N/eta_0) and the measure is |eta_0|^{1/m} on the
// Q_p-points. Target cosets are u + p^D Z_p^N inside the window p^-A Z_p^N.

#include "padiclab/curve.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace padiclab {

struct MassEnclosure {
  RadicalValue lower;
  /// nullopt means unbounded above.
  std::optional<RadicalValue> upper;

  bool intersects(const MassEnclosure& o) const;
  bool exact() const { return upper && *upper == lower; }
};

struct CurveSetup {
  HyperellipticCurve curve;
  std::vector<PluricanonicalForm> forms;  // eta_0 first
};

/// Throws DomainError unless the forms are regular, share m and eta_0 != 0.
void validate_setup(const CurveSetup& setup);

class StepMeasure {
 public:
  using Key = std::vector<Integer>;

  StepMeasure(int64_t p, size_t dim, int64_t depth, int64_t window);

  int64_t prime() const { return p_; }
  size_t dim() const { return dim_; }
  int64_t depth() const { return depth_; }
  int64_t window() const { return window_; }

  /// Key k stands for the coset k * p^-A + p^D Z_p^N, entries of k in [0, p^(A+D)).
  const std::map<Key, RadicalValue>& assigned() const { return assigned_; }
  /// Mass certainly mapped outside the window.
  const RadicalValue& outside() const { return outside_; }
  /// Upper bound for source mass whose image was not pinned down (nullopt: unbounded).
  const std::optional<RadicalValue>& undetermined() const { return undetermined_; }

  MassEnclosure enclosure(const Key& k) const;
  MassEnclosure overflow() const;
  MassEnclosure total() const;
  /// Center of the coset named by k.
  std::vector<Rational> center(const Key& k) const;

  void add_assigned(const Key& k, const RadicalValue& mass);
  void add_outside(const RadicalValue& mass);
  void add_undetermined(const std::optional<RadicalValue>& mass);

  uint64_t source_cosets = 0;

 private:
  int64_t p_;
  size_t dim_;
  int64_t depth_;
  int64_t window_;
  std::map<Key, RadicalValue> assigned_;
  RadicalValue outside_;
  std::optional<RadicalValue> undetermined_;
};

struct PushforwardOptions {
  /// Source subdivision cap; default depth + 2 * window + 2.
  std::optional<int64_t> source_depth;
};

StepMeasure pushforward(const CurveSetup& setup, int64_t depth, int64_t window,
                        const PushforwardOptions& options = {});

struct IsometrySample {
  std::vector<Rational> v;
  IntegralResult left;
  IntegralResult right;
  bool intersect = false;
  bool exact_equal = false;
};

struct IsometryReport {
  std::vector<IsometrySample> samples;
  /// Both routes of every combination agreed on each side.
  bool routes_agree = true;
  bool consistent() const;
  size_t disjoint_count() const;
};

/// v = j p^-M for j in [0, p^2M) in each of the n coordinates.
std::vector<std::vector<Rational>> isometry_grid(int64_t p, size_t n, int64_t m);

IsometryReport isometry_scan(const CurveSetup& left, const CurveSetup& right,
                             const std::vector<std::vector<Rational>>& v_samples, int64_t depth);

struct CompareReport {
  bool equal = false;
  /// Largest certified separation between two disjoint enclosures (0 when equal).
  RadicalValue gap;
  /// Upper bound for |mass_1 - mass_2| over all cosets; nullopt if unbounded.
  std::optional<RadicalValue> max_difference;
  /// Witnessing coset when not equal; empty key with overflow_witness for the overflow.
  std::optional<StepMeasure::Key> witness;
  bool overflow_witness = false;
};

CompareReport equimeasurable_compare(const StepMeasure& a, const StepMeasure& b);

}  // namespace padiclab
