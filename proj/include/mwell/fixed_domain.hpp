#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mwell {

enum class Family { SquareWell, FirstOrderPartner, SecondOrderPartner };

// One normalized eigenpair on q in [0,1]: integral of eval^2 is 1 and
// eval > 0 as q -> 0+. deval/ddeval are closed-form derivatives where the
// catalog has them (square well); empty otherwise.
struct StationaryMode {
  int n = 0;
  double energy = 0.0;
  std::function<double(double)> eval;
  std::function<double(double)> deval;
  std::function<double(double)> ddeval;
};

// Closed-form catalog of fixed-domain potentials on the unit interval:
// the square well shifted so its ground level sits at zero, its first-order
// SUSY partner, and the two second-order partners built from consecutive
// seed levels j, j+1 (which are deleted from the spectrum).
//
// An optional case1 coefficient adds (c1/4) q^2 to the potential; that
// composite has no closed-form modes and is probed numerically instead.
class PotentialModel {
 public:
  static PotentialModel square_well();
  static PotentialModel first_order_partner();
  static PotentialModel second_order_partner(int j);  // j in {0, 1}
  static PotentialModel from_name(const std::string& name);

  PotentialModel with_case1(double c1) const;

  Family family() const { return family_; }
  int seed_index() const { return j_; }  // -1 unless SecondOrderPartner
  const std::set<int>& deleted_levels() const { return deleted_; }
  std::optional<double> case1_c1() const { return case1_c1_; }

  // true when the potential diverges at the endpoints (cosec^2 families)
  bool singular() const { return family_ != Family::SquareWell; }

  bool admissible(int n) const { return n >= 0 && !deleted_.contains(n); }
  std::vector<int> admissible_indices(int count) const;

  // closed-form potential; q in (0,1) for singular families, [0,1] otherwise
  double potential(double q) const;

  // closed-form level; throws for deleted or negative n
  double energy(int n) const;

  // normalized mode; throws for inadmissible n and for case1 composites
  StationaryMode mode(int n) const;

  // CLI selector: well, susy1, susy2-j0, susy2-j1
  std::string name() const;

 private:
  PotentialModel(Family f, int j);

  Family family_;
  int j_;
  std::set<int> deleted_;
  std::optional<double> case1_c1_;
  std::shared_ptr<struct NormCache> cache_;
};

// Unnormalized closed-form mode shape (the catalog's raw expressions,
// including their constant prefactors). Exposed for oracle tests.
double mode_shape_raw(const PotentialModel& model, int n, double q);

}  // namespace mwell
