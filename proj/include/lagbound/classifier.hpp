#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagbound/curve_metrics.hpp"
#include "lagbound/exactness.hpp"
#include "lagbound/hausdorff.hpp"

namespace lagbound {

enum class Tri { no, yes, indeterminate };
std::string to_string(Tri t);

// margin > error -> yes, margin < -error -> no, otherwise indeterminate.
Tri decide(double margin, double error);

struct Clause {
  Tri state = Tri::indeterminate;
  double margin = 0.0;
  double error = 0.0;
  bool evaluated = false;
};

// Quantities classify needs; computed once and reused across levels.
struct CurveInvariants {
  double curvature_sup = 0.0;
  double curvature_error = 0.0;
  std::optional<double> epsilon;
  double epsilon_error = 0.0;
  double sup_abs = 0.0;
  double halfwidth = 0.0;
  double area = 0.0;
  bool exact = false;
};

CurveInvariants curve_invariants(const Curve& c, bool with_tameness = true, const TamenessOptions& opt = {});

struct MembershipVerdict {
  double k = 0.0;
  Clause curvature;    // |B| < k
  Clause tame;         // epsilon > 1/(k+1)
  Clause containment;  // |xi| <= r (1 - 1/(k+1))
  bool exact = false;
  double area = 0.0;
  Tri verdict = Tri::indeterminate;
};

MembershipVerdict classify(const CurveInvariants& inv, double k);
// Tameness is skipped when the curvature clause already fails.
MembershipVerdict classify(const Curve& c, double k, const TamenessOptions& opt = {});

enum class FamilyId { escape_cos, hs_family, hs_variant_alpha, parallels, plane_circles };
std::string to_string(FamilyId f);
FamilyId family_id_from_string(const std::string& s);

struct FamilySpec {
  FamilyId id = FamilyId::escape_cos;
  double amplitude = 1.0;
  int mode_min = 1, mode_max = 10;
  std::vector<double> s_values;  // hs ladders; empty means 2^-7 .. 2^-14
  double alpha = 0.5;
  std::vector<double> levels;    // parallel heights or circle radii
  int samples = 0;               // 0: chosen per member
  double halfwidth = 0.0;        // 0: family default
};

void validate(const FamilySpec& spec);

struct Family {
  FamilySpec spec;
  PatchPtr patch;
  std::vector<double> parameter;  // mode, s, level or radius per member
  std::vector<Curve> curves;
  std::optional<Curve> base_curve;  // zero section of the patch
};

Family generate_family(const FamilySpec& spec);

// Septic smoothstep bump: 0 outside [1/8, 7/8], 1 on [1/4, 3/4].
double bump(double q, int derivative = 0);

struct SeparationRow {
  int i = 0, j = 0;
  std::string a, b;
  double hausdorff = 0.0;
  double gap = 0.0;
};

struct SeparationTable {
  InvariantKind kind = InvariantKind::liouville_class;
  std::vector<double> invariant;
  std::vector<SeparationRow> rows;
  int classes = 0;
  std::optional<double> a_emp;
  double error_bound = 0.0;  // largest Hausdorff error bar among rows
};

SeparationTable separation_scan(const std::vector<Curve>& family, InvariantKind kind, double gap_tol = 1e-9);

struct LadderFit {
  std::vector<double> s, curvature, xi_norm, d1_norm, hausdorff;
  double curvature_slope = 0.0;
  double xi_slope = 0.0;
  double d1_slope = 0.0;
};

// Log-log fits over an hs_family or hs_variant_alpha ladder.
LadderFit ladder_fit(const Family& f, bool with_hausdorff = true);

}  // namespace lagbound
