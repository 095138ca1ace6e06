#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace lagbound {

using Vec2d = Eigen::Vector2d;
using Vec3d = Eigen::Vector3d;
using Mat2d = Eigen::Matrix2d;
using Mat3d = Eigen::Matrix3d;

enum class BaseKind { flat_torus, round_sphere };

std::string to_string(BaseKind k);
BaseKind base_kind_from_string(const std::string& s);

// Flat torus R^2 / (2 pi Z)^2: one chart. Round unit sphere: stereographic
// charts from the north (chart 0) and south (chart 1) poles.
class BaseManifold2D {
 public:
  explicit BaseManifold2D(BaseKind kind) : kind_(kind) {}
  BaseKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  double gauss() const { return kind_ == BaseKind::round_sphere ? 1.0 : 0.0; }

  Mat2d metric(int chart, const Vec2d& u) const;
  // gamma[k](i, j) = Gamma^k_ij
  std::array<Mat2d, 2> christoffel(int chart, const Vec2d& u) const;
  // R(X, Y) Z = K (<Y, Z> X - <X, Z> Y)
  Vec2d curvature(int chart, const Vec2d& u, const Vec2d& X, const Vec2d& Y, const Vec2d& Z) const;
  double inner(int chart, const Vec2d& u, const Vec2d& a, const Vec2d& b) const;

  // Sphere embedding and its inverse.
  Vec3d embed(int chart, const Vec2d& u) const;
  Vec2d chart_of(int chart, const Vec3d& p) const;
  // Differential of the embedding at u: columns are d/du1, d/du2.
  Eigen::Matrix<double, 3, 2> embed_jacobian(int chart, const Vec2d& u) const;
  // Transition to the other chart; Jacobian maps vector components.
  Mat2d transition_jacobian(int chart, const Vec2d& u) const;
  bool should_switch(int chart, const Vec2d& u) const;

  // Geodesic distance (closed form).
  double distance(const Vec3d& p, const Vec3d& q) const;

 private:
  BaseKind kind_;
};

struct SasakiState {
  int chart = 0;
  Vec2d x = Vec2d::Zero();  // chart coordinates
  Vec2d v = Vec2d::Zero();  // x'
  Vec2d Y = Vec2d::Zero();  // fibre point
  Vec2d Z = Vec2d::Zero();  // nabla_{x'} Y
};

double fibre_norm2(const BaseManifold2D& base, const SasakiState& s);   // |Y|^2
double fibre_speed2(const BaseManifold2D& base, const SasakiState& s);  // |Z|^2

// Re-express a state in the other chart.
SasakiState switch_chart(const BaseManifold2D& base, const SasakiState& s);

// Build a state from a base point and tangent vectors given in an orthonormal frame.
SasakiState make_state(const BaseManifold2D& base, const Vec3d& point, const Vec2d& v, const Vec2d& Y,
                       const Vec2d& Z);

struct TrajectorySample {
  double t = 0.0;
  SasakiState state;
  double y2 = 0.0;  // |Y|^2
  double z2 = 0.0;  // |Z|^2
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double step = 0.0;
  double halving_error = 0.0;  // max |Y|^2, position disagreement vs. step h/2
  int chart_switches = 0;
};

// RK4 on x' = v, v' = -Gamma(v, v) - R(Y, Z) v, Y' = Z - Gamma(v, Y), Z' = -Gamma(v, Z).
Trajectory sasaki_geodesic(const BaseManifold2D& base, const SasakiState& initial, double T, double h,
                           double tol = 1e-8);

struct ParabolaFit {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // |Y|^2 = c0 + c1 t + c2 t^2
  double max_residual = 0.0;
  double leading_error = 0.0;  // |c2 - |Z0|^2|
  double z2_drift = 0.0;       // max | |Z(t)|^2 - |Z0|^2 |
  bool constant = false;
};

ParabolaFit parabola_check(const BaseManifold2D& base, const Trajectory& tr);

// Jets of xi = grad H at a base point in an orthonormal frame (e1, e2):
// A(i, j) = <nabla_{e_j} xi, e_i>, T[a](b, c) = nabla^3 H(e_a, e_b, e_c).
struct GraphJet {
  Vec2d xi = Vec2d::Zero();
  Mat2d A = Mat2d::Zero();
  std::array<Mat2d, 2> T{Mat2d::Zero(), Mat2d::Zero()};
  double K = 0.0;
};

// Closed-form H with derivatives up to third order in ambient coordinates
// (R^2 periodic for the torus, R^3 restricted to the unit sphere).
struct GradientGraph {
  std::string name;
  BaseKind base = BaseKind::flat_torus;
  std::function<double(const Vec3d&)> value;
  std::function<Vec3d(const Vec3d&)> grad;
  std::function<Mat3d(const Vec3d&)> hess;
  std::function<std::array<Mat3d, 3>(const Vec3d&)> third;  // third[a](b, c)
};

// Jet at an ambient point (torus: (x1, x2, 0); sphere: unit vector).
GraphJet graph_jet(const GradientGraph& gg, const Vec3d& p);
// Orthonormal tangent frame used for jets.
std::pair<Vec3d, Vec3d> tangent_frame(BaseKind kind, const Vec3d& p);

// Deterministic base samples: n x n torus grid or a Fibonacci sphere of n^2 points.
std::vector<Vec3d> base_samples(BaseKind kind, int n);

// Normalised trilinear value s_X^2 s_Z t |alpha - t^2 beta| along base directions X, Z (any length).
double sff_value(const GraphJet& j, double t, const Vec2d& X, const Vec2d& Z);

struct SffReport {
  double t = 0.0;
  double sup = 0.0;
  Vec3d at = Vec3d::Zero();
  double theta = 0.0, phi = 0.0;
  double richardson = 0.0;  // |sup(720) - sup(1440)|
  double max_grad_xi = 0.0;
};

SffReport graph_second_fundamental_form(const BaseManifold2D& base, const GradientGraph& gg, double t,
                                        int base_n = 24, int angles = 720, bool doubling = true);

struct MonotonicityReport {
  std::vector<double> t;
  std::vector<double> sup;
  bool monotone = true;
  double worst_drop = 0.0;  // max over t1 <= t2 of sup(t1) - sup(t2)
};

MonotonicityReport monotonicity_sweep(const BaseManifold2D& base, const GradientGraph& gg, int base_n = 24,
                                      int angles = 720, double tol = 1e-8);

struct FrameCheck {
  double tangent_error = 0.0;  // | |X~|^2 - (|X|^2 + |nabla_X xi|^2) |
  double normal_error = 0.0;   // | |Z~|^2 - (|Z|^2 + |nabla_Z xi|^2) |
  double adjoint_error = 0.0;  // | |(nabla xi)^* Z|^2 - |nabla_Z xi|^2 |
  double symmetry_error = 0.0; // | A - A^T |
};

// Lifted frames in TTL ~ TL + TL (horizontal + vertical), checked at sampled points.
FrameCheck frame_consistency(const BaseManifold2D& base, const GradientGraph& gg, int base_n = 8);

struct GraphTamenessResult {
  bool holds = false;
  bool sandwich = true;
  bool projection = true;
  bool projection_evaluated = false;
  double worst_lower = 0.0;  // min d_xi - d_L
  double worst_upper = 0.0;  // min sqrt(1 + g^2) d_L - d_xi
  double worst_projection = 0.0;
  double max_grad_xi = 0.0;
  double epsilon_estimate = 1.0;  // min over pairs of d_TL / min(1, d_xi) (torus)
  double implied_epsilon = 1.0;   // (1 + max |nabla xi|^2)^{-1/2}
  int pairs = 0;
};

GraphTamenessResult graph_tameness_bounds(const BaseManifold2D& base, const GradientGraph& gg, int samples,
                                          double tol = 1e-9);

// Suite members with closed-form derivatives.
GradientGraph torus_cos(double eps);          // eps cos x1
GradientGraph torus_mixed(double eps);        // eps (cos x1 cos x2 + 0.3 sin 2 x1)
GradientGraph sphere_harmonic1(double eps);   // eps z
GradientGraph sphere_cubic(double eps);       // eps (x y + 0.5 z^3)
GradientGraph zero_graph(BaseKind kind);

}  // namespace lagbound
