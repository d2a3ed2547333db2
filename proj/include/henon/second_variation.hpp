#pragma once

#include <string>
#include <vector>

#include "henon/henon_radial.hpp"
#include "henon/steklov.hpp"
#include "henon/tridiag.hpp"

namespace henon::secondvar {

/// Radial forms of the second variation after separating the spherical
/// harmonic of degree `harmonic` (angular factor l(l+n-2)):
///   A(h) = (p-1) int v'^{p-2} h'^2 r^{n-1} + L int v'^{p-2} h^2 r^{n-3}
///        + (p-1) int v^{p-2} h^2 r^{n-1} - (q-1) mu^{q/p} int r^{alpha+n-1} v^{q-2} h^2
///   B(h) = int h'^2 r^{n-1} + L int h^2 r^{n-3} + int h^2 r^{n-1}
/// `positive` is A without the last term and `henon` that term alone, so that
/// A = positive - henon.
struct ReducedForms {
  SymTridiag a;
  SymTridiag b;
  SymTridiag positive;
  SymTridiag henon;
  int harmonic = 1;
};

double angularFactor(int n, int harmonic);

ReducedForms assembleReducedForms(const radial::HenonSolution& sol, int harmonic = 1);

/// The same assembly with v replaced by the Steklov profile and the Hénon term
/// replaced by the point mass boundaryCoefficient * h(1)^2 it concentrates to.
/// With boundaryCoefficient = 0 this is steklov::fpForm().
SymTridiag assembleLimitForm(const steklov::SteklovSolution& phi, double boundaryCoefficient,
                             int harmonic = 1);

/// (q-1) lambda^{2/p} (meas S)^{2/p-1}: the boundary mass of the Hénon term
/// as alpha grows.
double limitBoundaryCoefficient(int n, double p, double q, double lambdaP);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // B-normalized, last entry > 0
  bool fallback = false;       // dense generalized solve was used
  int inverseIterations = 0;
};

/// Smallest eigenvalue of the pencil (A, B) with B positive definite:
/// Sturm-count bisection, then inverse iteration for the eigenvector. Falls
/// back to a dense symmetric-definite solve when inverse iteration stalls.
Eigenpair minRayleigh(const SymTridiag& a, const SymTridiag& b);

/// All eigenvalues of the pencil by a dense generalized eigensolver (ascending).
std::vector<double> denseEigenvalues(const SymTridiag& a, const SymTridiag& b);

struct PotentialProfile {
  std::vector<double> radius;  // interior nodes
  std::vector<double> values;
  std::vector<double> signChanges;
};

/// V(r) = L v'^{p-2}/r^2 + (p-1) v^{p-2} + lambda - (q-1) mu^{q/p} r^alpha v^{q-2}
/// at the interior nodes, with each sign change refined by Brent.
PotentialProfile potentialProfile(const radial::HenonSolution& sol, double lambda,
                                  int harmonic = 1, bool dropHenonTerm = false);

struct PropertyReport {
  double minInteriorDerivative = 0.0;
  bool monotone = false;
  double boundRatio = 0.0;  // sup over interior nodes of r h'(r) / h(1)
  double nearZeroSlope = 0.0;
  /// Exponent of h' near 0 predicted for the sign of lambda: -1/(p-1) when
  /// lambda > 0, -(p-2)/(p-1) otherwise.
  double predictedSlope = 0.0;
  /// Exponent of the Euler-Lagrange equation of A/B itself (h ~ r near 0).
  double variationalSlope = 0.0;
  std::size_t slopePoints = 0;
  bool diagnosticOnly = false;  // sigma > 0
};

struct SecondVariationReport {
  radial::ProblemParams params;
  int harmonic = 1;
  int refinement = 0;
  double sigma = 0.0;  // min A/B
  /// min A/(A + henon term); same sign as sigma on a fixed grid and stable
  /// under refinement also for p > 2, where (v')^{p-2} degenerates at 0.
  double tau = 0.0;
  double lambdaPQA = 0.0;  // max(0, -sigma)
  /// Minimizer of A/(A + henon term). The constraint B coincides with that
  /// denominator at p = 2; for p > 2 the lowest B-eigenvector is a mode pinned
  /// at the origin where (v')^{p-2} vanishes, so the profile properties are
  /// read off this pencil instead.
  RadialFunction h;
  RadialFunction hSigma;  // lowest eigenvector of (A, B), B-normalized
  std::vector<double> r0;  // sign changes of V
  bool positive = false;
  bool fallback = false;
  double mu = 0.0;
};

struct AnalyzeOptions {
  int harmonic = 1;
  int refinement = 4;
  radial::Options radial;
};

SecondVariationReport analyze(const radial::ProblemParams& params, const AnalyzeOptions& options = {});
/// Reuses an already solved profile on its own grid.
SecondVariationReport analyze(const radial::HenonSolution& sol, int harmonic = 1);

PropertyReport checkEigenprofileProperties(const SecondVariationReport& report);

struct ScanCell {
  double q = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  bool positive = false;
  std::string error;  // non-empty when the cell failed
};

struct ScanRow {
  double q = 0.0;
  std::vector<ScanCell> cells;  // ordered as alphaList
  bool positiveAtLargestAlpha = false;
  bool sigmaIncreasing = false;  // along alphaList
};

/// Second-variation sign over q x alpha at fixed (n, p); cells run in parallel.
std::vector<ScanRow> positivityScan(int n, double p, const std::vector<double>& qList,
                                    const std::vector<double>& alphaList,
                                    const AnalyzeOptions& options = {});
std::vector<ScanRow> positivityScanSerial(int n, double p, const std::vector<double>& qList,
                                          const std::vector<double>& alphaList,
                                          const AnalyzeOptions& options = {});

}  // namespace henon::secondvar
