#pragma once

#include "torusflow/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace torusflow {

/// Fixed registry of check identifiers; every report record carries one of
/// these so results can be traced back to the statement being verified.
namespace anchors {
inline constexpr const char* kProjectEmbedIdentity = "embedding.project-embed-identity";
inline constexpr const char* kEmbedIsometry = "embedding.isometry";
inline constexpr const char* kPythagoras = "embedding.pythagoras";
inline constexpr const char* kCellMass = "embedding.cell-mass";
inline constexpr const char* kEmbeddedTV = "tv.embedded-jump-sum";
inline constexpr const char* kTVProjectionBound = "tv.projection-bound";
inline constexpr const char* kInnerSandwich = "interp.inner-product-sandwich";
inline constexpr const char* kNormGapIdentity = "interp.norm-gap-identity";
inline constexpr const char* kL4Sandwich = "interp.l4-sandwich";
inline constexpr const char* kGammaSpectrum = "gamma.spectrum";
inline constexpr const char* kGammaPosDef = "gamma.positive-definiteness";
inline constexpr const char* kGammaCoercivity = "gamma.gradient-coercivity";
inline constexpr const char* kShiftGradient = "gamma.shift-gradient-identity";
inline constexpr const char* kGammaExp = "gamma.exponential-formulas";
inline constexpr const char* kGammaSemigroup = "gamma.semigroup";
inline constexpr const char* kProjStability = "projection.derivative-stability";
inline constexpr const char* kInterpEstimates = "projection.error-estimates";
inline constexpr const char* kProjConvergence = "projection.l2-convergence";
inline constexpr const char* kTVOracle = "tvflow.plateau-oracle";
inline constexpr const char* kTVContraction = "tvflow.contraction";
inline constexpr const char* kTVEnergyIdentity = "tvflow.energy-identity";
inline constexpr const char* kTVRefinement = "tvflow.refinement-consistency";
inline constexpr const char* kTVMass = "tvflow.mass-conservation";
inline constexpr const char* kTVMonotone = "tvflow.energy-monotonicity";
inline constexpr const char* kTVEvi = "tvflow.evi-residual";
inline constexpr const char* kCPMin = "acflow.minimum-principle";
inline constexpr const char* kCPGrowth = "acflow.growth-estimate";
inline constexpr const char* kSAC = "acflow.smoothing-inequality";
inline constexpr const char* kACMonotone = "acflow.energy-monotonicity";
inline constexpr const char* kACContraction = "acflow.contraction";
inline constexpr const char* kACEvi = "acflow.evi-residual";
inline constexpr const char* kACVectorField = "acflow.vector-field-consistency";
inline constexpr const char* kACScalarODE = "acflow.constant-data-ode";
inline constexpr const char* kTDFBound = "tdf.metric-comparison-bound";
inline constexpr const char* kTDFOrder = "tdf.empirical-order";
inline constexpr const char* kTDFConstants = "tdf.constants";
inline constexpr const char* kCACErrors = "cac.error-decrease";
inline constexpr const char* kCACOrder = "cac.empirical-order";
inline constexpr const char* kCACHypothesis = "cac.initial-data-hypothesis";
inline constexpr const char* kCACInterchange = "cac.embedding-interchange";
inline constexpr const char* kCACReference = "cac.reference-self-consistency";
inline constexpr const char* kPoincare2 = "poincare.second-order";
inline constexpr const char* kPoincare4 = "poincare.fourth-order";
inline constexpr const char* kPoincareRate = "poincare.richardson-rate";
}  // namespace anchors

struct SuiteConfig {
  std::vector<int> grids;      // empty -> per-suite defaults
  double alpha = 1.0;
  double lambda = 2.0;
  double delta = 1.0;
  double T = -1.0;             // < 0 -> suite default
  double tau = -1.0;           // < 0 -> per-grid rule
  double eps_prox = 1e-10;
  int quad_order = 8;
  std::uint64_t seed = 42;
  std::string out_dir;         // empty -> no artifact files
};

Report run_operators_suite(const SuiteConfig& cfg);
Report run_gamma_suite(const SuiteConfig& cfg);
Report run_interp_suite(const SuiteConfig& cfg);
Report run_tvflow_suite(const SuiteConfig& cfg);
Report run_acflow_suite(const SuiteConfig& cfg);
Report run_tdf_suite(const SuiteConfig& cfg);
Report run_cac_suite(const SuiteConfig& cfg);
Report run_poincare_suite(const SuiteConfig& cfg);

/// Dispatch by suite name ("all" concatenates every suite). Throws on an
/// unknown name; individual check failures are recorded, never thrown.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

/// Write <out>/<suite>.report.json and <out>/<suite>.csv.
void write_artifacts(const Report& rep, const std::string& out_dir);

}  // namespace torusflow
