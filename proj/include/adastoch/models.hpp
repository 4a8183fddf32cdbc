/* Copyright 2026 The adastoch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "adastoch/core/linalg.hpp"
#include "adastoch/core/rng.hpp"

namespace adastoch {

struct Sample {
  ParamVector x;
  double y = 0.0;
};

/// Gaussian design X = Q diag(sqrt(eigs)) Z with Z standard normal, so
/// E[X X^T] = Q diag(eigs) Q^T.
struct Design {
  SymMatrix rotation;     // orthogonal and symmetric (a Householder reflector)
  ParamVector sqrt_eigs;  // square roots of the eigenvalues of the covariance
  SymMatrix covariance;
};

// Eigenvalues geometric from 1 down to 1/kappa, rotated by the reflector
// I - 2 u u^T with u the normalized all-ones vector. kappa >= 1.
Design make_design(Index d, double kappa);
// Covariance rotation * diag(eigs) * rotation; checks orthogonality and
// positive eigenvalues.
Design make_design(const SymMatrix& rotation, const ParamVector& eigs);

enum class NoiseKind { gaussian, student_t };

// Y = X^T theta* + eps, loss 1/2 (y - x^T h)^2.
struct LinearModelSpec {
  ParamVector theta_star;
  Design design;
  double noise_std = 1.0;
  NoiseKind noise_kind = NoiseKind::gaussian;
  // Degrees of freedom for Student-t noise: integer > 4 so that the noise
  // has a finite fourth moment. The draw is rescaled to have std noise_std.
  int noise_df = 0;
};

struct MinimizerReference {
  ParamVector theta;
  double tolerance = 0.0;
  int newton_steps = 0;
};

// Labels in {-1, +1} with P[Y = 1 | X] = 1 / (1 + exp(-theta_gen^T X)); loss
// log(1 + exp(-y x^T h)) + sigma/2 ||h||^2.
struct GlmRidgeSpec {
  ParamVector theta_gen;
  Design design;
  double sigma = 0.1;
  std::optional<MinimizerReference> reference;
};

// One-dimensional objective g((x, y), h) = (x h)^2 + y floor(h) h with
// x ~ Bernoulli(1/2) and y uniform on {-1, +1}. G(h) = h^2 / 2, minimized
// at 0, but the naive Newton recursion can blow up on it.
struct FloorPathSpec {};

using ModelSpec = std::variant<LinearModelSpec, GlmRidgeSpec, FloorPathSpec>;

LinearModelSpec make_linear_model(ParamVector theta_star, Design design,
                                  double noise_std,
                                  NoiseKind noise_kind = NoiseKind::gaussian,
                                  int noise_df = 0);
GlmRidgeSpec make_glm_model(ParamVector theta_gen, Design design, double sigma);

Index dim(const ModelSpec& model);

void sample_into(const ModelSpec& model, RngStream& stream, Sample& out);
Sample sample(const ModelSpec& model, RngStream& stream);

// g(sample, h).
double loss(const ModelSpec& model, const Sample& s, const ParamVector& h);

// Gradient of g(sample, .) at h. `out` must not alias `h`.
void stoch_grad_into(const ModelSpec& model, const Sample& s,
                     const ParamVector& h, ParamVector& out);
ParamVector stoch_grad(const ModelSpec& model, const Sample& s,
                       const ParamVector& h);

// Logistic loss and its derivatives in the margin argument.
double logistic_loss(double y, double margin);
double logistic_grad(double y, double margin);
// 1/(1+e^m) * 1/(1+e^-m), in (0, 1/4], floored at 1e-300.
double logistic_hess_weight(double margin);

double hess_weight(const GlmRidgeSpec& spec, const Sample& s,
                   const ParamVector& h);

// Scalar c such that the data part of the per-sample Hessian is c x x^T:
// 1 for the linear model, the logistic weight for the GLM, 2 for the floor
// path model. The GLM ridge term is not included.
double curvature_weight(const ModelSpec& model, const Sample& s,
                        const ParamVector& h);

// theta* for the linear model, the pinned reference for the GLM (throws if
// absent), 0 for the floor path model.
ParamVector risk_minimizer(const ModelSpec& model);

/// Reference value of the ridge-logistic minimizer.
///
/// Full-batch damped Newton on the empirical regularized risk over n_ref
/// samples drawn from stream (seed, 0). Stops when the gradient norm drops
/// below 1e-10; throws NumericalError after 200 Newton steps. The returned
/// tolerance is 3 sqrt(Tr(H^-1 Sigma H^-1) / n_ref) with H and Sigma the
/// empirical Hessian and gradient covariance at the solution.
MinimizerReference minimizer_reference(const GlmRidgeSpec& spec,
                                       std::uint64_t n_ref, std::uint64_t seed);

struct LinearDiagnostics {
  double mu = 0.0;       // lambda_min(H)
  double l_grad = 0.0;   // lambda_max(H)
  SymMatrix hessian;     // H = E[X X^T]
  double trace_h_inv_noise_var = 0.0;  // E[eps^2] Tr(H^-1)
};

LinearDiagnostics model_diagnostics(const LinearModelSpec& spec);

}  // namespace adastoch
