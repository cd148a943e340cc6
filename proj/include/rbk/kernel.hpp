#pragma once

#include <string>
#include <string_view>

#include "rbk/errors.hpp"
#include "rbk/kernel_expr.hpp"

namespace rbk {

// Growth regimes of the rate coefficients, ordered by inclusion:
// Bounded (a <= K) is contained in SqrtProduct (a <= K*(jk)^{1/2}) is
// contained in LinearProduct (a <= K*jk).
enum class GrowthClass { bounded, sqrt_product, linear_product, unverified };

std::string_view to_string(GrowthClass c);

// Symmetric nonnegative rate coefficient a(j,k).
//
// Built-in forms are symmetric by construction. Expression kernels are
// validated numerically on a sample grid; asymmetry or negativity there is a
// hard configuration error. Immutable after construction, safe for concurrent
// reads.
class Kernel {
public:
  enum class Form { constant, product_power, expression };

  static Kernel constant(double K);
  // a(j,k) = K*(j*k)^beta with beta in [0,1].
  static Kernel product_power(double K, double beta);
  // Validates the expression on [1..grid]^2: symmetric, nonnegative, finite.
  static Kernel expression(ExprPtr ast, int grid = 64);
  // "const:K" | "product:K,beta" | "expr:<expression>"; expression kernels
  // are validated on [1..max(64,grid_hint)]^2.
  static Kernel parse_spec(std::string_view spec, int grid_hint = 64);

  double eval(int j, int k) const;

  Form form() const { return form_; }
  double coefficient() const { return coeff_; }
  double exponent() const { return beta_; }
  const ExprPtr& ast() const { return ast_; }

  // a(j,k) = K * w(j) * w(k) for some per-index weight; true for the
  // constant and product-power forms, which is what the fast RHS path needs.
  bool separable() const { return form_ != Form::expression; }

  bool is_constant() const { return form_ == Form::constant; }

  GrowthClass classify_growth(int sample_limit = 64) const;

  // Canonical spec string, used in run metadata.
  const std::string& spec_string() const { return spec_; }

private:
  friend Kernel validate_kernel(ExprPtr ast, int grid);

  Kernel(Form form, double coeff, double beta, ExprPtr ast, std::string spec)
      : form_(form), coeff_(coeff), beta_(beta), ast_(std::move(ast)),
        spec_(std::move(spec)) {}

  Form form_;
  double coeff_;
  double beta_;
  ExprPtr ast_;
  std::string spec_;
};

// Evaluates the tree on [1..grid]^2 and wraps it as an expression kernel.
// Throws AsymmetricKernel, NegativeKernel or EvaluationError on the first
// offending pair.
Kernel validate_kernel(ExprPtr ast, int grid);

}  // namespace rbk
