#include "rbk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rbk {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(std::string_view text, const char* what) {
  try {
    std::size_t used = 0;
    std::string s(text);
    double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError(std::string("trailing characters in ") + what);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(std::string("cannot parse ") + what + " from '" +
                      std::string(text) + "'");
  }
}

}  // namespace

std::string_view to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::bounded: return "Bounded";
    case GrowthClass::sqrt_product: return "SqrtProduct";
    case GrowthClass::linear_product: return "LinearProduct";
    case GrowthClass::unverified: return "Unverified";
  }
  return "Unverified";
}

Kernel Kernel::constant(double K) {
  if (!(K >= 0.0) || !std::isfinite(K))
    throw ConfigError("constant kernel requires K >= 0");
  return Kernel(Form::constant, K, 0.0, nullptr, "const:" + format_number(K));
}

Kernel Kernel::product_power(double K, double beta) {
  if (!(K >= 0.0) || !std::isfinite(K))
    throw ConfigError("product kernel requires K >= 0");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw ConfigError("product kernel requires beta in [0,1]");
  return Kernel(Form::product_power, K, beta, nullptr,
                "product:" + format_number(K) + "," + format_number(beta));
}

Kernel Kernel::expression(ExprPtr ast, int grid) {
  return validate_kernel(std::move(ast), grid);
}

Kernel Kernel::parse_spec(std::string_view spec, int grid_hint) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("kernel spec must be const:K, product:K,beta or "
                      "expr:<expression>");
  std::string_view head = spec.substr(0, colon);
  std::string_view body = spec.substr(colon + 1);
  if (head == "const") return constant(parse_real(body, "kernel constant K"));
  if (head == "product") {
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw ConfigError("product kernel spec is product:K,beta");
    return product_power(parse_real(body.substr(0, comma), "kernel K"),
                         parse_real(body.substr(comma + 1), "kernel beta"));
  }
  if (head == "expr")
    return expression(parse_expression(body), std::max(64, grid_hint));
  throw ConfigError("unknown kernel form '" + std::string(head) + "'");
}

double Kernel::eval(int j, int k) const {
  switch (form_) {
    case Form::constant:
      return coeff_;
    case Form::product_power: {
      double p = static_cast<double>(j) * static_cast<double>(k);
      if (beta_ == 1.0) return coeff_ * p;
      if (beta_ == 0.5) return coeff_ * std::sqrt(p);
      if (beta_ == 0.0) return coeff_;
      return coeff_ * std::pow(p, beta_);
    }
    case Form::expression:
      return ast_->eval(j, k);
  }
  return 0.0;  // unreachable
}

GrowthClass Kernel::classify_growth(int sample_limit) const {
  if (sample_limit < 2) throw ConfigError("sample_limit must be >= 2");
  switch (form_) {
    case Form::constant:
      return GrowthClass::bounded;
    case Form::product_power:
      if (beta_ == 0.0) return GrowthClass::bounded;
      return beta_ <= 0.5 ? GrowthClass::sqrt_product
                          : GrowthClass::linear_product;
    case Form::expression:
      break;
  }

  // Sampled classification: a class holds when the normalized ratio
  // a(j,k)/(jk)^beta stops growing between the half grid and the full grid.
  const int full = sample_limit;
  const int half = std::max(1, sample_limit / 2);
  const double betas[3] = {0.0, 0.5, 1.0};
  const GrowthClass classes[3] = {GrowthClass::bounded,
                                  GrowthClass::sqrt_product,
                                  GrowthClass::linear_product};
  for (int c = 0; c < 3; ++c) {
    double max_half = 0.0, max_full = 0.0;
    for (int j = 1; j <= full; ++j) {
      for (int k = 1; k <= full; ++k) {
        double denom = std::pow(static_cast<double>(j) * k, betas[c]);
        double r = eval(j, k) / denom;
        max_full = std::max(max_full, r);
        if (j <= half && k <= half) max_half = std::max(max_half, r);
      }
    }
    if (max_full <= max_half * (1.0 + 1e-9)) return classes[c];
  }
  return GrowthClass::unverified;
}

Kernel validate_kernel(ExprPtr ast, int grid) {
  if (grid < 2) throw ConfigError("validation grid must be >= 2");
  for (int j = 1; j <= grid; ++j) {
    for (int k = j; k <= grid; ++k) {
      double a = ast->eval(j, k);
      double b = ast->eval(k, j);
      if (!std::isfinite(a))
        throw EvaluationError(j, k, "non-finite value");
      if (!std::isfinite(b))
        throw EvaluationError(k, j, "non-finite value");
      if (a != b) throw AsymmetricKernel(j, k, a, b);
      if (a < 0.0) throw NegativeKernel(j, k, a);
    }
  }
  std::string spec = "expr:" + to_string(*ast);
  return Kernel(Kernel::Form::expression, 0.0, 0.0, std::move(ast),
                std::move(spec));
}

}  // namespace rbk
