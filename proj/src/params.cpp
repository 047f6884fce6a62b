#include "fmgame/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fmgame {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << "; ";
    out << items[i];
  }
  return out.str();
}

bool above(double value, double bound) {
  return value > bound + kBoundSlack * std::max(1.0, std::abs(bound));
}

}  // namespace

InvalidParams::InvalidParams(std::vector<std::string> violations)
    : Error("invalid parameters: " + join(violations)), violations_(std::move(violations)) {}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Harvest: return "Harvest";
    case Regime::Defend: return "Defend";
    case Regime::Dominate: return "Dominate";
  }
  return "?";
}

const char* to_string(Developer developer) noexcept {
  return developer == Developer::Incumbent ? "Incumbent" : "Entrant";
}

bool ValidationReport::has(const std::string& name) const {
  return std::find(violations.begin(), violations.end(), name) != violations.end();
}

double k_max(const ModelParams& p) {
  const double margin_high = p.theta - p.w_high + p.s;
  const double margin_low = p.theta - p.w_low + p.s;
  if (!(margin_high > 0.0) || !(margin_low > 0.0)) {
    throw DomainError("k_max: theta - w + s must be positive");
  }
  const double spillover_bound = 2.0 * p.c * p.eta_cap / ((1.0 + p.eta_cap) * margin_low);
  const double high_fee_bound =
      2.0 * p.c * (2.0 * p.theta + 2.0 * p.s - p.w_high - p.w_low) * (p.w_high - p.w_low) /
      (margin_high * margin_high * margin_low);
  return std::min(spillover_bound, high_fee_bound);
}

ValidationReport validate(const ModelParams& p) {
  ValidationReport report;
  auto& v = report.violations;

  for (double x : {p.theta, p.c, p.w_high, p.w_low, p.eta_cap, p.k, p.s}) {
    if (!std::isfinite(x)) {
      v.emplace_back("parameters must be finite");
      return report;
    }
  }

  if (!(p.theta > 0.0)) v.emplace_back("theta must be positive");
  if (!(p.c > 0.0)) v.emplace_back("c must be positive");
  if (!(p.eta_cap > 0.0)) v.emplace_back("eta_cap must be positive");
  if (p.w_low < 0.0) v.emplace_back("w_low must be non-negative");
  if (above(p.w_low, p.w_high)) v.emplace_back("w_low exceeds w_high");
  if (above(p.w_high, p.theta / 2.0)) v.emplace_back("w_high exceeds theta/2");
  if (p.k < 0.0) v.emplace_back("k must be non-negative");
  if (p.s < 0.0) v.emplace_back("s must be non-negative");
  if (above(p.s, p.w_low)) v.emplace_back("s exceeds w_low");

  // The flywheel bound is only meaningful once the fee structure is sane.
  if (v.empty()) {
    if (above(p.k, k_max(p))) v.emplace_back("k exceeds k_max");
  }
  return report;
}

void require_valid(const ModelParams& p) {
  auto report = validate(p);
  if (!report.ok()) throw InvalidParams(std::move(report.violations));
}

}  // namespace fmgame
