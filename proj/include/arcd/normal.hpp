#pragma once

namespace arcd {

double normal_cdf(double x);
double normal_pdf(double x);
double log_normal_pdf(double x);
/// Inverse of normal_cdf. Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace arcd
