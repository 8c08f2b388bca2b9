#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace rcplan::uncertainty {

struct Uniform {
  double lower;
  double upper;
};

/// Parameterized by variance, never by standard deviation.
struct Normal {
  double mean;
  double variance;
};

/// Beta(a, b) on [0, 1].
struct Beta {
  double a;
  double b;
};

/// Raw moments m_0..m_K of an otherwise unspecified distribution.
struct MomentTable {
  std::vector<double> moments;
};

/// One of the supported families. Construction validates the parameters
/// and throws InputError when they are out of range.
class Distribution {
 public:
  using Kind = std::variant<Uniform, Normal, Beta, MomentTable>;

  static Distribution uniform(double lower, double upper);
  static Distribution normal(double mean, double variance);
  static Distribution beta(double a, double b);
  /// Requires m_0 = 1 and a positive semidefinite Hankel matrix
  /// [m_{i+j}], i, j <= K/2, up to a smallest-eigenvalue tolerance of 1e-8.
  static Distribution moment_table(std::vector<double> moments);

  const Kind& kind() const { return kind_; }
  /// Highest order available; unbounded families report -1.
  int max_order() const;
  std::string describe() const;

 private:
  explicit Distribution(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// Raw moment E[w^order]. Closed forms for uniform and beta, the
/// mean/variance recursion for normal, lookup for tables (InputError past
/// the table's order).
double moment(const Distribution& d, int order);

/// Raw moments 0..max_order in one pass.
std::vector<double> moments(const Distribution& d, int max_order);

/// Uncertain variable name to its distribution; variables are independent.
using OmegaModel = std::map<std::string, Distribution>;

}  // namespace rcplan::uncertainty
