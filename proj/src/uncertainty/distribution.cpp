#include "rcplan/uncertainty/distribution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>

#include "rcplan/error.hpp"

namespace rcplan::uncertainty {
namespace {

constexpr double kHankelTol = 1e-8;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Distribution Distribution::uniform(double lower, double upper) {
  if (!(lower < upper)) throw InputError("uniform: lower must be < upper");
  return Distribution(Uniform{lower, upper});
}

Distribution Distribution::normal(double mean, double variance) {
  if (!(variance > 0.0)) throw InputError("normal: variance must be > 0");
  return Distribution(Normal{mean, variance});
}

Distribution Distribution::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("beta: a and b must be > 0");
  return Distribution(Beta{a, b});
}

Distribution Distribution::moment_table(std::vector<double> m) {
  if (m.empty() || std::abs(m[0] - 1.0) > 1e-12)
    throw InputError("moment table: m_0 must equal 1");
  const int half = static_cast<int>(m.size() - 1) / 2;
  Eigen::MatrixXd hankel(half + 1, half + 1);
  for (int i = 0; i <= half; ++i)
    for (int j = 0; j <= half; ++j) hankel(i, j) = m[static_cast<std::size_t>(i + j)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hankel, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kHankelTol)
    throw InputError("moment table: Hankel matrix is not positive semidefinite");
  return Distribution(MomentTable{std::move(m)});
}

int Distribution::max_order() const {
  if (const auto* t = std::get_if<MomentTable>(&kind_))
    return static_cast<int>(t->moments.size()) - 1;
  return -1;
}

std::string Distribution::describe() const {
  return std::visit(
      Overloaded{
          [](const Uniform& u) { return "uniform[" + fmt(u.lower) + "," + fmt(u.upper) + "]"; },
          [](const Normal& n) { return "normal(mean=" + fmt(n.mean) + ",variance=" + fmt(n.variance) + ")"; },
          [](const Beta& b) { return "beta(" + fmt(b.a) + "," + fmt(b.b) + ")"; },
          [](const MomentTable& t) {
            return "moments(order " + std::to_string(t.moments.size() - 1) + ")";
          }},
      kind_);
}

std::vector<double> moments(const Distribution& d, int max_order) {
  if (max_order < 0) return {};
  std::vector<double> m(static_cast<std::size_t>(max_order) + 1);
  m[0] = 1.0;
  std::visit(
      Overloaded{
          [&](const Uniform& u) {
            // (u^{k+1} - l^{k+1}) / ((k+1)(u-l))
            double up = u.upper, lp = u.lower;
            for (int k = 1; k <= max_order; ++k) {
              up *= u.upper;
              lp *= u.lower;
              m[k] = (up - lp) / (static_cast<double>(k + 1) * (u.upper - u.lower));
            }
          },
          [&](const Normal& n) {
            // M_k = mean M_{k-1} + (k-1) var M_{k-2}
            for (int k = 1; k <= max_order; ++k)
              m[k] = n.mean * m[k - 1] + (k >= 2 ? (k - 1) * n.variance * m[k - 2] : 0.0);
          },
          [&](const Beta& b) {
            for (int k = 1; k <= max_order; ++k)
              m[k] = (b.a + k - 1) / (b.a + b.b + k - 1) * m[k - 1];
          },
          [&](const MomentTable& t) {
            if (max_order >= static_cast<int>(t.moments.size()))
              throw InputError("moment of order " + std::to_string(max_order) +
                               " requested from a table of order " +
                               std::to_string(t.moments.size() - 1));
            for (int k = 0; k <= max_order; ++k) m[k] = t.moments[k];
          }},
      d.kind());
  return m;
}

double moment(const Distribution& d, int order) {
  if (order < 0) throw StructuralError("negative moment order");
  return moments(d, order).back();
}

}  // namespace rcplan::uncertainty
