#include "rcplan/poly/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcplan/error.hpp"
#include "rcplan/poly/multi_poly.hpp"

namespace rcplan::poly {
namespace {

UniPoly normalized(const UniPoly& p) {
  const double m = p.max_abs_coeff();
  return m > 0.0 ? p * (1.0 / m) : p;
}

bool divides(const UniPoly& d, const UniPoly& p) {
  return divmod(p, d).remainder.max_abs_coeff() <= kGcdTolerance;
}

// Chain members are scaled to unit max coefficient. Alongside each member
// we carry a running bound on its coefficient error: normalizing a small
// remainder amplifies the noise it inherited, so a fixed threshold would
// mistake accumulated rounding for a genuine nonzero remainder.
std::vector<UniPoly> build_chain(const UniPoly& f) {
  constexpr double u = std::numeric_limits<double>::epsilon();
  constexpr double kNoiseFactor = 64.0;
  std::vector<UniPoly> seq{normalized(f)};
  if (f.degree() <= 0) return seq;
  seq.push_back(normalized(f.derivative()));
  const double n = static_cast<double>(f.degree() + 1);
  std::vector<double> err{n * u, 2.0 * n * u};
  while (seq.back().degree() > 0) {
    const UniPoly& num = seq[seq.size() - 2];
    const UniPoly& den = seq.back();
    const auto qr = divmod(num, den);
    const double q = qr.quotient.max_abs_coeff();
    const double noise = err[err.size() - 2] + q * n * err.back() + n * u * (1.0 + q);
    const double size = qr.remainder.max_abs_coeff();
    if (size <= kRemainderEps) break;
    // Within the rounding bound: accept den as gcd(f, f') only if it
    // actually divides both, otherwise the remainder is real.
    if (size <= kNoiseFactor * noise && divides(den, seq[0]) && divides(den, seq[1])) break;
    seq.push_back(normalized(-qr.remainder));
    err.push_back(noise / size);
  }
  return seq;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SturmChain::SturmChain(const UniPoly& p) {
  if (p.is_zero()) throw StructuralError("Sturm chain of the zero polynomial");
  seq_ = build_chain(p);
  // A nonconstant last member is gcd(p, p'): deflate to the square-free part.
  if (seq_.size() > 1 && seq_.back().degree() >= 1) {
    UniPoly sq_free = divmod(seq_.front(), seq_.back()).quotient;
    seq_ = build_chain(sq_free);
  }
}

int SturmChain::variations(double x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : seq_) {
    const int s = sign(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sturm_root_count(const UniPoly& p, double a, double b) {
  if (!(a < b)) throw StructuralError("sturm_root_count requires a < b");
  return SturmChain(p).count(a, b);
}

namespace {

double refine_root(const SturmChain& chain, double l, double r) {
  const UniPoly& f = chain.sequence().front();
  const double fr = f(r);
  if (fr == 0.0) return r;
  double fl = f(l);
  const bool bracket = fl != 0.0 && sign(fl) != sign(fr);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (l + r);
    if (m <= l || m >= r) break;
    if (bracket) {
      const double fm = f(m);
      if (fm == 0.0) return m;
      if (sign(fm) == sign(fl)) {
        l = m;
        fl = fm;
      } else {
        r = m;
      }
    } else if (chain.count(l, m) > 0) {
      r = m;
    } else {
      l = m;
    }
  }
  return 0.5 * (l + r);
}

void isolate(const SturmChain& chain, double l, double r, int n, int depth,
             std::vector<double>& out) {
  if (n <= 0) return;
  if (n == 1) {
    out.push_back(refine_root(chain, l, r));
    return;
  }
  const double m = 0.5 * (l + r);
  if (depth > 120 || m <= l || m >= r) {
    out.push_back(m);
    return;
  }
  const int left = chain.count(l, m);
  isolate(chain, l, m, left, depth + 1, out);
  isolate(chain, m, r, n - left, depth + 1, out);
}

}  // namespace

std::vector<double> isolate_roots(const UniPoly& p, double a, double b) {
  if (!(a < b)) throw StructuralError("isolate_roots requires a < b");
  SturmChain chain(p);
  std::vector<double> roots;
  if (chain.sequence().front()(a) == 0.0) roots.push_back(a);
  isolate(chain, a, b, chain.count(a, b), 0, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string_view to_string(IntervalVerdict::Outcome o) {
  switch (o) {
    case IntervalVerdict::Outcome::CertifiedNonpositive: return "certified-nonpositive";
    case IntervalVerdict::Outcome::Violated: return "violated";
    case IntervalVerdict::Outcome::Degenerate: return "degenerate";
  }
  return "?";
}

IntervalVerdict certify_nonpositive(const UniPoly& p, double a, double b, double tol) {
  if (!(a < b)) throw StructuralError("certify_nonpositive requires a < b");
  IntervalVerdict v;
  if (p.max_abs_coeff() <= kCanonicalEps) {
    v.outcome = IntervalVerdict::Outcome::Degenerate;
    return v;
  }

  const double width = b - a;
  double max_val = -std::numeric_limits<double>::infinity();
  double arg_max = a;
  auto probe = [&](double s) {
    const double t = std::clamp(a + width * s, a, b);
    const double val = p(t);
    if (val > max_val) {
      max_val = val;
      arg_max = t;
    }
  };

  constexpr int kProbes = 32;
  for (int i = 0; i <= kProbes; ++i) probe(static_cast<double>(i) / kProbes);

  const UniPoly q = p.compose_affine(a, width);
  const bool root_free =
      !q.is_zero() && (q.degree() == 0 || SturmChain(q).count(0.0, 1.0) == 0);
  if (!(root_free && q(0.0) < 0.0)) {
    const UniPoly dq = q.derivative();
    if (!dq.is_zero() && dq.degree() >= 1)
      for (double s : isolate_roots(dq, 0.0, 1.0)) probe(s);
  }

  v.margin = -max_val;
  if (max_val > tol) {
    v.outcome = IntervalVerdict::Outcome::Violated;
    v.witness = arg_max;
  } else {
    v.outcome = IntervalVerdict::Outcome::CertifiedNonpositive;
  }
  return v;
}

}  // namespace rcplan::poly
