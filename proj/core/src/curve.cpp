#include "sklyanin/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sklyanin/linalg.hpp"

namespace skl {
namespace {

using I64 = std::int64_t;
using Row2 = std::array<I64, 2>;

// Hermite basis of the integer lattice spanned by `rows` in Z^2 (assumed rank 2).
std::pair<Row2, Row2> hermite_basis(std::vector<Row2> rows) {
  auto nonzero0 = [&] {
    return std::count_if(rows.begin(), rows.end(), [](const Row2& r) { return r[0] != 0; });
  };
  while (nonzero0() > 1) {
    auto piv = std::min_element(rows.begin(), rows.end(), [](const Row2& a, const Row2& b) {
      if (a[0] == 0) return false;
      if (b[0] == 0) return true;
      return std::llabs(a[0]) < std::llabs(b[0]);
    });
    const Row2 p = *piv;
    for (auto& r : rows) {
      if (&r == &*piv || r[0] == 0) continue;
      const I64 f = r[0] / p[0];
      r[0] -= f * p[0];
      r[1] -= f * p[1];
    }
  }
  Row2 b1{0, 0};
  I64 g = 0;
  for (const auto& r : rows) {
    if (r[0] != 0)
      b1 = r;
    else
      g = std::gcd(g, r[1]);
  }
  if (b1[0] < 0) b1 = {-b1[0], -b1[1]};
  return {b1, Row2{0, g}};
}

RatPair scaled(const Row2& r, I64 den) { return {Rational(r[0], den), Rational(r[1], den)}; }

cplx value(const RatPair& r, cplx T) {
  return boost::rational_cast<double>(r.r1) + boost::rational_cast<double>(r.r2) * T;
}

RatPair combo(const RatPair& a, I64 ka, const RatPair& b, I64 kb) {
  return {Rational(ka) * a.r1 + Rational(kb) * b.r1, Rational(ka) * a.r2 + Rational(kb) * b.r2};
}

Rational rfrac(const Rational& r) {
  I64 f = r.numerator() / r.denominator();
  if (r.numerator() < 0 && r.numerator() % r.denominator() != 0) --f;
  return r - Rational(f);
}

Vec4 normalized(const Vec4& v) { return v / v.norm(); }

}  // namespace

ProjPoint ProjPoint::from(const Vec4& v) { return ProjPoint{la::canonical_projective(v)}; }

double ProjPoint::dist(const ProjPoint& other) const { return la::proj_dist(coords, other.coords); }

IsogenousCurve::IsogenousCurve(const LatticeParam& lat, const RatPair& tau) : lat_(lat) {
  const I64 N = std::lcm(tau.r1.denominator(), tau.r2.denominator());
  const I64 A = (tau.r1 * N).numerator(), B = (tau.r2 * N).numerator();
  auto [b1, b2] = hermite_basis({Row2{N, 0}, Row2{0, N}, Row2{2 * A, 2 * B}});
  w1_ = scaled(b1, N);
  w2_ = scaled(b2, N);
  const cplx T = lat.tau_lat;
  auto ratio = [&] { return value(w2_, T) / value(w1_, T); };
  if (ratio().imag() < 0) w2_ = combo(w2_, -1, w1_, 0);
  // bring the period ratio into the standard fundamental domain
  for (int it = 0; it < 64; ++it) {
    const I64 m = static_cast<I64>(std::llround(ratio().real()));
    w2_ = combo(w2_, 1, w1_, -m);
    if (std::abs(ratio()) < 1.0 - 1e-12) {
      const RatPair old1 = w1_;
      w1_ = w2_;
      w2_ = combo(old1, -1, old1, 0);
    } else {
      break;
    }
  }
  w1c_ = value(w1_, T);
  lat_prime_ = lat;
  lat_prime_.tau_lat = ratio();
}

RatPair IsogenousCurve::coords(const RatPair& r) const {
  // solve r = x·w1 + y·w2
  const Rational det = w1_.r1 * w2_.r2 - w2_.r1 * w1_.r2;
  const Rational x = (r.r1 * w2_.r2 - w2_.r1 * r.r2) / det;
  const Rational y = (w1_.r1 * r.r2 - r.r1 * w1_.r2) / det;
  return {rfrac(x), rfrac(y)};
}

Vec4 IsogenousCurve::embed(const RatPair& r) const {
  const RatPair c = coords(r);
  const cplx z = value(c, lat_prime_.tau_lat);
  Vec4 v;
  v << theta(ThetaChar::c11, 2.0 * z, lat_prime_), theta(ThetaChar::c00, 2.0 * z, lat_prime_),
      theta(ThetaChar::c01, 2.0 * z, lat_prime_), theta(ThetaChar::c10, 2.0 * z, lat_prime_);
  return v;
}

Vec4 IsogenousCurve::embed_deriv(const RatPair& r) const {
  const RatPair c = coords(r);
  const cplx z = value(c, lat_prime_.tau_lat);
  Vec4 v;
  v << theta_deriv(ThetaChar::c11, 2.0 * z, lat_prime_), theta_deriv(ThetaChar::c00, 2.0 * z, lat_prime_),
      theta_deriv(ThetaChar::c01, 2.0 * z, lat_prime_), theta_deriv(ThetaChar::c10, 2.0 * z, lat_prime_);
  return 2.0 * v;
}

Curve::Curve(const LatticeParam& lat, const RatPair& tau, Calibration cal)
    : lat_(lat), cal_(std::move(cal)), iso_(lat, tau) {
  lat_.validate();
  tau_ = reduce(tau, lat_);
  const auto n = torsion_order(tau_);
  if (!n || 4 % *n == 0)
    throw Error(Errc::unsupported_torsion, "tau must have finite order outside {1,2,4}");
  n_ = static_cast<int>(*n);
  s_ = (n_ % 2 == 0) ? n_ / 2 : n_;
  J_ = structure_constants(tau_, lat_);
  h_ << cplx(0.37, 0.11), cplx(1.0, 0.0), cplx(-0.62, 0.2), cplx(0.29, -0.43);
}

Vec4 Curve::g(cplx z) const {
  Vec4 v;
  for (int j = 0; j < 4; ++j) v(j) = kGamma[j] * cal_.c[j] * theta(cal_.chars[j], 2.0 * z, lat_);
  return v;
}

Vec4 Curve::g_deriv(cplx z) const {
  Vec4 v;
  for (int j = 0; j < 4; ++j) v(j) = 2.0 * kGamma[j] * cal_.c[j] * theta_deriv(cal_.chars[j], 2.0 * z, lat_);
  return v;
}

SecantLine Curve::secant_perp(const CurvePoint& p, const CurvePoint& q) const {
  Eigen::Matrix<cplx, 2, 4> rows;
  rows.row(0) = normalized(g(p.approx)).transpose();
  if (same_point(p, q))
    rows.row(1) = normalized(g_deriv(p.approx)).transpose();
  else
    rows.row(1) = normalized(g(q.approx)).transpose();
  const Mat ker = la::null_space(rows);
  if (ker.cols() != 2)
    throw Error(Errc::degenerate_input, "secant through " + p.str() + ", " + q.str() + " has perp of dim " +
                                            std::to_string(ker.cols()));
  SecantLine l;
  l.p = p;
  l.q = q;
  l.perp = ker;
  return l;
}

bool Curve::in_two_tau_orbit(const CurvePoint& x) const {
  if (!x.exact) return false;
  for (int j = 0; j < s_; ++j)
    if (same_point(x, tau_multiple(2 * j))) return true;
  return false;
}

std::optional<std::pair<int, int>> Curve::e2_plus_ktau(const CurvePoint& x) const {
  if (!x.exact) return std::nullopt;
  const auto e2 = two_torsion(lat_);
  for (int k = 0; k < s_; ++k)
    for (int w = 0; w < 4; ++w)
      if (same_point(x, e2[w] + tau_multiple(k))) return std::make_pair(w, k);
  return std::nullopt;
}

CurvePoint Curve::random_point(std::mt19937_64& rng, std::int64_t den) const {
  std::uniform_int_distribution<std::int64_t> d(0, den - 1);
  const std::int64_t a = d(rng);
  const std::int64_t b = d(rng);
  return point(RatPair{Rational(a, den), Rational(b, den)});
}

CurvePoint isogeny_image(const Curve& curve, const CurvePoint& p) {
  if (!p.exact) throw Error(Errc::precondition, "isogeny_image needs exact coordinates");
  const auto& iso = curve.isogenous();
  CurvePoint out;
  out.exact = iso.coords(*p.exact);
  out.tau_lat = iso.lattice().tau_lat;
  out.approx = value(*out.exact, out.tau_lat);
  return out;
}

namespace {

Eigen::Matrix<cplx, 4, 2> iso_secant(const IsogenousCurve& iso, const RatPair& a, const RatPair& b) {
  Eigen::Matrix<cplx, 2, 4> rows;
  rows.row(0) = normalized(iso.embed(a)).transpose();
  rows.row(1) = normalized(iso.same(a, b) ? iso.embed_deriv(a) : iso.embed(b)).transpose();
  const Mat ker = la::null_space(rows);
  if (ker.cols() != 2) throw Error(Errc::degenerate_input, "degenerate secant on E'");
  return ker;
}

RatPair add(const RatPair& a, const RatPair& b) { return {a.r1 + b.r1, a.r2 + b.r2}; }
RatPair neg(const RatPair& a) { return {-a.r1, -a.r2}; }

}  // namespace

ChartValue chart_f(const Curve& curve, const TPoint& t) {
  for (const auto* pr : {&t.pair1, &t.pair2})
    for (const auto& x : *pr)
      if (!x.exact) throw Error(Errc::precondition, "chart_f needs exact coordinates");
  if (curve.e2_plus_ktau(t.pair1[0] + t.pair1[1]))
    throw Error(Errc::precondition, "p+q lies in E[2] + Z·tau (singular quadric)");
  const auto& iso = curve.isogenous();
  // psi: T -> Y shifts every point by eta with 2·eta = tau
  const RatPair eta{curve.tau().exact->r1 / 2, curve.tau().exact->r2 / 2};
  const RatPair p = add(*t.pair1[0].exact, eta), q = add(*t.pair1[1].exact, eta);
  const RatPair p2 = add(*t.pair2[0].exact, eta), q2 = add(*t.pair2[1].exact, eta);

  Mat4 M;
  M.topRows<2>() = iso_secant(iso, p, q).transpose();
  M.bottomRows<2>() = iso_secant(iso, p2, q2).transpose();
  const Mat ker = la::null_space(M);
  if (ker.cols() != 1)
    throw Error(Errc::inconsistency, "E' secants meet in a space of dim " + std::to_string(ker.cols()));
  const Vec4 y = ker.col(0);

  const Vec4& h = curve.chart_hyperplane();
  const Vec4 O = iso.embed(RatPair{});
  const cplx hO = h.cwiseProduct(O).sum();
  if (std::abs(hO) < 1e-8 * O.norm()) throw Error(Errc::inconsistency, "chart hyperplane passes through 0");
  const Vec4 proj = y - (h.cwiseProduct(y).sum() / hO) * O;
  const Mat hrow = h.transpose();
  const Mat basis = la::null_space(hrow);  // 4x3, orthonormal
  const Vec hcoords = basis.adjoint() * proj;

  ChartValue out;
  out.h_point = la::canonical_projective(hcoords);
  const RatPair sum = add(p, q);
  const RatPair a = iso.coords(sum), b = iso.coords(neg(sum));
  out.pm_sum = (b < a) ? b : a;
  return out;
}

double chart_distance(const ChartValue& a, const ChartValue& b) {
  if (!(a.pm_sum == b.pm_sum)) return 1.0;
  return la::proj_dist(a.h_point, b.h_point);
}

namespace {

std::array<std::pair<int, int>, 10> monomials() {
  std::array<std::pair<int, int>, 10> m{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) m[k++] = {i, j};
  return m;
}

Vec4 sample_g(const Curve& c, int k) {
  const double u = std::fmod(0.1234 + k * 0.6180339887498949, 1.0);
  const double v = std::fmod(0.4321 + k * 0.4142135623730951, 1.0);
  return normalized(c.g(u + v * c.lattice().tau_lat));
}

}  // namespace

std::vector<Quadric> quadric_pencil(const Curve& curve, int samples) {
  const auto mono = monomials();
  Mat A(samples, 10);
  for (int k = 0; k < samples; ++k) {
    const Vec4 x = sample_g(curve, k);
    for (int c = 0; c < 10; ++c) A(k, c) = x(mono[c].first) * x(mono[c].second);
  }
  const Mat ker = la::null_space(A);
  if (ker.cols() != 2)
    throw Error(Errc::calibration_failure,
                "quadrics through E form a space of dim " + std::to_string(ker.cols()) + ", expected 2");
  std::vector<Quadric> out;
  for (int b = 0; b < 2; ++b) {
    Quadric Q;
    for (int c = 0; c < 10; ++c) {
      const auto [i, j] = mono[c];
      if (i == j) {
        Q.gram(i, i) = ker(c, b);
      } else {
        Q.gram(i, j) = 0.5 * ker(c, b);
        Q.gram(j, i) = 0.5 * ker(c, b);
      }
    }
    out.push_back(Q);
  }
  return out;
}

std::vector<SingularMember> singular_members(const std::vector<Quadric>& pencil) {
  const Mat4 B1 = pencil.at(0).gram, B2 = pencil.at(1).gram;
  const Mat4 M = B2.fullPivLu().solve(B1);
  Eigen::ComplexEigenSolver<Mat4> es(M);
  std::vector<SingularMember> out;
  for (int r = 0; r < 4; ++r) {
    const cplx mu = es.eigenvalues()(r);
    SingularMember sm;
    Mat4 G = B1 - mu * B2;
    G /= G.norm();
    sm.quadric.gram = G;
    sm.rank = la::rank(G);
    Eigen::BDCSVD<Mat> svd(G, Eigen::ComputeFullV);
    const Vec4 v = svd.matrixV().col(3);
    sm.vertex = ProjPoint::from(v);
    Eigen::Index imax = 0;
    const double vmax = v.cwiseAbs().maxCoeff(&imax);
    sm.coordinate_index = static_cast<int>(imax);
    sm.coordinate_defect = std::sqrt(std::max(0.0, 1.0 - vmax * vmax / v.squaredNorm()));
    out.push_back(sm);
  }
  return out;
}

Quadric quadric_at(const Curve& curve, const CurvePoint& z, double* fit_residual) {
  const auto pencil = quadric_pencil(curve);
  const std::array<CurvePoint, 2> ps{curve.point(RatPair{Rational(123, 1009), Rational(457, 1009)}),
                                     curve.point(RatPair{Rational(611, 1009), Rational(88, 1009)})};
  Eigen::Matrix2cd A;
  for (int r = 0; r < 2; ++r) {
    const Vec4 a = normalized(curve.g(ps[r].approx));
    const Vec4 b = normalized(curve.g((z - ps[r]).approx));
    for (int k = 0; k < 2; ++k) A(r, k) = (a.transpose() * pencil[k].gram * b)(0);
  }
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(A, Eigen::ComputeFullV);
  const Eigen::Vector2cd ab = svd.matrixV().col(1);
  if (fit_residual) {
    const auto sv = svd.singularValues();
    *fit_residual = sv(0) == 0.0 ? 0.0 : sv(1) / sv(0);
  }
  Quadric Q;
  Q.gram = ab(0) * pencil[0].gram + ab(1) * pencil[1].gram;
  Eigen::Map<Eigen::Matrix<cplx, 16, 1>> flat(Q.gram.data());
  const Vec canon = la::canonical_projective(Vec(flat));
  flat = canon;
  return Q;
}

double quadric_value(const Quadric& Q, const Vec4& x) {
  return std::abs((x.transpose() * Q.gram * x)(0)) / (Q.gram.norm() * x.squaredNorm());
}

std::optional<ProjPoint> line_intersection(const SecantLine& l1, const SecantLine& l2, double rel_tol) {
  Mat4 M;
  M.topRows<2>() = l1.perp.transpose();
  M.bottomRows<2>() = l2.perp.transpose();
  const int r = la::rank(M, rel_tol);
  if (r <= 2) throw Error(Errc::degenerate_input, "the two lines coincide");
  if (r == 4) return std::nullopt;
  const Mat ker = la::null_space(M, rel_tol);
  return ProjPoint::from(ker.col(0));
}

int numerical_rank_of_points(const Curve& curve, const std::array<CurvePoint, 4>& pts, double rel_tol) {
  Mat4 M;
  for (int r = 0; r < 4; ++r) M.row(r) = normalized(curve.g(pts[r].approx)).transpose();
  return la::rank(M, rel_tol);
}

}  // namespace skl
