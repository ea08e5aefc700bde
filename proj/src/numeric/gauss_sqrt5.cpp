#include "bt/numeric/gauss_sqrt5.hpp"

#include <sstream>

namespace bt::numeric {

namespace {

bool divisible_by_5(const Integer& x) { return mpz_divisible_ui_p(x.get_mpz_t(), 5) != 0; }

void scale_by_pow5(Integer& x, unsigned long e) {
  if (e == 0) return;
  x *= pow_integer(Integer(5), e);
}

}  // namespace

GaussSqrt5::GaussSqrt5(Integer a, Integer b, Integer c, Integer d, unsigned long k)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), k_(k) {
  canonicalize();
}

void GaussSqrt5::canonicalize() {
  if (is_zero()) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && divisible_by_5(a_) && divisible_by_5(b_) && divisible_by_5(c_) && divisible_by_5(d_)) {
    a_ /= 5;
    b_ /= 5;
    c_ /= 5;
    d_ /= 5;
    --k_;
  }
}

GaussSqrt5& GaussSqrt5::operator+=(const GaussSqrt5& o) {
  if (k_ >= o.k_) {
    Integer oa = o.a_, ob = o.b_, oc = o.c_, od = o.d_;
    const unsigned long e = k_ - o.k_;
    scale_by_pow5(oa, e);
    scale_by_pow5(ob, e);
    scale_by_pow5(oc, e);
    scale_by_pow5(od, e);
    a_ += oa;
    b_ += ob;
    c_ += oc;
    d_ += od;
  } else {
    const unsigned long e = o.k_ - k_;
    scale_by_pow5(a_, e);
    scale_by_pow5(b_, e);
    scale_by_pow5(c_, e);
    scale_by_pow5(d_, e);
    a_ += o.a_;
    b_ += o.b_;
    c_ += o.c_;
    d_ += o.d_;
    k_ = o.k_;
  }
  canonicalize();
  return *this;
}

GaussSqrt5& GaussSqrt5::operator*=(const GaussSqrt5& o) {
  // (p + q i)(p' + q' i) with p = a + b√5, q = c + d√5 in ℤ[√5]
  auto mul5 = [](const Integer& x, const Integer& y, const Integer& u, const Integer& v, Integer& r, Integer& s) {
    r = x * u + 5 * (y * v);
    s = x * v + y * u;
  };
  Integer pp_r, pp_s, qq_r, qq_s, pq_r, pq_s, qp_r, qp_s;
  mul5(a_, b_, o.a_, o.b_, pp_r, pp_s);
  mul5(c_, d_, o.c_, o.d_, qq_r, qq_s);
  mul5(a_, b_, o.c_, o.d_, pq_r, pq_s);
  mul5(c_, d_, o.a_, o.b_, qp_r, qp_s);
  a_ = pp_r - qq_r;
  b_ = pp_s - qq_s;
  c_ = pq_r + qp_r;
  d_ = pq_s + qp_s;
  k_ += o.k_;
  canonicalize();
  return *this;
}

GaussSqrt5 GaussSqrt5::operator-() const { return GaussSqrt5(-a_, -b_, -c_, -d_, k_); }

GaussSqrt5 GaussSqrt5::conj() const { return GaussSqrt5(a_, b_, -c_, -d_, k_); }

Complex<QSqrt5> GaussSqrt5::to_field() const {
  Rational scale(Integer(1), pow_integer(Integer(5), k_));
  scale.canonicalize();
  return Complex<QSqrt5>(QSqrt5(Rational(a_ * scale), Rational(b_ * scale)),
                         QSqrt5(Rational(c_ * scale), Rational(d_ * scale)));
}

std::string GaussSqrt5::str() const {
  std::ostringstream os;
  os << "(" << a_ << (sgn(b_) < 0 ? "" : "+") << b_ << "√5 + (" << c_ << (sgn(d_) < 0 ? "" : "+") << d_
     << "√5)i)/5^" << k_;
  return os.str();
}

}  // namespace bt::numeric
