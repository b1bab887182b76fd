#include "badline/omega.hpp"

#include <mpfr.h>

#include "badline/error.hpp"

namespace badline {

namespace {

class Mpfr {
 public:
  explicit Mpfr(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Exact rational value of a finite MPFR number.
Rational to_rational(mpfr_ptr x) {
  Int mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  return Rational(mant) * pow2(static_cast<long>(e));
}

Rational eval_directed(OmegaFn::Preset preset, const Rational& t, const Rational& eps,
                       unsigned bits, mpfr_rnd_t rnd) {
  Mpfr x(bits);
  mpfr_set_q(x.get(), t.get_mpq_t(), rnd);
  mpfr_add_ui(x.get(), x.get(), 1, rnd);
  switch (preset) {
    case OmegaFn::Preset::Log:
      mpfr_log(x.get(), x.get(), rnd);
      mpfr_add_ui(x.get(), x.get(), 1, rnd);
      break;
    case OmegaFn::Preset::LogLog:
      mpfr_log(x.get(), x.get(), rnd);
      mpfr_add_ui(x.get(), x.get(), 1, rnd);
      mpfr_log(x.get(), x.get(), rnd);
      mpfr_add_ui(x.get(), x.get(), 1, rnd);
      break;
    case OmegaFn::Preset::Pow: {
      // base >= 1, so the power is increasing in the exponent
      Mpfr e(bits);
      mpfr_set_q(e.get(), eps.get_mpq_t(), rnd);
      mpfr_pow(x.get(), x.get(), e.get(), rnd);
      break;
    }
  }
  return to_rational(x.get());
}

}  // namespace

OmegaFn OmegaFn::pow(const Rational& eps) {
  if (eps <= 0 || eps > Rational(1, 4)) {
    throw Error(ErrorKind::InvalidArgument, "pow preset needs 0 < eps <= 1/4");
  }
  return OmegaFn(Preset::Pow, eps);
}

OmegaFn OmegaFn::parse(const std::string& text) {
  if (text == "log") return log();
  if (text == "loglog") return loglog();
  if (text.rfind("pow:", 0) == 0) return pow(parse_rational(text.substr(4)));
  throw Error(ErrorKind::ParseError, "unknown omega preset '" + text + "'");
}

std::string OmegaFn::name() const {
  switch (preset_) {
    case Preset::Log: return "log";
    case Preset::LogLog: return "loglog";
    case Preset::Pow: return "pow";
  }
  return "log";
}

RatInterval OmegaFn::eval(const Rational& t, unsigned bits) const {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, "omega is defined for t >= 0");
  return {eval_directed(preset_, t, eps_, bits, MPFR_RNDD),
          eval_directed(preset_, t, eps_, bits, MPFR_RNDU)};
}

}  // namespace badline
