#include "dseries/scalar.hpp"

#include <cmath>
#include <ostream>

#include "dseries/error.hpp"

namespace dseries {

std::string to_string(ScalarMode mode) { return mode == ScalarMode::exact ? "exact" : "float"; }

ScalarMode parse_mode(const std::string& text)
{
    if (text == "exact") {
        return ScalarMode::exact;
    }
    if (text == "float") {
        return ScalarMode::floating;
    }
    fail(Errc::invalid_argument, "unknown scalar mode '" + text + "'");
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o)
{
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o)
{
    if (o.is_zero()) {
        fail(Errc::not_invertible, "division by exact zero");
    }
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    const Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

ExactComplex pow(const ExactComplex& base, std::uint32_t exponent)
{
    ExactComplex result(1);
    ExactComplex b = base;
    while (exponent > 0) {
        if (exponent & 1u) {
            result *= b;
        }
        exponent >>= 1;
        if (exponent > 0) {
            b *= b;
        }
    }
    return result;
}

Scalar Scalar::zero(ScalarMode mode) { return from_int(0, mode); }
Scalar Scalar::one(ScalarMode mode) { return from_int(1, mode); }

Scalar Scalar::from_int(long v, ScalarMode mode)
{
    if (mode == ScalarMode::exact) {
        return Scalar(ExactComplex(v));
    }
    return Scalar(FloatComplex(static_cast<double>(v), 0.0));
}

const ExactComplex& Scalar::exact() const
{
    if (!is_exact()) {
        fail(Errc::invalid_argument, "exact value requested from a float scalar");
    }
    return std::get<ExactComplex>(value_);
}

FloatComplex Scalar::as_float() const
{
    if (is_exact()) {
        return std::get<ExactComplex>(value_).to_float();
    }
    return std::get<FloatComplex>(value_);
}

bool Scalar::is_zero() const noexcept
{
    if (is_exact()) {
        return std::get<ExactComplex>(value_).is_zero();
    }
    const auto& v = std::get<FloatComplex>(value_);
    return v.real() == 0.0 && v.imag() == 0.0;
}

double Scalar::abs() const
{
    if (is_exact()) {
        const auto& v = std::get<ExactComplex>(value_);
        if (v.is_real()) {
            return std::abs(v.re().get_d());
        }
        return std::sqrt(v.norm().get_d());
    }
    return std::abs(std::get<FloatComplex>(value_));
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b)
{
    if (a.mode() != b.mode()) {
        fail(Errc::invalid_argument, "cannot mix exact and float scalars");
    }
}

} // namespace

Scalar& Scalar::operator+=(const Scalar& o)
{
    require_same_mode(*this, o);
    if (is_exact()) {
        std::get<ExactComplex>(value_) += std::get<ExactComplex>(o.value_);
    } else {
        std::get<FloatComplex>(value_) += std::get<FloatComplex>(o.value_);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    require_same_mode(*this, o);
    if (is_exact()) {
        std::get<ExactComplex>(value_) -= std::get<ExactComplex>(o.value_);
    } else {
        std::get<FloatComplex>(value_) -= std::get<FloatComplex>(o.value_);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    require_same_mode(*this, o);
    if (is_exact()) {
        std::get<ExactComplex>(value_) *= std::get<ExactComplex>(o.value_);
    } else {
        std::get<FloatComplex>(value_) *= std::get<FloatComplex>(o.value_);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    require_same_mode(*this, o);
    if (is_exact()) {
        std::get<ExactComplex>(value_) /= std::get<ExactComplex>(o.value_);
    } else {
        if (o.is_zero()) {
            fail(Errc::not_invertible, "division by float zero");
        }
        std::get<FloatComplex>(value_) /= std::get<FloatComplex>(o.value_);
    }
    return *this;
}

Scalar Scalar::operator-() const
{
    if (is_exact()) {
        return Scalar(-std::get<ExactComplex>(value_));
    }
    return Scalar(-std::get<FloatComplex>(value_));
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.mode() != b.mode()) {
        return false;
    }
    if (a.is_exact()) {
        return std::get<ExactComplex>(a.value_) == std::get<ExactComplex>(b.value_);
    }
    return std::get<FloatComplex>(a.value_) == std::get<FloatComplex>(b.value_);
}

Scalar Scalar::to_mode(ScalarMode mode) const
{
    if (mode == this->mode()) {
        return *this;
    }
    if (mode == ScalarMode::floating) {
        return Scalar(as_float());
    }
    // Doubles are dyadic rationals, so this conversion is exact.
    const auto v = std::get<FloatComplex>(value_);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        fail(Errc::numeric_failure, "non-finite float cannot become exact");
    }
    return Scalar(ExactComplex(Rational(v.real()), Rational(v.imag())));
}

Scalar pow(const Scalar& base, std::uint32_t exponent)
{
    if (base.is_exact()) {
        return Scalar(pow(base.exact(), exponent));
    }
    FloatComplex result(1.0, 0.0);
    FloatComplex b = base.as_float();
    while (exponent > 0) {
        if (exponent & 1u) {
            result *= b;
        }
        exponent >>= 1;
        if (exponent > 0) {
            b *= b;
        }
    }
    return Scalar(result);
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        fail(Errc::invalid_argument, "malformed rational '" + text + "'");
    }
    if (sgn(q.get_den()) == 0) {
        fail(Errc::invalid_argument, "zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& v)
{
    if (v.is_real()) {
        return os << v.re().get_str();
    }
    return os << '(' << v.re().get_str() << (sgn(v.im()) < 0 ? "-" : "+") << Rational(abs(v.im())).get_str() << "i)";
}

std::ostream& operator<<(std::ostream& os, const Scalar& v)
{
    if (v.is_exact()) {
        return os << v.exact();
    }
    return os << v.as_float();
}

} // namespace dseries
