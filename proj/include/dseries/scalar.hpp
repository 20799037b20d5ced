#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace dseries {

using Rational = mpq_class;
using FloatComplex = std::complex<double>;

enum class ScalarMode { exact, floating };

std::string to_string(ScalarMode mode);
ScalarMode parse_mode(const std::string& text);

/// Complex number with arbitrary-precision rational parts.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }
    ExactComplex(long re) : re_(re), im_(0) {}

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    /// re^2 + im^2, exact.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    ExactComplex conj() const { return {re_, -im_}; }

    ExactComplex& operator+=(const ExactComplex& o);
    ExactComplex& operator-=(const ExactComplex& o);
    ExactComplex& operator*=(const ExactComplex& o);
    ExactComplex& operator/=(const ExactComplex& o);

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
    ExactComplex operator-() const { return {-re_, -im_}; }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    FloatComplex to_float() const { return {re_.get_d(), im_.get_d()}; }

private:
    Rational re_{0};
    Rational im_{0};
};

ExactComplex pow(const ExactComplex& base, std::uint32_t exponent);

/// Coefficient value in either exact or floating mode. Arithmetic between
/// the two modes throws invalid_argument.
class Scalar {
public:
    Scalar() : value_(ExactComplex{}) {}
    Scalar(ExactComplex v) : value_(std::move(v)) {}
    Scalar(FloatComplex v) : value_(v) {}

    static Scalar zero(ScalarMode mode);
    static Scalar one(ScalarMode mode);
    /// Integer value in the given mode.
    static Scalar from_int(long v, ScalarMode mode);

    ScalarMode mode() const noexcept { return value_.index() == 0 ? ScalarMode::exact : ScalarMode::floating; }
    bool is_exact() const noexcept { return value_.index() == 0; }

    const ExactComplex& exact() const;
    FloatComplex as_float() const;

    bool is_zero() const noexcept;
    double abs() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    /// Same mode and equal values (bitwise equal doubles in floating mode).
    friend bool operator==(const Scalar& a, const Scalar& b);

    Scalar to_mode(ScalarMode mode) const;

private:
    std::variant<ExactComplex, FloatComplex> value_;
};

Scalar pow(const Scalar& base, std::uint32_t exponent);

/// Parses "p/q" or "p" into a canonical rational.
Rational parse_rational(const std::string& text);

std::ostream& operator<<(std::ostream& os, const ExactComplex& v);
std::ostream& operator<<(std::ostream& os, const Scalar& v);

} // namespace dseries
