#pragma once

// Finite-precision p-adic numbers.
//
// A non-zero value is stored as p^v * u where u is a unit modulo p^N, i.e. the
// digits u_0 + u_1 p + ... + u_{N-1} p^{N-1} with u_0 != 0. Multiplication and
// division are exact on valuations; addition realigns valuations and, when the
// leading digits cancel, shifts the surviving digits up and pads with zeros.

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padyn/error.hpp"

namespace padyn {

class PrimeContext {
public:
    static constexpr int kDefaultPrecision = 64;
    static constexpr int kDefaultGuard = 8;

    // Throws DomainError unless p is an odd prime and precision > guard >= 1.
    explicit PrimeContext(unsigned long p, int precision = kDefaultPrecision,
                          int guard = kDefaultGuard);

    unsigned long prime() const noexcept { return data_->p; }
    int precision() const noexcept { return data_->precision; }
    int guard() const noexcept { return data_->guard; }

    // Digits that residual tests demand: N - g.
    int tolerance_digits() const noexcept { return data_->precision - data_->guard; }

    // p^N.
    const mpz_class& modulus() const noexcept { return data_->powers.back(); }

    // p^k for 0 <= k <= N.
    const mpz_class& power(int k) const { return data_->powers.at(static_cast<std::size_t>(k)); }

    friend bool operator==(const PrimeContext& a, const PrimeContext& b) noexcept {
        return a.data_ == b.data_ ||
               (a.prime() == b.prime() && a.precision() == b.precision() && a.guard() == b.guard());
    }

private:
    struct Data {
        unsigned long p;
        int precision;
        int guard;
        std::vector<mpz_class> powers;
    };
    std::shared_ptr<const Data> data_;
};

bool is_prime(unsigned long n);

// Exact p-adic absolute value: either 0 or p^exponent.
class PNorm {
public:
    static PNorm zero(unsigned long p) { return PNorm(p, 0, true); }
    static PNorm power(unsigned long p, long exponent) { return PNorm(p, exponent, false); }

    unsigned long prime() const noexcept { return p_; }
    bool is_zero() const noexcept { return zero_; }
    // Norm equals p^exponent(); meaningless for zero.
    long exponent() const noexcept { return exponent_; }

    mpq_class to_rational() const;
    // "0" or "p^k", e.g. "13^-2".
    std::string to_string() const;

    PNorm operator*(const PNorm& o) const;
    PNorm operator/(const PNorm& o) const;

    friend bool operator==(const PNorm& a, const PNorm& b) noexcept {
        return a.zero_ == b.zero_ && (a.zero_ || a.exponent_ == b.exponent_);
    }
    friend std::strong_ordering operator<=>(const PNorm& a, const PNorm& b) noexcept {
        if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;
        return a.exponent_ <=> b.exponent_;
    }

private:
    PNorm(unsigned long p, long e, bool z) : p_(p), exponent_(e), zero_(z) {}
    unsigned long p_;
    long exponent_;
    bool zero_;
};

class PadicNumber {
public:
    // Valuation reported for zero.
    static constexpr int kInfinity = std::numeric_limits<int>::max();

    explicit PadicNumber(PrimeContext ctx);  // zero

    static PadicNumber from_integer(const PrimeContext& ctx, const mpz_class& m);
    static PadicNumber from_rational(const PrimeContext& ctx, const mpz_class& m, const mpz_class& n);
    static PadicNumber from_rational(const PrimeContext& ctx, const mpq_class& q);
    // p^valuation * (d0 + d1 p + ...); leading zero digits are absorbed into the valuation.
    static PadicNumber from_digits(const PrimeContext& ctx, int valuation,
                                   const std::vector<unsigned long>& digits);
    // p^valuation * m for any integer m; m is reduced and normalized.
    static PadicNumber from_scaled(const PrimeContext& ctx, int valuation, const mpz_class& m);

    const PrimeContext& context() const noexcept { return ctx_; }
    unsigned long prime() const noexcept { return ctx_.prime(); }
    bool is_zero() const noexcept { return valuation_ == kInfinity; }
    int valuation() const noexcept { return valuation_; }
    const mpz_class& unit() const noexcept { return unit_; }
    unsigned long leading_digit() const;
    // The N digits of the unit, least significant first; empty for zero.
    std::vector<unsigned long> digits() const;
    // Same value re-expressed at another precision (same prime); extra digits are zero.
    PadicNumber with_context(const PrimeContext& other) const;

    PNorm norm() const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);

    // Digit-for-digit equality at the stored precision.
    friend bool operator==(const PadicNumber& x, const PadicNumber& y);

private:
    PadicNumber(PrimeContext ctx, int valuation, mpz_class unit)
        : ctx_(std::move(ctx)), valuation_(valuation), unit_(std::move(unit)) {}

    PrimeContext ctx_;
    int valuation_ = kInfinity;
    mpz_class unit_;
};

PadicNumber add(const PadicNumber& x, const PadicNumber& y);
PadicNumber sub(const PadicNumber& x, const PadicNumber& y);
PadicNumber mul(const PadicNumber& x, const PadicNumber& y);
PadicNumber div(const PadicNumber& x, const PadicNumber& y);
PadicNumber pow(const PadicNumber& x, unsigned n);
PNorm norm(const PadicNumber& x);

// ord_p(x - y), never throwing; kInfinity when x and y agree on every stored digit.
int difference_valuation(const PadicNumber& x, const PadicNumber& y);
// |x - y|_p computed without cancellation checks.
PNorm distance(const PadicNumber& x, const PadicNumber& y);

// |x - y|_p <= p^-(min(ord x, ord y) + digits).
bool eq_to_precision(const PadicNumber& x, const PadicNumber& y, int digits);
// eq_to_precision with the context's N - g.
bool eq_to_tolerance(const PadicNumber& x, const PadicNumber& y);

PadicNumber exp_p(const PadicNumber& x);
PadicNumber log_p(const PadicNumber& x);

bool sqrt_exists(const PadicNumber& x);
// Root whose leading digit lies in 1..(p-1)/2.
PadicNumber sqrt(const PadicNumber& x);
// (canonical root, its negative).
std::pair<PadicNumber, PadicNumber> sqrt_both(const PadicNumber& x);

// B_r(c) with r = p^radius_exponent; open unless `closed`.
struct Ball {
    PadicNumber center;
    long radius_exponent;
    bool closed = false;

    PNorm radius() const { return PNorm::power(center.prime(), radius_exponent); }
};

bool in_Zp(const PadicNumber& x);
bool is_unit(const PadicNumber& x);
// E_p = { x : |x - 1|_p < 1 }.
bool in_Ep(const PadicNumber& x);
bool in_ball(const PadicNumber& x, const Ball& ball);
bool on_sphere(const PadicNumber& x, const PadicNumber& center, const PNorm& radius);

// ord_p(n!) by Legendre's digit-sum formula.
long factorial_valuation(unsigned long n, unsigned long p);

} // namespace padyn
