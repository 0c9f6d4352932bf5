#include "padyn/padic.hpp"

#include <algorithm>
#include <cmath>

namespace padyn {

namespace {

void require_same_context(const PadicNumber& x, const PadicNumber& y) {
    if (!(x.context() == y.context()))
        throw DomainError("operands live in different prime contexts");
}

// Strips factors of p from m (m != 0); returns how many were removed.
int strip_p(mpz_class& m, unsigned long p) {
    int count = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++count;
    }
    return count;
}

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DivisionByZero("unit is not invertible modulo p^N");
    return r;
}

} // namespace

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeContext::PrimeContext(unsigned long p, int precision, int guard) {
    if (p == 2) throw DomainError("p = 2 is not supported");
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (guard < 1 || precision <= guard)
        throw DomainError("precision must exceed guard >= 1");
    auto data = std::make_shared<Data>();
    data->p = p;
    data->precision = precision;
    data->guard = guard;
    data->powers.reserve(static_cast<std::size_t>(precision) + 1);
    mpz_class power = 1;
    for (int k = 0; k <= precision; ++k) {
        data->powers.push_back(power);
        power *= p;
    }
    data_ = std::move(data);
}

// ---------------------------------------------------------------- PNorm

mpq_class PNorm::to_rational() const {
    if (zero_) return 0;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p_, static_cast<unsigned long>(std::labs(exponent_)));
    mpq_class q = exponent_ >= 0 ? mpq_class(pk) : mpq_class(mpz_class(1), pk);
    q.canonicalize();
    return q;
}

std::string PNorm::to_string() const {
    if (zero_) return "0";
    return std::to_string(p_) + "^" + std::to_string(exponent_);
}

PNorm PNorm::operator*(const PNorm& o) const {
    if (zero_ || o.zero_) return zero(p_);
    return power(p_, exponent_ + o.exponent_);
}

PNorm PNorm::operator/(const PNorm& o) const {
    if (o.zero_) throw DivisionByZero("division by the zero norm");
    if (zero_) return zero(p_);
    return power(p_, exponent_ - o.exponent_);
}

// ---------------------------------------------------------- PadicNumber

PadicNumber::PadicNumber(PrimeContext ctx) : ctx_(std::move(ctx)) {}

PadicNumber PadicNumber::from_scaled(const PrimeContext& ctx, int valuation, const mpz_class& m) {
    if (m == 0) return PadicNumber(ctx);
    mpz_class unit = m;
    int shift = strip_p(unit, ctx.prime());
    return PadicNumber(ctx, valuation + shift, mod_positive(unit, ctx.modulus()));
}

PadicNumber PadicNumber::from_integer(const PrimeContext& ctx, const mpz_class& m) {
    return from_scaled(ctx, 0, m);
}

PadicNumber PadicNumber::from_rational(const PrimeContext& ctx, const mpz_class& m,
                                       const mpz_class& n) {
    if (n == 0) throw DivisionByZero("rational with zero denominator");
    if (m == 0) return PadicNumber(ctx);
    mpz_class num = m, den = n;
    int v = strip_p(num, ctx.prime()) - strip_p(den, ctx.prime());
    mpz_class unit = mod_positive(num * inverse_mod(den, ctx.modulus()), ctx.modulus());
    return PadicNumber(ctx, v, unit);
}

PadicNumber PadicNumber::from_rational(const PrimeContext& ctx, const mpq_class& q) {
    return from_rational(ctx, q.get_num(), q.get_den());
}

PadicNumber PadicNumber::from_digits(const PrimeContext& ctx, int valuation,
                                     const std::vector<unsigned long>& digits) {
    const unsigned long p = ctx.prime();
    for (unsigned long d : digits)
        if (d >= p) throw ParseError("digit " + std::to_string(d) + " >= p");
    std::size_t first = 0;
    while (first < digits.size() && digits[first] == 0) ++first;
    if (first == digits.size()) return PadicNumber(ctx);
    // Digits beyond the N-digit window starting at the first non-zero one are dropped.
    const std::size_t last = std::min(digits.size(), first + static_cast<std::size_t>(ctx.precision()));
    mpz_class m = 0;
    for (std::size_t i = last; i-- > first;) m = m * p + digits[i];
    return PadicNumber(ctx, valuation + static_cast<int>(first), m);
}

unsigned long PadicNumber::leading_digit() const {
    if (is_zero()) return 0;
    return mpz_fdiv_ui(unit_.get_mpz_t(), prime());
}

std::vector<unsigned long> PadicNumber::digits() const {
    std::vector<unsigned long> out;
    if (is_zero()) return out;
    out.reserve(static_cast<std::size_t>(ctx_.precision()));
    mpz_class rest = unit_;
    for (int i = 0; i < ctx_.precision(); ++i) {
        out.push_back(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), prime()));
    }
    return out;
}

PadicNumber PadicNumber::with_context(const PrimeContext& other) const {
    if (other.prime() != prime()) throw DomainError("cannot change the prime of a p-adic number");
    if (is_zero()) return PadicNumber(other);
    return PadicNumber(other, valuation_, mod_positive(unit_, other.modulus()));
}

PNorm PadicNumber::norm() const {
    if (is_zero()) return PNorm::zero(prime());
    return PNorm::power(prime(), -static_cast<long>(valuation_));
}

PadicNumber PadicNumber::operator-() const {
    if (is_zero()) return *this;
    return PadicNumber(ctx_, valuation_, ctx_.modulus() - unit_);
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    require_same_context(x, y);
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const PrimeContext& ctx = x.ctx_;
    const PadicNumber& lo = x.valuation_ <= y.valuation_ ? x : y;
    const PadicNumber& hi = x.valuation_ <= y.valuation_ ? y : x;
    const long shift = static_cast<long>(hi.valuation_) - lo.valuation_;
    if (shift >= ctx.precision()) return lo;

    mpz_class s = lo.unit_ + hi.unit_ * ctx.power(static_cast<int>(shift));
    s = mod_positive(s, ctx.modulus());
    if (s == 0) return PadicNumber(ctx);
    const int lost = strip_p(s, ctx.prime());
    if (lost > ctx.tolerance_digits())
        throw PrecisionExhausted("cancellation left " + std::to_string(ctx.precision() - lost) +
                                 " significant digits");
    return PadicNumber(ctx, lo.valuation_ + lost, s);
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    require_same_context(x, y);
    if (x.is_zero() || y.is_zero()) return PadicNumber(x.ctx_);
    return PadicNumber(x.ctx_, x.valuation_ + y.valuation_,
                       mod_positive(x.unit_ * y.unit_, x.ctx_.modulus()));
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
    require_same_context(x, y);
    if (y.is_zero()) throw DivisionByZero("p-adic division by zero");
    if (x.is_zero()) return x;
    const mpz_class& mod = x.ctx_.modulus();
    return PadicNumber(x.ctx_, x.valuation_ - y.valuation_,
                       mod_positive(x.unit_ * inverse_mod(y.unit_, mod), mod));
}

bool operator==(const PadicNumber& x, const PadicNumber& y) {
    return x.ctx_ == y.ctx_ && x.valuation_ == y.valuation_ && x.unit_ == y.unit_;
}

PadicNumber add(const PadicNumber& x, const PadicNumber& y) { return x + y; }
PadicNumber sub(const PadicNumber& x, const PadicNumber& y) { return x - y; }
PadicNumber mul(const PadicNumber& x, const PadicNumber& y) { return x * y; }
PadicNumber div(const PadicNumber& x, const PadicNumber& y) { return x / y; }
PNorm norm(const PadicNumber& x) { return x.norm(); }

PadicNumber pow(const PadicNumber& x, unsigned n) {
    PadicNumber result = PadicNumber::from_integer(x.context(), 1);
    PadicNumber base = x;
    while (n > 0) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

int difference_valuation(const PadicNumber& x, const PadicNumber& y) {
    require_same_context(x, y);
    if (x.is_zero()) return y.valuation();
    if (y.is_zero()) return x.valuation();
    const PrimeContext& ctx = x.context();
    const int v = std::min(x.valuation(), y.valuation());
    const long sx = static_cast<long>(x.valuation()) - v;
    const long sy = static_cast<long>(y.valuation()) - v;
    mpz_class s = 0;
    if (sx < ctx.precision()) s += x.unit() * ctx.power(static_cast<int>(sx));
    if (sy < ctx.precision()) s -= y.unit() * ctx.power(static_cast<int>(sy));
    s = mod_positive(s, ctx.modulus());
    if (s == 0) return PadicNumber::kInfinity;
    return v + strip_p(s, ctx.prime());
}

PNorm distance(const PadicNumber& x, const PadicNumber& y) {
    const int v = difference_valuation(x, y);
    if (v == PadicNumber::kInfinity) return PNorm::zero(x.prime());
    return PNorm::power(x.prime(), -static_cast<long>(v));
}

bool eq_to_precision(const PadicNumber& x, const PadicNumber& y, int digits) {
    if (x.is_zero() && y.is_zero()) return true;
    const int d = difference_valuation(x, y);
    if (d == PadicNumber::kInfinity) return true;
    const long leading = std::min(x.valuation(), y.valuation());
    return d >= leading + digits;
}

bool eq_to_tolerance(const PadicNumber& x, const PadicNumber& y) {
    return eq_to_precision(x, y, x.context().tolerance_digits());
}

long factorial_valuation(unsigned long n, unsigned long p) {
    unsigned long digit_sum = 0;
    for (unsigned long m = n; m > 0; m /= p) digit_sum += m % p;
    return static_cast<long>((n - digit_sum) / (p - 1));
}

// ------------------------------------------------------------ exp / log

PadicNumber exp_p(const PadicNumber& x) {
    const PrimeContext& ctx = x.context();
    PadicNumber one = PadicNumber::from_integer(ctx, 1);
    if (x.is_zero()) return one;
    if (x.valuation() < 1) throw DomainError("exp_p needs |x|_p <= 1/p");

    const double v = x.valuation();
    const double slope = 1.0 / static_cast<double>(ctx.prime() - 1);
    const double budget = ctx.precision() + ctx.guard();
    PadicNumber sum = one;
    PadicNumber term = one;
    for (unsigned long n = 1;; ++n) {
        // ord(x^m/m!) >= m v - (m-1)/(p-1) for every m >= n.
        if (static_cast<double>(n) * v - static_cast<double>(n - 1) * slope > budget) break;
        term = term * x / PadicNumber::from_integer(ctx, n);
        sum = sum + term;
    }
    return sum;
}

PadicNumber log_p(const PadicNumber& x) {
    const PrimeContext& ctx = x.context();
    if (!in_Ep(x)) throw DomainError("log_p needs |x - 1|_p < 1");
    const PadicNumber y = x - PadicNumber::from_integer(ctx, 1);
    if (y.is_zero()) return y;

    const double v = y.valuation();
    const double budget = v + ctx.precision() + ctx.guard();
    const double log_p_base = std::log(static_cast<double>(ctx.prime()));
    PadicNumber sum(ctx);
    PadicNumber power = y;
    for (unsigned long n = 1;; ++n) {
        // ord(y^n/n) >= n v - log_p n, increasing in n.
        if (static_cast<double>(n) * v - std::log(static_cast<double>(n)) / log_p_base > budget) break;
        PadicNumber term = power / PadicNumber::from_integer(ctx, n);
        sum = (n % 2 == 1) ? sum + term : sum - term;
        power = power * y;
    }
    return sum;
}

// --------------------------------------------------------- square roots

namespace {

bool is_quadratic_residue(unsigned long a, unsigned long p) {
    mpz_class r;
    mpz_class base = a;
    mpz_class e = (p - 1) / 2;
    mpz_class mod = p;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r == 1;
}

// Root of a (a quadratic residue) modulo p.
unsigned long root_mod_p(unsigned long a, unsigned long p) {
    if (p < 4096) {
        for (unsigned long r = 1; r < p; ++r)
            if ((r * r) % p == a) return r;
        throw NotASquare("no root modulo p");
    }
    // Tonelli-Shanks.
    mpz_class P = p, A = a;
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    mpz_class z = 2;
    while (is_quadratic_residue(z.get_ui(), p)) z += 1;
    mpz_class c, r, t, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), A.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
    mpz_powm(t.get_mpz_t(), A.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        mpz_class tt = t;
        while (tt != 1) {
            tt = (tt * tt) % P;
            ++i;
        }
        mpz_class b = c;
        for (unsigned long j = 0; j + 1 < m - i; ++j) b = (b * b) % P;
        r = (r * b) % P;
        c = (b * b) % P;
        t = (t * c) % P;
        m = i;
    }
    return r.get_ui();
}

} // namespace

bool sqrt_exists(const PadicNumber& x) {
    if (x.is_zero()) throw ZeroInput("sqrt_exists of zero");
    if (x.valuation() % 2 != 0) return false;
    return is_quadratic_residue(x.leading_digit(), x.prime());
}

PadicNumber sqrt(const PadicNumber& x) {
    if (!sqrt_exists(x)) throw NotASquare("value has no square root in Q_p");
    const PrimeContext& ctx = x.context();
    const unsigned long p = ctx.prime();
    const mpz_class& u = x.unit();

    // Newton lift y <- y - (y^2 - u)/(2y), doubling the number of correct digits.
    mpz_class y = root_mod_p(x.leading_digit(), p);
    for (int correct = 1; correct < ctx.precision(); correct *= 2) {
        const mpz_class& mod = ctx.power(std::min(2 * correct, ctx.precision()));
        mpz_class residual = mod_positive(y * y - u, mod);
        y = mod_positive(y - residual * inverse_mod(2 * y, mod), mod);
    }
    if (mpz_fdiv_ui(y.get_mpz_t(), p) > (p - 1) / 2) y = ctx.modulus() - y;
    return PadicNumber::from_scaled(ctx, x.valuation() / 2, y);
}

std::pair<PadicNumber, PadicNumber> sqrt_both(const PadicNumber& x) {
    PadicNumber root = sqrt(x);
    PadicNumber other = -root;
    return {std::move(root), std::move(other)};
}

// ------------------------------------------------------------ predicates

bool in_Zp(const PadicNumber& x) { return x.is_zero() || x.valuation() >= 0; }

bool is_unit(const PadicNumber& x) { return !x.is_zero() && x.valuation() == 0; }

bool in_Ep(const PadicNumber& x) { return is_unit(x) && x.leading_digit() == 1; }

bool in_ball(const PadicNumber& x, const Ball& ball) {
    const PNorm d = distance(x, ball.center);
    return ball.closed ? d <= ball.radius() : d < ball.radius();
}

bool on_sphere(const PadicNumber& x, const PadicNumber& center, const PNorm& radius) {
    return distance(x, center) == radius;
}

} // namespace padyn
