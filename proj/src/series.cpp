#include "mapscope/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace mapscope {

namespace {

std::size_t min_order(const RationalSeries& a, const RationalSeries& b) { return std::min(a.order(), b.order()); }

// Common denominator of c[0..n] and the scaled integer numerators.
Integer scale_to_integers(const std::vector<Rational>& c, std::size_t n, std::vector<Integer>& out) {
    Integer d = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        if (c[i] != 0 && c[i].get_den() != 1) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c[i].get_den_mpz_t());
    }
    out.assign(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        if (c[i] == 0) continue;
        out[i] = c[i].get_num() * (d / c[i].get_den());
    }
    return d;
}

std::size_t nonzero_terms(const RationalSeries& s) {
    return static_cast<std::size_t>(
        std::count_if(s.coefficients().begin(), s.coefficients().end(), [](const Rational& q) { return q != 0; }));
}

Real pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Real real(long num, long den = 1) { return Real(num) / Real(den); }

}  // namespace

RationalSeries::RationalSeries(std::size_t order) : c_(order + 1, 0) {}

RationalSeries::RationalSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) c_.emplace_back(0);
}

RationalSeries RationalSeries::constant(const Rational& c, std::size_t order) {
    RationalSeries s(order);
    s.c_[0] = c;
    return s;
}

RationalSeries RationalSeries::variable(std::size_t order) {
    RationalSeries s(order);
    if (order >= 1) s.c_[1] = 1;
    return s;
}

RationalSeries RationalSeries::polynomial(const std::vector<Rational>& coefficients, std::size_t order) {
    RationalSeries s(order);
    for (std::size_t i = 0; i < coefficients.size() && i <= order; ++i) s.c_[i] = coefficients[i];
    return s;
}

RationalSeries RationalSeries::truncated(std::size_t order) const {
    RationalSeries s(order);
    for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) s.c_[i] = c_[i];
    return s;
}

bool RationalSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& o) {
    c_.resize(min_order(*this, o) + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& o) {
    c_.resize(min_order(*this, o) + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

RationalSeries& RationalSeries::operator*=(const Rational& s) {
    for (auto& q : c_) q *= s;
    return *this;
}

RationalSeries operator-(RationalSeries a) { return a *= Rational(-1); }

// Schoolbook product on integer numerators; zero terms are skipped so sparse
// factors stay cheap.
RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    const std::size_t n = min_order(a, b);
    std::vector<Integer> ai, bi;
    const Integer da = scale_to_integers(a.coefficients(), n, ai);
    const Integer db = scale_to_integers(b.coefficients(), n, bi);
    std::vector<Integer> acc(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        if (ai[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (bi[j] == 0) continue;
            mpz_addmul(acc[i + j].get_mpz_t(), ai[i].get_mpz_t(), bi[j].get_mpz_t());
        }
    }
    const Integer den = da * db;
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = Rational(acc[i], den);
        out[i].canonicalize();
    }
    return RationalSeries(std::move(out));
}

RationalSeries inverse(const RationalSeries& f) {
    if (f[0] == 0) throw PreconditionError("inverse: constant term must be nonzero");
    const std::size_t n = f.order();
    // f = F/d with F integral; 1/F has coefficients N_k / F0^(k+1) with
    // N_k = -sum_{j>=1} F_j N_{k-j} F0^(j-1).
    std::vector<Integer> big_f;
    const Integer d = scale_to_integers(f.coefficients(), n, big_f);
    std::vector<Integer> f0_pow(n + 2, 1);
    for (std::size_t k = 1; k < f0_pow.size(); ++k) f0_pow[k] = f0_pow[k - 1] * big_f[0];
    std::vector<Integer> num(n + 1, 0);
    num[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer s = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (big_f[j] == 0) continue;
            s += big_f[j] * num[k - j] * f0_pow[j - 1];
        }
        num[k] = -s;
    }
    std::vector<Rational> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        out[k] = Rational(d * num[k], f0_pow[k + 1]);
        out[k].canonicalize();
    }
    return RationalSeries(std::move(out));
}

RationalSeries operator/(const RationalSeries& a, const RationalSeries& b) {
    if (b[0] == 0) throw PreconditionError("division: divisor needs a nonzero constant term");
    const std::size_t n = min_order(a, b);
    if (nonzero_terms(b) > 8) return a.truncated(n) * inverse(b.truncated(n));
    // long division against a sparse divisor
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k <= n; ++k)
        if (b[k] != 0) support.push_back(k);
    RationalSeries q(n);
    const Rational b0 = b[0];
    for (std::size_t i = 0; i <= n; ++i) {
        Rational s = a[i];
        for (std::size_t k : support) {
            if (k > i) break;
            s -= b[k] * q[i - k];
        }
        q[i] = s / b0;
    }
    return q;
}

RationalSeries compose(const RationalSeries& f, const RationalSeries& g, std::size_t order) {
    if (g.coefficients().front() != 0) throw PreconditionError("compose: inner series must have zero constant term");
    const auto gg = g.truncated(order);
    const std::size_t top = std::min(order, f.order());
    RationalSeries r = RationalSeries::constant(f[top], order);
    for (std::size_t k = top; k-- > 0;) {
        r = r * gg;
        r[0] += f[k];
    }
    return r;
}

RationalSeries sqrt_series(const RationalSeries& f, std::size_t order) {
    if (f[0] != 1) throw PreconditionError("sqrt_series: constant term must be 1");
    // y = sqrt(f) solves 2 f y' = f' y, giving
    // 2 n y_n = sum_{k>=1} f_k (3k - 2n) y_{n-k}.
    const auto ff = f.truncated(order);
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k <= order; ++k)
        if (ff[k] != 0) support.push_back(k);
    RationalSeries y(order);
    y[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational s = 0;
        for (std::size_t k : support) {
            if (k > n) break;
            s += ff[k] * (3 * static_cast<long>(k) - 2 * static_cast<long>(n)) * y[n - k];
        }
        y[n] = s / (2 * static_cast<long>(n));
    }
    return y;
}

Integer tutte_count(std::size_t n) {
    Integer a, b, c;
    mpz_fac_ui(a.get_mpz_t(), 3 * n);
    mpz_fac_ui(b.get_mpz_t(), n);
    mpz_fac_ui(c.get_mpz_t(), 2 * n + 2);
    return 4 * a / (b * c);
}

namespace {

RationalSeries eval_q(const EquationSpec& spec, const RationalSeries& y, bool derivative) {
    const std::size_t n = y.order();
    const std::size_t deg = spec.y_coefficients.size() - 1;
    auto coefficient = [&](std::size_t j) {
        auto s = RationalSeries::polynomial(spec.y_coefficients[j], n);
        if (derivative) s *= Rational(static_cast<long>(j));
        return s;
    };
    const std::size_t low = derivative ? 1 : 0;
    if (deg < low) return RationalSeries(n);
    RationalSeries r = coefficient(deg);
    for (std::size_t j = deg; j-- > low;) r = r * y + coefficient(j);
    return r;
}

Rational eval_at_origin(const EquationSpec& spec, const Rational& y0, bool derivative) {
    Rational s = 0, p = 1;
    for (std::size_t j = 0; j < spec.y_coefficients.size(); ++j) {
        const auto& q = spec.y_coefficients[j];
        const Rational c = q.empty() ? Rational(0) : q.front();
        if (!derivative) {
            s += c * p;
            p *= y0;
        } else if (j >= 1) {
            s += c * Rational(static_cast<long>(j)) * p;
            p *= y0;
        }
    }
    return s;
}

}  // namespace

RationalSeries equation_residual(const EquationSpec& spec, const RationalSeries& y) { return eval_q(spec, y, false); }

RationalSeries solve_equation(const EquationSpec& spec, std::size_t order) {
    if (spec.y_coefficients.empty()) throw PreconditionError("equation has no terms");
    if (eval_at_origin(spec, spec.seed, false) != 0) throw PreconditionError("degenerate seed: Q(0, seed) != 0");
    if (eval_at_origin(spec, spec.seed, true) == 0) throw PreconditionError("degenerate seed: dQ/dy(0, seed) = 0");

    RationalSeries y = RationalSeries::constant(spec.seed, 0);
    std::size_t known = 1;  // y is exact mod x^known
    while (known < order + 1) {
        const std::size_t next = std::min(2 * known, order + 1);
        const auto yy = y.truncated(next - 1);
        const auto q = eval_q(spec, yy, false);
        const auto dq = eval_q(spec, yy, true);
        y = yy - q / dq;
        known = next;
    }
    if (!equation_residual(spec, y).is_zero()) throw ConvergenceError("Newton iteration left a nonzero residual");
    return y;
}

namespace {

std::vector<Rational> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

const EquationSpec& zeilberger_equation() {
    // 1 - 8x + (10x - 12x^2 - 1) y - (2x^2 + 6x^3) y^2 - x^4 y^3
    static const EquationSpec e{{ints({1, -8}), ints({-1, 10, -12}), ints({0, 0, -2, -6}), ints({0, 0, 0, 0, -1})},
                                1};
    return e;
}

const EquationSpec& b2_equation() {
    // x + y(y - x) + (y - x)^2 + x(2y - x)^2 - y, expanded
    static const EquationSpec e{{ints({0, 1, 1, 1}), ints({-1, -3, -4}), ints({2, 4})}, 0};
    return e;
}

const EquationSpec& b3_equation() {
    static const EquationSpec e{
        {ints({0, 1, 2, 4}), ints({-1, -5, -12}), ints({3, 9, 1, 4}), ints({0, -1, -6}), ints({0, 0, 0, 1})}, 0};
    return e;
}

RationalSeries b2_closed_form(std::size_t order) {
    const auto root = sqrt_series(RationalSeries::polynomial(ints({1, -2, -7}), order), order);
    const auto num = RationalSeries::polynomial(ints({1, 3, 4}), order) - root;
    return num / RationalSeries::polynomial(ints({4, 8}), order);
}

namespace {

RationalSeries a_formula(std::size_t order) {
    RationalSeries s(order);
    for (std::size_t n = 0; n <= order; ++n) s[n] = tutte_count(n);
    return s;
}

RationalSeries a_zeilberger(std::size_t order) {
    RationalSeries s(order);
    s[0] = 2;
    if (order == 0) return s;
    const auto b = solve_equation(zeilberger_equation(), order - 1);
    for (std::size_t n = 1; n <= order; ++n) s[n] = b[n - 1];
    return s;
}

// (2/(3x)) (F([-2/3, -1/3], [1/2], 27x/4) - 1)
RationalSeries a_hypergeometric(std::size_t order) {
    const Rational a1(-2, 3), a2(-1, 3), b1(1, 2), z(27, 4);
    RationalSeries s(order);
    Rational term = 1;  // k-th term of F including z^k
    for (std::size_t k = 0; k <= order; ++k) {
        const Rational kk(static_cast<long>(k));
        term *= (a1 + kk) * (a2 + kk) / ((b1 + kk) * (kk + 1)) * z;
        s[k] = Rational(2, 3) * term;
    }
    return s;
}

RationalSeries x_over_one_plus_x(std::size_t order) {
    return RationalSeries::variable(order) / RationalSeries::polynomial(ints({1, 1}), order);
}

RationalSeries p_series(std::size_t order) { return compose(a_formula(order), x_over_one_plus_x(order), order); }

RationalSeries b1_closed_form(std::size_t order) {
    const auto root = sqrt_series(RationalSeries::polynomial(ints({1, -2, -3}), order), order);
    const auto num = RationalSeries::polynomial(ints({1, 1}), order) - root;
    return num / RationalSeries::polynomial(ints({2, 2}), order);
}

}  // namespace

RationalSeries series(SeriesName name, std::size_t order) {
    switch (name) {
        case SeriesName::A_FORMULA: return a_formula(order);
        case SeriesName::A_ZEIL: return a_zeilberger(order);
        case SeriesName::A_HYP: return a_hypergeometric(order);
        case SeriesName::P: return p_series(order);
        case SeriesName::PPRIME: return p_series(order) * RationalSeries::polynomial(ints({1, -1}), order);
        case SeriesName::B1: return b1_closed_form(order);
        case SeriesName::B2: return solve_equation(b2_equation(), order);
        case SeriesName::B3: return solve_equation(b3_equation(), order);
    }
    throw PreconditionError("unknown series name");
}

Integer p_coefficient(std::size_t n) {
    if (n == 0) return tutte_count(0);
    Integer s = 0, binom;
    for (std::size_t k = 1; k <= n; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), n - 1, k - 1);
        const Integer term = tutte_count(k) * binom;
        if ((n - k) % 2 == 0) s += term;
        else s -= term;
    }
    return s;
}

Real to_real(const Integer& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real asymptotic(Estimate name, std::size_t n) {
    if (n < 1) throw PreconditionError("asymptotic estimates need n >= 1");
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    const Real nn(static_cast<unsigned long>(n));
    const Real n3 = nn * nn * nn;
    const Real n5 = n3 * nn * nn;
    switch (name) {
        case Estimate::A: return real(2, 27) * sqrt(3 / (pi() * n5)) * pow(real(27, 4), nn);
        case Estimate::P: return real(46, 729) * sqrt(23 / (pi() * n5)) * pow(real(23, 4), nn);
        case Estimate::PPRIME: return real(529, 1458) * sqrt(23 / (pi() * n3)) * pow(real(23, 4), nn);
        case Estimate::B1: return real(1, 8) * sqrt(3 / (pi() * n3)) * pow(Real(3), nn);
        case Estimate::B2: {
            const Real s2 = sqrt(Real(2));
            return 1 / (8 * s2 + 12) * sqrt((4 + s2) / (pi() * n3)) * pow(7 / (2 * s2 - 1), nn);
        }
        case Estimate::B3: {
            const auto& s = b3_singularity();
            return s.gamma * pow(s.rho, nn) / (2 * sqrt(pi() * n3));
        }
    }
    throw PreconditionError("unknown estimate");
}

namespace {

// Exact series are costly at order ~1000; keep the longest one computed.
const RationalSeries& cached_series(Estimate name, std::size_t order) {
    static std::mutex mu;
    static std::map<Estimate, RationalSeries> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(name);
    if (it == cache.end() || it->second.order() < order) {
        const std::size_t target = std::max<std::size_t>(order, 64);
        RationalSeries s = name == Estimate::B1   ? b1_closed_form(target)
                           : name == Estimate::B2 ? b2_closed_form(target)
                                                  : solve_equation(b3_equation(), target);
        it = cache.insert_or_assign(name, std::move(s)).first;
    }
    return it->second;
}

}  // namespace

Integer asymptotic_reference(Estimate name, std::size_t n) {
    switch (name) {
        case Estimate::A: return n == 0 ? Integer(0) : tutte_count(n - 1);
        case Estimate::P: return p_coefficient(n);
        case Estimate::PPRIME: return n == 0 ? p_coefficient(0) : p_coefficient(n) - p_coefficient(n - 1);
        case Estimate::B1:
        case Estimate::B2:
        case Estimate::B3: {
            const Rational c = cached_series(name, n)[n];
            if (c.get_den() != 1) throw std::logic_error("non-integral counting coefficient");
            return c.get_num();
        }
    }
    throw PreconditionError("unknown estimate");
}

namespace {

// d^(dx+dy) Q / dx^dx dy^dy at (x, y).
Real partial(const EquationSpec& spec, unsigned dx, unsigned dy, const Real& x, const Real& y) {
    using boost::multiprecision::pow;
    Real total = 0;
    for (std::size_t j = dy; j < spec.y_coefficients.size(); ++j) {
        const auto& q = spec.y_coefficients[j];
        Real fy = 1;
        for (unsigned t = 0; t < dy; ++t) fy *= Real(static_cast<unsigned long>(j - t));
        for (std::size_t i = dx; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            Real fx = 1;
            for (unsigned t = 0; t < dx; ++t) fx *= Real(static_cast<unsigned long>(i - t));
            total += to_real(q[i]) * fx * fy * pow(x, static_cast<unsigned long>(i - dx)) *
                     pow(y, static_cast<unsigned long>(j - dy));
        }
    }
    return total;
}

SingularityEstimate solve_b3_singularity() {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    const auto& e = b3_equation();
    constexpr std::size_t kSeedOrder = 200;
    const auto b = solve_equation(e, kSeedOrder + 1);
    Real x = to_real(b[kSeedOrder]) / to_real(b[kSeedOrder + 1]);
    Real y = 0, xp = 1;
    for (std::size_t n = 0; n <= kSeedOrder; ++n, xp *= x) y += to_real(b[n]) * xp;

    auto norm = [&](const Real& px, const Real& py) -> Real {
        const Real a = abs(partial(e, 0, 0, px, py));
        const Real b = abs(partial(e, 0, 1, px, py));
        return a > b ? a : b;
    };
    const Real tol("1e-45");
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        const Real f1 = partial(e, 0, 0, x, y), f2 = partial(e, 0, 1, x, y);
        const Real j11 = partial(e, 1, 0, x, y), j12 = f2;
        const Real j21 = partial(e, 1, 1, x, y), j22 = partial(e, 0, 2, x, y);
        const Real det = j11 * j22 - j12 * j21;
        if (det == 0) throw ConvergenceError("singular Jacobian in the B3 characteristic system");
        const Real sx = (f1 * j22 - f2 * j12) / det;
        const Real sy = (j11 * f2 - j21 * f1) / det;
        const Real before = norm(x, y);
        Real t = 1;
        while (t > Real("1e-12") && norm(x - t * sx, y - t * sy) > before && before > tol) t /= 2;
        x -= t * sx;
        y -= t * sy;
        converged = abs(t * sx) + abs(t * sy) < tol;
    }
    if (!converged) throw ConvergenceError("B3 characteristic system did not converge");
    SingularityEstimate s;
    s.x_star = x;
    s.tau = y;
    s.rho = 1 / x;
    s.gamma = sqrt(2 * x * partial(e, 1, 0, x, y) / partial(e, 0, 2, x, y));
    s.residual = norm(x, y);
    return s;
}

}  // namespace

const SingularityEstimate& b3_singularity() {
    static const SingularityEstimate s = solve_b3_singularity();
    return s;
}

Real b3_gamma_at(const Real& t) {
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    const auto& e = b3_equation();
    Real x = b3_singularity().x_star;
    for (int iter = 0; iter < 200; ++iter) {
        const Real step = partial(e, 0, 0, x, t) / partial(e, 1, 0, x, t);
        x -= step;
        if (abs(step) < Real("1e-45")) break;
    }
    const Real qx = partial(e, 1, 0, x, t);
    const Real d1 = -partial(e, 0, 1, x, t) / qx;
    const Real d2 = -(partial(e, 2, 0, x, t) * d1 * d1 + 2 * partial(e, 1, 1, x, t) * d1 + partial(e, 0, 2, x, t)) / qx;
    const Real phi = t / x;
    const Real phi2 = -2 * d1 / (x * x) + 2 * t * d1 * d1 / (x * x * x) - t * d2 / (x * x);
    return sqrt(2 * phi / phi2);
}

std::string format_series(const RationalSeries& s) {
    std::ostringstream os;
    for (const auto& c : s.coefficients()) os << c.get_str() << '\n';
    return os.str();
}

std::string format_real(const Real& r, int digits) { return r.str(digits, std::ios_base::fixed); }

}  // namespace mapscope
