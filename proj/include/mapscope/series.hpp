#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include "mapscope/error.hpp"

namespace mapscope {

using Integer = mpz_class;
using Rational = mpq_class;
/// 50 decimal digits; used only for asymptotic estimates and root finding.
using Real = boost::multiprecision::mpfr_float_50;

/// Power series truncated after x^order, with exact rational coefficients.
class RationalSeries {
public:
    explicit RationalSeries(std::size_t order = 0);
    explicit RationalSeries(std::vector<Rational> coefficients);

    static RationalSeries constant(const Rational& c, std::size_t order);
    /// The series x (zero if order is 0).
    static RationalSeries variable(std::size_t order);
    /// Polynomial with the given coefficients, truncated or padded to order.
    static RationalSeries polynomial(const std::vector<Rational>& coefficients, std::size_t order);

    std::size_t order() const noexcept { return c_.size() - 1; }
    const Rational& operator[](std::size_t i) const { return c_.at(i); }
    Rational& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }

    RationalSeries truncated(std::size_t order) const;
    bool is_zero() const;

    RationalSeries& operator+=(const RationalSeries& o);
    RationalSeries& operator-=(const RationalSeries& o);
    RationalSeries& operator*=(const Rational& s);

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator*(RationalSeries a, const Rational& s) { return a *= s; }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
    /// Requires a nonzero constant term in the divisor.
    friend RationalSeries operator/(const RationalSeries& a, const RationalSeries& b);
    friend RationalSeries operator-(RationalSeries a);

    friend bool operator==(const RationalSeries& a, const RationalSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
};

/// Results are truncated to the smaller of the operand orders.
RationalSeries inverse(const RationalSeries& f);
/// f(g(x)); requires g(0) = 0.
RationalSeries compose(const RationalSeries& f, const RationalSeries& g, std::size_t order);
/// The square root with constant term 1; requires f(0) = 1.
RationalSeries sqrt_series(const RationalSeries& f, std::size_t order);

/// 4(3n)!/(n!(2n+2)!). The value 2 at n = 0 is a series convention; there is
/// one map with one edge.
Integer tutte_count(std::size_t n);

/// Q(x, y) = sum_j q_j(x) y^j with polynomial q_j, and the seed y(0).
struct EquationSpec {
    std::vector<std::vector<Rational>> y_coefficients;
    Rational seed;
};

/// The power series y with y(0) = seed and Q(x, y) = 0 mod x^(order+1),
/// by Newton iteration with doubling precision. Throws PreconditionError
/// ("degenerate seed") unless Q(0, seed) = 0 and dQ/dy(0, seed) != 0.
RationalSeries solve_equation(const EquationSpec& spec, std::size_t order);

/// Q(x, y(x)) truncated at the order of y.
RationalSeries equation_residual(const EquationSpec& spec, const RationalSeries& y);

/// Cubic for B with A = 2 + xB; seed 1.
const EquationSpec& zeilberger_equation();
/// B2 quadratic; seed 0.
const EquationSpec& b2_equation();
/// B3 quartic; seed 0. The other branch through x = 0 starts at 2/3.
const EquationSpec& b3_equation();

enum class SeriesName { A_FORMULA, A_ZEIL, A_HYP, P, PPRIME, B1, B2, B3 };

RationalSeries series(SeriesName name, std::size_t order);

/// B2 from (1 + 3x + 4x^2 - sqrt(1 - 2x - 7x^2)) / (4 + 8x).
RationalSeries b2_closed_form(std::size_t order);

/// [x^n] A(x/(1+x)) = sum_k a_k (-1)^(n-k) C(n-1, k-1) for n >= 1, without
/// building the composed series.
Integer p_coefficient(std::size_t n);

enum class Estimate { A, P, PPRIME, B1, B2, B3 };

/// First-order estimate of the n-th coefficient.
Real asymptotic(Estimate name, std::size_t n);

/// The exact count an estimate is compared against: maps with n edges for A
/// (that is tutte_count(n - 1)), and [x^n] of the series for the others.
Integer asymptotic_reference(Estimate name, std::size_t n);

Real to_real(const Integer& z);
Real to_real(const Rational& q);

struct SingularityEstimate {
    Real x_star;   ///< dominant singularity of B3
    Real tau;      ///< B3(x_star)
    Real rho;      ///< growth rate 1 / x_star
    Real gamma;    ///< amplitude
    Real residual; ///< max(|Q|, |dQ/dy|) at the root
};

/// Root of Q = dQ/dy = 0 for the B3 quartic on the branch through the
/// origin, seeded from coefficient ratios at order 200.
const SingularityEstimate& b3_singularity();

/// sqrt(2 phi(t) / phi''(t)) with phi(y) = y / psi(y), where x = psi(y)
/// solves the quartic near the singularity. Equals the gamma of
/// b3_singularity() at t = tau.
Real b3_gamma_at(const Real& t);

/// One coefficient per line: integers as digits, fractions as "num/den".
std::string format_series(const RationalSeries& s);

std::string format_real(const Real& r, int digits);

}  // namespace mapscope
