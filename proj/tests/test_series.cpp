#include <doctest.h>

#include "mapscope/series.hpp"

using namespace mapscope;

namespace {

RationalSeries poly(std::vector<Rational> c, std::size_t order) { return RationalSeries::polynomial(c, order); }

Integer closed_form_count(unsigned long n) {
    Integer a, b, c;
    mpz_fac_ui(a.get_mpz_t(), 3 * n);
    mpz_fac_ui(b.get_mpz_t(), n);
    mpz_fac_ui(c.get_mpz_t(), 2 * n + 2);
    return 4 * a / (b * c);
}

// Square root by the schoolbook recurrence y_n = (f_n - sum y_k y_{n-k}) / 2.
std::vector<Rational> naive_sqrt(const std::vector<Rational>& f, std::size_t order) {
    std::vector<Rational> y(order + 1);
    y[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        Rational s = n < f.size() ? f[n] : Rational(0);
        for (std::size_t k = 1; k < n; ++k) s -= y[k] * y[n - k];
        y[n] = s / 2;
    }
    return y;
}

}  // namespace

TEST_CASE("arithmetic") {
    const auto x = RationalSeries::variable(6);
    const auto one = RationalSeries::constant(1, 6);
    const auto geo = one / (one - x);
    for (std::size_t i = 0; i <= 6; ++i) CHECK(geo[i] == 1);
    CHECK((geo * (one - x)) == one);
    CHECK(inverse(one - x) == geo);
    CHECK((geo - geo).is_zero());
    CHECK((-geo)[3] == -1);
    CHECK((geo * Rational(1, 2))[2] == Rational(1, 2));
    CHECK_THROWS_AS(inverse(x), PreconditionError);
    CHECK_THROWS_AS(one / x, PreconditionError);
}

TEST_CASE("compose and sqrt") {
    const std::size_t N = 12;
    const auto x = RationalSeries::variable(N);
    const auto one = RationalSeries::constant(1, N);
    const auto f = poly({3, 1, 4, 1, 5, 9, 2, 6}, N);
    CHECK(compose(f, x, N) == f);
    CHECK(compose(x / (one - x), x / (one + x), N) == x);
    CHECK_THROWS_AS(compose(f, one, N), PreconditionError);

    const auto radicand = poly({1, -2, -3}, 4);
    const auto r = sqrt_series(radicand, 4);
    CHECK(r[0] == 1);
    CHECK(r[1] == -1);
    CHECK(r[2] == -2);
    CHECK(r[3] == -2);
    CHECK(r * r == radicand);
    const auto big = poly({1, -2, -7}, 40);
    CHECK(sqrt_series(big, 40).coefficients() == naive_sqrt(big.coefficients(), 40));
    CHECK_THROWS_AS(sqrt_series(poly({2, 1}, 3), 3), PreconditionError);
}

TEST_CASE("tutte counts") {
    CHECK(tutte_count(0) == 2);
    CHECK(tutte_count(3) == 6);
    CHECK(tutte_count(5) == 91);
    for (unsigned long n = 0; n <= 40; ++n) CHECK(tutte_count(n) == closed_form_count(n));
}

TEST_CASE("equation solver") {
    const auto b = solve_equation(zeilberger_equation(), 6);
    const auto shifted = RationalSeries::constant(2, 7) + RationalSeries::variable(7) * RationalSeries(b.coefficients()).truncated(7);
    const std::vector<Rational> want{2, 1, 2, 6, 22, 91, 408};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(shifted[i] == want[i]);
    CHECK(equation_residual(zeilberger_equation(), solve_equation(zeilberger_equation(), 20)).is_zero());

    const auto b2 = solve_equation(b2_equation(), 5);
    auto sq = naive_sqrt(poly({1, -2, -7}, 5).coefficients(), 5);
    // (1 + 3x + 4x^2 - sqrt) / (4 + 8x), by long division
    std::vector<Rational> num{1 - sq[0], 3 - sq[1], 4 - sq[2], -sq[3], -sq[4], -sq[5]};
    std::vector<Rational> q(6);
    for (std::size_t n = 0; n <= 5; ++n) q[n] = (num[n] - (n ? 8 * q[n - 1] : Rational(0))) / 4;
    CHECK(b2.coefficients() == q);

    const auto b3 = solve_equation(b3_equation(), 10);
    const std::vector<int> printed{0, 1, 0, 1, 1, 5, 13, 48, 160, 578, 2078};
    for (std::size_t i = 0; i <= 10; ++i) CHECK(b3[i] == printed[i]);

    EquationSpec degenerate{{{0, 1}, {0}, {1}}, 0};  // Q_y(0,0) = 0
    CHECK_THROWS_AS(solve_equation(degenerate, 4), PreconditionError);
    EquationSpec off_root{{{1}, {-1}}, 0};  // Q(0,0) = 1
    CHECK_THROWS_AS(solve_equation(off_root, 4), PreconditionError);
}

TEST_CASE("named series") {
    const auto a = series(SeriesName::A_FORMULA, 30);
    CHECK(series(SeriesName::A_ZEIL, 30) == a);
    CHECK(series(SeriesName::A_HYP, 30) == a);
    const auto hyp = series(SeriesName::A_HYP, 1);
    CHECK(hyp[0] == 2);
    CHECK(hyp[1] == 1);

    const auto p = series(SeriesName::P, 3);
    CHECK(p.coefficients() == std::vector<Rational>{2, 1, 1, 3});
    const auto pp = series(SeriesName::PPRIME, 10);
    const auto p10 = series(SeriesName::P, 10);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(pp[n] == p10[n] - p10[n - 1]);

    // Riordan numbers: r(n) = (n-1)(2 r(n-1) + 3 r(n-2)) / (n+1)
    std::vector<Integer> riordan{1, 0};
    for (long n = 2; n < 20; ++n) riordan.push_back((n - 1) * (2 * riordan[n - 1] + 3 * riordan[n - 2]) / (n + 1));
    const auto b1 = series(SeriesName::B1, 20);
    CHECK(b1[0] == 0);
    for (std::size_t n = 1; n <= 20; ++n) CHECK(b1[n] == riordan[n - 1]);

    CHECK(series(SeriesName::B2, 30) == b2_closed_form(30));
}

TEST_CASE("asymptotic estimates") {
    CHECK_THROWS_AS(asymptotic(Estimate::B1, 0), PreconditionError);
    const Real rel = asymptotic(Estimate::B1, 300) / to_real(asymptotic_reference(Estimate::B1, 300)) - 1;
    CHECK(abs(rel) < 0.005);
    const Real a = asymptotic(Estimate::A, 200) / to_real(asymptotic_reference(Estimate::A, 200)) - 1;
    CHECK(abs(a) < 0.01);

    const auto& s = b3_singularity();
    CHECK(abs(s.tau - Real("0.28525")) < Real("5e-6"));
    CHECK(abs(s.rho - Real("4.24121")) < Real("1e-5"));
    CHECK(abs(s.rho * s.x_star - 1) < Real("1e-40"));
    CHECK(s.residual < Real("1e-40"));
}

TEST_CASE("formatting") {
    CHECK(format_series(poly({2, Rational(1, 3), -4}, 2)) == "2\n1/3\n-4\n");
    CHECK(format_real(Real("3.14159"), 3) == "3.142");
}
