#include <doctest.h>

#include <cmath>

#include "sphcodes/bounds.hpp"
#include "sphcodes/errors.hpp"
#include "sphcodes/search.hpp"
#include "support.hpp"

using namespace sphcodes;
using testsupport::q;

namespace {

// Independent evaluation of the lower bound formula in long double.
long double rho_formula(long r, long k) {
    return (std::cbrt(8.0L * k / 27.0L + 1.0L) - 1.0L) / static_cast<long double>(2 * r + k);
}

// n^2 <= r (2n + (an)^2 + (27/4)(1 + an)^2 an), evaluated with rationals.
bool scan_holds(long r, const mpq_class& a, long n) {
    const mpq_class an = a * n;
    const mpq_class rhs = r * (2 * n + an * an + mpq_class(27, 4) * (1 + an) * (1 + an) * an);
    return mpq_class(n * n) <= rhs;
}

std::int64_t oracle_value(const BoundReport& b) { return static_cast<std::int64_t>(b.value.to_double()); }

}  // namespace

TEST_CASE("rho lower bound values") {
    CHECK(rho_lower(5, 0).value.to_double() == 0.0);
    CHECK(rho_lower(5, 0).lower == Scalar(0));
    // frozen from a 50-digit evaluation
    CHECK(rho_lower(100, 27).value.to_double() == doctest::Approx(0.004758078515647154689559722).epsilon(1e-14));
    CHECK(rho_lower(2, 1).value.to_double() == doctest::Approx(0.01807108734590598188165379).epsilon(1e-14));
    CHECK(rho_lower(1, 1).value.to_double() == doctest::Approx(0.03011847890984330313608966).epsilon(1e-14));
    CHECK(rho_lower(6, 6).value.to_double() == doctest::Approx(0.02254006160201381878201016).epsilon(1e-14));
    CHECK(rho_lower(10, 1000).value.to_double() == doctest::Approx(0.005562900240148501306153072).epsilon(1e-14));
    CHECK(rho_lower_report(100, 27).status == BoundStatus::certified_float);
}

TEST_CASE("rho lower enclosure is exact, below the value and tight") {
    for (long r = 1; r <= 100; r += 11)
        for (long k = 0; k <= 1000; k += 37) {
            const auto b = rho_lower(r, k);
            REQUIRE(b.lower.is_exact());
            // (c + 1)^3 <= 8k/27 + 1 with c = lower * (2r + k)
            const mpq_class c = b.lower.rational() * (2 * r + k) + 1;
            CHECK(c * c * c <= q(8 * k, 27).rational() + 1);
            CHECK(b.lower.to_double() <= static_cast<double>(rho_formula(r, k)));
            CHECK(std::abs(b.lower.to_double() - static_cast<double>(rho_formula(r, k))) < 1e-14);
            CHECK(std::abs(b.value.to_double() - static_cast<double>(rho_formula(r, k))) <
                  1e-15 + 1e-13 * static_cast<double>(rho_formula(r, k)));
        }
}

TEST_CASE("rho lower bound is increasing in k while k <= r") {
    for (long r = 1; r <= 100; ++r)
        for (long k = 0; k < r; ++k) CHECK(rho_lower(r, k).value < rho_lower(r, k + 1).value);
    // and the turn-around for large k matches the independent evaluation
    for (long r : {1L, 2L, 10L, 100L})
        for (long k = 0; k < 1000; ++k) {
            const bool up = rho_formula(r, k + 1) > rho_formula(r, k);
            CHECK(up == (rho_lower(r, k + 1).value > rho_lower(r, k).value));
        }
}

TEST_CASE("m_upper examples") {
    const auto m4 = m_upper(4, Scalar(0));
    CHECK(m4.value == Scalar(8));
    CHECK(m4.status == BoundStatus::certified_exact);
    CHECK(m_upper(8, Scalar(0)).value == Scalar(16));
    const auto v = m_upper(10, q(1, 5));
    CHECK(v.status == BoundStatus::vacuous);
    CHECK(v.value == Scalar(static_cast<long>(kDefaultScanCutoff)));
    CHECK_FALSE(v.certified());
    CHECK_THROWS_AS(m_upper(4, q(-1, 10)), NegativeAlpha);
    for (long r = 1; r <= 64; ++r) CHECK(m_upper(r, Scalar(0)).value == Scalar(2 * r));
}

TEST_CASE("m_upper agrees with frozen scan values") {
    // first failures from an independent rational scan
    CHECK(m_upper(100, q(1, 1000)).value == Scalar(200));
    CHECK(m_upper(64, q(1, 100)).value == Scalar(157));
    CHECK(m_upper(20, q(1, 50)).value == Scalar(51));
    CHECK(m_upper(12, q(1, 30)).value == Scalar(38));
    CHECK(m_upper(16, Scalar::from_double(0.0078125)).value == Scalar(33));
    CHECK(m_upper(30, q(1, 40)).status == BoundStatus::vacuous);
    CHECK(m_upper(5, q(1, 7)).status == BoundStatus::vacuous);
}

TEST_CASE("m_upper matches a direct scan and is monotone in alpha") {
    for (long r = 1; r <= 12; ++r) {
        Scalar prev(0);
        for (long den : {1000L, 300L, 100L, 60L, 40L, 30L}) {
            const mpq_class a(1, den);
            const auto b = m_upper(r, Scalar(a), 20000);
            if (b.status == BoundStatus::certified_exact) {
                const long n0 = static_cast<long>(b.value.to_double()) + 1;
                for (long n = 1; n < n0; ++n) CHECK(scan_holds(r, a, n));
                CHECK_FALSE(scan_holds(r, a, n0));
            } else {
                for (long n = 1; n <= 20000; n += 97) CHECK(scan_holds(r, a, n));
            }
            CHECK(prev <= b.value);
            prev = b.value;
        }
    }
}

TEST_CASE("q-ary pipeline") {
    const auto a = aq_upper(2, 8, 4);
    CHECK(a.value == Scalar(16));
    CHECK(a.details.at("j") == "0");
    CHECK(a.details.at("alpha") == "0");
    CHECK(aq_upper(2, 4, 2).value == Scalar(8));
    const auto t = aq_upper(3, 9, 6);
    CHECK(t.value == Scalar(36));
    CHECK(t.details.at("dimension") == "18");
    CHECK(t.details.at("alpha") == "0");
    CHECK_THROWS_AS(aq_upper(2, 4, 3), NegativeJ);
    CHECK_THROWS_AS(aq_upper(2, 4, 0), DomainError);
    const auto frac = aq_upper(3, 4, 2);
    CHECK(frac.details.at("j") == "2/3");
    CHECK(frac.details.at("alpha") == "1/4");
}

TEST_CASE("Plotkin, Mackenzie-Seberry and transfer values") {
    CHECK(plotkin_upper(4) == 8);
    CHECK(plotkin_upper(8) == 16);
    CHECK(plotkin_upper(2) == 4);
    CHECK_THROWS_AS(plotkin_upper(5), OddBlockLength);
    CHECK(ms_upper(3, 9) == 27);
    CHECK(ms_upper(3, 3) == 9);
    CHECK(ms_upper(4, 8) == 32);
    CHECK_THROWS_AS(ms_upper(2, 4), PreconditionViolated);
    CHECK_THROWS_AS(ms_upper(4, 3), PreconditionViolated);
    CHECK_THROWS_AS(ms_upper(3, 4), PreconditionViolated);
    CHECK(ramsey_lower(2, 4, 2, 8) == 9);
    CHECK(ramsey_lower(2, 8, 4, 16) == 17);
    CHECK(ramsey_lower(5, 7, 3, 0) == 1);
}

TEST_CASE("parametrised Ramsey upper bound") {
    const CodeSizeOracle a2 = [](std::int64_t r, std::int64_t s) {
        return static_cast<std::int64_t>(exact_max_code(2, static_cast<int>(r), static_cast<int>(s)).size());
    };
    const auto b = ramsey_upper_param(2, 4, 2, q(1, 2), Scalar(1), a2);
    CHECK(b.value == Scalar(24));
    CHECK(b.details.at("j") == "1");
    CHECK(b.details.at("s_prime") == "1");
    CHECK(b.details.at("oracle_value") == "16");

    const auto c = ramsey_upper_param(2, 8, 4, q(1, 4), Scalar(1), a2);
    CHECK(c.details.at("s_prime") == "3");
    CHECK(c.value == Scalar(25));

    const auto huge = ramsey_upper_param(2, 4, 2, Scalar(1000), Scalar(1), [](auto, auto) { return std::int64_t{1}; });
    CHECK(huge.value == Scalar(2000));

    CHECK_THROWS_AS(ramsey_upper_param(2, 4, 2, q(1, 2), Scalar(2), a2), OracleRange);
    const auto fl = ramsey_upper_param(2, 4, 2, Scalar::from_double(0.5), Scalar(1), a2);
    CHECK(fl.status == BoundStatus::certified_float);
    CHECK(fl.value == Scalar(24));
}

TEST_CASE("asymptotic headline and window") {
    const auto a = ramsey_asymptotic(2, 100, Scalar(0));
    CHECK(a.value == Scalar(200));
    CHECK(a.status == BoundStatus::asymptotic_headline);
    CHECK_FALSE(a.certified());
    CHECK(ramsey_asymptotic(3, 9, Scalar(0)).value == Scalar(36));
    CHECK(ramsey_asymptotic(2, 8, Scalar(1)).value == Scalar(16));

    const auto w2 = bq_window(2), w3 = bq_window(3), w5 = bq_window(5), w6 = bq_window(6);
    CHECK((w2.lower == 2 && w2.upper == 2));
    CHECK((w3.lower == 3 && w3.upper == 4));
    CHECK((w5.lower == 5 && w5.upper == 8));
    CHECK(w5.lower_valid);
    CHECK_FALSE(w6.lower_valid);
    CHECK(is_prime_power(9));
    CHECK(is_prime_power(2));
    CHECK_FALSE(is_prime_power(12));
    CHECK_FALSE(is_prime_power(1));
}

TEST_CASE("bound report JSON") {
    const auto j = aq_upper(2, 8, 4).to_json();
    CHECK(j["value"] == "16");
    CHECK(j["status"] == "certified-exact");
    CHECK(j["inputs"]["q"] == "2");
    CHECK(j.contains("provenance"));
    CHECK(oracle_value(aq_upper(2, 8, 4)) == 16);
}
