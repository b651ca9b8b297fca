#ifndef SPHCODES_BOUNDS_HPP
#define SPHCODES_BOUNDS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sphcodes/scalar.hpp"

namespace sphcodes {

enum class BoundStatus {
    certified_exact,
    certified_float,
    /// The scan never failed below the cutoff; `value` is the cutoff, not a claim.
    vacuous,
    /// Leading-order value of an o(1) statement; no finite-n guarantee.
    asymptotic_headline,
};

std::string_view to_string(BoundStatus status);

struct BoundReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    Scalar value;
    BoundStatus status = BoundStatus::certified_exact;
    std::string provenance;
    std::map<std::string, std::string> details;

    bool certified() const {
        return status == BoundStatus::certified_exact || status == BoundStatus::certified_float;
    }
    nlohmann::json to_json() const;
};

inline constexpr std::int64_t kDefaultScanCutoff = 10'000'000;

struct RhoLowerBound {
    Scalar value;  // float
    Scalar lower;  // exact, <= the true formula value
};

/// ((8k/27 + 1)^{1/3} - 1) / (2r + k), a lower bound on the smallest possible
/// maximum inner product of 2r + k unit vectors in R^r.
RhoLowerBound rho_lower(std::int64_t r, std::int64_t k);
BoundReport rho_lower_report(std::int64_t r, std::int64_t k);

/// Largest n allowed by n^2 <= r (2n + (an)^2 + (27/4)(1 + an)^2 an) for
/// spherical [-1, a]-codes in R^r, found by an exact scan for the first
/// failing n. Throws NegativeAlpha. Float alpha is converted losslessly.
BoundReport m_upper(std::int64_t r, const Scalar& alpha, std::int64_t cutoff = kDefaultScanCutoff);

/// Upper bound on A_q(r, s) through the simplex embedding:
/// m_upper((q-1) r, q j / ((q-1) r)) with j = (1 - 1/q) r - s. Throws NegativeJ.
BoundReport aq_upper(int q, std::int64_t r, std::int64_t s, std::int64_t cutoff = kDefaultScanCutoff);

/// A_2(r, r/2) <= 2r. Throws OddBlockLength.
std::int64_t plotkin_upper(std::int64_t r);

/// A_q(r, (1 - 1/q) r) <= q r for r >= q >= 3.
std::int64_t ms_upper(int q, std::int64_t r);

/// R(q+1; r, s) >= A_q(r, s) + 1 given any lower bound `a_value` on A_q(r, s).
std::int64_t ramsey_lower(int q, std::int64_t r, std::int64_t s, std::int64_t a_value);

/// Oracle for A_q(r, s') at the caller's fixed q.
using CodeSizeOracle = std::function<std::int64_t(std::int64_t r, std::int64_t s)>;

/// max((1 + eps) A(r, s'), eps s) with j = (1 - 1/q) r - s + 1 and
/// s' = ceil(s - c j). The constant c is supplied by the caller.
/// Throws OracleRange when s' < 1.
BoundReport ramsey_upper_param(int q, std::int64_t r, std::int64_t s, const Scalar& eps, const Scalar& c,
                               const CodeSizeOracle& oracle);

/// 2 (q - 1) r, flagged asymptotic.
BoundReport ramsey_asymptotic(int q, std::int64_t r, const Scalar& j);

bool is_prime_power(std::int64_t q);

struct BqWindow {
    std::int64_t lower;
    std::int64_t upper;
    bool lower_valid;  // q is a prime power
};

/// q <= B_q(j) <= 2(q - 1); the lower end needs q to be a prime power.
BqWindow bq_window(int q);

}  // namespace sphcodes

#endif  // SPHCODES_BOUNDS_HPP
