#include "sphcodes/bounds.hpp"

#include <cmath>

#include "sphcodes/errors.hpp"

namespace sphcodes {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

mpq_class q_of(std::int64_t v) { return mpq_class(static_cast<long>(v)); }

mpq_class rat(std::int64_t num, std::int64_t den) {
    mpq_class x{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    x.canonicalize();
    return x;
}

mpz_class ceil_q(const mpq_class& x) {
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

}  // namespace

std::string_view to_string(BoundStatus status) {
    switch (status) {
        case BoundStatus::certified_exact: return "certified-exact";
        case BoundStatus::certified_float: return "certified-float";
        case BoundStatus::vacuous: return "vacuous";
        case BoundStatus::asymptotic_headline: return "asymptotic-headline";
    }
    return "unknown";
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json in = nlohmann::json::object();
    for (const auto& [k, v] : inputs) in[k] = v;
    nlohmann::json j{{"bound", name},
                     {"inputs", in},
                     {"value", value.to_string()},
                     {"value_approx", value.to_double()},
                     {"status", std::string(to_string(status))},
                     {"provenance", provenance}};
    if (!details.empty()) j["details"] = details;
    return j;
}

RhoLowerBound rho_lower(std::int64_t r, std::int64_t k) {
    if (r < 1 || k < 0) throw PreconditionViolated("rho_lower: need r >= 1 and k >= 0");
    const mpq_class t = rat(8 * k, 27) + 1;
    const double denom = static_cast<double>(2 * r + k);
    // cbrt(1 + x) - 1 without cancellation for small x
    const double x = 8.0 * static_cast<double>(k) / 27.0;
    const double value = std::expm1(std::log1p(x) / 3.0) / denom;

    // largest double c (stepping down from the libm estimate) with c^3 <= t exactly
    double c = std::cbrt(t.get_d());
    while (true) {
        const mpq_class cq(c);
        if (cq * cq * cq <= t) break;
        c = std::nextafter(c, 0.0);
    }
    mpq_class lower = (mpq_class(c) - 1) / q_of(2 * r + k);
    if (sgn(lower) < 0) lower = 0;
    return {Scalar::from_double(value), Scalar(lower)};
}

BoundReport rho_lower_report(std::int64_t r, std::int64_t k) {
    const auto b = rho_lower(r, k);
    BoundReport rep{"rho",
                    {{"r", str(r)}, {"k", str(k)}},
                    b.value,
                    BoundStatus::certified_float,
                    "rho(r, 2r+k) >= ((8k/27 + 1)^(1/3) - 1)/(2r + k)",
                    {{"lower_enclosure", b.lower.to_string()}, {"n", str(2 * r + k)}}};
    return rep;
}

BoundReport m_upper(std::int64_t r, const Scalar& alpha_in, std::int64_t cutoff) {
    if (r < 1) throw PreconditionViolated("m_upper: r must be >= 1");
    if (alpha_in.sign() < 0) throw NegativeAlpha();
    const mpq_class a = alpha_in.exact_value();
    const mpq_class rq = q_of(r);
    const mpq_class c274 = rat(27, 4);

    // Dividing the scan inequality by n gives failure iff h(n) < 0 with the
    // convex quadratic h(n) = c2 n^2 + c1 n + c0; once n is past the vertex
    // and h(n) >= 0, no later n can fail.
    const mpq_class c2 = rq * c274 * a * a * a;
    const mpq_class c1 = rq * a * a * rat(29, 2) - 1;
    const mpq_class vertex = sgn(c2) > 0 ? mpq_class(-c1 / (2 * c2)) : mpq_class(0);

    BoundReport rep{"m",
                    {{"r", str(r)}, {"alpha", Scalar(a).to_string()}},
                    Scalar(static_cast<long>(cutoff)),
                    BoundStatus::vacuous,
                    "n^2 <= r(2n + (alpha n)^2 + (27/4)(1 + alpha n)^2 alpha n) for every code of size n",
                    {{"scan_cutoff", str(cutoff)}}};

    for (std::int64_t n = 1; n <= cutoff; ++n) {
        const mpq_class nq = q_of(n);
        const mpq_class an = a * nq;
        const mpq_class one_an = 1 + an;
        const mpq_class rhs = rq * (2 * nq + an * an + c274 * one_an * one_an * an);
        if (nq * nq > rhs) {
            rep.value = Scalar(static_cast<long>(n - 1));
            rep.status = BoundStatus::certified_exact;
            rep.details["first_failure"] = str(n);
            return rep;
        }
        if (sgn(c2) > 0 && nq >= vertex) {
            rep.details["no_failure_from"] = str(n);
            break;
        }
    }
    return rep;
}

BoundReport aq_upper(int q, std::int64_t r, std::int64_t s, std::int64_t cutoff) {
    if (q < 2) throw PreconditionViolated("aq_upper: q must be >= 2");
    if (r < 1 || s < 1 || s > r) throw PreconditionViolated("aq_upper: need 1 <= s <= r");
    const mpq_class j = rat((q - 1) * r, q) - q_of(s);
    if (sgn(j) < 0) throw NegativeJ(Scalar(j).to_string());
    const std::int64_t dim = (q - 1) * r;
    const mpq_class alpha = q * j / q_of(dim);

    BoundReport rep = m_upper(dim, Scalar(alpha), cutoff);
    rep.name = "aq";
    rep.inputs = {{"q", std::to_string(q)}, {"r", str(r)}, {"s", str(s)}};
    rep.provenance = "simplex embedding: a q-ary code of distance (1-1/q)r - j is a spherical "
                     "[-1, qj/((q-1)r)]-code in R^((q-1)r); bound = m(dim, alpha)";
    rep.details["j"] = Scalar(j).to_string();
    rep.details["alpha"] = Scalar(alpha).to_string();
    rep.details["dimension"] = str(dim);
    return rep;
}

std::int64_t plotkin_upper(std::int64_t r) {
    if (r < 1) throw PreconditionViolated("plotkin_upper: r must be >= 1");
    if (r % 2 != 0) throw OddBlockLength();
    return 2 * r;
}

std::int64_t ms_upper(int q, std::int64_t r) {
    if (q < 3 || r < q) throw PreconditionViolated("ms_upper: need r >= q >= 3");
    if (r % q != 0) throw PreconditionViolated("ms_upper: (1 - 1/q) r must be an integer");
    return q * r;
}

std::int64_t ramsey_lower(int, std::int64_t, std::int64_t, std::int64_t a_value) { return a_value + 1; }

BoundReport ramsey_upper_param(int q, std::int64_t r, std::int64_t s, const Scalar& eps, const Scalar& c,
                               const CodeSizeOracle& oracle) {
    if (q < 2 || r < 1 || s < 1) throw PreconditionViolated("ramsey_upper_param: need q >= 2, r >= 1, s >= 1");
    if (eps.sign() <= 0 || c.sign() <= 0) throw PreconditionViolated("ramsey_upper_param: eps and c must be > 0");
    const mpq_class top = rat((q - 1) * r, q);
    if (q_of(s) > top) throw PreconditionViolated("ramsey_upper_param: need s <= (1 - 1/q) r");

    const mpq_class j = top - q_of(s) + 1;
    const mpz_class s_prime = ceil_q(q_of(s) - c.exact_value() * j);
    if (s_prime < 1) throw OracleRange(s_prime.get_si());

    const std::int64_t a = oracle(r, s_prime.get_si());
    const Scalar value = max((Scalar(1) + eps) * Scalar(static_cast<long>(a)), eps * Scalar(static_cast<long>(s)));

    BoundReport rep{"ramsey-upper",
                    {{"q", std::to_string(q)}, {"r", str(r)}, {"s", str(s)}, {"eps", eps.to_string()},
                     {"c", c.to_string()}},
                    value,
                    value.is_exact() ? BoundStatus::certified_exact : BoundStatus::certified_float,
                    "R(q+1; r, s) <= max((1+eps) A_q(r, s - cj), eps s) with j = (1-1/q)r - s + 1",
                    {{"j", Scalar(j).to_string()},
                     {"s_prime", s_prime.get_str()},
                     {"oracle_value", str(a)},
                     {"note", "c exists but is not explicit; this value holds only for a valid caller-supplied c"}}};
    return rep;
}

BoundReport ramsey_asymptotic(int q, std::int64_t r, const Scalar& j) {
    if (q < 2 || r < 1) throw PreconditionViolated("ramsey_asymptotic: need q >= 2, r >= 1");
    const mpq_class jq = j.exact_value();
    const mpq_class s = rat((q - 1) * r, q) - jq;
    if (sgn(jq) < 0 || s.get_den() != 1)
        throw PreconditionViolated("ramsey_asymptotic: need j >= 0 and (1 - 1/q) r - j integral");
    return {"ramsey-asymptotic",
            {{"q", std::to_string(q)}, {"r", str(r)}, {"j", Scalar(jq).to_string()}},
            Scalar(static_cast<long>(2 * (q - 1) * r)),
            BoundStatus::asymptotic_headline,
            "R(q+1; r, (1-1/q)r - j) <= (2 + o(1))(q-1)r for j = o(r^(1/3))",
            {{"note", "leading term only; the o(1) is not quantified"}}};
}

bool is_prime_power(std::int64_t q) {
    if (q < 2) return false;
    std::int64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) return true;  // q is prime
    while (q % p == 0) q /= p;
    return q == 1;
}

BqWindow bq_window(int q) {
    if (q < 2) throw PreconditionViolated("bq_window: q must be >= 2");
    return {q, 2 * (q - 1), is_prime_power(q)};
}

}  // namespace sphcodes
