// Acceptance suite: one line per criterion on stdout.
//
//   acceptance            run everything
//   acceptance c3 c7      run a subset
//
// Exit status: 0 all selected criteria pass, 1 some failed, 77 only skips selected.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "sphcodes/bounds.hpp"
#include "sphcodes/codes.hpp"
#include "sphcodes/constructions.hpp"
#include "sphcodes/search.hpp"
#include "support.hpp"

using namespace sphcodes;
using testsupport::q;

namespace {

enum class Outcome { pass, fail, skip };

struct Verdict {
    Outcome outcome = Outcome::pass;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && outcome == Outcome::pass) {
            outcome = Outcome::fail;
            detail << "first failure: " << what << "; ";
        }
    }
};

struct Criterion {
    std::string id;
    std::string title;
    double time_limit_s;
    std::function<void(Verdict&)> body;
};

// Every configuration the constructions module can produce at small sizes,
// with exact Grams where they exist.
struct Config {
    std::string name;
    std::size_t dimension;
    GramAnalysis gram;
};

std::vector<Config> construction_configs() {
    std::vector<Config> out;
    for (int qq = 2; qq <= 8; ++qq) {
        const auto s = simplex_vectors(qq);
        out.push_back({"simplex q=" + std::to_string(qq), static_cast<std::size_t>(qq - 1),
                       gram_analyze(s.exact_gram, {}, qq - 1)});
    }
    for (int r = 1; r <= 8; ++r) out.push_back({"cross-polytope r=" + std::to_string(r), static_cast<std::size_t>(r),
                                                gram_analyze(cross_polytope(r))});
    std::vector<QaryCode> codes;
    for (int t = 1; t <= 4; ++t) codes.push_back(hadamard_code(sylvester_hadamard(t)));
    for (int qq = 2; qq <= 3; ++qq)
        for (int r = 2; r <= 5; ++r)
            for (int s = 1; s <= r; ++s) codes.push_back(greedy_lexicode(qq, r, s));
    for (const auto& c : codes) {
        const auto e = embed_qary(c);
        const std::string name = "embedded q=" + std::to_string(c.q()) + " r=" + std::to_string(c.length()) +
                                 " |C|=" + std::to_string(c.size());
        out.push_back({name, e.dimension, gram_analyze(e.exact_gram, {}, e.dimension)});
        if (c.q() == 2)
            out.push_back({"pm-one " + name, static_cast<std::size_t>(c.length()),
                           gram_analyze(gram_matrix(pm_one_embedding(c)).to_mode(Mode::floating))});
    }
    return out;
}

void c1(Verdict& v) {
    for (int t : {1, 2, 3, 4}) {
        const long r = 1L << t;
        const auto code = hadamard_code(sylvester_hadamard(t));
        v.require(static_cast<long>(code.size()) == 2 * r, "|hadamard_code| != 2r at r=" + std::to_string(r));
        v.require(min_distance(code) == r / 2, "distance != r/2 at r=" + std::to_string(r));
        const auto b = aq_upper(2, r, r / 2);
        v.require(b.status == BoundStatus::certified_exact && b.value == Scalar(2 * r),
                  "aq_upper(2, r, r/2) != 2r at r=" + std::to_string(r));
    }
    v.detail << "orders 2, 4, 8, 16";
}

void c2(Verdict& v) {
    for (long r = 1; r <= 64; ++r) {
        const auto b = m_upper(r, Scalar(0));
        v.require(b.status == BoundStatus::certified_exact && b.value == Scalar(2 * r),
                  "m_upper(r, 0) != 2r at r=" + std::to_string(r));
        const auto cp = cross_polytope(static_cast<int>(r));
        const auto g = gram_analyze(cp);
        v.require(cp.size() == static_cast<std::size_t>(2 * r) && g.mode() == Mode::exact, "cross-polytope size");
        // r = 1 is the antipodal pair, whose only product is -1 <= 0
        v.require(r == 1 ? g.alpha == Scalar(-1) : g.alpha == Scalar(0), "cross-polytope alpha");
        v.require(verify_spherical_code(cp, Scalar(0)).passed(), "cross-polytope [-1, 0] certificate");
    }
    v.detail << "r = 1..64";
}

void c3(Verdict& v) {
    constexpr double kTol = 1e-6;
    double min_gap = 1e9;
    int checked = 0;
    for (const auto& c : construction_configs()) {
        const auto n = static_cast<long>(c.gram.size()), r = static_cast<long>(c.dimension);
        if (n <= 2 * r) continue;  // k >= 1; rho(1, 2) = -1 sits below the k = 0 value
        const double bound = rho_lower(r, n - 2 * r).value.to_double();
        v.require(c.gram.alpha.to_double() >= bound - kTol, c.name);
        min_gap = std::min(min_gap, c.gram.alpha.to_double() - bound);
        ++checked;
    }
    for (int r = 2; r <= 6; ++r)
        for (int n = 2 * r + 1; n <= 2 * r + 6; ++n)
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                RhoSearchOptions opt;
                opt.seed = seed;
                const auto res = heuristic_rho(r, n, opt);
                const double bound = rho_lower(r, n - 2 * r).value.to_double();
                v.require(res.alpha.to_double() >= bound - kTol,
                          "heuristic r=" + std::to_string(r) + " n=" + std::to_string(n));
                min_gap = std::min(min_gap, res.alpha.to_double() - bound);
                ++checked;
            }
    v.detail << checked << " configurations, min(alpha - bound) = " << min_gap;
}

void c4(Verdict& v) {
    std::mt19937_64 rng(20240);
    int sets = 0, drawn = 0;
    while (sets < 200) {
        const std::size_t d = 1 + rng() % 6, n = 2 + rng() % 11;
        const auto vs = testsupport::random_rational_set(rng, n, d);
        ++drawn;
        const auto g = gram_analyze(vs);
        if (g.alpha < Scalar(0)) continue;
        ++sets;
        v.require(g.mode() == Mode::exact, "random set not exact");
        v.require(certify_chain(g).passed(), "chain on random set " + std::to_string(sets));
        v.require(verify_lemma_beta(g).passed(), "beta on random set " + std::to_string(sets));
        v.require(verify_lemma_gamma(g).passed(), "gamma on random set " + std::to_string(sets));
    }
    int constructed = 0;
    for (const auto& c : construction_configs()) {
        if (c.gram.alpha < Scalar(0) || c.gram.size() < 2 || c.gram.mode() != Mode::exact) continue;
        ++constructed;
        v.require(certify_chain(c.gram).passed(), "chain on " + c.name);
        v.require(verify_lemma_beta(c.gram).passed(), "beta on " + c.name);
        v.require(verify_lemma_gamma(c.gram).passed(), "gamma on " + c.name);
    }
    v.detail << sets << " random sets (" << drawn << " drawn), " << constructed << " exact constructions";
}

void c5(Verdict& v) {
    std::mt19937_64 rng(5150);
    double worst = 0;
    for (int it = 0; it < 100; ++it) {
        const int qq = 2 + static_cast<int>(rng() % 4), r = 1 + static_cast<int>(rng() % 12);
        const auto code = testsupport::random_code(rng, qq, r, 40);
        const auto e = embed_qary(code);
        const auto fg = gram_matrix(e.coordinates);
        for (std::size_t i = 0; i < code.size(); ++i)
            for (std::size_t j = 0; j < code.size(); ++j) {
                int d = 0;
                for (int k = 0; k < r; ++k) d += code[i][static_cast<std::size_t>(k)] != code[j][static_cast<std::size_t>(k)];
                mpq_class expect(mpz_class(qq * d), mpz_class((qq - 1) * r));
                expect.canonicalize();
                expect = 1 - expect;
                v.require(e.exact_gram(i, j).is_exact() && e.exact_gram(i, j).rational() == expect, "exact Gram entry");
                const double err = std::abs(fg(i, j).to_double() - expect.get_d());
                worst = std::max(worst, err);
                v.require(err <= 1e-9, "float coordinate product");
            }
    }
    v.detail << "100 codes, max float deviation " << worst;
}

void c6(Verdict& v) {
    const auto a = exact_max_code(2, 4, 2);
    v.require(a.size() == 8 && a.optimal && aq_upper(2, 4, 2).value == Scalar(8), "A_2(4,2) = 8 = aq_upper(2,4,2)");
    const auto b = exact_max_code(2, 3, 3);
    v.require(b.size() == 2 && b.optimal, "A_2(3,3) = 2");
    int pairs = 0;
    for (int r = 1; r <= 8; ++r)
        for (int s = 1; 2 * s <= r; ++s) {
            const auto res = exact_max_code(2, r, s);
            const auto bound = aq_upper(2, r, s);
            const std::string at = "(r, s) = (" + std::to_string(r) + ", " + std::to_string(s) + ")";
            v.require(res.optimal, "search not exhaustive at " + at);
            v.require(!bound.certified() || Scalar(static_cast<long>(res.size())) <= bound.value, "bound violated at " + at);
            v.detail << "A(" << r << "," << s << ")=" << res.size() << "<=" << bound.value.to_string()
                     << (bound.certified() ? "" : "(vacuous)") << " ";
            ++pairs;
        }
}

void c7(Verdict& v) {
    Scalar prev;
    bool first = true;
    std::ostringstream trace;
    for (long r : {64L, 128L, 256L, 512L}) {
        // nearest binary64 to r^(-3/4), taken as an exact dyadic rational
        const Scalar alpha = Scalar::from_double(std::pow(static_cast<double>(r), -0.75)).to_exact();
        const auto b = m_upper(r, alpha);
        trace << "r=" << r << " " << to_string(b.status);
        if (b.status != BoundStatus::certified_exact) {
            trace << "; ";
            v.require(false, "m_upper(" + std::to_string(r) + ", r^-3/4) is vacuous");
            continue;
        }
        const Scalar ratio = b.value / Scalar(2 * r);
        trace << " ratio " << ratio.to_double() << "; ";
        v.require(first || ratio <= prev, "ratio increases at r=" + std::to_string(r));
        if (r == 256) v.require(ratio <= q(3, 2), "ratio > 1.5 at r=256");
        prev = ratio;
        first = false;
    }
    v.detail << trace.str();
}

void c8(Verdict& v) {
    v.require(ramsey_lower(2, 4, 2, 8) == 9, "ramsey_lower(2,4,2,8)");
    const auto a = ramsey_asymptotic(2, 100, Scalar(0));
    v.require(a.value == Scalar(200) && a.status == BoundStatus::asymptotic_headline, "ramsey_asymptotic(2,100,0)");
    const auto w = bq_window(3);
    v.require(w.lower == 3 && w.upper == 4, "bq_window(3)");
}

void c9(Verdict& v) {
    v.outcome = Outcome::skip;
    v.detail << "optimality of the exponents 1/3 and -2/3 rests on a cited code family whose construction is not given; "
                "no desk-scale witness exists";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {"c1", "Plotkin equality replay", 1, c1},
        {"c2", "M(r, 0) = 2r for r <= 64", 5, c2},
        {"c3", "lower bound soundness on constructions and optimizer output", 120, c3},
        {"c4", "proof chain and lemmas on random and constructed sets", 60, c4},
        {"c5", "embedding inner-product identity", 30, c5},
        {"c6", "exact search vs pipeline bound", 300, c6},
        {"c7", "M(r, r^-3/4)/(2r) trend", 60, c7},
        {"c8", "transfer formulas", 1, c8},
        {"c9", "optimality of the exponents", 0, c9},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    bool any_fail = false, any_pass = false;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception& e) {
            v.outcome = Outcome::fail;
            v.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (v.outcome == Outcome::pass && secs > c.time_limit_s) {
            v.outcome = Outcome::fail;
            v.detail << " over time limit " << c.time_limit_s << " s";
        }
        const char* tag = v.outcome == Outcome::pass ? "PASS" : v.outcome == Outcome::fail ? "FAIL" : "SKIP";
        std::cout << tag << ' ' << c.id << " [" << c.title << "] " << secs << " s: " << v.detail.str() << std::endl;
        any_fail |= v.outcome == Outcome::fail;
        any_pass |= v.outcome == Outcome::pass;
    }
    if (any_fail) return 1;
    return any_pass ? 0 : 77;
}
