#include "sphcodes/codes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sphcodes/errors.hpp"

namespace sphcodes {

namespace {

Scalar zero_of(Mode mode) { return mode == Mode::exact ? Scalar(0) : Scalar::from_double(0.0); }

bool is_unit(const Scalar& norm2, const Tolerance& tol) {
    if (norm2.is_exact()) return norm2 == Scalar(1);
    return std::abs(norm2.to_double() - 1.0) <= tol.abs + tol.rel;
}

// The lemma hypotheses need alpha in [0, 1). In float mode a rounding-level
// negative alpha is read as 0.
Scalar checked_alpha(const GramAnalysis& g, const Tolerance& tol, Certificate& cert) {
    Scalar a = g.alpha;
    if (!a.is_exact() && a.sign() < 0 && a.to_double() >= -tol.abs) {
        cert.add_note("alpha_clamped", a.to_string() + " -> 0");
        a = Scalar::from_double(0.0);
    }
    if (a.sign() < 0 || a >= Scalar(1)) throw AlphaOutOfRange(g.alpha.to_string());
    cert.add_note("alpha", a.to_string());
    cert.add_note("n", std::to_string(g.size()));
    return a;
}

}  // namespace

UnitVectorSet::UnitVectorSet(std::size_t dimension, std::vector<std::vector<Scalar>> vectors,
                             std::vector<std::string> labels)
    : dimension_(dimension), vectors_(std::move(vectors)), labels_(std::move(labels)) {
    for (const auto& v : vectors_)
        if (v.size() != dimension_) throw std::invalid_argument("UnitVectorSet: vector has wrong dimension");
    if (labels_.empty()) {
        for (std::size_t i = 0; i < vectors_.size(); ++i) labels_.push_back("v" + std::to_string(i));
    } else if (labels_.size() != vectors_.size()) {
        throw std::invalid_argument("UnitVectorSet: label count does not match vector count");
    }
}

Mode UnitVectorSet::mode() const {
    for (const auto& v : vectors_)
        for (const auto& x : v)
            if (!x.is_exact()) return Mode::floating;
    return Mode::exact;
}

UnitVectorSet UnitVectorSet::to_mode(Mode mode) const {
    auto vs = vectors_;
    for (auto& v : vs)
        for (auto& x : v) x = x.to_mode(mode);
    return UnitVectorSet(dimension_, std::move(vs), labels_);
}

Scalar inner_product(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner_product: dimension mismatch");
    bool exact = true;
    for (std::size_t i = 0; i < a.size(); ++i) exact = exact && a[i].is_exact() && b[i].is_exact();
    if (exact) {
        mpq_class acc = 0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].rational() * b[i].rational();
        return Scalar(acc);
    }
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].to_double() * b[i].to_double();
    return Scalar::from_double(acc);
}

Scalar UnitVectorSet::norm_squared(std::size_t i) const { return inner_product(vectors_[i], vectors_[i]); }

std::optional<std::size_t> UnitVectorSet::first_non_unit(const Tolerance& tol) const {
    for (std::size_t i = 0; i < vectors_.size(); ++i)
        if (!is_unit(norm_squared(i), tol)) return i;
    return std::nullopt;
}

SymMatrix gram_matrix(const UnitVectorSet& v) {
    const Mode mode = v.mode();
    return SymMatrix(v.size(), mode, [&](std::size_t i, std::size_t j) { return inner_product(v[i], v[j]); });
}

QaryCode::QaryCode(int q, int length, std::vector<Word> words) : q_(q), length_(length), words_(std::move(words)) {
    if (q_ < 2 || q_ > 256) throw PreconditionViolated("QaryCode: alphabet size must be in [2, 256]");
    if (length_ < 0) throw PreconditionViolated("QaryCode: negative block length");
    std::set<Word> seen;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (static_cast<int>(words_[i].size()) != length_)
            throw PreconditionViolated("QaryCode: codeword " + std::to_string(i) + " has wrong length");
        for (auto sym : words_[i])
            if (sym >= q_) throw PreconditionViolated("QaryCode: codeword " + std::to_string(i) + " has symbol >= q");
        if (!seen.insert(words_[i]).second) throw DuplicateCodewords(i);
    }
}

int hamming_distance(const Word& a, const Word& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

int min_distance(const QaryCode& code) {
    if (code.size() < 2) throw TooFewWords();
    int best = code.length() + 1;
    for (std::size_t i = 0; i < code.size(); ++i)
        for (std::size_t j = i + 1; j < code.size(); ++j) best = std::min(best, hamming_distance(code[i], code[j]));
    return best;
}

Scalar negative_edge_sum(const SymMatrix& gram, std::size_t u) {
    Scalar acc = zero_of(gram.mode());
    for (std::size_t v = 0; v < gram.size(); ++v)
        if (v != u && gram(u, v).sign() < 0) acc += gram(u, v);
    return acc;
}

GramAnalysis gram_analyze(const SymMatrix& gram, const Tolerance& tol, std::optional<std::size_t> ambient_dimension) {
    const std::size_t n = gram.size();
    for (std::size_t u = 0; u < n; ++u)
        if (!is_unit(gram(u, u), tol)) throw NonUnitVector(u, gram(u, u).to_string());

    GramAnalysis g;
    g.gram = gram;
    g.ambient_dimension = ambient_dimension;
    g.alpha = Scalar(-1);
    bool have_pair = false;
    g.nplus.resize(n);
    g.nminus.resize(n);
    g.gamma.assign(n, zero_of(gram.mode()));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            const Scalar& m = gram(u, v);
            if (!have_pair || m > g.alpha) {
                g.alpha = m;
                have_pair = true;
            }
            if (m.sign() < 0) {
                g.nminus[u].push_back(v);
                g.gamma[u] += m;
            } else {
                g.nplus[u].push_back(v);
            }
        }
    }
    if (!have_pair) g.alpha = Scalar(-1).to_mode(gram.mode());
    return g;
}

GramAnalysis gram_analyze(const UnitVectorSet& v, const Tolerance& tol) {
    if (auto bad = v.first_non_unit(tol)) throw NonUnitVector(*bad, v.norm_squared(*bad).to_string());
    return gram_analyze(gram_matrix(v), tol, v.dimension());
}

Certificate verify_spherical_code(const SymMatrix& gram, const Scalar& alpha_claim, const Tolerance& tol) {
    Certificate cert("spherical-code", gram.mode(), tol);
    const std::size_t n = gram.size();
    Scalar worst_norm = zero_of(gram.mode());
    for (std::size_t u = 0; u < n; ++u) worst_norm = max(worst_norm, abs(gram(u, u) - Scalar(1)));
    cert.add_link("max |<v,v> - 1| <= 0", worst_norm, zero_of(gram.mode()));

    // empty max/min over pairs: alpha = -1, min = 1
    Scalar hi = Scalar(-1).to_mode(gram.mode()), lo = Scalar(1).to_mode(gram.mode());
    bool have_pair = false;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            hi = have_pair ? max(hi, gram(u, v)) : gram(u, v);
            lo = have_pair ? min(lo, gram(u, v)) : gram(u, v);
            have_pair = true;
        }
    cert.add_link("max_{u!=v} <u,v> <= alpha", hi, alpha_claim);
    cert.add_link("-1 <= min_{u!=v} <u,v>", Scalar(-1), lo);
    cert.add_note("n", std::to_string(n));
    return cert;
}

Certificate verify_spherical_code(const UnitVectorSet& v, const Scalar& alpha_claim, const Tolerance& tol) {
    auto cert = verify_spherical_code(gram_matrix(v), alpha_claim, tol);
    cert.add_note("dimension", std::to_string(v.dimension()));
    return cert;
}

Certificate verify_min_distance(const QaryCode& code, int s) {
    Certificate cert("qary-distance", Mode::exact);
    const int d = min_distance(code);
    cert.add_link("s <= min_{x!=y} d(x,y)", Scalar(s), Scalar(d));
    cert.add_note("q", std::to_string(code.q()));
    cert.add_note("r", std::to_string(code.length()));
    cert.add_note("size", std::to_string(code.size()));
    return cert;
}

Certificate verify_lemma_beta(const GramAnalysis& g, const Tolerance& tol) {
    Certificate cert("lemma-beta", g.mode(), tol);
    const Scalar alpha = checked_alpha(g, tol, cert);
    for (std::size_t u = 0; u < g.size(); ++u) {
        Scalar lhs = zero_of(g.mode());
        for (std::size_t v : g.nminus[u]) lhs += g.gram(u, v) * g.gram(u, v);
        const Scalar rhs = Scalar(1) + alpha * g.gamma[u] * g.gamma[u];
        cert.add_link("u=" + std::to_string(u) + ": sum_{N-(u)} <u,v>^2 <= 1 + alpha*gamma(u)^2", lhs, rhs);
    }
    return cert;
}

Certificate verify_lemma_gamma(const GramAnalysis& g, const Tolerance& tol) {
    Certificate cert("lemma-gamma", g.mode(), tol);
    const Scalar alpha = checked_alpha(g, tol, cert);
    const Scalar n(static_cast<long>(g.size()));
    Scalar lhs = zero_of(g.mode());
    for (const auto& gm : g.gamma) lhs += gm * gm;
    const Scalar t = Scalar(1) + alpha * n;
    cert.add_link("sum_u gamma(u)^2 <= (27/4)(1 + alpha*n)^2 n", lhs, Scalar::rational(27, 4) * t * t * n);
    return cert;
}

Certificate certify_chain(const GramAnalysis& g, const Tolerance& tol) {
    Certificate cert("theorem-chain", g.mode(), tol);
    const Scalar alpha = checked_alpha(g, tol, cert);
    const long n_int = static_cast<long>(g.size());
    if (n_int == 0) throw PreconditionViolated("certify_chain: empty vector set");
    const Scalar n(n_int);
    const std::size_t rk = rank(g.gram, tol);
    const Scalar rank_s(static_cast<long>(rk));
    const Scalar tr2 = trace_of_square(g.gram);
    const Scalar an = alpha * n;
    const Scalar one_an = Scalar(1) + an;
    const Scalar c274 = Scalar::rational(27, 4);
    const Scalar lemma_terms = an * an + c274 * one_an * one_an * an;
    const Scalar cubic = one_an * one_an * one_an - Scalar(1);

    cert.add_link("(i) n^2/rank(M) <= tr(M^2)", n * n / rank_s, tr2);
    cert.add_link("(ii) tr(M^2) <= 2n + (alpha n)^2 + (27/4)(1+alpha n)^2 alpha n", tr2, Scalar(2) * n + lemma_terms);
    cert.add_link("(iii) (alpha n)^2 + (27/4)(1+alpha n)^2 alpha n <= (27/4)((1+alpha n)^3 - 1)", lemma_terms,
                  c274 * cubic);
    cert.add_link("(iv) n - 2 rank(M) <= (27/8)((1+alpha n)^3 - 1)", n - Scalar(2) * rank_s,
                  Scalar::rational(27, 8) * cubic);
    cert.add_note("rank", std::to_string(rk));
    if (g.ambient_dimension) cert.add_note("ambient_dimension", std::to_string(*g.ambient_dimension));
    return cert;
}

Certificate certify_chain(const UnitVectorSet& v, const Tolerance& tol) { return certify_chain(gram_analyze(v, tol), tol); }

}  // namespace sphcodes
