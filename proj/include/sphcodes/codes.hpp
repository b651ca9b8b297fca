#ifndef SPHCODES_CODES_HPP
#define SPHCODES_CODES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphcodes/certificate.hpp"
#include "sphcodes/scalar.hpp"
#include "sphcodes/sym_matrix.hpp"

namespace sphcodes {

/// Vectors in R^d that are claimed to lie on the unit sphere. The claim is
/// checked by the consumers (gram_analyze, verify_spherical_code), not here.
class UnitVectorSet {
public:
    UnitVectorSet() = default;
    /// Throws std::invalid_argument when a vector does not have `dimension` entries.
    UnitVectorSet(std::size_t dimension, std::vector<std::vector<Scalar>> vectors, std::vector<std::string> labels = {});

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<Scalar>& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<std::vector<Scalar>>& vectors() const { return vectors_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    /// Exact iff every coordinate is exact.
    Mode mode() const;
    UnitVectorSet to_mode(Mode mode) const;

    Scalar norm_squared(std::size_t i) const;
    /// First vector whose squared norm is not 1 (within tolerance in float mode).
    std::optional<std::size_t> first_non_unit(const Tolerance& tol = {}) const;

    friend bool operator==(const UnitVectorSet&, const UnitVectorSet&) = default;

private:
    std::size_t dimension_ = 0;
    std::vector<std::vector<Scalar>> vectors_;
    std::vector<std::string> labels_;
};

Scalar inner_product(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

/// Gram matrix in the set's mode. Does not check unit norms.
SymMatrix gram_matrix(const UnitVectorSet& v);

using Word = std::vector<std::uint8_t>;

/// Distinct words of length r over {0, ..., q-1}.
class QaryCode {
public:
    QaryCode() = default;
    /// Throws PreconditionViolated on bad q, word length or symbol, and
    /// DuplicateCodewords on a repeated word.
    QaryCode(int q, int length, std::vector<Word> words);

    int q() const { return q_; }
    int length() const { return length_; }
    std::size_t size() const { return words_.size(); }
    const Word& operator[](std::size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }

    friend bool operator==(const QaryCode&, const QaryCode&) = default;

private:
    int q_ = 2;
    int length_ = 0;
    std::vector<Word> words_;
};

int hamming_distance(const Word& a, const Word& b);

/// Minimum pairwise Hamming distance. Throws TooFewWords when |C| < 2.
int min_distance(const QaryCode& code);

struct GramAnalysis {
    SymMatrix gram;
    /// Largest off-diagonal entry; -1 for fewer than two vectors.
    Scalar alpha;
    std::vector<std::vector<std::size_t>> nplus;   // M(u,v) >= 0, v != u
    std::vector<std::vector<std::size_t>> nminus;  // M(u,v) < 0
    std::vector<Scalar> gamma;                     // sum of M(u,v) over nminus(u)
    std::optional<std::size_t> ambient_dimension;

    std::size_t size() const { return gram.size(); }
    Mode mode() const { return gram.mode(); }
};

/// Throws NonUnitVector when some vector is not on the sphere.
GramAnalysis gram_analyze(const UnitVectorSet& v, const Tolerance& tol = {});
/// Same from a Gram matrix directly; the diagonal plays the role of the norms.
GramAnalysis gram_analyze(const SymMatrix& gram, const Tolerance& tol = {},
                          std::optional<std::size_t> ambient_dimension = std::nullopt);

/// sum of M(u,v) over v in nminus(u), recomputed from the matrix.
Scalar negative_edge_sum(const SymMatrix& gram, std::size_t u);

/// Links: unit norms, max off-diagonal <= alpha_claim, min off-diagonal >= -1.
Certificate verify_spherical_code(const UnitVectorSet& v, const Scalar& alpha_claim, const Tolerance& tol = {});
Certificate verify_spherical_code(const SymMatrix& gram, const Scalar& alpha_claim, const Tolerance& tol = {});

/// min_distance(C) >= s.
Certificate verify_min_distance(const QaryCode& code, int s);

/// For every u: sum over nminus(u) of M(u,v)^2 <= 1 + alpha * gamma(u)^2.
/// Throws AlphaOutOfRange unless 0 <= alpha < 1.
Certificate verify_lemma_beta(const GramAnalysis& g, const Tolerance& tol = {});

/// sum_u gamma(u)^2 <= (27/4) (1 + alpha n)^2 n. Same alpha contract.
Certificate verify_lemma_gamma(const GramAnalysis& g, const Tolerance& tol = {});

/// The four-link inequality chain bounding n - 2 rank(M) by (27/8)((1 + alpha n)^3 - 1):
///   (i)   n^2 / rank(M) <= tr(M^2)
///   (ii)  tr(M^2) <= 2n + (alpha n)^2 + (27/4)(1 + alpha n)^2 alpha n
///   (iii) (alpha n)^2 + (27/4)(1 + alpha n)^2 alpha n <= (27/4)((1 + alpha n)^3 - 1)
///   (iv)  n - 2 rank(M) <= (27/8)((1 + alpha n)^3 - 1)
/// rank(M) stands in for the ambient dimension; both are recorded in the notes.
Certificate certify_chain(const UnitVectorSet& v, const Tolerance& tol = {});
Certificate certify_chain(const GramAnalysis& g, const Tolerance& tol = {});

}  // namespace sphcodes

#endif  // SPHCODES_CODES_HPP
