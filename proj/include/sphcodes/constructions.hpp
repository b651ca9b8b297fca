#ifndef SPHCODES_CONSTRUCTIONS_HPP
#define SPHCODES_CONSTRUCTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sphcodes/codes.hpp"
#include "sphcodes/sym_matrix.hpp"

namespace sphcodes {

/// +-1 matrix with H H^T = order * I, checked on construction.
class HadamardMatrix {
public:
    /// Throws PreconditionViolated when the rows are not a Hadamard matrix.
    explicit HadamardMatrix(std::vector<std::vector<int>> rows);

    std::size_t order() const { return order_; }
    int operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

private:
    std::size_t order_ = 0;
    std::vector<std::int8_t> entries_;
};

/// Vectors whose exact Gram matrix is known even when coordinates are irrational.
struct ExactGramSet {
    UnitVectorSet vectors;  // float coordinates unless they happen to be rational
    SymMatrix exact_gram;
};

/// q unit vectors in R^{q-1} with pairwise inner product -1/(q-1).
ExactGramSet simplex_vectors(int q);

/// {+e_1, -e_1, ..., +e_r, -e_r}.
UnitVectorSet cross_polytope(int r);

/// Order 2^t via [[H, H], [H, -H]].
HadamardMatrix sylvester_hadamard(int t);

/// Rows of H and -H with +1 -> 0 and -1 -> 1: 2r words at distance r/2.
QaryCode hadamard_code(const HadamardMatrix& h);

/// Normalized inner product of the embedded images of two words at distance d:
/// 1 - q d / ((q-1) r).
Scalar embedded_inner_product(int q, int r, int d);

struct EmbeddedCode {
    QaryCode source;
    std::size_t dimension = 0;  // (q-1) r
    UnitVectorSet coordinates;  // f(x)/sqrt(r)
    SymMatrix exact_gram;       // from Hamming distances, not coordinates
};

/// Concatenates simplex vectors u_{x_1}, ..., u_{x_r} and scales by 1/sqrt(r).
/// Symbol s maps to the s-th simplex vector.
EmbeddedCode embed_qary(const QaryCode& code);

/// Binary words to R^r with 0 -> +1/sqrt(r), 1 -> -1/sqrt(r). Throws NotBinary.
UnitVectorSet pm_one_embedding(const QaryCode& code);

}  // namespace sphcodes

#endif  // SPHCODES_CONSTRUCTIONS_HPP
