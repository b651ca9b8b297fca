#ifndef SPHCODES_SEARCH_HPP
#define SPHCODES_SEARCH_HPP

#include <cstdint>
#include <stdexcept>

#include "sphcodes/codes.hpp"

namespace sphcodes {

struct CodeSearchOptions {
    std::uint64_t node_limit = 2'000'000'000;
    /// 0 picks SPHCODES_THREADS or the hardware concurrency.
    unsigned threads = 0;
};

struct CodeSearchResult {
    int q = 2;
    int r = 0;
    int s = 0;
    QaryCode witness;
    std::uint64_t nodes = 0;
    /// True iff the search space was exhausted, i.e. witness.size() == A_q(r, s).
    bool optimal = false;

    std::size_t size() const { return witness.size(); }
};

class NodeLimitExceeded : public std::runtime_error {
public:
    explicit NodeLimitExceeded(CodeSearchResult best)
        : std::runtime_error("NodeLimitExceeded: search stopped after " + std::to_string(best.nodes) +
                             " nodes; best code found has " + std::to_string(best.size()) + " words"),
          best(std::move(best)) {}

    CodeSearchResult best;
};

/// A_q(r, s) by branch-and-bound maximum clique search over [q]^r with edges
/// at Hamming distance >= s. The all-zero word is pinned and the second word
/// is reduced to 0^{r-w} 1^w; the bound is a greedy colouring of the
/// candidates. Requires q^r <= 16384. Throws NodeLimitExceeded.
CodeSearchResult exact_max_code(int q, int r, int s, const CodeSearchOptions& options = {});

/// Lexicographic greedy code: keeps each word at distance >= s from all kept words.
QaryCode greedy_lexicode(int q, int r, int s);

struct RhoSearchOptions {
    std::int64_t iterations = 20000;
    std::uint64_t seed = 1;
    double tau0 = 1.0;
    double decay = 0.97;
    /// Gradient steps between temperature decreases.
    std::int64_t steps_per_temperature = 10;
    double tau_min = 1e-9;
    /// Step length as a multiple of the current temperature.
    double step_scale = 0.5;
};

struct RhoSearchResult {
    int r = 0;
    int n = 0;
    UnitVectorSet witness;  // float coordinates
    Scalar alpha;           // max pairwise product of `witness`, evaluated exactly
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;
};

/// Upper-bound witness for rho(r, n): minimizes a log-sum-exp smoothing of the
/// maximum pairwise inner product with a decreasing temperature, renormalizing
/// after every step. Deterministic for a given seed. Never claims optimality.
RhoSearchResult heuristic_rho(int r, int n, const RhoSearchOptions& options = {});

/// Thread count from SPHCODES_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace sphcodes

#endif  // SPHCODES_SEARCH_HPP
