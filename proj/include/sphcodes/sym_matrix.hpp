#ifndef SPHCODES_SYM_MATRIX_HPP
#define SPHCODES_SYM_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sphcodes/certificate.hpp"
#include "sphcodes/scalar.hpp"

namespace sphcodes {

/// Symmetric matrix with a single arithmetic mode; only the upper triangle is stored.
class SymMatrix {
public:
    SymMatrix() = default;
    /// Zero matrix.
    SymMatrix(std::size_t n, Mode mode);
    /// Entries from `entry(i, j)` for i <= j, coerced to `mode`.
    SymMatrix(std::size_t n, Mode mode, const std::function<Scalar(std::size_t, std::size_t)>& entry);

    /// Mode is exact iff every entry is exact. Throws std::invalid_argument when
    /// the rows are ragged or not symmetric.
    static SymMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);
    static SymMatrix identity(std::size_t n, Mode mode = Mode::exact);

    std::size_t size() const { return n_; }
    Mode mode() const { return mode_; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }

    SymMatrix to_mode(Mode mode) const;
    /// <Mx, x>
    Scalar quadratic_form(const std::vector<Scalar>& x) const;

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i + 1) / 2 + j;
    }

    std::size_t n_ = 0;
    Mode mode_ = Mode::exact;
    std::vector<Scalar> data_;
};

Scalar trace(const SymMatrix& m);

/// Sum of squared entries, i.e. tr(M^2) for symmetric M.
Scalar trace_of_square(const SymMatrix& m);

/// Exact mode: fraction-free elimination. Float mode: complete pivoting, a pivot
/// counts when it exceeds tol.rel times the largest initial row norm.
std::size_t rank(const SymMatrix& m, const Tolerance& tol = {});

struct PsdResult {
    bool psd = true;
    /// Set when `psd` is false; <Mx, x> < 0.
    std::optional<std::vector<Scalar>> witness;
};

/// Symmetric-pivoted LDL^T. Float mode accepts pivots >= -tol.abs.
PsdResult is_psd(const SymMatrix& m, const Tolerance& tol = {});

/// tr(M)^2 <= rank(M) tr(M^2).
Certificate verify_trace_rank(const SymMatrix& m, const Tolerance& tol = {});

}  // namespace sphcodes

#endif  // SPHCODES_SYM_MATRIX_HPP
