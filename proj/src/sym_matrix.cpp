#include "sphcodes/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphcodes {

SymMatrix::SymMatrix(std::size_t n, Mode mode)
    : n_(n), mode_(mode), data_(n * (n + 1) / 2, mode == Mode::exact ? Scalar(0) : Scalar::from_double(0.0)) {}

SymMatrix::SymMatrix(std::size_t n, Mode mode, const std::function<Scalar(std::size_t, std::size_t)>& entry)
    : n_(n), mode_(mode) {
    data_.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) data_.push_back(entry(i, j).to_mode(mode));
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t n = rows.size();
    bool exact = true;
    for (const auto& row : rows) {
        if (row.size() != n) throw std::invalid_argument("SymMatrix::from_rows: matrix is not square");
        for (const auto& v : row) exact = exact && v.is_exact();
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rows[i][j] != rows[j][i]) throw std::invalid_argument("SymMatrix::from_rows: matrix is not symmetric");
    return SymMatrix(n, exact ? Mode::exact : Mode::floating, [&](std::size_t i, std::size_t j) { return rows[i][j]; });
}

SymMatrix SymMatrix::identity(std::size_t n, Mode mode) {
    return SymMatrix(n, mode, [](std::size_t i, std::size_t j) { return Scalar(i == j ? 1 : 0); });
}

SymMatrix SymMatrix::to_mode(Mode mode) const {
    return SymMatrix(n_, mode, [this](std::size_t i, std::size_t j) { return (*this)(i, j); });
}

Scalar SymMatrix::quadratic_form(const std::vector<Scalar>& x) const {
    if (x.size() != n_) throw std::invalid_argument("SymMatrix::quadratic_form: dimension mismatch");
    Scalar acc = mode_ == Mode::exact ? Scalar(0) : Scalar::from_double(0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        acc += (*this)(i, i) * x[i] * x[i];
        for (std::size_t j = i + 1; j < n_; ++j) acc += Scalar(2) * (*this)(i, j) * x[i] * x[j];
    }
    return acc;
}

Scalar trace(const SymMatrix& m) {
    Scalar acc = m.mode() == Mode::exact ? Scalar(0) : Scalar::from_double(0.0);
    for (std::size_t i = 0; i < m.size(); ++i) acc += m(i, i);
    return acc;
}

Scalar trace_of_square(const SymMatrix& m) {
    Scalar diag = m.mode() == Mode::exact ? Scalar(0) : Scalar::from_double(0.0);
    Scalar off = diag;
    for (std::size_t i = 0; i < m.size(); ++i) {
        diag += m(i, i) * m(i, i);
        for (std::size_t j = i + 1; j < m.size(); ++j) off += m(i, j) * m(i, j);
    }
    return diag + Scalar(2) * off;
}

namespace {

std::size_t exact_rank(const SymMatrix& m) {
    const std::size_t n = m.size();
    // Clear denominators row by row; row scaling preserves rank.
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).rational().get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& v = m(i, j).rational();
            a[i][j] = v.get_num() * (l / v.get_den());
        }
    }

    // Bareiss: after each step the active entries are minors of the input, so
    // the division by the previous pivot is exact.
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

std::size_t float_rank(const SymMatrix& m, const Tolerance& tol) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    double max_row_norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = m(i, j).to_double();
            s += a[i][j] * a[i][j];
        }
        max_row_norm = std::max(max_row_norm, std::sqrt(s));
    }
    const double threshold = tol.rel * max_row_norm;
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;

    std::size_t r = 0;
    for (; r < n; ++r) {
        std::size_t pi = r, pj = r;
        double best = 0;
        for (std::size_t i = r; i < n; ++i)
            for (std::size_t j = r; j < n; ++j)
                if (std::abs(a[i][cols[j]]) > best) {
                    best = std::abs(a[i][cols[j]]);
                    pi = i;
                    pj = j;
                }
        if (!(best > threshold)) break;
        std::swap(a[pi], a[r]);
        std::swap(cols[pj], cols[r]);
        const double pivot = a[r][cols[r]];
        for (std::size_t i = r + 1; i < n; ++i) {
            const double f = a[i][cols[r]] / pivot;
            if (f == 0) continue;
            for (std::size_t j = r; j < n; ++j) a[i][cols[j]] -= f * a[r][cols[j]];
        }
    }
    return r;
}

// Symmetric-pivoted LDL^T on a Schur complement S, tracking for every remaining
// index j a vector t_j with S(i, j) = t_i^T M t_j, so a negative direction of
// S lifts to a witness for M.
template <typename T>
struct LdlTraits;

template <>
struct LdlTraits<mpq_class> {
    static mpq_class from(const Scalar& s) { return s.rational(); }
    static Scalar to(const mpq_class& v) { return Scalar(v); }
    static mpq_class abs(const mpq_class& v) { return ::abs(v); }
    static int sgn(const mpq_class& v) { return ::sgn(v); }
};

template <>
struct LdlTraits<double> {
    static double from(const Scalar& s) { return s.to_double(); }
    static Scalar to(double v) { return Scalar::from_double(v); }
    static double abs(double v) { return std::abs(v); }
    static int sgn(double v) { return (v > 0) - (v < 0); }
};

template <typename T>
PsdResult ldl_psd(const SymMatrix& m, const T& eps) {
    using Tr = LdlTraits<T>;
    const std::size_t n = m.size();
    std::vector<std::vector<T>> s(n, std::vector<T>(n));
    std::vector<std::vector<T>> t(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) {
        t[i][i] = T(1);
        for (std::size_t j = 0; j < n; ++j) s[i][j] = Tr::from(m(i, j));
    }

    const auto fail_with = [&](const std::vector<T>& x) {
        PsdResult res{false, std::vector<Scalar>()};
        for (const auto& v : x) res.witness->push_back(Tr::to(v));
        return res;
    };
    // x = a * t_i + b * t_j
    const auto combine = [&](std::size_t i, const T& a, std::size_t j, const T& b) {
        std::vector<T> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = a * t[i][k] + b * t[j][k];
        return x;
    };

    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

    while (!remaining.empty()) {
        for (std::size_t i : remaining)
            if (s[i][i] < -eps) return fail_with(t[i]);
        std::size_t best = 0;
        for (std::size_t k = 1; k < remaining.size(); ++k)
            if (s[remaining[k]][remaining[k]] > s[remaining[best]][remaining[best]]) best = k;
        const std::size_t p = remaining[best];
        const T d = s[p][p];

        if (d <= eps) {
            // Largest remaining diagonal is (numerically) zero: PSD iff the
            // remaining block vanishes. Any nonzero entry gives a negative 2x2 minor.
            for (std::size_t a = 0; a < remaining.size(); ++a) {
                for (std::size_t b = a + 1; b < remaining.size(); ++b) {
                    const std::size_t i = remaining[a], j = remaining[b];
                    const T minor = s[i][i] * s[j][j] - s[i][j] * s[i][j];
                    if (!(minor < -eps) && !(eps == T(0) && s[i][j] != T(0))) continue;
                    if constexpr (std::is_same_v<T, mpq_class>) {
                        return fail_with(combine(i, T(1), j, T(-Tr::sgn(s[i][j]))));
                    } else {
                        // eigenvector of the smallest eigenvalue of the 2x2 block
                        const double h = (s[i][i] - s[j][j]) / 2;
                        const double lambda = (s[i][i] + s[j][j]) / 2 - std::hypot(h, s[i][j]);
                        double a0 = s[i][j], b0 = lambda - s[i][i];
                        if (std::abs(a0) + std::abs(b0) == 0) {
                            a0 = lambda - s[j][j];
                            b0 = s[i][j];
                        }
                        return fail_with(combine(i, a0, j, b0));
                    }
                }
            }
            return {};
        }

        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        for (std::size_t j : remaining) {
            const T f = s[p][j] / d;
            if (f == T(0)) continue;
            for (std::size_t i : remaining) s[i][j] -= s[i][p] * f;
            for (std::size_t k = 0; k < n; ++k) t[j][k] -= f * t[p][k];
        }
        // keep the block symmetric after the column-wise update
        for (std::size_t a = 0; a < remaining.size(); ++a)
            for (std::size_t b = a + 1; b < remaining.size(); ++b)
                s[remaining[a]][remaining[b]] = s[remaining[b]][remaining[a]];
    }
    return {};
}

}  // namespace

std::size_t rank(const SymMatrix& m, const Tolerance& tol) {
    return m.mode() == Mode::exact ? exact_rank(m) : float_rank(m, tol);
}

PsdResult is_psd(const SymMatrix& m, const Tolerance& tol) {
    const std::size_t n = m.size();
    const bool exact = m.mode() == Mode::exact;
    const Scalar neg_eps = exact ? Scalar(0) : Scalar::from_double(-tol.abs);
    const auto unit = [&](std::size_t i, std::size_t j, int sj) {
        std::vector<Scalar> x(n, exact ? Scalar(0) : Scalar::from_double(0.0));
        x[i] = exact ? Scalar(1) : Scalar::from_double(1.0);
        if (j != i) x[j] = exact ? Scalar(sj) : Scalar::from_double(sj);
        return x;
    };

    // Cheap witnesses first: a negative diagonal entry or a 2x2 principal
    // block whose all-ones (sign-adjusted) direction is negative.
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, i) < neg_eps) return {false, unit(i, i, 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, i) + m(j, j) - Scalar(2) * abs(m(i, j)) < neg_eps)
                return {false, unit(i, j, m(i, j).sign() > 0 ? -1 : 1)};

    if (exact) return ldl_psd<mpq_class>(m, mpq_class(0));
    return ldl_psd<double>(m, tol.abs);
}

Certificate verify_trace_rank(const SymMatrix& m, const Tolerance& tol) {
    Certificate cert("trace-rank", m.mode(), tol);
    const std::size_t rk = rank(m, tol);
    const Scalar tr = trace(m);
    cert.add_link("tr(M)^2 <= rank(M) * tr(M^2)", tr * tr, Scalar(static_cast<long>(rk)) * trace_of_square(m));
    cert.add_note("rank", std::to_string(rk));
    cert.add_note("dimension", std::to_string(m.size()));
    if (m.mode() == Mode::floating && !cert.passed())
        cert.add_note("diagnosis", "float rank threshold too strict for this matrix; rerun in exact mode or raise --rel-eps");
    return cert;
}

}  // namespace sphcodes
