#include "sphcodes/constructions.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "sphcodes/errors.hpp"

namespace sphcodes {

namespace {

// floor(sqrt(r)) if r is a perfect square, 0 otherwise.
long exact_sqrt(long r) {
    long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(r))));
    while (s * s > r) --s;
    while ((s + 1) * (s + 1) <= r) ++s;
    return s * s == r ? s : 0;
}

// Float coordinates of q equidistant unit vectors in R^{q-1}: centre the
// standard basis of R^q and express it in an orthonormal basis of the
// sum-zero hyperplane (two passes of modified Gram-Schmidt).
std::vector<std::vector<double>> simplex_coordinates(int q) {
    const std::size_t m = static_cast<std::size_t>(q);
    std::vector<std::vector<double>> pts(m, std::vector<double>(m, -1.0 / q));
    for (std::size_t i = 0; i < m; ++i) pts[i][i] += 1.0;

    std::vector<std::vector<double>> basis;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        auto b = pts[i];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis) {
                double d = 0;
                for (std::size_t k = 0; k < m; ++k) d += b[k] * e[k];
                for (std::size_t k = 0; k < m; ++k) b[k] -= d * e[k];
            }
        double norm = 0;
        for (double x : b) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : b) x /= norm;
        basis.push_back(std::move(b));
    }

    std::vector<std::vector<double>> coords(m, std::vector<double>(m - 1));
    for (std::size_t i = 0; i < m; ++i) {
        double norm = 0;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            double d = 0;
            for (std::size_t l = 0; l < m; ++l) d += pts[i][l] * basis[k][l];
            coords[i][k] = d;
            norm += d * d;
        }
        norm = std::sqrt(norm);
        for (double& x : coords[i]) x /= norm;
    }
    return coords;
}

}  // namespace

HadamardMatrix::HadamardMatrix(std::vector<std::vector<int>> rows) : order_(rows.size()) {
    if (order_ == 0) throw PreconditionViolated("HadamardMatrix: empty matrix");
    entries_.reserve(order_ * order_);
    for (const auto& row : rows) {
        if (row.size() != order_) throw PreconditionViolated("HadamardMatrix: matrix is not square");
        for (int x : row) {
            if (x != 1 && x != -1) throw PreconditionViolated("HadamardMatrix: entries must be +1 or -1");
            entries_.push_back(static_cast<std::int8_t>(x));
        }
    }
    // Row inner product = order - 2 * (number of sign disagreements); pack the
    // -1 positions into bit rows and compare with popcount.
    const std::size_t words = (order_ + 63) / 64;
    std::vector<std::uint64_t> bits(order_ * words, 0);
    for (std::size_t i = 0; i < order_; ++i)
        for (std::size_t j = 0; j < order_; ++j)
            if ((*this)(i, j) < 0) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    for (std::size_t i = 0; i < order_; ++i)
        for (std::size_t k = i + 1; k < order_; ++k) {
            std::size_t diff = 0;
            for (std::size_t w = 0; w < words; ++w)
                diff += static_cast<std::size_t>(std::popcount(bits[i * words + w] ^ bits[k * words + w]));
            if (2 * diff != order_) throw PreconditionViolated("HadamardMatrix: rows are not orthogonal");
        }
}

ExactGramSet simplex_vectors(int q) {
    if (q < 2) throw PreconditionViolated("simplex_vectors: q must be >= 2");
    const SymMatrix gram(static_cast<std::size_t>(q), Mode::exact, [q](std::size_t i, std::size_t j) {
        return i == j ? Scalar(1) : Scalar::rational(-1, q - 1);
    });
    if (q == 2) return {UnitVectorSet(1, {{Scalar(1)}, {Scalar(-1)}}), gram};

    std::vector<std::vector<Scalar>> vs;
    for (const auto& c : simplex_coordinates(q)) {
        std::vector<Scalar> v;
        for (double x : c) v.push_back(Scalar::from_double(x));
        vs.push_back(std::move(v));
    }
    return {UnitVectorSet(static_cast<std::size_t>(q - 1), std::move(vs)), gram};
}

UnitVectorSet cross_polytope(int r) {
    if (r < 1) throw PreconditionViolated("cross_polytope: r must be >= 1");
    std::vector<std::vector<Scalar>> vs;
    std::vector<std::string> labels;
    for (int i = 0; i < r; ++i)
        for (int sign : {1, -1}) {
            std::vector<Scalar> v(static_cast<std::size_t>(r), Scalar(0));
            v[static_cast<std::size_t>(i)] = Scalar(sign);
            vs.push_back(std::move(v));
            labels.push_back((sign > 0 ? "+e" : "-e") + std::to_string(i + 1));
        }
    return UnitVectorSet(static_cast<std::size_t>(r), std::move(vs), std::move(labels));
}

HadamardMatrix sylvester_hadamard(int t) {
    if (t < 0 || t > 14) throw PreconditionViolated("sylvester_hadamard: t must be in [0, 14]");
    std::vector<std::vector<int>> h{{1}};
    for (int step = 0; step < t; ++step) {
        const std::size_t n = h.size();
        std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                next[i][j] = next[i][j + n] = next[i + n][j] = h[i][j];
                next[i + n][j + n] = -h[i][j];
            }
        h = std::move(next);
    }
    return HadamardMatrix(std::move(h));
}

QaryCode hadamard_code(const HadamardMatrix& h) {
    const std::size_t r = h.order();
    if (r < 2) throw PreconditionViolated("hadamard_code: order must be >= 2");
    std::vector<Word> words;
    for (int sign : {1, -1})
        for (std::size_t i = 0; i < r; ++i) {
            Word w(r);
            for (std::size_t j = 0; j < r; ++j) w[j] = sign * h(i, j) > 0 ? 0 : 1;
            words.push_back(std::move(w));
        }
    QaryCode code(2, static_cast<int>(r), std::move(words));
    if (2 * static_cast<std::size_t>(min_distance(code)) != r)
        throw std::logic_error("hadamard_code: minimum distance is not order/2");
    return code;
}

Scalar embedded_inner_product(int q, int r, int d) {
    return Scalar(1) - Scalar::rational(static_cast<long>(q) * d, static_cast<long>(q - 1) * r);
}

EmbeddedCode embed_qary(const QaryCode& code) {
    const int q = code.q(), r = code.length();
    if (r < 1) throw PreconditionViolated("embed_qary: block length must be >= 1");
    const std::size_t n = code.size();
    const std::size_t dim = static_cast<std::size_t>((q - 1) * r);

    SymMatrix gram(n, Mode::exact, [&](std::size_t i, std::size_t j) {
        return embedded_inner_product(q, r, hamming_distance(code[i], code[j]));
    });

    std::vector<std::vector<Scalar>> vs;
    vs.reserve(n);
    const long root = exact_sqrt(r);
    if (q == 2 && root > 0) {
        for (const auto& w : code.words()) {
            std::vector<Scalar> v;
            for (auto s : w) v.push_back(Scalar::rational(s == 0 ? 1 : -1, root));
            vs.push_back(std::move(v));
        }
    } else {
        const auto u = q == 2 ? std::vector<std::vector<double>>{{1.0}, {-1.0}} : simplex_coordinates(q);
        const double scale = 1.0 / std::sqrt(static_cast<double>(r));
        for (const auto& w : code.words()) {
            std::vector<Scalar> v;
            v.reserve(dim);
            for (auto s : w)
                for (double x : u[s]) v.push_back(Scalar::from_double(x * scale));
            vs.push_back(std::move(v));
        }
    }
    return {code, dim, UnitVectorSet(dim, std::move(vs)), std::move(gram)};
}

UnitVectorSet pm_one_embedding(const QaryCode& code) {
    if (code.q() != 2) throw NotBinary();
    const int r = code.length();
    if (r < 1) throw PreconditionViolated("pm_one_embedding: block length must be >= 1");
    const long root = exact_sqrt(r);
    const double scale = 1.0 / std::sqrt(static_cast<double>(r));
    std::vector<std::vector<Scalar>> vs;
    for (const auto& w : code.words()) {
        std::vector<Scalar> v;
        for (auto s : w) {
            const int sign = s == 0 ? 1 : -1;
            v.push_back(root > 0 ? Scalar::rational(sign, root) : Scalar::from_double(sign * scale));
        }
        vs.push_back(std::move(v));
    }
    return UnitVectorSet(static_cast<std::size_t>(r), std::move(vs));
}

}  // namespace sphcodes
