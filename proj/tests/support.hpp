#ifndef SPHCODES_TESTS_SUPPORT_HPP
#define SPHCODES_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sphcodes/codes.hpp"
#include "sphcodes/sym_matrix.hpp"

namespace testsupport {

using namespace sphcodes;

inline Scalar q(long num, long den = 1) { return Scalar::rational(num, den); }

inline std::vector<std::vector<Scalar>> int_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Scalar>> out;
    for (const auto& r : rows) {
        std::vector<Scalar> row;
        for (long x : r) row.emplace_back(x);
        out.push_back(std::move(row));
    }
    return out;
}

// Rational point on S^{d-1}: inverse stereographic projection of t in Q^{d-1},
// v = (2t, |t|^2 - 1) / (|t|^2 + 1).
inline std::vector<Scalar> rational_unit_vector(std::mt19937_64& rng, std::size_t d) {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    if (d == 1) return {Scalar(rng() % 2 ? 1 : -1)};
    std::vector<mpq_class> t(d - 1);
    mpq_class n2 = 0;
    for (auto& x : t) {
        x = mpq_class(mpz_class(num(rng)), mpz_class(den(rng)));
        x.canonicalize();
        n2 += x * x;
    }
    std::vector<Scalar> v;
    for (const auto& x : t) v.emplace_back(mpq_class(2 * x / (n2 + 1)));
    v.emplace_back(mpq_class((n2 - 1) / (n2 + 1)));
    // random coordinate order and signs so the last axis is not special
    std::shuffle(v.begin(), v.end(), rng);
    for (auto& c : v)
        if (rng() % 2) c = -c;
    return v;
}

// n is capped at 2 for d = 1.
inline UnitVectorSet random_rational_set(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    if (d == 1) n = std::min<std::size_t>(n, 2);
    std::vector<std::vector<Scalar>> vs;
    while (vs.size() < n) {
        auto v = rational_unit_vector(rng, d);
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(std::move(v));
    }
    return UnitVectorSet(d, std::move(vs));
}

inline Eigen::MatrixXd to_eigen(const SymMatrix& m) {
    Eigen::MatrixXd e(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) e(i, j) = m(i, j).to_double();
    return e;
}

inline Eigen::Index eigen_rank(const SymMatrix& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    lu.setThreshold(1e-9);
    return lu.rank();
}

inline double eigen_min_eigenvalue(const SymMatrix& m) {
    if (m.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// A_q(r, s) by plain exhaustive backtracking over all codes; tiny spaces only.
inline std::size_t brute_force_max_code(int qq, int r, int s) {
    std::vector<Word> all;
    std::size_t total = 1;
    for (int i = 0; i < r; ++i) total *= static_cast<std::size_t>(qq);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Word w(static_cast<std::size_t>(r));
        std::size_t x = idx;
        for (int i = 0; i < r; ++i) {
            w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x % static_cast<std::size_t>(qq));
            x /= static_cast<std::size_t>(qq);
        }
        all.push_back(w);
    }
    std::size_t best = 0;
    std::vector<std::size_t> chosen;
    const auto rec = [&](auto&& self, std::size_t from) -> void {
        best = std::max(best, chosen.size());
        for (std::size_t i = from; i < all.size(); ++i) {
            bool ok = true;
            for (auto c : chosen)
                if (hamming_distance(all[c], all[i]) < s) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

inline QaryCode random_code(std::mt19937_64& rng, int qq, int r, std::size_t max_size) {
    std::uniform_int_distribution<int> sym(0, qq - 1);
    double space = std::pow(static_cast<double>(qq), r);
    const std::size_t target =
        std::min<std::size_t>(1 + rng() % max_size, static_cast<std::size_t>(std::min(space, 1e9)));
    std::vector<Word> words;
    while (words.size() < target) {
        Word w(static_cast<std::size_t>(r));
        for (auto& c : w) c = static_cast<std::uint8_t>(sym(rng));
        if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(std::move(w));
    }
    return QaryCode(qq, r, std::move(words));
}

// Scratch directory removed at scope exit.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("sphcodes_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testsupport

#endif
