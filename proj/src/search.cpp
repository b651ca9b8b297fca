#include "sphcodes/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

#include "sphcodes/errors.hpp"

namespace sphcodes {

unsigned default_thread_count() {
    if (const char* env = std::getenv("SPHCODES_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr std::size_t kMaxSpace = 16384;

// Words of [q]^r in lexicographic order, first coordinate most significant.
std::vector<Word> enumerate_words(int q, int r) {
    std::size_t total = 1;
    for (int i = 0; i < r; ++i) total *= static_cast<std::size_t>(q);
    std::vector<Word> words(total, Word(static_cast<std::size_t>(r), 0));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t x = idx;
        for (int i = r - 1; i >= 0; --i) {
            words[idx][static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x % static_cast<std::size_t>(q));
            x /= static_cast<std::size_t>(q);
        }
    }
    return words;
}

class Bitset {
public:
    explicit Bitset(std::size_t n = 0) : bits_((n + 63) / 64, 0) {}

    void set(std::size_t i) { bits_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { bits_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool any() const {
        return std::any_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w != 0; });
    }
    std::size_t first() const {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits_[w]));
        return bits_.size() * 64;
    }
    void and_with(const Bitset& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= o.bits_[w];
    }
    void and_not(const Bitset& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= ~o.bits_[w];
    }

private:
    std::vector<std::uint64_t> bits_;
};

struct SharedBest {
    std::atomic<std::size_t> size{0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
    std::uint64_t node_limit = 0;
    std::mutex mu;
    std::vector<std::size_t> words;  // indices into the word table

    void offer(const std::vector<std::size_t>& candidate) {
        std::lock_guard lock(mu);
        if (candidate.size() > size.load()) {
            words = candidate;
            size.store(candidate.size());
        }
    }
};

// Maximum clique among `cand` (word indices) extending the pinned words, with
// greedy colouring bounds.
class BranchSearch {
public:
    BranchSearch(const std::vector<Word>& words, std::vector<std::size_t> pinned, std::vector<std::size_t> cand, int s,
                 SharedBest& shared)
        : pinned_(std::move(pinned)), cand_(std::move(cand)), shared_(shared), adj_(cand_.size(), Bitset(cand_.size())) {
        for (std::size_t i = 0; i < cand_.size(); ++i)
            for (std::size_t j = i + 1; j < cand_.size(); ++j)
                if (hamming_distance(words[cand_[i]], words[cand_[j]]) >= s) {
                    adj_[i].set(j);
                    adj_[j].set(i);
                }
    }

    void run() {
        clique_ = pinned_;
        if (cand_.empty()) {
            shared_.offer(clique_);
            return;
        }
        Bitset all(cand_.size());
        for (std::size_t i = 0; i < cand_.size(); ++i) all.set(i);
        expand(all);
    }

private:
    void expand(Bitset p) {
        if (shared_.aborted.load(std::memory_order_relaxed)) return;
        if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > shared_.node_limit) {
            shared_.aborted.store(true);
            return;
        }

        std::vector<std::size_t> order;
        std::vector<std::size_t> colour;
        Bitset uncoloured = p;
        for (std::size_t k = 1; uncoloured.any(); ++k) {
            Bitset q = uncoloured;
            while (q.any()) {
                const std::size_t v = q.first();
                q.reset(v);
                q.and_not(adj_[v]);
                uncoloured.reset(v);
                order.push_back(v);
                colour.push_back(k);
            }
        }

        for (std::size_t i = order.size(); i-- > 0;) {
            if (clique_.size() + colour[i] <= shared_.size.load(std::memory_order_relaxed)) return;
            const std::size_t v = order[i];
            clique_.push_back(cand_[v]);
            Bitset next = p;
            next.and_with(adj_[v]);
            if (next.any()) {
                expand(std::move(next));
            } else if (clique_.size() > shared_.size.load()) {
                shared_.offer(clique_);
            }
            clique_.pop_back();
            p.reset(v);
            if (shared_.aborted.load(std::memory_order_relaxed)) return;
        }
    }

    std::vector<std::size_t> pinned_;
    std::vector<std::size_t> cand_;
    SharedBest& shared_;
    std::vector<Bitset> adj_;
    std::vector<std::size_t> clique_;
};

std::size_t word_index(const Word& w, int q) {
    std::size_t idx = 0;
    for (auto sym : w) idx = idx * static_cast<std::size_t>(q) + sym;
    return idx;
}

void check_code_params(int q, int r, int s) {
    if (q < 2 || q > 256) throw PreconditionViolated("code search: q must be in [2, 256]");
    if (r < 1) throw PreconditionViolated("code search: r must be >= 1");
    if (s < 1) throw PreconditionViolated("code search: s must be >= 1");
    double space = std::pow(static_cast<double>(q), r);
    if (space > static_cast<double>(kMaxSpace))
        throw PreconditionViolated("code search: q^r = " + std::to_string(static_cast<long long>(space)) +
                                   " exceeds " + std::to_string(kMaxSpace));
}

}  // namespace

QaryCode greedy_lexicode(int q, int r, int s) {
    check_code_params(q, r, s);
    std::vector<Word> kept;
    for (auto& w : enumerate_words(q, r)) {
        const bool far = std::all_of(kept.begin(), kept.end(), [&](const Word& k) { return hamming_distance(k, w) >= s; });
        if (far) kept.push_back(std::move(w));
    }
    return QaryCode(q, r, std::move(kept));
}

CodeSearchResult exact_max_code(int q, int r, int s, const CodeSearchOptions& options) {
    check_code_params(q, r, s);
    const auto words = enumerate_words(q, r);
    const auto to_result = [&](const std::vector<std::size_t>& idx, std::uint64_t nodes, bool optimal) {
        std::vector<std::size_t> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Word> ws;
        for (auto i : sorted) ws.push_back(words[i]);
        return CodeSearchResult{q, r, s, QaryCode(q, r, std::move(ws)), nodes, optimal};
    };

    SharedBest shared;
    shared.node_limit = options.node_limit;
    {
        std::vector<std::size_t> seed;
        const QaryCode greedy = greedy_lexicode(q, r, s);
        for (const auto& w : greedy.words()) seed.push_back(word_index(w, q));
        shared.offer(seed);
    }
    if (s > r) return to_result(shared.words, 0, true);

    // Translate a closest pair of the code to {0, x} and permute coordinates and
    // nonzero symbols so that x = 0^{r-w} 1^w, where w is the minimum distance;
    // every pair is then at distance >= w. For q = 2 the stabilizer of {0, x}
    // still permutes each block, so the remaining word of smallest block
    // pattern (a ones outside the support of x, b inside) can be sorted too.
    struct Branch {
        int w;
        int a = -1, b = -1;
    };
    std::vector<Branch> branches;
    for (int w = s; w <= r; ++w) {
        if (q != 2) {
            branches.push_back({w});
            continue;
        }
        for (int a = 0; a <= r - w; ++a)
            for (int b = 0; b <= w; ++b)
                if (a + b >= w && a >= b) branches.push_back({w, a, b});
    }
    const auto pattern = [r](const Word& x, int w) {
        int a = 0, b = 0;
        for (int i = 0; i < r; ++i) (i < r - w ? a : b) += x[static_cast<std::size_t>(i)];
        return std::pair{a, b};
    };

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < branches.size(); k = next.fetch_add(1)) {
            const Branch br = branches[k];
            const int w = br.w;
            Word second(static_cast<std::size_t>(r), 0);
            for (int i = r - w; i < r; ++i) second[static_cast<std::size_t>(i)] = 1;
            std::vector<std::size_t> pinned{0, word_index(second, q)};
            if (br.a >= 0) {
                Word third(static_cast<std::size_t>(r), 0);
                for (int i = r - w - br.a; i < r - w; ++i) third[static_cast<std::size_t>(i)] = 1;
                for (int i = r - br.b; i < r; ++i) third[static_cast<std::size_t>(i)] = 1;
                pinned.push_back(word_index(third, q));
            }
            std::vector<std::size_t> cand;
            for (std::size_t i = 0; i < words.size(); ++i) {
                if (std::find(pinned.begin(), pinned.end(), i) != pinned.end()) continue;
                if (br.a >= 0 && pattern(words[i], w) < std::pair{br.a, br.b}) continue;
                if (std::all_of(pinned.begin(), pinned.end(),
                                [&](std::size_t p) { return hamming_distance(words[i], words[p]) >= w; }))
                    cand.push_back(i);
            }
            BranchSearch(words, std::move(pinned), std::move(cand), w, shared).run();
            if (shared.aborted.load()) return;
        }
    };

    unsigned threads = options.threads ? options.threads : default_thread_count();
    threads = std::min<unsigned>(threads, static_cast<unsigned>(branches.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    auto result = to_result(shared.words, shared.nodes.load(), !shared.aborted.load());
    if (!result.optimal) throw NodeLimitExceeded(std::move(result));
    return result;
}

RhoSearchResult heuristic_rho(int r, int n, const RhoSearchOptions& opt) {
    if (r < 1 || n < 2) throw PreconditionViolated("heuristic_rho: need r >= 1 and n >= 2");
    if (opt.iterations < 0 || opt.steps_per_temperature < 1 || !(opt.tau0 > 0) || !(opt.decay > 0 && opt.decay <= 1))
        throw PreconditionViolated("heuristic_rho: invalid schedule");
    const std::size_t d = static_cast<std::size_t>(r), m = static_cast<std::size_t>(n);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> v(m, std::vector<double>(d));
    const auto normalize = [&](std::vector<double>& x) {
        double s = 0;
        for (double c : x) s += c * c;
        s = std::sqrt(s);
        if (s == 0) {
            x[0] = 1;
            return;
        }
        for (double& c : x) c /= s;
    };
    for (auto& x : v) {
        for (double& c : x) c = gauss(rng);
        normalize(x);
    }
    // S^0 has no tangent directions; alternating signs is already optimal
    if (d == 1)
        for (std::size_t i = 0; i < m; ++i) v[i][0] = i % 2 == 0 ? 1.0 : -1.0;

    const auto dot = [&](std::size_t i, std::size_t j) {
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += v[i][k] * v[j][k];
        return s;
    };
    const auto max_product = [&] {
        double best = -2;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) best = std::max(best, dot(i, j));
        return best;
    };

    std::vector<double> products(m * m);
    // tau * log sum exp(<v_i, v_j> / tau), shifted by the current maximum
    const auto smoothed = [&](const std::vector<std::vector<double>>& x, double tau, double& top) {
        top = -2;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                double p = 0;
                for (std::size_t k = 0; k < d; ++k) p += x[i][k] * x[j][k];
                products[i * m + j] = p;
                top = std::max(top, p);
            }
        double z = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) z += std::exp((products[i * m + j] - top) / tau);
        return top + tau * std::log(z);
    };

    std::vector<std::vector<double>> grad(m, std::vector<double>(d));
    auto trial = v;
    auto best_v = v;
    double best_alpha = max_product();

    double tau = opt.tau0;
    double length = opt.step_scale * tau;
    double top = 0;
    double f = smoothed(v, tau, top);
    for (std::int64_t it = 0; it < opt.iterations; ++it) {
        if (it > 0 && it % opt.steps_per_temperature == 0) {
            const double t = std::max(tau * opt.decay, opt.tau_min);
            if (t != tau) {
                tau = t;
                f = smoothed(v, tau, top);
            }
        }

        // softmax-weighted neighbours; `products` holds this configuration's values
        double z = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double w = std::exp((products[i * m + j] - top) / tau);
                products[i * m + j] = w;
                z += w;
            }
        for (auto& g : grad) std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double w = products[i * m + j] / z;
                if (w < 1e-300) continue;
                for (std::size_t k = 0; k < d; ++k) {
                    grad[i][k] += w * v[j][k];
                    grad[j][k] += w * v[i][k];
                }
            }
        double gmax = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double radial = 0;
            for (std::size_t k = 0; k < d; ++k) radial += grad[i][k] * v[i][k];
            double norm = 0;
            for (std::size_t k = 0; k < d; ++k) {
                grad[i][k] -= radial * v[i][k];
                norm += grad[i][k] * grad[i][k];
            }
            gmax = std::max(gmax, std::sqrt(norm));
        }
        if (gmax == 0) break;

        // normalized step: the fastest-moving vector travels `length`; grow on
        // success, halve on failure
        const double step = length / gmax;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < d; ++k) trial[i][k] = v[i][k] - step * grad[i][k];
            normalize(trial[i]);
        }
        double trial_top = 0;
        const double g = smoothed(trial, tau, trial_top);
        if (g < f) {
            std::swap(v, trial);
            f = g;
            top = trial_top;
            length = std::min(length * 1.5, opt.step_scale);
            if (top < best_alpha) {
                best_alpha = top;
                best_v = v;
            }
        } else {
            length = std::max(length * 0.5, 1e-300);
            f = smoothed(v, tau, top);
        }
    }

    std::vector<std::vector<Scalar>> coords;
    for (const auto& x : best_v) {
        std::vector<Scalar> c;
        for (double e : x) c.push_back(Scalar::from_double(e));
        coords.push_back(std::move(c));
    }
    RhoSearchResult res{r, n, UnitVectorSet(d, std::move(coords)), Scalar(-1), opt.iterations, opt.seed};
    // exact value of the float configuration: coordinates convert losslessly
    const UnitVectorSet exact = res.witness.to_mode(Mode::exact);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Scalar p = inner_product(exact[i], exact[j]);
            if ((i == 0 && j == 1) || p > res.alpha) res.alpha = std::move(p);
        }
    return res;
}

}  // namespace sphcodes
