#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sphcodes/bounds.hpp"
#include "sphcodes/codes.hpp"
#include "sphcodes/constructions.hpp"
#include "sphcodes/errors.hpp"
#include "sphcodes/io.hpp"
#include "sphcodes/search.hpp"

namespace sphcodes::cli {

namespace {

using nlohmann::json;
using Params = std::map<std::string, std::string>;

class ArgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::int64_t to_int(const std::string& text, const std::string& name) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ArgError("--" + name + ": expected an integer, got '" + text + "'");
    return v;
}

Scalar to_scalar(const std::string& text, const std::string& name) {
    try {
        return parse_scalar(text);
    } catch (const ParseError&) {
        throw ArgError("--" + name + ": expected a scalar (e.g. 3, -1/2, 0.25), got '" + text + "'");
    }
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static constexpr char hex[] = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

// Provenance record embedded in every artifact the tool writes.
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> args;
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;
    std::optional<Mode> mode;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json to_json() const {
        json in = json::object();
        for (const auto& p : inputs) in[p] = sha256_file(p);
        json j{{"tool", "sphcodes"},
               {"version", std::string(kToolVersion)},
               {"code_file_format", kCodeFileFormatVersion},
               {"report_format", kReportFormatVersion},
               {"subcommand", subcommand},
               {"args", args},
               {"inputs", in},
               {"wall_time_s",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
        if (seed) j["seed"] = *seed;
        if (mode) j["mode"] = std::string(to_string(*mode));
        return j;
    }
    std::string comment() const { return "manifest " + to_json().dump(); }
};

// Writes to --out when given, else to the command's stdout.
template <typename F>
void emit(const std::string& out_path, std::ostream& out, F&& write) {
    if (out_path.empty()) {
        write(out);
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ArgError("cannot write " + out_path);
    write(f);
}

// ---------------------------------------------------------------- bound

struct BoundCommand {
    std::string name;
    std::string description;
    std::vector<std::string> required;
    std::vector<std::string> optional;
    std::function<BoundReport(const Params&)> eval;
};

BoundReport simple_report(std::string name, std::vector<std::pair<std::string, std::string>> inputs, std::int64_t v,
                          BoundStatus status, std::string provenance) {
    return {std::move(name), std::move(inputs), Scalar(static_cast<long>(v)), status, std::move(provenance), {}};
}

std::int64_t exact_oracle(int q, std::int64_t r, std::int64_t s) {
    return static_cast<std::int64_t>(exact_max_code(q, static_cast<int>(r), static_cast<int>(s)).size());
}

std::vector<BoundCommand> bound_commands() {
    const auto get = [](const Params& p, const std::string& k) { return p.at(k); };
    const auto opt = [](const Params& p, const std::string& k) -> std::optional<std::string> {
        auto it = p.find(k);
        if (it == p.end() || it->second.empty()) return std::nullopt;
        return it->second;
    };
    const auto cutoff = [opt](const Params& p) {
        auto v = opt(p, "cutoff");
        return v ? to_int(*v, "cutoff") : kDefaultScanCutoff;
    };
    std::vector<BoundCommand> cmds;
    cmds.push_back({"rho", "lower bound on rho(r, 2r+k)", {"r", "k"}, {}, [get](const Params& p) {
                        return rho_lower_report(to_int(get(p, "r"), "r"), to_int(get(p, "k"), "k"));
                    }});
    cmds.push_back({"m", "exact-scan upper bound on M(r, alpha)", {"r", "alpha"}, {"cutoff"}, [get, cutoff](const Params& p) {
                        return m_upper(to_int(get(p, "r"), "r"), to_scalar(get(p, "alpha"), "alpha"), cutoff(p));
                    }});
    cmds.push_back({"aq", "upper bound on A_q(r, s) via the simplex embedding", {"q", "r", "s"}, {"cutoff"},
                    [get, cutoff](const Params& p) {
                        return aq_upper(static_cast<int>(to_int(get(p, "q"), "q")), to_int(get(p, "r"), "r"),
                                        to_int(get(p, "s"), "s"), cutoff(p));
                    }});
    cmds.push_back({"plotkin", "A_2(r, r/2) <= 2r", {"r"}, {}, [get](const Params& p) {
                        const auto r = to_int(get(p, "r"), "r");
                        return simple_report("plotkin", {{"r", get(p, "r")}}, plotkin_upper(r),
                                             BoundStatus::certified_exact,
                                             "A_2(r, r/2) <= 2r; equality when a Hadamard matrix of order r exists");
                    }});
    cmds.push_back({"ms", "A_q(r, (1-1/q)r) <= qr", {"q", "r"}, {}, [get](const Params& p) {
                        const auto q = static_cast<int>(to_int(get(p, "q"), "q"));
                        return simple_report("ms", {{"q", get(p, "q")}, {"r", get(p, "r")}},
                                             ms_upper(q, to_int(get(p, "r"), "r")), BoundStatus::certified_exact,
                                             "A_q(r, (1-1/q)r) <= qr for r >= q >= 3; equality when r and q are powers "
                                             "of the same prime");
                    }});
    cmds.push_back({"ramsey-lower", "R(q+1; r, s) >= A + 1", {"q", "r", "s", "a"}, {}, [get](const Params& p) {
                        const auto q = static_cast<int>(to_int(get(p, "q"), "q"));
                        return simple_report("ramsey-lower",
                                             {{"q", get(p, "q")}, {"r", get(p, "r")}, {"s", get(p, "s")}, {"a", get(p, "a")}},
                                             ramsey_lower(q, to_int(get(p, "r"), "r"), to_int(get(p, "s"), "s"),
                                                          to_int(get(p, "a"), "a")),
                                             BoundStatus::certified_exact,
                                             "R(q+1; r, s) >= A_q(r, s) + 1 for any lower bound a on A_q(r, s)");
                    }});
    cmds.push_back({"ramsey-upper", "max((1+eps) A_q(r, s - cj), eps s)", {"q", "r", "s", "eps", "c"}, {"oracle", "a"},
                    [get, opt](const Params& p) {
                        const auto q = static_cast<int>(to_int(get(p, "q"), "q"));
                        const std::string kind = opt(p, "oracle").value_or("exact");
                        CodeSizeOracle oracle;
                        if (kind == "exact") {
                            oracle = [q](std::int64_t r, std::int64_t s) { return exact_oracle(q, r, s); };
                        } else if (kind == "aq") {
                            oracle = [q](std::int64_t r, std::int64_t s) {
                                const auto rep = aq_upper(q, r, s);
                                if (!rep.certified()) throw DomainError("aq oracle is vacuous at r=" + std::to_string(r));
                                return static_cast<std::int64_t>(rep.value.to_double());
                            };
                        } else if (kind == "value") {
                            const auto a = opt(p, "a");
                            if (!a) throw ArgError("--oracle value needs --a");
                            const auto av = to_int(*a, "a");
                            oracle = [av](std::int64_t, std::int64_t) { return av; };
                        } else {
                            throw ArgError("--oracle must be exact, aq or value");
                        }
                        auto rep = ramsey_upper_param(q, to_int(get(p, "r"), "r"), to_int(get(p, "s"), "s"),
                                                      to_scalar(get(p, "eps"), "eps"), to_scalar(get(p, "c"), "c"), oracle);
                        rep.details["oracle"] = kind;
                        return rep;
                    }});
    cmds.push_back({"ramsey-asymptotic", "headline 2(q-1)r", {"q", "r", "j"}, {}, [get](const Params& p) {
                        return ramsey_asymptotic(static_cast<int>(to_int(get(p, "q"), "q")), to_int(get(p, "r"), "r"),
                                                 to_scalar(get(p, "j"), "j"));
                    }});
    cmds.push_back({"bq", "window q <= B_q(j) <= 2(q-1)", {"q"}, {}, [get](const Params& p) {
                        const auto w = bq_window(static_cast<int>(to_int(get(p, "q"), "q")));
                        BoundReport rep{"bq",
                                        {{"q", get(p, "q")}},
                                        Scalar(static_cast<long>(w.upper)),
                                        BoundStatus::asymptotic_headline,
                                        "q <= B_q(j) = limsup A_q(r, (1-1/q)r - j)/r <= 2(q-1) for 0 <= j << r^(1/3)",
                                        {{"lower", std::to_string(w.lower)},
                                         {"upper", std::to_string(w.upper)},
                                         {"prime_power", w.lower_valid ? "true" : "false"}}};
                        if (!w.lower_valid) rep.details["caveat"] = "lower end q needs q to be a prime power";
                        return rep;
                    }});
    return cmds;
}

std::string details_field(const BoundReport& rep) {
    std::string s;
    for (const auto& [k, v] : rep.details) s += (s.empty() ? "" : ";") + k + "=" + v;
    return s;
}

int run_bound_grid(const BoundCommand& cmd, const Params& raw, const std::string& out_path, std::ostream& out,
                   std::ostream& err, const RunManifest& manifest) {
    std::vector<std::string> names = cmd.required;
    for (const auto& o : cmd.optional)
        if (raw.count(o) && !raw.at(o).empty()) names.push_back(o);

    std::vector<std::vector<std::string>> values;
    for (const auto& n : names) {
        auto vals = expand_grid_values(raw.at(n));
        // numeric parameters are sorted and deduplicated; names keep their order
        bool numeric = true;
        for (const auto& v : vals) {
            try {
                parse_scalar(v);
            } catch (const ParseError&) {
                numeric = false;
            }
        }
        if (numeric) {
            std::stable_sort(vals.begin(), vals.end(),
                             [](const std::string& a, const std::string& b) { return parse_scalar(a) < parse_scalar(b); });
            vals.erase(std::unique(vals.begin(), vals.end(),
                                   [](const std::string& a, const std::string& b) { return parse_scalar(a) == parse_scalar(b); }),
                       vals.end());
        }
        values.push_back(std::move(vals));
    }

    std::vector<Params> tuples;
    std::vector<std::size_t> idx(names.size(), 0);
    if (std::none_of(values.begin(), values.end(), [](const auto& v) { return v.empty(); })) {
        while (true) {
            Params p;
            for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i][idx[i]];
            tuples.push_back(std::move(p));
            std::size_t k = names.size();
            while (k > 0 && ++idx[k - 1] == values[k - 1].size()) idx[--k] = 0;
            if (k == 0) break;
        }
    }

    // independent tuples, deterministic output order
    std::vector<std::optional<BoundReport>> reports(tuples.size());
    std::vector<std::string> errors(tuples.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tuples.size(); i = next.fetch_add(1)) {
            try {
                reports[i] = cmd.eval(tuples[i]);
            } catch (const ArgError&) {
                throw;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    // argument errors surface on the first tuple before fanning out
    if (!tuples.empty()) {
        try {
            reports[0] = cmd.eval(tuples[0]);
        } catch (const ArgError&) {
            throw;
        } catch (const std::exception& e) {
            errors[0] = e.what();
        }
        next = 1;
    }
    const unsigned threads = std::min<unsigned>(default_thread_count(), static_cast<unsigned>(tuples.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    bool any_error = false;
    emit(out_path, out, [&](std::ostream& o) {
        o.precision(17);
        for (std::size_t i = 0; i < names.size(); ++i) o << csv_field(names[i]) << ',';
        o << "value,value_approx,status,details\n";
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            for (const auto& n : names) o << csv_field(tuples[t].at(n)) << ',';
            if (reports[t]) {
                const auto& r = *reports[t];
                o << csv_field(r.value.to_string()) << ',' << r.value.to_double() << ','
                  << csv_field(to_string(r.status)) << ',' << csv_field(details_field(r)) << '\n';
            } else {
                any_error = true;
                o << ",,error," << csv_field(errors[t]) << '\n';
            }
        }
    });
    if (!out_path.empty()) {
        std::ofstream m(out_path + ".manifest.json");
        m << manifest.to_json().dump(2) << '\n';
    }
    if (any_error) err << "some grid points failed; see the status column\n";
    return any_error ? kFailure : kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string kind;
    std::string in;
    std::string alpha;
    std::string s;
    bool exact = false;
    bool floating = false;
    Tolerance tol;
};

int run_verify(const VerifyArgs& a, std::ostream& out, RunManifest& manifest) {
    manifest.inputs.push_back(a.in);
    CodeFile file = read_code_file(a.in);

    std::optional<Certificate> cert;
    if (a.kind == "qary") {
        auto* code = std::get_if<QaryCode>(&file);
        if (!code) throw ParseError(a.in + ": 'verify qary' needs a qary file");
        if (a.s.empty()) throw ArgError("verify qary needs --s");
        manifest.mode = Mode::exact;
        cert = verify_min_distance(*code, static_cast<int>(to_int(a.s, "s")));
    } else {
        auto* vs = std::get_if<UnitVectorSet>(&file);
        if (!vs) throw ParseError(a.in + ": 'verify " + a.kind + "' needs a sphere file");
        UnitVectorSet v = *vs;
        if (a.exact && v.mode() != Mode::exact)
            throw ParseError(a.in + ": --exact needs integer or fraction tokens, file has decimals");
        if (a.floating) v = v.to_mode(Mode::floating);
        manifest.mode = v.mode();
        if (a.kind == "spherical") {
            if (a.alpha.empty()) throw ArgError("verify spherical needs --alpha");
            cert = verify_spherical_code(v, to_scalar(a.alpha, "alpha"), a.tol);
        } else if (a.kind == "trace-rank") {
            cert = verify_trace_rank(gram_matrix(v), a.tol);
        } else {
            const GramAnalysis g = gram_analyze(v, a.tol);
            if (a.kind == "beta") cert = verify_lemma_beta(g, a.tol);
            if (a.kind == "gamma") cert = verify_lemma_gamma(g, a.tol);
            if (a.kind == "chain") cert = certify_chain(g, a.tol);
        }
    }
    out << json{{"manifest", manifest.to_json()}, {"certificate", cert->to_json()}}.dump(2) << '\n';
    return cert->passed() ? kOk : kFailure;
}

// ---------------------------------------------------------------- construct / embed

struct ConstructArgs {
    std::string kind;
    std::string q, r, t, order;
    std::string out;
};

int parse_order(const ConstructArgs& a) {
    if (!a.t.empty()) return static_cast<int>(to_int(a.t, "t"));
    if (a.order.empty()) throw ArgError("need --t or --order");
    const auto order = to_int(a.order, "order");
    if (order < 1 || (order & (order - 1)) != 0) throw ArgError("--order must be a power of two (Sylvester family)");
    int t = 0;
    while ((std::int64_t{1} << t) < order) ++t;
    return t;
}

int run_construct(const ConstructArgs& a, std::ostream& out, const RunManifest& manifest) {
    std::vector<std::string> comments{manifest.comment()};
    if (a.kind == "simplex") {
        if (a.q.empty()) throw ArgError("construct simplex needs --q");
        const int q = static_cast<int>(to_int(a.q, "q"));
        const auto s = simplex_vectors(q);
        comments.push_back("exact gram: 1 on the diagonal, " + Scalar::rational(-1, q - 1).to_string() + " elsewhere");
        emit(a.out, out, [&](std::ostream& o) { write_sphere(o, s.vectors, comments); });
    } else if (a.kind == "crosspolytope") {
        if (a.r.empty()) throw ArgError("construct crosspolytope needs --r");
        const auto v = cross_polytope(static_cast<int>(to_int(a.r, "r")));
        emit(a.out, out, [&](std::ostream& o) { write_sphere(o, v, comments); });
    } else if (a.kind == "hadamard") {
        const auto h = sylvester_hadamard(parse_order(a));
        emit(a.out, out, [&](std::ostream& o) { write_hadamard(o, h, comments); });
    } else {
        const auto c = hadamard_code(sylvester_hadamard(parse_order(a)));
        comments.push_back("min distance " + std::to_string(min_distance(c)));
        emit(a.out, out, [&](std::ostream& o) { write_qary(o, c, comments); });
    }
    return kOk;
}

int run_embed(const std::string& in, const std::string& out_path, std::ostream& out, RunManifest& manifest) {
    manifest.inputs.push_back(in);
    CodeFile file = read_code_file(in);
    auto* code = std::get_if<QaryCode>(&file);
    if (!code) throw ParseError(in + ": embed needs a qary file");
    const auto e = embed_qary(*code);
    std::vector<std::string> comments{manifest.comment()};
    if (code->size() >= 2) {
        const auto g = gram_analyze(e.exact_gram);
        comments.push_back("exact alpha " + g.alpha.to_string() + " (from Hamming distances)");
    }
    emit(out_path, out, [&](std::ostream& o) { write_sphere(o, e.coordinates, comments); });
    return kOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    std::string kind;
    std::string q, r, s, n, k, seed = "1";
    std::string iterations;
    std::uint64_t node_limit = CodeSearchOptions{}.node_limit;
    unsigned threads = 0;
    RhoSearchOptions rho;
    bool grid = false;
    std::string out;
};

json words_json(const QaryCode& c) {
    json w = json::array();
    for (const auto& word : c.words()) {
        json row = json::array();
        for (auto s : word) row.push_back(static_cast<int>(s));
        w.push_back(std::move(row));
    }
    return w;
}

int run_search_code(const SearchArgs& a, std::ostream& out, RunManifest& manifest) {
    if (a.q.empty() || a.r.empty() || a.s.empty()) throw ArgError("search " + a.kind + " needs --q, --r and --s");
    const int q = static_cast<int>(to_int(a.q, "q")), r = static_cast<int>(to_int(a.r, "r")),
              s = static_cast<int>(to_int(a.s, "s"));
    manifest.mode = Mode::exact;

    json result{{"q", q}, {"r", r}, {"s", s}};
    QaryCode witness;
    int code = kOk;
    if (a.kind == "greedy") {
        witness = greedy_lexicode(q, r, s);
        result["size"] = witness.size();
        result["kind"] = "greedy-lexicode (lower bound)";
    } else {
        CodeSearchResult res;
        try {
            res = exact_max_code(q, r, s, {a.node_limit, a.threads});
        } catch (const NodeLimitExceeded& e) {
            res = e.best;
            code = kFailure;
        }
        witness = res.witness;
        result["size"] = res.size();
        result["optimal"] = res.optimal;
        result["nodes"] = res.nodes;
        result["kind"] = "branch-and-bound";
    }
    if (witness.size() >= 2) result["min_distance"] = min_distance(witness);
    result["witness"] = words_json(witness);
    out << json{{"manifest", manifest.to_json()}, {"result", result}}.dump(2) << '\n';
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) throw ArgError("cannot write " + a.out);
        write_qary(f, witness, {manifest.comment(), "search " + result.dump()});
    }
    return code;
}

int run_search_rho(const SearchArgs& a, std::ostream& out, std::ostream& err, RunManifest& manifest) {
    if (a.r.empty() || (a.n.empty() == a.k.empty())) throw ArgError("search rho needs --r and exactly one of --n, --k");
    RhoSearchOptions opt = a.rho;
    if (!a.iterations.empty()) opt.iterations = to_int(a.iterations, "iterations");
    manifest.mode = Mode::floating;

    const auto one = [&](std::int64_t r, std::int64_t n, std::uint64_t seed) {
        RhoSearchOptions o = opt;
        o.seed = seed;
        return heuristic_rho(static_cast<int>(r), static_cast<int>(n), o);
    };
    const auto n_of = [&](std::int64_t r, const std::string& v) {
        return a.n.empty() ? 2 * r + to_int(v, "k") : to_int(v, "n");
    };

    if (!a.grid) {
        for (const auto& f : {a.r, a.n, a.k, a.seed})
            if (f.find(',') != std::string::npos || f.find("..") != std::string::npos)
                throw ArgError("value lists need --grid");
        const auto r = to_int(a.r, "r");
        const auto n = n_of(r, a.n.empty() ? a.k : a.n);
        const auto seed = static_cast<std::uint64_t>(to_int(a.seed, "seed"));
        manifest.seed = seed;
        const auto res = one(r, n, seed);
        json j{{"r", r}, {"n", n}, {"alpha", res.alpha.to_string()}, {"alpha_approx", res.alpha.to_double()},
               {"iterations", res.iterations}, {"seed", res.seed}, {"optimal", false}};
        if (n > 2 * r) j["rho_lower"] = rho_lower(r, n - 2 * r).value.to_double();
        out << json{{"manifest", manifest.to_json()}, {"result", j}}.dump(2) << '\n';
        if (!a.out.empty()) {
            std::ofstream f(a.out);
            if (!f) throw ArgError("cannot write " + a.out);
            write_sphere(f, res.witness, {manifest.comment(), "heuristic alpha " + res.alpha.to_string()});
        }
        return kOk;
    }

    const auto ints = [](const std::string& spec, const std::string& name) {
        std::vector<std::int64_t> v;
        for (const auto& s : expand_grid_values(spec)) v.push_back(to_int(s, name));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const auto rs = ints(a.r, "r");
    const auto ns = ints(a.n.empty() ? a.k : a.n, a.n.empty() ? "k" : "n");
    const auto seeds = ints(a.seed, "seed");
    struct Row {
        std::int64_t r, n;
        std::uint64_t seed;
        std::string alpha;
        double alpha_approx;
    };
    std::vector<Row> rows;
    for (auto r : rs)
        for (auto v : ns)
            for (auto sd : seeds) {
                const auto n = a.n.empty() ? 2 * r + v : v;
                rows.push_back({r, n, static_cast<std::uint64_t>(sd), {}, 0});
            }
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
            const auto res = one(rows[i].r, rows[i].n, rows[i].seed);
            rows[i].alpha = res.alpha.to_string();
            rows[i].alpha_approx = res.alpha.to_double();
        }
    };
    const unsigned threads = std::min<unsigned>(default_thread_count(), std::max<std::size_t>(rows.size(), 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    emit(a.out, out, [&](std::ostream& o) {
        o.precision(17);
        o << "r,n,k,seed,alpha_approx,rho_lower,r_times_alpha,alpha\n";
        for (const auto& row : rows) {
            const auto k = row.n - 2 * row.r;
            o << row.r << ',' << row.n << ',' << k << ',' << row.seed << ',' << row.alpha_approx << ',';
            if (k >= 0) o << rho_lower(row.r, k).value.to_double();
            o << ',' << static_cast<double>(row.r) * row.alpha_approx << ',' << csv_field(row.alpha) << '\n';
        }
    });
    if (!a.out.empty()) {
        std::ofstream m(a.out + ".manifest.json");
        m << manifest.to_json().dump(2) << '\n';
    }
    (void)err;
    return kOk;
}

}  // namespace

std::vector<std::string> expand_grid_values(std::string_view spec) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        const std::string item(spec.substr(start, comma - start));
        if (item.empty()) throw ArgError("empty item in value list '" + std::string(spec) + "'");
        if (const auto dots = item.find(".."); dots != std::string::npos) {
            const auto lo = to_int(item.substr(0, dots), "grid"), hi = to_int(item.substr(dots + 2), "grid");
            if (hi < lo) throw ArgError("empty range '" + item + "'");
            if (hi - lo > 1'000'000) throw ArgError("range '" + item + "' is too long");
            for (auto v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
        } else {
            out.push_back(item);
        }
        start = comma + 1;
    }
    return out;
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string s = "\"";
    for (char c : field) {
        if (c == '"') s += '"';
        s += c;
    }
    return s + '"';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds, constructions, certificates and search oracles for spherical and q-ary codes", "sphcodes"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "Print tool and format versions");

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate a bound; --grid sweeps comma lists and a..b ranges to CSV");
    bound->require_subcommand(1);
    const auto commands = bound_commands();
    std::map<std::string, Params> bound_params;
    std::map<std::string, bool> bound_grid;
    std::map<std::string, std::string> bound_out;
    for (const auto& c : commands) {
        auto* sub = bound->add_subcommand(c.name, c.description);
        auto& params = bound_params[c.name];
        for (const auto& p : c.required) sub->add_option("--" + p, params[p])->required();
        for (const auto& p : c.optional) sub->add_option("--" + p, params[p]);
        sub->add_flag("--grid", bound_grid[c.name], "Treat values as lists and emit CSV");
        sub->add_option("--out", bound_out[c.name], "Write output to a file");
    }

    // verify
    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check a code file and print a certificate");
    verify->add_option("kind", va.kind, "spherical|qary|beta|gamma|chain|trace-rank")
        ->required()
        ->check(CLI::IsMember({"spherical", "qary", "beta", "gamma", "chain", "trace-rank"}));
    verify->add_option("--in", va.in, "Code file")->required();
    verify->add_option("--alpha", va.alpha, "Claimed maximum inner product (spherical)");
    verify->add_option("--s", va.s, "Claimed minimum distance (qary)");
    auto* exact_flag = verify->add_flag("--exact", va.exact, "Require exact arithmetic (default when the data is exact)");
    verify->add_flag("--float", va.floating, "Use float arithmetic with tolerances")->excludes(exact_flag);
    verify->add_option("--rel-eps", va.tol.rel, "Relative tolerance (float mode)")->check(CLI::NonNegativeNumber);
    verify->add_option("--abs-eps", va.tol.abs, "Absolute tolerance (float mode)")->check(CLI::NonNegativeNumber);

    // construct
    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Write a constructed code");
    construct->add_option("kind", ca.kind, "simplex|crosspolytope|hadamard|hadamard-code")
        ->required()
        ->check(CLI::IsMember({"simplex", "crosspolytope", "hadamard", "hadamard-code"}));
    construct->add_option("--q", ca.q);
    construct->add_option("--r", ca.r);
    construct->add_option("--t", ca.t, "Sylvester order 2^t");
    construct->add_option("--order", ca.order, "Sylvester order (power of two)");
    construct->add_option("--out", ca.out);

    // embed
    std::string embed_in, embed_out;
    auto* embed = app.add_subcommand("embed", "Map a q-ary code file to a spherical code file");
    embed->add_option("--in", embed_in)->required();
    embed->add_option("--out", embed_out);

    // search
    SearchArgs sa;
    auto* search = app.add_subcommand("search", "Exact and heuristic search oracles");
    search->add_option("kind", sa.kind, "exact|greedy|rho")->required()->check(CLI::IsMember({"exact", "greedy", "rho"}));
    search->add_option("--q", sa.q);
    search->add_option("--r", sa.r);
    search->add_option("--s", sa.s);
    search->add_option("--n", sa.n, "Number of vectors (rho)");
    search->add_option("--k", sa.k, "n = 2r + k (rho)");
    search->add_option("--seed", sa.seed);
    search->add_option("--iterations", sa.iterations);
    search->add_option("--node-limit", sa.node_limit);
    search->add_option("--threads", sa.threads);
    search->add_option("--tau0", sa.rho.tau0);
    search->add_option("--decay", sa.rho.decay);
    search->add_option("--steps-per-temperature", sa.rho.steps_per_temperature);
    search->add_option("--tau-min", sa.rho.tau_min);
    search->add_option("--step-scale", sa.rho.step_scale);
    search->add_flag("--grid", sa.grid, "Sweep r, n|k and seed lists to CSV (rho)");
    search->add_option("--out", sa.out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    if (show_version) {
        out << "sphcodes " << kToolVersion << " (code file format " << kCodeFileFormatVersion << ", report format "
            << kReportFormatVersion << ")\n";
        return kOk;
    }

    RunManifest manifest;
    manifest.args = args;
    try {
        if (bound->parsed()) {
            for (const auto& c : commands) {
                auto* sub = bound->get_subcommand(c.name);
                if (!sub->parsed()) continue;
                manifest.subcommand = "bound " + c.name;
                Params params;
                for (const auto& [k, v] : bound_params[c.name])
                    if (!v.empty()) params[k] = v;
                if (bound_grid[c.name]) return run_bound_grid(c, params, bound_out[c.name], out, err, manifest);
                for (const auto& [k, v] : params)
                    if (v.find(',') != std::string::npos || v.find("..") != std::string::npos)
                        throw ArgError("--" + k + ": value lists need --grid");
                const auto rep = c.eval(params);
                emit(bound_out[c.name], out, [&](std::ostream& o) {
                    o << json{{"manifest", manifest.to_json()}, {"report", rep.to_json()}}.dump(2) << '\n';
                });
                return kOk;
            }
        }
        if (verify->parsed()) {
            manifest.subcommand = "verify " + va.kind;
            return run_verify(va, out, manifest);
        }
        if (construct->parsed()) {
            manifest.subcommand = "construct " + ca.kind;
            manifest.mode = Mode::exact;
            return run_construct(ca, out, manifest);
        }
        if (embed->parsed()) {
            manifest.subcommand = "embed";
            return run_embed(embed_in, embed_out, out, manifest);
        }
        if (search->parsed()) {
            manifest.subcommand = "search " + sa.kind;
            if (sa.kind == "rho") return run_search_rho(sa, out, err, manifest);
            return run_search_code(sa, out, manifest);
        }
    } catch (const ArgError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const NonUnitVector& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    } catch (const NodeLimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    out << app.help();
    return kUsageError;
}

}  // namespace sphcodes::cli
