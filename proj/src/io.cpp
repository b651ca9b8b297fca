#include "sphcodes/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sphcodes/constructions.hpp"
#include "sphcodes/errors.hpp"

namespace sphcodes {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
    std::string comment;  // text after a trailing '#'
};

// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& in, std::size_t& counter, Line& line) {
    std::string text;
    while (std::getline(in, text)) {
        ++counter;
        std::string comment;
        if (const auto hash = text.find('#'); hash != std::string::npos) {
            comment = text.substr(hash + 1);
            text.resize(hash);
            const auto b = comment.find_first_not_of(" \t"), e = comment.find_last_not_of(" \t\r");
            comment = b == std::string::npos ? "" : comment.substr(b, e - b + 1);
        }
        std::istringstream ss(text);
        std::vector<std::string> tokens;
        for (std::string tok; ss >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        line = {counter, std::move(tokens), std::move(comment)};
        return true;
    }
    return false;
}

ParseError error_at(std::size_t line, const std::string& what) {
    return ParseError("line " + std::to_string(line) + ": " + what);
}

long parse_int(const std::string& tok, std::size_t line) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw error_at(line, "expected an integer, got '" + tok + "'");
    return v;
}

UnitVectorSet read_sphere_body(std::istream& in, std::size_t& counter, const Line& header) {
    if (header.tokens.size() != 2) throw error_at(header.number, "header must be 'sphere <d>'");
    const long d = parse_int(header.tokens[1], header.number);
    if (d < 1) throw error_at(header.number, "dimension must be >= 1");
    std::vector<std::vector<Scalar>> vectors;
    std::vector<std::string> labels;
    for (Line line; next_line(in, counter, line);) {
        labels.push_back(line.comment.empty() ? "v" + std::to_string(vectors.size()) : line.comment);
        if (static_cast<long>(line.tokens.size()) != d)
            throw error_at(line.number, "expected " + std::to_string(d) + " coordinates, got " +
                                            std::to_string(line.tokens.size()));
        std::vector<Scalar> v;
        v.reserve(line.tokens.size());
        for (const auto& tok : line.tokens) {
            try {
                v.push_back(parse_scalar(tok));
            } catch (const ParseError& e) {
                throw error_at(line.number, e.what());
            }
        }
        vectors.push_back(std::move(v));
    }
    return UnitVectorSet(static_cast<std::size_t>(d), std::move(vectors), std::move(labels));
}

QaryCode read_qary_body(std::istream& in, std::size_t& counter, const Line& header) {
    if (header.tokens.size() != 3) throw error_at(header.number, "header must be 'qary <q> <r>'");
    const long q = parse_int(header.tokens[1], header.number);
    const long r = parse_int(header.tokens[2], header.number);
    if (q < 2 || q > 256) throw error_at(header.number, "q must be in [2, 256]");
    if (r < 1) throw error_at(header.number, "block length must be >= 1");
    std::vector<Word> words;
    for (Line line; next_line(in, counter, line);) {
        if (static_cast<long>(line.tokens.size()) != r)
            throw error_at(line.number, "expected " + std::to_string(r) + " symbols, got " +
                                            std::to_string(line.tokens.size()));
        Word w;
        for (const auto& tok : line.tokens) {
            const long s = parse_int(tok, line.number);
            if (s < 0 || s >= q) throw error_at(line.number, "symbol " + tok + " outside [0, q)");
            w.push_back(static_cast<std::uint8_t>(s));
        }
        words.push_back(std::move(w));
    }
    try {
        return QaryCode(static_cast<int>(q), static_cast<int>(r), std::move(words));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
}

}  // namespace

CodeFile read_code(std::istream& in) {
    std::size_t counter = 0;
    Line header;
    if (!next_line(in, counter, header)) throw ParseError("empty code file");
    if (header.tokens[0] == "sphere") return read_sphere_body(in, counter, header);
    if (header.tokens[0] == "qary") return read_qary_body(in, counter, header);
    throw error_at(header.number, "unknown file kind '" + header.tokens[0] + "'");
}

UnitVectorSet read_sphere(std::istream& in) {
    auto f = read_code(in);
    if (auto* v = std::get_if<UnitVectorSet>(&f)) return std::move(*v);
    throw ParseError("expected a 'sphere' file");
}

QaryCode read_qary(std::istream& in) {
    auto f = read_code(in);
    if (auto* c = std::get_if<QaryCode>(&f)) return std::move(*c);
    throw ParseError("expected a 'qary' file");
}

CodeFile read_code_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_code(in);
}

void write_sphere(std::ostream& out, const UnitVectorSet& v, const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "sphere " << v.dimension() << '\n';
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto& vec = v[k];
        for (std::size_t i = 0; i < vec.size(); ++i) out << (i ? " " : "") << vec[i].to_string();
        if (v.label(k) != "v" + std::to_string(k)) out << "  # " << v.label(k);
        out << '\n';
    }
}

void write_qary(std::ostream& out, const QaryCode& c, const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "qary " << c.q() << ' ' << c.length() << '\n';
    for (const auto& w : c.words()) {
        for (std::size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << static_cast<int>(w[i]);
        out << '\n';
    }
}

void write_hadamard(std::ostream& out, const HadamardMatrix& h, const std::vector<std::string>& comments) {
    write_comments(out, comments);
    out << "hadamard " << h.order() << '\n';
    for (std::size_t i = 0; i < h.order(); ++i) {
        for (std::size_t j = 0; j < h.order(); ++j) out << (j ? " " : "") << (h(i, j) > 0 ? "1" : "-1");
        out << '\n';
    }
}

}  // namespace sphcodes
