#include "tvalue/netio.hpp"

#include "tvalue/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tvalue {

namespace {

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        const std::size_t end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        out.push_back({number, line});
    }
    return out;
}

std::size_t parse_count(std::string_view token, std::string_view key, std::size_t line) {
    if (token.substr(0, key.size()) != key) throw ParseError(line, "expected '" + std::string(key) + "<n>'");
    token.remove_prefix(key.size());
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
        throw ParseError(line, "bad number in '" + std::string(key) + std::string(token) + "'");
    return value;
}

}  // namespace

NetDef parse_net(std::string_view text) {
    const auto lines = significant_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header 'b=2 k=<k> s=<s>'");

    const Line& header = lines.front();
    std::vector<std::string_view> tokens;
    {
        std::string_view rest = header.text;
        while (true) {
            const std::size_t sp = rest.find(' ');
            tokens.push_back(rest.substr(0, sp));
            if (sp == std::string_view::npos) break;
            rest.remove_prefix(sp + 1);
        }
    }
    if (tokens.size() != 3) throw ParseError(header.number, "header must be 'b=2 k=<k> s=<s>'");
    const std::size_t b = parse_count(tokens[0], "b=", header.number);
    const std::size_t k = parse_count(tokens[1], "k=", header.number);
    const std::size_t s = parse_count(tokens[2], "s=", header.number);
    if (b != 2) throw UnsupportedBase("base " + std::to_string(b) + " is not supported, only b=2");
    if (k > kMaxCols) throw SizeError("k = " + std::to_string(k) + " exceeds 64");
    if (k == 0 || s == 0) throw ParseError(header.number, "k and s must be positive");

    std::vector<BitMatrix> matrices;
    std::size_t pos = 1;
    for (std::size_t j = 1; j <= s; ++j) {
        if (pos >= lines.size()) throw ParseError(lines.back().number + 1, "missing 'matrix " + std::to_string(j) + "'");
        const Line& tag = lines[pos++];
        if (tag.text != "matrix " + std::to_string(j))
            throw ParseError(tag.number, "expected 'matrix " + std::to_string(j) + "'");
        BitMatrix m(k, k);
        for (std::size_t r = 0; r < k; ++r) {
            if (pos >= lines.size()) throw ParseError(lines.back().number + 1, "matrix " + std::to_string(j) + " is truncated");
            const Line& row = lines[pos++];
            if (row.text.size() != k)
                throw ParseError(row.number, "expected " + std::to_string(k) + " characters, got " +
                                                 std::to_string(row.text.size()));
            Word w = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const char ch = row.text[c];
                if (ch != '0' && ch != '1') throw ParseError(row.number, "entries must be 0 or 1");
                if (ch == '1') w |= Word{1} << c;
            }
            m.set_row(r, w);
        }
        matrices.push_back(std::move(m));
    }
    if (pos != lines.size()) throw ParseError(lines[pos].number, "unexpected content after matrix " + std::to_string(s));
    return NetDef::make(std::move(matrices));
}

NetDef read_net_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_net(buf.str());
}

std::string emit_net(const NetDef& net) {
    std::string out = "b=2 k=" + std::to_string(net.k) + " s=" + std::to_string(net.s()) + "\n";
    for (std::size_t j = 0; j < net.s(); ++j) {
        out += "matrix " + std::to_string(j + 1) + "\n";
        out += net.matrices[j].to_string();
    }
    return out;
}

BitMatrix pascal_matrix(std::size_t k) {
    BitMatrix p(k, k);
    // Lucas: C(c, r) is odd iff the bits of r are a subset of the bits of c.
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = r; c < k; ++c)
            if ((c & r) == r) p.set(r, c, true);
    return p;
}

NetDef sobol_2d(std::size_t k) { return NetDef::make({BitMatrix::identity(k), pascal_matrix(k)}); }

NetDef identity_net(std::size_t s, std::size_t k) {
    return NetDef::make(std::vector<BitMatrix>(s, BitMatrix::identity(k)));
}

BitMatrix NetSampler::uniform(std::size_t k) {
    BitMatrix m(k, k);
    for (std::size_t r = 0; r < k; ++r) m.set_row(r, rng_() & low_mask(k));
    ++draws_;
    return m;
}

BitMatrix NetSampler::nonsingular(std::size_t k) {
    if (k == 0 || k > kMaxCols) throw SizeError("k must lie in [1, 64]");
    while (true) {
        BitMatrix m = uniform(k);
        if (is_nonsingular(m)) {
            ++accepted_;
            return m;
        }
    }
}

NetDef NetSampler::net(std::size_t s, std::size_t k) {
    std::vector<BitMatrix> ms;
    ms.reserve(s);
    for (std::size_t j = 0; j < s; ++j) ms.push_back(nonsingular(k));
    return NetDef::make(std::move(ms));
}

NetDef NetSampler::embedded_net(std::size_t s, std::size_t k, std::size_t m0) {
    std::vector<BitMatrix> ms;
    for (std::size_t j = 0; j < s; ++j) {
        while (true) {
            BitMatrix m = nonsingular(k);
            bool ok = true;
            for (std::size_t m_level = m0; m_level < k && ok; ++m_level)
                ok = is_nonsingular(m.truncated(m_level, m_level));
            if (ok) {
                ms.push_back(std::move(m));
                break;
            }
        }
    }
    return NetDef::make(std::move(ms));
}

NetDef sample_regular_net(std::size_t s, std::size_t k, std::uint64_t seed) {
    NetSampler sampler(seed);
    return sampler.net(s, k);
}

}  // namespace tvalue
