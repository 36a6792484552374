#include "leaderscope/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace leaderscope {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'M', 'F', 'S', 'G'};
constexpr std::uint32_t kFormatVersion = 1;

[[noreturn]] void io_fail(const std::string& message) {
    fail(ErrorKind::input, "IoError", message);
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& message) {
    fail(ErrorKind::input, "ParseError", path + ":" + std::to_string(line) + ": " + message);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) io_fail("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) io_fail("cannot open '" + path + "' for reading");
    return in;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char(v >> 24)};
    out.write(b, 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void put_f64(std::ofstream& out, double v) {
    const std::uint64_t u = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int t = 0; t < 8; ++t) b[t] = char((u >> (8 * t)) & 0xff);
    out.write(b, 8);
}

double get_f64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int t = 7; t >= 0; --t) u = (u << 8) | b[t];
    return std::bit_cast<double>(u);
}

json parse_json_line(const std::string& path, std::size_t line_no, const std::string& line) {
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) parse_fail(path, line_no, "invalid JSON record");
    return rec;
}

template <typename T>
T field(const json& rec, const char* name, const std::string& path, std::size_t line_no) {
    if (!rec.contains(name))
        parse_fail(path, line_no, std::string("missing field '") + name + "'");
    try {
        return rec.at(name).get<T>();
    } catch (const json::exception&) {
        parse_fail(path, line_no, std::string("field '") + name + "' has the wrong type");
    }
}

double index_field(const json& rec, const char* name, const std::string& path,
                   std::size_t line_no) {
    if (!rec.contains(name))
        parse_fail(path, line_no, std::string("missing field '") + name + "'");
    const json& v = rec.at(name);
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        if (s == "inf" || s == "infinity") return kInf;
        parse_fail(path, line_no, std::string("field '") + name + "' is not an index");
    }
    if (!v.is_number()) parse_fail(path, line_no, std::string("field '") + name + "' is not an index");
    return v.get<double>();
}

/// Serializes a double the way the NDJSON writers need it: shortest
/// round-trip form via the JSON library itself.
std::string num(double v) { return json(v).dump(); }

std::array<std::int64_t, 2> unflatten(std::int64_t flat, int j, int d) {
    const std::int64_t side = std::int64_t(1) << j;
    if (d == 1) return {flat, 0};
    return {flat % side, flat / side};
}

}  // namespace

// ── signals ─────────────────────────────────────────────────────────────────

Signal read_signal(const std::string& path) {
    {
        std::ifstream probe = open_in(path, std::ios::in | std::ios::binary);
        char magic[4] = {0, 0, 0, 0};
        probe.read(magic, 4);
        if (probe.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0) {
            const std::uint32_t version = get_u32(probe);
            if (version != kFormatVersion)
                io_fail(path + ": unsupported signal format version " + std::to_string(version));
            const std::uint32_t d = get_u32(probe);
            const std::uint32_t J = get_u32(probe);
            if (!probe) io_fail(path + ": truncated signal header");
            if ((d != 1 && d != 2) || J > 30)
                io_fail(path + ": invalid signal header (d=" + std::to_string(d) +
                        ", J=" + std::to_string(J) + ")");
            Signal sig;
            sig.d = int(d);
            sig.J = int(J);
            const std::int64_t count = std::int64_t(1) << (sig.d * sig.J);
            sig.samples.resize(std::size_t(count));
            for (std::int64_t t = 0; t < count; ++t) sig.samples[std::size_t(t)] = get_f64(probe);
            if (!probe) io_fail(path + ": truncated sample data");
            return sig;
        }
    }
    // CSV: one sample per line, 1-d, power-of-two length.
    std::ifstream in = open_in(path);
    Signal sig;
    sig.d = 1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(line, &used);
            while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
            if (used != line.size() && line[used] != ',') throw std::invalid_argument("trailing");
            sig.samples.push_back(v);
        } catch (const std::exception&) {
            parse_fail(path, line_no, "expected one numeric sample");
        }
    }
    const std::size_t n = sig.samples.size();
    if (n < 2 || (n & (n - 1)) != 0)
        io_fail(path + ": sample count " + std::to_string(n) + " is not a power of 2 (>= 2)");
    sig.J = 0;
    while ((std::size_t(1) << sig.J) < n) ++sig.J;
    return sig;
}

void write_signal_csv(const Signal& signal, const std::string& path) {
    check_signal(signal);
    if (signal.d != 1) io_fail("CSV signal output supports d = 1 only");
    std::ofstream out = open_out(path);
    for (double v : signal.samples) out << num(v) << '\n';
    if (!out) io_fail("write failed for '" + path + "'");
}

void write_signal_binary(const Signal& signal, const std::string& path) {
    check_signal(signal);
    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out.write(kMagic, 4);
    put_u32(out, kFormatVersion);
    put_u32(out, std::uint32_t(signal.d));
    put_u32(out, std::uint32_t(signal.J));
    for (double v : signal.samples) put_f64(out, v);
    if (!out) io_fail("write failed for '" + path + "'");
}

// ── coefficient pyramids ────────────────────────────────────────────────────

void write_pyramid(const CoefficientPyramid& pyramid, const std::string& path) {
    pyramid.check();
    std::ofstream out = open_out(path);
    out << "{\"type\":\"pyramid\",\"d\":" << pyramid.d << ",\"J\":" << pyramid.J
        << ",\"normalization\":\"Linf\",\"coarse\":[" << num(pyramid.coarse[0]) << "]}\n";
    for (int j = 0; j < pyramid.J; ++j)
        for (int i = 1; i <= pyramid.orientations(); ++i) {
            const auto& plane = pyramid.detail[std::size_t(j)][std::size_t(i - 1)];
            for (std::int64_t flat = 0; flat < std::int64_t(plane.size()); ++flat) {
                const double c = plane[std::size_t(flat)];
                if (c == 0.0) continue;
                const auto k = unflatten(flat, j, pyramid.d);
                out << "{\"i\":" << i << ",\"j\":" << j << ",\"k\":[" << k[0];
                if (pyramid.d == 2) out << ',' << k[1];
                out << "],\"c\":" << num(c) << "}\n";
            }
        }
    if (!out) io_fail("write failed for '" + path + "'");
}

CoefficientPyramid read_pyramid(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) io_fail(path + ": empty pyramid file");
    ++line_no;
    json header = parse_json_line(path, line_no, line);
    if (field<std::string>(header, "type", path, line_no) != "pyramid")
        parse_fail(path, line_no, "expected a pyramid header record");
    const int d = field<int>(header, "d", path, line_no);
    const int J = field<int>(header, "J", path, line_no);
    if ((d != 1 && d != 2) || J < 1 || J > 30)
        parse_fail(path, line_no, "invalid pyramid dimensions");
    CoefficientPyramid pyramid = CoefficientPyramid::zeros(d, J);
    if (header.contains("coarse")) {
        const auto coarse = field<std::vector<double>>(header, "coarse", path, line_no);
        if (coarse.size() != 1) parse_fail(path, line_no, "coarse section must hold one value");
        pyramid.coarse = coarse;
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = parse_json_line(path, line_no, line);
        const int i = field<int>(rec, "i", path, line_no);
        const int j = field<int>(rec, "j", path, line_no);
        const auto k = field<std::vector<std::int64_t>>(rec, "k", path, line_no);
        const double c = field<double>(rec, "c", path, line_no);
        if (j < 0 || j >= J) parse_fail(path, line_no, "scale out of range");
        if (i < 1 || i > pyramid.orientations()) parse_fail(path, line_no, "orientation out of range");
        if (int(k.size()) != d) parse_fail(path, line_no, "position arity does not match d");
        const std::int64_t side = std::int64_t(1) << j;
        for (std::int64_t kc : k)
            if (kc < 0 || kc >= side) parse_fail(path, line_no, "position out of range");
        const std::int64_t flat = k[0] + ((d == 2) ? side * k[1] : 0);
        pyramid.detail[std::size_t(j)][std::size_t(i - 1)][std::size_t(flat)] = c;
    }
    return pyramid;
}

// ── leader pyramids ─────────────────────────────────────────────────────────

void write_leaders(const LeaderPyramid& leaders, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "{\"type\":\"leaders\",\"d\":" << leaders.d << ",\"J_trunc\":" << leaders.J_trunc
        << ",\"p\":" << index_json(leaders.p).dump() << ",\"guard\":" << leaders.guard << "}\n";
    for (int j = 0; j <= leaders.max_scale(); ++j) {
        const auto& plane = leaders.values[std::size_t(j)];
        for (std::int64_t flat = 0; flat < std::int64_t(plane.size()); ++flat) {
            const double v = plane[std::size_t(flat)];
            if (v == 0.0) continue;
            const auto k = unflatten(flat, j, leaders.d);
            out << "{\"j\":" << j << ",\"k\":[" << k[0];
            if (leaders.d == 2) out << ',' << k[1];
            out << "],\"dp\":" << num(v) << "}\n";
        }
    }
    if (!out) io_fail("write failed for '" + path + "'");
}

LeaderPyramid read_leaders(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) io_fail(path + ": empty leader file");
    ++line_no;
    json header = parse_json_line(path, line_no, line);
    if (field<std::string>(header, "type", path, line_no) != "leaders")
        parse_fail(path, line_no, "expected a leaders header record");
    LeaderPyramid lp;
    lp.d = field<int>(header, "d", path, line_no);
    lp.J_trunc = field<int>(header, "J_trunc", path, line_no);
    lp.p = index_field(header, "p", path, line_no);
    lp.guard = field<int>(header, "guard", path, line_no);
    if ((lp.d != 1 && lp.d != 2) || lp.J_trunc < 0 || lp.J_trunc > 30 || lp.guard < 0 ||
        lp.max_scale() < 0)
        parse_fail(path, line_no, "invalid leader header");
    check_index(lp.p, "p");
    lp.values.resize(std::size_t(lp.max_scale()) + 1);
    for (int j = 0; j <= lp.max_scale(); ++j)
        lp.values[std::size_t(j)].assign(std::size_t(std::int64_t(1) << (j * lp.d)), 0.0);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = parse_json_line(path, line_no, line);
        const int j = field<int>(rec, "j", path, line_no);
        const auto k = field<std::vector<std::int64_t>>(rec, "k", path, line_no);
        const double v = field<double>(rec, "dp", path, line_no);
        if (j < 0 || j > lp.max_scale()) parse_fail(path, line_no, "scale out of range");
        if (int(k.size()) != lp.d) parse_fail(path, line_no, "position arity does not match d");
        const std::int64_t side = std::int64_t(1) << j;
        for (std::int64_t kc : k)
            if (kc < 0 || kc >= side) parse_fail(path, line_no, "position out of range");
        const std::int64_t flat = k[0] + ((lp.d == 2) ? side * k[1] : 0);
        lp.values[std::size_t(j)][std::size_t(flat)] = v;
    }
    return lp;
}

// ── descriptors ─────────────────────────────────────────────────────────────

AdmissibleSequence parse_sequence(const std::string& descriptor) {
    std::string text = descriptor;
    // Trim surrounding whitespace before dispatching on the first character.
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!text.empty() && is_space(text.front())) text.erase(text.begin());
    while (!text.empty() && is_space(text.back())) text.pop_back();
    if (text.empty()) fail(ErrorKind::config, "ParseError", "empty sequence descriptor");

    if (text.front() == '{') {
        json rec = json::parse(text, nullptr, false);
        if (rec.is_discarded())
            fail(ErrorKind::config, "ParseError", "sequence descriptor is not valid JSON");
        const std::string kind = rec.value("kind", "");
        if (kind == "powerlog") {
            if (!rec.contains("s") || !rec.at("s").is_number())
                fail(ErrorKind::config, "ParseError", "powerlog descriptor: field 's' must be a number");
            const double b = rec.value("b", 0.0);
            return AdmissibleSequence::power_log(rec.at("s").get<double>(), b);
        }
        if (kind == "table") {
            if (!rec.contains("values") || !rec.at("values").is_array())
                fail(ErrorKind::config, "ParseError", "table descriptor: field 'values' must be an array");
            return AdmissibleSequence::tabulated(rec.at("values").get<std::vector<double>>());
        }
        fail(ErrorKind::config, "ParseError", "sequence descriptor kind must be 'powerlog' or 'table'");
    }

    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon == std::string::npos ? text.size() : colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::vector<double> parts;
    if (!args.empty()) {
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                parts.push_back(std::stod(item, &used));
                while (used < item.size() && is_space(item[used])) ++used;
                if (used != item.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                fail(ErrorKind::config, "ParseError",
                     "sequence descriptor: '" + item + "' is not a number");
            }
        }
    }
    if (kind == "powerlog") {
        if (parts.size() != 1 && parts.size() != 2)
            fail(ErrorKind::config, "ParseError", "powerlog descriptor needs s[,b]");
        return AdmissibleSequence::power_log(parts[0], parts.size() == 2 ? parts[1] : 0.0);
    }
    if (kind == "table") {
        if (parts.empty()) fail(ErrorKind::config, "ParseError", "table descriptor needs values");
        return AdmissibleSequence::tabulated(parts);
    }
    fail(ErrorKind::config, "ParseError",
         "unknown sequence descriptor '" + kind + "' (expected powerlog or table)");
}

nlohmann::json sequence_json(const AdmissibleSequence& sigma) {
    if (const PowerLog* m = sigma.power_log_model())
        return json{{"kind", "powerlog"}, {"s", m->s}, {"b", m->b}};
    if (auto table = sigma.table_values()) return json{{"kind", "table"}, {"values", *table}};
    std::vector<double> values(65);
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = sigma.value(j);
    return json{{"kind", "table"}, {"values", values}};
}

double parse_index(const std::string& text, const char* what) {
    std::string s = text;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "inf" || s == "infinity") return kInf;
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        fail(ErrorKind::config, "ParseError",
             std::string(what) + ": expected a number in [1, inf] or 'inf', got '" + text + "'");
    }
    check_index(v, what);
    return v;
}

nlohmann::json index_json(double value) {
    if (is_inf(value)) return json("inf");
    return json(value);
}

}  // namespace leaderscope
