#include "paging/io.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace paging {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::int64_t parse_int(std::string_view s, const std::string& origin, std::size_t line)
{
    const std::string text = trim(s);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ValidationError(origin + ":" + std::to_string(line) + ": expected an integer, got '" + text + "'");
    return value;
}

struct TwoColumn {
    std::vector<std::int64_t> values;
    std::optional<std::int64_t> n;
};

// Parses `t,<column>` rows with t = 1..T contiguous after the given header.
TwoColumn parse_two_column(const std::string& text, const std::string& header, const std::string& origin)
{
    TwoColumn out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty())
            continue;
        if (row.front() == '#') {
            const std::string body = trim(std::string_view(row).substr(1));
            if (body.rfind("n=", 0) == 0)
                out.n = parse_int(std::string_view(body).substr(2), origin, lineno);
            continue;
        }
        if (!saw_header) {
            if (row != header)
                throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected header '" + header + "'");
            saw_header = true;
            continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string::npos)
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected two comma-separated fields");
        const std::int64_t t = parse_int(std::string_view(row).substr(0, comma), origin, lineno);
        if (t != static_cast<std::int64_t>(out.values.size()) + 1)
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": rounds must be contiguous from 1, got " +
                                  std::to_string(t));
        out.values.push_back(parse_int(std::string_view(row).substr(comma + 1), origin, lineno));
    }
    if (!saw_header)
        throw ValidationError(origin + ": missing header '" + header + "'");
    return out;
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << contents;
        out.flush();
        if (!out)
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

LoadedTrace read_trace_file(const std::filesystem::path& path)
{
    const TwoColumn cols = parse_two_column(read_file(path), "t,page", path.string());
    LoadedTrace out;
    out.raw.reserve(cols.values.size());
    for (std::int64_t v : cols.values)
        out.raw.push_back(static_cast<Page>(v));
    if (cols.n)
        out.n = static_cast<Page>(*cols.n);
    return out;
}

RequestTrace load_trace(const std::filesystem::path& path, std::optional<Page> n_override)
{
    LoadedTrace loaded = read_trace_file(path);
    const std::optional<Page> n = n_override ? n_override : loaded.n;
    if (!n)
        throw ValidationError(path.string() + ": page universe unknown; pass --n or add a '# n=<int>' line");
    return augment_sequence(loaded.raw, *n);
}

std::string format_trace(const RequestTrace& trace)
{
    std::string out = "# n=" + std::to_string(trace.universe()) + "\nt,page\n";
    for (Round t = 1; t <= trace.horizon(); ++t)
        out += std::to_string(t) + "," + std::to_string(trace.at(t)) + "\n";
    return out;
}

std::string format_nat_stream(const NatPredictionStream& stream)
{
    std::string out = "t,predicted_nat\n";
    for (Round t = 1; t <= stream.horizon(); ++t)
        out += std::to_string(t) + "," + std::to_string(stream.at(t)) + "\n";
    return out;
}

NatPredictionStream parse_nat_stream(const std::string& text, Round limit, const std::string& origin)
{
    TwoColumn cols = parse_two_column(text, "t,predicted_nat", origin);
    return NatPredictionStream(std::move(cols.values), limit);
}

std::string format_explicit_stream(const ExplicitPredictionStream& stream)
{
    std::string out = "t,predicted_page\n";
    for (Round t = 1; t <= stream.horizon(); ++t)
        out += std::to_string(t) + "," + std::to_string(stream.at(t)) + "\n";
    return out;
}

std::vector<Page> parse_explicit_stream(const std::string& text, const std::string& origin)
{
    const TwoColumn cols = parse_two_column(text, "t,predicted_page", origin);
    return {cols.values.begin(), cols.values.end()};
}

std::uint32_t crc32_of(const std::string& data)
{
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
    return static_cast<std::uint32_t>(crc);
}

namespace {

std::string hex32(std::uint32_t v)
{
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

std::string bundle_file_name(int j)
{
    return "predictor_" + std::to_string(j) + ".csv";
}

} // namespace

void write_bundle(const std::filesystem::path& dir, const PredictorBundle& bundle)
{
    std::filesystem::create_directories(dir);
    std::string manifest = "M = " + std::to_string(bundle.streams.size()) + "\nmode = " + to_string(bundle.mode) + "\n";
    for (std::size_t j = 0; j < bundle.streams.size(); ++j) {
        const std::string name = bundle_file_name(static_cast<int>(j) + 1);
        const std::string body = format_nat_stream(bundle.streams[j]);
        write_file_atomic(dir / name, body);
        manifest += name + " = " + hex32(crc32_of(body)) + "\n";
    }
    write_file_atomic(dir / "manifest.txt", manifest);
}

PredictorBundle read_bundle(const std::filesystem::path& dir, Round limit)
{
    const auto manifest_path = dir / "manifest.txt";
    const KeyValues kv = parse_key_values(read_file(manifest_path), manifest_path.string());
    auto need = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw ValidationError(manifest_path.string() + ": missing key '" + key + "'");
        return it->second;
    };
    const auto m = parse_int(need("M"), manifest_path.string(), 0);
    if (m < 1)
        throw ValidationError(manifest_path.string() + ": M must be at least 1");
    PredictorBundle bundle;
    bundle.mode = parse_access_mode(need("mode"));
    for (int j = 1; j <= m; ++j) {
        const std::string name = bundle_file_name(j);
        const std::string body = read_file(dir / name);
        if (hex32(crc32_of(body)) != need(name))
            throw ValidationError((dir / name).string() + ": checksum mismatch with manifest");
        bundle.streams.push_back(parse_nat_stream(body, limit, (dir / name).string()));
    }
    return bundle;
}

KeyValues parse_key_values(const std::string& text, const std::string& origin)
{
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string row = trim(std::string_view(line).substr(0, hash));
        if (row.empty())
            continue;
        const auto eq = row.find('=');
        if (eq == std::string::npos)
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(row).substr(0, eq));
        if (key.empty())
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (out.count(key))
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out[key] = trim(std::string_view(row).substr(eq + 1));
    }
    return out;
}

std::string format_real(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

} // namespace paging
