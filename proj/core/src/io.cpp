#include "clustercloak/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "clustercloak/errors.hpp"

namespace clustercloak {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& file, std::size_t line, const std::string& s,
                    const char* what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw CsvError(file, line, std::string("bad ") + what + " '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& file, std::size_t line,
                        const std::string& s, const char* what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw CsvError(file, line, std::string("bad ") + what + " '" + s + "'");
    return v;
}

int parse_int(const std::string& file, std::size_t line, const std::string& s,
              const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw CsvError(file, line, std::string("bad ") + what + " '" + s + "'");
    return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw CsvError(path.string(), 0, "cannot open file");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write file " + path.string());
    return out;
}

void expect_header(const std::string& file, const std::string& got,
                   const std::string& want) {
    if (trim(got) != want)
        throw CsvError(file, 1, "expected header '" + want + "', got '" +
                                    trim(got) + "'");
}

}  // namespace

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

std::string format_coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<UserProfile> load_users_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    const std::string file = path.string();
    std::string line;
    if (!std::getline(in, line)) throw CsvError(file, 1, "empty file");
    expect_header(file, line, "user_id,x,y,k");

    std::vector<UserProfile> users;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 4) throw CsvError(file, lineno, "expected 4 fields");
        UserProfile u;
        u.id = parse_u64(file, lineno, f[0], "user_id");
        u.position.x = parse_double(file, lineno, f[1], "x");
        u.position.y = parse_double(file, lineno, f[2], "y");
        u.k = parse_int(file, lineno, f[3], "k");
        if (u.k < 2) throw CsvError(file, lineno, "anonymity level must be >= 2");
        if (!is_finite(u.position))
            throw CsvError(file, lineno, "coordinates must be finite");
        users.push_back(u);
    }
    return users;
}

void write_users_csv(const std::filesystem::path& path,
                     std::span<const UserProfile> users) {
    auto out = open_out(path);
    out << "user_id,x,y,k\n";
    for (const UserProfile& u : users)
        out << u.id << ',' << format_coord(u.position.x) << ','
            << format_coord(u.position.y) << ',' << u.k << '\n';
}

PoiStore load_pois_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    const std::string file = path.string();
    std::string line;
    if (!std::getline(in, line)) throw CsvError(file, 1, "empty file");
    expect_header(file, line, "poi_id,x,y,category");

    std::vector<Poi> pois;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 4) throw CsvError(file, lineno, "expected 4 fields");
        Poi p;
        p.id = parse_u64(file, lineno, f[0], "poi_id");
        p.position.x = parse_double(file, lineno, f[1], "x");
        p.position.y = parse_double(file, lineno, f[2], "y");
        p.category = f[3];
        if (p.category.empty()) throw CsvError(file, lineno, "empty category");
        pois.push_back(std::move(p));
    }
    try {
        return PoiStore(std::move(pois));
    } catch (const ContractViolation& e) {
        throw CsvError(file, lineno, e.what());
    }
}

void write_pois_csv(const std::filesystem::path& path, const PoiStore& store) {
    auto out = open_out(path);
    out << "poi_id,x,y,category\n";
    for (const Poi& p : store.all())
        out << p.id << ',' << format_coord(p.position.x) << ','
            << format_coord(p.position.y) << ',' << p.category << '\n';
}

void write_clusters_csv(const std::filesystem::path& path, const ClusterSet& set) {
    auto out = open_out(path);
    out << "user_id,cluster_id\n";
    for (const auto& [uid, profile] : set.profiles()) {
        (void)profile;
        out << uid << ',' << set.cluster_of(uid) << '\n';
    }
}

void write_metrics_csv(const std::filesystem::path& path, const SnapshotMetrics& m) {
    auto out = open_out(path);
    out << "row,user_id,cluster_id,k,rk,size,entropy,mbr_area,rs,rs_literal,"
           "cluster_count,total_users\n";
    for (const auto& u : m.users)
        out << "user," << u.user_id << ',' << u.cluster_id << ',' << u.k << ','
            << format_value(u.rk) << ",,,,,,,\n";
    for (std::size_t i = 0; i < m.clusters.size(); ++i) {
        const auto& c = m.clusters[i];
        const auto& a = m.areas[i];
        out << "cluster,," << c.cluster_id << ",,," << c.size << ','
            << format_value(c.bits) << ',' << format_value(a.area) << ','
            << format_value(a.rs) << ',' << format_value(a.rs_literal) << ",,\n";
    }
    out << "aggregate,,,," << format_value(m.mean_rk) << ','
        << format_value(m.mean_cluster_size) << ',' << format_value(m.mean_entropy)
        << ",," << format_value(m.mean_rs) << ',' << format_value(m.mean_rs_literal)
        << ',' << m.cluster_count << ',' << m.total_users << '\n';
}

std::map<std::string, std::string> load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key=value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": empty key");
        out[key] = value;
    }
    return out;
}

}  // namespace clustercloak
