#include "gamesh/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gamesh {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& tok, const std::string& name, int line) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0') fail(name, line, "expected a number, got '" + tok + "'");
    return v;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

// strip comments; obj and xyz use '#', off also uses '#'
std::string strip_comment(const std::string& line) {
    const size_t hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

// "7", "7/2", "7//3", "7/2/3"; negative values count back from the most
// recently defined vertex. Returns a 0-based index.
int parse_face_index(const std::string& tok, int vertex_count, const std::string& name,
                     int line) {
    const std::string head = tok.substr(0, tok.find('/'));
    if (head.empty()) fail(name, line, "empty vertex index in '" + tok + "'");
    char* end = nullptr;
    const long raw = std::strtol(head.c_str(), &end, 10);
    if (end == head.c_str() || *end != '\0' || raw == 0)
        fail(name, line, "bad vertex index '" + tok + "'");
    const long resolved = raw > 0 ? raw - 1 : vertex_count + raw;
    if (resolved < 0 || resolved >= vertex_count)
        fail(name, line,
             "vertex index " + std::to_string(raw) + " out of range (have " +
                 std::to_string(vertex_count) + " vertices)");
    return static_cast<int>(resolved);
}

} // namespace

IndexedMesh read_obj(std::istream& in, const std::string& name) {
    IndexedMesh mesh;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(strip_comment(line));
        if (toks.empty()) continue;
        const std::string& key = toks[0];

        if (key == "v") {
            if (toks.size() < 4) fail(name, lineno, "vertex needs 3 coordinates");
            mesh.vertices.push_back({parse_double(toks[1], name, lineno),
                                     parse_double(toks[2], name, lineno),
                                     parse_double(toks[3], name, lineno)});
        } else if (key == "f") {
            if (toks.size() < 4) fail(name, lineno, "face needs at least 3 vertices");
            std::vector<int> poly;
            poly.reserve(toks.size() - 1);
            for (size_t i = 1; i < toks.size(); ++i)
                poly.push_back(parse_face_index(toks[i], mesh.vertex_count(), name, lineno));
            for (size_t i = 1; i + 1 < poly.size(); ++i)
                mesh.faces.push_back({poly[0], poly[i], poly[i + 1]});
        }
        // vn, vt, g, o, s, usemtl, mtllib, l, p ... all ignored
    }
    return mesh;
}

IndexedMesh read_off(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    auto next_tokens = [&]() -> std::vector<std::string> {
        while (std::getline(in, line)) {
            ++lineno;
            auto toks = tokenize(strip_comment(line));
            if (!toks.empty()) return toks;
        }
        fail(name, lineno, "unexpected end of file");
    };

    auto toks = next_tokens();
    if (toks[0] == "OFF") {
        toks.erase(toks.begin());
        if (toks.empty()) toks = next_tokens();
    }
    if (toks.size() < 3) fail(name, lineno, "expected 'nv nf ne' counts");
    const int nv = static_cast<int>(parse_double(toks[0], name, lineno));
    const int nf = static_cast<int>(parse_double(toks[1], name, lineno));
    if (nv < 0 || nf < 0) fail(name, lineno, "negative counts");

    IndexedMesh mesh;
    mesh.vertices.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        toks = next_tokens();
        if (toks.size() < 3) fail(name, lineno, "vertex needs 3 coordinates");
        mesh.vertices.push_back({parse_double(toks[0], name, lineno),
                                 parse_double(toks[1], name, lineno),
                                 parse_double(toks[2], name, lineno)});
    }
    for (int i = 0; i < nf; ++i) {
        toks = next_tokens();
        const int k = static_cast<int>(parse_double(toks[0], name, lineno));
        if (k < 3 || static_cast<int>(toks.size()) < 1 + k)
            fail(name, lineno, "face needs at least 3 vertices");
        std::vector<int> poly(k);
        for (int j = 0; j < k; ++j) {
            const int idx = static_cast<int>(parse_double(toks[1 + j], name, lineno));
            if (idx < 0 || idx >= nv) fail(name, lineno, "vertex index out of range");
            poly[j] = idx;
        }
        for (int j = 1; j + 1 < k; ++j) mesh.faces.push_back({poly[0], poly[j], poly[j + 1]});
    }
    return mesh;
}

namespace {

bool has_suffix_icase(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(), [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) ==
               std::tolower(static_cast<unsigned char>(b));
    });
}

} // namespace

IndexedMesh read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return has_suffix_icase(path, ".off") ? read_off(in, path) : read_obj(in, path);
}

void write_obj(const IndexedMesh& mesh, std::ostream& out) {
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const Face& f : mesh.faces) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
        out << buf;
    }
}

void write_mesh(const IndexedMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_obj(mesh, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Vec3> read_xyz(std::istream& in, const std::string& name) {
    std::vector<Vec3> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() != 3)
            fail(name, lineno,
                 "expected 3 coordinates, got " + std::to_string(toks.size()) + " tokens");
        pts.push_back({parse_double(toks[0], name, lineno), parse_double(toks[1], name, lineno),
                       parse_double(toks[2], name, lineno)});
    }
    return pts;
}

std::vector<Vec3> read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_xyz(in, path);
}

void write_xyz(const std::vector<Vec3>& points, std::ostream& out) {
    char buf[128];
    for (const Vec3& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << buf;
    }
}

void write_points(const std::vector<Vec3>& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_xyz(points, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace gamesh
