#include "curvtess/io.hpp"

#include <fstream>
#include <sstream>

namespace curvtess {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

} // namespace

TessDocument parse_tess(const std::string& text) {
    TessDocument doc;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "face") {
            if (toks.size() < 4)
                throw ParseError("face needs at least 3 vertex ids", lineno);
            doc.faces.emplace_back(toks.begin() + 1, toks.end());
        } else if (toks[0] == "boundary") {
            if (toks.size() < 2)
                throw ParseError("boundary needs at least 1 vertex id", lineno);
            doc.boundary.insert(toks.begin() + 1, toks.end());
        } else {
            throw ParseError("unknown directive '" + toks[0] + "'", lineno);
        }
    }
    if (doc.faces.empty()) throw ParseError("no face lines", lineno);
    return doc;
}

std::string serialize_tess(const TessDocument& doc) {
    std::ostringstream os;
    for (const auto& f : doc.faces) {
        os << "face";
        for (const auto& v : f) os << ' ' << v;
        os << '\n';
    }
    if (!doc.boundary.empty()) {
        os << "boundary";
        for (const auto& v : doc.boundary) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

TessDocument tess_from_patch(const Patch& p) {
    TessDocument doc;
    for (int f = 0; f < p.face_count(); ++f)
        doc.faces.push_back(p.input_face_cycles_names(f));
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.declared_on_surface_boundary(v)) doc.boundary.insert(p.vertex_name(v));
    return doc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

TessDocument load_tess_file(const std::string& path) { return parse_tess(read_text_file(path)); }

void save_tess_file(const std::string& path, const TessDocument& doc) {
    write_text_file(path, serialize_tess(doc));
}

} // namespace curvtess
