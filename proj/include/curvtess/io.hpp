#pragma once

#include "curvtess/patch.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvtess {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(format(what, line)), line_(line) {}
    int line() const { return line_; }

private:
    static std::string format(const std::string& what, int line) {
        return "line " + std::to_string(line) + ": " + what;
    }
    int line_ = 0;
};

/// The raw content of a ".tess" file: one `face` line per face, optional
/// `boundary` lines declaring surface-boundary vertices, `#` comments.
struct TessDocument {
    std::vector<std::vector<std::string>> faces;
    std::set<std::string> boundary;

    Patch build(Patch::BuildMode mode = Patch::BuildMode::Strict) const {
        return Patch::build(faces, boundary, mode);
    }
};

TessDocument parse_tess(const std::string& text);
std::string serialize_tess(const TessDocument& doc);
TessDocument tess_from_patch(const Patch& p);

TessDocument load_tess_file(const std::string& path);
void save_tess_file(const std::string& path, const TessDocument& doc);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace curvtess
