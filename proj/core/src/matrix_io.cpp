#include "flatdyn/matrix_io.hpp"

#include "flatdyn/errors.hpp"
#include "flatdyn/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace flatdyn {

AlgMatrix parse_matrix_text(std::string_view text) {
    AlgMatrix m;
    std::size_t line_no = 0;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos)
            line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        ++line_no;
        line_start = line_end + 1;

        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#')
            continue;

        AlgVector row;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            if (i >= line.size())
                break;
            std::size_t start = i;
            int depth = 0;
            while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
                if (line[i] == '(')
                    ++depth;
                else if (line[i] == ')')
                    --depth;
                ++i;
            }
            try {
                row.push_back(parse_algnum(line.substr(start, i - start)));
            } catch (const ParseError& e) {
                std::string what = e.what();
                what = what.substr(what.find(": ") + 2);
                throw ParseError(what, start + e.column(), line_no);
            }
        }
        if (m.rows() > 0 && row.size() != m.cols())
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(m.cols()),
                             1, line_no);
        m.append_row(row);
        if (line_end == text.size())
            break;
    }
    if (m.rows() == 0)
        throw ParseError("no matrix rows found", 1, line_no == 0 ? 1 : line_no);
    return m;
}

AlgMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_text(ss.str());
}

std::string format_matrix(const AlgMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out += "  ";
            std::string s = m(i, j).to_string();
            if (s.find(' ') != std::string::npos)
                s = "(" + s + ")";
            out += s;
        }
        out += '\n';
    }
    return out;
}

}  // namespace flatdyn
