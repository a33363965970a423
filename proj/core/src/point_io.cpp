#include "hypercongruence/point_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hcong {

namespace {

bool parse_double(const std::string& tok, double& v)
{
    const char* b = tok.data();
    const char* e = b + tok.size();
    if (b != e && *b == '+') ++b;
    auto r = std::from_chars(b, e, v);
    return r.ec == std::errc() && r.ptr == e && std::isfinite(v);
}

}  // namespace

PointSet4 read_points(std::istream& in)
{
    PointSet4 s;
    std::string line;
    std::size_t no = 0;
    bool any_label = false, any_plain = false;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        Vec4 p;
        for (int i = 0; i < 4; ++i) {
            if (!(ls >> tok)) throw ParseError(no, "expected 4 coordinates, got " + std::to_string(i));
            if (!parse_double(tok, p[i])) throw ParseError(no, "not a finite number: '" + tok + "'");
        }
        std::string label;
        bool labeled = false;
        if (ls >> tok) {
            if (tok.rfind("label=", 0) != 0) throw ParseError(no, "unexpected token '" + tok + "'");
            label = tok.substr(6);
            if (label.empty()) throw ParseError(no, "empty label");
            labeled = true;
            if (ls >> tok) throw ParseError(no, "unexpected token '" + tok + "'");
        }
        (labeled ? any_label : any_plain) = true;
        if (any_label && any_plain) throw ParseError(no, "either all points carry a label or none does");
        s.points.push_back(p);
        if (labeled) s.labels.push_back(label);
    }
    return s;
}

PointSet4 read_points_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_points(in);
}

std::string format_double(double v)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_points(std::ostream& out, const PointSet4& s, const std::string& comment)
{
    if (!comment.empty()) out << "# " << comment << '\n';
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Vec4& p = s.points[i];
        out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << ' ' << format_double(p[3]);
        if (s.labeled()) out << " label=" << s.labels[i];
        out << '\n';
    }
}

void write_points_file(const std::string& path, const PointSet4& s, const std::string& comment)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_points(out, s, comment);
}

}  // namespace hcong
