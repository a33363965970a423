#pragma once

#include "hypercongruence/types.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace hcong {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line)
    {
    }
    std::size_t line;
};

// One point per line: four coordinates and an optional label=<token>. Lines
// starting with '#' and blank lines are skipped.
PointSet4 read_points(std::istream& in);
PointSet4 read_points_file(const std::string& path);

// Shortest round-trip decimal form of every coordinate.
void write_points(std::ostream& out, const PointSet4& s, const std::string& comment = {});
void write_points_file(const std::string& path, const PointSet4& s, const std::string& comment = {});

std::string format_double(double v);

}  // namespace hcong
