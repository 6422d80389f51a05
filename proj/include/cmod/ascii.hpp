#pragma once

// Text barcodes with the four end glyphs |-|, |->, <-|, <->.

#include <sstream>
#include <string>

#include "cmod/decompose.hpp"

namespace cmod {

// Position q spans columns 2q..2q+2, so a one-position bar reads "|-|".
inline std::string render_bar(const GridLine& g, const Bar& b) {
    std::string row(2 * g.positions() + 1, ' ');
    std::size_t lo = 2 * b.start, hi = 2 * b.end + 2;
    for (std::size_t c = lo; c <= hi; ++c) row[c] = '-';
    row[lo] = left_closed(b.type) ? '|' : '<';
    row[hi] = right_closed(b.type) ? '|' : '>';
    while (!row.empty() && row.back() == ' ') row.pop_back();
    return row;
}

inline std::string render_ascii(const DecoratedDiagram& d) {
    std::ostringstream out;
    out << "grid:";
    for (const auto& t : d.grid.values()) out << ' ' << format_rational(t);
    out << '\n';
    std::size_t width = 2 * d.grid.positions() + 1;
    for (const auto& [b, k] : d.mult) {
        std::string row = render_bar(d.grid, b);
        row.resize(width, ' ');
        out << row << "  " << bar_type_code(b.type) << ' ' << format_decorated(bar_birth(d.grid, b)) << ' '
            << format_decorated(bar_death(d.grid, b));
        if (k > 1) out << " x" << k;
        out << '\n';
    }
    return out.str();
}

} // namespace cmod
