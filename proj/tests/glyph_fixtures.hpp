#pragma once

// Printed-glyph test corpus: a 5x7 letterform set scaled up so strokes are
// several pixels wide, approximating clean printed character scans.

#include <map>
#include <string>
#include <vector>

#include "medax/image.hpp"

namespace fixtures {

struct Glyph {
    std::string name;
    std::vector<std::string> rows;  // '#' = ink
    bool multi_stroke = false;      // has a stroke junction
    int holes = 0;
};

inline const std::vector<Glyph> &glyph_set() {
    static const std::vector<Glyph> glyphs = {
        {"A", {"  #  ", " # # ", "#   #", "#   #", "#####", "#   #", "#   #"}, true, 1},
        {"B", {"#### ", "#   #", "#   #", "#### ", "#   #", "#   #", "#### "}, true, 2},
        {"C", {" ### ", "#   #", "#    ", "#    ", "#    ", "#   #", " ### "}, false, 0},
        {"D", {"#### ", "#   #", "#   #", "#   #", "#   #", "#   #", "#### "}, false, 1},
        {"E", {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#####"}, true, 0},
        {"F", {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#    "}, true, 0},
        {"G", {" ### ", "#   #", "#    ", "# ###", "#   #", "#   #", " ### "}, true, 0},
        {"H", {"#   #", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}, true, 0},
        {"I", {"#####", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", "#####"}, true, 0},
        {"J", {"    #", "    #", "    #", "    #", "    #", "#   #", " ### "}, false, 0},
        {"K", {"#   #", "#  # ", "# #  ", "##   ", "# #  ", "#  # ", "#   #"}, true, 0},
        {"L", {"#    ", "#    ", "#    ", "#    ", "#    ", "#    ", "#####"}, false, 0},
        {"N", {"#   #", "##  #", "##  #", "# # #", "#  ##", "#  ##", "#   #"}, true, 0},
        {"O", {" ### ", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}, false, 1},
        {"P", {"#### ", "#   #", "#   #", "#### ", "#    ", "#    ", "#    "}, true, 1},
        {"R", {"#### ", "#   #", "#   #", "#### ", "# #  ", "#  # ", "#   #"}, true, 1},
        {"S", {" ####", "#    ", "#    ", " ### ", "    #", "    #", "#### "}, false, 0},
        {"T", {"#####", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  "}, true, 0},
        {"U", {"#   #", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}, false, 0},
        {"V", {"#   #", "#   #", "#   #", "#   #", " # # ", " # # ", "  #  "}, false, 0},
        {"X", {"#   #", "#   #", " # # ", "  #  ", " # # ", "#   #", "#   #"}, true, 0},
        {"Y", {"#   #", "#   #", " # # ", "  #  ", "  #  ", "  #  ", "  #  "}, true, 0},
        {"Z", {"#####", "    #", "   # ", "  #  ", " #   ", "#    ", "#####"}, false, 0},
    };
    return glyphs;
}

/// Render a glyph bitmap at the given cell scale with a margin, ink = 0.
inline medax::GrayImage render_glyph(const Glyph &g, int scale = 6, int margin = 8) {
    const int rows = int(g.rows.size());
    const int cols = int(g.rows[0].size());
    medax::GrayImage img(cols * scale + 2 * margin, rows * scale + 2 * margin, 255);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (g.rows[r][c] != '#') continue;
            for (int dy = 0; dy < scale; ++dy)
                for (int dx = 0; dx < scale; ++dx)
                    img.at(margin + c * scale + dx, margin + r * scale + dy) = 0;
        }
    return img;
}

}  // namespace fixtures
