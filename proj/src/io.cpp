#include "heis/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace heis {

void write_points_csv(std::ostream& out, const std::vector<HeisPoint>& points) {
    out << "x,y,t\n";
    char buf[128];
    for (const HeisPoint& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x, p.y, p.t);
        out << buf;
    }
}

std::vector<HeisPoint> read_points_csv(std::istream& in) {
    std::vector<HeisPoint> points;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == "x,y,t") continue;  // header optional on input
        }
        HeisPoint p;
        char extra;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &p.x, &p.y, &p.t, &extra) != 3)
            throw std::invalid_argument("malformed CSV row: " + line);
        if (!p.is_finite())
            throw std::invalid_argument("non-finite point in CSV: " + line);
        points.push_back(p);
    }
    return points;
}

}  // namespace heis
