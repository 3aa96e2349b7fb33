#include "clebsch/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "clebsch/errors.hpp"

namespace clebsch {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,K1,K2,K3,p1,p2,p3\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const BodyState& s = traj.states[i];
        out << format_g17(traj.t[i]);
        for (int c = 0; c < 3; ++c) out << ',' << format_g17(s.K[c]);
        for (int c = 0; c < 3; ++c) out << ',' << format_g17(s.p[c]);
        out << '\n';
    }
    if (!out) throw ConfigError("write failed for " + path);
}

void write_xcoords_csv(const std::string& path, const XSeries& xs) {
    std::ofstream out = open_out(path);
    out << "t,x1,x2\n";
    for (std::size_t i = 0; i < xs.t.size(); ++i) {
        out << format_g17(xs.t[i]) << ',' << format_g17(xs.x1[i]) << ','
            << format_g17(xs.x2[i]) << '\n';
    }
    if (!out) throw ConfigError("write failed for " + path);
}

void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& t,
                      const std::vector<double>& v) {
    std::ofstream out = open_out(path);
    out << header << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << format_g17(t[i]) << ',' << format_g17(v[i]) << '\n';
    }
    if (!out) throw ConfigError("write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path + " for reading");
    CsvTable table;
    std::string line;
    if (std::getline(in, line)) {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("non-numeric cell '" + cell + "' in " + path);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
    if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace clebsch
