#pragma once

#include <string>
#include <vector>

#include "clebsch/dynamics.hpp"
#include "clebsch/linearize.hpp"

namespace clebsch {

// Shortest representation that round-trips a double exactly.
std::string format_g17(double v);

// Header t,K1,K2,K3,p1,p2,p3; one row per stored step.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Header t,x1,x2.
void write_xcoords_csv(const std::string& path, const XSeries& xs);

// Header t,residual (or any two-column series).
void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& t,
                      const std::vector<double>& v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace clebsch
