#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "confsh/harmonics.hpp"

namespace confsh {

enum class PlotMode { surface, polar };

inline std::string to_string(PlotMode mode) {
    return mode == PlotMode::surface ? "surface" : "polar";
}
inline PlotMode plot_mode_from_string(const std::string& s) {
    if (s == "surface") return PlotMode::surface;
    if (s == "polar") return PlotMode::polar;
    throw std::invalid_argument("unknown plot mode '" + s + "'");
}

/// One sampled record. For surface mode the Cartesian point is the density
/// times the deformed direction
///   (sin(theta^a) cos(phi^a), sin(theta^a) sin(phi^a), cos(theta^a)),
/// so x^2 + y^2 + z^2 = density^2 and the alpha = 1 output is the classical
/// spherical-harmonic surface. Polar records carry (theta, density) only.
struct PlotRecord {
    double theta = 0;
    double phi = 0;
    double density = 0;
    double x = 0;
    double y = 0;
    double z = 0;
};

struct PlotGrid {
    int l = 0;
    int m = 0;
    Alpha alpha;
    PlotMode mode = PlotMode::surface;
    int n_theta = 0;
    int n_phi = 0;
    std::vector<PlotRecord> records;
};

/// Density of Y_{l a}^{m a} at a point. Negative m is evaluated through the
/// |m| harmonic: |Y^{-m}| = |Y^{m}| exactly (conjugation relation), and the
/// positive-m representation stays regular at the poles.
inline double density_at(int l, int m, const Alpha& alpha, double theta, double phi) {
    const SphericalHarmonic y = make_harmonic(l, std::abs(m), alpha);
    return density(y, AngularPoint{theta, phi});
}

namespace detail {

inline PlotRecord surface_record(const SphericalHarmonic& y, double theta, double phi) {
    const double a = to_double(y.alpha.value);
    const double d = density(y, AngularPoint{theta, phi});
    const double v = std::min(std::pow(theta, a), std::numbers::pi);
    const double w = std::pow(phi, a);
    PlotRecord r;
    r.theta = theta;
    r.phi = phi;
    r.density = d;
    r.x = d * std::sin(v) * std::cos(w);
    r.y = d * std::sin(v) * std::sin(w);
    r.z = d * std::cos(v);
    return r;
}

} // namespace detail

/// Samples the density on an n_theta x n_phi grid, uniform in the deformed
/// angles theta^alpha in [0, pi] and phi^alpha in [0, (2 pi)^alpha]; the
/// stored coordinates are the actual (theta, phi).
inline PlotGrid make_surface_grid(int l, int m, const Alpha& alpha, int n_theta = 121,
                                  int n_phi = 241) {
    if (n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("make_surface_grid: grid must be at least 2x2");
    const SphericalHarmonic y = make_harmonic(l, std::abs(m), alpha);
    const double a = to_double(alpha.value);
    const double w_hi = std::pow(2.0 * std::numbers::pi, a);
    PlotGrid grid{l, m, alpha, PlotMode::surface, n_theta, n_phi, {}};
    grid.records.reserve(static_cast<size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        const double v = std::numbers::pi * i / (n_theta - 1);
        const double theta = std::pow(v, 1.0 / a);
        for (int j = 0; j < n_phi; ++j) {
            const double w = w_hi * j / (n_phi - 1);
            const double phi = std::min(std::pow(w, 1.0 / a), 2.0 * std::numbers::pi);
            grid.records.push_back(detail::surface_record(y, theta, phi));
        }
    }
    return grid;
}

/// (theta, density) at fixed phi = 0, theta^alpha uniform over [0, pi].
inline PlotGrid make_polar_data(int l, int m, const Alpha& alpha, int n_theta = 241) {
    if (n_theta < 2) throw std::invalid_argument("make_polar_data: need at least 2 samples");
    const SphericalHarmonic y = make_harmonic(l, std::abs(m), alpha);
    const double a = to_double(alpha.value);
    PlotGrid grid{l, m, alpha, PlotMode::polar, n_theta, 1, {}};
    grid.records.reserve(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        const double v = std::numbers::pi * i / (n_theta - 1);
        const double theta = std::pow(v, 1.0 / a);
        PlotRecord r;
        r.theta = theta;
        r.density = density(y, AngularPoint{theta, 0.0});
        grid.records.push_back(r);
    }
    return grid;
}

/// 12 significant digits, the CLI-wide numeric output format.
inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void write_csv(const PlotGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    if (grid.mode == PlotMode::surface) {
        out << "theta,phi,density,x,y,z\n";
        for (const PlotRecord& r : grid.records)
            out << format_sig12(r.theta) << ',' << format_sig12(r.phi) << ','
                << format_sig12(r.density) << ',' << format_sig12(r.x) << ','
                << format_sig12(r.y) << ',' << format_sig12(r.z) << '\n';
    } else {
        out << "theta,density\n";
        for (const PlotRecord& r : grid.records)
            out << format_sig12(r.theta) << ',' << format_sig12(r.density) << '\n';
    }
    if (!out.good()) throw std::runtime_error("write failed for '" + path + "'");
}

inline void write_json(const PlotGrid& grid, const std::string& path) {
    nlohmann::json j;
    j["meta"] = {{"l", grid.l},
                 {"m", grid.m},
                 {"alpha", format_rational(grid.alpha.value)},
                 {"mode", to_string(grid.mode)},
                 {"grid", {grid.n_theta, grid.n_phi}}};
    nlohmann::json pts = nlohmann::json::array();
    for (const PlotRecord& r : grid.records) {
        if (grid.mode == PlotMode::surface)
            pts.push_back({r.theta, r.phi, r.density, r.x, r.y, r.z});
        else
            pts.push_back({r.theta, r.density});
    }
    j["points"] = std::move(pts);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(1) << '\n';
    if (!out.good()) throw std::runtime_error("write failed for '" + path + "'");
}

inline PlotGrid read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    const nlohmann::json& meta = j.at("meta");
    PlotGrid grid{meta.at("l").get<int>(),
                  meta.at("m").get<int>(),
                  Alpha(parse_rational(meta.at("alpha").get<std::string>())),
                  plot_mode_from_string(meta.at("mode").get<std::string>()),
                  meta.at("grid").at(0).get<int>(),
                  meta.at("grid").at(1).get<int>(),
                  {}};
    for (const nlohmann::json& p : j.at("points")) {
        PlotRecord r;
        if (grid.mode == PlotMode::surface) {
            r.theta = p.at(0).get<double>();
            r.phi = p.at(1).get<double>();
            r.density = p.at(2).get<double>();
            r.x = p.at(3).get<double>();
            r.y = p.at(4).get<double>();
            r.z = p.at(5).get<double>();
        } else {
            r.theta = p.at(0).get<double>();
            r.density = p.at(1).get<double>();
        }
        grid.records.push_back(r);
    }
    return grid;
}

/// Reads back a CSV emitted by write_csv; the header decides the mode.
inline std::vector<PlotRecord> read_csv(const std::string& path, PlotMode& mode) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV '" + path + "'");
    if (line == "theta,phi,density,x,y,z")
        mode = PlotMode::surface;
    else if (line == "theta,density")
        mode = PlotMode::polar;
    else
        throw std::runtime_error("unrecognized CSV header in '" + path + "'");
    std::vector<PlotRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PlotRecord r;
        if (mode == PlotMode::surface) {
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &r.theta, &r.phi, &r.density,
                            &r.x, &r.y, &r.z) != 6)
                throw std::runtime_error("malformed CSV row in '" + path + "'");
        } else {
            if (std::sscanf(line.c_str(), "%lf,%lf", &r.theta, &r.density) != 2)
                throw std::runtime_error("malformed CSV row in '" + path + "'");
        }
        records.push_back(r);
    }
    return records;
}

} // namespace confsh
