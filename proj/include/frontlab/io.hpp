#pragma once

// CSV, JSON and SVG output for every report type. Numbers are printed with
// round-trip precision so identical runs give identical files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "frontlab/bargmann.hpp"
#include "frontlab/dynamics.hpp"
#include "frontlab/error.hpp"
#include "frontlab/evans.hpp"
#include "frontlab/profile.hpp"
#include "frontlab/spectral.hpp"

namespace frontlab::io {

using nlohmann::json;

inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Columns of equal length under a header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != header_.size()) detail::fail(ErrorKind::DomainError, "io", "row width differs from header");
        rows_.push_back(row);
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
        os << '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
            os << '\n';
        }
        return os.str();
    }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

inline CsvTable parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) detail::fail(ErrorKind::ConfigError, "io", "empty CSV");
    std::vector<std::string> header;
    {
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) header.push_back(cell);
    }
    CsvTable t(header);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        t.add_row(row);
    }
    return t;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) detail::fail(ErrorKind::ConfigError, "io", "cannot open " + path + " for writing");
    f << text;
    if (!f) detail::fail(ErrorKind::ConfigError, "io", "failed writing " + path);
}

inline std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) detail::fail(ErrorKind::ConfigError, "io", "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Front profile

inline CsvTable front_csv(const FrontProfile& p) {
    CsvTable t({"x", "phi", "dphi", "ddphi"});
    for (std::size_t i = 0; i < p.size(); ++i) t.add_row({p.grid.at(i), p.phi[i], p.dphi[i], p.ddphi[i]});
    return t;
}

inline json front_json(const FrontProfile& p) {
    return {{"nu", p.nu}, {"half_length", p.half_length}, {"residual", p.residual}, {"ode_tol", p.ode_tol}};
}

/// Rebuilds a profile from its CSV and sidecar.
inline FrontProfile front_from_csv(const CsvTable& t, const json& sidecar) {
    if (t.header() != std::vector<std::string>{"x", "phi", "dphi", "ddphi"} || t.rows().size() < 5) {
        detail::fail(ErrorKind::ConfigError, "io", "front CSV must have columns x,phi,dphi,ddphi");
    }
    FrontProfile p;
    p.nu = sidecar.at("nu").get<double>();
    p.half_length = sidecar.at("half_length").get<double>();
    p.ode_tol = sidecar.at("ode_tol").get<double>();
    const auto& r = t.rows();
    p.grid = {r.front()[0], (r.back()[0] - r.front()[0]) / static_cast<double>(r.size() - 1), r.size()};
    for (const auto& row : r) {
        p.phi.push_back(row[1]);
        p.dphi.push_back(row[2]);
        p.ddphi.push_back(row[3]);
    }
    p.residual = front_residual(p);
    p.tail_magnitude = std::abs(p.phi.front() - 1.0) + std::abs(p.phi.back() + 1.0);
    return p;
}

// Bargmann

inline json to_json(const BargmannReport& r) {
    return {{"nu", r.nu},
            {"tau", r.tau},
            {"balance_point", optional_number(r.balance_point)},
            {"m_infinity", r.m_infinity},
            {"shock_offset", r.shock_offset},
            {"l1_distance", r.l1_distance},
            {"is_sharp", r.is_sharp}};
}

inline CsvTable tau_scan_csv(const std::vector<double>& nus, const std::vector<double>& taus) {
    CsvTable t({"nu", "tau"});
    for (std::size_t i = 0; i < nus.size(); ++i) t.add_row({nus[i], taus[i]});
    return t;
}

// Spectral

inline json to_json(const SpectrumReport& r) {
    return {{"nu", optional_number(r.nu)},
            {"epsilon", r.epsilon},
            {"gamma", optional_number(r.gamma)},
            {"negative_count", r.negative_count},
            {"eigenvalues", r.eigenvalues},
            {"min_eig_perturbed", optional_number(r.min_eig_perturbed)}};
}

// Evans

inline CsvTable evans_csv(const EvansCurve& c) {
    CsvTable t({"lambda", "delta"});
    for (std::size_t i = 0; i < c.lambdas.size(); ++i) t.add_row({c.lambdas[i], c.deltas[i]});
    return t;
}

inline json to_json(const EvansCurve& c) {
    return {{"nu", c.nu},
            {"negative_roots", c.negative_roots},
            {"negative_root_count", count_negative_roots(c)},
            {"delta_at_zero", c.delta_at_zero},
            {"half_length", c.half_length},
            {"scale", c.scale}};
}

// Dynamics

inline CsvTable trace_csv(const SimTrace& tr) {
    CsvTable t({"t", "l2_v", "l2_vx", "x0", "energy_residual"});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        t.add_row({tr.times[i], tr.l2_v[i], tr.l2_vx[i], tr.x0_series[i], tr.energy_residual[i]});
    }
    return t;
}

// SVG line plots

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

inline std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Self-contained SVG with axes, tick labels and a legend.
inline std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                            const std::vector<Series>& series) {
    constexpr double W = 720, H = 450, ml = 80, mr = 160, mt = 40, mb = 60;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!(x0 < x1)) { x0 -= 1; x1 += 1; }
    if (!(y0 < y1)) { y0 -= 1; y1 += 1; }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };
    auto fmt = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.4g", v);
        return std::string(b);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(title)
       << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">" << fmt(xv)
           << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    if (y0 < 0 && y1 > 0) {
        os << "<line x1=\"" << ml << "\" x2=\"" << W - mr << "\" y1=\"" << py(0) << "\" y2=\"" << py(0)
           << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
       << escape_xml(xlabel) << "</text>\n";
    os << "<text transform=\"translate(18," << (mt + H - mb) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape_xml(ylabel) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = colors[s % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
            os << fmt(px(series[s].x[i])) << ',' << fmt(py(series[s].y[i])) << ' ';
        }
        os << "\"/>\n";
        const double ly = mt + 16 * (s + 1);
        os << "<line x1=\"" << W - mr + 10 << "\" x2=\"" << W - mr + 30 << "\" y1=\"" << ly - 4 << "\" y2=\""
           << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - mr + 36 << "\" y=\"" << ly << "\">" << escape_xml(series[s].name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// One series per non-first column against the first.
inline std::string svg_from_table(const std::string& title, const CsvTable& t) {
    std::vector<Series> series;
    for (std::size_t c = 1; c < t.header().size(); ++c) {
        Series s{t.header()[c], {}, {}};
        for (const auto& r : t.rows()) {
            s.x.push_back(r[0]);
            s.y.push_back(r[c]);
        }
        series.push_back(std::move(s));
    }
    return svg_plot(title, t.header()[0], "", series);
}

}  // namespace frontlab::io
