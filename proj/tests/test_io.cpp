#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "frontlab/io.hpp"

using namespace frontlab;

TEST(Csv, RoundTripsExactly) {
    io::CsvTable t({"a", "b"});
    t.add_row({0.1, -1.0 / 3.0});
    t.add_row({1e-300, 12345.678901234567});
    const auto back = io::parse_csv(t.str());
    EXPECT_EQ(back.header(), t.header());
    EXPECT_EQ(back.rows(), t.rows());
}

TEST(Csv, RejectsRaggedRows) {
    io::CsvTable t({"a", "b"});
    EXPECT_THROW(t.add_row({1.0}), Error);
    EXPECT_THROW(io::parse_csv(""), Error);
}

TEST(Csv, NonFiniteValuesAreSpelledOut) {
    EXPECT_EQ(io::num(NAN), "nan");
    EXPECT_EQ(io::num(-INFINITY), "-inf");
    EXPECT_EQ(io::num(0.5), "0.5");
}

TEST(FrontSerialization, HeaderAndSidecar) {
    const auto p = solve_front(0.5, 20.0, 1e-10, 801);
    const auto t = io::front_csv(p);
    EXPECT_EQ(t.header(), (std::vector<std::string>{"x", "phi", "dphi", "ddphi"}));
    EXPECT_EQ(t.rows().size(), p.size());
    const auto j = io::front_json(p);
    for (const char* k : {"nu", "half_length", "residual", "ode_tol"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j.size(), 4u);
}

TEST(FrontSerialization, RoundTripPreservesTau) {
    const auto p = solve_front(1.0);
    const auto back = io::front_from_csv(io::parse_csv(io::front_csv(p).str()), io::front_json(p));
    EXPECT_EQ(back.phi, p.phi);
    EXPECT_EQ(back.dphi, p.dphi);
    EXPECT_NEAR(back.grid.step, p.grid.step, 1e-15);
    EXPECT_NEAR(front_tau(back), front_tau(p), 1e-12);
}

TEST(ReportJson, Bargmann) {
    const auto j = io::to_json(bargmann_report(solve_front(0.0)));
    EXPECT_NEAR(j["tau"].get<double>(), std::log(2.0), 1e-3);
    EXPECT_TRUE(j["is_sharp"].get<bool>());
}

TEST(ReportJson, SpectrumNullsForMissingFields) {
    SpectrumReport r;
    r.negative_count = 1;
    r.eigenvalues = {-0.1};
    const auto j = io::to_json(r);
    EXPECT_TRUE(j["gamma"].is_null());
    EXPECT_TRUE(j["nu"].is_null());
    EXPECT_EQ(j["negative_count"], 1);
}

TEST(ReportJson, EvansCountsRoots) {
    EvansCurve c;
    c.lambdas = {-1.0, -0.5, 0.0};
    c.deltas = {1.0, -1.0, -0.5};
    c.negative_roots = {-0.7};
    const auto j = io::to_json(c);
    EXPECT_EQ(j["negative_root_count"], 1);
    const auto t = io::evans_csv(c);
    EXPECT_EQ(t.rows().size(), 3u);
}

TEST(Svg, WellFormedAndEscaped) {
    const auto s = io::svg_plot("a < b & c", "x", "y", {{"s1", {0, 1, 2}, {1, NAN, 3}}, {"s2", {0, 1}, {0, 0}}});
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_NE(s.find("a &lt; b &amp; c"), std::string::npos);
    EXPECT_EQ(s.find("nan"), std::string::npos);
    std::size_t lines = 0;
    for (auto pos = s.find("<polyline"); pos != std::string::npos; pos = s.find("<polyline", pos + 1)) ++lines;
    EXPECT_EQ(lines, 2u);
}

TEST(Svg, DegenerateRangesStillPlot) {
    const auto s = io::svg_plot("flat", "x", "y", {{"c", {1, 1}, {2, 2}}});
    EXPECT_NE(s.find("polyline"), std::string::npos);
}

TEST(Files, WriteAndReadBack) {
    const auto dir = std::filesystem::temp_directory_path() / "frontlab_io_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "a.txt").string();
    io::write_text(path, "hello\n");
    EXPECT_EQ(io::read_text(path), "hello\n");
    EXPECT_THROW(io::read_text((dir / "missing").string()), Error);
    std::filesystem::remove_all(dir);
}
