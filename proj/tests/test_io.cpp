#include <gtest/gtest.h>

#include "aqrsm/io/config.hpp"
#include "aqrsm/io/format.hpp"
#include "aqrsm/io/heatmap.hpp"

using namespace aqrsm;
using namespace aqrsm::io;

TEST(Format, FixedAndScientific) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.5), "-0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(format_number(123456.789), "123456.789");
  EXPECT_EQ(format_number(999999.123456789), "999999.123457");
  EXPECT_EQ(format_number(999999.9999999), "1.00000000000e+06");
  EXPECT_EQ(format_number(1e6), "1.00000000000e+06");
  EXPECT_EQ(format_number(1e-6), "0.000001");
  EXPECT_EQ(format_number(6.24875e-7), "6.24875000000e-07");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(-1e-13), "-1.00000000000e-13");
  EXPECT_EQ(format_number(NAN), "");
  EXPECT_EQ(format_number(INFINITY), "");
  EXPECT_EQ(format_optional(std::nullopt), "");
  EXPECT_EQ(csv_line({"a", "", "3"}), "a,,3\n");
}

TEST(Colormap, StopsExact) {
  EXPECT_EQ(hex(colormap(0.0)), "#440154");
  EXPECT_EQ(hex(colormap(0.25)), "#3B528B");
  EXPECT_EQ(hex(colormap(0.5)), "#21918C");
  EXPECT_EQ(hex(colormap(0.75)), "#5EC962");
  EXPECT_EQ(hex(colormap(1.0)), "#FDE725");
  EXPECT_EQ(hex(colormap(-3.0)), "#440154");
}

namespace {

HeatmapGrid grid2x2(std::vector<std::optional<double>> v) {
  HeatmapGrid g;
  g.x_name = "g";
  g.y_name = "r";
  g.column = "g2";
  g.nx = g.ny = 2;
  g.values = std::move(v);
  return g;
}

}  // namespace

TEST(Heatmap, LinearNormalizationEndpoints) {
  const HeatmapGrid g = grid2x2({0.0, 1.0, 2.0, 3.0});
  const auto t = normalize(g.values, ColorScale::linear);
  EXPECT_DOUBLE_EQ(*t[0], 0.0);
  EXPECT_DOUBLE_EQ(*t[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(*t[2], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*t[3], 1.0);
  const std::string svg = emit_heatmap(g, ColorScale::linear);
  EXPECT_NE(svg.find("fill=\"#440154\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"#FDE725\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"" + hex(colormap(1.0 / 3.0)) + "\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"" + hex(colormap(2.0 / 3.0)) + "\""), std::string::npos);
  const std::size_t cells = svg.find("</g>");
  std::size_t n = 0;
  for (std::size_t pos = svg.find("<rect"); pos < cells; pos = svg.find("<rect", pos + 1)) ++n;
  EXPECT_EQ(n, 4u);
  EXPECT_EQ(svg, emit_heatmap(g, ColorScale::linear));
}

TEST(Heatmap, AllEqualIsMidColor) {
  const std::string svg = emit_heatmap(grid2x2({2.5, 2.5, 2.5, 2.5}), ColorScale::linear);
  std::size_t n = 0;
  for (std::size_t pos = svg.find("fill=\"#21918C\""); pos != std::string::npos; pos = svg.find("fill=\"#21918C\"", pos + 1)) ++n;
  EXPECT_EQ(n, 4u);
}

TEST(Heatmap, LogOfZeroIsMissing) {
  const auto t = normalize({0.0, 1.0, 10.0, 100.0}, ColorScale::log10);
  EXPECT_FALSE(t[0]);
  EXPECT_DOUBLE_EQ(*t[2], 0.5);
  const std::string svg = emit_heatmap(grid2x2({0.0, 1.0, 10.0, 100.0}), ColorScale::log10);
  EXPECT_NE(svg.find("fill=\"#BBBBBB\""), std::string::npos);
  const std::string missing = emit_heatmap(grid2x2({1.0, std::nullopt, 2.0, 3.0}), ColorScale::linear);
  EXPECT_NE(missing.find("fill=\"#BBBBBB\""), std::string::npos);
}

TEST(Heatmap, ColorbarAndAxes) {
  const std::string svg = emit_heatmap(grid2x2({0.0, 1.0, 2.0, 3.0}), ColorScale::linear);
  EXPECT_NE(svg.find("id=\"colorbar\""), std::string::npos);
  std::size_t ticks = 0;
  for (std::size_t pos = svg.find("<line "); pos != std::string::npos; pos = svg.find("<line ", pos + 1)) ++ticks;
  EXPECT_EQ(ticks, 5u);
  EXPECT_NE(svg.find(">g</text>"), std::string::npos);
  EXPECT_NE(svg.find(">r</text>"), std::string::npos);
}

TEST(Heatmap, RejectsOneDimensional) {
  HeatmapGrid g = grid2x2({1.0, 2.0});
  g.ny = 1;
  EXPECT_THROW(emit_heatmap(g, ColorScale::linear), InvalidInput);
  SweepResult r;
  r.spec.axis1 = {"g", 0.0, 1.0, 2};
  r.rows.resize(2);
  EXPECT_THROW(emit_heatmap(r, "g2", ColorScale::linear), InvalidInput);
}

TEST(Config, DefaultsFromEmptyDocument) {
  const RunConfig c = parse_config_text("{}");
  EXPECT_EQ(c.bath, BathParams{});
  EXPECT_EQ(c.model.delta, 1.0);
  EXPECT_EQ(c.n_levels, 40);
  EXPECT_FALSE(c.sweep);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_THROW(parse_config_text(R"({"modle": {}})"), ConfigError);
  try {
    parse_config_text(R"({"model": {"g": 0.1, "gg": 1}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("model.gg"), std::string::npos);
  }
  EXPECT_THROW(parse_config_text(R"({"sweep": {"axis1": {"name": "g", "min": 0, "max": 1, "count": 3, "x": 1}}})"),
               ConfigError);
}

TEST(Config, FieldErrorsNamed) {
  auto message = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"model": {"n_tr": -5}})").find("model.n_tr"), std::string::npos);
  EXPECT_NE(message(R"({"model": {"n_tr": 2.5}})").find("model.n_tr"), std::string::npos);
  EXPECT_NE(message(R"({"model": {"u": 1.2}})").find("model.u"), std::string::npos);
  EXPECT_NE(message(R"({"bath": {"kt_q": "hot"}})").find("bath.kt_q"), std::string::npos);
  EXPECT_NE(message(R"({"output": {"scale": "cubic"}})").find("output.scale"), std::string::npos);
  EXPECT_NE(message(R"({"output": {"column": "g9"}})").find("output.column"), std::string::npos);
  EXPECT_NE(message(R"({"sweep": {"axis1": {"name": "z", "min": 0, "max": 1, "count": 3}}})").find("sweep.axis1.name"),
            std::string::npos);
  EXPECT_NE(message(R"({"sweep": {"observables": ["g2"]}})").find("sweep.axis1"), std::string::npos);
  EXPECT_NE(message("{\"model\": ").find("malformed"), std::string::npos);
}

TEST(Config, EchoReparsesToEqualConfig) {
  const RunConfig c = parse_config_text(R"({
    "model": {"delta": 1.1, "omega0": 1, "g": 0.3, "r": 0.2, "u": -0.4, "n_tr": 90},
    "bath": {"kt_q": 0.05, "kt_c": 0.09},
    "n_levels": 30,
    "spectrum": {"g_min": 0, "g_max": 1.5, "count": 7, "levels": 4},
    "critical": {"pairs": [0, 2], "steps": 50},
    "sweep": {"axis1": {"name": "g", "min": 0.1, "max": 0.9, "count": 5},
              "axis2": {"name": "kt", "min": 0.01, "max": 0.2, "count": 4},
              "observables": ["g2", "squeezing"], "n_tr": 70},
    "output": {"dir": "somewhere", "scale": "log10", "plot": true, "column": "xi_b2"}
  })");
  const RunConfig again = parse_config(to_json(c));
  EXPECT_EQ(c, again);
  EXPECT_EQ(to_json(c).dump(), to_json(again).dump());
  const SweepSpec s = sweep_spec(c);
  EXPECT_EQ(s.model.n_tr, 70);
  EXPECT_FALSE(s.observables.g3);
  EXPECT_TRUE(s.observables.squeezing);
}
