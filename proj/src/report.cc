// Copyright 2026 The hfwarn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hfwarn/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

namespace hfwarn {

std::string FormatNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string();
}

void WriteTraceCsv(std::ostream& out, const SimulationResult& result) {
  out << "t,ego_v,ego_a,ego_x,ego_y";
  if (!result.steps.empty()) {
    for (const auto& a : result.steps.front().agents) {
      out << ',' << a.agent_id << "_v_obj," << a.agent_id << "_v_per," << a.agent_id
          << "_aware";
    }
  }
  out << ",R_per,R_obj,W_novel,W_baseline,novel_active,baseline_active,v_target,lane_change,"
         "ego_path\n";
  for (const auto& s : result.steps) {
    out << FormatNumber(s.t) << ',' << FormatNumber(s.ego_speed) << ','
        << FormatNumber(s.ego_accel) << ',' << FormatNumber(s.ego_position.x) << ','
        << FormatNumber(s.ego_position.y);
    for (const auto& a : s.agents) {
      out << ',' << FormatNumber(a.v_obj) << ',' << FormatNumber(a.v_per) << ','
          << (a.aware ? 1 : 0);
    }
    const auto& w = s.sample;
    out << ',' << FormatNumber(w.r_per) << ',' << FormatNumber(w.w_novel) << ','
        << FormatNumber(w.w_novel) << ',' << FormatNumber(w.w_baseline) << ','
        << (w.novel_active ? 1 : 0) << ',' << (w.baseline_active ? 1 : 0) << ','
        << FormatNumber(s.v_target) << ',' << (s.lane_change ? 1 : 0) << ',' << s.ego_path
        << '\n';
  }
}

void WriteSummary(std::ostream& out, const SimulationResult& result,
                  const WarningConfig& config) {
  auto opt = [](const std::optional<double>& v) { return v ? FormatNumber(*v) : "none"; };
  out << "scenario: " << result.scenario << '\n'
      << "w_thr: " << FormatNumber(config.w_thr) << '\n'
      << "w_thr_baseline: " << FormatNumber(config.w_thr_baseline) << '\n'
      << "first_novel_warning: " << opt(result.onsets.t_novel) << '\n'
      << "first_baseline_warning: " << opt(result.onsets.t_baseline) << '\n'
      << "lead: " << opt(result.onsets.lead) << '\n'
      << "collision_time: " << opt(result.collision_time) << '\n'
      << "collision_with: " << (result.collision_with.empty() ? "none" : result.collision_with)
      << '\n'
      << "samples: " << result.steps.size() << '\n';
}

void WriteRiskMapCsv(std::ostream& out, const RiskMap& map) {
  out << "tau\\v";
  for (double v : map.velocities) out << ',' << FormatNumber(v);
  out << '\n';
  for (std::size_t k = 0; k < map.times.size(); ++k) {
    out << FormatNumber(map.times[k]);
    for (std::size_t i = 0; i < map.velocities.size(); ++i) out << ',' << FormatNumber(map.At(k, i));
    out << '\n';
  }
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 320.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 40.0;

struct Axes {
  double t0, t1, y0, y1;
  double X(double t) const { return kLeft + (t - t0) / (t1 - t0) * (kWidth - kLeft - kRight); }
  double Y(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void SvgOpen(std::ostream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"14\">" << title << "</text>\n";
}

void SvgFrame(std::ostream& out, const Axes& ax, const std::string& xlabel,
              const std::vector<std::pair<double, std::string>>& yticks) {
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double span = ax.t1 - ax.t0;
  const double step = span > 20 ? 5.0 : (span > 8 ? 2.0 : 1.0);
  for (double t = std::ceil(ax.t0 / step) * step; t <= ax.t1 + 1e-9; t += step) {
    out << "<text x=\"" << FormatNumber(ax.X(t)) << "\" y=\"" << kHeight - kBottom + 14
        << "\" text-anchor=\"middle\">" << FormatNumber(t) << "</text>\n";
  }
  for (const auto& [y, label] : yticks) {
    out << "<text x=\"" << kLeft - 4 << "\" y=\"" << FormatNumber(ax.Y(y) + 4)
        << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
}

void SvgPolyline(std::ostream& out, const Axes& ax, const std::vector<double>& t,
                 const std::vector<double>& y, const char* color, const char* dash = nullptr) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double yy = std::clamp(y[i], ax.y0, ax.y1);
    out << FormatNumber(ax.X(t[i])) << ',' << FormatNumber(ax.Y(yy)) << ' ';
  }
  out << "\"/>\n";
}

void SvgLegend(std::ostream& out, double x, double y, const char* color, const std::string& label) {
  out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 20 << "\" y2=\"" << y
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << x + 24 << "\" y=\"" << y + 4 << "\">" << label << "</text>\n";
}

}  // namespace

void WriteWarningSvg(std::ostream& out, const SimulationResult& result,
                     const WarningConfig& config) {
  std::vector<double> t, novel, base;
  constexpr double kFloor = -8.0;
  auto lg = [&](double v) { return v > 0.0 ? std::max(kFloor, std::log10(v)) : kFloor; };
  for (const auto& s : result.steps) {
    t.push_back(s.t);
    novel.push_back(lg(s.sample.w_novel));
    base.push_back(lg(s.sample.w_baseline));
  }
  const double t1 = t.empty() ? 1.0 : std::max(1.0, t.back());
  const Axes ax{0.0, t1, kFloor, 0.0};
  SvgOpen(out, "warning signal W(t): " + result.scenario);
  std::vector<std::pair<double, std::string>> ticks;
  for (int e = static_cast<int>(kFloor); e <= 0; e += 2) ticks.push_back({e, "1e" + std::to_string(e)});
  SvgFrame(out, ax, "t [s]", ticks);
  SvgPolyline(out, ax, {0.0, t1}, {lg(config.w_thr), lg(config.w_thr)}, "#1f77b4", "4 3");
  SvgPolyline(out, ax, {0.0, t1}, {lg(config.w_thr_baseline), lg(config.w_thr_baseline)},
              "#d62728", "4 3");
  SvgPolyline(out, ax, t, novel, "#1f77b4");
  SvgPolyline(out, ax, t, base, "#d62728");
  SvgLegend(out, kLeft + 10, kTop + 14, "#1f77b4", "human factors");
  SvgLegend(out, kLeft + 130, kTop + 14, "#d62728", "baseline");
  out << "</svg>\n";
}

void WriteVelocityAccelSvg(std::ostream& out, const SimulationResult& result) {
  std::vector<double> t, v, a;
  for (const auto& s : result.steps) {
    t.push_back(s.t);
    v.push_back(s.ego_speed);
    a.push_back(s.ego_accel);
  }
  const double t1 = t.empty() ? 1.0 : std::max(1.0, t.back());
  const Axes ax{0.0, t1, -5.0, 20.0};
  SvgOpen(out, "ego velocity [m/s] and acceleration [m/s^2]: " + result.scenario);
  std::vector<std::pair<double, std::string>> ticks;
  for (int y = -5; y <= 20; y += 5) ticks.push_back({y, std::to_string(y)});
  SvgFrame(out, ax, "t [s]", ticks);
  SvgPolyline(out, ax, {0.0, t1}, {0.0, 0.0}, "#999999", "2 2");
  SvgPolyline(out, ax, t, v, "#2ca02c");
  SvgPolyline(out, ax, t, a, "#ff7f0e");
  SvgLegend(out, kLeft + 10, kTop + 14, "#2ca02c", "velocity");
  SvgLegend(out, kLeft + 110, kTop + 14, "#ff7f0e", "acceleration");
  out << "</svg>\n";
}

void WriteComparisonCsv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << "scenario,t_novel,t_baseline,lead,collision\n";
  for (const auto& r : rows) {
    out << r.scenario << ',' << FormatOptional(r.t_novel) << ',' << FormatOptional(r.t_baseline)
        << ',' << FormatOptional(r.lead) << ',' << FormatOptional(r.collision) << '\n';
  }
}

void WriteComparisonTable(std::ostream& out, std::span<const ComparisonRow> rows) {
  auto cell = [](const std::optional<double>& v) {
    char buf[32];
    if (!v) return std::string("-");
    std::snprintf(buf, sizeof(buf), "%.1f", *v);
    return std::string(buf);
  };
  char line[160];
  std::snprintf(line, sizeof(line), "%-32s %8s %10s %6s %9s\n", "scenario", "t_novel",
                "t_baseline", "lead", "collision");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-32s %8s %10s %6s %9s\n", r.scenario.c_str(),
                  cell(r.t_novel).c_str(), cell(r.t_baseline).c_str(), cell(r.lead).c_str(),
                  cell(r.collision).c_str());
    out << line;
  }
}

void WriteCalibrationCsv(std::ostream& out, const CalibrationReport& report) {
  out << "scenario,max_W_novel,max_W_baseline,novel_false_positive,baseline_false_positive\n";
  for (const auto& r : report.rows) {
    out << r.scenario << ',' << FormatNumber(r.max_novel) << ',' << FormatNumber(r.max_baseline)
        << ',' << (r.novel_false_positive ? 1 : 0) << ',' << (r.baseline_false_positive ? 1 : 0)
        << '\n';
  }
}

void WriteCalibrationText(std::ostream& out, const CalibrationReport& report) {
  char line[160];
  std::snprintf(line, sizeof(line), "%-34s %14s %14s\n", "scenario", "max W_novel",
                "max W_baseline");
  out << line;
  double worst_n = 0.0, worst_b = 0.0;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof(line), "%-34s %14.4e %14.4e%s\n", r.scenario.c_str(), r.max_novel,
                  r.max_baseline,
                  (r.novel_false_positive || r.baseline_false_positive) ? "  FALSE POSITIVE" : "");
    out << line;
    worst_n = std::max(worst_n, r.max_novel);
    worst_b = std::max(worst_b, r.max_baseline);
  }
  std::snprintf(line, sizeof(line),
                "corpus maximum: W_novel %.4e (proposed w_thr %.1e), W_baseline %.4e (proposed "
                "w_thr_baseline %.1e)\n",
                worst_n, report.proposed.w_thr, worst_b, report.proposed.w_thr_baseline);
  out << line;
  if (report.kept_proposed) {
    out << "proposed thresholds raise no warning on the zero-error corpus; keeping them\n";
  } else {
    out << "proposed thresholds produce false positives; moved to the next 1-2-5 step above "
           "the corpus maximum\n";
  }
  std::snprintf(line, sizeof(line), "chosen: w_thr=%.1e w_thr_baseline=%.1e\n",
                report.chosen.w_thr, report.chosen.w_thr_baseline);
  out << line;
}

}  // namespace hfwarn
