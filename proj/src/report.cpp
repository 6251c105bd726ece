// Copyright 2026 The semsec Authors
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

#include "semsec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>


namespace semsec {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::runtime_error("bad " + what + ": '" + s + "'");
  return v;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_sig6(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("format_sig6: non-finite value");
  if (value == 0.0) return "0.00000";
  // The exponent after rounding to 6 digits decides the decimal count.
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
  const int decimals = std::max(0, 5 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos) return "0.00000";  // no "-0.0"
  return s;
}

void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << to_string(r.scheme) << ',' << format_sig6(r.p_bar) << ',' << r.k << ','
        << format_sig6(r.ergodic_rate) << ',' << format_sig6(r.avg_power) << ','
        << (r.duality_gap ? format_sig6(*r.duality_gap) : std::string()) << ','
        << format_sig6(r.wall_ms) << ',' << r.seed << '\n';
  }
  finish(out, path);
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw std::runtime_error(path.string() + ": unexpected header");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 8) throw std::runtime_error(where + ": expected 8 fields");
    SweepRow r;
    const auto scheme = parse_scheme(f[0]);
    if (!scheme) throw std::runtime_error(where + ": unknown scheme '" + f[0] + "'");
    r.scheme = *scheme;
    r.p_bar = parse_double(f[1], "p_bar_w");
    r.k = static_cast<int>(parse_double(f[2], "k"));
    r.ergodic_rate = parse_double(f[3], "ergodic_secrecy_rate_bps_hz");
    r.avg_power = parse_double(f[4], "avg_power_w");
    if (!f[5].empty()) r.duality_gap = parse_double(f[5], "duality_gap");
    r.wall_ms = parse_double(f[6], "wall_ms");
    try {
      r.seed = std::stoull(f[7]);
    } catch (const std::exception&) {
      throw std::runtime_error(where + ": bad seed '" + f[7] + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

void emit_allocations(const SweepCell& cell, std::span<const FadingState> states,
                      const std::filesystem::path& path) {
  if (cell.allocations.size() != states.size() || cell.rates.size() != states.size()) {
    throw std::invalid_argument("emit_allocations: cell and state counts differ");
  }
  std::ofstream out = open_out(path);
  out << "state,g_l,g_e,p_w,beta,mu,secrecy_rate_bps_hz\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Allocation& a = cell.allocations[i];
    out << i << ',' << fmt("%.17g", states[i].g_l) << ',' << fmt("%.17g", states[i].g_e) << ','
        << fmt("%.17g", a.p) << ',' << fmt("%.17g", a.beta) << ','
        << static_cast<int>(mu_value(a.mu)) << ',' << fmt("%.17g", cell.rates[i]) << '\n';
  }
  finish(out, path);
}

void emit_plot(std::span<const SweepRow> rows, const std::filesystem::path& path,
               const std::string& title) {
  if (rows.empty()) throw std::invalid_argument("emit_plot: no rows");

  std::map<std::pair<SchemeKind, int>, std::vector<std::pair<double, double>>> series;
  for (const SweepRow& r : rows) {
    if (!(r.p_bar > 0.0)) throw std::invalid_argument("emit_plot: P_avg must be positive");
    series[{r.scheme, r.k}].emplace_back(r.p_bar, r.ergodic_rate);
  }
  bool one_k = true;
  for (const auto& [key, _] : series) one_k = one_k && key.second == series.begin()->first.second;

  double x_lo = rows[0].p_bar, x_hi = x_lo, y_hi = 0.0;
  for (const SweepRow& r : rows) {
    x_lo = std::min(x_lo, r.p_bar);
    x_hi = std::max(x_hi, r.p_bar);
    y_hi = std::max(y_hi, r.ergodic_rate);
  }
  const double dec_lo = std::floor(std::log10(x_lo));
  const double dec_hi = std::max(std::ceil(std::log10(x_hi)), dec_lo + 1.0);
  const double y_step = y_hi > 0.0 ? std::pow(10.0, std::floor(std::log10(y_hi / 4.0))) : 1.0;
  const double y_top = y_hi > 0.0 ? std::ceil(y_hi * 1.05 / y_step) * y_step : 1.0;

  constexpr double kW = 720, kH = 480, kL = 70, kR = 200, kT = 40, kB = 60;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  auto sx = [&](double x) { return kL + (std::log10(x) - dec_lo) / (dec_hi - dec_lo) * pw; };
  auto sy = [&](double y) { return kT + ph - y / y_top * ph; };

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                            "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  static constexpr const char* kMarkers[] = {"circle", "rect", "diamond", "triangle"};

  std::ofstream out = open_out(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kL + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";

  // Grid and ticks.
  for (double d = dec_lo; d <= dec_hi + 1e-9; d += 1.0) {
    const double x = sx(std::pow(10.0, d));
    out << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << kT << "\" x2=\"" << fmt("%.2f", x)
        << "\" y2=\"" << kT + ph << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << kT + ph + 18
        << "\" text-anchor=\"middle\">" << fmt("%g", std::pow(10.0, d)) << "</text>\n";
    for (int m = 2; m < 10 && d < dec_hi; ++m) {
      const double xm = sx(m * std::pow(10.0, d));
      out << "<line x1=\"" << fmt("%.2f", xm) << "\" y1=\"" << kT + ph << "\" x2=\""
          << fmt("%.2f", xm) << "\" y2=\"" << kT + ph - 4 << "\" stroke=\"#888\"/>\n";
    }
  }
  for (double y = 0.0; y <= y_top + 1e-9 * y_top; y += y_step) {
    out << "<line x1=\"" << kL << "\" y1=\"" << fmt("%.2f", sy(y)) << "\" x2=\"" << kL + pw
        << "\" y2=\"" << fmt("%.2f", sy(y)) << "\" stroke=\"#eee\"/>\n"
        << "<text x=\"" << kL - 6 << "\" y=\"" << fmt("%.2f", sy(y) + 4)
        << "\" text-anchor=\"end\">" << fmt("%g", y) << "</text>\n";
  }
  out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 15
      << "\" text-anchor=\"middle\">Average transmit power P_avg (W)</text>\n"
      << "<text transform=\"translate(18," << kT + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">Ergodic secrecy rate (bit/s/Hz)</text>\n";

  std::size_t idx = 0;
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    const char* color = kColors[idx % std::size(kColors)];
    const char* marker = kMarkers[idx % std::size(kMarkers)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < pts.size(); ++j) {
      out << (j ? " " : "") << fmt("%.2f", sx(pts[j].first)) << ','
          << fmt("%.2f", sy(pts[j].second));
    }
    out << "\"/>\n";
    auto draw_marker = [&](double x, double y) {
      const std::string m = marker;
      if (m == "circle") {
        out << "<circle cx=\"" << fmt("%.2f", x) << "\" cy=\"" << fmt("%.2f", y)
            << "\" r=\"4\" fill=\"" << color << "\"/>\n";
      } else if (m == "rect") {
        out << "<rect x=\"" << fmt("%.2f", x - 4) << "\" y=\"" << fmt("%.2f", y - 4)
            << "\" width=\"8\" height=\"8\" fill=\"" << color << "\"/>\n";
      } else if (m == "diamond") {
        out << "<polygon points=\"" << fmt("%.2f", x) << ',' << fmt("%.2f", y - 5) << ' '
            << fmt("%.2f", x + 5) << ',' << fmt("%.2f", y) << ' ' << fmt("%.2f", x) << ','
            << fmt("%.2f", y + 5) << ' ' << fmt("%.2f", x - 5) << ',' << fmt("%.2f", y)
            << "\" fill=\"" << color << "\"/>\n";
      } else {
        out << "<polygon points=\"" << fmt("%.2f", x) << ',' << fmt("%.2f", y - 5) << ' '
            << fmt("%.2f", x + 5) << ',' << fmt("%.2f", y + 4) << ' ' << fmt("%.2f", x - 5)
            << ',' << fmt("%.2f", y + 4) << "\" fill=\"" << color << "\"/>\n";
      }
    };
    for (const auto& [x, y] : pts) draw_marker(sx(x), sy(y));

    std::string label(to_string(key.first));
    if (!one_k) label += ", K=" + std::to_string(key.second);
    const double ly = kT + 10 + 22.0 * static_cast<double>(idx);
    const double lx = kL + pw + 15;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    draw_marker(lx + 15, ly);
    out << "<text x=\"" << lx + 38 << "\" y=\"" << ly + 4 << "\">" << xml_escape(label)
        << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
  finish(out, path);
}

}  // namespace semsec
