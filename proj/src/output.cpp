// Copyright 2026 The tnm Authors
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

#include "tnm/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tnm/error.hpp"

namespace tnm {

namespace {

using nlohmann::json;

std::string header_name(const Column& c) { return c.unit.empty() ? c.name : c.name + " [" + c.unit + "]"; }

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

std::string esc(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string axis_label(const Table& t, const std::string& col) {
  const Column& c = t.columns[t.column(col)];
  if (c.unit.empty()) return c.name;
  std::string unit = c.unit;
  // Units are written in plain ASCII in data files; plots use the symbol.
  const auto pos = unit.find("omega_r");
  if (pos != std::string::npos) unit.replace(pos, 7, "ω_R");
  return c.name + " [" + unit + "]";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Five-stop perceptual ramp, dark blue to yellow.
std::string color_ramp(double u) {
  static const double stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  u = std::clamp(u, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(u));
  const double f = u - i;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Frame {
  double width = 640, height = 480;
  double left = 80, right = 30, top = 40, bottom = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

void widen(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
}

std::string open_svg(const Frame& f, const std::string& title) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(f.width) + "\" height=\"" +
       num(f.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(f.width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + esc(title) +
       "</text>\n";
  return s;
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel, bool log_x, bool log_y) {
  std::string s;
  const double xa = f.left, xb = f.width - f.right, ya = f.height - f.bottom, yb = f.top;
  s += "<rect x=\"" + num(xa) + "\" y=\"" + num(yb) + "\" width=\"" + num(xb - xa) + "\" height=\"" + num(ya - yb) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double vx = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double vy = f.y0 + (f.y1 - f.y0) * k / 4.0;
    const double X = f.px(vx), Y = f.py(vy);
    s += "<line x1=\"" + num(X) + "\" y1=\"" + num(ya) + "\" x2=\"" + num(X) + "\" y2=\"" + num(ya + 5) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(X) + "\" y=\"" + num(ya + 18) + "\" text-anchor=\"middle\">" +
         tick(log_x ? std::pow(10.0, vx) : vx) + "</text>\n";
    s += "<line x1=\"" + num(xa - 5) + "\" y1=\"" + num(Y) + "\" x2=\"" + num(xa) + "\" y2=\"" + num(Y) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(xa - 8) + "\" y=\"" + num(Y + 4) + "\" text-anchor=\"end\">" +
         tick(log_y ? std::pow(10.0, vy) : vy) + "</text>\n";
  }
  s += "<text x=\"" + num((xa + xb) / 2) + "\" y=\"" + num(f.height - 15) + "\" text-anchor=\"middle\">" +
       esc(xlabel) + "</text>\n";
  s += "<text x=\"18\" y=\"" + num((ya + yb) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num((ya + yb) / 2) + ")\">" + esc(ylabel) + "</text>\n";
  return s;
}

std::string heatmap(const ExperimentResult& r, const PlotSpec& p, const Table& t) {
  const auto xs = t.values(p.x), ys = t.values(p.y), zs = t.values(p.z);
  const std::set<double> ux(xs.begin(), xs.end()), uy(ys.begin(), ys.end());
  const std::vector<double> vx(ux.begin(), ux.end()), vy(uy.begin(), uy.end());
  double zlo = std::numeric_limits<double>::infinity(), zhi = -zlo;
  for (double z : zs) {
    if (std::isfinite(z)) {
      zlo = std::min(zlo, z);
      zhi = std::max(zhi, z);
    }
  }
  if (!std::isfinite(zlo)) zlo = 0.0, zhi = 1.0;
  widen(zlo, zhi);
  Frame f;
  f.right = 110;
  // Cells are centred on grid values.
  auto half = [](const std::vector<double>& v) { return v.size() > 1 ? 0.5 * (v[1] - v[0]) : 0.5; };
  f.x0 = vx.front() - half(vx);
  f.x1 = vx.back() + half(vx);
  f.y0 = vy.front() - half(vy);
  f.y1 = vy.back() + half(vy);
  std::string s = open_svg(f, p.title);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const auto ix = std::lower_bound(vx.begin(), vx.end(), xs[k]) - vx.begin();
    const auto iy = std::lower_bound(vy.begin(), vy.end(), ys[k]) - vy.begin();
    const double xa = ix > 0 ? 0.5 * (vx[ix - 1] + vx[ix]) : f.x0;
    const double xb = ix + 1 < static_cast<long>(vx.size()) ? 0.5 * (vx[ix] + vx[ix + 1]) : f.x1;
    const double ya = iy > 0 ? 0.5 * (vy[iy - 1] + vy[iy]) : f.y0;
    const double yb = iy + 1 < static_cast<long>(vy.size()) ? 0.5 * (vy[iy] + vy[iy + 1]) : f.y1;
    const std::string fill = std::isfinite(zs[k]) ? color_ramp((zs[k] - zlo) / (zhi - zlo)) : "#bbbbbb";
    s += "<rect x=\"" + num(f.px(xa)) + "\" y=\"" + num(f.py(yb)) + "\" width=\"" + num(f.px(xb) - f.px(xa) + 0.3) +
         "\" height=\"" + num(f.py(ya) - f.py(yb) + 0.3) + "\" fill=\"" + fill + "\"/>\n";
  }
  s += axes(f, axis_label(t, p.x), axis_label(t, p.y), false, false);
  const double bx = f.width - f.right + 20, top = f.top, h = f.height - f.top - f.bottom;
  for (int k = 0; k < 50; ++k) {
    s += "<rect x=\"" + num(bx) + "\" y=\"" + num(top + h * (49 - k) / 50.0) + "\" width=\"16\" height=\"" +
         num(h / 50.0 + 0.3) + "\" fill=\"" + color_ramp(k / 49.0) + "\"/>\n";
  }
  s += "<text x=\"" + num(bx + 20) + "\" y=\"" + num(top + 10) + "\">" + tick(zhi) + "</text>\n";
  s += "<text x=\"" + num(bx + 20) + "\" y=\"" + num(top + h) + "\">" + tick(zlo) + "</text>\n";
  s += "<text x=\"" + num(bx) + "\" y=\"" + num(top - 8) + "\">" + esc(axis_label(t, p.z)) + "</text>\n";
  (void)r;
  return s + "</svg>\n";
}

std::string lines(const PlotSpec& p, const Table& t) {
  const bool log = p.kind == PlotKind::kLogLog;
  const auto xs = t.values(p.x), ys = t.values(p.y);
  std::vector<double> groups(xs.size(), 0.0);
  if (!p.z.empty()) groups = t.values(p.z);
  std::vector<double> keys;
  for (double g : groups) {
    if (std::find(keys.begin(), keys.end(), g) == keys.end()) keys.push_back(g);
  }
  auto tx = [&](double v) { return log ? std::log10(v) : v; };
  auto usable = [&](std::size_t k) {
    return std::isfinite(xs[k]) && std::isfinite(ys[k]) && (!log || (xs[k] > 0.0 && ys[k] > 0.0));
  };
  Frame f;
  f.right = p.z.empty() ? 30 : 120;
  f.x0 = f.y0 = std::numeric_limits<double>::infinity();
  f.x1 = f.y1 = -f.x0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!usable(k)) continue;
    f.x0 = std::min(f.x0, tx(xs[k]));
    f.x1 = std::max(f.x1, tx(xs[k]));
    f.y0 = std::min(f.y0, tx(ys[k]));
    f.y1 = std::max(f.y1, tx(ys[k]));
  }
  if (!std::isfinite(f.x0)) f.x0 = 0, f.x1 = 1, f.y0 = 0, f.y1 = 1;
  widen(f.x0, f.x1);
  widen(f.y0, f.y1);
  const double pad = 0.04 * (f.y1 - f.y0);
  f.y0 -= pad;
  f.y1 += pad;
  std::string s = open_svg(f, p.title);
  s += axes(f, (log ? "log " : "") + axis_label(t, p.x), (log ? "log " : "") + axis_label(t, p.y), log, log);
  for (std::size_t gi = 0; gi < keys.size(); ++gi) {
    const char* color = kPalette[gi % 8];
    std::string pts;
    std::size_t count = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (groups[k] != keys[gi] || !usable(k)) continue;
      pts += num(f.px(tx(xs[k]))) + "," + num(f.py(tx(ys[k]))) + " ";
      ++count;
    }
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
         "\"/>\n";
    if (count <= 12) {
      for (std::size_t k = 0; k < xs.size(); ++k) {
        if (groups[k] != keys[gi] || !usable(k)) continue;
        s += "<circle cx=\"" + num(f.px(tx(xs[k]))) + "\" cy=\"" + num(f.py(tx(ys[k]))) + "\" r=\"3\" fill=\"" +
             color + "\"/>\n";
      }
    }
    if (!p.z.empty()) {
      const double ly = f.top + 16 * gi + 10;
      s += "<line x1=\"" + num(f.width - 110) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(f.width - 90) + "\" y2=\"" +
           num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
      s += "<text x=\"" + num(f.width - 85) + "\" y=\"" + num(ly + 4) + "\">" + esc(p.z) + "=" + tick(keys[gi]) +
           "</text>\n";
    }
  }
  return s + "</svg>\n";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += quote(header_name(t.columns[i]));
  }
  out += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += ch;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kIo, "CSV ends inside a quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

Table table_from_csv(std::string_view text, const std::string& name) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::kIo, "CSV has no header");
  Table t{name, {}, {}};
  for (const auto& h : rows.front()) {
    const auto open = h.rfind(" [");
    if (open != std::string::npos && h.back() == ']') {
      t.columns.push_back({h.substr(0, open), h.substr(open + 2, h.size() - open - 3)});
    } else {
      t.columns.push_back({h, ""});
    }
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != t.columns.size()) {
      throw Error(ErrorCode::kIo, "CSV row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                      " fields, header has " + std::to_string(t.columns.size()));
    }
    std::vector<double> values;
    for (const auto& cell : rows[r]) {
      if (cell.empty()) {
        values.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::kIo, "CSV row " + std::to_string(r + 1) + ": '" + cell + "' is not a number");
      }
      values.push_back(v);
    }
    t.rows.push_back(std::move(values));
  }
  return t;
}

std::string to_json_summary(const ExperimentResult& r, const std::vector<std::string>& files) {
  json j;
  j["tag"] = r.tag;
  j["version"] = r.version;
  j["timestamp"] = r.timestamp;
  j["config"] = r.config_echo;
  json scalars = json::object();
  for (const auto& [k, v] : r.scalars) scalars[k] = number_or_null(v);
  j["scalars"] = scalars;
  j["notes"] = r.notes;
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"point", f.point}, {"message", f.message}});
  j["failures"] = failures;
  json tables = json::array();
  for (const auto& t : r.tables) {
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    tables.push_back({{"name", t.name}, {"columns", cols}, {"rows", t.rows.size()}});
  }
  j["tables"] = tables;
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::string failures_json(const ExperimentResult& r) {
  json j;
  j["tag"] = r.tag;
  j["failed"] = r.failures.size();
  json items = json::array();
  for (const auto& f : r.failures) items.push_back({{"point", f.point}, {"message", f.message}});
  j["failures"] = items;
  return j.dump(2) + "\n";
}

std::string render_svg(const ExperimentResult& r, const PlotSpec& p) {
  const Table& t = r.table(p.table);
  if (p.kind == PlotKind::kHeatmap) return heatmap(r, p, t);
  PlotSpec q = p;
  if (p.kind == PlotKind::kParametric) q.z.clear();
  return lines(q, t);
}

std::vector<std::filesystem::path> emit_results(const ExperimentResult& r, const OutputConfig& out) {
  namespace fs = std::filesystem;
  const fs::path dir(out.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory '" + dir.string() + "': " + ec.message());
  auto wants = [&](std::string_view f) {
    return std::find(out.formats.begin(), out.formats.end(), f) != out.formats.end();
  };
  std::vector<fs::path> written;
  const std::string stem = r.tag;
  const fs::path echo = dir / (stem + "_config.ini");
  write_file(echo, r.config_echo);
  written.push_back(echo);
  if (wants("csv")) {
    for (const auto& t : r.tables) {
      const fs::path p = dir / (stem + "_" + t.name + ".csv");
      write_file(p, to_csv(t));
      written.push_back(p);
    }
  }
  if (wants("svg")) {
    for (const auto& plot : r.plots) {
      const fs::path p = dir / (stem + "_" + plot.name + ".svg");
      write_file(p, render_svg(r, plot));
      written.push_back(p);
    }
  }
  const fs::path failures = dir / "failures.json";
  if (!r.failures.empty()) {
    write_file(failures, failures_json(r));
    written.push_back(failures);
  } else {
    fs::remove(failures, ec);
  }
  if (wants("json")) {
    const fs::path p = dir / (stem + "_summary.json");
    std::vector<std::string> names;
    for (const auto& w : written) names.push_back(w.filename().string());
    write_file(p, to_json_summary(r, names));
    written.push_back(p);
  }
  return written;
}

}  // namespace tnm
