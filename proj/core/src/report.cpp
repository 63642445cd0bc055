#include "cosmos/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cosmos/error.hpp"
#include "cosmos/fsutil.hpp"

namespace cosmos::metrics {

namespace {

struct MeanStd {
  double mean = 0.0, std = 0.0;
};

MeanStd mean_pop_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(var / static_cast<double>(xs.size()));
  return r;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::string(buf);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

const ReportRow* StudyReport::find(const std::string& method, const std::string& cls) const {
  for (const auto& r : rows)
    if (r.method == method && r.cls == cls) return &r;
  return nullptr;
}

std::vector<ReportRow> aggregate_scores(const std::string& method,
                                        const std::vector<CaseScore>& scores) {
  std::vector<double> dv, dc, dm, av, ac, am;
  for (const auto& s : scores) {
    dv.push_back(s.dice_vs);
    dc.push_back(s.dice_cochlea);
    dm.push_back(0.5 * (s.dice_vs + s.dice_cochlea));
    av.push_back(s.assd_vs);
    ac.push_back(s.assd_cochlea);
    am.push_back(0.5 * (s.assd_vs + s.assd_cochlea));
  }
  auto make = [&](const std::string& cls, const std::vector<double>& d, const std::vector<double>& a) {
    auto dms = mean_pop_std(d);
    auto ams = mean_pop_std(a);
    return ReportRow{method, cls, dms.mean, dms.std, ams.mean, ams.std, static_cast<int>(scores.size())};
  };
  return {make("VS", dv, av), make("cochlea", dc, ac), make("mean", dm, am)};
}

void write_report_csv(const StudyReport& report, const std::string& path) {
  std::ostringstream os;
  os << "method,class,dice_mean,dice_std_pop,assd_mean,assd_std_pop,n_cases\n";
  for (const auto& r : report.rows) {
    os << r.method << ',' << r.cls << ',' << fmt6(r.dice_mean) << ',' << fmt6(r.dice_std) << ','
       << fmt6(r.assd_mean) << ',' << fmt6(r.assd_std) << ',' << r.n_cases << '\n';
  }
  atomic_write_text(path, os.str());
}

StudyReport read_report_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("report: cannot open '" + path + "'");
  StudyReport rep;
  std::string line;
  if (!std::getline(f, line)) throw IoError("report: '" + path + "' is empty");
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 7) throw IoError("report: malformed CSV row '" + line + "'");
    ReportRow r;
    r.method = fields[0];
    r.cls = fields[1];
    r.dice_mean = std::stod(fields[2]);
    r.dice_std = std::stod(fields[3]);
    r.assd_mean = std::stod(fields[4]);
    r.assd_std = std::stod(fields[5]);
    r.n_cases = std::stoi(fields[6]);
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

namespace {

// Minimal hand-rolled SVG; no plotting dependency needed for two charts.
struct SvgCanvas {
  std::ostringstream os;
  int width, height;
  SvgCanvas(int w, int h) : width(w), height(h) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string& color) {
    os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
       << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& color, const std::string& cls) {
    os << "<circle class=\"" << cls << "\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
       << "\" fill=\"" << color << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 11) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
       << "\" font-family=\"sans-serif\">" << s << "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto& [x, y] : pts) os << x << ',' << y << ' ';
    os << "\"/>\n";
  }
  std::string finish() {
    os << "</svg>\n";
    return os.str();
  }
};

}  // namespace

void write_scatter_svg(const StudyReport& report, const std::string& path) {
  std::vector<const ReportRow*> rows;
  for (const auto& r : report.rows)
    if (r.cls == "mean") rows.push_back(&r);
  if (rows.empty()) throw Error("scatter plot: report has no 'mean' rows");

  double amax = 0.0;
  for (auto* r : rows) amax = std::max(amax, r->assd_mean);
  amax = std::max(amax, 1e-6);

  const int W = 480, H = 360, M = 50;
  SvgCanvas svg(W, H);
  svg.line(M, H - M, W - 10, H - M, "black");
  svg.line(M, H - M, M, 10, "black");
  svg.text(W / 2 - 30, H - 12, "mean Dice");
  svg.text(6, 20, "mean ASSD (mm)");
  auto px = [&](double dice_v) { return M + dice_v * (W - M - 20); };
  auto py = [&](double assd_v) { return (H - M) - (assd_v / amax) * (H - M - 30); };
  for (auto* r : rows) {
    svg.circle(px(r->dice_mean), py(r->assd_mean), 4, "crimson", "method");
    svg.text(px(r->dice_mean) + 6, py(r->assd_mean) - 4, r->method);
  }
  atomic_write_text(path, svg.finish());
}

void write_trend_svg(const StudyReport& report, const std::vector<std::string>& methods_in_order,
                     const std::string& path) {
  if (methods_in_order.empty()) throw Error("trend plot: no methods given");
  const int W = 480, H = 360, M = 50;
  SvgCanvas svg(W, H);
  svg.line(M, H - M, W - 10, H - M, "black");
  svg.line(M, H - M, M, 10, "black");
  svg.text(W / 2 - 60, H - 12, "self-training iteration");
  svg.text(6, 20, "Dice");
  const int n = static_cast<int>(methods_in_order.size());
  auto px = [&](int i) { return M + (n == 1 ? 0.5 : double(i) / (n - 1)) * (W - M - 30); };
  auto py = [&](double d) { return (H - M) - d * (H - M - 30); };

  const std::pair<std::string, std::string> classes[] = {{"VS", "seagreen"}, {"cochlea", "steelblue"}};
  for (const auto& [cls, color] : classes) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < n; ++i) {
      const ReportRow* r = report.find(methods_in_order[i], cls);
      if (!r) throw Error("trend plot: missing row for method '" + methods_in_order[i] + "' class '" + cls + "'");
      pts.emplace_back(px(i), py(r->dice_mean));
    }
    svg.polyline(pts, color);
    for (auto& [x, y] : pts) svg.circle(x, y, 3.5, color, cls);
  }
  for (int i = 0; i < n; ++i) svg.text(px(i) - 10, H - M + 16, methods_in_order[i]);
  atomic_write_text(path, svg.finish());
}

}  // namespace cosmos::metrics
