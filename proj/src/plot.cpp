#include "graphtic/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace graphtic {

namespace {

struct Sample {
  GroupType group;
  double signal = 0.0;
  double ln_noise = 0.0;
  bool has_ln_noise = false;
  double accuracy = 0.0;
  double time_s = 0.0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* group_color(GroupType g) {
  switch (g) {
    case GroupType::Individual: return "#0072B2";
    case GroupType::AdHocPair: return "#E69F00";
    case GroupType::NominalPair: return "#009E73";
  }
  return "#000000";
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  double px0 = 0.0, px1 = 1.0;  // pixel range; y axes pass px0 > px1

  double to_px(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

Axis make_axis(double lo, double hi, double pad_frac, double px0, double px1) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  double pad = (hi - lo) * pad_frac;
  return {lo - pad, hi + pad, px0, px1};
}

// Evenly spaced round-valued ticks, about `target` of them.
std::vector<double> nice_ticks(double lo, double hi, int target) {
  double raw = (hi - lo) / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0})
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return ticks;
}

// The noise axis keeps the ln transform visible: ticks sit on integer ln values.
std::vector<double> ln_ticks(double lo, double hi) {
  int step = std::max(1, static_cast<int>(std::lround((hi - lo) / 6.0)));
  std::vector<double> ticks;
  for (int t = static_cast<int>(std::ceil(lo)); t <= static_cast<int>(std::floor(hi));
       t += step)
    ticks.push_back(t);
  if (ticks.empty()) ticks.push_back(std::round((lo + hi) / 2.0));
  return ticks;
}

std::string placeholder_svg() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"980\" height=\"760\" "
         "viewBox=\"0 0 980 760\">\n"
         "<rect width=\"980\" height=\"760\" fill=\"#ffffff\"/>\n"
         "<text x=\"490\" y=\"380\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"20\" fill=\"#666666\">no responses to plot</text>\n</svg>\n";
}

struct Panel {
  const char* title;
  const char* x_label;
  const char* y_label;
  bool x_is_ln_noise;
  bool y_is_time;
};

}  // namespace

std::string render_plot_svg(const std::vector<ComplexityRow>& rows,
                            const std::vector<SessionRecord>& records) {
  if (records.empty()) return placeholder_svg();

  std::map<std::string, const ComplexityRow*> by_id;
  std::map<std::string, int> answers;
  for (const ComplexityRow& r : rows) {
    by_id[r.instance_id] = &r;
    answers[r.instance_id] = r.answer;
  }

  std::set<std::string> orphans;
  for (const SessionRecord& rec : records)
    for (const InstanceResponse& r : rec.responses)
      if (!by_id.count(r.instance_id)) orphans.insert(r.instance_id);
  if (!orphans.empty()) {
    std::string msg = "responses reference unknown instance ids:";
    for (const std::string& id : orphans) msg += " " + id;
    throw std::invalid_argument(msg);
  }

  std::vector<Sample> samples;
  for (const SessionRecord& rec : records)
    for (const HarmonizedResponse& h : harmonize(rec, answers)) {
      const ComplexityRow& row = *by_id.at(h.instance_id);
      Sample s;
      s.group = rec.group_type;
      s.signal = row.score.signal;
      if (row.score.noise > 0.0) {
        s.ln_noise = std::log(row.score.noise);
        s.has_ln_noise = true;
      }
      s.accuracy = h.accuracy;
      s.time_s = h.time_s;
      samples.push_back(s);
    }
  if (samples.empty()) return placeholder_svg();

  const double W = 980, H = 760;
  const double panel_w = 410, panel_h = 300;
  const double left = 70, top = 70, gap_x = 80, gap_y = 80;

  const Panel panels[4] = {
      {"accuracy vs signal", "signal", "accuracy", false, false},
      {"accuracy vs ln noise", "ln noise", "accuracy", true, false},
      {"time vs signal", "signal", "time [s]", false, true},
      {"time vs ln noise", "ln noise", "time [s]", true, true},
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
                    "\" height=\"" + fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " +
                    fmt(H) + "\">\n<rect width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
                    "\" fill=\"#ffffff\"/>\n";

  std::set<GroupType> groups;
  for (const Sample& s : samples) groups.insert(s.group);
  double lx = left;
  for (GroupType g : groups) {
    svg += "<circle cx=\"" + fmt(lx) + "\" cy=\"28\" r=\"5\" fill=\"" +
           group_color(g) + "\"/>\n<text x=\"" + fmt(lx + 12) +
           "\" y=\"33\" font-family=\"sans-serif\" font-size=\"14\">" +
           group_type_name(g) + "</text>\n";
    lx += 170;
  }

  for (int pi = 0; pi < 4; ++pi) {
    const Panel& panel = panels[pi];
    double px = left + (pi % 2) * (panel_w + gap_x);
    double py = top + (pi / 2) * (panel_h + gap_y);

    std::vector<const Sample*> pts;
    for (const Sample& s : samples)
      if (!panel.x_is_ln_noise || s.has_ln_noise) pts.push_back(&s);
    if (pts.empty()) {
      svg += "<text x=\"" + fmt(px + panel_w / 2) + "\" y=\"" + fmt(py + panel_h / 2) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
             "fill=\"#666666\">no defined points</text>\n";
      continue;
    }

    auto x_of = [&](const Sample& s) { return panel.x_is_ln_noise ? s.ln_noise : s.signal; };
    auto y_of = [&](const Sample& s) { return panel.y_is_time ? s.time_s : s.accuracy; };
    double x_lo = x_of(*pts[0]), x_hi = x_lo, y_lo = y_of(*pts[0]), y_hi = y_lo;
    for (const Sample* s : pts) {
      x_lo = std::min(x_lo, x_of(*s));
      x_hi = std::max(x_hi, x_of(*s));
      y_lo = std::min(y_lo, y_of(*s));
      y_hi = std::max(y_hi, y_of(*s));
    }
    Axis xa = make_axis(x_lo, x_hi, 0.05, px, px + panel_w);
    Axis ya = make_axis(y_lo, y_hi, 0.08, py + panel_h, py);

    svg += "<rect x=\"" + fmt(px) + "\" y=\"" + fmt(py) + "\" width=\"" + fmt(panel_w) +
           "\" height=\"" + fmt(panel_h) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + fmt(px + panel_w / 2) + "\" y=\"" + fmt(py - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           panel.title + "</text>\n";

    std::vector<double> xt = panel.x_is_ln_noise ? ln_ticks(xa.lo, xa.hi)
                                                 : nice_ticks(xa.lo, xa.hi, 5);
    std::string tick_list;
    for (double t : xt) tick_list += (tick_list.empty() ? "" : " ") + format_double(t);
    svg += "<g class=\"x-axis" +
           std::string(panel.x_is_ln_noise ? " ln-noise-axis" : "") + "\" data-ticks=\"" +
           tick_list + "\">\n";
    for (double t : xt) {
      double tx = xa.to_px(t);
      svg += "<line x1=\"" + fmt(tx) + "\" y1=\"" + fmt(py + panel_h) + "\" x2=\"" +
             fmt(tx) + "\" y2=\"" + fmt(py + panel_h + 6) + "\" stroke=\"#000000\"/>\n";
      svg += "<text x=\"" + fmt(tx) + "\" y=\"" + fmt(py + panel_h + 22) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             fmt(t) + "</text>\n";
    }
    svg += "</g>\n";
    svg += "<text x=\"" + fmt(px + panel_w / 2) + "\" y=\"" + fmt(py + panel_h + 44) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           panel.x_label + "</text>\n";

    std::vector<double> yt = nice_ticks(ya.lo, ya.hi, 5);
    svg += "<g class=\"y-axis\">\n";
    for (double t : yt) {
      double ty = ya.to_px(t);
      svg += "<line x1=\"" + fmt(px - 6) + "\" y1=\"" + fmt(ty) + "\" x2=\"" + fmt(px) +
             "\" y2=\"" + fmt(ty) + "\" stroke=\"#000000\"/>\n";
      svg += "<text x=\"" + fmt(px - 10) + "\" y=\"" + fmt(ty + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
             fmt(t) + "</text>\n";
    }
    svg += "</g>\n";
    svg += "<text x=\"" + fmt(px - 48) + "\" y=\"" + fmt(py + panel_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 " +
           fmt(px - 48) + " " + fmt(py + panel_h / 2) + ")\">" + panel.y_label +
           "</text>\n";

    for (const Sample* s : pts)
      svg += "<circle cx=\"" + fmt(xa.to_px(x_of(*s))) + "\" cy=\"" +
             fmt(ya.to_px(y_of(*s))) + "\" r=\"3.5\" fill=\"" + group_color(s->group) +
             "\" fill-opacity=\"0.65\"/>\n";

    std::string clip_id = "panel" + std::to_string(pi);
    svg += "<clipPath id=\"" + clip_id + "\"><rect x=\"" + fmt(px) + "\" y=\"" +
           fmt(py) + "\" width=\"" + fmt(panel_w) + "\" height=\"" + fmt(panel_h) +
           "\"/></clipPath>\n<g clip-path=\"url(#" + clip_id + ")\">\n";
    for (GroupType g : groups) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int n = 0;
      for (const Sample* s : pts)
        if (s->group == g) {
          double x = x_of(*s), y = y_of(*s);
          sx += x;
          sy += y;
          sxx += x * x;
          sxy += x * y;
          ++n;
        }
      if (n < 2) continue;
      double denom = n * sxx - sx * sx;
      if (std::abs(denom) < 1e-12) continue;
      double b = (n * sxy - sx * sy) / denom;
      double a = (sy - b * sx) / n;
      svg += "<line x1=\"" + fmt(xa.to_px(xa.lo)) + "\" y1=\"" +
             fmt(ya.to_px(a + b * xa.lo)) + "\" x2=\"" + fmt(xa.to_px(xa.hi)) +
             "\" y2=\"" + fmt(ya.to_px(a + b * xa.hi)) + "\" stroke=\"" +
             group_color(g) + "\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
    }
    svg += "</g>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace graphtic
