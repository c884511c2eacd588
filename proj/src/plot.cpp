#include "conecalc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "conecalc/errors.hpp"
#include "conecalc/sampler.hpp"

namespace conecalc {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 40.0;

std::pair<Rational, Rational> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("window range '" + text + "' must look like a:b");
  Rational a = parse_rational(text.substr(0, colon));
  Rational b = parse_rational(text.substr(colon + 1));
  if (!(a < b)) throw InputError("window range '" + text + "' is empty");
  return {a, b};
}

std::string color(double t) {
  // t in [-1, 1]; white at 0, blue for positive, red for negative.
  t = std::clamp(t, -1.0, 1.0);
  int r, g, b;
  if (t >= 0) {
    r = static_cast<int>(255 - t * (255 - 31));
    g = static_cast<int>(255 - t * (255 - 78));
    b = static_cast<int>(255 - t * (255 - 156));
  } else {
    r = static_cast<int>(255 - (-t) * (255 - 190));
    g = static_cast<int>(255 - (-t) * (255 - 40));
    b = static_cast<int>(255 - (-t) * (255 - 40));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string escape(const std::string& s) {
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

}  // namespace

PlotWindow parse_window(const std::string& text, std::size_t rank) {
  PlotWindow w;
  auto comma = text.find(',');
  if (rank == 1) {
    if (comma != std::string::npos) throw InputError("rank 1 plots take a window a:b");
    std::tie(w.x0, w.x1) = parse_range(text);
    w.y0 = 0;
    w.y1 = 1;
    return w;
  }
  if (rank != 2) throw InputError("plots are available in rank 1 and 2");
  if (comma == std::string::npos) throw InputError("rank 2 plots take a window a:b,c:d");
  std::tie(w.x0, w.x1) = parse_range(text.substr(0, comma));
  std::tie(w.y0, w.y1) = parse_range(text.substr(comma + 1));
  return w;
}

std::string render_svg(const SignedConeSum& sum, const std::vector<Overlay>& overlays, const PlotWindow& w,
                       unsigned res, std::uint64_t seed, const std::string& title) {
  if (res == 0) throw InputError("resolution must be positive");
  if (sum.rank() != 1 && sum.rank() != 2) throw InputError("plots are available in rank 1 and 2");
  DensityEvaluator eval(sum);
  GenericSampler sampler(seed);
  const double W = kSize + 2 * kMargin;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << W
     << "\" viewBox=\"0 0 " << W << ' ' << W << "\">\n"
     << "<title>" << escape(title) << "</title>\n"
     << "<defs><clipPath id=\"frame\"><rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize
     << "\" height=\"" << kSize << "\"/></clipPath></defs>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << W << "\" fill=\"#ffffff\"/>\n";

  const double x0 = w.x0.get_d(), x1 = w.x1.get_d(), y0 = w.y0.get_d(), y1 = w.y1.get_d();
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * kSize; };

  struct Probe {
    RationalPoint x;
    Rational d;
    unsigned i, j;
  };
  std::vector<Probe> probes;
  Rational dx = (w.x1 - w.x0) / res;
  Rational dy = (w.y1 - w.y0) / res;
  auto probe = [&](RationalPoint center, const RationalPoint& jitter) -> std::optional<Probe> {
    for (int attempt = 0; attempt < 64; ++attempt) {
      RationalPoint x = center;
      if (attempt > 0)
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += sampler.uniform(-jitter[k], jitter[k]);
      if (eval.is_generic(x)) return Probe{x, eval(x), 0, 0};
    }
    return std::nullopt;
  };

  if (sum.rank() == 2) {
    auto py = [&](double y) { return kMargin + kSize - (y - y0) / (y1 - y0) * kSize; };
    for (unsigned j = 0; j < res; ++j)
      for (unsigned i = 0; i < res; ++i) {
        RationalPoint c{w.x0 + dx * (Rational(i) + Rational(1, 2)), w.y0 + dy * (Rational(j) + Rational(1, 2))};
        if (auto p = probe(c, {dx / 4, dy / 4})) {
          p->i = i;
          p->j = j;
          probes.push_back(*p);
        }
      }
    double scale = 0;
    for (const auto& p : probes) scale = std::max(scale, std::abs(p.d.get_d()));
    if (scale == 0) scale = 1;
    const double cell = kSize / res;
    os << "<g id=\"density\" shape-rendering=\"crispEdges\">\n";
    for (const auto& p : probes) {
      os << "<rect x=\"" << kMargin + p.i * cell << "\" y=\"" << kMargin + kSize - (p.j + 1) * cell << "\" width=\""
         << cell << "\" height=\"" << cell << "\" fill=\"" << color(p.d.get_d() / scale) << "\" data-x=\""
         << to_string(p.x[0]) << "\" data-y=\"" << to_string(p.x[1]) << "\" data-density=\"" << to_string(p.d)
         << "\"/>\n";
    }
    os << "</g>\n<g id=\"cones\" fill=\"none\" stroke-width=\"2\" clip-path=\"url(#frame)\">\n";
    const double reach = std::max(x1 - x0, y1 - y0) * 2;
    for (const auto& o : overlays) {
      const double ax = o.apex[0].get_d(), ay = o.apex[1].get_d();
      for (std::size_t k = 0; k < o.rays.size(); ++k) {
        const double rx = static_cast<double>(o.rays[k][0]), ry = static_cast<double>(o.rays[k][1]);
        const double len = reach / std::hypot(rx, ry);
        os << "<line x1=\"" << px(ax) << "\" y1=\"" << py(ay) << "\" x2=\"" << px(ax + len * rx) << "\" y2=\""
           << py(ay + len * ry) << "\" stroke=\"" << (o.flipped[k] ? "#00bcd4" : "#222222") << "\""
           << (o.flipped[k] ? " class=\"flipped\"" : "") << "/>\n";
      }
      os << "<circle cx=\"" << px(ax) << "\" cy=\"" << py(ay) << "\" r=\"4\" fill=\"#222222\"/>\n";
    }
    os << "</g>\n";
  } else {
    for (unsigned i = 0; i < res; ++i) {
      RationalPoint c{w.x0 + dx * (Rational(i) + Rational(1, 2))};
      if (auto p = probe(c, {dx / 4})) {
        p->i = i;
        probes.push_back(*p);
      }
    }
    double hi = 0, lo = 0;
    for (const auto& p : probes) {
      hi = std::max(hi, p.d.get_d());
      lo = std::min(lo, p.d.get_d());
    }
    if (hi == lo) hi = lo + 1;
    auto py = [&](double d) { return kMargin + kSize - (d - lo) / (hi - lo) * kSize; };
    os << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kMargin + kSize << "\" y2=\"" << py(0)
       << "\" stroke=\"#888888\"/>\n<polyline id=\"density\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (const auto& p : probes) os << px(p.x[0].get_d()) << ',' << py(p.d.get_d()) << ' ';
    os << "\"/>\n<g id=\"probes\">\n";
    for (const auto& p : probes)
      os << "<circle cx=\"" << px(p.x[0].get_d()) << "\" cy=\"" << py(p.d.get_d()) << "\" r=\"1.5\" fill=\"#1f4e9c\" data-x=\""
         << to_string(p.x[0]) << "\" data-density=\"" << to_string(p.d) << "\"/>\n";
    os << "</g>\n<g id=\"cones\" clip-path=\"url(#frame)\">\n";
    for (const auto& o : overlays) {
      const double ax = o.apex[0].get_d();
      os << "<circle cx=\"" << px(ax) << "\" cy=\"" << py(0) << "\" r=\"4\" fill=\"#222222\"/>\n";
      for (std::size_t k = 0; k < o.rays.size(); ++k) {
        const double dir = o.rays[k][0] > 0 ? 1 : -1;
        os << "<line x1=\"" << px(ax) << "\" y1=\"" << py(0) + 8 + 4 * k << "\" x2=\"" << px(ax + dir * (x1 - x0) * 2)
           << "\" y2=\"" << py(0) + 8 + 4 * k << "\" stroke=\"" << (o.flipped[k] ? "#00bcd4" : "#222222")
           << "\" stroke-width=\"2\"" << (o.flipped[k] ? " class=\"flipped\"" : "") << "/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" fill=\"none\" stroke=\"#000000\"/>\n"
     << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 12 << "\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n</svg>\n";
  return os.str();
}

}  // namespace conecalc
