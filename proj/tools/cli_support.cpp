#include "cli_support.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace toeplitz::cli {

namespace {

double parse_real(std::string_view text, std::string_view whole) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("malformed complex number '" + std::string(whole) + "'");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw std::invalid_argument("malformed complex number '" + std::string(whole) + "'");
  }
  return v;
}

// Sign-only or empty coefficient in front of 'i'.
double imag_coefficient(std::string_view text, std::string_view whole) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text, whole);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i') return {parse_real(text, whole), 0.0};
  text.remove_suffix(1);
  // The split is the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, imag_coefficient(text, whole)};
  return {parse_real(text.substr(0, split), whole), imag_coefficient(text.substr(split), whole)};
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_number(z.real());
  const std::string im = format_number(z.imag());
  if (im.front() != '-') out += '+';
  return out + im + "i";
}

std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_number(row[k]);
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TOEPLITZ_SPECTRA_SEED"); env && *env) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || errno == ERANGE || env[0] == '-') {
      throw std::invalid_argument(std::string("TOEPLITZ_SPECTRA_SEED is not an unsigned 64-bit integer: ") + env);
    }
    return v;
  }
  return 0;
}

std::uint64_t write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  std::ofstream file(dir / name, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + (dir / name).string());
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  return fnv1a64(text);
}

void SvgCanvas::add_polyline(std::vector<Complex> points, std::string color, bool closed) {
  layers_.push_back({Layer::Polyline, std::move(points), std::move(color), closed, 0.0, {}});
}

void SvgCanvas::add_points(std::vector<Complex> points, std::string color, double radius) {
  layers_.push_back({Layer::Points, std::move(points), std::move(color), false, radius, {}});
}

void SvgCanvas::add_marker(Complex point, std::string color, std::string label) {
  layers_.push_back({Layer::Marker, {point}, std::move(color), false, 4.0, std::move(label)});
}

SvgCanvas::Transform SvgCanvas::transform() const {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& layer : layers_) {
    for (Complex p : layer.points) {
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) continue;
      lo_x = std::min(lo_x, p.real());
      hi_x = std::max(hi_x, p.real());
      lo_y = std::min(lo_y, p.imag());
      hi_y = std::max(hi_y, p.imag());
    }
  }
  if (!(lo_x <= hi_x)) return {1.0, kSize / 2.0, kSize / 2.0};
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = 0.9 * kSize / span;
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  return {scale, kSize / 2.0 - scale * cx, kSize / 2.0 + scale * cy};
}

std::string SvgCanvas::render(const std::string& title) const {
  const Transform t = transform();
  auto px = [&](Complex p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", t.offset_x + t.scale * p.real(), t.offset_y - t.scale * p.imag());
    return std::string(buf);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  svg << "<!-- toeplitz_spectra " << TOEPLITZ_SPECTRA_VERSION << " -->\n";
  svg << "<title>" << title << "</title>\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes through the origin when visible
  const double ox = t.offset_x;
  const double oy = t.offset_y;
  if (ox >= 0 && ox <= kSize) svg << "<line x1=\"" << ox << "\" y1=\"0\" x2=\"" << ox << "\" y2=\"" << kSize << "\" stroke=\"#ccc\"/>\n";
  if (oy >= 0 && oy <= kSize) svg << "<line x1=\"0\" y1=\"" << oy << "\" x2=\"" << kSize << "\" y2=\"" << oy << "\" stroke=\"#ccc\"/>\n";
  for (const auto& layer : layers_) {
    switch (layer.kind) {
      case Layer::Polyline: {
        svg << '<' << (layer.closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << layer.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < layer.points.size(); ++k) svg << (k ? " " : "") << px(layer.points[k]);
        svg << "\"/>\n";
        break;
      }
      case Layer::Points: {
        svg << "<g fill=\"" << layer.color << "\">\n";
        for (Complex p : layer.points) {
          const std::string xy = px(p);
          const auto comma = xy.find(',');
          svg << "<circle cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1) << "\" r=\""
              << layer.radius << "\"/>\n";
        }
        svg << "</g>\n";
        break;
      }
      case Layer::Marker: {
        const std::string xy = px(layer.points.front());
        const auto comma = xy.find(',');
        const std::string x = xy.substr(0, comma);
        const std::string y = xy.substr(comma + 1);
        svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"none\" stroke=\"" << layer.color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << y << "\" dx=\"6\" dy=\"-6\" font-size=\"12\" fill=\""
            << layer.color << "\">" << layer.label << "</text>\n";
        break;
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace toeplitz::cli
