#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toeplitz/core.hpp"

namespace toeplitz::cli {

/// Parses the canonical complex syntax `re+imi`: "1+1i", "-0.5i", "2",
/// "1e-3-2.5i", "i", "-i". Throws std::invalid_argument on anything else.
Complex parse_complex(std::string_view text);

/// Inverse of parse_complex with 17 significant digits.
std::string format_complex(Complex z);

/// "%.17g" in the C locale.
std::string format_number(double x);

/// Header row plus one line per row, '\n' line endings.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Resolves the seed: explicit flag, else TOEPLITZ_SPECTRA_SEED, else 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

/// Writes text to dir/name and returns the FNV-1a checksum of the bytes.
std::uint64_t write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& text);

/// Fixed 800 x 800 scatter/polyline canvas with an equal-aspect affine map
/// fitted to everything added before render().
class SvgCanvas {
 public:
  static constexpr int kSize = 800;

  void add_polyline(std::vector<Complex> points, std::string color, bool closed = true);
  void add_points(std::vector<Complex> points, std::string color, double radius = 1.6);
  void add_marker(Complex point, std::string color, std::string label);

  struct Transform {
    double scale;
    double offset_x;
    double offset_y;
  };
  /// pixel = (offset_x + scale * re, offset_y - scale * im)
  Transform transform() const;
  std::string render(const std::string& title) const;

 private:
  struct Layer {
    enum Kind { Polyline, Points, Marker } kind;
    std::vector<Complex> points;
    std::string color;
    bool closed = true;
    double radius = 1.6;
    std::string label;
  };
  std::vector<Layer> layers_;
};

}  // namespace toeplitz::cli
