#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rulfis/errors.hpp"
#include "rulfis/rul.hpp"

namespace rulfis::rul {

namespace {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q) {
  // Exact small integers make the single division correctly rounded.
  const double num = static_cast<double>(boost::multiprecision::numerator(q));
  const double den = static_cast<double>(boost::multiprecision::denominator(q));
  return num / den;
}

void check_filter(int order, int frame) {
  if (order < 0) throw ConfigError("Savitzky-Golay order must be non-negative");
  if (frame % 2 == 0) throw ConfigError("Savitzky-Golay frame length must be odd, got " + std::to_string(frame));
  if (frame <= order) throw ConfigError("Savitzky-Golay frame length must exceed the polynomial order");
}

// Rows of the filter matrix: row p gives the weights producing the fitted
// value at frame position p. Exact rational arithmetic throughout.
std::vector<std::vector<Rational>> filter_rows(int order, int frame) {
  const int half = frame / 2;
  const int terms = order + 1;
  // Normal matrix M = A^T A with A(i, d) = x_i^d, x_i = i - half.
  std::vector<std::vector<Rational>> m(terms, std::vector<Rational>(terms, Rational(0)));
  for (int i = 0; i < frame; ++i) {
    Rational x(i - half);
    std::vector<Rational> powers(2 * terms - 1, Rational(1));
    for (std::size_t d = 1; d < powers.size(); ++d) powers[d] = powers[d - 1] * x;
    for (int a = 0; a < terms; ++a) {
      for (int b = 0; b < terms; ++b) m[a][b] += powers[a + b];
    }
  }
  // Invert M by Gauss-Jordan elimination.
  std::vector<std::vector<Rational>> inv(terms, std::vector<Rational>(terms, Rational(0)));
  for (int a = 0; a < terms; ++a) inv[a][a] = 1;
  for (int col = 0; col < terms; ++col) {
    int pivot = col;
    while (m[pivot][col] == 0) ++pivot;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = m[col][col];
    for (int c = 0; c < terms; ++c) {
      m[col][c] /= scale;
      inv[col][c] /= scale;
    }
    for (int r = 0; r < terms; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = 0; c < terms; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  // Row p: e(x_p)^T M^{-1} A^T.
  std::vector<std::vector<Rational>> rows(frame, std::vector<Rational>(frame, Rational(0)));
  for (int p = 0; p < frame; ++p) {
    std::vector<Rational> ep(terms, Rational(1));
    for (int d = 1; d < terms; ++d) ep[d] = ep[d - 1] * Rational(p - half);
    std::vector<Rational> z(terms, Rational(0));
    for (int a = 0; a < terms; ++a) {
      for (int b = 0; b < terms; ++b) z[a] += ep[b] * inv[b][a];
    }
    for (int i = 0; i < frame; ++i) {
      Rational xi(i - half), power(1), acc(0);
      for (int d = 0; d < terms; ++d) {
        acc += z[d] * power;
        power *= xi;
      }
      rows[p][i] = acc;
    }
  }
  return rows;
}

}  // namespace

std::vector<double> savitzky_golay_coefficients(int order, int frame, int position) {
  check_filter(order, frame);
  if (position < 0 || position >= frame) throw InputError("coefficient position outside the frame");
  const auto rows = filter_rows(order, frame);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(frame));
  for (const Rational& q : rows[static_cast<std::size_t>(position)]) out.push_back(to_double(q));
  return out;
}

std::vector<double> savitzky_golay(std::span<const double> series, int order, int frame) {
  check_filter(order, frame);
  const std::size_t n = series.size();
  const auto width = static_cast<std::size_t>(frame);
  if (n < width) {
    warn("series of length " + std::to_string(n) + " is shorter than the Savitzky-Golay frame " +
         std::to_string(frame) + "; passing through unsmoothed");
    return {series.begin(), series.end()};
  }
  const auto exact = filter_rows(order, frame);
  std::vector<std::vector<double>> rows(width);
  for (std::size_t p = 0; p < width; ++p) {
    for (const Rational& q : exact[p]) rows[p].push_back(to_double(q));
  }

  const std::size_t half = width / 2;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t start = 0;
    std::size_t position = half;
    if (k < half) {
      position = k;
    } else if (k + half >= n) {
      start = n - width;
      position = k - start;
    } else {
      start = k - half;
    }
    const std::vector<double>& c = rows[position];
    double acc = 0.0;
    for (std::size_t i = 0; i < width; ++i) acc += c[i] * series[start + i];
    out[k] = acc;
  }
  return out;
}

}  // namespace rulfis::rul
