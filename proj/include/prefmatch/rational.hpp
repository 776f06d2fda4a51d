#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prefmatch {

using Rational = mpq_class;

// Raised for malformed user input; the CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational rat(long num, long den = 1);

// Accepts "a/b", integers and optional leading sign.
Rational parse_rational(std::string_view text);

// Always "n/d" with d >= 1.
std::string fraction_string(const Rational& r);

// "n" for integers, "n/d" otherwise.
std::string compact_string(const Rational& r);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Rational& fill = 0);

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static Matrix from_ints(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const;

  bool operator==(const Matrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace prefmatch
