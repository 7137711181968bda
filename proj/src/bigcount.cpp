#include "scj/bigcount.hpp"

namespace scj {

BigCount factorial(std::uint64_t n) {
  BigCount r = 1;
  for (std::uint64_t k = 2; k <= n; ++k) r *= k;
  return r;
}

BigCount power(const BigCount& base, std::uint64_t exponent) {
  BigCount result = 1;
  BigCount b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

BinomialTable::BinomialTable(std::size_t max_n) {
  rows_.push_back({BigCount(1)});
  reserve(max_n);
}

void BinomialTable::reserve(std::size_t max_n) {
  while (rows_.size() <= max_n) {
    const auto& prev = rows_.back();
    std::vector<BigCount> row(prev.size() + 1);
    row.front() = 1;
    row.back() = 1;
    for (std::size_t k = 1; k + 1 < row.size(); ++k) row[k] = prev[k - 1] + prev[k];
    rows_.push_back(std::move(row));
  }
}

const BigCount& BinomialTable::operator()(std::size_t n, std::size_t k) const {
  static const BigCount kZero = 0;
  if (k > n) return kZero;
  return rows_.at(n)[k];
}

}  // namespace scj
