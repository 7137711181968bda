#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace scj {

// Exact natural-number counts. Scenario counts grow like (2k)!, so nothing on
// the counting path ever touches floating point.
using BigCount = boost::multiprecision::cpp_int;

BigCount factorial(std::uint64_t n);
BigCount power(const BigCount& base, std::uint64_t exponent);

// Pascal's triangle, grown on demand. Not safe for concurrent growth; build it
// to the needed size first and share it read-only afterwards.
class BinomialTable {
 public:
  explicit BinomialTable(std::size_t max_n = 0);

  void reserve(std::size_t max_n);
  std::size_t max_n() const { return rows_.size() - 1; }

  // C(n, k); zero when k > n.
  const BigCount& operator()(std::size_t n, std::size_t k) const;

 private:
  std::vector<std::vector<BigCount>> rows_;
};

}  // namespace scj
