#include "difflat/types.hpp"

#include <algorithm>
#include <sstream>

#include "difflat/error.hpp"

namespace difflat {

LatticeVector::LatticeVector(std::initializer_list<std::int64_t> values) {
  if (values.size() > static_cast<std::size_t>(kMaxDim)) {
    throw InvalidArgument("LatticeVector supports at most 3 coordinates");
  }
  dim = static_cast<int>(values.size());
  std::copy(values.begin(), values.end(), coords.begin());
}

LatticeVector LatticeVector::from_span(std::span<const std::int64_t> values) {
  if (values.size() > static_cast<std::size_t>(kMaxDim)) {
    throw InvalidArgument("LatticeVector supports at most 3 coordinates");
  }
  LatticeVector v(static_cast<int>(values.size()));
  std::copy(values.begin(), values.end(), v.coords.begin());
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector out(dim);
  for (int i = 0; i < dim; ++i) out[i] = -(*this)[i];
  return out;
}

LatticeVector operator+(LatticeVector a, const LatticeVector& b) {
  for (int i = 0; i < a.dim; ++i) a[i] += b[i];
  return a;
}

LatticeVector operator-(LatticeVector a, const LatticeVector& b) {
  for (int i = 0; i < a.dim; ++i) a[i] -= b[i];
  return a;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim; ++i) {
    if (i) os << ',';
    os << (*this)[i];
  }
  os << ')';
  return os.str();
}

Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace difflat
